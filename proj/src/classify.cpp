#include "kmsgraph/classify.hpp"

#include <algorithm>
#include <cmath>

#include "kmsgraph/spectral.hpp"

namespace kmsgraph {

namespace {

std::vector<int> without(const std::vector<int>& set, const std::vector<int>& minus) {
  std::vector<int> out;
  std::set_difference(set.begin(), set.end(), minus.begin(), minus.end(),
                      std::back_inserter(out));
  return out;
}

double rho_at(const Graph& g, const std::vector<int>& verts, double beta,
              const Tolerances& tol) {
  if (verts.empty()) return 0.0;
  return spectral_radius(restrict_matrix(a_beta(g, beta), verts, verts), tol);
}

/** Components of g whose members all lie in `region`. */
std::vector<Component> components_within(const Graph& g, const std::vector<int>& region) {
  std::vector<Component> out;
  for (const Component& c : components(g))
    if (std::includes(region.begin(), region.end(), c.members.begin(), c.members.end()))
      out.push_back(c);
  return out;
}

}  // namespace

double beta_c(const Graph& g, const Component& c, const Tolerances& tol,
              const Limits& limits) {
  SignProfile prof = sign_profile(g, c.members, tol, limits);
  using Tag = SignProfile::Tag;
  if (prof.tag == Tag::HasZeroLoop || prof.tag == Tag::Mixed || prof.tag == Tag::NoLoops)
    throw Error(Error::Kind::NotApplicable,
                "component has no critical inverse temperature: loop weights are not "
                "uniformly signed");

  if (c.circular) return 0.0;  // rho(beta) = exp(-beta w / p) crosses 1 exactly at 0

  bool positive = prof.tag == Tag::AllPositive;
  // Uniform loop signs make rho strictly monotone with a unique unit crossing;
  // expand a bracket geometrically away from 0, then bisect.
  double lo = 0.0, hi = positive ? 1.0 : -1.0;
  if (rho_at(g, c.members, 0.0, tol) <= 1.0)
    throw Error(Error::Kind::Numerical,
                "non-circular component has radius <= 1 at beta 0");
  int guard = 0;
  while (rho_at(g, c.members, hi, tol) >= 1.0) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 200)
      throw Error(Error::Kind::Numerical, "critical temperature bracket not found");
  }
  // Invariant: rho(lo) >= 1 > rho(hi), with lo, hi on the same side of 0.
  for (int iter = 0; iter < 200 && std::abs(hi - lo) > tol.eig; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (rho_at(g, c.members, mid, tol) >= 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

ComponentVerdict classify_component(const Graph& g, const Component& c,
                                    const Tolerances& tol, const Limits& limits) {
  ComponentVerdict v;
  v.component = c;
  v.label = component_label(g, c);
  std::vector<int> cls = closure(g, c.members);
  std::vector<int> rest = without(cls, c.members);
  using Tag = SignProfile::Tag;

  if (c.circular) {
    double w = c.loop->weight(g);
    if (std::abs(w) > tol.weight_zero) {
      v.kind = ComponentVerdict::Kind::None;
      v.reason = "circular component with nonzero loop weight";
      return v;
    }
    SignProfile outside = sign_profile(g, rest, tol, limits);
    switch (outside.tag) {
      case Tag::NoLoops:
        v.kind = ComponentVerdict::Kind::CircularFamily;
        v.admits_positive = v.admits_negative = true;
        v.interval = BetaInterval{BetaInterval::Kind::All, 0.0};
        return v;
      case Tag::AllPositive: {
        double top = 0.0;
        bool first = true;
        for (const Component& other : components_within(g, rest)) {
          double b = beta_c(g, other, tol, limits);
          top = first ? b : std::max(top, b);
          first = false;
        }
        v.kind = ComponentVerdict::Kind::CircularFamily;
        v.admits_positive = true;
        v.interval = BetaInterval{BetaInterval::Kind::AboveEndpoint, top};
        return v;
      }
      case Tag::AllNegative: {
        double bottom = 0.0;
        bool first = true;
        for (const Component& other : components_within(g, rest)) {
          double b = beta_c(g, other, tol, limits);
          bottom = first ? b : std::min(bottom, b);
          first = false;
        }
        v.kind = ComponentVerdict::Kind::CircularFamily;
        v.admits_negative = true;
        v.interval = BetaInterval{BetaInterval::Kind::BelowEndpoint, bottom};
        return v;
      }
      case Tag::HasZeroLoop:
        v.kind = ComponentVerdict::Kind::None;
        v.reason = "zero loop weight elsewhere in the closure";
        return v;
      case Tag::Mixed:
        v.kind = ComponentVerdict::Kind::None;
        v.reason = "mixed loop signs in the closure";
        return v;
    }
  }

  SignProfile prof = sign_profile(g, cls, tol, limits);
  switch (prof.tag) {
    case Tag::AllPositive:
    case Tag::AllNegative: {
      double own = beta_c(g, c, tol, limits);
      bool positive = prof.tag == Tag::AllPositive;
      for (const Component& other : components_within(g, rest)) {
        double b = beta_c(g, other, tol, limits);
        bool dominated = positive ? (b >= own - tol.classification)
                                  : (b <= own + tol.classification);
        if (dominated) {
          v.kind = ComponentVerdict::Kind::None;
          v.reason = "another component in the closure reaches criticality first";
          return v;
        }
      }
      v.kind = positive ? ComponentVerdict::Kind::PositiveSide
                        : ComponentVerdict::Kind::NegativeSide;
      v.critical_beta = own;
      return v;
    }
    case Tag::HasZeroLoop:
      v.kind = ComponentVerdict::Kind::None;
      v.reason = "zero loop weight in the closure";
      return v;
    case Tag::Mixed:
      v.kind = ComponentVerdict::Kind::None;
      v.reason = "mixed loop signs in the closure";
      return v;
    case Tag::NoLoops:
      break;  // unreachable: components carry loops by construction
  }
  v.kind = ComponentVerdict::Kind::None;
  v.reason = "no loops";
  return v;
}

SinkVerdict classify_sink(const Graph& g, int sink, const Tolerances& tol,
                          const Limits& limits) {
  if (!g.is_sink(sink))
    throw Error(Error::Kind::InvalidInput,
                "vertex " + g.vertex_id(sink) + " is not a sink");
  SinkVerdict v;
  v.sink = sink;
  std::vector<int> cls = closure(g, {sink});
  SignProfile prof = sign_profile(g, cls, tol, limits);
  using Tag = SignProfile::Tag;
  switch (prof.tag) {
    case Tag::NoLoops:
      v.admits_positive = v.admits_negative = true;
      v.interval = BetaInterval{BetaInterval::Kind::All, 0.0};
      return v;
    case Tag::AllPositive: {
      double top = 0.0;
      bool first = true;
      for (const Component& other : components_within(g, cls)) {
        double b = beta_c(g, other, tol, limits);
        top = first ? b : std::max(top, b);
        first = false;
      }
      v.admits_positive = true;
      v.interval = BetaInterval{BetaInterval::Kind::AboveEndpoint, top};
      return v;
    }
    case Tag::AllNegative: {
      double bottom = 0.0;
      bool first = true;
      for (const Component& other : components_within(g, cls)) {
        double b = beta_c(g, other, tol, limits);
        bottom = first ? b : std::min(bottom, b);
        first = false;
      }
      v.admits_negative = true;
      v.interval = BetaInterval{BetaInterval::Kind::BelowEndpoint, bottom};
      return v;
    }
    case Tag::HasZeroLoop:
      v.reason = "zero loop weight in the closure";
      return v;
    case Tag::Mixed:
      v.reason = "mixed loop signs in the closure";
      return v;
  }
  return v;
}

KmsSets kms_sets(const Graph& g, double beta, const Tolerances& tol,
                 const Limits& limits) {
  if (beta == 0.0)
    throw Error(Error::Kind::NotApplicable,
                "beta 0 is the trace case; use the zero-temperature analysis");
  KmsSets out;
  out.beta = beta;
  for (const Component& c : components(g)) {
    ComponentVerdict v = classify_component(g, c, tol, limits);
    switch (v.kind) {
      case ComponentVerdict::Kind::PositiveSide:
      case ComponentVerdict::Kind::NegativeSide:
        if (std::abs(*v.critical_beta - beta) <= tol.classification)
          out.point_components.push_back(std::move(v));
        break;
      case ComponentVerdict::Kind::CircularFamily: {
        bool side_ok = beta > 0 ? v.admits_positive : v.admits_negative;
        if (side_ok && v.interval->contains(beta, tol.classification))
          out.circle_components.push_back(std::move(v));
        break;
      }
      case ComponentVerdict::Kind::None:
        break;
    }
  }
  for (int s : sinks(g)) {
    SinkVerdict v = classify_sink(g, s, tol, limits);
    bool side_ok = beta > 0 ? v.admits_positive : v.admits_negative;
    if (v.interval && side_ok && v.interval->contains(beta, tol.classification))
      out.summable_sinks.push_back(s);
  }
  return out;
}

SpectrumReport spectrum(const Graph& g, const Tolerances& tol, const Limits& limits) {
  SpectrumReport report;
  for (int s : sinks(g)) {
    SinkVerdict v = classify_sink(g, s, tol, limits);
    SpectrumRow row;
    row.source = g.vertex_id(s);
    row.is_sink = true;
    if (v.admits_positive && v.admits_negative) {
      row.kind = SpectrumRow::Kind::FullLine;
    } else if (v.admits_positive || v.admits_negative) {
      row.kind = SpectrumRow::Kind::OpenRay;
      row.direction = v.admits_positive ? +1 : -1;
      row.endpoint = v.interval->endpoint;
      row.endpoint_label = closed_form_label(row.endpoint, tol);
    } else {
      row.kind = SpectrumRow::Kind::Absent;
    }
    report.rows.push_back(std::move(row));
    report.sink_verdicts.push_back(std::move(v));
  }
  for (const Component& c : components(g)) {
    ComponentVerdict v = classify_component(g, c, tol, limits);
    SpectrumRow row;
    row.source = v.label;
    row.is_sink = false;
    switch (v.kind) {
      case ComponentVerdict::Kind::PositiveSide:
      case ComponentVerdict::Kind::NegativeSide:
        row.kind = SpectrumRow::Kind::Point;
        row.endpoint = *v.critical_beta;
        row.endpoint_label = closed_form_label(row.endpoint, tol);
        break;
      case ComponentVerdict::Kind::CircularFamily:
        row.circle_family = true;
        if (v.interval->kind == BetaInterval::Kind::All) {
          row.kind = SpectrumRow::Kind::FullLine;
        } else {
          row.kind = SpectrumRow::Kind::OpenRay;
          row.direction = v.interval->kind == BetaInterval::Kind::AboveEndpoint ? +1 : -1;
          row.endpoint = v.interval->endpoint;
          row.endpoint_label = closed_form_label(row.endpoint, tol);
        }
        break;
      case ComponentVerdict::Kind::None:
        row.kind = SpectrumRow::Kind::Absent;
        break;
    }
    report.rows.push_back(std::move(row));
    report.component_verdicts.push_back(std::move(v));
  }
  return report;
}

std::string closed_form_label(double value, const Tolerances& tol) {
  if (std::abs(value) <= tol.classification) return "0";
  for (int m = 1; m <= 4; ++m) {
    for (int k = 2; k <= 16; ++k) {
      double form = std::log(static_cast<double>(k)) / m;
      std::string tail = "log(" + std::to_string(k) + ")";
      if (m > 1) tail += "/" + std::to_string(m);
      if (std::abs(value - form) <= tol.classification) return tail;
      if (std::abs(value + form) <= tol.classification) return "-" + tail;
    }
  }
  return "";
}

std::string component_label(const Graph& g, const Component& c) {
  auto all = components(g);
  for (size_t i = 0; i < all.size(); ++i)
    if (all[i] == c) return "C" + std::to_string(i + 1);
  throw Error(Error::Kind::InvalidInput, "component does not belong to this graph");
}

Component find_component(const Graph& g, const std::string& label) {
  for (const Component& c : components(g))
    if (component_label(g, c) == label) return c;
  throw Error(Error::Kind::InvalidInput, "unknown component '" + label + "'");
}

}  // namespace kmsgraph
