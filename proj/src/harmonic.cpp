#include "kmsgraph/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace kmsgraph {

double HarmonicVector::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

std::vector<int> HarmonicVector::support(double threshold) const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(values.size()); ++v)
    if (values[v] > threshold) out.push_back(v);
  return out;
}

Harmonicity is_almost_harmonic(const Graph& g, const WeightMatrix& b,
                               const HarmonicVector& psi, const Tolerances& tol) {
  if (static_cast<int>(psi.values.size()) != g.vertex_count() ||
      b.row_count() != g.vertex_count() || !b.is_square())
    throw Error(Error::Kind::InvalidInput, "is_almost_harmonic shape mismatch");
  double off_sink = 0.0;
  bool sink_defect = false;
  for (int v = 0; v < g.vertex_count(); ++v) {
    double acc = 0.0;
    for (int w = 0; w < g.vertex_count(); ++w) acc += b.at(v, w) * psi.values[w];
    double diff = psi.values[v] - acc;
    if (g.is_sink(v)) {
      if (diff > tol.classification) sink_defect = true;
      // diff < 0 cannot happen at a sink: the row is zero.
    } else {
      off_sink = std::max(off_sink, std::abs(diff));
    }
  }
  if (off_sink > tol.classification) return Harmonicity::Neither;
  return sink_defect ? Harmonicity::AlmostHarmonic : Harmonicity::Harmonic;
}

namespace {

std::vector<int> without(const std::vector<int>& set, const std::vector<int>& minus) {
  std::vector<int> out;
  std::set_difference(set.begin(), set.end(), minus.begin(), minus.end(),
                      std::back_inserter(out));
  return out;
}

}  // namespace

bool is_summable_sink(const Graph& g, double beta, int sink, const Tolerances& tol) {
  if (!g.is_sink(sink))
    throw Error(Error::Kind::InvalidInput,
                "vertex " + g.vertex_id(sink) + " is not a sink");
  std::vector<int> cls = closure(g, {sink});
  std::vector<int> rest = without(cls, {sink});
  if (rest.empty()) return true;
  WeightMatrix b = restrict_matrix(a_beta(g, beta), rest, rest);
  return spectral_radius(b, tol) < 1.0 - tol.classification;
}

bool is_harmonic_component(const Graph& g, double beta, const Component& c,
                           const Tolerances& tol) {
  WeightMatrix full = a_beta(g, beta);
  double rho_c = spectral_radius(restrict_matrix(full, c.members, c.members), tol);
  if (std::abs(rho_c - 1.0) > tol.classification) return false;
  std::vector<int> rest = without(closure(g, c.members), c.members);
  if (rest.empty()) return true;
  double rho_rest = spectral_radius(restrict_matrix(full, rest, rest), tol);
  return rho_rest < 1.0 - tol.classification;
}

ExtremePoint phi_sink(const Graph& g, double beta, int sink, const Tolerances& tol) {
  if (!is_summable_sink(g, beta, sink, tol))
    throw Error(Error::Kind::NotApplicable,
                "sink " + g.vertex_id(sink) + " is not summable at beta = " +
                    std::to_string(beta));
  std::vector<int> cls = closure(g, {sink});
  // The sink row is zero, so the Neumann column over the closure is exactly
  // the series of path weights into the sink.
  WeightMatrix inv = neumann_inverse(restrict_matrix(a_beta(g, beta), cls, cls), tol);
  int col = inv.col_pos(sink);
  double total = 0.0;
  for (int i = 0; i < inv.row_count(); ++i) total += inv.at(i, col);

  ExtremePoint out;
  out.kind = ExtremePoint::Kind::SinkVector;
  out.sink = sink;
  out.vector.values.assign(g.vertex_count(), 0.0);
  for (int i = 0; i < inv.row_count(); ++i)
    out.vector.values[inv.rows[i]] = inv.at(i, col) / total;
  return out;
}

ExtremePoint phi_component(const Graph& g, double beta, const Component& c,
                           const Tolerances& tol) {
  WeightMatrix full = a_beta(g, beta);
  WeightMatrix on_c = restrict_matrix(full, c.members, c.members);
  double rho_c = spectral_radius(on_c, tol);
  if (std::abs(rho_c - 1.0) > tol.classification)
    throw Error(Error::Kind::NotApplicable,
                "component is not critical at beta = " + std::to_string(beta) +
                    " (radius " + std::to_string(rho_c) + ")");
  std::vector<int> cls = closure(g, c.members);
  std::vector<int> rest = without(cls, c.members);

  std::vector<double> x = perron_vector(on_c, tol);

  std::vector<double> values(g.vertex_count(), 0.0);
  for (size_t i = 0; i < c.members.size(); ++i) values[c.members[i]] = x[i];

  if (!rest.empty()) {
    WeightMatrix on_rest = restrict_matrix(full, rest, rest);
    if (spectral_radius(on_rest, tol) >= 1.0 - tol.classification)
      throw Error(Error::Kind::NotApplicable,
                  "closure outside the component is not subcritical");
    WeightMatrix inv = neumann_inverse(on_rest, tol);
    WeightMatrix cross = restrict_matrix(full, rest, c.members);
    // y = (I - B_rest)^-1 B_{rest,C} x
    std::vector<double> bx(rest.size(), 0.0);
    for (size_t i = 0; i < rest.size(); ++i)
      for (size_t j = 0; j < c.members.size(); ++j)
        bx[i] += cross.at(static_cast<int>(i), static_cast<int>(j)) * x[j];
    for (size_t i = 0; i < rest.size(); ++i) {
      double acc = 0.0;
      for (size_t j = 0; j < rest.size(); ++j)
        acc += inv.at(static_cast<int>(i), static_cast<int>(j)) * bx[j];
      values[rest[i]] = acc;
    }
  }

  double total = 0.0;
  for (double v : values) total += v;
  for (double& v : values) v /= total;

  ExtremePoint out;
  out.kind = ExtremePoint::Kind::ComponentVector;
  out.component = c;
  out.vector.values = std::move(values);
  return out;
}

std::vector<ExtremePoint> extreme_points(const Graph& g, double beta,
                                         const Tolerances& tol) {
  std::vector<ExtremePoint> out;
  for (const Component& c : components(g))
    if (is_harmonic_component(g, beta, c, tol)) out.push_back(phi_component(g, beta, c, tol));
  for (int s : sinks(g))
    if (is_summable_sink(g, beta, s, tol)) out.push_back(phi_sink(g, beta, s, tol));
  return out;
}

SimplexDecomposition decompose(const Graph& g, double beta, const HarmonicVector& psi,
                               const Tolerances& tol) {
  if (static_cast<int>(psi.values.size()) != g.vertex_count())
    throw Error(Error::Kind::InvalidInput, "decompose vector length mismatch");
  WeightMatrix b = a_beta(g, beta);
  if (is_almost_harmonic(g, b, psi, tol) == Harmonicity::Neither)
    throw Error(Error::Kind::InvalidInput, "decompose input is not almost harmonic");

  SimplexDecomposition out;
  std::vector<double> h = psi.values;

  // Sink coefficients: the defect psi - B psi is supported on sinks, and the
  // series sum_n B^n applied to a point mass at s is the unnormalized sink
  // vector, so subtracting t_s * phi^s removes exactly that series.
  for (int s : sinks(g)) {
    double mass = psi.values[s];
    if (mass <= 1e-11) continue;
    if (!is_summable_sink(g, beta, s, tol))
      throw Error(Error::Kind::NotApplicable,
                  "decompose: mass at non-summable sink " + g.vertex_id(s));
    std::vector<int> cls = closure(g, {s});
    WeightMatrix inv = neumann_inverse(restrict_matrix(b, cls, cls), tol);
    int col = inv.col_pos(s);
    double colsum = 0.0;
    for (int i = 0; i < inv.row_count(); ++i) colsum += inv.at(i, col);
    double t = mass * colsum;
    ExtremePoint phi = phi_sink(g, beta, s, tol);
    for (int v = 0; v < g.vertex_count(); ++v) h[v] -= t * phi.vector.values[v];
    out.sink_terms.emplace_back(s, t);
  }
  for (double& v : h)
    if (v < 0.0 && v > -tol.simplex) v = 0.0;

  // Component coefficients: minimal critical components of the remaining
  // support; minimality makes their closures disjoint over each other's
  // members, so the ratio on members reads the coefficient directly.
  std::vector<int> supp;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (h[v] > 1e-11) supp.push_back(v);

  if (!supp.empty()) {
    std::vector<Component> critical;
    for (const Component& c : components(g)) {
      if (!std::includes(supp.begin(), supp.end(), c.members.begin(), c.members.end()))
        continue;
      double rho = spectral_radius(restrict_matrix(b, c.members, c.members), tol);
      if (std::abs(rho - 1.0) <= tol.classification) critical.push_back(c);
    }
    for (const Component& c : critical) {
      bool minimal = true;
      for (const Component& other : critical) {
        if (other == c) continue;
        std::vector<int> cls = closure(g, c.members);
        if (std::includes(cls.begin(), cls.end(), other.members.begin(),
                          other.members.end()))
          minimal = false;  // `other` talks into c
      }
      if (!minimal) continue;
      ExtremePoint phi = phi_component(g, beta, c, tol);
      int v = c.least();
      double t = h[v] / phi.vector.values[v];
      for (int w = 0; w < g.vertex_count(); ++w) h[w] -= t * phi.vector.values[w];
      out.component_terms.emplace_back(c, t);
    }
  }

  double residual = 0.0;
  for (double v : h) residual = std::max(residual, std::abs(v));
  if (residual > tol.simplex)
    throw Error(Error::Kind::Numerical,
                "decompose reconstruction residual " + std::to_string(residual));
  out.residual = residual;
  return out;
}

}  // namespace kmsgraph
