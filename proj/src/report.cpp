#include "kmsgraph/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kmsgraph/classify.hpp"
#include "kmsgraph/detail/format.hpp"
#include "kmsgraph/ground.hpp"
#include "kmsgraph/harmonic.hpp"
#include "kmsgraph/states.hpp"
#include "kmsgraph/traces.hpp"

namespace kmsgraph::report {

namespace {

using nlohmann::ordered_json;

ordered_json vertex_list(const Graph& g, const std::vector<int>& vs) {
  ordered_json out = ordered_json::array();
  for (int v : vs) out.push_back(g.vertex_id(v));
  return out;
}

ordered_json edge_list(const Graph& g, const std::vector<int>& es) {
  ordered_json out = ordered_json::array();
  for (int e : es) out.push_back(g.edge(e).id);
  return out;
}

ordered_json vector_map(const Graph& g, const std::vector<double>& values) {
  ordered_json out;
  for (int v = 0; v < g.vertex_count(); ++v) out[g.vertex_id(v)] = values[v];
  return out;
}

std::string endpoint_text(double value, const std::string& label) {
  return label.empty() ? detail::format_double(value) : label;
}

std::string row_caption(const SpectrumRow& row) {
  switch (row.kind) {
    case SpectrumRow::Kind::Absent:
      return "(none)";
    case SpectrumRow::Kind::FullLine:
      return "all beta";
    case SpectrumRow::Kind::OpenRay:
      return std::string("beta ") + (row.direction > 0 ? ">" : "<") + " " +
             endpoint_text(row.endpoint, row.endpoint_label);
    case SpectrumRow::Kind::Point:
      return "beta = " + endpoint_text(row.endpoint, row.endpoint_label);
  }
  return "";
}

}  // namespace

ordered_json analyze_json(const Graph& g, const Tolerances& tol, const Limits& limits) {
  ordered_json j;
  j["vertices"] = ordered_json::array();
  for (int v = 0; v < g.vertex_count(); ++v) j["vertices"].push_back(g.vertex_id(v));
  j["edges"] = ordered_json::array();
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    ordered_json je;
    je["id"] = edge.id;
    je["src"] = g.vertex_id(edge.src);
    je["dst"] = g.vertex_id(edge.dst);
    je["weight"] = edge.weight;
    j["edges"].push_back(je);
  }
  j["sinks"] = vertex_list(g, sinks(g));
  j["components"] = ordered_json::array();
  for (const Component& c : components(g)) {
    ordered_json jc;
    jc["label"] = component_label(g, c);
    jc["members"] = vertex_list(g, c.members);
    jc["circular"] = c.circular;
    if (c.circular) {
      jc["loop"] = edge_list(g, c.loop->edges);
      jc["loop_weight"] = c.loop->weight(g);
    }
    ordered_json closure_of = vertex_list(g, closure(g, c.members));
    jc["closure"] = closure_of;
    SignProfile prof = sign_profile(g, closure(g, c.members), tol, limits);
    switch (prof.tag) {
      case SignProfile::Tag::NoLoops: jc["loop_signs"] = "none"; break;
      case SignProfile::Tag::AllPositive: jc["loop_signs"] = "positive"; break;
      case SignProfile::Tag::AllNegative: jc["loop_signs"] = "negative"; break;
      case SignProfile::Tag::HasZeroLoop: jc["loop_signs"] = "zero"; break;
      case SignProfile::Tag::Mixed: jc["loop_signs"] = "mixed"; break;
    }
    j["components"].push_back(jc);
  }
  return j;
}

std::string analyze_text(const Graph& g, const Tolerances& tol, const Limits& limits) {
  std::ostringstream out;
  out << "graph: " << g.vertex_count() << " vertices, " << g.edge_count()
      << " edges\n";
  out << "sinks:";
  for (int s : sinks(g)) out << " " << g.vertex_id(s);
  if (sinks(g).empty()) out << " (none)";
  out << "\n";
  auto comps = components(g);
  out << "components: " << comps.size() << "\n";
  for (const Component& c : comps) {
    out << "  " << component_label(g, c) << " {";
    for (size_t i = 0; i < c.members.size(); ++i)
      out << (i ? " " : "") << g.vertex_id(c.members[i]);
    out << "}";
    if (c.circular)
      out << " circular, loop weight " << detail::format_double(c.loop->weight(g));
    SignProfile prof = sign_profile(g, closure(g, c.members), tol, limits);
    switch (prof.tag) {
      case SignProfile::Tag::NoLoops: out << ", closure loop signs: none"; break;
      case SignProfile::Tag::AllPositive: out << ", closure loop signs: positive"; break;
      case SignProfile::Tag::AllNegative: out << ", closure loop signs: negative"; break;
      case SignProfile::Tag::HasZeroLoop: out << ", closure loop signs: zero"; break;
      case SignProfile::Tag::Mixed: out << ", closure loop signs: mixed"; break;
    }
    out << "\n";
  }
  return out.str();
}

ordered_json classify_json(const Graph& g, double beta, const Tolerances& tol,
                           const Limits& limits) {
  KmsSets sets = kms_sets(g, beta, tol, limits);
  ordered_json j;
  j["beta"] = beta;
  j["point_components"] = ordered_json::array();
  for (const ComponentVerdict& v : sets.point_components)
    j["point_components"].push_back(v.label);
  j["circle_components"] = ordered_json::array();
  for (const ComponentVerdict& v : sets.circle_components)
    j["circle_components"].push_back(v.label);
  j["summable_sinks"] = vertex_list(g, sets.summable_sinks);

  j["extreme_points"] = ordered_json::array();
  for (const ExtremePoint& p : extreme_points(g, beta, tol)) {
    ordered_json jp;
    if (p.kind == ExtremePoint::Kind::SinkVector) {
      jp["kind"] = "sink";
      jp["source"] = g.vertex_id(p.sink);
    } else {
      jp["kind"] = "component";
      jp["source"] = component_label(g, p.component);
    }
    jp["vector"] = vector_map(g, p.vector.values);
    j["extreme_points"].push_back(jp);
  }

  j["circle_families"] = ordered_json::array();
  for (const ComponentVerdict& v : sets.circle_components) {
    CircularStateContext ctx(g, beta, CircularData::from_component(g, v.component),
                             tol);
    ordered_json jc;
    jc["component"] = v.label;
    jc["normalizer"] = ctx.normalizer();
    jc["fourier_zero"] = vector_map(g, ctx.fourier_zero_vector().values);
    j["circle_families"].push_back(jc);
  }
  return j;
}

ordered_json spectrum_json(const Graph& g, const Tolerances& tol,
                           const Limits& limits) {
  SpectrumReport rep = spectrum(g, tol, limits);
  ordered_json j;
  j["rows"] = ordered_json::array();
  for (const SpectrumRow& row : rep.rows) {
    ordered_json jr;
    jr["source"] = row.source;
    jr["is_sink"] = row.is_sink;
    switch (row.kind) {
      case SpectrumRow::Kind::Absent: jr["kind"] = "absent"; break;
      case SpectrumRow::Kind::FullLine: jr["kind"] = "full_line"; break;
      case SpectrumRow::Kind::OpenRay: jr["kind"] = "open_ray"; break;
      case SpectrumRow::Kind::Point: jr["kind"] = "point"; break;
    }
    if (row.kind == SpectrumRow::Kind::OpenRay) jr["direction"] = row.direction;
    if (row.kind == SpectrumRow::Kind::OpenRay ||
        row.kind == SpectrumRow::Kind::Point) {
      jr["endpoint"] = row.endpoint;
      if (!row.endpoint_label.empty()) jr["endpoint_label"] = row.endpoint_label;
    }
    if (row.circle_family) jr["circle_family"] = true;
    j["rows"].push_back(jr);
  }
  return j;
}

std::string spectrum_ascii(const Graph& g, const Tolerances& tol,
                           const Limits& limits) {
  SpectrumReport rep = spectrum(g, tol, limits);
  constexpr int kWidth = 57;

  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (const SpectrumRow& row : rep.rows) {
    if (row.kind == SpectrumRow::Kind::OpenRay ||
        row.kind == SpectrumRow::Kind::Point) {
      lo = any ? std::min(lo, row.endpoint) : row.endpoint;
      hi = any ? std::max(hi, row.endpoint) : row.endpoint;
      any = true;
    }
  }
  if (!any) {
    lo = -1.0;
    hi = 1.0;
  }
  double pad = std::max(0.75, (hi - lo) * 0.25);
  lo -= pad;
  hi += pad;
  auto col = [&](double x) {
    int c = static_cast<int>(std::lround((x - lo) / (hi - lo) * (kWidth - 1)));
    return std::clamp(c, 0, kWidth - 1);
  };

  size_t name_width = 4;
  for (const SpectrumRow& row : rep.rows)
    name_width = std::max(name_width, row.source.size());

  std::ostringstream out;
  out << std::string(name_width + 2, ' ') << detail::format_double(lo)
      << std::string(kWidth > 24 ? kWidth - 24 : 1, ' ') << detail::format_double(hi)
      << "\n";
  for (const SpectrumRow& row : rep.rows) {
    std::vector<std::string> cells(kWidth, " ");
    switch (row.kind) {
      case SpectrumRow::Kind::Absent:
        break;
      case SpectrumRow::Kind::FullLine:
        for (auto& c : cells) c = "=";
        break;
      case SpectrumRow::Kind::OpenRay: {
        int c = col(row.endpoint);
        cells[c] = "o";
        if (row.direction > 0)
          for (int i = c + 1; i < kWidth; ++i) cells[i] = "-";
        else
          for (int i = 0; i < c; ++i) cells[i] = "-";
        break;
      }
      case SpectrumRow::Kind::Point:
        cells[col(row.endpoint)] = "●";
        break;
    }
    out << row.source << std::string(name_width - row.source.size() + 2, ' ');
    for (const auto& c : cells) out << c;
    out << "  " << row_caption(row);
    if (row.circle_family) out << "  [circle]";
    out << "\n";
  }
  return out.str();
}

std::string spectrum_svg(const Graph& g, const Tolerances& tol, const Limits& limits) {
  SpectrumReport rep = spectrum(g, tol, limits);
  constexpr double kLeft = 90.0, kRight = 560.0, kRowH = 26.0, kTop = 44.0;

  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (const SpectrumRow& row : rep.rows) {
    if (row.kind == SpectrumRow::Kind::OpenRay ||
        row.kind == SpectrumRow::Kind::Point) {
      lo = any ? std::min(lo, row.endpoint) : row.endpoint;
      hi = any ? std::max(hi, row.endpoint) : row.endpoint;
      any = true;
    }
  }
  if (!any) {
    lo = -1.0;
    hi = 1.0;
  }
  double pad = std::max(0.75, (hi - lo) * 0.25);
  lo -= pad;
  hi += pad;
  auto x_of = [&](double b) { return kLeft + (b - lo) / (hi - lo) * (kRight - kLeft); };
  auto fmt = [](double v) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(1);
    s << v;
    return s.str();
  };

  double height = kTop + kRowH * static_cast<double>(rep.rows.size()) + 40.0;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"660\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 660 " << fmt(height) << "\">\n";
  out << "  <style>text{font:12px monospace;fill:#333}.cap{fill:#666}</style>\n";
  out << "  <text x=\"" << fmt(kLeft) << "\" y=\"20\">inverse temperature axis</text>\n";

  // Axis ticks at every distinct endpoint.
  std::vector<std::pair<double, std::string>> ticks;
  for (const SpectrumRow& row : rep.rows) {
    if (row.kind != SpectrumRow::Kind::OpenRay && row.kind != SpectrumRow::Kind::Point)
      continue;
    std::string label = endpoint_text(row.endpoint, row.endpoint_label);
    bool seen = false;
    for (const auto& [v, l] : ticks)
      if (std::abs(v - row.endpoint) < 1e-12) seen = true;
    if (!seen) ticks.emplace_back(row.endpoint, label);
  }
  double axis_y = kTop + kRowH * static_cast<double>(rep.rows.size()) + 8.0;
  out << "  <line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(axis_y) << "\" x2=\""
      << fmt(kRight) << "\" y2=\"" << fmt(axis_y)
      << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  for (const auto& [v, label] : ticks) {
    out << "  <line x1=\"" << fmt(x_of(v)) << "\" y1=\"" << fmt(axis_y - 4) << "\" x2=\""
        << fmt(x_of(v)) << "\" y2=\"" << fmt(axis_y + 4)
        << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << fmt(x_of(v) - 12) << "\" y=\"" << fmt(axis_y + 18)
        << "\">" << label << "</text>\n";
  }

  for (size_t i = 0; i < rep.rows.size(); ++i) {
    const SpectrumRow& row = rep.rows[i];
    double y = kTop + kRowH * static_cast<double>(i);
    out << "  <text x=\"10\" y=\"" << fmt(y + 4) << "\">" << row.source << "</text>\n";
    switch (row.kind) {
      case SpectrumRow::Kind::Absent:
        out << "  <text class=\"cap\" x=\"" << fmt(kLeft) << "\" y=\"" << fmt(y + 4)
            << "\">(none)</text>\n";
        break;
      case SpectrumRow::Kind::FullLine:
        out << "  <line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y) << "\" x2=\""
            << fmt(kRight) << "\" y2=\"" << fmt(y)
            << "\" stroke=\"#1565c0\" stroke-width=\"3\"/>\n";
        break;
      case SpectrumRow::Kind::OpenRay: {
        double xe = x_of(row.endpoint);
        double x2 = row.direction > 0 ? kRight : kLeft;
        out << "  <line x1=\"" << fmt(xe) << "\" y1=\"" << fmt(y) << "\" x2=\""
            << fmt(x2) << "\" y2=\"" << fmt(y)
            << "\" stroke=\"#1565c0\" stroke-width=\"3\"/>\n";
        out << "  <circle cx=\"" << fmt(xe) << "\" cy=\"" << fmt(y)
            << "\" r=\"4\" fill=\"#fff\" stroke=\"#1565c0\" stroke-width=\"2\"/>\n";
        break;
      }
      case SpectrumRow::Kind::Point:
        out << "  <circle cx=\"" << fmt(x_of(row.endpoint)) << "\" cy=\"" << fmt(y)
            << "\" r=\"4.5\" fill=\"#1565c0\"/>\n";
        break;
    }
    if (row.circle_family)
      out << "  <text class=\"cap\" x=\"" << fmt(kRight + 10) << "\" y=\""
          << fmt(y + 4) << "\">[circle]</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

ordered_json trace_json(const Graph& g, const Tolerances& tol, const Limits& limits) {
  ZeroSets zs = zero_sets(g, tol, limits);
  ordered_json j;
  j["trace_sinks"] = vertex_list(g, zs.sink_vertices);
  j["trace_components"] = ordered_json::array();
  for (const Component& c : zs.circulars)
    j["trace_components"].push_back(component_label(g, c));
  j["excluded"] = vertex_list(g, zs.excluded);
  auto summands = algebra_structure(g, tol, limits);
  j["summands"] = ordered_json::array();
  for (const AlgebraSummand& s : summands) {
    ordered_json js;
    js["kind"] =
        s.kind == AlgebraSummand::Kind::MatrixAlgebra ? "matrix" : "matrix_over_circle";
    js["source"] = s.source;
    js["dimension"] = s.dimension;
    j["summands"].push_back(js);
  }
  j["display"] = algebra_display(summands);
  return j;
}

ordered_json ground_json(const Graph& g, const Tolerances& tol, const Limits& limits) {
  (void)limits;
  Census c = census(g, tol);
  ordered_json j;
  j["potential"] = ordered_json();
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (c.potential.finite(v))
      j["potential"][g.vertex_id(v)] = c.potential.value[v];
    else
      j["potential"][g.vertex_id(v)] = "-inf";
  }
  j["start_vertices"] = vertex_list(g, c.tight.start_vertices);
  j["tight_edges"] = edge_list(g, c.tight.tight_edges);
  j["sink_orbits"] = ordered_json::array();
  for (const auto& o : c.sink_orbits) {
    ordered_json jo;
    jo["sink"] = g.vertex_id(o.sink);
    jo["count"] = o.count;
    j["sink_orbits"].push_back(jo);
  }
  j["cycle_orbits"] = ordered_json::array();
  for (const auto& o : c.cycle_orbits) {
    ordered_json jo;
    jo["base"] = g.vertex_id(o.cycle.base);
    jo["edges"] = edge_list(g, o.cycle.edges);
    jo["count"] = o.count;
    j["cycle_orbits"].push_back(jo);
  }
  j["rich"] = c.rich;
  if (c.rich) j["rich_reason"] = c.rich_reason;
  return j;
}

}  // namespace kmsgraph::report
