#include "kmsgraph/specs.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "kmsgraph/classify.hpp"

namespace kmsgraph {

using nlohmann::ordered_json;

namespace {

ordered_json parse_json_text(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::exception& ex) {
    throw Error(Error::Kind::InvalidInput,
                std::string("malformed JSON: ") + ex.what());
  }
}

CircleMeasure measure_from_json(const ordered_json& j) {
  CircleMeasure m;
  std::string kind = j.value("kind", "lebesgue");
  if (kind == "lebesgue") {
    m.kind = CircleMeasure::Kind::Lebesgue;
    return m;
  }
  if (kind != "atoms")
    throw Error(Error::Kind::InvalidInput,
                "measure kind must be 'lebesgue' or 'atoms'");
  m.kind = CircleMeasure::Kind::Atoms;
  for (const auto& ja : j.at("atoms")) {
    std::complex<double> lambda(ja.at("lambda").at(0).get<double>(),
                                ja.at("lambda").at(1).get<double>());
    m.atoms.push_back({lambda, ja.at("mass").get<double>()});
  }
  return m;
}

}  // namespace

Path parse_path_spec(const Graph& g, const std::string& text) {
  if (!text.empty() && text[0] == '@')
    return Path::trivial(g.vertex_index(text.substr(1)));
  Path p;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    int e = g.edge_index(token);
    if (p.edges.empty()) p.base = g.edge(e).src;
    p.edges.push_back(e);
  }
  if (p.edges.empty())
    throw Error(Error::Kind::InvalidInput,
                "empty path; use @vertex for a trivial path");
  if (!p.valid(g))
    throw Error(Error::Kind::InvalidInput, "edges do not form a path: " + text);
  return p;
}

Word parse_word_spec(const Graph& g, const std::string& mu,
                     const std::string& nu) {
  Word w;
  w.mu = parse_path_spec(g, mu);
  w.nu = nu.empty() ? Path::trivial(w.mu.range(g)) : parse_path_spec(g, nu);
  if (!w.valid(g))
    throw Error(Error::Kind::InvalidInput,
                "the two paths must end at the same vertex");
  return w;
}

CircleMeasure parse_measure_json(const std::string& text) {
  try {
    return measure_from_json(parse_json_text(text));
  } catch (const ordered_json::exception& ex) {
    throw Error(Error::Kind::InvalidInput,
                std::string("bad measure description: ") + ex.what());
  }
}

KmsStateSpec parse_state_spec_json(const Graph& g, double beta,
                                   const std::string& text) {
  ordered_json j = parse_json_text(text);
  KmsStateSpec spec;
  spec.beta = beta;
  try {
    if (j.contains("sinks"))
      for (const auto& js : j.at("sinks"))
        spec.sinks.push_back({g.vertex_index(js.at("sink").get<std::string>()),
                              js.at("weight").get<double>()});
    if (j.contains("components"))
      for (const auto& js : j.at("components"))
        spec.point_components.push_back(
            {find_component(g, js.at("component").get<std::string>()),
             js.at("weight").get<double>()});
    if (j.contains("circles"))
      for (const auto& js : j.at("circles")) {
        CircleMeasure measure;
        if (js.contains("measure")) measure = measure_from_json(js.at("measure"));
        spec.circles.push_back(
            {find_component(g, js.at("component").get<std::string>()),
             js.at("weight").get<double>(), measure});
      }
  } catch (const ordered_json::exception& ex) {
    throw Error(Error::Kind::InvalidInput,
                std::string("bad state description: ") + ex.what());
  }
  return spec;
}

TraceWeights parse_trace_weights_json(const Representation& rep,
                                      const std::string& text) {
  ordered_json j = parse_json_text(text);
  TraceWeights weights;
  double total = 0.0;
  try {
    for (const auto& block : rep.blocks) {
      double wgt = 0.0;
      if (j.contains("weights") && j.at("weights").contains(block.source))
        wgt = j.at("weights").at(block.source).get<double>();
      CircleMeasure measure;
      if (j.contains("measures") && j.at("measures").contains(block.source))
        measure = measure_from_json(j.at("measures").at(block.source));
      weights.weight.push_back(wgt);
      weights.measures.push_back(measure);
      total += wgt;
    }
  } catch (const ordered_json::exception& ex) {
    throw Error(Error::Kind::InvalidInput,
                std::string("bad trace description: ") + ex.what());
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw Error(Error::Kind::InvalidInput, "trace weights must sum to one");
  return weights;
}

}  // namespace kmsgraph
