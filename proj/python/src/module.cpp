#include <complex>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kmsgraph/classify.hpp"
#include "kmsgraph/graph.hpp"
#include "kmsgraph/graph_io.hpp"
#include "kmsgraph/harmonic.hpp"
#include "kmsgraph/report.hpp"
#include "kmsgraph/specs.hpp"
#include "kmsgraph/states.hpp"
#include "kmsgraph/traces.hpp"

namespace py = pybind11;

namespace {

py::dict vector_dict(const kmsgraph::Graph& g, const kmsgraph::HarmonicVector& v) {
  py::dict d;
  for (int i = 0; i < g.vertex_count(); ++i)
    d[py::str(g.vertex_id(i))] = v.values.at(static_cast<size_t>(i));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "equilibrium and ground state structure of weighted graph algebras";

  py::register_exception<kmsgraph::Error>(m, "Error");

  py::class_<kmsgraph::Graph>(m, "Graph")
      .def_property_readonly("vertex_count", &kmsgraph::Graph::vertex_count)
      .def_property_readonly("edge_count", &kmsgraph::Graph::edge_count)
      .def("vertex_ids", &kmsgraph::Graph::vertex_ids)
      .def("edges",
           [](const kmsgraph::Graph& g) {
             std::vector<py::tuple> out;
             for (const auto& e : g.edges())
               out.push_back(py::make_tuple(e.id, g.vertex_id(e.src),
                                            g.vertex_id(e.dst), e.weight));
             return out;
           },
           "edges as (id, src, dst, weight) tuples")
      .def("sinks", [](const kmsgraph::Graph& g) {
        std::vector<std::string> out;
        for (int v : kmsgraph::sinks(g)) out.push_back(g.vertex_id(v));
        return out;
      });

  py::class_<kmsgraph::GraphDocument>(m, "GraphDocument")
      .def_static("load", &kmsgraph::GraphDocument::load, py::arg("path"))
      .def_static("parse", &kmsgraph::GraphDocument::parse, py::arg("text"))
      .def("build",
           [](const kmsgraph::GraphDocument& d, const std::string& profile) {
             return d.build(profile);
           },
           py::arg("profile") = "")
      .def("dump_text", &kmsgraph::GraphDocument::dump_text)
      .def("to_json", [](const kmsgraph::GraphDocument& d) { return d.to_json().dump(); })
      .def_property_readonly("profiles",
                             [](const kmsgraph::GraphDocument& d) { return d.profiles; });

  // Reports. JSON comes back as a string; the package wrapper decodes it.
  m.def("analyze_json",
        [](const kmsgraph::Graph& g) { return kmsgraph::report::analyze_json(g).dump(); });
  m.def("analyze_text",
        [](const kmsgraph::Graph& g) { return kmsgraph::report::analyze_text(g); });
  m.def("classify_json",
        [](const kmsgraph::Graph& g, double beta) {
          return kmsgraph::report::classify_json(g, beta).dump();
        },
        py::arg("graph"), py::arg("beta"));
  m.def("spectrum_json",
        [](const kmsgraph::Graph& g) { return kmsgraph::report::spectrum_json(g).dump(); });
  m.def("spectrum_ascii",
        [](const kmsgraph::Graph& g) { return kmsgraph::report::spectrum_ascii(g); });
  m.def("spectrum_svg",
        [](const kmsgraph::Graph& g) { return kmsgraph::report::spectrum_svg(g); });
  m.def("trace_json",
        [](const kmsgraph::Graph& g) { return kmsgraph::report::trace_json(g).dump(); });
  m.def("ground_json",
        [](const kmsgraph::Graph& g) { return kmsgraph::report::ground_json(g).dump(); });

  m.def("beta_c",
        [](const kmsgraph::Graph& g, const std::string& label) {
          return kmsgraph::beta_c(g, kmsgraph::find_component(g, label));
        },
        py::arg("graph"), py::arg("component"),
        "critical inverse temperature of the labeled component");

  m.def("extreme_points",
        [](const kmsgraph::Graph& g, double beta) {
          py::list out;
          for (const auto& p : kmsgraph::extreme_points(g, beta)) {
            py::dict d;
            bool is_sink = p.kind == kmsgraph::ExtremePoint::Kind::SinkVector;
            d["kind"] = is_sink ? "sink" : "component";
            d["source"] = is_sink ? g.vertex_id(p.sink)
                                  : kmsgraph::component_label(g, p.component);
            d["vector"] = vector_dict(g, p.vector);
            out.append(d);
          }
          return out;
        },
        py::arg("graph"), py::arg("beta"),
        "extreme equilibrium states at this inverse temperature");

  m.def("state_eval",
        [](const kmsgraph::Graph& g, double beta, const std::string& spec_json,
           const std::string& mu, const std::string& nu) {
          kmsgraph::StateEvaluator ev(
              g, kmsgraph::parse_state_spec_json(g, beta, spec_json));
          return ev(kmsgraph::parse_word_spec(g, mu, nu));
        },
        py::arg("graph"), py::arg("beta"), py::arg("spec"), py::arg("mu"),
        py::arg("nu") = "",
        "value of a mixed equilibrium state on the word S_mu S_nu^*");

  m.def("circular_normalizer",
        [](const kmsgraph::Graph& g, double beta, const std::string& label) {
          auto data = kmsgraph::CircularData::from_component(
              g, kmsgraph::find_component(g, label));
          return kmsgraph::circular_normalizer(g, beta, data);
        },
        py::arg("graph"), py::arg("beta"), py::arg("component"));

  m.def("omega_eval",
        [](const kmsgraph::Graph& g, double beta, const std::string& label,
           std::complex<double> lambda, const std::string& mu, const std::string& nu) {
          auto data = kmsgraph::CircularData::from_component(
              g, kmsgraph::find_component(g, label));
          return kmsgraph::eval_omega_lambda(g, beta, data, lambda,
                                             kmsgraph::parse_word_spec(g, mu, nu));
        },
        py::arg("graph"), py::arg("beta"), py::arg("component"), py::arg("lam"),
        py::arg("mu"), py::arg("nu") = "",
        "value of the circle state at lambda on the word S_mu S_nu^*");

  m.def("trace_eval",
        [](const kmsgraph::Graph& g, const std::string& weights_json,
           const std::string& mu, const std::string& nu) {
          kmsgraph::Representation rep = kmsgraph::build_representation(g);
          kmsgraph::TraceWeights weights =
              kmsgraph::parse_trace_weights_json(rep, weights_json);
          return kmsgraph::trace_eval(g, rep, weights,
                                      kmsgraph::parse_word_spec(g, mu, nu));
        },
        py::arg("graph"), py::arg("weights"), py::arg("mu"), py::arg("nu") = "",
        "value of a trace state on the word S_mu S_nu^*");

  m.def("kms_residual",
        [](const kmsgraph::Graph& g, double beta, const std::string& spec_json,
           const std::string& mu1, const std::string& nu1, const std::string& mu2,
           const std::string& nu2) {
          kmsgraph::StateEvaluator ev(
              g, kmsgraph::parse_state_spec_json(g, beta, spec_json));
          kmsgraph::StateFn omega = [&ev](const kmsgraph::Word& w) { return ev(w); };
          return kmsgraph::kms_check(g, omega, beta,
                                     kmsgraph::parse_word_spec(g, mu1, nu1),
                                     kmsgraph::parse_word_spec(g, mu2, nu2));
        },
        py::arg("graph"), py::arg("beta"), py::arg("spec"), py::arg("mu1"),
        py::arg("nu1"), py::arg("mu2"), py::arg("nu2"),
        "equilibrium-condition residual of the state on one pair of words");
}
