#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "kmsgraph/classify.hpp"
#include "kmsgraph/graph_io.hpp"
#include "kmsgraph/report.hpp"
#include "kmsgraph/specs.hpp"
#include "kmsgraph/states.hpp"
#include "kmsgraph/traces.hpp"

using nlohmann::ordered_json;

namespace {

struct CommonOpts {
  std::string graph_path;
  std::string profile;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("graph", opts.graph_path, "graph document (text or JSON)")
      ->required();
  cmd->add_option("--profile", opts.profile,
                  "weight profile declared in the document");
  cmd->add_option("-o,--out", opts.out_path, "write the result to a file");
}

void emit(const CommonOpts& opts, const std::string& text) {
  std::string body = text;
  if (body.empty() || body.back() != '\n') body += "\n";
  if (opts.out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out)
    throw kmsgraph::Error(kmsgraph::Error::Kind::InvalidInput,
                          "cannot write '" + opts.out_path + "'");
  out << body;
}

kmsgraph::Graph load_graph(const CommonOpts& opts) {
  return kmsgraph::GraphDocument::load(opts.graph_path).build(opts.profile);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw kmsgraph::Error(kmsgraph::Error::Kind::InvalidInput,
                          "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ordered_json complex_json(std::complex<double> z) {
  ordered_json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KMS and ground state structure of weighted graph algebras"};
  app.require_subcommand(1);

  CommonOpts analyze_opts, classify_opts, spectrum_opts, state_opts, omega_opts,
      trace_opts, ground_opts;
  std::string analyze_format = "text";
  double classify_beta = 0.0;
  std::string spectrum_format = "ascii";
  double state_beta = 0.0;
  std::string state_spec_path, state_mu, state_nu;
  double omega_beta = 0.0;
  std::string omega_component, omega_mu, omega_nu;
  std::pair<double, double> omega_lambda{1.0, 0.0};
  std::string trace_spec_path, trace_mu, trace_nu;

  CLI::App* analyze = app.add_subcommand("analyze", "structural summary of the graph");
  add_common(analyze, analyze_opts);
  analyze->add_option("--format", analyze_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* classify =
      app.add_subcommand("classify", "equilibrium structure at one inverse temperature");
  add_common(classify, classify_opts);
  classify->add_option("--beta", classify_beta, "inverse temperature")->required();

  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "inverse temperatures admitting equilibria");
  add_common(spectrum_cmd, spectrum_opts);
  spectrum_cmd->add_option("--format", spectrum_format, "ascii, svg or json")
      ->check(CLI::IsMember({"ascii", "svg", "json"}));

  CLI::App* state_eval =
      app.add_subcommand("state-eval", "evaluate a mixed equilibrium state on a word");
  add_common(state_eval, state_opts);
  state_eval->add_option("--beta", state_beta, "inverse temperature")->required();
  state_eval->add_option("--spec", state_spec_path, "state description (JSON)")
      ->required();
  state_eval->add_option("--mu", state_mu, "left path: edge ids or @vertex")
      ->required();
  state_eval->add_option("--nu", state_nu, "right path (defaults to the range)");

  CLI::App* omega =
      app.add_subcommand("omega", "evaluate one circle state of a cyclic component");
  add_common(omega, omega_opts);
  omega->add_option("--beta", omega_beta, "inverse temperature")->required();
  omega->add_option("--component", omega_component, "component label, e.g. C1")
      ->required();
  omega->add_option("--lambda", omega_lambda, "point on the unit circle: RE IM");
  omega->add_option("--mu", omega_mu, "left path: edge ids or @vertex")->required();
  omega->add_option("--nu", omega_nu, "right path (defaults to the range)");

  CLI::App* trace =
      app.add_subcommand("trace", "zero-temperature structure; optionally evaluate");
  add_common(trace, trace_opts);
  trace->add_option("--spec", trace_spec_path, "trace weights (JSON)");
  trace->add_option("--mu", trace_mu, "left path: edge ids or @vertex");
  trace->add_option("--nu", trace_nu, "right path (defaults to the range)");

  CLI::App* ground = app.add_subcommand("ground", "zero-temperature limit census");
  add_common(ground, ground_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) {
      kmsgraph::Graph g = load_graph(analyze_opts);
      if (analyze_format == "json")
        emit(analyze_opts, kmsgraph::report::analyze_json(g).dump(2));
      else
        emit(analyze_opts, kmsgraph::report::analyze_text(g));
    } else if (*classify) {
      kmsgraph::Graph g = load_graph(classify_opts);
      emit(classify_opts, kmsgraph::report::classify_json(g, classify_beta).dump(2));
    } else if (*spectrum_cmd) {
      kmsgraph::Graph g = load_graph(spectrum_opts);
      if (spectrum_format == "json")
        emit(spectrum_opts, kmsgraph::report::spectrum_json(g).dump(2));
      else if (spectrum_format == "svg")
        emit(spectrum_opts, kmsgraph::report::spectrum_svg(g));
      else
        emit(spectrum_opts, kmsgraph::report::spectrum_ascii(g));
    } else if (*state_eval) {
      kmsgraph::Graph g = load_graph(state_opts);
      kmsgraph::KmsStateSpec spec = kmsgraph::parse_state_spec_json(
          g, state_beta, read_file(state_spec_path));
      kmsgraph::StateEvaluator ev(g, spec);
      kmsgraph::Word w = kmsgraph::parse_word_spec(g, state_mu, state_nu);
      ordered_json j;
      j["beta"] = state_beta;
      j["value"] = complex_json(ev(w));
      emit(state_opts, j.dump(2));
    } else if (*omega) {
      kmsgraph::Graph g = load_graph(omega_opts);
      kmsgraph::Component c = kmsgraph::find_component(g, omega_component);
      kmsgraph::CircularStateContext ctx(
          g, omega_beta, kmsgraph::CircularData::from_component(g, c), {});
      kmsgraph::Word w = kmsgraph::parse_word_spec(g, omega_mu, omega_nu);
      std::complex<double> lambda(omega_lambda.first, omega_lambda.second);
      ordered_json j;
      j["beta"] = omega_beta;
      j["component"] = omega_component;
      j["lambda"] = complex_json(lambda);
      j["normalizer"] = ctx.normalizer();
      j["value"] = complex_json(ctx.evaluate(lambda, w));
      emit(omega_opts, j.dump(2));
    } else if (*trace) {
      kmsgraph::Graph g = load_graph(trace_opts);
      if (trace_spec_path.empty() && trace_mu.empty()) {
        emit(trace_opts, kmsgraph::report::trace_json(g).dump(2));
      } else {
        if (trace_spec_path.empty() || trace_mu.empty())
          throw kmsgraph::Error(kmsgraph::Error::Kind::InvalidInput,
                                "evaluation needs both --spec and --mu");
        kmsgraph::Representation rep = kmsgraph::build_representation(g);
        kmsgraph::TraceWeights weights =
            kmsgraph::parse_trace_weights_json(rep, read_file(trace_spec_path));
        kmsgraph::Word w = kmsgraph::parse_word_spec(g, trace_mu, trace_nu);
        ordered_json j;
        j["value"] = complex_json(kmsgraph::trace_eval(g, rep, weights, w));
        emit(trace_opts, j.dump(2));
      }
    } else if (*ground) {
      kmsgraph::Graph g = load_graph(ground_opts);
      emit(ground_opts, kmsgraph::report::ground_json(g).dump(2));
    }
  } catch (const kmsgraph::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
