#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "kmsgraph/states.hpp"
#include "support/fixtures.hpp"

using namespace kmsgraph;
using testsupport::component_named;
using testsupport::reference_graph;

namespace {

bool same_word(const Word& a, const Word& b) {
  if (a.zero || b.zero) return a.zero == b.zero;
  return a.mu == b.mu && a.nu == b.nu;
}

Word make_word(const Graph& g, const std::vector<std::string>& mu_edges, int mu_base,
               const std::vector<std::string>& nu_edges, int nu_base) {
  Word w;
  w.mu.base = mu_base;
  for (const auto& id : mu_edges) w.mu.edges.push_back(g.edge_index(id));
  w.nu.base = nu_base;
  for (const auto& id : nu_edges) w.nu.edges.push_back(g.edge_index(id));
  return w;
}

}  // namespace

TEST_SUITE("states") {
  TEST_CASE("word structure") {
    Graph g = reference_graph();
    Word p = Word::projection(g.vertex_index("v3"));
    CHECK(p.valid(g));
    CHECK(p.is_projection(g));
    CHECK(same_word(p.adjoint(), p));
    CHECK(Word::zero_word().valid(g));

    Word w = make_word(g, {"e2"}, g.vertex_index("v2"), {}, g.vertex_index("v3"));
    CHECK(w.valid(g));
    CHECK_FALSE(w.is_projection(g));
    CHECK(same_word(w.adjoint().adjoint(), w));
    // legs ending at different vertices do not form a word
    Word bad = make_word(g, {"e2"}, g.vertex_index("v2"), {}, g.vertex_index("v4"));
    CHECK_FALSE(bad.valid(g));
  }

  TEST_CASE("word products splice along the inner legs") {
    Graph g = reference_graph();
    int v2 = g.vertex_index("v2"), v3 = g.vertex_index("v3"),
        v4 = g.vertex_index("v4"), v5 = g.vertex_index("v5");

    // S_e2 . S_e3 = S_{e2 e3}
    Word lhs = make_word(g, {"e2"}, v2, {}, v3);
    Word rhs = make_word(g, {"e3"}, v3, {}, v4);
    Word want = make_word(g, {"e2", "e3"}, v2, {}, v4);
    CHECK(same_word(word_multiply(g, lhs, rhs), want));

    // S_e2 . S_a^* = S_e2 S_a^*
    Word rhs2 = make_word(g, {}, v3, {"a"}, v4);
    Word want2 = make_word(g, {"e2"}, v2, {"a"}, v4);
    CHECK(same_word(word_multiply(g, lhs, rhs2), want2));

    // S_e3^* . S_e3 = P_{v4}
    Word down = make_word(g, {}, v4, {"e3"}, v3);
    Word up = make_word(g, {"e3"}, v3, {}, v4);
    CHECK(same_word(word_multiply(g, down, up), Word::projection(v4)));

    // orthogonal ranges annihilate: S_e3^* S_e5 = 0
    Word other = make_word(g, {"e5"}, v3, {}, v5);
    CHECK(word_multiply(g, down, other).zero);

    // projections act as local units
    CHECK(same_word(word_multiply(g, Word::projection(v2), lhs), lhs));
    CHECK(same_word(word_multiply(g, lhs, Word::projection(v3)), lhs));
    CHECK(word_multiply(g, Word::projection(v5), lhs).zero);
    CHECK(word_multiply(g, Word::zero_word(), lhs).zero);
    CHECK(word_multiply(g, lhs, Word::zero_word()).zero);
  }

  TEST_CASE("word products are associative") {
    std::mt19937_64 rng(701);
    for (const char* profile : {"", "F1", "F2"}) {
      Graph g = reference_graph(profile);
      for (int trial = 0; trial < 200; ++trial) {
        Word w1 = testsupport::random_word(g, rng, 4);
        Word w2 = testsupport::random_word(g, rng, 4);
        Word w3 = testsupport::random_word(g, rng, 4);
        Word left = word_multiply(g, word_multiply(g, w1, w2), w3);
        Word right = word_multiply(g, w1, word_multiply(g, w2, w3));
        CHECK(same_word(left, right));
      }
    }
  }

  TEST_CASE("adjoint reverses products") {
    std::mt19937_64 rng(702);
    Graph g = reference_graph();
    for (int trial = 0; trial < 200; ++trial) {
      Word w1 = testsupport::random_word(g, rng, 4);
      Word w2 = testsupport::random_word(g, rng, 4);
      Word prod = word_multiply(g, w1, w2);
      Word rev = word_multiply(g, w2.adjoint(), w1.adjoint());
      CHECK(same_word(prod.adjoint(), rev));
    }
  }

  TEST_CASE("gauge-invariant evaluation") {
    Graph g = reference_graph();
    double beta = std::log(2.0) / 2.0;
    HarmonicVector psi = phi_component(g, beta, component_named(g, "C2")).vector;

    double total = 0.0;
    for (int v = 0; v < g.vertex_count(); ++v)
      total += eval_gauge_invariant(g, psi, beta, Word::projection(v));
    CHECK(total == doctest::Approx(1.0));

    Word diag = make_word(g, {"e2"}, g.vertex_index("v2"), {"e2"}, g.vertex_index("v2"));
    CHECK(eval_gauge_invariant(g, psi, beta, diag) ==
          doctest::Approx(std::exp(-beta) * psi.at(g.vertex_index("v3"))));

    Word off = make_word(g, {"e2"}, g.vertex_index("v2"), {}, g.vertex_index("v3"));
    CHECK(eval_gauge_invariant(g, psi, beta, off) == 0.0);
    CHECK(eval_gauge_invariant(g, psi, beta, Word::zero_word()) == 0.0);
  }

  TEST_CASE("circular data extraction") {
    Graph g = reference_graph();
    CircularData c3 = CircularData::from_component(g, component_named(g, "C3"));
    CHECK(c3.base == g.vertex_index("v8"));
    CHECK(c3.period == 1);
    CHECK(c3.loop.edges == std::vector<int>{g.edge_index("c")});

    CircularData c1 = CircularData::from_component(g, component_named(g, "C1"));
    CHECK(c1.base == g.vertex_index("v3"));
    CHECK(c1.period == 2);
    CHECK(c1.loop.edges ==
          std::vector<int>{g.edge_index("e3"), g.edge_index("a")});

    CHECK_THROWS_AS(
        (void)CircularData::from_component(g, component_named(g, "C2")), Error);
  }

  TEST_CASE("circle state context on the self-loop family") {
    Graph g = reference_graph("F1");
    double beta = 1.0;
    CircularData data = CircularData::from_component(g, component_named(g, "C3"));
    CircularStateContext ctx(g, beta, data);

    // closed-form normalizer: base itself, v7 direct, v9 through the return
    // cycles, v10 one step behind v9
    double e1 = std::exp(-beta), e2 = std::exp(-2.0 * beta);
    double geom = 1.0 / (1.0 - 2.0 * e2);
    double z = 1.0 + e1 + e1 * geom + 2.0 * e2 * geom;
    CHECK(ctx.normalizer() == doctest::Approx(z).epsilon(1e-12));
    CHECK(ctx.normalizer() == doctest::Approx(2.243409727337009).epsilon(1e-12));

    CHECK(ctx.passage_weight(g.vertex_index("v8")) == doctest::Approx(1.0));
    CHECK(ctx.passage_weight(g.vertex_index("v7")) == doctest::Approx(e1));
    CHECK(ctx.passage_weight(g.vertex_index("v9")) == doctest::Approx(e1 * geom));
    CHECK(ctx.passage_weight(g.vertex_index("v10")) ==
          doctest::Approx(2.0 * e2 * geom));
    CHECK(ctx.passage_weight(g.vertex_index("v5")) == 0.0);

    std::complex<double> i(0.0, 1.0);
    int v8 = g.vertex_index("v8");
    CHECK(ctx.evaluate(i, Word::projection(v8)).real() ==
          doctest::Approx(1.0 / z));
    Word loop_word = make_word(g, {"c"}, v8, {}, v8);
    std::complex<double> got = ctx.evaluate(i, loop_word);
    CHECK(got.real() == doctest::Approx(0.0));
    CHECK(got.imag() == doctest::Approx(1.0 / z));
    CHECK(got.imag() == doctest::Approx(0.4457500508331255));

    Word step = make_word(g, {"e10"}, g.vertex_index("v7"), {"e10"},
                          g.vertex_index("v7"));
    CHECK(ctx.evaluate(i, step).real() == doctest::Approx(e1 / z));

    // the free-function wrapper agrees
    std::complex<double> via_free = eval_omega_lambda(g, beta, data, i, loop_word);
    CHECK(std::abs(via_free - got) <= 1e-15);

    // circle parameter must sit on the circle
    CHECK_THROWS_AS((void)ctx.evaluate(std::complex<double>(2.0, 0.0), loop_word),
                    Error);
  }

  TEST_CASE("off-period and mismatched-base words vanish") {
    Graph g = reference_graph("F2");
    CircularData data = CircularData::from_component(g, component_named(g, "C1"));
    CircularStateContext ctx(g, 0.7, data);
    // |mu| - |nu| = 1 is not a multiple of the period 2
    Word w = make_word(g, {"e3"}, g.vertex_index("v3"), {}, g.vertex_index("v4"));
    CHECK(std::abs(ctx.evaluate({0.0, 1.0}, w)) == 0.0);
    // off-closure words vanish too
    CHECK(std::abs(ctx.evaluate({0.0, 1.0},
                                Word::projection(g.vertex_index("v8")))) == 0.0);
  }

  TEST_CASE("context construction guards") {
    Graph g = reference_graph();
    // nonzero loop weight
    CircularData c3 = CircularData::from_component(g, component_named(g, "C3"));
    CHECK_THROWS_AS((void)CircularStateContext(g, 1.0, c3), Error);
    // diverging passage series upstream
    Graph f1 = reference_graph("F1");
    CircularData z3 = CircularData::from_component(f1, component_named(f1, "C3"));
    CHECK_THROWS_AS((void)CircularStateContext(f1, 0.2, z3), Error);
    CHECK_NOTHROW(CircularStateContext(f1, 1.0, z3));
  }

  TEST_CASE("fourier zero layer is the harmonic vector of the family") {
    Graph f1 = reference_graph("F1");
    CircularData data = CircularData::from_component(f1, component_named(f1, "C3"));
    for (double beta : {0.5, 1.0, 2.3}) {
      CircularStateContext ctx(f1, beta, data);
      HarmonicVector zero_layer = ctx.fourier_zero_vector();
      CHECK(zero_layer.sum() == doctest::Approx(1.0));
      HarmonicVector direct =
          phi_component(f1, beta, component_named(f1, "C3")).vector;
      for (int v = 0; v < f1.vertex_count(); ++v)
        CHECK(zero_layer.at(v) == doctest::Approx(direct.at(v)).epsilon(1e-10));
    }
  }

  TEST_CASE("circle states against path enumeration") {
    std::mt19937_64 rng(703);
    struct Case {
      const char* profile;
      const char* label;
      double beta;
    };
    const Case cases[] = {{"F1", "C3", 0.9}, {"F1", "C3", 1.7}, {"F2", "C1", 0.6}};
    for (const Case& tc : cases) {
      Graph g = reference_graph(tc.profile);
      CircularData data =
          CircularData::from_component(g, component_named(g, tc.label));
      CircularStateContext ctx(g, tc.beta, data);
      testsupport::CircleReference ref =
          testsupport::make_circle_reference(g, tc.beta, data);
      REQUIRE(ref.tail_ok);
      CHECK(std::abs(ctx.normalizer() - ref.z_partial) <=
            ref.tail + 1e-9 * ctx.normalizer());
      std::vector<int> cls = closure(g, data.component.members);
      const std::complex<double> lambdas[] = {
          {1.0, 0.0}, {0.0, 1.0}, std::polar(1.0, 2.0 * M_PI / 7.0)};
      for (int trial = 0; trial < 60; ++trial) {
        Word w = testsupport::random_closure_word(g, rng, cls, 5);
        for (const auto& lambda : lambdas) {
          std::complex<double> got = ctx.evaluate(lambda, w);
          std::complex<double> want = ref.evaluate_partial(g, lambda, w);
          CHECK(std::abs(got - want) <=
                2.0 * ref.tail / ref.z_partial + 1e-9);
        }
      }
    }
  }

  TEST_CASE("state evaluator mixes terms linearly") {
    Graph g = reference_graph();
    double beta = std::log(2.0) / 2.0;
    KmsStateSpec spec;
    spec.beta = beta;
    spec.sinks.push_back({g.vertex_index("s1"), 0.6});
    spec.point_components.push_back({component_named(g, "C2"), 0.4});
    StateEvaluator omega(g, spec, {});

    Word p2 = Word::projection(g.vertex_index("v2"));
    CHECK(omega(p2).real() == doctest::Approx(0.3097320123875985).epsilon(1e-12));
    CHECK(omega(p2).imag() == 0.0);

    // agrees with the hand mixture of the two extreme vectors
    HarmonicVector s1 = phi_sink(g, beta, g.vertex_index("s1")).vector;
    HarmonicVector c2 = phi_component(g, beta, component_named(g, "C2")).vector;
    std::mt19937_64 rng(704);
    for (int trial = 0; trial < 100; ++trial) {
      Word w = testsupport::random_word(g, rng, 5);
      double want = 0.6 * eval_gauge_invariant(g, s1, beta, w) +
                    0.4 * eval_gauge_invariant(g, c2, beta, w);
      CHECK(omega(w).real() == doctest::Approx(want).epsilon(1e-12));
      CHECK(omega(w).imag() == 0.0);
    }

    // total mass one
    std::complex<double> total;
    for (int v = 0; v < g.vertex_count(); ++v)
      total += omega(Word::projection(v));
    CHECK(total.real() == doctest::Approx(1.0));
  }

  TEST_CASE("state evaluator with circle measures") {
    Graph g = reference_graph("F1");
    double beta = 1.0;
    CircularData data = CircularData::from_component(g, component_named(g, "C3"));
    CircularStateContext ctx(g, beta, data);
    int v8 = g.vertex_index("v8");
    Word loop_word = make_word(g, {"c"}, v8, {}, v8);

    KmsStateSpec atom_spec;
    atom_spec.beta = beta;
    CircleMeasure atoms;
    atoms.kind = CircleMeasure::Kind::Atoms;
    atoms.atoms.push_back({{0.0, 1.0}, 1.0});
    atom_spec.circles.push_back({component_named(g, "C3"), 1.0, atoms});
    StateEvaluator at_i(g, atom_spec, {});
    CHECK(at_i(loop_word).imag() == doctest::Approx(0.4457500508331255));
    CHECK(at_i(Word::projection(v8)).real() ==
          doctest::Approx(1.0 / ctx.normalizer()));

    KmsStateSpec leb_spec;
    leb_spec.beta = beta;
    leb_spec.circles.push_back({component_named(g, "C3"), 1.0, CircleMeasure{}});
    StateEvaluator averaged(g, leb_spec, {});
    CHECK(std::abs(averaged(loop_word)) == doctest::Approx(0.0));

    // averaging over the circle recovers the gauge-invariant state
    std::mt19937_64 rng(705);
    HarmonicVector zero_layer = ctx.fourier_zero_vector();
    std::vector<int> cls = closure(g, data.component.members);
    for (int trial = 0; trial < 100; ++trial) {
      Word w = testsupport::random_closure_word(g, rng, cls, 5);
      double want = eval_gauge_invariant(g, zero_layer, beta, w);
      CHECK(averaged(w).real() == doctest::Approx(want).epsilon(1e-10));
      CHECK(averaged(w).imag() == doctest::Approx(0.0));
    }

    // malformed measures are rejected
    KmsStateSpec bad;
    bad.beta = beta;
    CircleMeasure short_mass;
    short_mass.kind = CircleMeasure::Kind::Atoms;
    short_mass.atoms.push_back({{1.0, 0.0}, 0.5});
    bad.circles.push_back({component_named(g, "C3"), 1.0, short_mass});
    CHECK_THROWS_AS(StateEvaluator(g, bad, {}), Error);
  }

  TEST_CASE("equilibrium condition holds for extreme states") {
    std::mt19937_64 rng(706);
    Graph g = reference_graph();
    double beta = std::log(2.0) / 2.0;
    for (const ExtremePoint& p : extreme_points(g, beta)) {
      StateFn omega = [&](const Word& w) {
        return std::complex<double>(eval_gauge_invariant(g, p.vector, beta, w), 0.0);
      };
      for (int trial = 0; trial < 120; ++trial) {
        Word w1 = testsupport::random_word(g, rng, 5);
        Word w2 = testsupport::random_word(g, rng, 5);
        CHECK(kms_check(g, omega, beta, w1, w2) <= 1e-10);
      }
    }
  }

  TEST_CASE("equilibrium condition detects a wrong inverse temperature") {
    Graph g = reference_graph();
    double beta = 1.0;
    HarmonicVector psi = phi_sink(g, beta, g.vertex_index("s1")).vector;
    StateFn omega = [&](const Word& w) {
      return std::complex<double>(eval_gauge_invariant(g, psi, beta, w), 0.0);
    };
    Word up = make_word(g, {"e1"}, g.vertex_index("v2"), {}, g.vertex_index("s1"));
    double at_true = kms_check(g, omega, beta, up, up.adjoint());
    double at_false = kms_check(g, omega, 2.0, up, up.adjoint());
    CHECK(at_true <= 1e-12);
    CHECK(at_false > 1e-3);
  }
}
