#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "kmsgraph/ground.hpp"
#include "support/fixtures.hpp"

using namespace kmsgraph;
using testsupport::reference_graph;

TEST_SUITE("ground") {
  TEST_CASE("potentials under uniform weights are all zero") {
    Graph g = reference_graph();
    Potentials m = potentials(g);
    for (int v = 0; v < g.vertex_count(); ++v) {
      CHECK(m.finite(v));
      CHECK(m.at(v) == 0.0);
    }
    TightSubgraph t = tight_subgraph(g, m);
    CHECK(t.tight_edges.empty());  // every edge raises the weight
    CHECK(t.start_vertices.size() == static_cast<size_t>(g.vertex_count()));
  }

  TEST_CASE("negative cycles push their forward set to minus infinity") {
    Graph g = reference_graph("F1");  // the a/e3 cycle weighs -1
    Potentials m = potentials(g);
    for (const char* id : {"v3", "v4", "v5", "v6"})
      CHECK_FALSE(m.finite(g.vertex_index(id)));
    for (const char* id : {"s1", "v2", "v7", "v8", "v9", "v10", "s2"})
      CHECK(m.finite(g.vertex_index(id)));
    CHECK(m.at(g.vertex_index("v3")) ==
          -std::numeric_limits<double>::infinity());
    CHECK(m.at(g.vertex_index("v8")) == 0.0);

    TightSubgraph t = tight_subgraph(g, m);
    CHECK(t.tight_edges == std::vector<int>{g.edge_index("c")});
  }

  TEST_CASE("finite negative potentials and their tight edges") {
    Graph g = reference_graph("F2");  // a weighs -1, the a/e3 cycle weighs 0
    Potentials m = potentials(g);
    CHECK(m.at(g.vertex_index("v3")) == doctest::Approx(-1.0));
    CHECK(m.at(g.vertex_index("v4")) == 0.0);
    CHECK(m.at(g.vertex_index("v2")) == 0.0);
    CHECK(m.at(g.vertex_index("v5")) == doctest::Approx(0.0));
    // d/e15 weighs -0.5 per turn: everything fed by it dives
    for (const char* id : {"v8", "v9", "v10", "s2"})
      CHECK_FALSE(m.finite(g.vertex_index(id)));

    TightSubgraph t = tight_subgraph(g, m);
    std::vector<int> want = {g.edge_index("e3"), g.edge_index("a"),
                             g.edge_index("e5")};
    std::sort(want.begin(), want.end());
    CHECK(t.tight_edges == want);
    CHECK(t.is_tight(g.edge_index("a")));
    CHECK_FALSE(t.is_tight(g.edge_index("e1")));
    // v3 has potential -1: not an admissible start
    for (int v : t.start_vertices) CHECK(v != g.vertex_index("v3"));
  }

  TEST_CASE("minimizing boundary paths") {
    Graph g = reference_graph("F2");

    // the trivial path at s1 minimizes (source potential zero, no edges)
    CHECK(min_membership(g, BoundaryPath::ending_at_sink(
                                Path::trivial(g.vertex_index("s1")))));
    // e1 climbs weight 1: not minimizing
    CHECK_FALSE(min_membership(
        g, BoundaryPath::ending_at_sink(Path{{g.edge_index("e1")}, g.vertex_index("v2")})));
    // spiraling into the zero cycle from v4, forever
    Path cycle{{g.edge_index("a"), g.edge_index("e3")}, g.vertex_index("v4")};
    CHECK(min_membership(g, BoundaryPath::periodic(
                                Path::trivial(g.vertex_index("v4")), cycle)));
    // the same orbit entered through e5... e5 leads away from the cycle; use
    // the v3-based rotation with a nonempty prefix instead
    Path enter{{g.edge_index("e3")}, g.vertex_index("v3")};
    Path rotated{{g.edge_index("a"), g.edge_index("e3")}, g.vertex_index("v4")};
    // prefix e3 from v3: source potential is -1, not zero: not minimizing
    CHECK_FALSE(min_membership(g, BoundaryPath::periodic(enter, rotated)));

    // malformed inputs are rejected
    CHECK_THROWS_AS(  // finite path must end at a sink
        (void)min_membership(g, BoundaryPath::ending_at_sink(
                                    Path::trivial(g.vertex_index("v4")))),
        Error);
    CHECK_THROWS_AS(  // cycle must close up
        (void)min_membership(
            g, BoundaryPath::periodic(Path::trivial(g.vertex_index("v3")),
                                      Path{{g.edge_index("e3")}, g.vertex_index("v3")})),
        Error);
    CHECK_THROWS_AS(  // cycle must continue the prefix
        (void)min_membership(
            g, BoundaryPath::periodic(Path::trivial(g.vertex_index("v2")), cycle)),
        Error);
  }

  TEST_CASE("orbit census across the three profiles") {
    Graph g = reference_graph();
    Census plain = census(g);
    CHECK_FALSE(plain.rich);
    REQUIRE(plain.sink_orbits.size() == 2);
    CHECK(plain.sink_orbits[0].sink == g.vertex_index("s1"));
    CHECK(plain.sink_orbits[0].count == 1);
    CHECK(plain.sink_orbits[1].sink == g.vertex_index("s2"));
    CHECK(plain.sink_orbits[1].count == 1);
    CHECK(plain.cycle_orbits.empty());

    Graph f1 = reference_graph("F1");
    Census first = census(f1);
    CHECK_FALSE(first.rich);
    REQUIRE(first.sink_orbits.size() == 2);
    CHECK(first.sink_orbits[0].count == 1);
    CHECK(first.sink_orbits[1].count == 1);
    REQUIRE(first.cycle_orbits.size() == 1);
    CHECK(first.cycle_orbits[0].cycle.base == f1.vertex_index("v8"));
    CHECK(first.cycle_orbits[0].cycle.edges ==
          std::vector<int>{f1.edge_index("c")});
    CHECK(first.cycle_orbits[0].count == 1);

    Graph f2 = reference_graph("F2");
    Census second = census(f2);
    CHECK_FALSE(second.rich);
    CHECK(second.rich_reason.empty());
    REQUIRE(second.sink_orbits.size() == 1);
    CHECK(second.sink_orbits[0].sink == f2.vertex_index("s1"));
    CHECK(second.sink_orbits[0].count == 1);
    REQUIRE(second.cycle_orbits.size() == 1);
    // canonical anchor: the least cycle vertex with zero potential is v4
    CHECK(second.cycle_orbits[0].cycle.base == f2.vertex_index("v4"));
    CHECK(second.cycle_orbits[0].cycle.edges ==
          std::vector<int>{f2.edge_index("a"), f2.edge_index("e3")});
    CHECK(second.cycle_orbits[0].count == 1);
  }

  TEST_CASE("rich censuses") {
    SUBCASE("two zero loops at one vertex") {
      Graph g({"x"}, {{"p", "x", "x", 0.0}, {"q", "x", "x", 0.0},
                      {"r", "x", "x", 1.0}});
      Census c = census(g);
      CHECK(c.rich);
      CHECK_FALSE(c.rich_reason.empty());
    }
    SUBCASE("branching into two tight cycles") {
      Graph g({"w", "x", "y"}, {{"p", "w", "x", 0.0},
                                {"q", "w", "y", 0.0},
                                {"lx", "x", "x", 0.0},
                                {"ly", "y", "y", 0.0}});
      Census c = census(g);
      CHECK(c.rich);
    }
    SUBCASE("tight cycle feeding a sink: infinite orbit") {
      Graph g({"x", "s"}, {{"l", "x", "x", 0.0}, {"e", "x", "s", 0.0}});
      Census c = census(g);
      CHECK(c.rich);
      REQUIRE(c.sink_orbits.size() == 1);
      CHECK(c.sink_orbits[0].count == -1);
    }
    SUBCASE("two disjoint tight cycles are fine") {
      Graph g({"x", "y"}, {{"lx", "x", "x", 0.0}, {"ly", "y", "y", 0.0}});
      Census c = census(g);
      CHECK_FALSE(c.rich);
      CHECK(c.cycle_orbits.size() == 2);
    }
  }

  TEST_CASE("potential fixed point on random graphs") {
    std::mt19937_64 rng(901);
    for (int trial = 0; trial < 60; ++trial) {
      Graph g = testsupport::random_graph(rng);
      Potentials m = potentials(g);
      for (int v = 0; v < g.vertex_count(); ++v) {
        if (!m.finite(v)) {
          // some in-edge comes from a minus-inf vertex, or sits on a
          // negative tight-reachable cycle; spot-check the forward property:
          // minus-inf propagates along edges
          for (int e : g.out_edges(v))
            CHECK_FALSE(m.finite(g.edge(e).dst));
          continue;
        }
        CHECK(m.at(v) <= 1e-12);
        double best = 0.0;
        bool fed_by_inf = false;
        for (int e : g.in_edges(v)) {
          int s = g.edge(e).src;
          if (!m.finite(s)) {
            fed_by_inf = true;
            break;
          }
          best = std::min(best, m.at(s) + g.edge(e).weight);
        }
        CHECK_FALSE(fed_by_inf);
        CHECK(m.at(v) == doctest::Approx(best).epsilon(1e-10));
      }
      // tight edges satisfy their defining equation
      TightSubgraph t = tight_subgraph(g, m);
      for (int e : t.tight_edges) {
        int s = g.edge(e).src, d = g.edge(e).dst;
        CHECK(m.finite(s));
        CHECK(m.finite(d));
        CHECK(std::abs(m.at(d) - (m.at(s) + g.edge(e).weight)) <= 1e-9);
      }
    }
  }

  TEST_CASE("census agrees with membership checks on the fixture") {
    Graph g = reference_graph("F2");
    Census c = census(g);
    // every reported sink orbit of count 1 is witnessed by the trivial path
    for (const auto& orbit : c.sink_orbits) {
      if (orbit.count != 1) continue;
      CHECK(min_membership(g, BoundaryPath::ending_at_sink(Path::trivial(orbit.sink))));
    }
    for (const auto& orbit : c.cycle_orbits) {
      BoundaryPath bp = BoundaryPath::periodic(Path::trivial(orbit.cycle.base),
                                               orbit.cycle);
      CHECK(min_membership(g, bp));
    }
  }
}
