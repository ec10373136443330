#include <doctest.h>

#include <array>
#include <numbers>

#include "relaysim/propagation.hpp"
#include "relaysim/simengine.hpp"
#include "support.hpp"

using namespace relaysim;

namespace {

PhysicalModel lns() { return {LinkModel::LognormalShadowing, 75.0, 4.0}; }
PhysicalModel udg() { return {LinkModel::UnitDisk, 75.0, 4.0}; }

}  // namespace

TEST_CASE("reception probability values") {
  CHECK(reception_probability(75.0, lns()) == 0.5);
  CHECK(reception_probability(150.0, lns()) == 0.0);
  CHECK(reception_probability(37.5, lns()) == doctest::Approx(511.0 / 512.0));
  CHECK(reception_probability(0.0, lns()) == 1.0);
  CHECK(reception_probability(1000.0, lns()) == 0.0);
  CHECK(reception_probability(112.5, lns()) == doctest::Approx(1.0 / 512.0));

  CHECK(reception_probability(75.0001, udg()) == 0.0);
  CHECK(reception_probability(75.0, udg()) == 1.0);
  CHECK(reception_probability(0.0, udg()) == 1.0);

  CHECK_THROWS_AS(reception_probability(-1.0, lns()), ParamError);
}

TEST_CASE("reception probability is monotone and continuous") {
  for (double alpha : {2.0, 3.0, 4.0, 2.5}) {
    const PhysicalModel m{LinkModel::LognormalShadowing, 75.0, alpha};
    double prev = 1.0;
    for (double x = 0.0; x <= 160.0; x += 0.01) {
      const double p = reception_probability(x, m);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      CHECK(p <= prev);
      CHECK(prev - p < 1e-3);
      prev = p;
    }
  }
}

TEST_CASE("neighbor seen probability") {
  CHECK(neighbor_seen_probability(0.5, 3.0) == doctest::Approx(0.875));
  CHECK(neighbor_seen_probability(0.0, 3.0) == 0.0);
  CHECK(neighbor_seen_probability(1.0, 3.0) == 1.0);
  CHECK(neighbor_seen_probability(0.0, 7.5) == 0.0);
  CHECK(neighbor_seen_probability(1.0, 1.5) == 1.0);
  CHECK(neighbor_seen_probability(0.3, 2.0) < neighbor_seen_probability(0.4, 2.0));
  CHECK(neighbor_seen_probability(0.3, 2.0) < neighbor_seen_probability(0.3, 3.0));
  CHECK_THROWS_AS(neighbor_seen_probability(-0.1, 3.0), ParamError);
  CHECK_THROWS_AS(neighbor_seen_probability(1.1, 3.0), ParamError);
}

TEST_CASE("topology from fixed positions") {
  const SimParams p = test::small_params(2);
  const Topology topo = build_topology(p, {{0, 0}, {75, 0}});
  CHECK(topo.prob(0, 1) == 0.5);
  CHECK(topo.prob(1, 0) == 0.5);
  CHECK(topo.prob(0, 0) == 0.0);
  REQUIRE(topo.links(0).size() == 1);
  CHECK(topo.links(0)[0] == Link{1, 0.5});
  CHECK(build_topology(p, {{0, 0}, {1, 1}, {2, 2}}).size() == 3);
}

TEST_CASE("topology construction is deterministic and symmetric") {
  SimParams p = test::small_params(300);
  p.seed = 42;
  auto s1 = TrialStreams::for_trial(p.seed, 4);
  auto s2 = TrialStreams::for_trial(p.seed, 4);
  const Topology a = build_topology(p, s1.topo);
  const Topology b = build_topology(p, s2.topo);
  CHECK(a == b);
  CHECK(build_knowledge(a, p, s1.knowledge) == build_knowledge(b, p, s2.knowledge));

  for (NodeId u = 0; u < a.size(); ++u) {
    const auto& pos = a.position(u);
    CHECK(pos.x >= 0.0);
    CHECK(pos.x <= a.side());
    CHECK(pos.y >= 0.0);
    CHECK(pos.y <= a.side());
    for (NodeId v = 0; v < a.size(); ++v) {
      if (a.prob(u, v) != a.prob(v, u)) FAIL("asymmetric entry " << u << "," << v);
    }
  }
}

TEST_CASE("knowledge edges follow link support") {
  SimParams p = test::small_params(200);
  Rng rng(9);
  const Topology topo = build_topology(p, rng);
  const KnowledgeGraph kg = build_knowledge(topo, p, rng);
  std::size_t edges = 0;
  for (NodeId u = 0; u < topo.size(); ++u) {
    for (NodeId v : kg.known(u)) {
      CHECK(topo.prob(u, v) > 0.0);
      CHECK(kg.knows(u, v));
      ++edges;
    }
  }
  CHECK(edges == kg.edge_count());

  // p = 1 everywhere: every directed edge exists
  const Topology dense = build_topology(test::small_params(5), {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}});
  const KnowledgeGraph all = build_knowledge(dense, dense.params(), rng);
  CHECK(all.edge_count() == 20);

  // out of range: nothing
  const Topology far = build_topology(test::small_params(2), {{0, 0}, {400, 0}});
  CHECK(build_knowledge(far, far.params(), rng).edge_count() == 0);

  CHECK_THROWS_AS(KnowledgeGraph(std::vector<std::vector<NodeId>>{{0}}), ParamError);
}

TEST_CASE("mean unit-disk degree matches the bounded-square expectation") {
  // E[deg] = (N - 1) * (pi r^2 - 8 r^3 / 3 + r^4 / 2), r = R / L, for two uniform points in a square
  SimParams p;
  p.model.kind = LinkModel::UnitDisk;
  const double r = p.model.radius / density_to_side(p.node_count, p.density, p.model.radius);
  const double expected =
      (p.node_count - 1) * (std::numbers::pi * r * r - 8.0 * r * r * r / 3.0 + r * r * r * r / 2.0);
  CHECK(expected == doctest::Approx(26.52).epsilon(1e-3));

  double total = 0.0;
  const int seeds = 40;
  for (int s = 0; s < seeds; ++s) {
    Rng rng = Rng(static_cast<std::uint64_t>(s)).derive("topo");
    const Topology topo = build_topology(p, rng);
    std::size_t links = 0;
    for (NodeId u = 0; u < topo.size(); ++u) links += topo.links(u).size();
    total += static_cast<double>(links) / topo.size();
  }
  const double mean = total / seeds;
  CHECK(mean >= 24.0);
  CHECK(mean <= 30.0);
  CHECK(mean == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("long links are more often unidirectional") {
  SimParams p = test::small_params(200);
  const std::array<double, 7> edges = {0, 60, 70, 80, 90, 100, 110};
  std::array<double, 6> uni{}, any{};
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto streams = TrialStreams::for_trial(s, 0);
    const Topology topo = build_topology(p, streams.topo);
    const KnowledgeGraph kg = build_knowledge(topo, p, streams.knowledge);
    for (NodeId u = 0; u < topo.size(); ++u) {
      for (const Link& l : topo.links(u)) {
        if (l.peer < u) continue;
        const bool a = kg.knows(u, l.peer), b = kg.knows(l.peer, u);
        if (!a && !b) continue;
        const double d = topo.dist(u, l.peer);
        for (std::size_t k = 0; k < any.size(); ++k) {
          if (d >= edges[k] && d < edges[k + 1]) {
            any[k] += 1;
            uni[k] += a != b;
          }
        }
      }
    }
  }
  double prev = -1.0;
  for (std::size_t k = 0; k < any.size(); ++k) {
    CAPTURE(edges[k]);
    REQUIRE(any[k] > 1000);
    const double frac = uni[k] / any[k];
    CHECK(frac > prev);
    prev = frac;
  }
  CHECK(prev > 0.5);
}

TEST_CASE("two-hop views") {
  SUBCASE("four-relay graph") {
    const TwoHopView view = test::four_relay_view();
    using namespace test;
    CHECK(view.one_hop == std::vector<NodeId>{V1, V2, V3, V4});
    CHECK(view.uncovered_init == std::vector<NodeId>{W1, W2, W3, W4});
    CHECK(view.degree(0) == 3);
  }
  SUBCASE("from knowledge graph") {
    using namespace test;
    const Topology topo = build_topology(small_params(9), std::vector<Point2D>(9, Point2D{}));
    const KnowledgeGraph kg = four_relay_knowledge();
    const TwoHopView view = two_hop_view(kg, topo, U);
    CHECK(view.one_hop == std::vector<NodeId>{V1, V2, V3, V4});
    CHECK(view.uncovered_init == std::vector<NodeId>{W1, W2, W3, W4});
    CHECK(view.one_hop_prob == std::vector<double>(4, 1.0));
  }
  SUBCASE("isolated node") {
    const Topology topo = build_topology(test::small_params(3), {{0, 0}, {0, 0}, {0, 0}});
    const KnowledgeGraph kg({{}, {2}, {1}});
    const TwoHopView view = two_hop_view(kg, topo, 0);
    CHECK(view.empty());
    CHECK(view.two_hop_count() == 0);
  }
  SUBCASE("one-hop nodes are not two-hop nodes") {
    // 0 knows 1 and 2; 1 advertises 2 and 3
    const TwoHopView view = TwoHopView::build(0, {{1, 1.0}, {2, 1.0}}, {{0, 2, 3}, {0}},
                                              [](NodeId, NodeId) { return 0.5; });
    CHECK(view.uncovered_init == std::vector<NodeId>{3});
    CHECK(view.reach_prob(0, 0) == 0.5);
  }
  SUBCASE("directed knowledge") {
    // 1 hears 0 but 0 never heard 1: 1 is not a candidate for 0
    const Topology topo = build_topology(test::small_params(3), {{0, 0}, {0, 0}, {0, 0}});
    const KnowledgeGraph kg({{}, {0, 2}, {1}});
    CHECK(two_hop_view(kg, topo, 0).empty());
    const TwoHopView v1 = two_hop_view(kg, topo, 1);
    CHECK(v1.one_hop == std::vector<NodeId>{0, 2});
    CHECK(v1.uncovered_init.empty());
  }
}
