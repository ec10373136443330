#include "relaysim/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relaysim/kernels.hpp"

namespace relaysim {

double reception_probability(double x, const PhysicalModel& model) {
  if (!(x >= 0.0)) throw ParamError("distance must be non-negative, got " + std::to_string(x));
  model.validate();
  return kernels::link_probability(x, kernels::LinkParams::from(model));
}

double neighbor_seen_probability(double p, double hello_ratio) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParamError("probability must lie in [0, 1]");
  if (!(hello_ratio > 1.0)) throw ParamError("hello ratio must be greater than 1");
  return 1.0 - std::pow(1.0 - p, hello_ratio);
}

Topology build_topology(const SimParams& params, Rng& rng) {
  params.validate();
  const double side = density_to_side(params.node_count, params.density, params.model.radius);
  std::vector<Point2D> positions(params.node_count);
  for (auto& p : positions) {
    p.x = rng.uniform() * side;
    p.y = rng.uniform() * side;
  }
  return Topology(params, side, std::move(positions));
}

Topology build_topology(const SimParams& params, std::vector<Point2D> positions) {
  const double side = density_to_side(static_cast<std::uint32_t>(std::max<std::size_t>(1, positions.size())),
                                      params.density, params.model.radius);
  SimParams p = params;
  p.node_count = static_cast<std::uint32_t>(positions.size());
  return Topology(p, side, std::move(positions));
}

KnowledgeGraph build_knowledge(const Topology& topo, const SimParams& params, Rng& rng) {
  std::vector<std::vector<NodeId>> out(topo.size());
  for (NodeId u = 0; u < topo.size(); ++u) {
    for (const Link& l : topo.links(u)) {
      if (rng.bernoulli(neighbor_seen_probability(l.prob, params.hello_ratio)))
        out[u].push_back(l.peer);
    }
  }
  return KnowledgeGraph(std::move(out));
}

TwoHopView two_hop_view(const KnowledgeGraph& kg, const Topology& topo, NodeId u) {
  std::vector<Link> one_hop;
  std::vector<std::vector<NodeId>> advertised;
  for (NodeId v : kg.known(u)) {
    one_hop.push_back({v, topo.prob(u, v)});
    const auto adv = kg.advertised(v);
    advertised.emplace_back(adv.begin(), adv.end());
  }
  return TwoHopView::build(u, std::move(one_hop), std::move(advertised),
                           [&topo](NodeId a, NodeId b) { return topo.prob(a, b); });
}

}  // namespace relaysim
