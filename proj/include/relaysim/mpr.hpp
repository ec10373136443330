#pragma once

// Multipoint relay selection. All four heuristics share the mandatory first
// step (neighbors that alone reach some 2-hop node) and differ in how the
// greedy second step scores candidates and when a 2-hop node counts as
// covered.

#include <cstdint>
#include <span>
#include <vector>

#include "relaysim/model.hpp"
#include "relaysim/topology.hpp"

namespace relaysim {

struct RelaySelection {
  NodeId ego = 0;
  std::vector<NodeId> relays;              // selection order
  std::vector<NodeId> mandatory;           // first-step relays, ascending
  std::vector<NodeId> residual_uncovered;  // ascending
  std::vector<double> scores;              // greedy score when picked; 0 for mandatory relays
};

/// Working set of not-yet-covered 2-hop nodes, by index into
/// view.uncovered_init. `miss[w]` is the running product of (1 - p(v_i, w))
/// over selected relays, so the coverage level is 1 - miss[w].
struct CoverageState {
  std::vector<char> uncovered;
  std::vector<double> miss;
  std::size_t remaining = 0;

  explicit CoverageState(const TwoHopView& view);

  bool is_uncovered(std::size_t w) const noexcept { return uncovered[w] != 0; }
  double level(std::size_t w) const noexcept { return 1.0 - miss[w]; }
  void cover(std::size_t w) noexcept;
};

/// One-hop neighbors that are the only coverer of some strict 2-hop node.
std::vector<NodeId> mandatory_relays(const TwoHopView& view);

/// |uncovered ∩ advertised(v)|. Throws ParamError if v is not a one-hop neighbor.
std::size_t additional_coverage(const TwoHopView& view, NodeId v, const CoverageState& state);

/// 1 - prod over `selected` of (1 - p(v_i, w)), multiplied in list order.
double coverage_level(NodeId w, std::span<const NodeId> selected, const Topology& topo);

RelaySelection select_original(const TwoHopView& view);
RelaySelection select_score(const TwoHopView& view);
RelaySelection select_expected(const TwoHopView& view);
RelaySelection select_threshold(const TwoHopView& view, double threshold);

RelaySelection select_relays(const TwoHopView& view, Heuristic heuristic, double threshold);

}  // namespace relaysim
