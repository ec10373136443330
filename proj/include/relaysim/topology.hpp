#pragma once

// Immutable network snapshots: node placement with pairwise reception
// probabilities, the directed neighbor knowledge drawn from HELLO exchange,
// and the 2-hop view a node selects its relays from.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "relaysim/model.hpp"

namespace relaysim {

struct Link {
  NodeId peer;
  double prob;

  friend bool operator==(const Link&, const Link&) = default;
};

class Topology {
public:
  /// Computes every pairwise probability from the positions. Entries are
  /// evaluated once per unordered pair, so the matrix is exactly symmetric.
  Topology(SimParams params, double side, std::vector<Point2D> positions);

  const SimParams& params() const noexcept { return params_; }
  const PhysicalModel& model() const noexcept { return params_.model; }
  double side() const noexcept { return side_; }
  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(positions_.size()); }
  std::span<const Point2D> positions() const noexcept { return positions_; }
  const Point2D& position(NodeId u) const { return positions_[u]; }

  double prob(NodeId u, NodeId v) const noexcept { return link_prob_[std::size_t{u} * size() + v]; }
  std::span<const double> prob_row(NodeId u) const noexcept {
    return {link_prob_.data() + std::size_t{u} * size(), size()};
  }

  /// Peers with p(u, peer) > 0, ascending by id.
  std::span<const Link> links(NodeId u) const noexcept {
    return {links_.data() + link_offsets_[u], links_.data() + link_offsets_[u + 1]};
  }

  double dist(NodeId u, NodeId v) const noexcept { return distance(positions_[u], positions_[v]); }

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.side_ == b.side_ && a.positions_ == b.positions_ && a.link_prob_ == b.link_prob_;
  }

private:
  SimParams params_;
  double side_;
  std::vector<Point2D> positions_;
  std::vector<double> link_prob_;
  std::vector<std::size_t> link_offsets_;
  std::vector<Link> links_;
};

/// Directed "u has v in its neighbor table" relation. The out-list of v is
/// also what v advertises in its HELLO messages.
class KnowledgeGraph {
public:
  KnowledgeGraph() = default;
  /// Adjacency lists are sorted and deduplicated; self-loops are rejected.
  explicit KnowledgeGraph(std::vector<std::vector<NodeId>> out_lists);

  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(offsets_.empty() ? 0 : offsets_.size() - 1); }
  std::span<const NodeId> known(NodeId u) const noexcept {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::span<const NodeId> advertised(NodeId v) const noexcept { return known(v); }
  bool knows(NodeId u, NodeId v) const noexcept;
  std::size_t edge_count() const noexcept { return targets_.size(); }

  friend bool operator==(const KnowledgeGraph&, const KnowledgeGraph&) = default;

private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// Everything a node knows when it picks relays. Candidates (one-hop
/// neighbors) and strict 2-hop nodes are addressed by local indices.
struct TwoHopView {
  NodeId ego = 0;
  std::vector<NodeId> one_hop;                 // ascending
  std::vector<double> one_hop_prob;            // p(ego, one_hop[i])
  std::vector<std::vector<NodeId>> advertised; // advertised(one_hop[i]), ascending
  std::vector<NodeId> uncovered_init;          // strict 2-hop nodes, ascending

  // derived
  std::vector<std::vector<std::uint32_t>> covers;  // indices into uncovered_init per candidate
  std::vector<double> reach;  // p(one_hop[i], uncovered_init[w]) at [i * M + w]

  std::size_t candidate_count() const noexcept { return one_hop.size(); }
  std::size_t two_hop_count() const noexcept { return uncovered_init.size(); }
  std::size_t degree(std::size_t i) const noexcept { return advertised[i].size(); }
  double reach_prob(std::size_t i, std::size_t w) const noexcept {
    return reach[i * uncovered_init.size() + w];
  }
  bool empty() const noexcept { return one_hop.empty(); }

  using LinkProbFn = std::function<double(NodeId, NodeId)>;

  /// Assembles a view from raw neighbor data. `link_prob(v, w)` supplies
  /// the relay-to-2-hop probabilities.
  static TwoHopView build(NodeId ego, std::vector<Link> one_hop,
                          std::vector<std::vector<NodeId>> advertised,
                          const LinkProbFn& link_prob);
};

}  // namespace relaysim
