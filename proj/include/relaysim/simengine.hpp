#pragma once

// Broadcast trials over an ideal MAC: every transmission reaches each other
// node independently with its link probability, and a node forwards only
// when the sender of its first copy designated it as a relay.

#include <cstdint>
#include <vector>

#include "relaysim/model.hpp"
#include "relaysim/rng.hpp"
#include "relaysim/topology.hpp"

namespace relaysim {

struct TrialStats {
  NodeId source = 0;
  std::uint32_t node_count = 0;
  std::vector<NodeId> received;        // order of first reception, source first
  std::vector<NodeId> transmitted;     // order of transmission
  std::vector<double> relay_distances; // one per (transmitter, designated relay)
  std::vector<std::uint32_t> mpr_sizes;  // one per transmitter

  double delivery_ratio() const noexcept {
    return static_cast<double>(received.size()) / static_cast<double>(node_count);
  }
  double tx_ratio() const noexcept {
    return static_cast<double>(transmitted.size()) / static_cast<double>(received.size());
  }
};

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation

  static Summary of(const std::vector<double>& xs);

  friend bool operator==(const Summary&, const Summary&) = default;
};

struct AggregateStats {
  std::uint32_t trials = 0;
  Summary delivery;
  Summary tx;
  double avg_relay_distance = 0.0;  // pooled over all (transmitter, relay) pairs
  std::uint64_t relay_pairs = 0;
  double avg_mpr_size = 0.0;        // pooled over all transmitters
  std::uint64_t selections = 0;

  friend bool operator==(const AggregateStats&, const AggregateStats&) = default;
};

TrialStats run_trial(const Topology& topo, const KnowledgeGraph& kg, NodeId source,
                     Heuristic heuristic, double threshold, Rng& rng);

/// Largest instance exact_delivery accepts.
inline constexpr std::uint32_t kExactMaxNodes = 10;

/// Exact expected delivery ratio of run_trial, by enumerating every joint
/// reception outcome. Throws ParamError when the topology has more than
/// kExactMaxNodes nodes.
double exact_delivery(const Topology& topo, const KnowledgeGraph& kg, NodeId source,
                      Heuristic heuristic, double threshold);

/// Repeated trials on one fixed instance; mean and spread of the delivery ratio.
Summary monte_carlo_delivery(const Topology& topo, const KnowledgeGraph& kg, NodeId source,
                             Heuristic heuristic, double threshold, std::uint64_t trials,
                             Rng& rng);

/// One independent topology, knowledge graph and random source per trial.
/// `jobs` caps worker threads (0 = hardware concurrency); results do not
/// depend on it.
AggregateStats run_batch(const SimParams& params, unsigned jobs = 0);

/// The per-trial random streams used by run_batch.
struct TrialStreams {
  Rng topo;
  Rng knowledge;
  Rng broadcast;

  static TrialStreams for_trial(std::uint64_t seed, std::uint64_t trial);
};

}  // namespace relaysim
