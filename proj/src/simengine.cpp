#include "relaysim/simengine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include "relaysim/mpr.hpp"
#include "relaysim/propagation.hpp"

namespace relaysim {

Summary Summary::of(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  double sq = 0.0;
  for (double x : xs) sq += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(xs.size()));
  return s;
}

namespace {

bool can_receive(const Topology& topo, const KnowledgeGraph& kg, NodeId sender, NodeId w) {
  return topo.params().reception == ReceptionRule::AnyInRange || kg.knows(w, sender);
}

std::vector<NodeId> designated_sorted(const RelaySelection& sel) {
  auto d = sel.relays;
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TrialStats run_trial(const Topology& topo, const KnowledgeGraph& kg, NodeId source,
                     Heuristic heuristic, double threshold, Rng& rng) {
  const std::uint32_t n = topo.size();
  if (source >= n) throw ParamError("source out of range");

  TrialStats stats;
  stats.source = source;
  stats.node_count = n;
  std::vector<char> received(n, 0);

  struct Transmission {
    NodeId sender;
    std::vector<NodeId> designated;  // ascending
  };
  std::deque<Transmission> queue;

  auto transmit = [&](NodeId s) {
    const auto sel = select_relays(two_hop_view(kg, topo, s), heuristic, threshold);
    stats.transmitted.push_back(s);
    stats.mpr_sizes.push_back(static_cast<std::uint32_t>(sel.relays.size()));
    for (NodeId r : sel.relays) stats.relay_distances.push_back(topo.dist(s, r));
    queue.push_back({s, designated_sorted(sel)});
  };

  received[source] = 1;
  stats.received.push_back(source);
  transmit(source);

  while (!queue.empty()) {
    const Transmission tx = std::move(queue.front());
    queue.pop_front();
    for (const Link& l : topo.links(tx.sender)) {
      if (received[l.peer]) continue;  // later copies change nothing
      if (!can_receive(topo, kg, tx.sender, l.peer)) continue;
      if (!rng.bernoulli(l.prob)) continue;
      received[l.peer] = 1;
      stats.received.push_back(l.peer);
      if (std::binary_search(tx.designated.begin(), tx.designated.end(), l.peer))
        transmit(l.peer);
    }
  }
  return stats;
}

namespace {

class ExactSolver {
public:
  ExactSolver(const Topology& topo, const KnowledgeGraph& kg, Heuristic h, double threshold)
      : topo_(topo), kg_(kg), designated_(topo.size()) {
    for (NodeId v = 0; v < topo.size(); ++v)
      designated_[v] = designated_sorted(select_relays(two_hop_view(kg, topo, v), h, threshold));
  }

  // expected final number of receivers from this state
  double expand(std::uint32_t mask, const std::vector<NodeId>& queue) {
    if (queue.empty()) return static_cast<double>(std::popcount(mask));
    auto key = std::make_pair(mask, queue);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const NodeId s = queue.front();
    std::vector<Link> uncertain;
    std::uint32_t certain = 0;
    for (const Link& l : topo_.links(s)) {
      if (mask & (1u << l.peer)) continue;
      if (!can_receive(topo_, kg_, s, l.peer)) continue;
      if (l.prob >= 1.0)
        certain |= 1u << l.peer;
      else
        uncertain.push_back(l);
    }

    double total = 0.0;
    const std::uint32_t outcomes = 1u << uncertain.size();
    for (std::uint32_t pick = 0; pick < outcomes; ++pick) {
      double prob = 1.0;
      std::uint32_t fresh = certain;
      for (std::size_t j = 0; j < uncertain.size(); ++j) {
        if (pick & (1u << j)) {
          prob *= uncertain[j].prob;
          fresh |= 1u << uncertain[j].peer;
        } else {
          prob *= 1.0 - uncertain[j].prob;
        }
      }
      if (prob == 0.0) continue;
      std::vector<NodeId> next(queue.begin() + 1, queue.end());
      const auto& d = designated_[s];
      for (NodeId w = 0; w < topo_.size(); ++w) {
        if ((fresh & (1u << w)) && std::binary_search(d.begin(), d.end(), w)) next.push_back(w);
      }
      total += prob * expand(mask | fresh, next);
    }
    memo_.emplace(std::move(key), total);
    return total;
  }

private:
  const Topology& topo_;
  const KnowledgeGraph& kg_;
  std::vector<std::vector<NodeId>> designated_;
  std::map<std::pair<std::uint32_t, std::vector<NodeId>>, double> memo_;
};

}  // namespace

double exact_delivery(const Topology& topo, const KnowledgeGraph& kg, NodeId source,
                      Heuristic heuristic, double threshold) {
  if (topo.size() > kExactMaxNodes)
    throw ParamError("exact_delivery supports at most " + std::to_string(kExactMaxNodes) +
                     " nodes, got " + std::to_string(topo.size()));
  if (source >= topo.size()) throw ParamError("source out of range");
  ExactSolver solver(topo, kg, heuristic, threshold);
  return solver.expand(1u << source, {source}) / static_cast<double>(topo.size());
}

Summary monte_carlo_delivery(const Topology& topo, const KnowledgeGraph& kg, NodeId source,
                             Heuristic heuristic, double threshold, std::uint64_t trials,
                             Rng& rng) {
  std::vector<double> ratios;
  ratios.reserve(trials);
  for (std::uint64_t k = 0; k < trials; ++k)
    ratios.push_back(run_trial(topo, kg, source, heuristic, threshold, rng).delivery_ratio());
  return Summary::of(ratios);
}

TrialStreams TrialStreams::for_trial(std::uint64_t seed, std::uint64_t trial) {
  const Rng base = Rng(seed).derive("trial:" + std::to_string(trial));
  return {base.derive("topo"), base.derive("knowledge"), base.derive("broadcast")};
}

namespace {

struct TrialRecord {
  double delivery = 0.0;
  double tx = 0.0;
  double relay_distance_sum = 0.0;
  std::uint64_t relay_pairs = 0;
  std::uint64_t mpr_size_sum = 0;
  std::uint64_t selections = 0;
};

TrialRecord run_one(const SimParams& params, std::uint64_t k) {
  auto streams = TrialStreams::for_trial(params.seed, k);
  const Topology topo = build_topology(params, streams.topo);
  const KnowledgeGraph kg = build_knowledge(topo, params, streams.knowledge);
  const auto source = static_cast<NodeId>(streams.broadcast.below(params.node_count));
  const TrialStats st =
      run_trial(topo, kg, source, params.heuristic, params.threshold, streams.broadcast);

  TrialRecord r;
  r.delivery = st.delivery_ratio();
  r.tx = st.tx_ratio();
  for (double d : st.relay_distances) r.relay_distance_sum += d;
  r.relay_pairs = st.relay_distances.size();
  for (auto m : st.mpr_sizes) r.mpr_size_sum += m;
  r.selections = st.mpr_sizes.size();
  return r;
}

}  // namespace

AggregateStats run_batch(const SimParams& params, unsigned jobs) {
  params.validate();
  const std::uint32_t trials = params.trials;
  std::vector<TrialRecord> records(trials);

  unsigned workers = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
  workers = std::min<unsigned>(workers, trials);
  if (workers <= 1) {
    for (std::uint32_t k = 0; k < trials; ++k) records[k] = run_one(params, k);
  } else {
    std::atomic<std::uint32_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::uint32_t k = next++; k < trials; k = next++) {
            try {
              records[k] = run_one(params, k);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  // reduce in trial order so the result is independent of scheduling
  AggregateStats agg;
  agg.trials = trials;
  std::vector<double> delivery, tx;
  double dist_sum = 0.0;
  std::uint64_t mpr_sum = 0;
  for (const auto& r : records) {
    delivery.push_back(r.delivery);
    tx.push_back(r.tx);
    dist_sum += r.relay_distance_sum;
    agg.relay_pairs += r.relay_pairs;
    mpr_sum += r.mpr_size_sum;
    agg.selections += r.selections;
  }
  agg.delivery = Summary::of(delivery);
  agg.tx = Summary::of(tx);
  agg.avg_relay_distance = agg.relay_pairs ? dist_sum / static_cast<double>(agg.relay_pairs) : 0.0;
  agg.avg_mpr_size =
      agg.selections ? static_cast<double>(mpr_sum) / static_cast<double>(agg.selections) : 0.0;
  return agg;
}

}  // namespace relaysim
