#include "relaysim/selfcheck.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "relaysim/mpr.hpp"
#include "relaysim/propagation.hpp"
#include "relaysim/simengine.hpp"

namespace relaysim {

namespace {

struct Instance {
  SimParams params;
  Topology topo;
  KnowledgeGraph kg;
};

Instance random_instance(std::uint64_t seed, std::uint64_t index) {
  Rng meta = Rng(seed).derive("selfcheck:" + std::to_string(index));
  SimParams p;
  p.node_count = 5 + static_cast<std::uint32_t>(meta.below(36));
  p.density = 3.0 + 27.0 * meta.uniform();
  p.hello_ratio = 1.5 + 3.5 * meta.uniform();
  p.model.kind = meta.below(5) == 0 ? LinkModel::UnitDisk : LinkModel::LognormalShadowing;
  p.model.alpha = 2.0 + meta.below(4);
  p.reception = meta.below(4) == 0 ? ReceptionRule::AnyInRange : ReceptionRule::KnownSender;
  p.seed = meta.derive("seed").below(~std::uint64_t{0});
  auto streams = TrialStreams::for_trial(p.seed, 0);
  Topology topo = build_topology(p, streams.topo);
  KnowledgeGraph kg = build_knowledge(topo, p, streams.knowledge);
  return {p, std::move(topo), std::move(kg)};
}

bool subset(std::vector<NodeId> a, std::vector<NodeId> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

template <class Fn>
void for_each_view(std::uint64_t seed, std::size_t min_views, Fn fn) {
  std::size_t views = 0;
  for (std::uint64_t i = 0; views < min_views; ++i) {
    const Instance inst = random_instance(seed, i);
    for (NodeId u = 0; u < inst.topo.size(); ++u) {
      const TwoHopView view = two_hop_view(inst.kg, inst.topo, u);
      if (view.two_hop_count() == 0) continue;
      fn(inst, view);
      ++views;
    }
  }
}

void fail(CheckResult& r, const std::string& what) {
  if (r.passed) r.detail = what;
  r.passed = false;
}

std::string where(const Instance& inst, NodeId ego) {
  std::ostringstream s;
  s << "seed " << inst.params.seed << " ego " << ego;
  return s.str();
}

}  // namespace

std::vector<CheckResult> run_property_suite(std::uint64_t seed, std::size_t min_cases) {
  CheckResult completeness{"coverage completeness (original/score/expected)", true, 0, {}};
  CheckResult mandatory{"mandatory relays included (all heuristics)", true, 0, {}};
  CheckResult tau_zero{"threshold 0 selects exactly the mandatory relays", true, 0, {}};
  CheckResult monotone{"coverage level never decreases as relays are appended", true, 0, {}};

  Rng tau_rng = Rng(seed).derive("tau");
  for_each_view(seed, min_cases, [&](const Instance& inst, const TwoHopView& view) {
    const auto must = mandatory_relays(view);

    for (Heuristic h : {Heuristic::Original, Heuristic::Score, Heuristic::Expected}) {
      const auto sel = select_relays(view, h, 0.0);
      std::vector<char> hit(view.two_hop_count(), 0);
      for (NodeId r : sel.relays) {
        const auto i = static_cast<std::size_t>(
            std::lower_bound(view.one_hop.begin(), view.one_hop.end(), r) - view.one_hop.begin());
        for (auto w : view.covers[i]) hit[w] = 1;
      }
      ++completeness.cases;
      if (!sel.residual_uncovered.empty() || std::count(hit.begin(), hit.end(), 0) != 0)
        fail(completeness, std::string(to_string(h)) + " left nodes uncovered at " +
                               where(inst, view.ego));
    }

    for (Heuristic h :
         {Heuristic::Original, Heuristic::Score, Heuristic::Expected, Heuristic::Threshold}) {
      const auto sel = select_relays(view, h, tau_rng.uniform());
      ++mandatory.cases;
      if (!subset(must, sel.relays) || sel.mandatory != must)
        fail(mandatory, std::string(to_string(h)) + " dropped a mandatory relay at " +
                            where(inst, view.ego));
    }

    ++tau_zero.cases;
    auto zero = select_threshold(view, 0.0).relays;
    std::sort(zero.begin(), zero.end());
    if (zero != must) fail(tau_zero, "extra relays at " + where(inst, view.ego));

    std::vector<NodeId> order = view.one_hop;
    Rng shuffle = tau_rng.derive(std::to_string(view.ego));
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[shuffle.below(i)]);
    ++monotone.cases;
    for (NodeId w : view.uncovered_init) {
      double prev = 0.0;
      for (std::size_t k = 0; k <= order.size(); ++k) {
        const double t = coverage_level(w, std::span(order.data(), k), inst.topo);
        if (t < prev || t < 0.0 || t > 1.0) {
          fail(monotone, "coverage level dropped at " + where(inst, view.ego));
          break;
        }
        prev = t;
      }
    }
  });

  CheckResult tx_subset{"transmitted nodes are a subset of received nodes", true, 0, {}};
  CheckResult rerun{"identical seed reproduces identical results", true, 0, {}};
  const Heuristic all[] = {Heuristic::Original, Heuristic::Score, Heuristic::Expected,
                           Heuristic::Threshold};
  for (std::uint64_t i = 0; tx_subset.cases < min_cases; ++i) {
    const Instance inst = random_instance(seed ^ 0x5eedULL, i);
    const Heuristic h = all[i % 4];
    auto run = [h](const Instance& in) {
      auto streams = TrialStreams::for_trial(in.params.seed, 1);
      const auto src = static_cast<NodeId>(streams.broadcast.below(in.topo.size()));
      return run_trial(in.topo, in.kg, src, h, 0.5, streams.broadcast);
    };
    const TrialStats a = run(inst);
    ++tx_subset.cases;
    std::vector<NodeId> recv = a.received;
    if (!subset(a.transmitted, recv) ||
        std::find(recv.begin(), recv.end(), a.source) == recv.end())
      fail(tx_subset, "seed " + std::to_string(inst.params.seed));

    const Instance again = random_instance(seed ^ 0x5eedULL, i);
    const TrialStats b = run(again);
    ++rerun.cases;
    if (!(again.topo == inst.topo) || !(again.kg == inst.kg) || a.received != b.received ||
        a.transmitted != b.transmitted || a.relay_distances != b.relay_distances)
      fail(rerun, "seed " + std::to_string(inst.params.seed));
  }
  {
    SimParams p;
    p.node_count = 60;
    p.trials = 12;
    p.seed = seed;
    p.heuristic = Heuristic::Threshold;
    ++rerun.cases;
    if (!(run_batch(p, 1) == run_batch(p, 3))) fail(rerun, "run_batch differs across job counts");
  }

  return {completeness, mandatory, tau_zero, monotone, tx_subset, rerun};
}

}  // namespace relaysim
