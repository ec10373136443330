#include "relaysim/mpr.hpp"

#include <algorithm>
#include <string>

namespace relaysim {

CoverageState::CoverageState(const TwoHopView& view)
    : uncovered(view.two_hop_count(), 1),
      miss(view.two_hop_count(), 1.0),
      remaining(view.two_hop_count()) {}

void CoverageState::cover(std::size_t w) noexcept {
  if (uncovered[w]) {
    uncovered[w] = 0;
    --remaining;
  }
}

namespace {

std::vector<std::size_t> mandatory_indices(const TwoHopView& view) {
  std::vector<std::uint32_t> coverers(view.two_hop_count(), 0);
  for (const auto& c : view.covers)
    for (auto w : c) ++coverers[w];
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < view.candidate_count(); ++i) {
    const auto& c = view.covers[i];
    if (std::any_of(c.begin(), c.end(), [&](std::uint32_t w) { return coverers[w] == 1; }))
      out.push_back(i);
  }
  return out;
}

std::size_t count_uncovered(const TwoHopView& view, std::size_t i, const CoverageState& st) {
  std::size_t c = 0;
  for (auto w : view.covers[i]) c += st.uncovered[w];
  return c;
}

double mean_reach_uncovered(const TwoHopView& view, std::size_t i, const CoverageState& st) {
  std::size_t c = 0;
  double sum = 0.0;
  for (auto w : view.covers[i]) {
    if (st.uncovered[w]) {
      sum += view.reach_prob(i, w);
      ++c;
    }
  }
  return c == 0 ? 0.0 : sum / static_cast<double>(c);
}

enum class Removal { Plain, Threshold };

class Greedy {
public:
  Greedy(const TwoHopView& view, Removal removal, double threshold)
      : view_(view), state_(view), chosen_(view.candidate_count(), 0), removal_(removal),
        threshold_(threshold) {
    sel_.ego = view.ego;
  }

  void run_mandatory() {
    for (std::size_t i : mandatory_indices(view_)) {
      sel_.mandatory.push_back(view_.one_hop[i]);
      add(i, 0.0);
    }
    if (removal_ == Removal::Threshold) sweep_threshold();
  }

  template <class ScoreFn>
  void run_greedy(ScoreFn score) {
    while (state_.remaining > 0) {
      std::size_t best = view_.candidate_count();
      double best_score = 0.0;
      for (std::size_t i = 0; i < view_.candidate_count(); ++i) {
        if (chosen_[i]) continue;
        const double s = score(i, state_);
        if (!(s > 0.0)) continue;
        if (best == view_.candidate_count() || better(s, i, best_score, best)) {
          best = i;
          best_score = s;
        }
      }
      if (best == view_.candidate_count()) break;
      add(best, best_score);
      if (removal_ == Removal::Threshold) sweep_threshold();
    }
  }

  RelaySelection finish() {
    for (std::size_t w = 0; w < view_.two_hop_count(); ++w)
      if (state_.uncovered[w]) sel_.residual_uncovered.push_back(view_.uncovered_init[w]);
    return std::move(sel_);
  }

private:
  // higher score, then higher degree, then lower id (one_hop is ascending)
  bool better(double s, std::size_t i, double best_s, std::size_t best) const {
    if (s != best_s) return s > best_s;
    if (view_.degree(i) != view_.degree(best)) return view_.degree(i) > view_.degree(best);
    return i < best;
  }

  void add(std::size_t i, double score) {
    chosen_[i] = 1;
    sel_.relays.push_back(view_.one_hop[i]);
    sel_.scores.push_back(score);
    if (removal_ == Removal::Plain) {
      for (auto w : view_.covers[i]) state_.cover(w);
    } else {
      for (std::size_t w = 0; w < view_.two_hop_count(); ++w)
        state_.miss[w] *= 1.0 - view_.reach_prob(i, w);
    }
  }

  void sweep_threshold() {
    for (std::size_t w = 0; w < view_.two_hop_count(); ++w)
      if (state_.uncovered[w] && state_.level(w) >= threshold_) state_.cover(w);
  }

  const TwoHopView& view_;
  CoverageState state_;
  std::vector<char> chosen_;
  Removal removal_;
  double threshold_;
  RelaySelection sel_;
};

}  // namespace

std::vector<NodeId> mandatory_relays(const TwoHopView& view) {
  std::vector<NodeId> out;
  for (std::size_t i : mandatory_indices(view)) out.push_back(view.one_hop[i]);
  return out;
}

std::size_t additional_coverage(const TwoHopView& view, NodeId v, const CoverageState& state) {
  const auto it = std::lower_bound(view.one_hop.begin(), view.one_hop.end(), v);
  if (it == view.one_hop.end() || *it != v)
    throw ParamError("node " + std::to_string(v) + " is not a one-hop neighbor");
  return count_uncovered(view, static_cast<std::size_t>(it - view.one_hop.begin()), state);
}

double coverage_level(NodeId w, std::span<const NodeId> selected, const Topology& topo) {
  double miss = 1.0;
  for (NodeId v : selected) miss *= 1.0 - topo.prob(v, w);
  return 1.0 - miss;
}

RelaySelection select_original(const TwoHopView& view) {
  Greedy g(view, Removal::Plain, 0.0);
  g.run_mandatory();
  g.run_greedy([&](std::size_t i, const CoverageState& st) {
    return static_cast<double>(count_uncovered(view, i, st));
  });
  return g.finish();
}

RelaySelection select_score(const TwoHopView& view) {
  Greedy g(view, Removal::Plain, 0.0);
  g.run_mandatory();
  g.run_greedy([&](std::size_t i, const CoverageState& st) {
    return static_cast<double>(count_uncovered(view, i, st)) * view.one_hop_prob[i];
  });
  return g.finish();
}

RelaySelection select_expected(const TwoHopView& view) {
  Greedy g(view, Removal::Plain, 0.0);
  g.run_mandatory();
  g.run_greedy([&](std::size_t i, const CoverageState& st) {
    return view.one_hop_prob[i] * mean_reach_uncovered(view, i, st);
  });
  return g.finish();
}

RelaySelection select_threshold(const TwoHopView& view, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw ParamError("threshold must lie in [0, 1]");
  Greedy g(view, Removal::Threshold, threshold);
  g.run_mandatory();
  g.run_greedy([&](std::size_t i, const CoverageState& st) {
    return view.one_hop_prob[i] * mean_reach_uncovered(view, i, st);
  });
  return g.finish();
}

RelaySelection select_relays(const TwoHopView& view, Heuristic heuristic, double threshold) {
  switch (heuristic) {
    case Heuristic::Original: return select_original(view);
    case Heuristic::Score: return select_score(view);
    case Heuristic::Expected: return select_expected(view);
    case Heuristic::Threshold: return select_threshold(view, threshold);
  }
  throw ParamError("unknown heuristic");
}

}  // namespace relaysim
