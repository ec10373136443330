#include "relaysim/topology.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "relaysim/kernels.hpp"

namespace relaysim {

Topology::Topology(SimParams params, double side, std::vector<Point2D> positions)
    : params_(std::move(params)), side_(side), positions_(std::move(positions)) {
  params_.model.validate();
  const std::size_t n = positions_.size();
  link_prob_.assign(n * n, 0.0);

  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = positions_[i].x;
    ys[i] = positions_[i].y;
  }

  const auto& k = kernels::active();
  const auto lp = kernels::LinkParams::from(params_.model);
  const double range = params_.model.max_range();
  // slack so rounding in the squared form never drops a pair the exact
  // distance would keep; excess pairs evaluate to 0 anyway
  const double cutoff_sq = range * range * (1.0 + 1e-9);

  std::vector<double> sq(n), cand_dist, cand_prob;
  std::vector<std::uint32_t> cand_idx;
  cand_dist.reserve(n);
  cand_idx.reserve(n);
  for (std::size_t u = 0; u + 1 < n; ++u) {
    const std::size_t rest = n - u - 1;
    k.squared_distances(xs.data() + u + 1, ys.data() + u + 1, rest, xs[u], ys[u], sq.data());
    cand_dist.clear();
    cand_idx.clear();
    for (std::size_t j = 0; j < rest; ++j) {
      if (sq[j] <= cutoff_sq) {
        cand_dist.push_back(std::sqrt(sq[j]));
        cand_idx.push_back(static_cast<std::uint32_t>(u + 1 + j));
      }
    }
    cand_prob.resize(cand_dist.size());
    k.link_probabilities(cand_dist.data(), cand_dist.size(), lp, cand_prob.data());
    for (std::size_t j = 0; j < cand_idx.size(); ++j) {
      const std::size_t v = cand_idx[j];
      link_prob_[u * n + v] = cand_prob[j];
      link_prob_[v * n + u] = cand_prob[j];
    }
  }

  link_offsets_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) {
    const double* row = link_prob_.data() + u * n;
    for (std::size_t v = 0; v < n; ++v) {
      if (row[v] > 0.0) links_.push_back({static_cast<NodeId>(v), row[v]});
    }
    link_offsets_[u + 1] = links_.size();
  }
}

KnowledgeGraph::KnowledgeGraph(std::vector<std::vector<NodeId>> out_lists) {
  offsets_.assign(out_lists.size() + 1, 0);
  for (std::size_t u = 0; u < out_lists.size(); ++u) {
    auto& list = out_lists[u];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (NodeId v : list) {
      if (v == u) throw ParamError("knowledge graph may not contain self-loops");
      if (v >= out_lists.size()) throw ParamError("knowledge edge target out of range");
      targets_.push_back(v);
    }
    offsets_[u + 1] = targets_.size();
  }
}

bool KnowledgeGraph::knows(NodeId u, NodeId v) const noexcept {
  const auto list = known(u);
  return std::binary_search(list.begin(), list.end(), v);
}

TwoHopView TwoHopView::build(NodeId ego, std::vector<Link> one_hop,
                             std::vector<std::vector<NodeId>> advertised,
                             const LinkProbFn& link_prob) {
  if (advertised.size() != one_hop.size())
    throw ParamError("one advertised list is required per one-hop neighbor");

  std::vector<std::size_t> order(one_hop.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return one_hop[a].peer < one_hop[b].peer; });

  TwoHopView view;
  view.ego = ego;
  for (std::size_t i : order) {
    if (one_hop[i].peer == ego) throw ParamError("ego cannot be its own neighbor");
    view.one_hop.push_back(one_hop[i].peer);
    view.one_hop_prob.push_back(one_hop[i].prob);
    auto adv = std::move(advertised[i]);
    std::sort(adv.begin(), adv.end());
    adv.erase(std::unique(adv.begin(), adv.end()), adv.end());
    view.advertised.push_back(std::move(adv));
  }
  if (std::adjacent_find(view.one_hop.begin(), view.one_hop.end()) != view.one_hop.end())
    throw ParamError("duplicate one-hop neighbor");

  std::vector<NodeId> two_hop;
  for (const auto& adv : view.advertised) {
    for (NodeId w : adv) {
      if (w != ego && !std::binary_search(view.one_hop.begin(), view.one_hop.end(), w))
        two_hop.push_back(w);
    }
  }
  std::sort(two_hop.begin(), two_hop.end());
  two_hop.erase(std::unique(two_hop.begin(), two_hop.end()), two_hop.end());
  view.uncovered_init = std::move(two_hop);

  const std::size_t m = view.uncovered_init.size();
  view.covers.resize(view.one_hop.size());
  view.reach.assign(view.one_hop.size() * m, 0.0);
  for (std::size_t i = 0; i < view.one_hop.size(); ++i) {
    for (NodeId w : view.advertised[i]) {
      const auto it = std::lower_bound(view.uncovered_init.begin(), view.uncovered_init.end(), w);
      if (it != view.uncovered_init.end() && *it == w)
        view.covers[i].push_back(static_cast<std::uint32_t>(it - view.uncovered_init.begin()));
    }
    for (std::size_t w = 0; w < m; ++w)
      view.reach[i * m + w] = link_prob(view.one_hop[i], view.uncovered_init[w]);
  }
  return view;
}

}  // namespace relaysim
