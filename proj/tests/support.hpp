#pragma once

#include <atomic>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "relaysim/model.hpp"
#include "relaysim/propagation.hpp"
#include "relaysim/topology.hpp"

namespace relaysim::test {

// u = 0, v1..v4 = 1..4, w1..w4 = 5..8
inline constexpr NodeId U = 0, V1 = 1, V2 = 2, V3 = 3, V4 = 4, W1 = 5, W2 = 6, W3 = 7, W4 = 8;

inline TwoHopView four_relay_view() {
  std::vector<Link> one_hop = {{V1, 1.0}, {V2, 1.0}, {V3, 1.0}, {V4, 1.0}};
  std::vector<std::vector<NodeId>> adv = {{U, W1, W2}, {U, W3}, {U, W3, W4}, {U, W4}};
  return TwoHopView::build(U, one_hop, adv, [](NodeId, NodeId) { return 1.0; });
}

/// Knowledge graph of the same picture, symmetric.
inline KnowledgeGraph four_relay_knowledge() {
  std::vector<std::vector<NodeId>> out(9);
  auto link = [&](NodeId a, NodeId b) {
    out[a].push_back(b);
    out[b].push_back(a);
  };
  for (NodeId v : {V1, V2, V3, V4}) link(U, v);
  link(V1, W1);
  link(V1, W2);
  link(V2, W3);
  link(V3, W3);
  link(V3, W4);
  link(V4, W4);
  return KnowledgeGraph(out);
}

inline SimParams small_params(std::uint32_t n, LinkModel kind = LinkModel::LognormalShadowing) {
  SimParams p;
  p.node_count = n;
  p.model.kind = kind;
  return p;
}

/// Distance at which the default lognormal model gives probability p (p in (0, 0.5]).
inline double lns_distance_for(double p, double radius = 75.0, double alpha = 4.0) {
  return 2.0 * radius - radius * std::pow(2.0 * p, 1.0 / (2.0 * alpha));
}

/// Distance at which the default lognormal model gives probability p (p in [0.5, 1)).
inline double lns_near_distance_for(double p, double radius = 75.0, double alpha = 4.0) {
  return radius * std::pow(2.0 * (1.0 - p), 1.0 / (2.0 * alpha));
}

inline KnowledgeGraph full_knowledge(const Topology& topo) {
  std::vector<std::vector<NodeId>> out(topo.size());
  for (NodeId u = 0; u < topo.size(); ++u)
    for (const Link& l : topo.links(u)) out[u].push_back(l.peer);
  return KnowledgeGraph(out);
}

class TempDir {
public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("relaysim-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
  std::filesystem::path path_;
};

}  // namespace relaysim::test
