#pragma once

#include <span>

#include "relaysim/model.hpp"
#include "relaysim/rng.hpp"
#include "relaysim/topology.hpp"

namespace relaysim {

/// Probability that a packet sent over distance x is received. Lognormal
/// shadowing uses the piecewise approximation over (0, 2R]; P(0) = 1.
double reception_probability(double x, const PhysicalModel& model);

/// Probability that at least one of hello_ratio HELLO opportunities got
/// through: 1 - (1 - p)^hello_ratio.
double neighbor_seen_probability(double p, double hello_ratio);

/// Uniform placement over the density-sized square. Consumes `rng`.
Topology build_topology(const SimParams& params, Rng& rng);

/// Test hook: fixed positions, side taken from the density.
Topology build_topology(const SimParams& params, std::vector<Point2D> positions);

/// Independent Bernoulli draw per ordered pair with p > 0.
KnowledgeGraph build_knowledge(const Topology& topo, const SimParams& params, Rng& rng);

/// Relay-selection input for node u, using true link probabilities.
TwoHopView two_hop_view(const KnowledgeGraph& kg, const Topology& topo, NodeId u);

}  // namespace relaysim
