#pragma once

// Plain-text topology files:
//
//   relaysim-topology v1
//   N <count> L <side> R <radius> alpha <alpha> model <udg|lns>
//   <id> <x> <y>        (N lines)
//
// Link probabilities are never stored; they are recomputed from positions.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

#include "relaysim/topology.hpp"

namespace relaysim {

class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

void write_topology(const Topology& topo, std::ostream& out);
void save_topology(const Topology& topo, const std::filesystem::path& path);

/// Fields not carried by the file (hello ratio, heuristic, ...) come from `base`.
Topology read_topology(std::istream& in, const SimParams& base = {});
Topology load_topology(const std::filesystem::path& path, const SimParams& base = {});

}  // namespace relaysim
