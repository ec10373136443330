#pragma once

// Core domain types shared by the whole simulator: identifiers, geometry,
// the physical layer description and the experiment parameters.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relaysim {

/// Thrown for any out-of-domain parameter (negative distance, density <= 0, ...).
class ParamError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Dense node index in [0, N).
using NodeId = std::uint32_t;

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

enum class LinkModel { UnitDisk, LognormalShadowing };

struct PhysicalModel {
  LinkModel kind = LinkModel::LognormalShadowing;
  double radius = 75.0;
  double alpha = 4.0;  // power attenuation factor, LNS only

  /// Distance beyond which the link probability is exactly zero.
  double max_range() const {
    return kind == LinkModel::UnitDisk ? radius : 2.0 * radius;
  }

  void validate() const;
};

enum class Heuristic { Original, Score, Expected, Threshold };

/// Which transmissions a node can pick up. KnownSender: w receives from s
/// only over the directed link the HELLO draw created, i.e. when s is in
/// w's neighbor table. AnyInRange: every node with p(s, w) > 0 may receive.
enum class ReceptionRule { KnownSender, AnyInRange };

struct SimParams {
  std::uint32_t node_count = 500;
  double density = 30.0;  // expected nodes per communication disk
  PhysicalModel model{};
  double hello_ratio = 3.0;  // x / y, timeout window over beacon period
  std::uint32_t trials = 500;
  std::uint64_t seed = 0;
  Heuristic heuristic = Heuristic::Original;
  double threshold = 0.5;  // only read by Heuristic::Threshold
  ReceptionRule reception = ReceptionRule::KnownSender;

  void validate() const;
};

std::string_view to_string(LinkModel m);
std::string_view to_string(Heuristic h);
std::string_view to_string(ReceptionRule r);
LinkModel parse_link_model(std::string_view s);
Heuristic parse_heuristic(std::string_view s);
ReceptionRule parse_reception_rule(std::string_view s);

/// Side length L of the square area so that N * pi * R^2 / L^2 == d.
double density_to_side(std::uint32_t node_count, double density, double radius);

/// Euclidean distance, computed as sqrt(dx*dx + dy*dy) everywhere in the
/// project so that kernel variants agree bit for bit.
inline double distance(const Point2D& a, const Point2D& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace relaysim
