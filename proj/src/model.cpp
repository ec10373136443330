#include "relaysim/model.hpp"

#include <numbers>

namespace relaysim {

void PhysicalModel::validate() const {
  if (!(radius > 0.0)) throw ParamError("radius must be positive");
  if (kind == LinkModel::LognormalShadowing && !(alpha > 0.0))
    throw ParamError("alpha must be positive");
}

void SimParams::validate() const {
  if (node_count < 2) throw ParamError("node count must be at least 2");
  if (!(density > 0.0)) throw ParamError("density must be positive");
  model.validate();
  if (!(hello_ratio > 1.0)) throw ParamError("hello ratio must be greater than 1");
  if (trials < 1) throw ParamError("trials must be at least 1");
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw ParamError("threshold must lie in [0, 1]");
}

std::string_view to_string(LinkModel m) {
  return m == LinkModel::UnitDisk ? "udg" : "lns";
}

std::string_view to_string(Heuristic h) {
  switch (h) {
    case Heuristic::Original: return "original";
    case Heuristic::Score: return "score";
    case Heuristic::Expected: return "expected";
    case Heuristic::Threshold: return "threshold";
  }
  return "?";
}

std::string_view to_string(ReceptionRule r) {
  return r == ReceptionRule::KnownSender ? "table" : "range";
}

ReceptionRule parse_reception_rule(std::string_view s) {
  if (s == "table") return ReceptionRule::KnownSender;
  if (s == "range") return ReceptionRule::AnyInRange;
  throw ParamError("unknown reception rule '" + std::string(s) + "' (expected table or range)");
}

LinkModel parse_link_model(std::string_view s) {
  if (s == "udg") return LinkModel::UnitDisk;
  if (s == "lns") return LinkModel::LognormalShadowing;
  throw ParamError("unknown model '" + std::string(s) + "' (expected udg or lns)");
}

Heuristic parse_heuristic(std::string_view s) {
  if (s == "original") return Heuristic::Original;
  if (s == "score") return Heuristic::Score;
  if (s == "expected") return Heuristic::Expected;
  if (s == "threshold") return Heuristic::Threshold;
  throw ParamError("unknown heuristic '" + std::string(s) + "'");
}

double density_to_side(std::uint32_t node_count, double density, double radius) {
  if (node_count < 1) throw ParamError("node count must be at least 1");
  if (!(density > 0.0)) throw ParamError("density must be positive");
  if (!(radius > 0.0)) throw ParamError("radius must be positive");
  return radius * std::sqrt(static_cast<double>(node_count) * std::numbers::pi / density);
}

}  // namespace relaysim
