#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "relaysim/kernels.hpp"

namespace relaysim::kernels {

namespace {

constexpr KernelTable kScalar{Isa::Scalar, &scalar::squared_distances,
                              &scalar::link_probabilities};
constexpr KernelTable kAvx2{Isa::Avx2, &avx2::squared_distances, &avx2::link_probabilities};
constexpr KernelTable kNeon{Isa::Neon, &neon::squared_distances, &neon::link_probabilities};

const KernelTable& pick() {
  if (const char* forced = std::getenv("RELAYSIM_ISA"); forced != nullptr && *forced != '\0') {
    const std::string name(forced);
    if (name == "scalar") return kScalar;
    if (name == "avx2" && supported(Isa::Avx2)) return kAvx2;
    if (name == "neon" && supported(Isa::Neon)) return kNeon;
    // unknown or unsupported request: fall through to autodetection
  }
  if (supported(Isa::Avx2)) return kAvx2;
  if (supported(Isa::Neon)) return kNeon;
  return kScalar;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

LinkParams LinkParams::from(const PhysicalModel& model) {
  LinkParams lp;
  lp.kind = model.kind;
  lp.radius = model.radius;
  lp.exponent = 2.0 * model.alpha;
  const double rounded = std::round(lp.exponent);
  lp.int_exponent = (rounded == lp.exponent && rounded >= 0.0 && rounded <= 64.0)
                        ? static_cast<int>(rounded)
                        : -1;
  return lp;
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2: return avx2::available();
    case Isa::Neon: return neon::available();
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa))
    throw std::runtime_error("kernel ISA not supported here: " + std::string(to_string(isa)));
  switch (isa) {
    case Isa::Avx2: return kAvx2;
    case Isa::Neon: return kNeon;
    default: return kScalar;
  }
}

const KernelTable& active() {
  static const KernelTable& chosen = pick();
  return chosen;
}

void squared_distances(std::span<const double> xs, std::span<const double> ys, double x0,
                       double y0, std::span<double> out) {
  if (ys.size() != xs.size() || out.size() < xs.size())
    throw std::invalid_argument("squared_distances: size mismatch");
  active().squared_distances(xs.data(), ys.data(), xs.size(), x0, y0, out.data());
}

void link_probabilities(std::span<const double> dist, const LinkParams& lp,
                        std::span<double> out) {
  if (out.size() < dist.size()) throw std::invalid_argument("link_probabilities: size mismatch");
  active().link_probabilities(dist.data(), dist.size(), lp, out.data());
}

}  // namespace relaysim::kernels
