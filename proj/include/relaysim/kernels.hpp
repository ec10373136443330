#pragma once

// Data-parallel inner loops of topology construction. Every kernel has a
// scalar reference and optional AVX2 / NEON variants picked at runtime.
// The variants perform the same IEEE operations in the same order (no FMA
// contraction), so they agree with the reference bit for bit.

#include <cstddef>
#include <span>
#include <string_view>

#include "relaysim/model.hpp"

namespace relaysim::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

/// Precomputed constants for evaluating a link model over many distances.
struct LinkParams {
  LinkModel kind = LinkModel::LognormalShadowing;
  double radius = 75.0;
  double exponent = 8.0;   // 2 * alpha
  int int_exponent = 8;    // exponent when it is a small non-negative integer, else -1

  static LinkParams from(const PhysicalModel& model);
};

/// r^e by repeated squaring; the vector kernels replay this exact sequence.
inline double ipow(double base, int e) noexcept {
  double result = 1.0;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

/// Reference evaluation of the link probability at distance x >= 0.
inline double link_probability(double x, const LinkParams& lp) noexcept {
  if (lp.kind == LinkModel::UnitDisk) return x <= lp.radius ? 1.0 : 0.0;
  const double two_r = 2.0 * lp.radius;
  if (x <= lp.radius) {
    const double r = x / lp.radius;
    const double pw = lp.int_exponent >= 0 ? ipow(r, lp.int_exponent) : std::pow(r, lp.exponent);
    return 1.0 - 0.5 * pw;
  }
  if (x <= two_r) {
    const double r = (two_r - x) / lp.radius;
    const double pw = lp.int_exponent >= 0 ? ipow(r, lp.int_exponent) : std::pow(r, lp.exponent);
    return 0.5 * pw;
  }
  return 0.0;
}

struct KernelTable {
  Isa isa;
  /// out[i] = (xs[i]-x0)^2 + (ys[i]-y0)^2
  void (*squared_distances)(const double* xs, const double* ys, std::size_t n, double x0,
                            double y0, double* out);
  /// out[i] = link_probability(dist[i])
  void (*link_probabilities)(const double* dist, std::size_t n, const LinkParams& lp,
                             double* out);
};

bool supported(Isa isa);

/// Table for a specific ISA; throws std::runtime_error if unsupported.
const KernelTable& table(Isa isa);

/// Best supported table, overridable with RELAYSIM_ISA=scalar|avx2|neon.
const KernelTable& active();

// Convenience wrappers over active().
void squared_distances(std::span<const double> xs, std::span<const double> ys, double x0,
                       double y0, std::span<double> out);
void link_probabilities(std::span<const double> dist, const LinkParams& lp,
                        std::span<double> out);

namespace scalar {
void squared_distances(const double* xs, const double* ys, std::size_t n, double x0, double y0,
                       double* out);
void link_probabilities(const double* dist, std::size_t n, const LinkParams& lp, double* out);
}  // namespace scalar

namespace avx2 {
bool available() noexcept;
void squared_distances(const double* xs, const double* ys, std::size_t n, double x0, double y0,
                       double* out);
void link_probabilities(const double* dist, std::size_t n, const LinkParams& lp, double* out);
}  // namespace avx2

namespace neon {
bool available() noexcept;
void squared_distances(const double* xs, const double* ys, std::size_t n, double x0, double y0,
                       double* out);
void link_probabilities(const double* dist, std::size_t n, const LinkParams& lp, double* out);
}  // namespace neon

}  // namespace relaysim::kernels
