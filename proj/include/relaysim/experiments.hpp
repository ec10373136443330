#pragma once

// Parameter sweeps over run_batch, CSV output, and gnuplot scripts that
// draw the delivery / transmission curves from that CSV.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relaysim/model.hpp"

namespace relaysim {

enum class SweepVariable { Density, Threshold };

struct SweepEntry {
  Heuristic heuristic = Heuristic::Original;
  double threshold = 0.5;  // Threshold heuristic only; replaced by the value in a threshold sweep
};

struct SweepSpec {
  SweepVariable variable = SweepVariable::Density;
  std::vector<double> values;
  SimParams base;
  std::vector<SweepEntry> heuristics;

  void validate() const;

  static std::vector<double> default_densities();   // 10, 15, ..., 50
  static std::vector<double> default_thresholds();  // 0, 0.1, ..., 1
};

struct ResultRow {
  double density = 0.0;
  Heuristic heuristic = Heuristic::Original;
  std::optional<double> threshold;  // set only for the Threshold heuristic
  std::uint32_t trials = 0;
  double delivery_mean = 0.0;
  double delivery_std = 0.0;
  double tx_mean = 0.0;
  double tx_std = 0.0;
  double relay_dist_mean = 0.0;
  double mpr_size_mean = 0.0;
  std::uint64_t seed = 0;
};

/// One run_batch per (value, heuristic) cell, value-major.
std::vector<ResultRow> run_sweep(const SweepSpec& spec, unsigned jobs = 0);

inline constexpr std::string_view kCsvHeader =
    "density,heuristic,threshold,trials,delivery_mean,delivery_std,tx_mean,tx_std,"
    "relay_dist_mean,mpr_size_mean,seed";

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path);
std::vector<ResultRow> read_csv(std::istream& in);

enum class PlotKind { DeliveryVsDensity, TxVsDensity, DeliveryVsThreshold, TxVsThreshold };

std::string_view to_string(PlotKind k);
PlotKind parse_plot_kind(std::string_view s);

/// `csv_ref` is how the script names the data file; it must be relative.
void emit_gnuplot(const std::vector<ResultRow>& rows, PlotKind kind, const std::string& csv_ref,
                  std::ostream& out);
void emit_gnuplot(const std::vector<ResultRow>& rows, PlotKind kind, const std::string& csv_ref,
                  const std::filesystem::path& path);

}  // namespace relaysim
