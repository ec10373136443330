#include "relaysim/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "relaysim/simengine.hpp"

namespace relaysim {

void SweepSpec::validate() const {
  if (values.empty()) throw ParamError("sweep needs at least one value");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1])) throw ParamError("sweep values must be strictly increasing");
  if (heuristics.empty()) throw ParamError("sweep needs at least one heuristic");
  if (variable == SweepVariable::Threshold) {
    for (const auto& h : heuristics)
      if (h.heuristic != Heuristic::Threshold)
        throw ParamError("a threshold sweep only applies to the threshold heuristic");
    if (values.front() < 0.0 || values.back() > 1.0)
      throw ParamError("threshold values must lie in [0, 1]");
  } else if (!(values.front() > 0.0)) {
    throw ParamError("densities must be positive");
  }
}

std::vector<double> SweepSpec::default_densities() {
  std::vector<double> v;
  for (int i = 0; i <= 8; ++i) v.push_back(10.0 + 5.0 * i);
  return v;
}

std::vector<double> SweepSpec::default_thresholds() {
  std::vector<double> v;
  for (int i = 0; i <= 10; ++i) v.push_back(i / 10.0);
  return v;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, unsigned jobs) {
  spec.validate();
  std::vector<ResultRow> rows;
  for (double value : spec.values) {
    for (const auto& entry : spec.heuristics) {
      SimParams p = spec.base;
      p.heuristic = entry.heuristic;
      p.threshold = entry.threshold;
      if (spec.variable == SweepVariable::Density)
        p.density = value;
      else
        p.threshold = value;
      const AggregateStats a = run_batch(p, jobs);

      ResultRow r;
      r.density = p.density;
      r.heuristic = p.heuristic;
      if (p.heuristic == Heuristic::Threshold) r.threshold = p.threshold;
      r.trials = a.trials;
      r.delivery_mean = a.delivery.mean;
      r.delivery_std = a.delivery.stddev;
      r.tx_mean = a.tx.mean;
      r.tx_std = a.tx.stddev;
      r.relay_dist_mean = a.avg_relay_distance;
      r.mpr_size_mean = a.avg_mpr_size;
      r.seed = p.seed;
      rows.push_back(r);
    }
  }
  return rows;
}

namespace {

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

}  // namespace

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  if (rows.empty()) throw ParamError("no rows to write");
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << g6(r.density) << ',' << to_string(r.heuristic) << ','
        << (r.threshold ? g6(*r.threshold) : std::string()) << ',' << r.trials << ','
        << g6(r.delivery_mean) << ',' << g6(r.delivery_std) << ',' << g6(r.tx_mean) << ','
        << g6(r.tx_std) << ',' << g6(r.relay_dist_mean) << ',' << g6(r.mpr_size_mean) << ','
        << r.seed << '\n';
  }
}

void write_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  write_csv(rows, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("unexpected CSV header");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 11) throw std::runtime_error("CSV row needs 11 fields: " + line);
    try {
      ResultRow r;
      r.density = to_double(f[0]);
      r.heuristic = parse_heuristic(f[1]);
      if (!f[2].empty()) r.threshold = to_double(f[2]);
      r.trials = static_cast<std::uint32_t>(std::stoul(f[3]));
      r.delivery_mean = to_double(f[4]);
      r.delivery_std = to_double(f[5]);
      r.tx_mean = to_double(f[6]);
      r.tx_std = to_double(f[7]);
      r.relay_dist_mean = to_double(f[8]);
      r.mpr_size_mean = to_double(f[9]);
      r.seed = std::stoull(f[10]);
      rows.push_back(r);
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("malformed CSV row: " + line);
    }
  }
  return rows;
}

std::string_view to_string(PlotKind k) {
  switch (k) {
    case PlotKind::DeliveryVsDensity: return "delivery-density";
    case PlotKind::TxVsDensity: return "tx-density";
    case PlotKind::DeliveryVsThreshold: return "delivery-threshold";
    case PlotKind::TxVsThreshold: return "tx-threshold";
  }
  return "?";
}

PlotKind parse_plot_kind(std::string_view s) {
  for (auto k : {PlotKind::DeliveryVsDensity, PlotKind::TxVsDensity,
                 PlotKind::DeliveryVsThreshold, PlotKind::TxVsThreshold})
    if (to_string(k) == s) return k;
  throw ParamError("unknown plot kind '" + std::string(s) + "'");
}

namespace {

bool is_threshold_kind(PlotKind k) {
  return k == PlotKind::DeliveryVsThreshold || k == PlotKind::TxVsThreshold;
}

bool is_delivery_kind(PlotKind k) {
  return k == PlotKind::DeliveryVsDensity || k == PlotKind::DeliveryVsThreshold;
}

void check_plot_rows(const std::vector<ResultRow>& rows, PlotKind kind) {
  if (rows.empty()) throw ParamError("no rows to plot");
  if (is_threshold_kind(kind)) {
    for (const auto& r : rows)
      if (!r.threshold || r.heuristic != Heuristic::Threshold)
        throw ParamError("threshold plots need threshold-heuristic rows only");
    if (std::any_of(rows.begin(), rows.end(),
                    [&](const ResultRow& r) { return r.density != rows.front().density; }))
      throw ParamError("threshold plots need rows from a single density");
  } else {
    // several thresholds at one density is the signature of a threshold sweep
    std::map<double, std::set<double>> taus;
    for (const auto& r : rows)
      if (r.threshold) taus[r.density].insert(*r.threshold);
    for (const auto& [d, t] : taus)
      if (t.size() > 1) throw ParamError("density plots cannot be drawn from a threshold sweep");
  }
}

}  // namespace

void emit_gnuplot(const std::vector<ResultRow>& rows, PlotKind kind, const std::string& csv_ref,
                  std::ostream& out) {
  check_plot_rows(rows, kind);
  if (csv_ref.empty() || std::filesystem::path(csv_ref).is_absolute())
    throw ParamError("the CSV reference in a plot script must be a relative path");

  const bool delivery = is_delivery_kind(kind);
  const int ycol = delivery ? 5 : 7;
  out << "# relaysim " << to_string(kind) << "\n"
      << "set datafile separator \",\"\n"
      << "set xlabel \"" << (is_threshold_kind(kind) ? "Threshold" : "Density") << "\"\n"
      << "set ylabel \"" << (delivery ? "Receiving nodes (%)" : "Transmitting nodes (%)")
      << "\"\n"
      << "set yrange [0:100]\n"
      << "set grid\n"
      << "set key bottom right\n"
      << "plot";

  if (is_threshold_kind(kind)) {
    out << " '" << csv_ref << "' every ::1 using 3:($" << ycol << "*100) with linespoints title \""
        << "threshold (d=" << g6(rows.front().density) << ")\"\n";
    return;
  }

  // one curve per heuristic (and per threshold value for the threshold heuristic)
  std::vector<std::pair<Heuristic, std::optional<double>>> curves;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.heuristic, r.threshold);
    if (std::find(curves.begin(), curves.end(), key) == curves.end()) curves.push_back(key);
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& [h, tau] = curves[i];
    const std::string tau_text = tau ? g6(*tau) : std::string();
    std::string title(to_string(h));
    if (tau) title += " (" + tau_text + ")";
    out << (i == 0 ? " " : ", \\\n     ") << "'" << csv_ref
        << "' every ::1 using 1:((strcol(2) eq \"" << to_string(h) << "\" && strcol(3) eq \""
        << tau_text << "\") ? $" << ycol << "*100 : 1/0) with linespoints title \"" << title
        << "\"";
  }
  out << '\n';
}

void emit_gnuplot(const std::vector<ResultRow>& rows, PlotKind kind, const std::string& csv_ref,
                  const std::filesystem::path& path) {
  std::ostringstream buf;
  emit_gnuplot(rows, kind, csv_ref, buf);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << buf.str();
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace relaysim
