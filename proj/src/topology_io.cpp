#include "relaysim/topology_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace relaysim {

namespace {

constexpr const char* kMagic = "relaysim-topology v1";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void expect_key(std::istringstream& in, const char* key) {
  std::string got;
  if (!(in >> got) || got != key)
    throw FormatError(std::string("topology header: expected '") + key + "'");
}

}  // namespace

void write_topology(const Topology& topo, std::ostream& out) {
  const auto& m = topo.model();
  out << kMagic << '\n'
      << "N " << topo.size() << " L " << num(topo.side()) << " R " << num(m.radius) << " alpha "
      << num(m.alpha) << " model " << to_string(m.kind) << '\n';
  for (NodeId u = 0; u < topo.size(); ++u) {
    const auto& p = topo.position(u);
    out << u << ' ' << num(p.x) << ' ' << num(p.y) << '\n';
  }
}

void save_topology(const Topology& topo, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  write_topology(topo, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Topology read_topology(std::istream& in, const SimParams& base) {
  std::string line;
  if (!std::getline(in, line) || line != kMagic)
    throw FormatError("not a relaysim topology file (bad first line)");
  if (!std::getline(in, line)) throw FormatError("missing topology header line");

  std::istringstream hdr(line);
  std::uint64_t n = 0;
  double side = 0.0;
  std::string model;
  SimParams params = base;
  expect_key(hdr, "N");
  hdr >> n;
  expect_key(hdr, "L");
  hdr >> side;
  expect_key(hdr, "R");
  hdr >> params.model.radius;
  expect_key(hdr, "alpha");
  hdr >> params.model.alpha;
  expect_key(hdr, "model");
  hdr >> model;
  if (!hdr) throw FormatError("malformed topology header: " + line);
  params.model.kind = parse_link_model(model);
  if (n < 1 || !(side > 0.0)) throw FormatError("topology header has invalid N or L");
  params.node_count = static_cast<std::uint32_t>(n);
  params.density = static_cast<double>(n) * std::numbers::pi * params.model.radius *
                   params.model.radius / (side * side);

  std::vector<Point2D> positions(n);
  std::vector<char> seen(n, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw FormatError("topology file truncated");
    std::istringstream row(line);
    std::uint64_t id = 0;
    Point2D p;
    if (!(row >> id >> p.x >> p.y)) throw FormatError("malformed node line: " + line);
    if (id >= n || seen[id]) throw FormatError("node id out of range or repeated: " + line);
    seen[id] = 1;
    positions[id] = p;
  }
  return Topology(params, side, std::move(positions));
}

Topology load_topology(const std::filesystem::path& path, const SimParams& base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  return read_topology(in, base);
}

}  // namespace relaysim
