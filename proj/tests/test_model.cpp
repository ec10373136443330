#include <doctest.h>

#include <numbers>
#include <sstream>

#include "relaysim/model.hpp"
#include "relaysim/propagation.hpp"
#include "relaysim/rng.hpp"
#include "relaysim/topology_io.hpp"
#include "support.hpp"

using namespace relaysim;

TEST_CASE("density_to_side") {
  CHECK(density_to_side(500, 30.0, 75.0) == doctest::Approx(75.0 * std::sqrt(500.0 * std::numbers::pi / 30.0)));
  CHECK(std::abs(density_to_side(500, 30.0, 75.0) - 542.66) < 0.05);
  CHECK(density_to_side(500, 500.0 * std::numbers::pi, 75.0) == doctest::Approx(75.0));
  CHECK(density_to_side(1, std::numbers::pi, 1.0) == doctest::Approx(1.0));

  const double side = density_to_side(500, 30.0, 75.0);
  CHECK(500 * std::numbers::pi * 75.0 * 75.0 / (side * side) == doctest::Approx(30.0));

  CHECK_THROWS_AS(density_to_side(0, 30.0, 75.0), ParamError);
  CHECK_THROWS_AS(density_to_side(500, 0.0, 75.0), ParamError);
  CHECK_THROWS_AS(density_to_side(500, -3.0, 75.0), ParamError);
  CHECK_THROWS_AS(density_to_side(500, 30.0, 0.0), ParamError);
}

TEST_CASE("density_to_side is monotone") {
  double prev = density_to_side(500, 5.0, 75.0);
  for (double d = 10.0; d <= 60.0; d += 5.0) {
    const double side = density_to_side(500, d, 75.0);
    CHECK(side < prev);
    prev = side;
  }
  prev = density_to_side(10, 30.0, 75.0);
  for (std::uint32_t n = 20; n <= 1000; n += 10) {
    const double side = density_to_side(n, 30.0, 75.0);
    CHECK(side > prev);
    prev = side;
  }
}

TEST_CASE("distance") {
  CHECK(distance({0, 0}, {3, 4}) == 5.0);
  CHECK(distance({7, 7}, {7, 7}) == 0.0);
  CHECK(distance({0, 0}, {75, 0}) == 75.0);

  Rng rng(11);
  auto pt = [&] { return Point2D{rng.uniform() * 1000 - 500, rng.uniform() * 1000 - 500}; };
  for (int i = 0; i < 2000; ++i) {
    const Point2D a = pt(), b = pt(), c = pt();
    CHECK(distance(a, b) == distance(b, a));
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
    CHECK(distance(a, b) > 0.0);
  }
}

TEST_CASE("parameter validation") {
  SimParams p;
  CHECK_NOTHROW(p.validate());
  p.threshold = 1.5;
  CHECK_THROWS_AS(p.validate(), ParamError);
  p = {};
  p.hello_ratio = 1.0;
  CHECK_THROWS_AS(p.validate(), ParamError);
  p = {};
  p.model.radius = -1.0;
  CHECK_THROWS_AS(p.validate(), ParamError);

  CHECK(parse_heuristic("expected") == Heuristic::Expected);
  CHECK(parse_link_model("udg") == LinkModel::UnitDisk);
  CHECK(parse_reception_rule("range") == ReceptionRule::AnyInRange);
  CHECK_THROWS_AS(parse_heuristic("best"), ParamError);
  CHECK_THROWS_AS(parse_link_model("free-space"), ParamError);
}

TEST_CASE("rng substreams") {
  Rng a(5), b(5);
  for (int i = 0; i < 10; ++i) CHECK(a.uniform() == b.uniform());

  // derivation ignores draws already made
  Rng fresh(5);
  Rng x = a.derive("topo");
  Rng y = fresh.derive("topo");
  for (int i = 0; i < 10; ++i) CHECK(x.uniform() == y.uniform());

  Rng k = fresh.derive("knowledge");
  Rng t = fresh.derive("topo");
  int same = 0;
  for (int i = 0; i < 10; ++i) same += k.uniform() == t.uniform();
  CHECK(same == 0);

  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(a.below(7) < 7);
  }
}

TEST_CASE("topology file round trip") {
  SimParams p = test::small_params(40);
  p.density = 12.0;
  p.seed = 3;
  Rng rng = Rng(p.seed).derive("topo");
  const Topology topo = build_topology(p, rng);

  std::stringstream s;
  write_topology(topo, s);
  const std::string text = s.str();
  CHECK(text.rfind("relaysim-topology v1\nN 40 L ", 0) == 0);
  CHECK(text.find("model lns") != std::string::npos);

  const Topology back = read_topology(s, p);
  CHECK(back == topo);

  test::TempDir dir;
  save_topology(topo, dir / "t.txt");
  CHECK(load_topology(dir / "t.txt", p) == topo);

  std::istringstream bad("relaysim-topology v2\n");
  CHECK_THROWS_AS(read_topology(bad), FormatError);
  std::istringstream truncated("relaysim-topology v1\nN 3 L 10 R 75 alpha 4 model lns\n0 1 1\n");
  CHECK_THROWS_AS(read_topology(truncated), FormatError);
  CHECK_THROWS(load_topology(dir / "missing.txt"));
}
