#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "doctest.h"
#include "relgs/field.hpp"
#include "relgs/snapshot.hpp"
#include "relgs/transform.hpp"

using namespace relgs;

namespace {

Field random_field(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(g.size());
  for (auto& x : v) x = gauss(rng);
  return Field(g, std::move(v));
}

}  // namespace

TEST_CASE("make_grid arithmetic") {
  const Grid g = make_grid(2, 8.0, 16);
  CHECK(g.spacing() == 1.0);
  CHECK(g.points_per_axis() == 16);
  CHECK(g.size() == 256);
  CHECK(g.coord(0) == -8.0);
  CHECK(g.coord(15) == 7.0);

  const Grid g3 = make_grid(3, 10.0, 64);
  CHECK(g3.spacing() == doctest::Approx(0.3125).epsilon(1e-15));
}

TEST_CASE("make_grid rejects bad input") {
  CHECK_THROWS_AS(make_grid(2, 8.0, 15), GridError);   // odd n
  CHECK_THROWS_AS(make_grid(1, 8.0, 16), GridError);   // N < 2
  CHECK_THROWS_AS(make_grid(2, -1.0, 16), GridError);  // L <= 0
  CHECK_THROWS_AS(make_grid(2, 8.0, 6), GridError);    // n < 8
  CHECK_THROWS_AS(make_grid(3, 8.0, 1024, 1u << 20), GridError);  // budget
}

TEST_CASE("grid frequencies follow transform storage order") {
  const Grid g = make_grid(2, 8.0, 16);
  const double base = std::numbers::pi / 8.0;
  CHECK(g.freq(0) == 0.0);
  CHECK(g.freq(1) == doctest::Approx(base).epsilon(1e-15));
  CHECK(g.freq(8) == doctest::Approx(-8.0 * base).epsilon(1e-15));
  CHECK(g.freq(15) == doctest::Approx(-base).epsilon(1e-15));
}

TEST_CASE("lp_norm of constant and zero fields") {
  const Grid g = make_grid(2, 8.0, 16);
  const double c = 0.37;
  const Field f(g, std::vector<double>(g.size(), c));
  CHECK(lp_norm(f, 2.0) == doctest::Approx(c * 16.0).epsilon(1e-14));

  const Field z(g, std::vector<double>(g.size(), 0.0));
  for (double p : {1.0, 2.0, 3.5}) CHECK(lp_norm(z, p) == 0.0);
}

TEST_CASE("lp_norm Gaussian closed form") {
  const Grid g = make_grid(2, 12.0, 128);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    v[i] = std::exp(-g.coord_norm_sq(i) / 2.0);
  }
  const Field f(g, std::move(v));
  CHECK(lp_norm(f, 2.0) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-10));
}

TEST_CASE("lp_norm rejects p < 1; handles infinity; homogeneous") {
  const Grid g = make_grid(2, 8.0, 16);
  const Field f = random_field(g, 3);
  CHECK_THROWS_AS(lp_norm(f, 0.5), FieldError);
  double peak = 0.0;
  for (double v : f.values()) peak = std::max(peak, std::abs(v));
  CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) == peak);
  const Field f3 = map_values(f, [&] {
    std::vector<double> v = f.values();
    for (auto& x : v) x *= -3.0;
    return v;
  }());
  CHECK(lp_norm(f3, 2.5) == doctest::Approx(3.0 * lp_norm(f, 2.5)).epsilon(1e-13));
}

TEST_CASE("mass basics") {
  const Grid g = make_grid(2, 8.0, 16);
  std::vector<double> v(g.size(), 0.0);
  v[37] = 2.5;
  CHECK(mass(Field(g, v)) == doctest::Approx(2.5 * 2.5 * g.cell_volume())
                                 .epsilon(1e-15));
  CHECK(mass(Field(g, std::vector<double>(g.size(), 0.0))) == 0.0);
}

TEST_CASE("rescale_mass") {
  const Grid g = make_grid(2, 8.0, 16);
  Field f = random_field(g, 5);
  const Field r = rescale_mass(f, 1.0);
  CHECK(mass(r) == doctest::Approx(1.0).epsilon(1e-14));

  // mass 4 -> target 1 is exact halving
  const Field f4 = rescale_mass(f, 4.0);
  const Field half = rescale_mass(f4, 1.0);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(half.values()[i] ==
          doctest::Approx(f4.values()[i] / 2.0).epsilon(1e-14));
  }

  const Field unit = rescale_mass(f, 1.0);
  const Field again = rescale_mass(unit, 1.0);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(again.values()[i] == doctest::Approx(unit.values()[i]).epsilon(1e-14));
  }

  CHECK_THROWS_AS(rescale_mass(Field(g, std::vector<double>(g.size(), 0.0)), 1.0),
                  FieldError);
  CHECK_THROWS_AS(rescale_mass(f, -1.0), FieldError);
}

TEST_CASE("Parseval and round trip on random fields") {
  for (int dim : {2, 3}) {
    const Grid g = make_grid(dim, 6.0, dim == 2 ? 32 : 16);
    const Field f = random_field(g, 17 + static_cast<std::uint64_t>(dim));
    const auto& spec = f.spectrum();

    double phys = 0.0;
    for (double v : f.values()) phys += v * v;
    phys *= g.cell_volume();
    double spectral = 0.0;
    for (const auto& c : spec) spectral += std::norm(c);
    spectral /= g.volume();
    CHECK(phys == doctest::Approx(spectral).epsilon(1e-12));

    const std::vector<double> back = inverse_transform(g, spec);
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < back.size(); ++i) {
      diff += (back[i] - f.values()[i]) * (back[i] - f.values()[i]);
      norm += f.values()[i] * f.values()[i];
    }
    CHECK(std::sqrt(diff / norm) <= 1e-12);
  }
}

TEST_CASE("forward transform matches the pinned convention directly") {
  // Small grid: compare against the O(n^2) definition.
  const Grid g = make_grid(2, 3.0, 8);
  const Field f = random_field(g, 23);
  const auto& spec = f.spectrum();
  const auto n = static_cast<std::size_t>(g.points_per_axis());
  for (std::size_t flat : {std::size_t{0}, std::size_t{5}, std::size_t{27},
                           std::size_t{44}, std::size_t{63}}) {
    const double kx = g.freq(static_cast<int>(flat / n));
    const double ky = g.freq(static_cast<int>(flat % n));
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.coord(static_cast<int>(i / n));
      const double y = g.coord(static_cast<int>(i % n));
      acc += f.values()[i] * std::polar(1.0, -(kx * x + ky * y));
    }
    acc *= g.cell_volume();
    CHECK(std::abs(acc - spec[flat]) <= 1e-10 * (1.0 + std::abs(acc)));
  }
}

TEST_CASE("spectrum of a pure cosine occupies the two matching modes") {
  const Grid g = make_grid(2, 8.0, 16);
  const double k0 = g.freq(3);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int jx = static_cast<int>(i / 16);
    v[i] = std::cos(k0 * g.coord(jx));
  }
  const Field f(g, std::move(v));
  const auto& spec = f.spectrum();
  // Modes (3, 0) and (13, 0) carry (2L)^N / 2 each.
  const double expect = g.volume() / 2.0;
  CHECK(std::abs(spec[3 * 16] - expect) <= 1e-9 * expect);
  CHECK(std::abs(spec[13 * 16] - expect) <= 1e-9 * expect);
  double rest = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (i != 3 * 16 && i != 13 * 16) rest = std::max(rest, std::abs(spec[i]));
  }
  CHECK(rest <= 1e-9 * expect);
}

TEST_CASE("fields reject non-finite values") {
  const Grid g = make_grid(2, 8.0, 16);
  std::vector<double> v(g.size(), 0.0);
  v[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Field(g, v), FieldError);
  v[3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Field(g, v), FieldError);
  v.pop_back();
  CHECK_THROWS_AS(Field(g, v), FieldError);
}

TEST_CASE("snapshot round trip and byte layout") {
  const Grid g = make_grid(2, 8.0, 16);
  const Field f = random_field(g, 41);
  const std::string path =
      (std::filesystem::temp_directory_path() / "relgs_snapshot_test.rgs1")
          .string();
  write_snapshot(path, f);

  std::ifstream in(path, std::ios::binary);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  REQUIRE(bytes.size() == 4 + 4 + 4 + 8 + g.size() * 8);
  CHECK(std::string(bytes.data(), 4) == "RGS1");
  const auto u32 = [&](std::size_t off) {
    std::uint32_t v = 0;
    for (int b = 3; b >= 0; --b) {
      v = (v << 8) | static_cast<unsigned char>(bytes[off + b]);
    }
    return v;
  };
  CHECK(u32(4) == 2);
  CHECK(u32(8) == 16);

  const Field back = read_snapshot(path);
  CHECK(back.grid().same_as(g));
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(back.values()[i] == f.values()[i]);
  }
  std::filesystem::remove(path);
}

TEST_CASE("snapshot rejects corrupt headers") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "relgs_bad_snapshot.rgs1")
          .string();
  std::ofstream(path, std::ios::binary) << "NOPE1234";
  CHECK_THROWS_AS(read_snapshot(path), SnapshotError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_snapshot(path), SnapshotError);  // missing file
}
