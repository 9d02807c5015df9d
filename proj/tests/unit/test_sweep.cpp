#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "qedmap/sweep.hpp"

using namespace qedmap;

namespace {
bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0 || (std::isnan(a) && std::isnan(b)); }
}  // namespace

TEST_CASE("grids") {
  const auto l = linear_grid(0.0, 1.0, 5);
  CHECK(l.front() == 0.0);
  CHECK(l.back() == 1.0);
  const auto g = log_grid(0.01, 1e3, 6);
  CHECK(g.front() == doctest::Approx(0.01));
  CHECK(g.back() == doctest::Approx(1e3));
  CHECK(g[1] == doctest::Approx(0.1));
  const auto a = interior_angles(3);
  CHECK(a[1] == doctest::Approx(std::numbers::pi / 2));
  CHECK(a.front() > 0.0);
  CHECK(a.back() < std::numbers::pi);
}

TEST_CASE("serial and parallel spectrum grids are bitwise identical") {
  const auto mus = log_grid(0.05, 1e3, 12);
  const auto th = linear_grid(0.05, std::numbers::pi - 0.05, 12);
  for (auto proc : {Process::Bhabha, Process::Moller}) {
    const auto s = spectrum_grid(proc, mus, th, SweepMode::Serial);
    const auto p = spectrum_grid(proc, mus, th, SweepMode::Parallel);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(same_bits(s[i].delta, p[i].delta));
      CHECK(s[i].n_c == p[i].n_c);
      CHECK(s[i].cls == p[i].cls);
      CHECK(s[i].error == p[i].error);
      for (int k = 0; k < 4; ++k) CHECK(same_bits(s[i].moduli[k], p[i].moduli[k]));
    }
  }
}

TEST_CASE("serial and parallel entanglement scans agree") {
  const auto mus = log_grid(0.05, 1e3, 6);
  const auto th = linear_grid(0.05, std::numbers::pi - 0.05, 6);
  const auto s = max_entanglement_scan(Process::Moller, mus, th, 20, 99, SweepMode::Serial);
  const auto p = max_entanglement_scan(Process::Moller, mus, th, 20, 99, SweepMode::Parallel);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(same_bits(s[i].min_concurrence, p[i].min_concurrence));
    CHECK(s[i].max_deviation < 1e-8);
  }
}

TEST_CASE("theta sweep") {
  const auto th = interior_angles(8);
  const auto rl = basis_state({Helicity::R, Helicity::L});
  const auto s = theta_sweep(Process::Bhabha, 10.0, th, rl, 30, SweepMode::Serial);
  const auto p = theta_sweep(Process::Bhabha, 10.0, th, rl, 30, SweepMode::Parallel);
  REQUIRE(s.size() == th.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    REQUIRE(s[i].concurrence.size() == 31);
    CHECK(s[i].concurrence[0] == 0.0);
    for (std::size_t n = 0; n < s[i].concurrence.size(); ++n) CHECK(same_bits(s[i].concurrence[n], p[i].concurrence[n]));
  }
}

TEST_CASE("failures are recorded per point") {
  const auto g = spectrum_grid(Process::Bhabha, {1.0}, {0.0, 1.0}, SweepMode::Parallel);
  REQUIRE(g.size() == 2);
  CHECK_FALSE(g[0].error.empty());
  CHECK(g[1].error.empty());
}
