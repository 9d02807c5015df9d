#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qedmap/dirac_oracle.hpp"
#include "qedmap/error.hpp"
#include "support/trace_oracle.hpp"

using namespace qedmap;
using namespace qedmap::dirac;
using std::numbers::pi;

namespace {

FourVector on_shell(double mass, double p, double alpha) {
  return {std::sqrt(p * p + mass * mass), p * std::sin(alpha), 0.0, p * std::cos(alpha)};
}

// Sigma . p-hat in the Dirac representation.
GammaMatrix helicity_operator(const FourVector& k) {
  const double n = three_momentum_norm(k);
  Eigen::Matrix2cd s;
  s << k[3] / n, k[1] / n, k[1] / n, -k[3] / n;
  GammaMatrix h = GammaMatrix::Zero();
  h.block<2, 2>(0, 0) = s;
  h.block<2, 2>(2, 2) = s;
  return h;
}

double max_entry(const Eigen::Matrix4cd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("spinor invariants") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lp(-3.0, 3.0), ang(0.0, 2 * pi);
  for (int i = 0; i < 200; ++i) {
    const double mass = i % 5 == 0 ? kMuonElectronMassRatio : 1.0;
    const FourVector k = on_shell(mass, std::pow(10.0, lp(rng)), ang(rng));
    const double e = k[0];
    for (Helicity h : {Helicity::R, Helicity::L}) {
      const auto u = helicity_spinor(k, mass, h, SpinorKind::Particle);
      const auto v = helicity_spinor(k, mass, h, SpinorKind::Antiparticle);
      const GammaMatrix ps = slash(k);
      CHECK(((ps - mass * GammaMatrix::Identity()) * u.components).norm() < 1e-10 * e);
      CHECK(((ps + mass * GammaMatrix::Identity()) * v.components).norm() < 1e-10 * e);
      const double hs = sign(h);
      CHECK((helicity_operator(k) * u.components - hs * u.components).norm() < 1e-10 * std::sqrt(e));
      // v(p, h) carries physical helicity h, which flips the operator sign.
      CHECK((helicity_operator(k) * v.components + hs * v.components).norm() < 1e-10 * std::sqrt(e));
      CHECK(u.components.squaredNorm() == doctest::Approx(2 * e).epsilon(1e-12));
      CHECK(v.components.squaredNorm() == doctest::Approx(2 * e).epsilon(1e-12));
      CHECK((adjoint(u.components) * u.components)(0).real() == doctest::Approx(2 * mass).epsilon(1e-9));
      CHECK((adjoint(v.components) * v.components)(0).real() == doctest::Approx(-2 * mass).epsilon(1e-9));
    }
  }
}

TEST_CASE("spinor errors") {
  CHECK_THROWS_AS(helicity_spinor({1.0, 0.0, 0.0, 1.0}, 1.0, Helicity::R, SpinorKind::Particle), Error);
  try {
    helicity_spinor({3.0, 0.0, 0.0, 1.0}, 1.0, Helicity::R, SpinorKind::Particle);
    FAIL("off-shell accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OffShell);
  }
  try {
    helicity_spinor({std::sqrt(3.0), 0.0, 1.0, 1.0}, 1.0, Helicity::R, SpinorKind::Particle);
    FAIL("out-of-plane momentum accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("axis-aligned spinor") {
  const FourVector k = on_shell(1.0, 2.0, 0.0);
  const auto u = helicity_spinor(k, 1.0, Helicity::R, SpinorKind::Particle).components;
  CHECK(u(0).real() == doctest::Approx(std::sqrt(k[0] + 1.0)));
  CHECK(std::abs(u(1)) == 0.0);
  CHECK(u(2).real() == doctest::Approx(std::sqrt(k[0] - 1.0)));
  CHECK(std::abs(u(3)) == 0.0);
}

TEST_CASE("left helicity approaches left chirality") {
  for (double mu : {1e2, 1e3, 1e4}) {
    const FourVector k = on_shell(1.0, mu, 0.4);
    const auto u = helicity_spinor(k, 1.0, Helicity::L, SpinorKind::Particle).components;
    const GammaMatrix pl = 0.5 * (GammaMatrix::Identity() - gamma5());
    CHECK((pl * u - u).norm() / u.norm() < 1.0 / mu);
  }
}

TEST_CASE("antiparticle spinor golden value at theta = pi/3") {
  const FourVector k = on_shell(1.0, 1.0, pi / 3);
  const auto v = helicity_spinor(k, 1.0, Helicity::R, SpinorKind::Antiparticle).components;
  const double golden[4] = {0.32179712645279131, -0.55736897274590132, -0.77688698701501865,
                            1.3456077332491149};
  for (int i = 0; i < 4; ++i) {
    CHECK(v(i).real() == doctest::Approx(golden[i]).epsilon(1e-14));
    CHECK(std::abs(v(i).imag()) < 1e-15);
  }
}

TEST_CASE("photon polarisation") {
  const auto r = photon_polarization({1.0, 0.0, 0.0, 1.0}, Helicity::R).components;
  const auto l = photon_polarization({1.0, 0.0, 0.0, 1.0}, Helicity::L).components;
  // (0, 1, i, 0)/sqrt2 up to a phase.
  const Complex ov = (r[1] - Complex(0, 1) * r[2]) / 2.0;
  CHECK(std::abs(ov) * std::sqrt(2.0) == doctest::Approx(1.0));
  // L is conj(R) up to a phase.
  const Complex ovl = std::conj(r[1]) * std::conj(l[1]) + std::conj(r[2]) * std::conj(l[2]);
  CHECK(std::abs(ovl) == doctest::Approx(1.0));
  for (double a : {0.0, 0.3, 1.7, 3.9}) {
    const FourVector k{2.0, 2.0 * std::sin(a), 0.0, 2.0 * std::cos(a)};
    for (Helicity h : {Helicity::R, Helicity::L}) {
      const auto e = photon_polarization(k, h).components;
      ComplexFourVector kc{k[0], k[1], k[2], k[3]};
      CHECK(std::abs(dot(e, kc)) < 1e-12);
      CHECK(std::abs(dot(conj(e), e) + 1.0) < 1e-12);
    }
  }
  try {
    photon_polarization({1.0, 0.0, 0.0, 0.5}, Helicity::R);
    FAIL("massive photon accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotLightlike);
  }
}

TEST_CASE("channel decomposition sums to the total") {
  for (Process p : kAllProcesses) {
    const KinematicPoint pt{p == Process::MuonPairProduction ? 400.0 : 1.3, 0.9};
    for (auto out : kHelicityBasis)
      for (auto in : kHelicityBasis) {
        const auto a = amplitude(p, pt, out, in);
        Complex sum = 0.0;
        for (const auto& c : a.channels) sum += c.value;
        CHECK(sum == a.value);
      }
  }
}

TEST_CASE("ultrarelativistic helicity suppression") {
  const auto m = amplitude_matrix(Process::Bhabha, {1e3, pi / 4});
  const auto a = amplitude(Process::Bhabha, KinematicPoint{1e3, pi / 4}, {Helicity::R, Helicity::R},
                           {Helicity::R, Helicity::L});
  CHECK(std::abs(a.value) < 1e-2 * max_entry(m));
}

TEST_CASE("electron-muon matrix is symmetric in modulus") {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double mu = std::pow(10.0, -1.0 + 4.0 * i / 9.0);
      const double th = 0.1 + (pi - 0.2) * j / 9.0;
      const auto m = amplitude_matrix(Process::ElectronMuon, {mu, th});
      worst = std::max(worst, (m.cwiseAbs() - m.transpose().cwiseAbs()).cwiseAbs().maxCoeff() / max_entry(m));
    }
  MESSAGE("electron-muon |M| asymmetry on 10x10 grid: " << worst);
  CHECK(worst < 1e-10);
}

TEST_CASE("bhabha golden entry") {
  const auto a = amplitude(Process::Bhabha, KinematicPoint{1.0, pi / 4}, {Helicity::R, Helicity::R},
                           {Helicity::R, Helicity::R});
  // Modulus from an exact symbolic evaluation of both diagrams.
  CHECK(std::abs(a.value) == doctest::Approx(19.131727983645297).epsilon(1e-13));
  const auto d = amplitude(Process::Bhabha, KinematicPoint{1.0, pi / 4}, {Helicity::L, Helicity::L},
                           {Helicity::R, Helicity::R});
  CHECK((d.value / a.value).real() == doctest::Approx(1.3535533905932738 / 19.131727983645297).epsilon(1e-13));
  CHECK(std::abs((d.value / a.value).imag()) < 1e-14);
}

TEST_CASE("gauge invariance") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lmu(-2.0, 3.0), th(0.05, pi - 0.05);
  for (Process p : {Process::Compton, Process::PairAnnihilation}) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const KinematicPoint pt{std::pow(10.0, lmu(rng)), th(rng)};
      const double scale = max_entry(amplitude_matrix(p, pt));
      for (auto probe : {GaugeProbe::FirstPhoton, GaugeProbe::SecondPhoton}) {
        worst = std::max(worst, max_entry(amplitude_matrix(p, pt, probe)) / scale);
      }
    }
    INFO(to_string(p));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("helicity sum matches the spin-trace oracle") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> lmu(-2.0, 3.0), th(0.05, pi - 0.05);
  for (Process p : kAllProcesses) {
    for (int i = 0; i < 20; ++i) {
      KinematicPoint pt{std::pow(10.0, lmu(rng)), th(rng)};
      if (p == Process::MuonPairProduction) pt.mu += 210.0;
      const double helicity_sum = amplitude_matrix(p, pt).cwiseAbs2().sum();
      const double trace = testing::spin_summed_square(p, pt);
      INFO(to_string(p) << " mu=" << pt.mu << " theta=" << pt.theta);
      CHECK(helicity_sum == doctest::Approx(trace).epsilon(1e-10));
    }
  }
}
