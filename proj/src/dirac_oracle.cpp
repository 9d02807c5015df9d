#include "qedmap/dirac_oracle.hpp"

#include <cmath>
#include <numbers>

#include "qedmap/error.hpp"

namespace qedmap::dirac {

namespace {

constexpr Complex kI{0.0, 1.0};

std::array<GammaMatrix, 4> make_gamma() {
  const Eigen::Matrix2cd one = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, -kI, kI, 0;
  sz << 1, 0, 0, -1;

  std::array<GammaMatrix, 4> g;
  g[0].setZero();
  g[0].topLeftCorner<2, 2>() = one;
  g[0].bottomRightCorner<2, 2>() = -one;
  const std::array<Eigen::Matrix2cd, 3> sigma = {sx, sy, sz};
  for (int i = 0; i < 3; ++i) {
    g[i + 1].setZero();
    g[i + 1].topRightCorner<2, 2>() = sigma[i];
    g[i + 1].bottomLeftCorner<2, 2>() = -sigma[i];
  }
  return g;
}

GammaMatrix make_gamma5() {
  GammaMatrix g5 = GammaMatrix::Zero();
  g5.topRightCorner<2, 2>().setIdentity();
  g5.bottomLeftCorner<2, 2>().setIdentity();
  return g5;
}

// Rotation angle about +y that takes +z into the direction of p.
double rotation_angle(const FourVector& p) {
  double alpha = std::atan2(p[1], p[3]);
  if (alpha < 0.0) alpha += 2.0 * std::numbers::pi;
  return alpha;
}

Eigen::Vector2cd two_spinor(Helicity h, double alpha) {
  const double c = std::cos(0.5 * alpha);
  const double s = std::sin(0.5 * alpha);
  Eigen::Vector2cd chi;
  if (h == Helicity::R) {
    chi << c, s;
  } else {
    chi << -s, c;
  }
  return chi;
}

Helicity flip(Helicity h) { return h == Helicity::R ? Helicity::L : Helicity::R; }

void require_in_plane(const FourVector& p) {
  if (std::abs(p[2]) > 1e-12 * std::max(1.0, std::abs(p[0]))) {
    throw Error(ErrorKind::InvalidInput, "momentum must lie in the x-z plane");
  }
}

using Current = ComplexFourVector;

Current current(const DiracSpinor& left, const DiracSpinor& right) {
  const Eigen::RowVector4cd bar = adjoint(left.components);
  Current j;
  for (int mu = 0; mu < 4; ++mu) j[mu] = (bar * gamma()[mu] * right.components)(0, 0);
  return j;
}

Complex sandwich(const DiracSpinor& left, const GammaMatrix& op, const DiracSpinor& right) {
  return (adjoint(left.components) * op * right.components)(0, 0);
}

ComplexFourVector as_complex(const FourVector& p) { return {p[0], p[1], p[2], p[3]}; }

// Jacob-Wick phase for the second particle of a two-particle helicity state.
double second_particle_phase(const Leg& leg, Helicity h) {
  return leg.kind == LegKind::Photon ? 1.0 : static_cast<double>(sign(h));
}

DiracSpinor external_fermion(const ComConfiguration& cfg, const ProcessInfo& info, int leg,
                             Helicity h) {
  const SpinorKind kind =
      info.legs[leg].kind == LegKind::Antifermion ? SpinorKind::Antiparticle : SpinorKind::Particle;
  return helicity_spinor(cfg.p[leg], info.legs[leg].mass, h, kind);
}

ComplexFourVector photon_vector(const ComConfiguration& cfg, int leg, Helicity h, bool outgoing,
                                bool probe) {
  if (probe) return as_complex(cfg.p[leg]);
  const PhotonPolarization eps = photon_polarization(cfg.p[leg], h);
  return outgoing ? conj(eps.components) : eps.components;
}

}  // namespace

const std::array<GammaMatrix, 4>& gamma() {
  static const std::array<GammaMatrix, 4> g = make_gamma();
  return g;
}

const GammaMatrix& gamma5() {
  static const GammaMatrix g5 = make_gamma5();
  return g5;
}

GammaMatrix slash(const ComplexFourVector& p) {
  const auto& g = gamma();
  return g[0] * p[0] - g[1] * p[1] - g[2] * p[2] - g[3] * p[3];
}

GammaMatrix slash(const FourVector& p) { return slash(as_complex(p)); }

Eigen::RowVector4cd adjoint(const Spinor& psi) { return psi.adjoint() * gamma()[0]; }

DiracSpinor helicity_spinor(const FourVector& momentum, double mass, Helicity helicity,
                            SpinorKind kind) {
  const double e = momentum[0];
  const double p = three_momentum_norm(momentum);
  if (!(e > 0.0) || std::abs(e * e - p * p - mass * mass) > 1e-10 * e * e) {
    throw Error(ErrorKind::OffShell, "fermion momentum is not on the mass shell");
  }
  require_in_plane(momentum);

  const double alpha = rotation_angle(momentum);
  const double root_plus = std::sqrt(e + mass);
  const double root_minus = p / root_plus;  // sqrt(E - m) without cancellation

  Spinor psi;
  if (kind == SpinorKind::Particle) {
    const Eigen::Vector2cd chi = two_spinor(helicity, alpha);
    psi << root_plus * chi, static_cast<double>(sign(helicity)) * root_minus * chi;
  } else {
    // v(p, h) = gamma5 u(p, -h)
    const Eigen::Vector2cd chi = two_spinor(flip(helicity), alpha);
    psi << -static_cast<double>(sign(helicity)) * root_minus * chi, root_plus * chi;
  }
  return {psi, momentum, mass, helicity, kind};
}

PhotonPolarization photon_polarization(const FourVector& momentum, Helicity helicity) {
  const double e = momentum[0];
  const double k = three_momentum_norm(momentum);
  if (!(e > 0.0) || std::abs(e * e - k * k) > 1e-10 * e * e) {
    throw Error(ErrorKind::NotLightlike, "photon momentum is not lightlike");
  }
  require_in_plane(momentum);

  const double alpha = rotation_angle(momentum);
  const double lam = sign(helicity);
  const double norm = -lam / std::numbers::sqrt2;
  PhotonPolarization eps;
  eps.components = {Complex{0.0}, norm * std::cos(alpha), norm * lam * kI,
                    -norm * std::sin(alpha)};
  eps.momentum = momentum;
  eps.helicity = helicity;
  return eps;
}

ComplexFourVector conj(const ComplexFourVector& v) {
  return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2]), std::conj(v[3])};
}

Complex dot(const ComplexFourVector& a, const ComplexFourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

ComplexAmplitude amplitude(Process process, const KinematicPoint& point, HelicityPair out,
                           HelicityPair in, GaugeProbe probe) {
  return amplitude(process, build_configuration(process, point), out, in, probe);
}

ComplexAmplitude amplitude(Process process, const ComConfiguration& cfg, HelicityPair out,
                           HelicityPair in, GaugeProbe probe) {
  const ProcessInfo& info = process_info(process);
  ComplexAmplitude result;
  auto add = [&result](std::string name, Complex value) {
    result.channels.push_back({std::move(name), value});
  };

  const double phase = second_particle_phase(info.legs[1], in.second) *
                       second_particle_phase(info.legs[3], out.second);
  const GammaMatrix one = GammaMatrix::Identity();

  switch (process) {
    case Process::Bhabha: {
      const auto u1 = external_fermion(cfg, info, 0, in.first);
      const auto v2 = external_fermion(cfg, info, 1, in.second);
      const auto u3 = external_fermion(cfg, info, 2, out.first);
      const auto v4 = external_fermion(cfg, info, 3, out.second);
      add("t", -dot(current(u3, u1), current(v2, v4)) / cfg.t);
      add("s", dot(current(v2, u1), current(u3, v4)) / cfg.s);
      break;
    }
    case Process::Moller: {
      const auto u1 = external_fermion(cfg, info, 0, in.first);
      const auto u2 = external_fermion(cfg, info, 1, in.second);
      const auto u3 = external_fermion(cfg, info, 2, out.first);
      const auto u4 = external_fermion(cfg, info, 3, out.second);
      add("t", dot(current(u3, u1), current(u4, u2)) / cfg.t);
      add("u", -dot(current(u4, u1), current(u3, u2)) / cfg.u);
      break;
    }
    case Process::ElectronMuon: {
      const auto u1 = external_fermion(cfg, info, 0, in.first);
      const auto u2 = external_fermion(cfg, info, 1, in.second);
      const auto u3 = external_fermion(cfg, info, 2, out.first);
      const auto u4 = external_fermion(cfg, info, 3, out.second);
      add("t", dot(current(u3, u1), current(u4, u2)) / cfg.t);
      break;
    }
    case Process::MuonPairProduction: {
      const auto u1 = external_fermion(cfg, info, 0, in.first);
      const auto v2 = external_fermion(cfg, info, 1, in.second);
      const auto u3 = external_fermion(cfg, info, 2, out.first);
      const auto v4 = external_fermion(cfg, info, 3, out.second);
      add("s", dot(current(u3, v4), current(v2, u1)) / cfg.s);
      break;
    }
    case Process::Compton: {
      const double m = info.legs[0].mass;
      const auto u1 = external_fermion(cfg, info, 0, in.first);
      const auto u3 = external_fermion(cfg, info, 2, out.first);
      const GammaMatrix eps_in =
          slash(photon_vector(cfg, 1, in.second, false, probe == GaugeProbe::FirstPhoton));
      const GammaMatrix eps_out =
          slash(photon_vector(cfg, 3, out.second, true, probe == GaugeProbe::SecondPhoton));
      const GammaMatrix prop_s = slash(cfg.p[0] + cfg.p[1]) + m * one;
      const GammaMatrix prop_u = slash(cfg.p[0] - cfg.p[3]) + m * one;
      add("s", sandwich(u3, eps_out * prop_s * eps_in, u1) / (cfg.s - m * m));
      add("u", sandwich(u3, eps_in * prop_u * eps_out, u1) / (cfg.u - m * m));
      break;
    }
    case Process::PairAnnihilation: {
      const double m = info.legs[0].mass;
      const auto u1 = external_fermion(cfg, info, 0, in.first);
      const auto v2 = external_fermion(cfg, info, 1, in.second);
      const GammaMatrix eps1 =
          slash(photon_vector(cfg, 2, out.first, true, probe == GaugeProbe::FirstPhoton));
      const GammaMatrix eps2 =
          slash(photon_vector(cfg, 3, out.second, true, probe == GaugeProbe::SecondPhoton));
      const GammaMatrix prop_t = slash(cfg.p[0] - cfg.p[2]) + m * one;
      const GammaMatrix prop_u = slash(cfg.p[0] - cfg.p[3]) + m * one;
      add("t", sandwich(v2, eps2 * prop_t * eps1, u1) / (cfg.t - m * m));
      add("u", sandwich(v2, eps1 * prop_u * eps2, u1) / (cfg.u - m * m));
      break;
    }
  }

  result.value = 0.0;
  for (auto& ch : result.channels) {
    ch.value *= phase;
    result.value += ch.value;
  }
  return result;
}

Eigen::Matrix4cd amplitude_matrix(Process process, const KinematicPoint& point, GaugeProbe probe) {
  const ComConfiguration cfg = build_configuration(process, point);
  Eigen::Matrix4cd m;
  for (const HelicityPair out : kHelicityBasis) {
    for (const HelicityPair in : kHelicityBasis) {
      m(basis_index(out), basis_index(in)) = amplitude(process, cfg, out, in, probe).value;
    }
  }
  return m;
}

}  // namespace qedmap::dirac
