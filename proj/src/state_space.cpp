#include "qedmap/state_space.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qedmap/error.hpp"

namespace qedmap {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Eigen::Matrix4cd make_spin_flip() {
  Eigen::Matrix2cd s2;
  s2 << 0, -kI, kI, 0;
  Eigen::Matrix4cd y;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) y(2 * a + c, 2 * b + d) = s2(a, b) * s2(c, d);
  return y;
}

Eigen::Vector4cd vec(Complex a, Complex b, Complex c, Complex d) {
  Eigen::Vector4cd v;
  v << a, b, c, d;
  return v;
}

}  // namespace

PureState PureState::from_amplitudes(const Eigen::Vector4cd& amplitudes) {
  const double n = amplitudes.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > kStateTolerance) {
    throw Error(ErrorKind::InvalidState, "pure state must have unit norm, got " + std::to_string(n));
  }
  return PureState(amplitudes);
}

PureState PureState::normalized(const Eigen::Vector4cd& amplitudes) {
  const double n = amplitudes.norm();
  if (!std::isfinite(n) || n < 1e-300) {
    throw Error(ErrorKind::InvalidState, "cannot normalise a zero or non-finite vector");
  }
  return PureState(amplitudes / n);
}

HelicityState HelicityState::from_matrix(const Eigen::Matrix4cd& rho, double tolerance) {
  if (!rho.allFinite()) throw Error(ErrorKind::InvalidState, "density matrix is not finite");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const Complex tr = rho.trace();
  std::ostringstream os;
  if (herm > tolerance) {
    os << "not Hermitian (deviation " << herm << ")";
  } else if (std::abs(tr - 1.0) > tolerance) {
    os << "trace " << tr.real() << " differs from 1";
  } else {
    const Eigen::Matrix4cd h = 0.5 * (rho + rho.adjoint());
    const double lowest = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(h, Eigen::EigenvaluesOnly)
                              .eigenvalues()
                              .minCoeff();
    if (lowest < -tolerance) os << "negative eigenvalue " << lowest;
  }
  if (!os.str().empty()) throw Error(ErrorKind::InvalidState, os.str());
  return HelicityState(rho);
}

HelicityState HelicityState::from_pure(const PureState& psi) {
  const Eigen::Vector4cd& v = psi.amplitudes();
  return HelicityState(v * v.adjoint());
}

PureState bell_state(BellLabel label) {
  const double h = kInvSqrt2;
  switch (label) {
    case BellLabel::PhiPlus: return PureState::normalized(vec(h, 0, 0, h));
    case BellLabel::PhiMinus: return PureState::normalized(vec(h, 0, 0, -h));
    case BellLabel::PsiPlus: return PureState::normalized(vec(0, h, h, 0));
    case BellLabel::PsiMinus: return PureState::normalized(vec(0, h, -h, 0));
  }
  return {};
}

std::string_view to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return "Phi+";
    case BellLabel::PhiMinus: return "Phi-";
    case BellLabel::PsiPlus: return "Psi+";
    case BellLabel::PsiMinus: return "Psi-";
  }
  return "?";
}

PureState basis_state(HelicityPair pair) {
  return PureState::from_amplitudes(Eigen::Vector4cd::Unit(basis_index(pair)));
}

HelicityState partially_mixed_state() {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(1, 1) = 0.5;
  rho(2, 2) = 0.5;
  return HelicityState::from_matrix(rho);
}

HelicityState completely_mixed_state() {
  return HelicityState::from_matrix(Eigen::Matrix4cd::Identity() / 4.0);
}

PureState special_combination(double angle, BellFamily family) {
  const bool phi_minus = family == BellFamily::PhiMinusPsiPlus;
  const Eigen::Vector4cd a = bell_state(phi_minus ? BellLabel::PhiMinus : BellLabel::PhiPlus).amplitudes();
  const Eigen::Vector4cd b = bell_state(phi_minus ? BellLabel::PsiPlus : BellLabel::PsiMinus).amplitudes();
  return PureState::normalized(std::cos(angle) * a + std::sin(angle) * b);
}

const Eigen::Matrix4cd& spin_flip() {
  static const Eigen::Matrix4cd y = make_spin_flip();
  return y;
}

Eigen::Matrix4cd psd_sqrt(const Eigen::Matrix4cd& h) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (h + h.adjoint()));
  const Eigen::Vector4d roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

double concurrence(const HelicityState& state) {
  // The descending eigenvalues of sqrt(sqrt(rho) rho' sqrt(rho)) equal the
  // singular values of X^T Y X for any factorisation rho = X X^dagger
  // (Y = sigma_2 (x) sigma_2 is real). This avoids square roots of the
  // round-off sized eigenvalues that the direct formula produces.
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(state.matrix());
  const Eigen::Vector4d weights = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd x = es.eigenvectors() * weights.asDiagonal();
  const Eigen::Matrix4cd tau = x.transpose() * spin_flip() * x;
  const Eigen::Vector4d sv = Eigen::JacobiSVD<Eigen::Matrix4cd>(tau).singularValues();
  const double c = sv(0) - sv(1) - sv(2) - sv(3);
  return std::clamp(c, 0.0, 1.0);
}

double concurrence(const PureState& psi) {
  const auto& v = psi.amplitudes();
  return std::min(1.0, 2.0 * std::abs(v(0) * v(3) - v(1) * v(2)));
}

double fidelity(const HelicityState& state, const PureState& target) {
  const auto& t = target.amplitudes();
  const double f = (t.adjoint() * state.matrix() * t)(0, 0).real();
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const PureState& state, const PureState& target) {
  return std::clamp(std::norm(target.amplitudes().dot(state.amplitudes())), 0.0, 1.0);
}

double purity(const HelicityState& state) {
  return (state.matrix() * state.matrix()).trace().real();
}

Eigen::Matrix2cd random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector4d q(g(rng), g(rng), g(rng), g(rng));
  q.normalize();
  Eigen::Matrix2cd u;
  u << Complex(q(0), q(1)), Complex(q(2), q(3)),
       Complex(-q(2), q(3)), Complex(q(0), -q(1));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, phase(rng)) * u;
}

PureState random_pure_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) v(i) = Complex(g(rng), g(rng));
  return PureState::normalized(v);
}

PureState random_maximally_entangled(std::mt19937_64& rng) {
  const Eigen::Matrix2cd u = random_unitary(rng);
  const Eigen::Vector4cd phi = bell_state(BellLabel::PhiPlus).amplitudes();
  Eigen::Vector4cd out = Eigen::Vector4cd::Zero();
  // (U (x) 1)|Phi+>: index 2a + b.
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 2; ++b) out(2 * a + b) += u(a, ap) * phi(2 * ap + b);
  return PureState::normalized(out);
}

HelicityState random_mixed_state(std::mt19937_64& rng, int rank) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd x(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < rank; ++j) x(i, j) = Complex(g(rng), g(rng));
  Eigen::Matrix4cd rho = x * x.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return HelicityState::from_matrix(rho);
}

}  // namespace qedmap
