#pragma once

#include <random>
#include <string_view>

#include <Eigen/Dense>

#include "qedmap/helicity.hpp"

namespace qedmap {

using Complex = std::complex<double>;

inline constexpr double kStateTolerance = 1e-12;

/// Normalised vector in the (RR, RL, LR, LL) basis.
class PureState {
 public:
  PureState() = default;

  /// Requires unit norm within kStateTolerance.
  static PureState from_amplitudes(const Eigen::Vector4cd& amplitudes);
  /// Normalises; throws InvalidState for a (numerically) zero vector.
  static PureState normalized(const Eigen::Vector4cd& amplitudes);

  const Eigen::Vector4cd& amplitudes() const { return v_; }
  Complex operator[](int i) const { return v_(i); }

 private:
  explicit PureState(const Eigen::Vector4cd& v) : v_(v) {}
  Eigen::Vector4cd v_ = Eigen::Vector4cd::Unit(0);
};

/// Density operator on the two-helicity space: Hermitian, unit trace, PSD.
class HelicityState {
 public:
  HelicityState() = default;

  /// Validates the invariants within `tolerance`; throws InvalidState.
  static HelicityState from_matrix(const Eigen::Matrix4cd& rho, double tolerance = kStateTolerance);
  static HelicityState from_pure(const PureState& psi);

  const Eigen::Matrix4cd& matrix() const { return rho_; }
  Complex operator()(int r, int c) const { return rho_(r, c); }

 private:
  explicit HelicityState(const Eigen::Matrix4cd& rho) : rho_(rho) {}
  Eigen::Matrix4cd rho_ = Eigen::Matrix4cd::Identity() / 4.0;
};

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Phi+- = (RR +- LL)/sqrt2, Psi+- = (RL +- LR)/sqrt2.
PureState bell_state(BellLabel label);
std::string_view to_string(BellLabel label);

PureState basis_state(HelicityPair pair);

/// (|RL><RL| + |LR><LR|)/2
HelicityState partially_mixed_state();
/// I/4
HelicityState completely_mixed_state();

enum class BellFamily {
  PhiMinusPsiPlus,  // cos a |Phi-> + sin a |Psi+>
  PhiPlusPsiMinus,  // cos a |Phi+> + sin a |Psi->
};

PureState special_combination(double angle, BellFamily family);

/// Wootters concurrence of a two-qubit density operator.
double concurrence(const HelicityState& state);
/// 2 |a d - b c| for amplitudes (a, b, c, d).
double concurrence(const PureState& psi);

/// <target| rho |target>
double fidelity(const HelicityState& state, const PureState& target);
double fidelity(const PureState& state, const PureState& target);

/// Tr rho^2
double purity(const HelicityState& state);

/// sigma_2 (x) sigma_2 with sigma_2 = -i|0><1| + i|1><0|, |0> = R, |1> = L.
const Eigen::Matrix4cd& spin_flip();

/// Hermitian square root with eigenvalues clamped at zero.
Eigen::Matrix4cd psd_sqrt(const Eigen::Matrix4cd& h);

// Random generators used by scans and property tests.
Eigen::Matrix2cd random_unitary(std::mt19937_64& rng);
PureState random_pure_state(std::mt19937_64& rng);
/// (U (x) 1)|Phi+> with Haar U and a random global phase.
PureState random_maximally_entangled(std::mt19937_64& rng);
HelicityState random_mixed_state(std::mt19937_64& rng, int rank = 4);

}  // namespace qedmap
