#pragma once

#include <array>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qedmap/scattering_matrix.hpp"
#include "qedmap/state_space.hpp"

namespace qedmap {

inline constexpr double kDominanceTieTolerance = 1e-10;
inline constexpr double kCoefficientZero = 1e-12;
inline constexpr double kBSingularTolerance = 1e-12;
inline constexpr double kMaxConditionNumber = 1e12;

enum class SpectrumClass { RealDominant, ComplexPair, Degenerate };
std::string_view to_string(SpectrumClass c);

/// Eigen-structure of M.
///
/// For template matrices the slots are canonical. Bhabha: 0 = Phi+ (A+D),
/// 1 = Psi- (E-F), 2/3 = the pair on span{Phi-, Psi+}. Moller: 0 = Phi- (A-D),
/// 1 = Psi+ (E+F), 2/3 = the pair on span{Phi+, Psi-}. Slot 2 carries the
/// larger real part, or the positive imaginary part for a complex pair.
/// Other matrices are sorted by decreasing modulus, then decreasing argument.
struct SpectralReport {
  std::array<Complex, 4> eigenvalues{};
  std::array<Eigen::Vector4cd, 4> eigenvectors{};
  std::optional<TemplateKind> kind;
  std::optional<StructuralParams> params;

  // 2x2 block K = [[a, -2B], [2B, e]] on the coupled Bell pair.
  // s1 = a + e, s1p = e - a, delta = s1p^2 - 16 B^2, s2 = sqrt(-delta) if
  // delta < 0 (else 0). Block eigenvalues are (s1 +- sqrt(delta)) / 2.
  double delta = std::numeric_limits<double>::quiet_NaN();
  double s1 = 0.0;
  double s1p = 0.0;
  double s2 = 0.0;
  /// |lambda_3| and arg(lambda_3) when the block pair is complex.
  double r = 0.0;
  double eta = 0.0;
  /// Real combinations spanning the coupled plane when delta < 0.
  std::optional<Eigen::Vector4cd> xi3;
  std::optional<Eigen::Vector4cd> xi4;
  /// Bell basis of the coupled plane (template matrices only).
  std::optional<std::array<Eigen::Vector4cd, 2>> plane;

  SpectrumClass cls = SpectrumClass::RealDominant;
  /// Slots sharing the largest modulus within the tie tolerance.
  std::vector<int> dominant;
  /// ln|lambda_m| - ln|lambda_s| over the non-dominant entries, with a
  /// complex pair counted once.
  std::vector<double> gaps;
  /// Convergence scale; nullopt means infinite (no strict dominance).
  std::optional<long long> n_c;
  /// max_s |M v_s - lambda_s v_s| / max|M|
  double residual = 0.0;
};

/// Raw 4x4 eigenvalues from a general real eigen-solver (the numeric oracle).
std::array<Complex, 4> numeric_eigenvalues(const Eigen::Matrix4d& m);

/// Throws NumericalFailure when the solver does not converge.
SpectralReport eigensystem(const ScatteringMatrix& m);

/// Closed forms; throw BSingular when |B| is below kBSingularTolerance * scale.
SpectralReport bhabha_closed_form(const StructuralParams& p);
SpectralReport moller_closed_form(const StructuralParams& p);

/// n_c = ceil(1 / min_s 2 (ln|lambda_m| - ln|lambda_s|)); throws
/// DegenerateSpectrum when no eigenvalue modulus strictly dominates.
/// Conjugate pairs count as one effective eigenvalue.
long long convergence_bound(std::span<const Complex> eigenvalues);
long long convergence_bound(const SpectralReport& report);

struct EigenExpansion {
  std::array<Complex, 4> coefficients{};
  /// Coefficients over {v_0, v_1, xi3, xi4} for the complex-pair class.
  std::optional<std::array<Complex, 4>> bell_coefficients;
  double condition_number = 1.0;
  double reconstruction_residual = 0.0;
};

/// Throws IllConditioned when cond(V) exceeds kMaxConditionNumber.
EigenExpansion expand(const PureState& v, const SpectralReport& report);

/// K^n on the coupled plane, in the basis of that plane's two Bell states.
Eigen::Matrix2d block_power(const SpectralReport& report, int n);
/// M^n applied to `v` using the spectral form (no renormalisation).
Eigen::Vector4cd spectral_power(const SpectralReport& report, const Eigen::Vector4cd& v, int n);

enum class PredictionKind { PureTarget, NoSaturation, InvariantPoint };
std::string_view to_string(PredictionKind k);

struct Prediction {
  PredictionKind kind = PredictionKind::NoSaturation;
  /// Asymptote for PureTarget; the initial state for a pure InvariantPoint.
  std::optional<PureState> target;
  std::string reason;
  /// Slots of the leading eigen-components present in the initial state.
  std::vector<int> leading;
  /// Convergence scale restricted to the components actually present.
  std::optional<long long> n_c;
  /// Smallest concurrence along the asymptotic orbit: the target's concurrence
  /// for a fixed point, the minimum over the rotation phase for a complex pair.
  std::optional<double> asymptotic_concurrence;
};

Prediction classify_and_predict(const ScatteringMatrix& m, const HelicityState& initial);
Prediction classify_and_predict(const ScatteringMatrix& m, const PureState& initial);
Prediction classify_and_predict(const SpectralReport& report, const HelicityState& initial);

/// Nearest named state (Bell or basis) with its fidelity, for labelling.
struct StateLabel {
  std::string name;
  double fidelity = 0.0;
};
StateLabel nearest_named_state(const PureState& psi);

/// Largest deviation of the eigenvectors from the ultrarelativistic picture:
/// each lies in span{RR, LL} or is one of Psi+-.
double ultrarelativistic_deviation(const SpectralReport& report);

}  // namespace qedmap
