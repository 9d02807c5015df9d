#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qedmap/kinematics.hpp"
#include "qedmap/spectral_analysis.hpp"

namespace qedmap {

/// Serial is the reference; Parallel splits grid points over OpenMP threads.
/// Both write into preallocated slots, so results are identical and ordered.
enum class SweepMode { Serial, Parallel };

std::vector<double> linear_grid(double lo, double hi, int n);
std::vector<double> log_grid(double lo, double hi, int n);
/// n points strictly inside (0, pi), equally spaced.
std::vector<double> interior_angles(int n);

struct SpectrumPoint {
  double mu = 0.0;
  double theta = 0.0;
  double delta = 0.0;
  SpectrumClass cls = SpectrumClass::RealDominant;
  std::array<double, 4> moduli{};
  std::optional<long long> n_c;
  /// Bhabha claims: delta > 0 -> |l1| beats the rest; delta < 0 -> |l1| > |l2| > r.
  bool dominance_violation = false;
  double residual = 0.0;
  std::string error;
};

/// Row-major over (mu, theta).
std::vector<SpectrumPoint> spectrum_grid(Process process, const std::vector<double>& mus,
                                         const std::vector<double>& thetas, SweepMode mode);

struct EntanglementScanPoint {
  double mu = 0.0;
  double theta = 0.0;
  double min_concurrence = 1.0;
  double max_deviation = 0.0;
  std::string error;
};

/// Applies M to `samples` random maximally entangled states per point. Each
/// point seeds its own generator from (seed, point index).
std::vector<EntanglementScanPoint> max_entanglement_scan(Process process,
                                                         const std::vector<double>& mus,
                                                         const std::vector<double>& thetas,
                                                         int samples, std::uint64_t seed,
                                                         SweepMode mode);

struct ThetaSweepRow {
  double theta = 0.0;
  /// concurrence[n] after n iterations, n = 0..n_max.
  std::vector<double> concurrence;
  std::string error;
};

std::vector<ThetaSweepRow> theta_sweep(Process process, double mu, const std::vector<double>& thetas,
                                       const PureState& initial, int n_max, SweepMode mode);

/// Number of OpenMP threads the parallel kernels will use.
int sweep_threads();

}  // namespace qedmap
