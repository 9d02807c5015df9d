#pragma once

#include <optional>
#include <vector>

#include "qedmap/scattering_matrix.hpp"
#include "qedmap/state_space.hpp"

namespace qedmap {

inline constexpr double kNullOutcomeThreshold = 1e-30;
inline constexpr double kNullPureThreshold = 1e-15;
inline constexpr double kFixedPointTolerance = 1e-10;
inline constexpr double kConcurrencePlateauTolerance = 1e-12;
/// Negative eigenvalues of the image above this are treated as round-off.
inline constexpr double kPsdRepairLimit = 1e-8;

/// rho -> M rho M^T / Tr[M rho M^T]; throws NullOutcome when the unnormalised
/// trace is at or below kNullOutcomeThreshold.
HelicityState apply(const ScatteringMatrix& m, const HelicityState& state);

/// |i> -> M|i> / ||M|i>||
PureState apply_pure(const ScatteringMatrix& m, const PureState& state);

/// Unnormalised Born weight Tr(rho M^T M) at unit coupling.
double outcome_probability(const ScatteringMatrix& m, const HelicityState& state);

struct StepRecord {
  int step = 0;
  double concurrence = 0.0;
  double purity = 0.0;
  /// NaN when no target was given.
  double fidelity = 0.0;
  /// Born probability of the post-selected branch for the rescaled POVM
  /// element F / ||F|| (so it lies in (0, 1]); 1 for the initial record.
  double probability = 1.0;
  /// Max-norm change from the previous state (0 for the initial record).
  double change = 0.0;
};

struct IterationOptions {
  double fixed_point_tolerance = kFixedPointTolerance;
  double plateau_tolerance = kConcurrencePlateauTolerance;
  /// Keep every intermediate density operator in the trace.
  bool keep_states = true;
  /// Stop at the first step meeting the fixed-point criterion.
  bool stop_at_fixed_point = false;
};

struct IterationTrace {
  /// records[0] is the initial state; records[k] follows k applications.
  std::vector<StepRecord> records;
  std::vector<HelicityState> states;
  HelicityState final_state;
  /// First n with max|rho_n - rho_{n-1}| below the fixed-point tolerance.
  std::optional<int> convergence_step;
  /// First n with |C_n - C_{n-1}| below the plateau tolerance.
  std::optional<int> plateau_step;
};

/// Applies the map n_max times, renormalising after every step. Throws
/// NullOutcome (message carries the step index).
IterationTrace iterate(const ScatteringMatrix& m, const HelicityState& initial, int n_max,
                       const std::optional<PureState>& target = std::nullopt,
                       const IterationOptions& options = {});

/// Direct evaluation M^n rho (M^T)^n / N_n, for cross-checks.
HelicityState power_map(const ScatteringMatrix& m, const HelicityState& state, int n);

}  // namespace qedmap
