#pragma once

#include <optional>
#include <vector>

#include "qedmap/scattering_map.hpp"
#include "qedmap/spectral_analysis.hpp"

namespace qedmap {

inline constexpr double kPeakProminence = 0.01;
inline constexpr double kDriftThreshold = 1e-3;

struct OscillationSummary {
  KinematicPoint point{1.0, 1.0};
  int n_max = 0;
  /// Same records as an IterationTrace (initial state first).
  std::vector<StepRecord> records;
  std::vector<double> concurrence;
  std::vector<double> change;
  /// Indices of concurrence peaks with prominence above kPeakProminence.
  std::vector<int> peaks;
  /// Mean peak spacing; nullopt (infinite) unless two full cycles are seen.
  std::optional<double> period;
  double max_concurrence = 0.0;
  int argmax = 0;
  double min_concurrence = 0.0;
  /// Largest per-step max-norm change of the state.
  double max_change = 0.0;
  /// Some step moves the state by at least kDriftThreshold.
  bool drift = false;
  std::optional<int> convergence_step;

  // Spectral hook.
  SpectrumClass spectrum_class = SpectrumClass::RealDominant;
  /// Rotation angle of the leading complex pair, 0 if none.
  double eta = 0.0;
  /// 2 pi / eta when the dominant eigenvalues form a complex pair.
  std::optional<double> spectral_period;
};

/// Local maxima whose prominence exceeds `prominence`.
std::vector<int> find_peaks(const std::vector<double>& series, double prominence = kPeakProminence);

OscillationSummary compton_trace(const ScatteringMatrix& m, const HelicityState& initial, int n_max);
OscillationSummary compton_trace(const KinematicPoint& point, const HelicityState& initial, int n_max);

}  // namespace qedmap
