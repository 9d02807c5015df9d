#include "qedmap/compton_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qedmap/error.hpp"

namespace qedmap {

std::vector<int> find_peaks(const std::vector<double>& c, double prominence) {
  // A side qualifies once it drops by more than `prominence` before any
  // higher sample; scanning stops there, which keeps long series cheap.
  auto side_ok = [&](int i, int step) {
    const double floor = c[i] - prominence;
    for (int j = i + step; j >= 0 && j < static_cast<int>(c.size()); j += step) {
      if (c[j] > c[i]) return false;
      if (c[j] < floor) return true;
    }
    return false;
  };
  std::vector<int> peaks;
  for (int i = 1; i + 1 < static_cast<int>(c.size()); ++i) {
    if (c[i] > c[i - 1] && c[i] >= c[i + 1] && side_ok(i, -1) && side_ok(i, +1)) peaks.push_back(i);
  }
  return peaks;
}

OscillationSummary compton_trace(const ScatteringMatrix& m, const HelicityState& initial, int n_max) {
  IterationOptions opts;
  opts.keep_states = false;
  const IterationTrace trace = iterate(m, initial, n_max, std::nullopt, opts);

  OscillationSummary out;
  out.point = m.point;
  out.n_max = n_max;
  out.convergence_step = trace.convergence_step;
  out.records = trace.records;
  out.concurrence.reserve(trace.records.size());
  out.change.reserve(trace.records.size());
  for (const auto& r : trace.records) {
    out.concurrence.push_back(r.concurrence);
    out.change.push_back(r.change);
  }
  const auto [lo, hi] = std::minmax_element(out.concurrence.begin(), out.concurrence.end());
  out.min_concurrence = *lo;
  out.max_concurrence = *hi;
  out.argmax = static_cast<int>(hi - out.concurrence.begin());
  out.max_change = *std::max_element(out.change.begin(), out.change.end());
  out.drift = out.max_change >= kDriftThreshold;

  out.peaks = find_peaks(out.concurrence);
  // Three peaks bound two full cycles.
  if (out.peaks.size() >= 3) {
    out.period = static_cast<double>(out.peaks.back() - out.peaks.front()) /
                 static_cast<double>(out.peaks.size() - 1);
  }

  const SpectralReport report = eigensystem(m);
  out.spectrum_class = report.cls;
  out.eta = report.eta;
  if (report.cls == SpectrumClass::ComplexPair && report.eta > 0.0) {
    out.spectral_period = 2.0 * std::numbers::pi / report.eta;
  }
  return out;
}

OscillationSummary compton_trace(const KinematicPoint& point, const HelicityState& initial, int n_max) {
  return compton_trace(build_matrix(Process::Compton, point), initial, n_max);
}

}  // namespace qedmap
