#include "qedmap/scattering_map.hpp"

#include <cmath>
#include <limits>

#include "qedmap/error.hpp"

namespace qedmap {

namespace {

Eigen::Matrix4cd normalized_image(const Eigen::Matrix4d& m, const Eigen::Matrix4cd& rho,
                                  double* weight) {
  const Eigen::Matrix4cd mc = m.cast<Complex>();
  Eigen::Matrix4cd out = mc * rho * mc.transpose();
  const double tr = out.trace().real();
  if (weight) *weight = tr;
  if (!(tr > kNullOutcomeThreshold)) {
    throw Error(ErrorKind::NullOutcome,
                "post-selected branch has vanishing weight " + std::to_string(tr));
  }
  out = 0.5 * (out + out.adjoint());
  out /= out.trace().real();

  // M rho M^T is PSD exactly, but round-off in near-null directions can
  // build up over long runs with a nearly degenerate spectrum. Clip that
  // noise; anything beyond kPsdRepairLimit is left for validation to reject.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(out);
  const auto& ev = es.eigenvalues();
  if (ev(0) < 0.0 && ev(0) > -kPsdRepairLimit) {
    const Eigen::Vector4d clipped = ev.cwiseMax(0.0);
    out = es.eigenvectors() * clipped.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    out = 0.5 * (out + out.adjoint());
    out /= out.trace().real();
  }
  return out;
}

double largest_povm_eigenvalue(const ScatteringMatrix& m) {
  const Eigen::Matrix4d f = povm_element(m);
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(f, Eigen::EigenvaluesOnly).eigenvalues()(3);
}

}  // namespace

HelicityState apply(const ScatteringMatrix& m, const HelicityState& state) {
  return HelicityState::from_matrix(normalized_image(m.entries, state.matrix(), nullptr));
}

PureState apply_pure(const ScatteringMatrix& m, const PureState& state) {
  const Eigen::Vector4cd v = m.entries.cast<Complex>() * state.amplitudes();
  const double n = v.norm();
  if (!(n > kNullPureThreshold)) {
    throw Error(ErrorKind::NullOutcome, "M|i> vanishes (norm " + std::to_string(n) + ")");
  }
  return PureState::normalized(v / n);
}

double outcome_probability(const ScatteringMatrix& m, const HelicityState& state) {
  return (state.matrix() * povm_element(m).cast<Complex>()).trace().real();
}

IterationTrace iterate(const ScatteringMatrix& m, const HelicityState& initial, int n_max,
                       const std::optional<PureState>& target, const IterationOptions& options) {
  if (n_max < 1) throw Error(ErrorKind::InvalidInput, "n_max must be at least 1");

  const double f_norm = largest_povm_eigenvalue(m);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto record = [&](int step, const HelicityState& s, double prob, double change) {
    return StepRecord{step, concurrence(s), purity(s), target ? fidelity(s, *target) : nan, prob,
                      change};
  };

  IterationTrace trace;
  trace.records.reserve(static_cast<std::size_t>(options.stop_at_fixed_point ? 64 : n_max + 1));
  trace.records.push_back(record(0, initial, 1.0, 0.0));
  if (options.keep_states) trace.states.push_back(initial);

  HelicityState current = initial;
  for (int n = 1; n <= n_max; ++n) {
    double weight = 0.0;
    Eigen::Matrix4cd next;
    try {
      next = normalized_image(m.entries, current.matrix(), &weight);
    } catch (const Error& e) {
      throw Error(ErrorKind::NullOutcome, "at step " + std::to_string(n) + ": " + e.detail());
    }
    const HelicityState state = HelicityState::from_matrix(next, 1e-10);
    const double change = (state.matrix() - current.matrix()).cwiseAbs().maxCoeff();
    trace.records.push_back(record(n, state, weight / f_norm, change));
    if (options.keep_states) trace.states.push_back(state);

    const auto& prev = trace.records[trace.records.size() - 2];
    const auto& now = trace.records.back();
    if (!trace.plateau_step && std::abs(now.concurrence - prev.concurrence) < options.plateau_tolerance) {
      trace.plateau_step = n;
    }
    current = state;
    if (!trace.convergence_step && change < options.fixed_point_tolerance) {
      trace.convergence_step = n;
      if (options.stop_at_fixed_point) break;
    }
  }
  trace.final_state = current;
  return trace;
}

HelicityState power_map(const ScatteringMatrix& m, const HelicityState& state, int n) {
  Eigen::Matrix4d power = Eigen::Matrix4d::Identity();
  for (int k = 0; k < n; ++k) power = m.entries * power;
  return HelicityState::from_matrix(normalized_image(power, state.matrix(), nullptr), 1e-10);
}

}  // namespace qedmap
