#include "qedmap/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qedmap/error.hpp"
#include "qedmap/scattering_map.hpp"

namespace qedmap {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double subspace_weight(const PureState& psi, const std::vector<BellLabel>& labels) {
  double w = 0.0;
  for (BellLabel l : labels) w += fidelity(psi, bell_state(l));
  return w;
}

}  // namespace

std::optional<PureState> parse_pure_state(const std::string& name) {
  const std::string n = lower(name);
  for (std::size_t i = 0; i < kBasisLabels.size(); ++i)
    if (n == lower(std::string(kBasisLabels[i]))) return basis_state(kHelicityBasis[i]);
  for (BellLabel l : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus})
    if (n == lower(std::string(to_string(l)))) return bell_state(l);
  return std::nullopt;
}

HelicityState parse_initial_state(const std::string& name) {
  if (auto p = parse_pure_state(name)) return HelicityState::from_pure(*p);
  const std::string n = lower(name);
  if (n == "rho_pm") return partially_mixed_state();
  if (n == "rho_cm") return completely_mixed_state();
  throw Error(ErrorKind::InvalidInput, "unknown initial state '" + name + "'");
}

HelicityState state_from_entries(const std::vector<double>& values) {
  Eigen::Matrix4cd rho;
  if (values.size() == 16) {
    for (int k = 0; k < 16; ++k) rho(k / 4, k % 4) = values[k];
  } else if (values.size() == 32) {
    for (int k = 0; k < 16; ++k) rho(k / 4, k % 4) = Complex(values[2 * k], values[2 * k + 1]);
  } else {
    throw Error(ErrorKind::InvalidInput, "explicit state needs 16 or 32 numbers, got " + std::to_string(values.size()));
  }
  return HelicityState::from_matrix(rho, 1e-10);
}

std::vector<Table1Case> table1_cases() {
  const double th = std::numbers::pi / 4;
  using B = BellLabel;
  return {
      {Process::Bhabha, "RL", "ur", 1e3, th, {B::PsiPlus}},
      {Process::Bhabha, "RL", "nr", 1e-2, th, {B::PhiMinus, B::PsiPlus}},
      {Process::Bhabha, "RR", "nr", 1e-2, th, {B::PhiPlus}},
      {Process::Moller, "RL", "ur", 1e3, th, {B::PsiMinus}},
      {Process::Moller, "RR", "nr", 1e-2, th, {B::PhiMinus}},
      {Process::Moller, "RL", "nr", 1e-2, th, {B::PhiPlus, B::PsiMinus}},
  };
}

Table1Result run_table1_case(const Table1Case& row, long long cap) {
  Table1Result res;
  res.row = row;
  try {
    const auto m = build_matrix(row.process, make_point(row.mu, row.theta));
    const PureState init = *parse_pure_state(row.initial);
    res.prediction = classify_and_predict(m, init);
    if (res.prediction.target) {
      res.predicted_label = nearest_named_state(*res.prediction.target).name;
      res.predicted_overlap = subspace_weight(*res.prediction.target, row.expected);
    } else {
      res.predicted_label = std::string(to_string(res.prediction.kind));
    }
    const long long n_c = res.prediction.n_c.value_or(cap);
    res.n_run = std::min(10 * n_c, cap);
    res.capped = 10 * n_c > cap;

    // Pure-state recursion: cheaper than the density route over ~1e6 steps.
    PureState psi = init;
    Eigen::Matrix4cd prev = psi.amplitudes() * psi.amplitudes().adjoint();
    for (long long n = 1; n <= res.n_run; ++n) {
      psi = apply_pure(m, psi);
      const Eigen::Matrix4cd rho = psi.amplitudes() * psi.amplitudes().adjoint();
      if (!res.convergence_step && (rho - prev).cwiseAbs().maxCoeff() < kFixedPointTolerance) res.convergence_step = n;
      prev = rho;
      const double f = subspace_weight(psi, row.expected);
      if (f > res.best_fidelity) {
        res.best_fidelity = f;
        res.best_step = n;
      }
      // A plane target also needs real coefficients, i.e. concurrence 1.
      if (!res.hit_step && f > 1.0 - 1e-6 && (row.expected.size() == 1 || concurrence(psi) > 1.0 - 1e-6)) {
        res.hit_step = n;
      }
    }
    res.final_fidelity = subspace_weight(psi, row.expected);
    if (res.prediction.target) res.final_target_fidelity = fidelity(psi, *res.prediction.target);
    res.final_concurrence = concurrence(psi);
    res.pass = res.hit_step.has_value();
  } catch (const Error& e) {
    res.error = e.what();
  }
  return res;
}

}  // namespace qedmap
