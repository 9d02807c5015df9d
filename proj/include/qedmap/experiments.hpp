#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qedmap/spectral_analysis.hpp"

namespace qedmap {

/// Named initial states: RR RL LR LL, phi+ phi- psi+ psi-, rho_pm, rho_cm.
/// Throws InvalidInput for an unknown name.
HelicityState parse_initial_state(const std::string& name);
/// Pure states only (basis and Bell names); nullopt for mixtures.
std::optional<PureState> parse_pure_state(const std::string& name);
/// Row-major 16 reals, or 32 numbers as (re, im) pairs.
HelicityState state_from_entries(const std::vector<double>& values);

struct Table1Case {
  Process process = Process::Bhabha;
  std::string initial;
  std::string regime;  // "ur" or "nr"
  double mu = 1.0;
  double theta = 0.0;
  /// Expected asymptote: one Bell state, or two spanning a real plane.
  std::vector<BellLabel> expected;
};

/// The six rows of the asymptotic-state table (u.r.: mu = 1e3, n.r.: 1e-2).
std::vector<Table1Case> table1_cases();

struct Table1Result {
  Table1Case row;
  Prediction prediction;
  std::string predicted_label;
  /// <P> of the predicted asymptote on the expected subspace.
  double predicted_overlap = 0.0;
  long long n_run = 0;
  bool capped = false;
  /// Largest <P> reached by the iteration within n_run steps, and where.
  double best_fidelity = 0.0;
  long long best_step = 0;
  /// First step meeting the pass condition.
  std::optional<long long> hit_step;
  double final_fidelity = 0.0;
  double final_concurrence = 0.0;
  /// Final fidelity to this implementation's own predicted target, if any.
  double final_target_fidelity = 0.0;
  std::optional<long long> convergence_step;
  bool pass = false;
  std::string error;
};

/// Iterates for min(10 n_c, cap) steps. A row passes when the weight on the
/// expected subspace exceeds 1 - 1e-6 at some step; plane rows also need
/// concurrence above 1 - 1e-6 at that step.
Table1Result run_table1_case(const Table1Case& row, long long cap = 2'000'000);

}  // namespace qedmap
