#include "qedmap/sweep.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <omp.h>

#include "qedmap/error.hpp"
#include "qedmap/scattering_map.hpp"

namespace qedmap {

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "grid needs at least one point");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return g;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > 0.0)) throw Error(ErrorKind::InvalidInput, "log grid needs positive bounds");
  std::vector<double> g = linear_grid(std::log(lo), std::log(hi), n);
  for (double& x : g) x = std::exp(x);
  if (n > 1) {
    g.front() = lo;
    g.back() = hi;
  }
  return g;
}

std::vector<double> interior_angles(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "grid needs at least one point");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = std::numbers::pi * (i + 1) / (n + 1);
  return g;
}

int sweep_threads() { return omp_get_max_threads(); }

namespace {

template <class F>
void for_each_index(std::size_t count, SweepMode mode, F&& body) {
  const long long n = static_cast<long long>(count);
  if (mode == SweepMode::Serial) {
    for (long long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
    return;
  }
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

SpectrumPoint spectrum_point(Process process, double mu, double theta) {
  SpectrumPoint p;
  p.mu = mu;
  p.theta = theta;
  try {
    const SpectralReport r = eigensystem(build_matrix(process, {mu, theta}));
    p.delta = r.delta;
    p.cls = r.cls;
    p.n_c = r.n_c;
    p.residual = r.residual;
    for (int s = 0; s < 4; ++s) p.moduli[s] = std::abs(r.eigenvalues[s]);
    if (r.kind == TemplateKind::Bhabha) {
      const auto& a = p.moduli;
      if (r.delta > 0.0) {
        p.dominance_violation = !(a[0] > std::max({a[1], a[2], a[3]}));
      } else if (r.delta < 0.0) {
        p.dominance_violation = !(a[0] > a[1] && a[1] > r.r);
      }
    }
  } catch (const std::exception& e) {
    p.error = e.what();
  }
  return p;
}

}  // namespace

std::vector<SpectrumPoint> spectrum_grid(Process process, const std::vector<double>& mus,
                                         const std::vector<double>& thetas, SweepMode mode) {
  std::vector<SpectrumPoint> out(mus.size() * thetas.size());
  for_each_index(out.size(), mode, [&](std::size_t k) {
    out[k] = spectrum_point(process, mus[k / thetas.size()], thetas[k % thetas.size()]);
  });
  return out;
}

std::vector<EntanglementScanPoint> max_entanglement_scan(Process process,
                                                         const std::vector<double>& mus,
                                                         const std::vector<double>& thetas,
                                                         int samples, std::uint64_t seed,
                                                         SweepMode mode) {
  std::vector<EntanglementScanPoint> out(mus.size() * thetas.size());
  for_each_index(out.size(), mode, [&](std::size_t k) {
    EntanglementScanPoint& p = out[k];
    p.mu = mus[k / thetas.size()];
    p.theta = thetas[k % thetas.size()];
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    try {
      const ScatteringMatrix m = build_matrix(process, {p.mu, p.theta});
      for (int i = 0; i < samples; ++i) {
        const double c = concurrence(apply_pure(m, random_maximally_entangled(rng)));
        p.min_concurrence = std::min(p.min_concurrence, c);
        p.max_deviation = std::max(p.max_deviation, std::abs(1.0 - c));
      }
    } catch (const std::exception& e) {
      p.error = e.what();
    }
  });
  return out;
}

std::vector<ThetaSweepRow> theta_sweep(Process process, double mu, const std::vector<double>& thetas,
                                       const PureState& initial, int n_max, SweepMode mode) {
  std::vector<ThetaSweepRow> out(thetas.size());
  for_each_index(out.size(), mode, [&](std::size_t k) {
    ThetaSweepRow& row = out[k];
    row.theta = thetas[k];
    try {
      const ScatteringMatrix m = build_matrix(process, {mu, row.theta});
      IterationOptions opts;
      opts.keep_states = false;
      const IterationTrace t = iterate(m, HelicityState::from_pure(initial), n_max, std::nullopt, opts);
      row.concurrence.reserve(t.records.size());
      for (const auto& r : t.records) row.concurrence.push_back(r.concurrence);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return out;
}

}  // namespace qedmap
