// Serial reference vs OpenMP sweep kernels: wall time and agreement.
//   bench_sweep [grid_n] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <numbers>

#include "qedmap/sweep.hpp"

using namespace qedmap;

namespace {

template <class F>
double best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    best = dt < best ? dt : best;
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-22s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  identical %s\n", name, serial, parallel,
              serial / parallel, same ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 40;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  const auto mus = log_grid(0.05, 1e3, n);
  const auto th = linear_grid(0.05, std::numbers::pi - 0.05, n);
  std::printf("threads %d, grid %dx%d, best of %d\n", sweep_threads(), n, n, repeats);

  std::vector<SpectrumPoint> gs, gp;
  const double s1 = best_of(repeats, [&] { gs = spectrum_grid(Process::Bhabha, mus, th, SweepMode::Serial); });
  const double p1 = best_of(repeats, [&] { gp = spectrum_grid(Process::Bhabha, mus, th, SweepMode::Parallel); });
  bool same = gs.size() == gp.size();
  for (std::size_t i = 0; same && i < gs.size(); ++i)
    same = std::memcmp(gs[i].moduli.data(), gp[i].moduli.data(), sizeof gs[i].moduli) == 0;
  report("spectrum_grid", s1, p1, same);

  std::vector<EntanglementScanPoint> es, ep;
  const double s2 = best_of(repeats, [&] { es = max_entanglement_scan(Process::Bhabha, mus, th, 50, 7, SweepMode::Serial); });
  const double p2 = best_of(repeats, [&] { ep = max_entanglement_scan(Process::Bhabha, mus, th, 50, 7, SweepMode::Parallel); });
  same = es.size() == ep.size();
  for (std::size_t i = 0; same && i < es.size(); ++i) same = es[i].min_concurrence == ep[i].min_concurrence;
  report("max_entanglement_scan", s2, p2, same);

  const auto angles = interior_angles(n);
  const auto rl = basis_state({Helicity::R, Helicity::L});
  std::vector<ThetaSweepRow> ts, tp;
  const double s3 = best_of(repeats, [&] { ts = theta_sweep(Process::Bhabha, 10.0, angles, rl, 100, SweepMode::Serial); });
  const double p3 = best_of(repeats, [&] { tp = theta_sweep(Process::Bhabha, 10.0, angles, rl, 100, SweepMode::Parallel); });
  same = ts.size() == tp.size();
  for (std::size_t i = 0; same && i < ts.size(); ++i) same = ts[i].concurrence == tp[i].concurrence;
  report("theta_sweep", s3, p3, same);
  return 0;
}
