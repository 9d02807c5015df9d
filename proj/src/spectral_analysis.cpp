#include "qedmap/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "qedmap/error.hpp"

namespace qedmap {

std::string_view to_string(SpectrumClass c) {
  switch (c) {
    case SpectrumClass::RealDominant: return "real-dominant";
    case SpectrumClass::ComplexPair: return "complex-pair";
    case SpectrumClass::Degenerate: return "degenerate";
  }
  return "?";
}

std::string_view to_string(PredictionKind k) {
  switch (k) {
    case PredictionKind::PureTarget: return "pure-target";
    case PredictionKind::NoSaturation: return "no-saturation";
    case PredictionKind::InvariantPoint: return "invariant-point";
  }
  return "?";
}

namespace {

Eigen::Vector4cd bell(BellLabel l) { return bell_state(l).amplitudes(); }

Eigen::Vector4cd phase_fixed(Eigen::Vector4cd v) {
  v.normalize();
  const double big = v.cwiseAbs().maxCoeff();
  for (int i = 0; i < 4; ++i) {
    if (std::abs(v(i)) >= big * (1.0 - 1e-12)) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

bool same_modulus(double a, double b) {
  return std::abs(a - b) <= kDominanceTieTolerance * std::max(a, b);
}

// Collapses conjugate pairs into one effective eigenvalue.
std::vector<int> effective_indices(std::span<const Complex> ev) {
  const double scale = std::max(1e-300, std::abs(*std::max_element(
      ev.begin(), ev.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); })));
  std::vector<bool> used(ev.size(), false);
  std::vector<int> out;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    out.push_back(static_cast<int>(i));
    if (std::abs(ev[i].imag()) <= 1e-14 * scale) continue;
    for (std::size_t j = i + 1; j < ev.size(); ++j) {
      if (!used[j] && std::abs(ev[j] - std::conj(ev[i])) <= 1e-10 * scale) {
        used[j] = true;
        break;
      }
    }
  }
  return out;
}

struct GapInfo {
  int dominant_count = 0;
  std::vector<double> gaps;
  std::optional<long long> n_c;
};

GapInfo gap_info(std::span<const Complex> ev) {
  GapInfo g;
  const auto eff = effective_indices(ev);
  double top = 0.0;
  for (int i : eff) top = std::max(top, std::abs(ev[i]));
  if (!(top > 0.0)) return g;
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i : eff) {
    const double a = std::abs(ev[i]);
    if (same_modulus(a, top)) {
      ++g.dominant_count;
      continue;
    }
    const double gap = a > 0.0 ? std::log(top) - std::log(a) : std::numeric_limits<double>::infinity();
    g.gaps.push_back(gap);
    min_gap = std::min(min_gap, gap);
  }
  if (g.dominant_count == 1) {
    if (std::isinf(min_gap)) {
      g.n_c = 1;
    } else {
      // The factor absorbs round-off in ln for exactly representable gaps.
      g.n_c = std::max(1LL, static_cast<long long>(std::ceil((1.0 - 1e-12) / (2.0 * min_gap))));
    }
  }
  return g;
}

struct Block {
  double a = 0.0;
  double e = 0.0;
  double b = 0.0;
  Eigen::Vector4cd first;   // Phi- for Bhabha, Phi+ for Moller
  Eigen::Vector4cd second;  // Psi+ for Bhabha, Psi- for Moller
  Eigen::Matrix2d k() const {
    Eigen::Matrix2d m;
    m << a, -2.0 * b, 2.0 * b, e;
    return m;
  }
};

Block block_of(const StructuralParams& p, TemplateKind kind) {
  Block bl;
  bl.b = p.B;
  if (kind == TemplateKind::Bhabha) {
    bl.a = p.A - p.D;
    bl.e = p.E + p.F;
    bl.first = bell(BellLabel::PhiMinus);
    bl.second = bell(BellLabel::PsiPlus);
  } else {
    bl.a = p.A + p.D;
    bl.e = p.E - p.F;
    bl.first = bell(BellLabel::PhiPlus);
    bl.second = bell(BellLabel::PsiMinus);
  }
  return bl;
}

void fill_bell_slots(SpectralReport& r, const StructuralParams& p, TemplateKind kind) {
  r.kind = kind;
  r.params = p;
  if (kind == TemplateKind::Bhabha) {
    r.eigenvalues[0] = p.A + p.D;
    r.eigenvectors[0] = bell(BellLabel::PhiPlus);
    r.eigenvalues[1] = p.E - p.F;
    r.eigenvectors[1] = bell(BellLabel::PsiMinus);
  } else {
    r.eigenvalues[0] = p.A - p.D;
    r.eigenvectors[0] = bell(BellLabel::PhiMinus);
    r.eigenvalues[1] = p.E + p.F;
    r.eigenvectors[1] = bell(BellLabel::PsiPlus);
  }
  const Block bl = block_of(p, kind);
  r.s1 = bl.a + bl.e;
  r.s1p = bl.e - bl.a;
  r.delta = r.s1p * r.s1p - 16.0 * bl.b * bl.b;
  r.s2 = r.delta < 0.0 ? std::sqrt(-r.delta) : 0.0;
  if (r.delta >= 0.0) {
    const double sq = std::sqrt(r.delta);
    r.eigenvalues[2] = 0.5 * (r.s1 + sq);
    r.eigenvalues[3] = 0.5 * (r.s1 - sq);
  } else {
    r.eigenvalues[2] = Complex(0.5 * r.s1, 0.5 * r.s2);
    r.eigenvalues[3] = Complex(0.5 * r.s1, -0.5 * r.s2);
  }
  r.plane = std::array<Eigen::Vector4cd, 2>{bl.first, bl.second};
}

// Null vector of K - lambda I, choosing the better conditioned row. A scalar
// block (K = lambda I) keeps the plane basis, one vector per slot.
Eigen::Vector2cd block_null_vector(const Block& bl, Complex lambda, int slot) {
  Eigen::Vector2cd from_row1(2.0 * bl.b, bl.a - lambda);
  Eigen::Vector2cd from_row2(lambda - bl.e, 2.0 * bl.b);
  Eigen::Vector2cd x = from_row1.norm() >= from_row2.norm() ? from_row1 : from_row2;
  const double scale = std::max({std::abs(bl.a), std::abs(bl.e), std::abs(bl.b)});
  if (x.norm() <= 1e-14 * scale || x.norm() == 0.0) {
    x = slot == 2 ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
  }
  return x;
}

void finish(SpectralReport& r, const Eigen::Matrix4d& m) {
  const std::span<const Complex> ev(r.eigenvalues);

  if (r.kind && r.delta < 0.0) {
    r.cls = SpectrumClass::ComplexPair;
    r.r = std::abs(r.eigenvalues[2]);
    r.eta = std::arg(r.eigenvalues[2]);
    const Eigen::Vector4cd sum = r.eigenvectors[2] + r.eigenvectors[3];
    r.xi3 = phase_fixed(sum);
    r.xi4 = (*r.plane)[1];
  }

  double top = 0.0;
  for (const auto& l : ev) top = std::max(top, std::abs(l));
  r.dominant.clear();
  for (int s = 0; s < 4; ++s) {
    if (same_modulus(std::abs(ev[s]), top)) r.dominant.push_back(s);
  }

  if (!r.kind) {
    // Largest complex pair drives the oscillation diagnostics.
    for (int s = 0; s < 4; ++s) {
      if (std::abs(ev[s].imag()) > 1e-14 * top) {
        r.r = std::abs(ev[s]);
        r.eta = std::abs(std::arg(ev[s]));
        break;
      }
    }
  }

  const GapInfo g = gap_info(ev);
  r.gaps = g.gaps;
  r.n_c = g.n_c;
  if (r.cls != SpectrumClass::ComplexPair) {
    if (g.dominant_count > 1) {
      r.cls = SpectrumClass::Degenerate;
    } else if (r.dominant.size() == 2 && std::abs(ev[r.dominant[0]].imag()) > 1e-14 * top) {
      r.cls = SpectrumClass::ComplexPair;
    } else {
      r.cls = SpectrumClass::RealDominant;
    }
  }

  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  const Eigen::Matrix4cd mc = m.cast<Complex>();
  r.residual = 0.0;
  for (int s = 0; s < 4; ++s) {
    const double res = (mc * r.eigenvectors[s] - r.eigenvalues[s] * r.eigenvectors[s]).cwiseAbs().maxCoeff();
    r.residual = std::max(r.residual, res / scale);
  }
}

SpectralReport structured(const StructuralParams& p, TemplateKind kind, const Eigen::Matrix4d& m) {
  SpectralReport r;
  fill_bell_slots(r, p, kind);
  const Block bl = block_of(p, kind);
  for (int s = 2; s < 4; ++s) {
    const Eigen::Vector2cd x = block_null_vector(bl, r.eigenvalues[s], s);
    r.eigenvectors[s] = phase_fixed(x(0) * bl.first + x(1) * bl.second);
  }
  finish(r, m);
  return r;
}

SpectralReport closed_form(const StructuralParams& p, TemplateKind kind) {
  const double scale = std::max({std::abs(p.A), std::abs(p.B), std::abs(p.D), std::abs(p.E),
                                 std::abs(p.F)});
  if (!(std::abs(p.B) >= kBSingularTolerance * scale) || scale == 0.0) {
    throw Error(ErrorKind::BSingular, "B vanishes; closed-form eigenvectors divide by 4B");
  }
  SpectralReport r;
  fill_bell_slots(r, p, kind);
  const Block bl = block_of(p, kind);
  const Complex root = r.delta >= 0.0 ? Complex(std::sqrt(r.delta), 0.0) : Complex(0.0, r.s2);
  for (int s = 2; s < 4; ++s) {
    const Complex sign = s == 2 ? 1.0 : -1.0;
    const Complex y = (r.s1p + sign * root) / (4.0 * bl.b);
    const Eigen::Vector4cd v = -bl.first + y * bl.second;
    r.eigenvectors[s] = v.normalized();
  }
  finish(r, reconstruct(p, kind));
  return r;
}

Eigen::Matrix4cd eigen_matrix(const SpectralReport& r) {
  Eigen::Matrix4cd v;
  for (int s = 0; s < 4; ++s) v.col(s) = r.eigenvectors[s];
  return v;
}

double condition_number(const Eigen::Matrix4cd& v) {
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(v);
  const auto& sv = svd.singularValues();
  return sv(3) > 0.0 ? sv(0) / sv(3) : std::numeric_limits<double>::infinity();
}

}  // namespace

std::array<Complex, 4> numeric_eigenvalues(const Eigen::Matrix4d& m) {
  Eigen::EigenSolver<Eigen::Matrix4d> es(m, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "eigen-solver did not converge");
  }
  std::array<Complex, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

SpectralReport eigensystem(const ScatteringMatrix& m) {
  if (!m.entries.allFinite()) throw Error(ErrorKind::NumericalFailure, "matrix is not finite");
  if (const auto kind = detect_template(m.entries)) {
    return structured(read_params(m.entries), *kind, m.entries);
  }

  Eigen::EigenSolver<Eigen::Matrix4d> es(m.entries, true);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "eigen-solver did not converge");
  }
  std::array<int, 4> order{0, 1, 2, 3};
  const auto vals = es.eigenvalues();
  const double top = vals.cwiseAbs().maxCoeff();
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const double ai = std::abs(vals(i));
    const double aj = std::abs(vals(j));
    if (std::abs(ai - aj) > kDominanceTieTolerance * top) return ai > aj;
    return std::arg(vals(i)) > std::arg(vals(j));
  });
  SpectralReport r;
  for (int s = 0; s < 4; ++s) {
    r.eigenvalues[s] = vals(order[s]);
    r.eigenvectors[s] = phase_fixed(es.eigenvectors().col(order[s]));
  }
  finish(r, m.entries);
  return r;
}

SpectralReport bhabha_closed_form(const StructuralParams& p) {
  return closed_form(p, TemplateKind::Bhabha);
}

SpectralReport moller_closed_form(const StructuralParams& p) {
  return closed_form(p, TemplateKind::Moller);
}

long long convergence_bound(std::span<const Complex> eigenvalues) {
  const GapInfo g = gap_info(eigenvalues);
  if (!g.n_c) {
    throw Error(ErrorKind::DegenerateSpectrum, "no eigenvalue modulus strictly dominates");
  }
  return *g.n_c;
}

long long convergence_bound(const SpectralReport& report) {
  return convergence_bound(std::span<const Complex>(report.eigenvalues));
}

EigenExpansion expand(const PureState& v, const SpectralReport& report) {
  EigenExpansion out;
  const Eigen::Matrix4cd basis = eigen_matrix(report);
  out.condition_number = condition_number(basis);
  if (!(out.condition_number < kMaxConditionNumber)) {
    throw Error(ErrorKind::IllConditioned,
                "eigenvector matrix condition number " + std::to_string(out.condition_number));
  }
  const Eigen::Vector4cd c = basis.fullPivLu().solve(v.amplitudes());
  for (int s = 0; s < 4; ++s) out.coefficients[s] = c(s);
  out.reconstruction_residual = (basis * c - v.amplitudes()).cwiseAbs().maxCoeff();

  if (report.xi3 && report.xi4) {
    Eigen::Matrix4cd real_basis;
    real_basis << report.eigenvectors[0], report.eigenvectors[1], *report.xi3, *report.xi4;
    const Eigen::Vector4cd b = real_basis.fullPivLu().solve(v.amplitudes());
    out.bell_coefficients = std::array<Complex, 4>{b(0), b(1), b(2), b(3)};
  }
  return out;
}

Eigen::Matrix2d block_power(const SpectralReport& report, int n) {
  if (!report.params || !report.kind) {
    throw Error(ErrorKind::InvalidInput, "block power needs a template matrix");
  }
  if (n < 0) throw Error(ErrorKind::InvalidInput, "negative power");
  const Block bl = block_of(*report.params, *report.kind);
  const Eigen::Matrix2d k = bl.k();
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  if (report.delta < 0.0) {
    const double r = std::abs(report.eigenvalues[2]);
    const double eta = std::arg(report.eigenvalues[2]);
    const Eigen::Matrix2d j = (k / r - std::cos(eta) * id) / std::sin(eta);
    return std::pow(r, n) * (std::cos(n * eta) * id + std::sin(n * eta) * j);
  }
  const double l3 = report.eigenvalues[2].real();
  const double l4 = report.eigenvalues[3].real();
  if (std::abs(l3 - l4) <= 1e-12 * std::max(std::abs(l3), std::abs(l4))) {
    Eigen::Matrix2d out = id;
    for (int i = 0; i < n; ++i) out = k * out;
    return out;
  }
  return (std::pow(l3, n) * (k - l4 * id) - std::pow(l4, n) * (k - l3 * id)) / (l3 - l4);
}

Eigen::Vector4cd spectral_power(const SpectralReport& report, const Eigen::Vector4cd& v, int n) {
  if (report.plane) {
    const auto& pl = *report.plane;
    Eigen::Vector4cd out = Eigen::Vector4cd::Zero();
    for (int s = 0; s < 2; ++s) {
      const Eigen::Vector4cd& b = report.eigenvectors[s];
      out += std::pow(report.eigenvalues[s], n) * b.dot(v) * b;
    }
    const Eigen::Vector2cd x(pl[0].dot(v), pl[1].dot(v));
    const Eigen::Vector2cd y = block_power(report, n).cast<Complex>() * x;
    return out + y(0) * pl[0] + y(1) * pl[1];
  }
  const Eigen::Matrix4cd basis = eigen_matrix(report);
  Eigen::Vector4cd c = basis.fullPivLu().solve(v);
  for (int s = 0; s < 4; ++s) c(s) *= std::pow(report.eigenvalues[s], n);
  return basis * c;
}

Prediction classify_and_predict(const SpectralReport& report, const HelicityState& initial) {
  Prediction p;
  const Eigen::Matrix4cd basis = eigen_matrix(report);
  if (!(condition_number(basis) < kMaxConditionNumber)) {
    p.kind = PredictionKind::NoSaturation;
    p.reason = "eigenbasis is ill-conditioned (near-defective matrix)";
    return p;
  }
  const Eigen::Matrix4cd w = basis.inverse();
  const Eigen::Matrix4cd c = w * initial.matrix() * w.adjoint();

  std::vector<int> supported;
  for (int s = 0; s < 4; ++s) {
    if (c(s, s).real() > kCoefficientZero * kCoefficientZero) supported.push_back(s);
  }
  if (supported.empty()) {
    p.reason = "initial state has no resolvable eigen-components";
    return p;
  }

  double lead = 0.0;
  for (int s : supported) lead = std::max(lead, std::abs(report.eigenvalues[s]));
  for (int s : supported) {
    if (same_modulus(std::abs(report.eigenvalues[s]), lead)) p.leading.push_back(s);
  }

  std::vector<Complex> present;
  for (int s : supported) present.push_back(report.eigenvalues[s]);
  const GapInfo g = gap_info(present);
  p.n_c = g.n_c;

  const Complex l0 = report.eigenvalues[p.leading[0]];
  const bool one_eigenvalue = std::all_of(p.leading.begin(), p.leading.end(), [&](int s) {
    return std::abs(report.eigenvalues[s] - l0) <= kDominanceTieTolerance * lead;
  });
  if (!one_eigenvalue) {
    p.kind = PredictionKind::NoSaturation;
    const bool conjugate = std::abs(l0.imag()) > 1e-14 * lead;
    p.reason = conjugate
                   ? "leading components form a complex-conjugate pair; the state rotates each step"
                   : "leading real eigenvalues of equal modulus and opposite sign; the state alternates";
    // Orbit of the leading block: each component picks up the phase of its
    // eigenvalue, sampled over one turn.
    double worst = 1.0;
    const int samples = conjugate ? 256 : 2;
    for (int k = 0; k < samples; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / samples;
      Eigen::Matrix4cd step = Eigen::Matrix4cd::Zero();
      for (int s : p.leading) {
        const double turn = conjugate ? phi * (report.eigenvalues[s].imag() > 0 ? 1.0 : -1.0)
                                      : (report.eigenvalues[s].real() * l0.real() > 0 ? 0.0 : phi);
        step += std::polar(1.0, turn) * basis.col(s) * w.row(s);
      }
      Eigen::Matrix4cd rho = step * initial.matrix() * step.adjoint();
      rho = 0.5 * (rho + rho.adjoint());
      rho /= rho.trace().real();
      worst = std::min(worst, concurrence(HelicityState::from_matrix(rho, 1e-9)));
    }
    p.asymptotic_concurrence = worst;
    return p;
  }

  Eigen::Matrix4cd proj = Eigen::Matrix4cd::Zero();
  for (int s : p.leading) proj += basis.col(s) * w.row(s);
  Eigen::Matrix4cd limit = proj * initial.matrix() * proj.adjoint();
  limit = 0.5 * (limit + limit.adjoint());
  limit /= limit.trace().real();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(limit);
  const double top = es.eigenvalues()(3);
  const bool pure = top > 1.0 - 1e-10;
  if (pure) p.target = PureState::normalized(phase_fixed(es.eigenvectors().col(3)));
  p.asymptotic_concurrence = concurrence(HelicityState::from_matrix(limit, 1e-9));

  if (p.leading.size() == supported.size()) {
    p.kind = PredictionKind::InvariantPoint;
    p.reason = "every component present shares one eigenvalue; the state is a fixed point";
    return p;
  }
  if (!pure) {
    p.kind = PredictionKind::NoSaturation;
    p.reason = "leading eigenspace is degenerate and the projected asymptote is mixed";
    return p;
  }
  p.kind = PredictionKind::PureTarget;
  p.reason = p.leading.size() == 1 ? "single dominant eigen-component"
                                   : "degenerate dominant eigenspace, fixed combination";
  return p;
}

Prediction classify_and_predict(const ScatteringMatrix& m, const HelicityState& initial) {
  return classify_and_predict(eigensystem(m), initial);
}

Prediction classify_and_predict(const ScatteringMatrix& m, const PureState& initial) {
  return classify_and_predict(eigensystem(m), HelicityState::from_pure(initial));
}

StateLabel nearest_named_state(const PureState& psi) {
  StateLabel best;
  for (BellLabel l : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus}) {
    const double f = fidelity(psi, bell_state(l));
    if (f > best.fidelity) best = {std::string(to_string(l)), f};
  }
  for (std::size_t i = 0; i < kHelicityBasis.size(); ++i) {
    const double f = fidelity(psi, basis_state(kHelicityBasis[i]));
    if (f > best.fidelity) best = {std::string(kBasisLabels[i]), f};
  }
  return best;
}

double ultrarelativistic_deviation(const SpectralReport& report) {
  const Eigen::Vector4cd psi_p = bell(BellLabel::PsiPlus);
  const Eigen::Vector4cd psi_m = bell(BellLabel::PsiMinus);
  double worst = 0.0;
  for (const auto& raw : report.eigenvectors) {
    const Eigen::Vector4cd v = raw.normalized();
    const double same = std::norm(v(0)) + std::norm(v(3));
    double dev;
    if (same >= 0.5) {
      dev = 1.0 - same;
    } else {
      dev = 1.0 - std::max(std::norm(psi_p.dot(v)), std::norm(psi_m.dot(v)));
    }
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace qedmap
