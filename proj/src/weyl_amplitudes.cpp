#include "qedmap/weyl_amplitudes.hpp"

#include <cmath>
#include <numbers>

namespace qedmap::weyl {

namespace {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;
using CVec4 = std::array<Complex, 4>;

constexpr Complex kI{0.0, 1.0};

struct Weyl {
  Vec2 left;
  Vec2 right;
};

Vec2 chi(Helicity h, double alpha) {
  const double c = std::cos(0.5 * alpha), s = std::sin(0.5 * alpha);
  Vec2 x;
  if (h == Helicity::R) x << c, s; else x << -s, c;
  return x;
}

double angle_of(const FourVector& p) {
  double a = std::atan2(p[1], p[3]);
  return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
}

Weyl spinor(const FourVector& p, double mass, Helicity h, bool anti) {
  const double abs_p = three_momentum_norm(p);
  const double w_plus = std::sqrt(p[0] + abs_p);
  const double w_minus = mass / w_plus;  // sqrt(E - |p|)
  const double alpha = angle_of(p);
  // u(R) = (w- chi_R, w+ chi_R), u(L) = (w+ chi_L, w- chi_L), v(h) = gamma5 u(-h).
  const Helicity spin = anti ? (h == Helicity::R ? Helicity::L : Helicity::R) : h;
  const Vec2 x = chi(spin, alpha);
  Weyl psi = spin == Helicity::R ? Weyl{w_minus * x, w_plus * x} : Weyl{w_plus * x, w_minus * x};
  if (anti) psi.left = -psi.left;
  return psi;
}

// a.sigma = a^0 - a.vec(sigma), a.sigmabar = a^0 + a.vec(sigma)
Mat2 contract(const CVec4& a, bool bar) {
  const double sgn = bar ? 1.0 : -1.0;
  Mat2 m;
  m << a[0] + sgn * a[3], sgn * (a[1] - kI * a[2]),
       sgn * (a[1] + kI * a[2]), a[0] - sgn * a[3];
  return m;
}

CVec4 cplx(const FourVector& p) { return {p[0], p[1], p[2], p[3]}; }

Complex mdot(const CVec4& a, const CVec4& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

// psibar gamma^mu chi = psi_L^+ sigmabar^mu chi_L + psi_R^+ sigma^mu chi_R
CVec4 current(const Weyl& a, const Weyl& b) {
  CVec4 j;
  const Complex ll0 = a.left.dot(b.left), rr0 = a.right.dot(b.right);
  // Pauli components of the two bilinears.
  const auto pauli = [](const Vec2& x, const Vec2& y) {
    const Complex sx = std::conj(x(0)) * y(1) + std::conj(x(1)) * y(0);
    const Complex sy = -kI * std::conj(x(0)) * y(1) + kI * std::conj(x(1)) * y(0);
    const Complex sz = std::conj(x(0)) * y(0) - std::conj(x(1)) * y(1);
    return std::array<Complex, 3>{sx, sy, sz};
  };
  const auto l = pauli(a.left, b.left);
  const auto r = pauli(a.right, b.right);
  j[0] = ll0 + rr0;
  for (int i = 0; i < 3; ++i) j[i + 1] = -l[i] + r[i];
  return j;
}

// psibar a-slash (b-slash + m) c-slash chi
Complex chain(const Weyl& psi, const CVec4& a, const CVec4& b, double m, const CVec4& c,
              const Weyl& chi_) {
  const Mat2 upper = contract(a, false) * contract(b, true) * contract(c, false);
  const Mat2 lower = contract(a, true) * contract(b, false) * contract(c, true);
  const Mat2 mass_upper = m * contract(a, false) * contract(c, true);
  const Mat2 mass_lower = m * contract(a, true) * contract(c, false);
  return psi.left.dot(lower * chi_.left) + psi.right.dot(upper * chi_.right) +
         psi.left.dot(mass_lower * chi_.right) + psi.right.dot(mass_upper * chi_.left);
}

CVec4 polarization(const FourVector& k, Helicity h, bool outgoing) {
  const double alpha = angle_of(k);
  const double lam = sign(h);
  const double n = -lam / std::numbers::sqrt2;
  CVec4 e{0.0, n * std::cos(alpha), n * lam * kI, -n * std::sin(alpha)};
  if (outgoing) for (auto& x : e) x = std::conj(x);
  return e;
}

}  // namespace

Complex amplitude(Process process, const ComConfiguration& cfg, HelicityPair out,
                  HelicityPair in) {
  const ProcessInfo& info = process_info(process);
  const auto& P = cfg.p;
  auto ferm = [&](int leg, Helicity h) {
    return spinor(P[leg], info.legs[leg].mass, h, info.legs[leg].kind == LegKind::Antifermion);
  };
  auto jw = [&](int leg, Helicity h) {
    return info.legs[leg].kind == LegKind::Photon ? 1.0 : static_cast<double>(sign(h));
  };
  const double phase = jw(1, in.second) * jw(3, out.second);

  Complex value;
  switch (process) {
    case Process::Bhabha: {
      const Weyl u1 = ferm(0, in.first), v2 = ferm(1, in.second);
      const Weyl u3 = ferm(2, out.first), v4 = ferm(3, out.second);
      value = -mdot(current(u3, u1), current(v2, v4)) / cfg.t +
              mdot(current(v2, u1), current(u3, v4)) / cfg.s;
      break;
    }
    case Process::Moller: {
      const Weyl u1 = ferm(0, in.first), u2 = ferm(1, in.second);
      const Weyl u3 = ferm(2, out.first), u4 = ferm(3, out.second);
      value = mdot(current(u3, u1), current(u4, u2)) / cfg.t -
              mdot(current(u4, u1), current(u3, u2)) / cfg.u;
      break;
    }
    case Process::ElectronMuon: {
      const Weyl u1 = ferm(0, in.first), u2 = ferm(1, in.second);
      const Weyl u3 = ferm(2, out.first), u4 = ferm(3, out.second);
      value = mdot(current(u3, u1), current(u4, u2)) / cfg.t;
      break;
    }
    case Process::MuonPairProduction: {
      const Weyl u1 = ferm(0, in.first), v2 = ferm(1, in.second);
      const Weyl u3 = ferm(2, out.first), v4 = ferm(3, out.second);
      value = mdot(current(u3, v4), current(v2, u1)) / cfg.s;
      break;
    }
    case Process::Compton: {
      const double m = info.legs[0].mass;
      const Weyl u1 = ferm(0, in.first), u3 = ferm(2, out.first);
      const CVec4 e1 = polarization(P[1], in.second, false);
      const CVec4 e2 = polarization(P[3], out.second, true);
      value = chain(u3, e2, cplx(P[0] + P[1]), m, e1, u1) / (cfg.s - m * m) +
              chain(u3, e1, cplx(P[0] - P[3]), m, e2, u1) / (cfg.u - m * m);
      break;
    }
    case Process::PairAnnihilation: {
      const double m = info.legs[0].mass;
      const Weyl u1 = ferm(0, in.first), v2 = ferm(1, in.second);
      const CVec4 e1 = polarization(P[2], out.first, true);
      const CVec4 e2 = polarization(P[3], out.second, true);
      value = chain(v2, e2, cplx(P[0] - P[2]), m, e1, u1) / (cfg.t - m * m) +
              chain(v2, e1, cplx(P[0] - P[3]), m, e2, u1) / (cfg.u - m * m);
      break;
    }
  }
  return phase * value;
}

Complex amplitude(Process process, const KinematicPoint& point, HelicityPair out,
                  HelicityPair in) {
  return amplitude(process, build_configuration(process, point), out, in);
}

Eigen::Matrix4cd amplitude_matrix(Process process, const KinematicPoint& point) {
  const ComConfiguration cfg = build_configuration(process, point);
  Eigen::Matrix4cd m;
  for (const HelicityPair out : kHelicityBasis)
    for (const HelicityPair in : kHelicityBasis)
      m(basis_index(out), basis_index(in)) = amplitude(process, cfg, out, in);
  return m;
}

}  // namespace qedmap::weyl
