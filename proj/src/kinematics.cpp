#include "qedmap/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qedmap/error.hpp"

namespace qedmap {

namespace {

constexpr double kMe = 1.0;
constexpr double kMmu = kMuonElectronMassRatio;

constexpr Leg fermion(double m) { return {LegKind::Fermion, m}; }
constexpr Leg antifermion(double m) { return {LegKind::Antifermion, m}; }
constexpr Leg photon() { return {LegKind::Photon, 0.0}; }

const std::array<ProcessInfo, 6> kProcessTable = {{
    {Process::Bhabha, "bhabha", {fermion(kMe), antifermion(kMe), fermion(kMe), antifermion(kMe)}},
    {Process::Moller, "moller", {fermion(kMe), fermion(kMe), fermion(kMe), fermion(kMe)}},
    {Process::ElectronMuon, "electron-muon",
     {fermion(kMe), fermion(kMmu), fermion(kMe), fermion(kMmu)}},
    {Process::MuonPairProduction, "muon-pair",
     {fermion(kMe), antifermion(kMe), fermion(kMmu), antifermion(kMmu)}},
    {Process::Compton, "compton", {fermion(kMe), photon(), fermion(kMe), photon()}},
    {Process::PairAnnihilation, "pair-annihilation",
     {fermion(kMe), antifermion(kMe), photon(), photon()}},
}};

double sq(double x) { return x * x; }

}  // namespace

bool ProcessInfo::elastic() const {
  return legs[0].kind == legs[2].kind && legs[1].kind == legs[3].kind &&
         legs[0].mass == legs[2].mass && legs[1].mass == legs[3].mass;
}

const ProcessInfo& process_info(Process process) {
  return kProcessTable[static_cast<std::size_t>(process)];
}

std::string_view to_string(Process process) { return process_info(process).name; }

std::optional<Process> parse_process(std::string_view name) {
  for (const auto& info : kProcessTable) {
    if (info.name == name) return info.tag;
  }
  if (name == "electron_muon" || name == "emu") return Process::ElectronMuon;
  if (name == "muon_pair" || name == "mumu") return Process::MuonPairProduction;
  if (name == "pair_annihilation" || name == "annihilation") return Process::PairAnnihilation;
  return std::nullopt;
}

KinematicPoint make_point(double mu, double theta) {
  if (!std::isfinite(mu) || mu <= 0.0) {
    throw Error(ErrorKind::InvalidInput, "mu must be finite and positive, got " + std::to_string(mu));
  }
  if (!std::isfinite(theta) || theta <= 0.0 || theta >= std::numbers::pi) {
    throw Error(ErrorKind::InvalidAngle,
                "theta must lie strictly inside (0, pi), got " + std::to_string(theta));
  }
  return {mu, theta};
}

double minkowski_dot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

FourVector operator+(const FourVector& a, const FourVector& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

FourVector operator-(const FourVector& a, const FourVector& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

double three_momentum_norm(const FourVector& p) { return std::hypot(p[1], p[2], p[3]); }

ComConfiguration build_configuration(Process process, const KinematicPoint& point) {
  const KinematicPoint pt = make_point(point.mu, point.theta);
  const ProcessInfo& info = process_info(process);

  ComConfiguration cfg;
  for (std::size_t i = 0; i < 4; ++i) cfg.masses[i] = info.legs[i].mass;
  const auto [m1, m2, m3, m4] = cfg.masses;

  const double p = pt.mu;
  const double e1 = std::hypot(m1, p);
  const double e2 = std::hypot(m2, p);
  const double sqrt_s = e1 + e2;

  double q = p;
  if (!info.elastic()) {
    if (sqrt_s <= m3 + m4) {
      throw Error(ErrorKind::BelowThreshold,
                  "sqrt(s) = " + std::to_string(sqrt_s) + " does not exceed " +
                      std::to_string(m3 + m4) + " for " + std::string(info.name));
    }
    const double s = sq(sqrt_s);
    q = std::sqrt((s - sq(m3 + m4)) * (s - sq(m3 - m4))) / (2.0 * sqrt_s);
  }
  const double e3 = std::hypot(m3, q);
  const double e4 = std::hypot(m4, q);

  const double c = std::cos(pt.theta);
  const double sn = std::sin(pt.theta);
  cfg.p[0] = {e1, 0.0, 0.0, p};
  cfg.p[1] = {e2, 0.0, 0.0, -p};
  cfg.p[2] = {e3, q * sn, 0.0, q * c};
  cfg.p[3] = {e4, -q * sn, 0.0, -q * c};

  // Longitudinal differences written with half-angle forms so that t -> 0
  // (theta -> 0) and u -> 0 (theta -> pi) keep full relative precision.
  const double half_sin = std::sin(0.5 * pt.theta);
  const double half_cos = std::cos(0.5 * pt.theta);
  const double dz_t = (p - q) + 2.0 * q * half_sin * half_sin;
  const double dz_u = (p - q) + 2.0 * q * half_cos * half_cos;
  const double dx = q * sn;

  cfg.s = sq(sqrt_s);
  cfg.t = sq(e1 - e3) - dx * dx - dz_t * dz_t;
  cfg.u = sq(e1 - e4) - dx * dx - dz_u * dz_u;
  return cfg;
}

Mandelstam mandelstam(Process process, const KinematicPoint& point) {
  const ComConfiguration cfg = build_configuration(process, point);
  return {cfg.s, cfg.t, cfg.u};
}

}  // namespace qedmap
