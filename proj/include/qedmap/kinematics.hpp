#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace qedmap {

/// Muon to electron mass ratio (CODATA). Energies and momenta are measured
/// in units of the electron mass throughout.
inline constexpr double kMuonElectronMassRatio = 206.7682830;

enum class Process {
  Bhabha,              // e- e+ -> e- e+
  Moller,              // e- e- -> e- e-
  ElectronMuon,        // e- mu- -> e- mu-
  MuonPairProduction,  // e- e+ -> mu- mu+
  Compton,             // e- gamma -> e- gamma
  PairAnnihilation,    // e- e+ -> gamma gamma
};

inline constexpr std::array<Process, 6> kAllProcesses = {
    Process::Bhabha,  Process::Moller,  Process::ElectronMuon,
    Process::MuonPairProduction, Process::Compton, Process::PairAnnihilation};

enum class LegKind { Fermion, Antifermion, Photon };

struct Leg {
  LegKind kind;
  double mass;
};

/// Particle content of a 2 -> 2 process. Legs 0,1 are incoming, 2,3 outgoing;
/// leg 2 is the one emitted at polar angle theta.
struct ProcessInfo {
  Process tag;
  std::string_view name;
  std::array<Leg, 4> legs;

  bool elastic() const;
};

const ProcessInfo& process_info(Process process);
std::string_view to_string(Process process);
std::optional<Process> parse_process(std::string_view name);

/// Scattering point in the centre-of-mass frame: mu = |p_in| / m_e and the
/// polar angle of outgoing leg 2, strictly inside (0, pi).
struct KinematicPoint {
  double mu;
  double theta;
};

/// Validates and returns the point; throws InvalidAngle or InvalidInput.
KinematicPoint make_point(double mu, double theta);

using FourVector = std::array<double, 4>;

double minkowski_dot(const FourVector& a, const FourVector& b);
FourVector operator+(const FourVector& a, const FourVector& b);
FourVector operator-(const FourVector& a, const FourVector& b);
double three_momentum_norm(const FourVector& p);

struct ComConfiguration {
  /// p[0], p[1] incoming along +z / -z; p[2], p[3] outgoing in the x-z plane.
  std::array<FourVector, 4> p;
  std::array<double, 4> masses;
  double s = 0.0;
  double t = 0.0;
  double u = 0.0;
};

ComConfiguration build_configuration(Process process, const KinematicPoint& point);

struct Mandelstam {
  double s, t, u;
};

Mandelstam mandelstam(Process process, const KinematicPoint& point);

}  // namespace qedmap
