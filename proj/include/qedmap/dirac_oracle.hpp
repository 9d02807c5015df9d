#pragma once

// Brute-force tree-level helicity amplitudes from explicit Dirac matrices
// (Dirac representation), helicity spinors and photon polarisation vectors.
//
// Phase conventions: every one-particle state is the +z state rotated about
// the +y axis by alpha = atan2(px, pz) taken in [0, 2 pi). Fermion leg 2 of a
// two-particle state (incoming or outgoing) carries the extra Jacob-Wick
// factor 2*lambda. With these choices all six processes give real amplitude
// matrices up to one global phase, and Bhabha / Moller reproduce the
// parity-template sign patterns exactly.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qedmap/helicity.hpp"
#include "qedmap/kinematics.hpp"

namespace qedmap::dirac {

using Complex = std::complex<double>;
using Spinor = Eigen::Vector4cd;
using GammaMatrix = Eigen::Matrix4cd;
using ComplexFourVector = std::array<Complex, 4>;

/// gamma^0..gamma^3 in the Dirac representation.
const std::array<GammaMatrix, 4>& gamma();
const GammaMatrix& gamma5();

/// p-slash = gamma^mu p_mu for complex or real four-vectors.
GammaMatrix slash(const ComplexFourVector& p);
GammaMatrix slash(const FourVector& p);

enum class SpinorKind { Particle, Antiparticle };

struct DiracSpinor {
  Spinor components;
  FourVector momentum;
  double mass;
  Helicity helicity;
  SpinorKind kind;
};

/// u(p, h) for particles, v(p, h) for antiparticles. Momentum must be on
/// shell with E > 0 and lie in the x-z plane.
DiracSpinor helicity_spinor(const FourVector& momentum, double mass, Helicity helicity,
                            SpinorKind kind);

/// Dirac adjoint psi^dagger gamma^0 as a row vector.
Eigen::RowVector4cd adjoint(const Spinor& psi);

struct PhotonPolarization {
  ComplexFourVector components;
  FourVector momentum;
  Helicity helicity;
};

PhotonPolarization photon_polarization(const FourVector& momentum, Helicity helicity);

ComplexFourVector conj(const ComplexFourVector& v);
Complex dot(const ComplexFourVector& a, const ComplexFourVector& b);

struct ChannelContribution {
  std::string channel;
  Complex value;
};

struct ComplexAmplitude {
  Complex value;
  /// Signed per-diagram contributions; value is their sum.
  std::vector<ChannelContribution> channels;
};

/// Replaces one photon polarisation by the photon momentum (Ward identity
/// probe). First/Second refer to the order of photon legs in the process.
enum class GaugeProbe { None, FirstPhoton, SecondPhoton };

ComplexAmplitude amplitude(Process process, const KinematicPoint& point, HelicityPair out,
                           HelicityPair in, GaugeProbe probe = GaugeProbe::None);

/// Same, on a prebuilt configuration (avoids rebuilding kinematics per entry).
ComplexAmplitude amplitude(Process process, const ComConfiguration& cfg, HelicityPair out,
                           HelicityPair in, GaugeProbe probe = GaugeProbe::None);

/// Full 4x4 complex amplitude array, rows = outgoing pair, columns = incoming.
Eigen::Matrix4cd amplitude_matrix(Process process, const KinematicPoint& point,
                                  GaugeProbe probe = GaugeProbe::None);

}  // namespace qedmap::dirac
