#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "qedmap/kinematics.hpp"

namespace qedmap {

enum class AmplitudeRoute { DiracOracle, Weyl };

/// Real 4x4 helicity-amplitude matrix in the (RR, RL, LR, LL) basis.
/// entries(out, in) is the amplitude for incoming pair `in` to scatter into
/// outgoing pair `out`, after one global phase has been removed.
struct ScatteringMatrix {
  Eigen::Matrix4d entries = Eigen::Matrix4d::Identity();
  Process process = Process::Bhabha;
  KinematicPoint point{1.0, 1.0};
  std::complex<double> removed_phase{1.0, 0.0};
  double realness_residual = 0.0;
};

/// Sign/equality patterns of the fermion-fermion matrices. Bhabha:
///   ( A -B -B  D )        Moller:  ( A -B  B  D )
///   ( B  E  F -B )                 ( B  E  F  B )
///   ( B  F  E -B )                 (-B  F  E -B )
///   ( D  B  B  A )                 ( D -B  B  A )
enum class TemplateKind { Bhabha, Moller };

struct StructuralParams {
  double A = 0.0;
  double B = 0.0;
  double D = 0.0;
  double E = 0.0;
  double F = 0.0;
};

inline constexpr double kRealnessTolerance = 1e-8;
inline constexpr double kTemplateTolerance = 1e-10;

/// Template the process is expected to satisfy, if any.
std::optional<TemplateKind> expected_template(Process process);

/// Builds M from the 16 tree-level amplitudes. Throws RealnessViolation when
/// the phase-stripped matrix keeps an imaginary part, TemplateViolation when a
/// Bhabha/Moller matrix breaks its sign pattern.
ScatteringMatrix build_matrix(Process process, const KinematicPoint& point,
                              AmplitudeRoute route = AmplitudeRoute::DiracOracle);

/// Phase stripping used by build_matrix, exposed for complex input arrays.
ScatteringMatrix make_real_matrix(const Eigen::Matrix4cd& amplitudes, Process process,
                                  const KinematicPoint& point);

/// Wraps an arbitrary real matrix (tests, formal maps).
ScatteringMatrix from_entries(const Eigen::Matrix4d& entries, Process process = Process::Bhabha,
                              KinematicPoint point = {1.0, 1.0});

/// max |M - template(params(M))| / max |M|.
double template_deviation(const Eigen::Matrix4d& m, TemplateKind kind);

/// First template matched within tolerance, if any.
std::optional<TemplateKind> detect_template(const Eigen::Matrix4d& m,
                                            double tolerance = kTemplateTolerance);

StructuralParams read_params(const Eigen::Matrix4d& m);
Eigen::Matrix4d reconstruct(const StructuralParams& params, TemplateKind kind);

/// Reads (A, B, D, E, F); throws TemplateViolation unless `m` matches `kind`.
StructuralParams structural_params(const ScatteringMatrix& m, TemplateKind kind);
StructuralParams structural_params(const ScatteringMatrix& m);

/// POVM element F = M^T M.
Eigen::Matrix4d povm_element(const ScatteringMatrix& m);

}  // namespace qedmap
