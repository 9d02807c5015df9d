#include "qedmap/scattering_matrix.hpp"

#include <cmath>
#include <sstream>

#include "qedmap/dirac_oracle.hpp"
#include "qedmap/error.hpp"
#include "qedmap/weyl_amplitudes.hpp"

namespace qedmap {

std::optional<TemplateKind> expected_template(Process process) {
  switch (process) {
    case Process::Bhabha: return TemplateKind::Bhabha;
    case Process::Moller: return TemplateKind::Moller;
    default: return std::nullopt;
  }
}

ScatteringMatrix make_real_matrix(const Eigen::Matrix4cd& amplitudes, Process process,
                                  const KinematicPoint& point) {
  const double largest = amplitudes.cwiseAbs().maxCoeff();
  if (!(largest > 0.0) || !std::isfinite(largest)) {
    throw Error(ErrorKind::NumericalFailure, "amplitude matrix vanishes or is not finite");
  }

  // Anchor: first entry in row-major basis order within 1e-12 of the maximum.
  std::complex<double> anchor;
  bool found = false;
  for (int r = 0; r < 4 && !found; ++r) {
    for (int c = 0; c < 4 && !found; ++c) {
      if (std::abs(amplitudes(r, c)) >= largest * (1.0 - 1e-12)) {
        anchor = amplitudes(r, c);
        found = true;
      }
    }
  }
  const std::complex<double> phase = anchor / std::abs(anchor);
  const Eigen::Matrix4cd rotated = amplitudes / phase;

  ScatteringMatrix m;
  m.entries = rotated.real();
  m.process = process;
  m.point = point;
  m.removed_phase = phase;
  m.realness_residual = rotated.imag().cwiseAbs().maxCoeff() / largest;
  if (m.realness_residual >= kRealnessTolerance) {
    std::ostringstream os;
    os << to_string(process) << " at mu=" << point.mu << ", theta=" << point.theta
       << " keeps relative imaginary part " << m.realness_residual;
    throw Error(ErrorKind::RealnessViolation, os.str());
  }
  return m;
}

ScatteringMatrix build_matrix(Process process, const KinematicPoint& point,
                              AmplitudeRoute route) {
  const KinematicPoint pt = make_point(point.mu, point.theta);
  const Eigen::Matrix4cd amps = route == AmplitudeRoute::DiracOracle
                                    ? dirac::amplitude_matrix(process, pt)
                                    : weyl::amplitude_matrix(process, pt);
  ScatteringMatrix m = make_real_matrix(amps, process, pt);
  if (const auto kind = expected_template(process)) {
    const double dev = template_deviation(m.entries, *kind);
    if (!(dev <= kTemplateTolerance)) {
      std::ostringstream os;
      os << to_string(process) << " at mu=" << pt.mu << ", theta=" << pt.theta
         << " deviates from its template by " << dev;
      throw Error(ErrorKind::TemplateViolation, os.str());
    }
  }
  return m;
}

ScatteringMatrix from_entries(const Eigen::Matrix4d& entries, Process process,
                              KinematicPoint point) {
  ScatteringMatrix m;
  m.entries = entries;
  m.process = process;
  m.point = point;
  return m;
}

StructuralParams read_params(const Eigen::Matrix4d& m) {
  return {m(0, 0), m(1, 0), m(3, 0), m(1, 1), m(2, 1)};
}

Eigen::Matrix4d reconstruct(const StructuralParams& p, TemplateKind kind) {
  const auto [A, B, D, E, F] = p;
  Eigen::Matrix4d m;
  if (kind == TemplateKind::Bhabha) {
    m << A, -B, -B, D,
         B,  E,  F, -B,
         B,  F,  E, -B,
         D,  B,  B,  A;
  } else {
    m << A, -B,  B,  D,
         B,  E,  F,  B,
        -B,  F,  E, -B,
         D, -B,  B,  A;
  }
  return m;
}

double template_deviation(const Eigen::Matrix4d& m, TemplateKind kind) {
  const double scale = m.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) return 0.0;
  return (m - reconstruct(read_params(m), kind)).cwiseAbs().maxCoeff() / scale;
}

std::optional<TemplateKind> detect_template(const Eigen::Matrix4d& m, double tolerance) {
  for (const TemplateKind kind : {TemplateKind::Bhabha, TemplateKind::Moller}) {
    if (template_deviation(m, kind) <= tolerance) return kind;
  }
  return std::nullopt;
}

StructuralParams structural_params(const ScatteringMatrix& m, TemplateKind kind) {
  const double dev = template_deviation(m.entries, kind);
  if (!(dev <= kTemplateTolerance)) {
    throw Error(ErrorKind::TemplateViolation,
                "matrix deviates from the requested template by " + std::to_string(dev));
  }
  return read_params(m.entries);
}

StructuralParams structural_params(const ScatteringMatrix& m) {
  const auto kind = expected_template(m.process);
  if (kind) return structural_params(m, *kind);
  const auto detected = detect_template(m.entries);
  if (!detected) {
    throw Error(ErrorKind::TemplateViolation, "matrix matches no fermion-fermion template");
  }
  return read_params(m.entries);
}

Eigen::Matrix4d povm_element(const ScatteringMatrix& m) {
  return m.entries.transpose() * m.entries;
}

}  // namespace qedmap
