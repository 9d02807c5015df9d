#pragma once

// Closed-form helicity amplitudes in two-component (Weyl) form.
//
// Spinors are written directly in the chiral basis with sqrt(E +- |p|)
// weights, and every bilinear is reduced to 2x2 products of sigma^mu and
// sigma-bar^mu. The phase conventions are the ones of qedmap::dirac, so the
// two routes must agree entry by entry, not only in modulus.

#include <Eigen/Dense>

#include "qedmap/helicity.hpp"
#include "qedmap/kinematics.hpp"

namespace qedmap::weyl {

std::complex<double> amplitude(Process process, const ComConfiguration& cfg, HelicityPair out,
                               HelicityPair in);

std::complex<double> amplitude(Process process, const KinematicPoint& point, HelicityPair out,
                               HelicityPair in);

Eigen::Matrix4cd amplitude_matrix(Process process, const KinematicPoint& point);

}  // namespace qedmap::weyl
