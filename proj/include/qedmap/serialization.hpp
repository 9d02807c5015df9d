#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qedmap/compton_dynamics.hpp"
#include "qedmap/scattering_map.hpp"
#include "qedmap/spectral_analysis.hpp"
#include "qedmap/sweep.hpp"

namespace qedmap {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double x);

Json to_json(Complex z);
Json to_json(const Eigen::Matrix4d& m);
Json to_json(const Eigen::Vector4cd& v);
Json to_json(const StructuralParams& p);
Json to_json(const ScatteringMatrix& m);
/// Matrix plus POVM element; structural parameters when a template matches.
Json matrix_document(const ScatteringMatrix& m);
Json to_json(const SpectralReport& r);
Json to_json(const Prediction& p);
Json to_json(const IterationTrace& t, bool include_states = false);
Json to_json(const OscillationSummary& s);

/// Every CSV starts with a "# schema_version=N" comment line.
void write_trace_csv(std::ostream& os, const std::vector<StepRecord>& records);
void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumPoint>& grid);
/// Long format: theta, step, concurrence.
void write_theta_sweep_csv(std::ostream& os, const std::vector<ThetaSweepRow>& rows);

}  // namespace qedmap
