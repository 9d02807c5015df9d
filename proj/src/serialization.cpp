#include "qedmap/serialization.hpp"

#include <cmath>
#include <cstdio>

namespace qedmap {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// JSON has no NaN or infinity.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json versioned(const char* kind) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

Json basis_labels() {
  Json b = Json::array();
  for (auto l : kBasisLabels) b.push_back(std::string(l));
  return b;
}

Json optional_count(const std::optional<long long>& n) { return n ? Json(*n) : Json(nullptr); }

}  // namespace

Json to_json(Complex z) { return Json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

Json to_json(const Eigen::Matrix4d& m) {
  Json rows = Json::array();
  for (int r = 0; r < 4; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 4; ++c) row.push_back(number(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Eigen::Vector4cd& v) {
  Json out = Json::array();
  for (int i = 0; i < 4; ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const StructuralParams& p) {
  return Json{{"A", number(p.A)}, {"B", number(p.B)}, {"D", number(p.D)},
              {"E", number(p.E)}, {"F", number(p.F)}};
}

Json to_json(const ScatteringMatrix& m) {
  Json j = versioned("scattering-matrix");
  j["process"] = std::string(to_string(m.process));
  j["mu"] = m.point.mu;
  j["theta"] = m.point.theta;
  j["basis"] = basis_labels();
  j["entries"] = to_json(m.entries);
  j["removed_phase"] = to_json(m.removed_phase);
  j["realness_residual"] = m.realness_residual;
  return j;
}

Json matrix_document(const ScatteringMatrix& m) {
  Json j = versioned("matrix-document");
  j["matrix"] = to_json(m);
  if (const auto kind = detect_template(m.entries)) {
    j["template"] = *kind == TemplateKind::Bhabha ? "bhabha" : "moller";
    j["template_deviation"] = template_deviation(m.entries, *kind);
    j["structural_params"] = to_json(read_params(m.entries));
  } else {
    j["template"] = nullptr;
    j["structural_params"] = nullptr;
  }
  j["povm"] = to_json(povm_element(m));
  return j;
}

Json to_json(const SpectralReport& r) {
  Json j = versioned("spectral-report");
  j["template"] = r.kind ? Json(*r.kind == TemplateKind::Bhabha ? "bhabha" : "moller") : Json(nullptr);
  j["params"] = r.params ? to_json(*r.params) : Json(nullptr);
  Json vals = Json::array();
  Json vecs = Json::array();
  for (int s = 0; s < 4; ++s) {
    vals.push_back(to_json(r.eigenvalues[s]));
    vecs.push_back(to_json(r.eigenvectors[s]));
  }
  j["eigenvalues"] = vals;
  j["eigenvectors"] = vecs;
  j["delta"] = number(r.delta);
  j["s1"] = r.s1;
  j["s1p"] = r.s1p;
  j["s2"] = r.s2;
  j["r"] = r.r;
  j["eta"] = r.eta;
  j["xi3"] = r.xi3 ? to_json(*r.xi3) : Json(nullptr);
  j["xi4"] = r.xi4 ? to_json(*r.xi4) : Json(nullptr);
  j["class"] = std::string(to_string(r.cls));
  j["dominant"] = r.dominant;
  Json gaps = Json::array();
  for (double g : r.gaps) gaps.push_back(number(g));
  j["gaps"] = gaps;
  j["n_c"] = optional_count(r.n_c);
  j["residual"] = r.residual;
  return j;
}

Json to_json(const Prediction& p) {
  Json j = versioned("prediction");
  j["prediction"] = std::string(to_string(p.kind));
  j["target"] = p.target ? to_json(p.target->amplitudes()) : Json(nullptr);
  if (p.target) {
    const StateLabel l = nearest_named_state(*p.target);
    j["nearest_named_state"] = Json{{"name", l.name}, {"fidelity", l.fidelity}};
  }
  j["reason"] = p.reason;
  j["leading"] = p.leading;
  j["n_c"] = optional_count(p.n_c);
  return j;
}

Json to_json(const IterationTrace& t, bool include_states) {
  Json j = versioned("iteration-trace");
  Json recs = Json::array();
  for (const auto& r : t.records) {
    recs.push_back(Json{{"step", r.step},
                        {"concurrence", number(r.concurrence)},
                        {"purity", number(r.purity)},
                        {"fidelity", number(r.fidelity)},
                        {"probability", number(r.probability)},
                        {"change", number(r.change)}});
  }
  j["records"] = recs;
  j["convergence_step"] = t.convergence_step ? Json(*t.convergence_step) : Json(nullptr);
  j["plateau_step"] = t.plateau_step ? Json(*t.plateau_step) : Json(nullptr);
  if (include_states) {
    Json states = Json::array();
    for (const auto& s : t.states) {
      Json rho = Json::array();
      for (int r = 0; r < 4; ++r) {
        Json row = Json::array();
        for (int c = 0; c < 4; ++c) row.push_back(to_json(s(r, c)));
        rho.push_back(row);
      }
      states.push_back(rho);
    }
    j["states"] = states;
  }
  return j;
}

Json to_json(const OscillationSummary& s) {
  Json j = versioned("oscillation-summary");
  j["mu"] = s.point.mu;
  j["theta"] = s.point.theta;
  j["n_max"] = s.n_max;
  j["period"] = s.period ? Json(*s.period) : Json(nullptr);
  j["peaks"] = s.peaks.size();
  j["max_concurrence"] = s.max_concurrence;
  j["argmax"] = s.argmax;
  j["min_concurrence"] = s.min_concurrence;
  j["max_change"] = s.max_change;
  j["drift"] = s.drift;
  j["convergence_step"] = s.convergence_step ? Json(*s.convergence_step) : Json(nullptr);
  j["spectrum_class"] = std::string(to_string(s.spectrum_class));
  j["eta"] = s.eta;
  j["spectral_period"] = s.spectral_period ? Json(*s.spectral_period) : Json(nullptr);
  return j;
}

void write_trace_csv(std::ostream& os, const std::vector<StepRecord>& records) {
  os << "# schema_version=" << kSchemaVersion << "\n";
  os << "step,concurrence,purity,fidelity,probability\n";
  for (const auto& r : records) {
    os << r.step << ',' << format_double(r.concurrence) << ',' << format_double(r.purity) << ','
       << format_double(r.fidelity) << ',' << format_double(r.probability) << '\n';
  }
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumPoint>& grid) {
  os << "# schema_version=" << kSchemaVersion << "\n";
  os << "mu,theta,delta,class,abs_l1,abs_l2,abs_l3,abs_l4,n_c,dominance_violation,error\n";
  for (const auto& p : grid) {
    os << format_double(p.mu) << ',' << format_double(p.theta) << ',' << format_double(p.delta) << ','
       << to_string(p.cls);
    for (double a : p.moduli) os << ',' << format_double(a);
    os << ',' << (p.n_c ? std::to_string(*p.n_c) : "inf") << ',' << (p.dominance_violation ? 1 : 0)
       << ',' << '"' << p.error << '"' << '\n';
  }
}

void write_theta_sweep_csv(std::ostream& os, const std::vector<ThetaSweepRow>& rows) {
  os << "# schema_version=" << kSchemaVersion << "\n";
  os << "theta,step,concurrence\n";
  for (const auto& row : rows) {
    for (std::size_t n = 0; n < row.concurrence.size(); ++n) {
      os << format_double(row.theta) << ',' << n << ',' << format_double(row.concurrence[n]) << '\n';
    }
  }
}

}  // namespace qedmap
