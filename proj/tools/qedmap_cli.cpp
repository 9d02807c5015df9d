// qedmap: command-line driver for the scattering-map experiments.
//
//   qedmap [--config run.json] <matrix|iterate|spectrum|compton|table1> [flags]
//
// Flags override the config file; the config file overrides the defaults.
// The output directory defaults to $QEDMAP_OUTPUT_DIR, then ".".

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qedmap/compton_dynamics.hpp"
#include "qedmap/error.hpp"
#include "qedmap/experiments.hpp"
#include "qedmap/serialization.hpp"
#include "qedmap/sweep.hpp"

namespace fs = std::filesystem;
using namespace qedmap;

namespace {

struct RunConfig {
  std::string process = "bhabha";
  std::vector<double> mu{1.0};
  std::vector<double> theta{std::numbers::pi / 4};
  std::vector<double> mu_grid;     // lo, hi, n (log spaced)
  std::vector<double> theta_grid;  // lo, hi, n or just n (interior points)
  std::vector<std::string> initial{"RL"};
  std::vector<double> rho;
  int n_max = 100;
  std::string output_dir;
  std::string format = "csv";
  double fixed_point_tolerance = kFixedPointTolerance;
  double plateau_tolerance = kConcurrencePlateauTolerance;
  long long cap = 2'000'000;
};

std::string tag(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

class Runner {
 public:
  explicit Runner(RunConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.n_max < 1) throw Error(ErrorKind::InvalidInput, "n_max must be >= 1");
    if (cfg_.format != "csv" && cfg_.format != "json")
      throw Error(ErrorKind::InvalidInput, "format must be csv or json");
    auto p = parse_process(cfg_.process);
    if (!p) throw Error(ErrorKind::InvalidInput, "unknown process '" + cfg_.process + "'");
    process_ = *p;
    if (!cfg_.mu_grid.empty()) {
      if (cfg_.mu_grid.size() != 3) throw Error(ErrorKind::InvalidInput, "mu-grid needs lo hi n");
      cfg_.mu = log_grid(cfg_.mu_grid[0], cfg_.mu_grid[1], static_cast<int>(cfg_.mu_grid[2]));
    }
    if (cfg_.theta_grid.size() == 1) {
      cfg_.theta = interior_angles(static_cast<int>(cfg_.theta_grid[0]));
    } else if (cfg_.theta_grid.size() == 3) {
      cfg_.theta = linear_grid(cfg_.theta_grid[0], cfg_.theta_grid[1], static_cast<int>(cfg_.theta_grid[2]));
    } else if (!cfg_.theta_grid.empty()) {
      throw Error(ErrorKind::InvalidInput, "theta-grid needs n or lo hi n");
    }
    if (cfg_.mu.empty() || cfg_.theta.empty()) throw Error(ErrorKind::InvalidInput, "mu and theta lists must be non-empty");
    for (double m : cfg_.mu) make_point(m, std::numbers::pi / 2);
    for (double t : cfg_.theta) make_point(1.0, t);
    if (!cfg_.rho.empty()) {
      states_.push_back({"explicit", state_from_entries(cfg_.rho)});
    } else {
      if (cfg_.initial.empty()) throw Error(ErrorKind::InvalidInput, "no initial state given");
      for (const auto& name : cfg_.initial) states_.push_back({name, parse_initial_state(name)});
    }
    out_ = cfg_.output_dir.empty() ? fs::path(".") : fs::path(cfg_.output_dir);
    fs::create_directories(out_);
  }

  int matrix() {
    for (double mu : cfg_.mu) {
      for (double th : cfg_.theta) {
        const auto m = build_matrix(process_, make_point(mu, th));
        if (auto kind = expected_template(process_)) {
          const double dev = template_deviation(m.entries, *kind);
          if (dev >= kTemplateTolerance)
            throw Error(ErrorKind::TemplateViolation, "template deviation " + format_double(dev));
        }
        Json doc = matrix_document(m);
        std::cout << doc.dump(2) << '\n';
        write_json(stem("matrix", mu, th) + ".json", doc);
      }
    }
    return 0;
  }

  int iterate_cmd() {
    int status = 0;
    Json summary = versioned("iterate-summary");
    summary["runs"] = Json::array();
    for (double mu : cfg_.mu) {
      for (double th : cfg_.theta) {
        for (const auto& [name, rho] : states_) {
          Json run{{"mu", mu}, {"theta", th}, {"initial", name}};
          try {
            const auto m = build_matrix(process_, make_point(mu, th));
            IterationOptions opt;
            opt.fixed_point_tolerance = cfg_.fixed_point_tolerance;
            opt.plateau_tolerance = cfg_.plateau_tolerance;
            opt.keep_states = cfg_.format == "json";
            const auto pred = classify_and_predict(m, rho);
            const auto t = iterate(m, rho, cfg_.n_max, pred.target, opt);
            const std::string file = stem("iterate", mu, th) + "_" + safe(name);
            if (cfg_.format == "csv") {
              write_csv(file + ".csv", [&](std::ostream& os) { write_trace_csv(os, t.records); });
            } else {
              Json doc = to_json(t, true);
              doc["prediction"] = to_json(pred);
              write_json(file + ".json", doc);
            }
            run["final_concurrence"] = t.records.back().concurrence;
            run["convergence_step"] = t.convergence_step ? Json(*t.convergence_step) : Json(nullptr);
            run["prediction"] = to_string(pred.kind);
          } catch (const Error& e) {
            run["error"] = e.what();
            std::cerr << "qedmap: mu=" << tag(mu) << " theta=" << tag(th) << " " << name << ": " << e.what() << '\n';
            if (status == 0) status = exit_code(e.kind());
          }
          summary["runs"].push_back(run);
        }
      }
    }
    write_json("iterate_summary_" + std::string(to_string(process_)) + ".json", summary);
    return status;
  }

  int spectrum() {
    const auto grid = spectrum_grid(process_, cfg_.mu, cfg_.theta, SweepMode::Parallel);
    const std::string base = "spectrum_" + std::string(to_string(process_));
    write_csv(base + ".csv", [&](std::ostream& os) { write_spectrum_csv(os, grid); });

    // Non-saturating region for the first initial state, in grid order.
    const auto& [name, rho] = states_.front();
    std::vector<int> no_sat(grid.size(), 0);
    std::vector<int> failed(grid.size(), 0);
    const std::size_t nt = cfg_.theta.size();
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(grid.size()); ++k) {
      try {
        const auto m = build_matrix(process_, {cfg_.mu[k / nt], cfg_.theta[k % nt]});
        no_sat[k] = classify_and_predict(m, rho).kind == PredictionKind::NoSaturation;
      } catch (const Error&) {
        failed[k] = 1;
      }
    }
    long long violations = 0, complex_pairs = 0, errors = 0, non_sat = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      violations += grid[k].dominance_violation;
      complex_pairs += grid[k].cls == SpectrumClass::ComplexPair;
      errors += !grid[k].error.empty() || failed[k];
      non_sat += no_sat[k];
    }
    Json summary = versioned("spectrum-summary");
    summary["process"] = to_string(process_);
    summary["points"] = grid.size();
    summary["complex_pair_points"] = complex_pairs;
    summary["dominance_violations"] = violations;
    summary["errors"] = errors;
    summary["initial"] = name;
    summary["non_saturating_fraction"] = static_cast<double>(non_sat) / static_cast<double>(grid.size());
    if (expected_template(process_)) {
      const auto ur = eigensystem(build_matrix(process_, {1e3, cfg_.theta[nt / 2]}));
      summary["ultrarelativistic_deviation"] = ultrarelativistic_deviation(ur);
    }
    write_json(base + "_summary.json", summary);
    std::cout << summary.dump(2) << '\n';
    return 0;
  }

  int compton() {
    for (double mu : cfg_.mu) {
      for (double th : cfg_.theta) {
        for (const auto& [name, rho] : states_) {
          const auto s = compton_trace(make_point(mu, th), rho, cfg_.n_max);
          const std::string file = stem("compton", mu, th) + "_" + safe(name);
          write_csv(file + ".csv", [&](std::ostream& os) { write_trace_csv(os, s.records); });
          Json doc = to_json(s);
          write_json(file + "_summary.json", doc);
          std::cout << "mu=" << tag(mu) << " theta=" << tag(th) << " " << name
                    << " max_concurrence=" << format_double(s.max_concurrence) << " step=" << s.argmax
                    << " period=" << (s.period ? format_double(*s.period) : "inf") << " drift=" << s.drift << '\n';
        }
      }
    }
    return 0;
  }

  int table1() {
    Json doc = versioned("table1");
    doc["rows"] = Json::array();
    std::ostringstream csv;
    csv << "# schema_version=" << kSchemaVersion << "\n";
    csv << "process,initial,regime,mu,theta,expected,predicted_kind,predicted_label,predicted_overlap,n_c,n_run,"
           "best_fidelity,best_step,convergence_step,pass\n";
    for (const auto& row : table1_cases()) {
      const auto r = run_table1_case(row, cfg_.cap);
      std::string expected;
      for (auto l : row.expected) expected += (expected.empty() ? "" : "|") + std::string(to_string(l));
      Json j{{"process", to_string(row.process)},
             {"initial", row.initial},
             {"regime", row.regime},
             {"mu", row.mu},
             {"theta", row.theta},
             {"expected", expected},
             {"prediction", to_json(r.prediction)},
             {"predicted_label", r.predicted_label},
             {"predicted_overlap", r.predicted_overlap},
             {"n_run", r.n_run},
             {"capped", r.capped},
             {"best_fidelity", r.best_fidelity},
             {"best_step", r.best_step},
             {"final_fidelity", r.final_fidelity},
             {"final_concurrence", r.final_concurrence},
             {"final_target_fidelity", r.final_target_fidelity},
             {"convergence_step", r.convergence_step ? Json(*r.convergence_step) : Json(nullptr)},
             {"pass", r.pass},
             {"error", r.error}};
      doc["rows"].push_back(j);
      csv << to_string(row.process) << ',' << row.initial << ',' << row.regime << ',' << format_double(row.mu) << ','
          << format_double(row.theta) << ',' << expected << ',' << to_string(r.prediction.kind) << ','
          << r.predicted_label << ',' << format_double(r.predicted_overlap) << ','
          << (r.prediction.n_c ? std::to_string(*r.prediction.n_c) : "inf") << ',' << r.n_run << ','
          << format_double(r.best_fidelity) << ',' << r.best_step << ','
          << (r.convergence_step ? std::to_string(*r.convergence_step) : "") << ',' << (r.pass ? 1 : 0) << '\n';
    }
    write_json("table1.json", doc);
    write_csv("table1.csv", [&](std::ostream& os) { os << csv.str(); });
    std::cout << csv.str();
    return 0;
  }

 private:
  static Json versioned(const char* kind) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
  }

  static std::string safe(std::string s) {
    for (char& c : s) {
      if (c == '+') c = 'p';
      else if (c == '-') c = 'm';
    }
    return s;
  }

  std::string stem(const char* what, double mu, double th) const {
    return std::string(what) + "_" + std::string(to_string(process_)) + "_mu" + tag(mu) + "_th" + tag(th);
  }

  void write_json(const std::string& name, const Json& doc) const {
    std::ofstream f(out_ / name);
    if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + (out_ / name).string());
    f << doc.dump(2) << '\n';
  }

  template <class F>
  void write_csv(const std::string& name, F&& body) const {
    std::ofstream f(out_ / name);
    if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + (out_ / name).string());
    body(f);
  }

  RunConfig cfg_;
  Process process_ = Process::Bhabha;
  std::vector<std::pair<std::string, HelicityState>> states_;
  fs::path out_;
};

// Fills every field the command line left untouched from the config file.
void merge_config(const nlohmann::json& file, RunConfig& cfg, const CLI::App& app) {
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (!file.contains(key) || app.get_option(flag)->count() > 0) return;
    const auto& v = file.at(key);
    using T = std::decay_t<decltype(field)>;
    if constexpr (std::is_same_v<T, std::vector<double>> || std::is_same_v<T, std::vector<std::string>>) {
      field = v.is_array() ? v.get<T>() : T{v.get<typename T::value_type>()};
    } else {
      field = v.get<T>();
    }
  };
  take("process", "--process", cfg.process);
  take("mu", "--mu", cfg.mu);
  take("theta", "--theta", cfg.theta);
  take("mu_grid", "--mu-grid", cfg.mu_grid);
  take("theta_grid", "--theta-grid", cfg.theta_grid);
  take("initial", "--initial", cfg.initial);
  take("rho", "--rho", cfg.rho);
  take("n_max", "--n-max", cfg.n_max);
  take("output_dir", "--output-dir", cfg.output_dir);
  take("format", "--format", cfg.format);
  take("fixed_point_tolerance", "--fixed-point-tol", cfg.fixed_point_tolerance);
  take("plateau_tolerance", "--plateau-tol", cfg.plateau_tolerance);
  take("cap", "--cap", cfg.cap);
}

// Every subcommand takes the same run flags.
void add_run_flags(CLI::App* a, RunConfig& cfg, std::string& config_path) {
  a->add_option("--config", config_path, "JSON file mirroring the flags");
  a->add_option("--process", cfg.process, "bhabha, moller, electron_muon, muon_pair, compton, pair_annihilation");
  a->add_option("--mu", cfg.mu, "|p|/m values")->expected(1, -1);
  a->add_option("--theta", cfg.theta, "scattering angles in (0, pi)")->expected(1, -1);
  a->add_option("--mu-grid", cfg.mu_grid, "log grid: lo hi n")->expected(3);
  a->add_option("--theta-grid", cfg.theta_grid, "n interior angles, or lo hi n")->expected(1, 3);
  a->add_option("--initial", cfg.initial, "RR RL LR LL phi+ phi- psi+ psi- rho_pm rho_cm")->expected(1, -1);
  a->add_option("--rho", cfg.rho, "explicit density matrix: 16 reals or 32 (re, im) numbers")->expected(16, 32);
  a->add_option("--n-max", cfg.n_max, "iterations");
  a->add_option("--output-dir", cfg.output_dir, "defaults to $QEDMAP_OUTPUT_DIR, then .");
  a->add_option("--format", cfg.format, "csv or json");
  a->add_option("--fixed-point-tol", cfg.fixed_point_tolerance);
  a->add_option("--plateau-tol", cfg.plateau_tolerance);
  a->add_option("--cap", cfg.cap, "step cap for table1 runs");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterated helicity scattering maps"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON file mirroring the flags");
  auto* c_matrix = app.add_subcommand("matrix", "dump M, structural parameters and the POVM element");
  auto* c_iterate = app.add_subcommand("iterate", "iterate the map and write traces");
  auto* c_spectrum = app.add_subcommand("spectrum", "classify the spectrum over a grid");
  auto* c_compton = app.add_subcommand("compton", "iterated Compton oscillation summaries");
  auto* c_table1 = app.add_subcommand("table1", "check the asymptotic-state table");
  for (auto* sub : {c_matrix, c_iterate, c_spectrum, c_compton, c_table1}) add_run_flags(sub, cfg, config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw Error(ErrorKind::InvalidInput, "cannot read config " + config_path);
      nlohmann::json file;
      try {
        file = nlohmann::json::parse(f);
        merge_config(file, cfg, *app.get_subcommands().front());
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("config: ") + e.what());
      }
    }
    if (cfg.output_dir.empty()) {
      if (const char* env = std::getenv("QEDMAP_OUTPUT_DIR")) cfg.output_dir = env;
    }
    Runner run(cfg);
    if (*c_matrix) return run.matrix();
    if (*c_iterate) return run.iterate_cmd();
    if (*c_spectrum) return run.spectrum();
    if (*c_compton) return run.compton();
    if (*c_table1) return run.table1();
  } catch (const Error& e) {
    std::cerr << "qedmap: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "qedmap: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
