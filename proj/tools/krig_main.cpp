// Copyright 2026 the krig authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Everything numerical goes through the C API in
// krig.h; this file only handles argument parsing, CSV/JSON files and the
// run manifest.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "krig.h"

using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

int fail(const std::string& category, const std::string& msg) {
  std::cerr << "krig: error: " << category << ": " << msg << "\n";
  return 1;
}

int fail_api(const std::string& category) {
  return fail(category, krig_last_error());
}

int usage_fail(const std::string& msg) {
  std::cerr << "krig: error: usage: " << msg << "\n";
  return 2;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty()) out.push_back(std::stod(cell));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty()) out.push_back(std::stoi(cell));
  }
  return out;
}

// Reads a CSV of points (optional header), returns row-major values + dim.
bool read_points_csv(const std::string& path, std::vector<double>& pts,
                     int& dim) {
  std::ifstream is(path);
  if (!is) return false;
  std::string line;
  dim = -1;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;  // header
      }
      return false;
    }
    first = false;
    if (dim < 0) dim = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != dim) return false;
    pts.insert(pts.end(), row.begin(), row.end());
  }
  return dim >= 1 && !pts.empty();
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

struct KernelHandle {
  krig_kernel* k = nullptr;
  ~KernelHandle() { krig_kernel_free(k); }
};

struct DesignHandle {
  krig_design* d = nullptr;
  ~DesignHandle() { krig_design_free(d); }
};

struct ModelHandle {
  krig_model* m = nullptr;
  ~ModelHandle() { krig_model_free(m); }
};

// ---- kernel subcommand --------------------------------------------------

struct KernelArgs {
  std::string family = "matern";
  double nu = -1.0;
  double phi = 1.0;
  double sigma2 = 1.0;
  double kappa = 1.0;
  double mu = -1.0;
  int dim = 1;
  std::string r_list;
  std::string omega_list;
};

int run_kernel(const KernelArgs& a) {
  KernelHandle kernel;
  if (a.family == "matern") {
    if (a.nu <= 0.0) return usage_fail("--nu must be given and positive");
    kernel.k = krig_kernel_matern(a.nu, a.phi, a.sigma2);
  } else if (a.family == "wendland") {
    if (a.mu < 0.0) return usage_fail("--mu must be given");
    kernel.k = krig_kernel_wendland(a.kappa, a.mu, a.phi, a.sigma2, a.dim);
  } else {
    return fail("config", "unknown --family: " + a.family);
  }
  if (!kernel.k) return fail_api("config");

  if (!a.r_list.empty()) {
    for (double r : parse_double_list(a.r_list)) {
      double v = 0.0;
      if (krig_kernel_corr(kernel.k, r, a.dim, &v) != KRIG_OK) {
        return fail_api("domain");
      }
      std::cout << fmt6(r) << "," << fmt6(v) << "\n";
    }
  }
  if (!a.omega_list.empty()) {
    for (double w : parse_double_list(a.omega_list)) {
      double v = 0.0;
      if (krig_kernel_spectral(kernel.k, a.dim, w, &v) != KRIG_OK) {
        return fail_api("domain");
      }
      std::cout << fmt6(w) << "," << fmt6(v) << "\n";
    }
  }
  if (a.r_list.empty() && a.omega_list.empty()) {
    return usage_fail("nothing to evaluate: pass --r and/or --omega");
  }
  return 0;
}

// ---- design subcommand --------------------------------------------------

struct DesignArgs {
  std::string scheme = "random";
  int n = 0;
  int dim = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string input;
  bool header = false;
  int resolution = 128;
};

int write_design_csv(const DesignArgs& a, krig_design* d) {
  const int n = krig_design_size(d);
  const int dim = krig_design_dim(d);
  std::vector<double> pts(static_cast<std::size_t>(n) * dim);
  if (krig_design_points(d, pts.data()) != KRIG_OK) return fail_api("internal");
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out, std::ios::trunc);
    if (!file) return fail("io", "cannot open " + a.out);
    os = &file;
  }
  std::ostringstream body;
  body.precision(17);
  if (a.header) {
    for (int k = 0; k < dim; ++k) body << (k ? "," : "") << "x" << k + 1;
    body << "\n";
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < dim; ++k) {
      if (k) body << ",";
      body << pts[static_cast<std::size_t>(i) * dim + k];
    }
    body << "\n";
  }
  *os << body.str();
  return 0;
}

int run_design(const DesignArgs& a) {
  DesignHandle design;
  if (!a.input.empty()) {
    std::vector<double> pts;
    int dim = 0;
    if (!read_points_csv(a.input, pts, dim)) {
      return fail("parse", "cannot read points from " + a.input);
    }
    design.d = krig_design_from_points(
        dim, static_cast<int>(pts.size()) / dim, pts.data());
  } else {
    if (a.n < 1) return usage_fail("--n must be given and positive");
    if (a.scheme == "random") {
      design.d = krig_design_random(a.dim, a.n, a.seed);
    } else if (a.scheme == "grid") {
      design.d = krig_design_grid(a.dim, a.n);
    } else if (a.scheme == "halton") {
      design.d = krig_design_halton(a.dim, a.n);
    } else {
      return fail("config", "unknown --scheme: " + a.scheme);
    }
  }
  if (!design.d) return fail_api("config");

  if (a.input.empty()) {
    const int rc = write_design_csv(a, design.d);
    if (rc != 0) return rc;
  }
  double h = 0.0, q = 0.0, rho = 0.0;
  int exact = 0;
  if (krig_design_metrics(design.d, a.resolution, &h, &q, &rho, &exact) !=
      KRIG_OK) {
    return fail_api("config");
  }
  std::cout << "h=" << fmt6(h) << " q=" << fmt6(q) << " rho=" << fmt6(rho)
            << " exact=" << exact << "\n";
  return 0;
}

// ---- krige subcommand ---------------------------------------------------

struct KrigeArgs {
  std::string design_csv;
  std::string obs_csv;
  std::string predict_csv;
  double nu = -1.0;
  double phi = 1.0;
  double sigma2 = 1.0;
  std::string out;
};

int run_krige(const KrigeArgs& a) {
  std::vector<double> pts;
  int dim = 0;
  if (!read_points_csv(a.design_csv, pts, dim)) {
    return fail("parse", "cannot read design from " + a.design_csv);
  }
  std::vector<double> obs;
  int obs_dim = 0;
  if (!read_points_csv(a.obs_csv, obs, obs_dim) || obs_dim != 1) {
    return fail("parse", "observations must be a one-column CSV: " + a.obs_csv);
  }
  const int n = static_cast<int>(pts.size()) / dim;
  if (static_cast<int>(obs.size()) != n) {
    return fail("config", "observation count does not match design size");
  }
  std::vector<double> query;
  int qdim = 0;
  if (!read_points_csv(a.predict_csv, query, qdim) || qdim != dim) {
    return fail("parse", "prediction points must match the design dimension");
  }
  if (a.nu <= 0.0) return fail("config", "--nu must be given and positive");

  DesignHandle design;
  design.d = krig_design_from_points(dim, n, pts.data());
  if (!design.d) return fail_api("config");
  KernelHandle kernel;
  kernel.k = krig_kernel_matern(a.nu, a.phi, a.sigma2);
  if (!kernel.k) return fail_api("config");
  ModelHandle model;
  model.m = krig_fit(design.d, obs.data(), kernel.k);
  if (!model.m) return fail_api("ill-conditioned");

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out, std::ios::trunc);
    if (!file) return fail("io", "cannot open " + a.out);
    os = &file;
  }
  const int m = static_cast<int>(query.size()) / dim;
  std::ostringstream body;
  body.precision(17);
  for (int i = 0; i < m; ++i) {
    double v = 0.0;
    if (krig_predict(model.m, query.data() + static_cast<std::size_t>(i) * dim,
                     &v) != KRIG_OK) {
      return fail_api("internal");
    }
    body << v << "\n";
  }
  *os << body.str();
  if (krig_model_jitter(model.m) > 0.0) {
    std::cerr << "krig: note: jitter " << fmt6(krig_model_jitter(model.m))
              << " applied during factorization\n";
  }
  return 0;
}

// ---- experiment subcommand ----------------------------------------------

struct ExperimentArgs {
  std::string preset;
  std::string config_file;
  double nu0 = 1.1;
  double nu = 1.3;
  std::string scheme = "random";
  double phi = 10.0;
  double sigma2 = 1.0;
  int replications = 30;
  std::string sizes;
  int eval_points = 200;
  std::string norm = "sup";
  double p = 2.0;
  std::uint64_t seed = 7;
  int threads = 0;
  std::string out_dir;
  bool plot_data = false;
  bool set_nu0 = false, set_nu = false, set_scheme = false;
};

json experiment_config_json(const ExperimentArgs& a) {
  json cfg;
  if (!a.config_file.empty()) {
    std::ifstream is(a.config_file);
    if (!is) throw std::runtime_error("cannot open " + a.config_file);
    is >> cfg;
  }
  // Inline flags fill whatever the config file did not pin down.
  if (!cfg.contains("nu0")) cfg["nu0"] = a.nu0;
  if (!cfg.contains("nu")) cfg["nu"] = a.nu;
  if (!cfg.contains("scheme")) cfg["scheme"] = a.scheme;
  if (!cfg.contains("phi")) cfg["phi"] = a.phi;
  if (!cfg.contains("sigma2")) cfg["sigma2"] = a.sigma2;
  if (!cfg.contains("replications")) cfg["replications"] = a.replications;
  if (!cfg.contains("sample_sizes") && !a.sizes.empty()) {
    cfg["sample_sizes"] = parse_int_list(a.sizes);
  }
  if (!cfg.contains("eval_points")) cfg["eval_points"] = a.eval_points;
  if (!cfg.contains("norm")) cfg["norm"] = a.norm;
  if (!cfg.contains("p")) cfg["p"] = a.p;
  if (!cfg.contains("base_seed")) cfg["base_seed"] = a.seed;
  if (!cfg.contains("threads")) cfg["threads"] = a.threads;
  return cfg;
}

std::string report_row(const json& row) {
  const json& cfg = row.at("config");
  const json& fit = row.at("fit");
  std::string sizes;
  for (const auto& n : cfg.at("sample_sizes")) {
    if (!sizes.empty()) sizes += ";";
    sizes += std::to_string(n.get<int>());
  }
  std::string rd;
  if (row.contains("relative_difference") &&
      !row.at("relative_difference").is_null()) {
    rd = fmt6(row.at("relative_difference").get<double>());
  }
  std::string ts = fmt6(fit.at("theoretical_slope").get<double>());
  if (!fit.at("convergent").get<bool>()) ts += " (no convergence)";
  std::ostringstream os;
  os << fmt6(cfg.at("nu0").get<double>()) << ","
     << fmt6(cfg.at("nu").get<double>()) << ","
     << cfg.at("scheme").get<std::string>() << "," << sizes << ","
     << fmt6(fit.at("slope").get<double>()) << "," << ts << "," << rd << ","
     << fmt6(fit.at("r_squared").get<double>()) << ","
     << fit.at("dropped_replications").get<int>();
  return os.str();
}

int run_experiment(const ExperimentArgs& a) {
  json cfg;
  try {
    cfg = experiment_config_json(a);
  } catch (const std::exception& e) {
    return fail("parse", e.what());
  }

  const std::string started = iso8601_now();
  json rows = json::array();
  if (a.preset == "table2") {
    std::unique_ptr<char, decltype(&krig_string_free)> result(
        krig_table2_json(cfg.dump().c_str()), &krig_string_free);
    if (!result) return fail_api("experiment");
    rows = json::parse(result.get()).at("rows");
  } else if (a.preset.empty()) {
    if (!a.set_nu0 && !a.set_nu && a.config_file.empty()) {
      return fail("config",
                  "pass --preset table2, a --config file, or --nu0/--nu flags");
    }
    std::unique_ptr<char, decltype(&krig_string_free)> result(
        krig_rate_study_json(cfg.dump().c_str()), &krig_string_free);
    if (!result) return fail_api("experiment");
    json row = json::parse(result.get());
    const json& fit = row.at("fit");
    if (fit.at("convergent").get<bool>() &&
        fit.at("theoretical_slope").get<double>() > 0.0) {
      row["relative_difference"] =
          std::abs(fit.at("slope").get<double>() -
                   fit.at("theoretical_slope").get<double>()) /
          fit.at("theoretical_slope").get<double>();
    } else {
      row["relative_difference"] = nullptr;
    }
    rows.push_back(std::move(row));
  } else {
    return fail("config", "unknown --preset: " + a.preset);
  }
  const std::string finished = iso8601_now();

  std::string out_dir = a.out_dir;
  if (out_dir.empty()) {
    const char* env = std::getenv("KRIG_OUT_DIR");
    out_dir = env && *env ? env : ".";
  }

  // Resolved configs (post-default) are what the manifest hashes.
  json resolved = json::array();
  for (const auto& row : rows) resolved.push_back(row.at("config"));
  const std::string config_hash = hex64(fnv1a64(resolved.dump()));

  std::ofstream report(out_dir + "/report.csv", std::ios::trunc);
  if (!report) return fail("io", "cannot write to " + out_dir);
  report << "nu0,nu,scheme,sample_sizes,estimated_slope,theoretical_slope,"
            "relative_difference,r_squared,dropped_replications\n";
  for (const auto& row : rows) {
    report << report_row(row) << "\n";
    std::cout << report_row(row) << "\n";
  }

  json audit{{"tool_version", kToolVersion},
             {"config_hash", config_hash},
             {"rows", rows}};
  std::ofstream(out_dir + "/audit.json", std::ios::trunc) << audit.dump(2)
                                                          << "\n";

  json manifest{{"config_hash", config_hash},
                {"tool_version", kToolVersion},
                {"base_seed", rows.empty() ? a.seed
                                           : rows[0]["config"]["base_seed"]
                                                 .get<std::uint64_t>()},
                {"started", started},
                {"finished", finished},
                {"resolved_configs", resolved}};
  std::ofstream(out_dir + "/manifest.json", std::ios::trunc)
      << manifest.dump(2) << "\n";

  if (a.plot_data) {
    int idx = 0;
    for (const auto& row : rows) {
      std::ofstream pd(out_dir + "/plotdata_" + std::to_string(idx++) +
                           ".csv",
                       std::ios::trunc);
      pd << "log_inv_n,log_mean_error\n";
      for (const auto& cell : row.at("fit").at("per_n")) {
        const double n = cell.at("n").get<int>();
        pd << fmt6(std::log(1.0 / n)) << ","
           << fmt6(std::log(cell.at("mean_error").get<double>())) << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matern kriging simulation and design-quality toolkit"};
  app.set_version_flag("--version", krig_version());
  app.require_subcommand(1);

  KernelArgs ka;
  auto* kernel = app.add_subcommand("kernel", "evaluate correlation/spectral values");
  kernel->add_option("--family", ka.family, "matern|wendland");
  kernel->add_option("--nu", ka.nu, "Matern smoothness");
  kernel->add_option("--phi", ka.phi, "inverse length-scale");
  kernel->add_option("--sigma2", ka.sigma2, "process variance");
  kernel->add_option("--kappa", ka.kappa, "Wendland shape");
  kernel->add_option("--mu", ka.mu, "Wendland tail exponent");
  kernel->add_option("--dim", ka.dim, "ambient dimension");
  kernel->add_option("--r", ka.r_list, "comma-separated distances");
  kernel->add_option("--omega", ka.omega_list,
                     "comma-separated frequency norms (spectral density)");

  DesignArgs da;
  auto* design = app.add_subcommand("design", "generate designs and metrics");
  design->add_option("--scheme", da.scheme, "random|grid|halton");
  design->add_option("--n", da.n, "number of points");
  design->add_option("--dim", da.dim, "dimension");
  design->add_option("--seed", da.seed, "RNG seed (random scheme)");
  design->add_option("--out", da.out, "points CSV output path");
  design->add_option("--input", da.input, "compute metrics of an existing CSV");
  design->add_flag("--header", da.header, "include a CSV header row");
  design->add_option("--resolution", da.resolution,
                     "fill-distance lattice resolution for dim > 1");

  KrigeArgs kr;
  auto* krige = app.add_subcommand("krige", "fit and predict on CSV data");
  krige->add_option("--design", kr.design_csv, "design points CSV")->required();
  krige->add_option("--obs", kr.obs_csv, "observations CSV")->required();
  krige->add_option("--predict", kr.predict_csv, "prediction points CSV")->required();
  krige->add_option("--nu", kr.nu, "imposed Matern smoothness");
  krige->add_option("--phi", kr.phi, "inverse length-scale");
  krige->add_option("--sigma2", kr.sigma2, "process variance");
  krige->add_option("--out", kr.out, "predictions output path");

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "convergence-rate study");
  experiment->add_option("--preset", ea.preset, "table2");
  experiment->add_option("--config", ea.config_file, "JSON config file");
  auto* onu0 = experiment->add_option("--nu0", ea.nu0, "true smoothness");
  auto* onu = experiment->add_option("--nu", ea.nu, "imposed smoothness");
  auto* osch = experiment->add_option("--scheme", ea.scheme, "random|grid|halton");
  experiment->add_option("--phi", ea.phi, "inverse length-scale (both kernels)");
  experiment->add_option("--sigma2", ea.sigma2, "process variance");
  experiment->add_option("--replications", ea.replications, "replications per n");
  experiment->add_option("--sizes", ea.sizes, "comma-separated sample sizes");
  experiment->add_option("--eval-points", ea.eval_points, "Halton eval points");
  experiment->add_option("--norm", ea.norm, "sup|lp");
  experiment->add_option("--p", ea.p, "Lp exponent");
  experiment->add_option("--seed", ea.seed, "base seed");
  experiment->add_option("--threads", ea.threads, "worker threads (0 = auto)");
  experiment->add_option("--out-dir", ea.out_dir,
                         "output directory (default $KRIG_OUT_DIR or .)");
  experiment->add_flag("--plot-data", ea.plot_data,
                       "emit per-row regression plot data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "krig: error: usage: " << e.what() << "\n";
    std::cerr << app.help();
    return 2;
  }

  ea.set_nu0 = onu0->count() > 0;
  ea.set_nu = onu->count() > 0;
  ea.set_scheme = osch->count() > 0;

  if (kernel->parsed()) return run_kernel(ka);
  if (design->parsed()) return run_design(da);
  if (krige->parsed()) return run_krige(kr);
  if (experiment->parsed()) return run_experiment(ea);
  return 2;
}
