// mgraph: market graph identification and risk experiments.
//
// Exit codes: 0 ok, 2 configuration error, 3 data error, 4 interrupted with
// partial results.

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgraph/experiment.hpp"
#include "mgraph/ingest.hpp"
#include "mgraph/matrix_io.hpp"
#include "mgraph/normal_quantile.hpp"
#include "mgraph/sign_procedure.hpp"

namespace fs = std::filesystem;
using namespace mgraph;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitInterrupted = 4;

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted = true; }

int report(const char* kind, const std::string& message, int code) {
  std::cerr << "error: " << kind << ": " << message << '\n';
  return code;
}

double parse_value(const std::string& text) {
  const auto v = csv::parse_number(text);
  if (!v) throw ConfigError("not a number: '" + text + "'");
  return *v;
}

int run_transform(const std::string& direction, const std::vector<std::string>& args) {
  auto need = [&](std::size_t count) {
    if (args.size() != count)
      throw ConfigError(direction + " expects " + std::to_string(count) + " value(s)");
  };
  if (direction == "rho-to-p") {
    need(1);
    std::cout << csv::format_number(sign_prob_from_correlation(parse_value(args[0]))) << '\n';
  } else if (direction == "p-to-rho") {
    need(1);
    std::cout << csv::format_number(correlation_from_sign_prob(parse_value(args[0]))) << '\n';
  } else if (direction == "critical-value") {
    need(3);
    const double n = parse_value(args[0]);
    if (n != static_cast<double>(static_cast<Index>(n))) throw DomainError("n must be an integer");
    std::cout << critical_value(static_cast<Index>(n), parse_value(args[1]), parse_value(args[2])) << '\n';
  } else if (direction == "normal-quantile") {
    need(1);
    std::cout << csv::format_number(normal_quantile(parse_value(args[0]))) << '\n';
  } else {
    throw ConfigError("unknown transform '" + direction + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Market graph identification in sign similarity and Pearson networks"};
  app.require_subcommand(1);

  // identify
  auto* identify = app.add_subcommand("identify", "Identify the market graph from a returns CSV");
  IdentifyOptions id;
  std::string id_method = "sign", id_centering = "sample-mean";
  double id_p0 = 0.0, id_rho0 = 0.0;
  bool id_lenient = false;
  identify->add_option("--input", id.input, "Returns CSV (rows = observations, columns = stocks)")->required();
  identify->add_option("--method", id_method, "sign or pearson")->check(CLI::IsMember({"sign", "pearson"}));
  auto* p0_opt = identify->add_option("--p0,--threshold", id_p0, "Sign-probability threshold p0");
  auto* rho0_opt = identify->add_option("--rho0", id_rho0, "Correlation threshold rho0");
  p0_opt->excludes(rho0_opt);
  identify->add_option("--alpha", id.alpha, "Per-edge significance level");
  identify->add_option("--centering", id_centering, "known-zero-mean or sample-mean");
  identify->add_option("--out-dir", id.out_dir, "Directory for adjacency.csv and edges.txt");
  identify->add_flag("--lenient", id_lenient, "Drop rows with non-numeric cells instead of failing");

  // risk
  auto* risk = app.add_subcommand("risk", "Monte Carlo risk curves of both procedures");
  std::string config_path, preset, pair_counting, centering, out_dir;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  double nu = 0.0;
  Index replications = 0;
  bool svg = false;
  risk->add_option("--config", config_path, "key=value config file (e.g. a metadata.txt)");
  risk->add_option("--preset", preset, "default or fig1..fig6");
  auto* seed_opt = risk->add_option("--seed", seed, "Master seed");
  auto* threads_opt = risk->add_option("--threads", threads, "Worker threads (0 = all cores)");
  risk->add_option("--out-dir", out_dir, "Output directory");
  risk->add_flag("--svg", svg, "Emit an SVG plot per risk CSV");
  risk->add_option("--pair-counting", pair_counting, "unordered or ordered");
  risk->add_option("--centering", centering, "known-zero-mean or sample-mean");
  auto* nu_opt = risk->add_option("--nu", nu, "Student degrees of freedom");
  auto* reps_opt = risk->add_option("--replications,-R", replications, "Monte Carlo replications");
  risk->add_option("--set", sets, "Extra key=value override (repeatable)");

  // transform
  auto* transform = app.add_subcommand("transform", "Evaluate a single transform");
  std::string direction;
  std::vector<std::string> values;
  transform->add_option("direction", direction, "rho-to-p | p-to-rho | critical-value | normal-quantile")->required();
  transform->add_option("values", values, "Arguments (critical-value: n p0 alpha)")->required();

  // validate-sigma
  auto* validate_cmd = app.add_subcommand("validate-sigma", "Check a correlation matrix CSV");
  std::string sigma_path;
  validate_cmd->add_option("file", sigma_path, "Correlation matrix CSV")->required();

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Estimate correlation and sign-probability matrices");
  std::string est_input, est_centering = "sample-mean";
  fs::path est_out = ".";
  estimate->add_option("--input", est_input, "Returns CSV")->required();
  estimate->add_option("--centering", est_centering, "known-zero-mean or sample-mean");
  estimate->add_option("--out-dir", est_out, "Directory for correlation.csv and sign_probability.csv");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Write a simulated returns CSV");
  std::string sim_sigma = "identity", sim_family = "gaussian", sim_output;
  Index sim_N = 30, sim_n = 400;
  double sim_nu = 3.0;
  std::uint64_t sim_seed = 1;
  simulate->add_option("--sigma", sim_sigma, "identity | equicorrelated:<rho> | file:<path>");
  simulate->add_option("--N", sim_N, "Number of series");
  simulate->add_option("--n", sim_n, "Number of observations");
  simulate->add_option("--family", sim_family, "gaussian or student");
  simulate->add_option("--nu", sim_nu, "Student degrees of freedom");
  simulate->add_option("--seed", sim_seed, "Seed");
  simulate->add_option("--output", sim_output, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("config", e.what(), kExitConfig);
  }

  try {
    if (*identify) {
      id.method = procedure_from_string(id_method);
      id.centering = centering_from_string(id_centering);
      id.strict = !id_lenient;
      if (*p0_opt) id.p0 = id_p0;
      if (*rho0_opt) id.rho0 = id_rho0;
      const auto outcome = run_identify(id);
      std::cout << "edges=" << outcome.graph.edge_count() << '\n';
      if (outcome.dropped_rows) std::cout << "dropped_rows=" << outcome.dropped_rows << '\n';
      return 0;
    }
    if (*risk) {
      ExperimentConfig config = preset.empty() ? ExperimentConfig{} : preset_config(preset);
      if (!config_path.empty()) config = load_config(config_path, config);
      std::vector<Setting> overrides;
      if (*seed_opt) overrides.emplace_back("seed", std::to_string(seed));
      if (*threads_opt) overrides.emplace_back("threads", std::to_string(threads));
      if (!out_dir.empty()) overrides.emplace_back("out_dir", out_dir);
      if (svg) overrides.emplace_back("svg", "true");
      if (!pair_counting.empty()) overrides.emplace_back("pair_counting", pair_counting);
      if (!centering.empty()) overrides.emplace_back("centering", centering);
      if (*nu_opt) overrides.emplace_back("nu", csv::format_number(nu));
      if (*reps_opt) overrides.emplace_back("replications", std::to_string(replications));
      for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
        overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
      }
      apply_settings(config, overrides);
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      const auto outcome = run_risk_experiment(config, &g_interrupted, &std::cerr);
      for (const auto& f : outcome.csv_files) std::cout << f.string() << '\n';
      for (const auto& f : outcome.svg_files) std::cout << f.string() << '\n';
      std::cout << outcome.metadata_file.string() << '\n';
      if (outcome.interrupted) return report("interrupted", "partial results flushed", kExitInterrupted);
      return 0;
    }
    if (*transform) return run_transform(direction, values);
    if (*validate_cmd) {
      const auto v = validate_correlation_matrix(read_matrix_csv(fs::path(sigma_path)));
      std::cout << v.message << '\n';
      return v.ok() ? 0 : kExitData;
    }
    if (*estimate) {
      const auto table = load_returns_csv(fs::path(est_input));
      const auto est = estimate_matrices(table, centering_from_string(est_centering));
      fs::create_directories(est_out);
      write_matrix_csv(est_out / "correlation.csv", est.correlation.entries());
      write_matrix_csv(est_out / "sign_probability.csv", est.sign_probability.entries());
      std::cout << "series=" << table.series_count() << " observations=" << table.sample_size()
                << " dropped_rows=" << table.dropped_rows
                << " jitter=" << (est.correlation.jittered() ? "yes" : "no") << '\n';
      return 0;
    }
    if (*simulate) {
      DistributionSpec dist{family_from_string(sim_family), sim_nu,
                            make_sigma(SigmaSpec::parse(sim_sigma), sim_N), sim_seed};
      const auto drawn = sample(dist, sim_n);
      std::ofstream out(sim_output);
      if (!out) throw DataError("cannot write '" + sim_output + "'");
      const auto& x = drawn.values();
      for (Index i = 0; i < x.rows(); ++i) out << (i ? "," : "") << 'S' << i;
      out << '\n';
      for (Index t = 0; t < x.cols(); ++t) {
        for (Index i = 0; i < x.rows(); ++i) out << (i ? "," : "") << csv::format_number(x(i, t));
        out << '\n';
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    return report("config", e.what(), kExitConfig);
  } catch (const DomainError& e) {
    return report("domain", e.what(), kExitConfig);
  } catch (const DataError& e) {
    return report("data", e.what(), kExitData);
  } catch (const fs::filesystem_error& e) {
    return report("data", e.what(), kExitData);
  }
  return 0;
}
