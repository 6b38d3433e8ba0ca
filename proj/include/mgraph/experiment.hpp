#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mgraph/graph_model.hpp"
#include "mgraph/risk.hpp"
#include "mgraph/sampling.hpp"

namespace mgraph {

/// Library version string written into experiment metadata.
std::string code_version();

/// Default Σ₂-role correlation matrix shipped under data/.
std::filesystem::path default_sigma2_path();

/// Risk experiment description. Defaults are the full comparison: N = 30,
/// n = 400, three correlation structures, Gaussian and Student(3) samples,
/// alpha in {0.5, 0.1}, both procedures, p0 = 0.02..0.98 step 0.02.
///
/// A scalar alpha with no explicit losses uses a = 1 - alpha, b = alpha, the
/// unit-sum loss pair whose b / (a + b) is alpha. An empty `alphas` means
/// "derive alpha from loss_a / loss_b".
struct ExperimentConfig {
  Index N = 30;
  Index n = 400;
  std::vector<Family> families{Family::gaussian, Family::student};
  double nu = 3.0;
  std::vector<SigmaSpec> sigmas;
  std::vector<double> alphas{0.5, 0.1};
  std::optional<double> loss_a;
  std::optional<double> loss_b;
  double p0_start = 0.02;
  double p0_stop = 0.98;
  double p0_step = 0.02;
  Index replications = 500;
  std::uint64_t seed = 2013;
  std::vector<Procedure> procedures{Procedure::sign, Procedure::pearson};
  PairCounting pair_counting = PairCounting::unordered;
  Centering centering = Centering::known_zero_mean;
  std::filesystem::path out_dir = "risk-out";
  bool svg = false;
  unsigned threads = 0;

  ExperimentConfig();
};

using Setting = std::pair<std::string, std::string>;

/// Applies key=value settings in order. Setting loss_a/loss_b without an
/// alpha key in the same batch switches alpha to "from-loss".
void apply_settings(ExperimentConfig& config, const std::vector<Setting>& settings);

/// Flat key=value text, '#' comments, blank lines ignored.
std::vector<Setting> parse_settings(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

/// "default" (all defaults) or fig1..fig6: (Σ₁, 0.5), (Σ₁, 0.1), (Σ₂, 0.5),
/// (Σ₂, 0.1), (Σ₃, 0.5), (Σ₃, 0.1), each with Gaussian and Student panels.
ExperimentConfig preset_config(const std::string& name);

/// Throws ConfigError for bad values or missing files.
void validate(const ExperimentConfig& config);

/// Every field as key=value lines; loading it back reproduces the run.
std::string metadata_text(const ExperimentConfig& config);

struct ExperimentRun {
  SigmaSpec sigma;
  Family family = Family::gaussian;
  std::optional<double> alpha;  // nullopt: from the loss pair
  std::string stem;             // output file stem
};

std::vector<ExperimentRun> expand_runs(const ExperimentConfig& config);

struct ExperimentOutcome {
  std::vector<std::filesystem::path> csv_files;
  std::vector<std::filesystem::path> svg_files;
  std::filesystem::path metadata_file;
  bool interrupted = false;
};

/// Runs every (sigma, family, alpha) combination, writing one risk CSV each,
/// an optional SVG per CSV, and metadata.txt. On cancellation the partial
/// CSV is flushed and a FAILED marker written.
ExperimentOutcome run_risk_experiment(const ExperimentConfig& config,
                                      const std::atomic<bool>* cancel = nullptr,
                                      std::ostream* log = nullptr);

struct IdentifyOptions {
  std::filesystem::path input;
  Procedure method = Procedure::sign;
  std::optional<double> p0;    // sign-probability threshold
  std::optional<double> rho0;  // correlation threshold (converted for sign)
  double alpha = 0.1;
  Centering centering = Centering::sample_mean;
  std::filesystem::path out_dir = ".";
  bool strict = true;
};

struct IdentifyOutcome {
  AdjacencyMatrix graph;
  std::filesystem::path adjacency_file;
  std::filesystem::path edge_file;
  Index dropped_rows = 0;
};

/// Loads a returns CSV, identifies the market graph and writes adjacency.csv
/// and edges.txt into out_dir.
IdentifyOutcome run_identify(const IdentifyOptions& options);

}  // namespace mgraph
