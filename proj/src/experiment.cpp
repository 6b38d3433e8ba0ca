#include "mgraph/experiment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "mgraph/ingest.hpp"
#include "mgraph/matrix_io.hpp"
#include "mgraph/pearson_procedure.hpp"
#include "mgraph/sign_procedure.hpp"
#include "mgraph/svg_plot.hpp"

namespace fs = std::filesystem;

namespace mgraph {

std::string code_version() { return MGRAPH_VERSION; }

fs::path default_sigma2_path() { return fs::path(MGRAPH_DATA_DIR) / "sigma2_role.csv"; }

ExperimentConfig::ExperimentConfig()
    : sigmas{SigmaSpec{}, SigmaSpec{SigmaSpec::Kind::from_file, 0.0, default_sigma2_path()},
             SigmaSpec{SigmaSpec::Kind::equicorrelated, 0.9, {}}} {}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double to_double(const std::string& key, const std::string& value) {
  const auto v = csv::parse_number(trim(value));
  if (!v || !std::isfinite(*v)) throw ConfigError("config: " + key + " expects a number, got '" + value + "'");
  return *v;
}

long long to_integer(const std::string& key, const std::string& value) {
  const double v = to_double(key, value);
  if (v != std::floor(v) || std::abs(v) > 9e15) throw ConfigError("config: " + key + " expects an integer");
  return static_cast<long long>(v);
}

bool to_bool(const std::string& key, const std::string& value) {
  const auto v = trim(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config: " + key + " expects true/false");
}

void apply_one(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "N") c.N = to_integer(key, value);
  else if (key == "n") c.n = to_integer(key, value);
  else if (key == "family") {
    c.families.clear();
    for (const auto& f : split_list(value)) c.families.push_back(family_from_string(f));
  } else if (key == "nu") c.nu = to_double(key, value);
  else if (key == "sigma") {
    c.sigmas.clear();
    for (const auto& s : split_list(value)) c.sigmas.push_back(SigmaSpec::parse(s));
  } else if (key == "alpha") {
    c.alphas.clear();
    if (trim(value) != "from-loss")
      for (const auto& a : split_list(value)) c.alphas.push_back(to_double(key, a));
  } else if (key == "loss_a") {
    c.loss_a = trim(value) == "none" ? std::nullopt : std::optional<double>(to_double(key, value));
  } else if (key == "loss_b") {
    c.loss_b = trim(value) == "none" ? std::nullopt : std::optional<double>(to_double(key, value));
  } else if (key == "p0_start") c.p0_start = to_double(key, value);
  else if (key == "p0_stop") c.p0_stop = to_double(key, value);
  else if (key == "p0_step") c.p0_step = to_double(key, value);
  else if (key == "replications") c.replications = to_integer(key, value);
  else if (key == "seed") {
    try {
      std::size_t used = 0;
      c.seed = std::stoull(trim(value), &used);
      if (used != trim(value).size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("config: seed expects an unsigned 64-bit integer");
    }
  } else if (key == "procedures") {
    c.procedures.clear();
    for (const auto& p : split_list(value)) c.procedures.push_back(procedure_from_string(p));
  } else if (key == "pair_counting") c.pair_counting = pair_counting_from_string(trim(value));
  else if (key == "centering") c.centering = centering_from_string(trim(value));
  else if (key == "out_dir") c.out_dir = trim(value);
  else if (key == "svg") c.svg = to_bool(key, value);
  else if (key == "threads") {
    const auto t = to_integer(key, value);
    if (t < 0) throw ConfigError("config: threads must be >= 0");
    c.threads = static_cast<unsigned>(t);
  } else if (key == "code_version") {
    // informational
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) out += (k ? "," : "") + csv::format_number(values[k]);
  return out;
}

}  // namespace

void apply_settings(ExperimentConfig& config, const std::vector<Setting>& settings) {
  bool alpha_given = false, loss_given = false;
  for (const auto& [key, value] : settings) {
    apply_one(config, key, value);
    alpha_given |= key == "alpha";
    loss_given |= key == "loss_a" || key == "loss_b";
  }
  if (loss_given && !alpha_given) config.alphas.clear();
}

std::vector<Setting> parse_settings(std::istream& in) {
  std::vector<Setting> settings;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(line_no) + " is not key=value");
    settings.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return settings;
}

ExperimentConfig load_config(const fs::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  apply_settings(base, parse_settings(in));
  return base;
}

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig c;
  if (name == "default") return c;
  const SigmaSpec sigma1{};
  const SigmaSpec sigma2{SigmaSpec::Kind::from_file, 0.0, default_sigma2_path()};
  const SigmaSpec sigma3{SigmaSpec::Kind::equicorrelated, 0.9, {}};
  if (name.size() == 4 && name.rfind("fig", 0) == 0 && name[3] >= '1' && name[3] <= '6') {
    const int k = name[3] - '1';
    const SigmaSpec sigmas[] = {sigma1, sigma2, sigma3};
    c.sigmas = {sigmas[k / 2]};
    c.alphas = {k % 2 == 0 ? 0.5 : 0.1};
    c.out_dir = name;
    return c;
  }
  throw ConfigError("unknown preset '" + name + "' (expected default or fig1..fig6)");
}

void validate(const ExperimentConfig& c) {
  if (c.N < 2) throw ConfigError("config: N must be >= 2");
  if (c.n < 2) throw ConfigError("config: n must be >= 2");
  if (c.replications < 1) throw ConfigError("config: replications must be >= 1");
  if (c.families.empty()) throw ConfigError("config: no distribution family");
  if (c.sigmas.empty()) throw ConfigError("config: no sigma");
  if (c.procedures.empty()) throw ConfigError("config: no procedures");
  for (Family f : c.families)
    if (f == Family::student && !(c.nu > 0.0)) throw ConfigError("config: nu must be positive");
  for (double a : c.alphas)
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("config: alpha must lie in (0, 1)");
  if (c.loss_a.has_value() != c.loss_b.has_value())
    throw ConfigError("config: loss_a and loss_b must be given together");
  if (c.loss_a) {
    if (!(*c.loss_a >= 0.0 && *c.loss_b >= 0.0) || (*c.loss_a == 0.0 && *c.loss_b == 0.0))
      throw ConfigError("config: losses must be non-negative and not both zero");
  }
  if (c.alphas.empty()) {
    if (!c.loss_a) throw ConfigError("config: alpha=from-loss requires loss_a and loss_b");
    if (!(*c.loss_a > 0.0 && *c.loss_b > 0.0))
      throw ConfigError("config: alpha=from-loss requires positive losses");
  }
  make_grid(c.p0_start, c.p0_stop, c.p0_step);
  for (const auto& s : c.sigmas)
    if (s.kind == SigmaSpec::Kind::from_file && !fs::exists(s.path))
      throw ConfigError("config: sigma file '" + s.path.string() + "' does not exist");
}

std::string metadata_text(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "# mgraph risk experiment\n";
  os << "code_version=" << code_version() << '\n';
  os << "N=" << c.N << '\n' << "n=" << c.n << '\n';
  os << "family=";
  for (std::size_t k = 0; k < c.families.size(); ++k) os << (k ? "," : "") << to_string(c.families[k]);
  os << '\n' << "nu=" << csv::format_number(c.nu) << '\n';
  os << "sigma=";
  for (std::size_t k = 0; k < c.sigmas.size(); ++k) {
    SigmaSpec s = c.sigmas[k];
    if (s.kind == SigmaSpec::Kind::from_file) s.path = fs::absolute(s.path);
    os << (k ? "," : "") << s.to_string();
  }
  os << '\n' << "alpha=" << (c.alphas.empty() ? "from-loss" : join_numbers(c.alphas)) << '\n';
  os << "loss_a=" << (c.loss_a ? csv::format_number(*c.loss_a) : "none") << '\n';
  os << "loss_b=" << (c.loss_b ? csv::format_number(*c.loss_b) : "none") << '\n';
  os << "p0_start=" << csv::format_number(c.p0_start) << '\n';
  os << "p0_stop=" << csv::format_number(c.p0_stop) << '\n';
  os << "p0_step=" << csv::format_number(c.p0_step) << '\n';
  os << "replications=" << c.replications << '\n' << "seed=" << c.seed << '\n';
  os << "procedures=";
  for (std::size_t k = 0; k < c.procedures.size(); ++k) os << (k ? "," : "") << to_string(c.procedures[k]);
  os << '\n' << "pair_counting=" << to_string(c.pair_counting) << '\n';
  os << "centering=" << to_string(c.centering) << '\n';
  os << "out_dir=" << fs::absolute(c.out_dir).string() << '\n';
  os << "svg=" << (c.svg ? "true" : "false") << '\n';
  os << "threads=" << c.threads << '\n';
  return os.str();
}

std::vector<ExperimentRun> expand_runs(const ExperimentConfig& c) {
  std::vector<std::optional<double>> alphas;
  for (double a : c.alphas) alphas.emplace_back(a);
  if (alphas.empty()) alphas.emplace_back(std::nullopt);
  std::vector<ExperimentRun> runs;
  for (const auto& sigma : c.sigmas) {
    for (Family family : c.families) {
      for (const auto& alpha : alphas) {
        std::string stem = "risk_" + sigma.label() + "_" + to_string(family);
        if (family == Family::student) stem += "_nu" + csv::format_number(c.nu);
        if (alpha) stem += "_alpha" + csv::format_number(*alpha);
        else stem += "_loss" + csv::format_number(*c.loss_a) + "-" + csv::format_number(*c.loss_b);
        runs.push_back({sigma, family, alpha, stem});
      }
    }
  }
  return runs;
}

namespace {

void write_svg(const fs::path& path, const ExperimentRun& run, const ExperimentConfig& c,
               const std::vector<RiskCurve>& curves) {
  std::vector<PlotSeries> series;
  for (const auto& curve : curves) {
    PlotSeries s;
    s.x = curve.grid;
    s.y = curve.risk;
    if (curve.procedure == Procedure::pearson) {
      s.label = "Pearson correlation network";
      s.style = LineStyle::solid;
      s.color = "#1f3a93";
    } else {
      s.label = "sign similarity network";
      s.style = LineStyle::dashed;
      s.color = "#c0392b";
    }
    series.push_back(std::move(s));
  }
  PlotOptions options;
  std::ostringstream title;
  title << "Risk(p0): " << run.sigma.label() << ", " << to_string(run.family);
  if (run.family == Family::student) title << " (nu=" << csv::format_number(c.nu) << ")";
  if (run.alpha) title << ", alpha=" << csv::format_number(*run.alpha);
  title << ", N=" << c.N << ", n=" << c.n << ", R=" << c.replications;
  options.title = title.str();
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_line_chart_svg(out, series, options);
}

}  // namespace

ExperimentOutcome run_risk_experiment(const ExperimentConfig& config, const std::atomic<bool>* cancel,
                                      std::ostream* log) {
  validate(config);
  fs::create_directories(config.out_dir);
  const fs::path failed_marker = config.out_dir / "FAILED";
  fs::remove(failed_marker);

  ExperimentOutcome outcome;
  outcome.metadata_file = config.out_dir / "metadata.txt";
  std::string notes;
  auto write_metadata = [&] {
    std::ofstream meta(outcome.metadata_file);
    if (!meta) throw DataError("cannot write '" + outcome.metadata_file.string() + "'");
    meta << metadata_text(config) << notes;
  };
  write_metadata();

  const auto grid = make_grid(config.p0_start, config.p0_stop, config.p0_step);
  const auto runs = expand_runs(config);
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& run = runs[k];
    CorrelationMatrix sigma = make_sigma(run.sigma, config.N);

    RiskSweepConfig sweep(DistributionSpec{run.family, config.nu, sigma, config.seed});
    sweep.n = config.n;
    sweep.grid = grid;
    if (config.loss_a) {
      sweep.loss = LossSpec(*config.loss_a, *config.loss_b, config.pair_counting);
    } else {
      sweep.loss = LossSpec(1.0 - *run.alpha, *run.alpha, config.pair_counting);
    }
    if (run.alpha) sweep.alpha = Significance(*run.alpha);
    sweep.procedures = config.procedures;
    sweep.replications = config.replications;
    sweep.threads = config.threads;
    sweep.centering = config.centering;
    sweep.cancel = cancel;

    const auto result = risk_sweep(sweep);
    const fs::path csv_path = config.out_dir / (run.stem + ".csv");
    {
      std::ofstream out(csv_path);
      if (!out) throw DataError("cannot write '" + csv_path.string() + "'");
      write_risk_csv(out, result.curves);
    }
    outcome.csv_files.push_back(csv_path);
    std::ostringstream note;
    note << "# output " << csv_path.filename().string() << ": dim=" << sigma.dim()
         << " sigma_jitter=" << (sigma.jittered() ? "yes" : "no") << " completed=" << result.completed;
    for (const auto& curve : result.curves) note << ' ' << to_string(curve.procedure) << "_failures=" << curve.failures;
    notes += note.str() + '\n';
    if (config.svg) {
      const fs::path svg_path = config.out_dir / (run.stem + ".svg");
      write_svg(svg_path, run, config, result.curves);
      outcome.svg_files.push_back(svg_path);
    }
    if (log) *log << "[" << k + 1 << "/" << runs.size() << "] " << run.stem << ": " << result.completed
                  << " replications\n";
    if (result.interrupted) {
      outcome.interrupted = true;
      std::ofstream marker(failed_marker);
      marker << "interrupted during " << run.stem << " after " << result.completed << " of "
             << config.replications << " replications (" << k << " of " << runs.size()
             << " combinations complete)\n";
      break;
    }
  }
  write_metadata();
  return outcome;
}

IdentifyOutcome run_identify(const IdentifyOptions& options) {
  if (options.p0.has_value() == options.rho0.has_value())
    throw ConfigError("identify: give exactly one of p0 or rho0");
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw ConfigError("identify: alpha must lie in (0, 1)");
  double p0 = 0.0, rho0 = 0.0;
  if (options.p0) {
    if (!(*options.p0 > 0.0 && *options.p0 < 1.0)) throw ConfigError("identify: p0 must lie in (0, 1)");
    p0 = *options.p0;
    rho0 = correlation_from_sign_prob(p0);
  } else {
    if (!(std::abs(*options.rho0) < 1.0)) throw ConfigError("identify: rho0 must lie in (-1, 1)");
    rho0 = *options.rho0;
    p0 = sign_prob_from_correlation(rho0);
  }

  LoadOptions load;
  load.strict = options.strict;
  const ReturnsTable table = load_returns_csv(options.input, load);
  const SampleMatrix sample(table.values, options.centering);

  IdentifyOutcome outcome;
  outcome.dropped_rows = table.dropped_rows;
  outcome.graph = options.method == Procedure::sign ? identify_sign(sample, p0, options.alpha)
                                                    : identify_pearson(sample, rho0, options.alpha);
  fs::create_directories(options.out_dir);
  outcome.adjacency_file = options.out_dir / "adjacency.csv";
  outcome.edge_file = options.out_dir / "edges.txt";
  std::ofstream adj(outcome.adjacency_file);
  std::ofstream edges(outcome.edge_file);
  if (!adj || !edges) throw DataError("identify: cannot write outputs into '" + options.out_dir.string() + "'");
  write_adjacency_csv(adj, outcome.graph);
  write_edge_list(edges, outcome.graph);
  return outcome;
}

}  // namespace mgraph
