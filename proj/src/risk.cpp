#include "mgraph/risk.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

#include "mgraph/matrix_io.hpp"
#include "mgraph/pearson_procedure.hpp"
#include "mgraph/sign_procedure.hpp"

namespace mgraph {

std::string to_string(PairCounting p) { return p == PairCounting::unordered ? "unordered" : "ordered"; }

PairCounting pair_counting_from_string(const std::string& s) {
  if (s == "unordered") return PairCounting::unordered;
  if (s == "ordered") return PairCounting::ordered;
  throw ConfigError("unknown pair counting '" + s + "'");
}

std::string to_string(Procedure p) { return p == Procedure::sign ? "sign" : "pearson"; }

Procedure procedure_from_string(const std::string& s) {
  if (s == "sign") return Procedure::sign;
  if (s == "pearson") return Procedure::pearson;
  throw ConfigError("unknown procedure '" + s + "'");
}

LossSpec::LossSpec(double a, double b, PairCounting counting)
    : a_scalar_(a), b_scalar_(b), counting_(counting) {}

LossSpec::LossSpec(Eigen::MatrixXd a, Eigen::MatrixXd b, PairCounting counting)
    : a_(std::move(a)), b_(std::move(b)), counting_(counting) {
  if (a_.size() == 0 || a_.rows() != b_.rows() || a_.cols() != b_.cols())
    throw ConfigError("loss: a and b matrices must have the same non-zero shape");
}

void LossSpec::validate(Index dim) const {
  if (!is_uniform() && (a_.rows() != dim || a_.cols() != dim))
    throw ConfigError("loss: weight matrices do not match graph dimension");
  auto check = [](double a, double b) {
    if (!(a >= 0.0 && b >= 0.0)) throw ConfigError("loss: weights must be non-negative");
    if (a == 0.0 && b == 0.0) throw ConfigError("loss: a and b are both zero for a pair");
  };
  if (is_uniform()) return check(a_scalar_, b_scalar_);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = i + 1; j < dim; ++j) {
      check(a_(i, j), b_(i, j));
      if (a_(i, j) != a_(j, i) || b_(i, j) != b_(j, i)) throw ConfigError("loss: weights asymmetric");
    }
  }
}

Significance LossSpec::significance(Index dim) const {
  validate(dim);
  if (is_uniform()) return Significance(alpha_from_losses(a_scalar_, b_scalar_));
  Eigen::MatrixXd alpha = Eigen::MatrixXd::Constant(dim, dim, 0.5);
  for (Index i = 0; i < dim; ++i)
    for (Index j = i + 1; j < dim; ++j) alpha(i, j) = alpha(j, i) = alpha_from_losses(a_(i, j), b_(i, j));
  return Significance(std::move(alpha));
}

double LossSpec::max_weight(Index dim) const {
  if (is_uniform()) return std::max(a_scalar_, b_scalar_);
  double m = 0.0;
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j)
      if (i != j) m = std::max({m, a_(i, j), b_(i, j)});
  return m;
}

double loss(const AdjacencyMatrix& truth, const AdjacencyMatrix& decision, const LossSpec& spec) {
  if (truth.dim() != decision.dim()) throw ConfigError("loss: graph dimensions differ");
  const Index dim = truth.dim();
  const bool ordered = spec.counting() == PairCounting::ordered;
  double total = 0.0;
  for (Index i = 0; i < dim; ++i) {
    for (Index j = ordered ? 0 : i + 1; j < dim; ++j) {
      if (i == j) continue;
      total += edge_loss(truth.edge(i, j), decision.edge(i, j), spec.false_inclusion(i, j),
                         spec.false_exclusion(i, j));
    }
  }
  return total;
}

Index counted_pairs(Index dim, PairCounting counting) {
  const Index unordered = dim * (dim - 1) / 2;
  return counting == PairCounting::ordered ? 2 * unordered : unordered;
}

double alpha_from_losses(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("alpha_from_losses: losses must be positive");
  return b / (a + b);
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw ConfigError("grid: step must be positive");
  if (!(stop >= start)) throw ConfigError("grid: stop must be >= start");
  std::vector<double> grid;
  for (Index k = 0;; ++k) {
    const double raw = start + static_cast<double>(k) * step;
    if (raw > stop + 1e-9 * step) break;
    const double p0 = std::round(raw * 1e12) / 1e12;
    if (!(p0 > 0.0 && p0 < 1.0)) throw ConfigError("grid: thresholds must lie in (0, 1)");
    grid.push_back(p0);
  }
  return grid;
}

namespace {

// Neumaier-compensated sum in index order.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

RiskSweepResult risk_sweep(const RiskSweepConfig& config) {
  const Index dim = config.dist.sigma.dim();
  const Index reps = config.replications;
  const Index n = config.n;
  if (reps < 1) throw ConfigError("risk sweep: replications must be >= 1");
  if (n < 2) throw ConfigError("risk sweep: sample size must be >= 2");
  if (config.grid.empty()) throw ConfigError("risk sweep: empty threshold grid");
  if (config.procedures.empty()) throw ConfigError("risk sweep: no procedures requested");
  for (double p0 : config.grid)
    if (!(p0 > 0.0 && p0 < 1.0)) throw ConfigError("risk sweep: thresholds must lie in (0, 1)");
  config.loss.validate(dim);
  const Significance alpha = config.alpha ? *config.alpha : config.loss.significance(dim);
  alpha.validate(dim);

  const Index grid_size = static_cast<Index>(config.grid.size());
  const Index proc_count = static_cast<Index>(config.procedures.size());
  const auto truth_probs = SignProbabilityMatrix::from_correlation(config.dist.sigma);

  std::vector<AdjacencyMatrix> truth;
  std::vector<Eigen::MatrixXi> sign_critical;
  std::vector<double> rho0;
  for (double p0 : config.grid) {
    truth.push_back(reference_graph(truth_probs, p0));
    sign_critical.push_back(critical_value_matrix(dim, n, p0, alpha));
    rho0.push_back(correlation_from_sign_prob(p0));
  }
  const Eigen::MatrixXd pearson_critical = pearson_critical_matrix(dim, alpha);

  // losses[(proc * grid_size + g) * reps + r]
  std::vector<double> losses(static_cast<std::size_t>(proc_count * grid_size * reps), 0.0);
  std::vector<char> failed(static_cast<std::size_t>(proc_count * reps), 0);
  std::vector<char> done(static_cast<std::size_t>(reps), 0);

  auto run_replication = [&](Index r) {
    DistributionSpec dist = config.dist;
    dist.seed = derive_seed(config.dist.seed, static_cast<std::uint64_t>(r));
    const SampleMatrix drawn = sample(dist, n);
    const Eigen::MatrixXd centered = SampleMatrix(drawn.values(), config.centering).centered();
    for (Index p = 0; p < proc_count; ++p) {
      const auto slot = [&](Index g) { return static_cast<std::size_t>((p * grid_size + g) * reps + r); };
      if (config.procedures[p] == Procedure::sign) {
        const Eigen::MatrixXi v = sign_coincidence_matrix(centered);
        for (Index g = 0; g < grid_size; ++g)
          losses[slot(g)] = loss(truth[g], decide_sign(v, sign_critical[g]), config.loss);
      } else {
        Eigen::MatrixXd corr;
        try {
          corr = correlation_matrix_of(centered);
        } catch (const DataError&) {
          failed[static_cast<std::size_t>(p * reps + r)] = 1;
          continue;
        }
        for (Index g = 0; g < grid_size; ++g)
          losses[slot(g)] = loss(truth[g], decide_pearson(corr, n, rho0[g], pearson_critical), config.loss);
      }
    }
    done[static_cast<std::size_t>(r)] = 1;
  };

  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  threads = static_cast<unsigned>(std::min<Index>(threads, reps));
  std::atomic<Index> next{0};
  std::atomic<bool> stopped{false};
  auto worker = [&] {
    while (true) {
      if (config.cancel && config.cancel->load()) {
        stopped = true;
        return;
      }
      const Index r = next.fetch_add(1);
      if (r >= reps) return;
      run_replication(r);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  RiskSweepResult result;
  result.interrupted = stopped.load();
  result.completed = std::count(done.begin(), done.end(), 1);
  for (Index p = 0; p < proc_count; ++p) {
    RiskCurve curve;
    curve.procedure = config.procedures[p];
    curve.grid = config.grid;
    for (Index r = 0; r < reps; ++r) {
      if (!done[static_cast<std::size_t>(r)]) continue;
      if (failed[static_cast<std::size_t>(p * reps + r)]) ++curve.failures;
      else ++curve.replications;
    }
    const Index m = curve.replications;
    for (Index g = 0; g < grid_size; ++g) {
      CompensatedSum sum;
      for (Index r = 0; r < reps; ++r)
        if (done[static_cast<std::size_t>(r)] && !failed[static_cast<std::size_t>(p * reps + r)])
          sum.add(losses[static_cast<std::size_t>((p * grid_size + g) * reps + r)]);
      const double mean = m > 0 ? sum.value() / static_cast<double>(m) : 0.0;
      CompensatedSum sq;
      for (Index r = 0; r < reps; ++r) {
        if (done[static_cast<std::size_t>(r)] && !failed[static_cast<std::size_t>(p * reps + r)]) {
          const double d = losses[static_cast<std::size_t>((p * grid_size + g) * reps + r)] - mean;
          sq.add(d * d);
        }
      }
      const double var = m > 1 ? sq.value() / static_cast<double>(m - 1) : 0.0;
      curve.risk.push_back(mean);
      curve.std_error.push_back(m > 0 ? std::sqrt(var / static_cast<double>(m)) : 0.0);
    }
    result.curves.push_back(std::move(curve));
  }
  return result;
}

void write_risk_csv(std::ostream& out, const std::vector<RiskCurve>& curves) {
  out << "p0,procedure,risk,stderr,replications\n";
  if (curves.empty()) return;
  const std::size_t points = curves.front().grid.size();
  for (std::size_t g = 0; g < points; ++g) {
    for (const auto& c : curves) {
      out << csv::format_number(c.grid[g]) << ',' << to_string(c.procedure) << ','
          << csv::format_number(c.risk[g]) << ',' << csv::format_number(c.std_error[g]) << ','
          << c.replications << '\n';
    }
  }
}

}  // namespace mgraph
