#pragma once

#include <atomic>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mgraph/graph_model.hpp"
#include "mgraph/sampling.hpp"
#include "mgraph/significance.hpp"

namespace mgraph {

enum class PairCounting { unordered, ordered };

std::string to_string(PairCounting p);
PairCounting pair_counting_from_string(const std::string& s);

/// Additive loss weights: a_{i,j} for a false inclusion of edge (i, j),
/// b_{i,j} for a false exclusion. Scalars broadcast to every pair.
class LossSpec {
 public:
  LossSpec(double a = 1.0, double b = 1.0, PairCounting counting = PairCounting::unordered);
  LossSpec(Eigen::MatrixXd a, Eigen::MatrixXd b, PairCounting counting = PairCounting::unordered);

  double false_inclusion(Index i, Index j) const { return a_.size() ? a_(i, j) : a_scalar_; }
  double false_exclusion(Index i, Index j) const { return b_.size() ? b_(i, j) : b_scalar_; }
  PairCounting counting() const { return counting_; }
  bool is_uniform() const { return a_.size() == 0; }

  /// Throws ConfigError on negative weights, a = b = 0 for some pair,
  /// asymmetric or wrongly sized matrices.
  void validate(Index dim) const;

  /// Significance levels alpha_{i,j} = b_{i,j} / (a_{i,j} + b_{i,j}).
  Significance significance(Index dim) const;

  /// Largest weight over counted pairs, for risk bounds.
  double max_weight(Index dim) const;

 private:
  Eigen::MatrixXd a_, b_;
  double a_scalar_ = 1.0;
  double b_scalar_ = 1.0;
  PairCounting counting_ = PairCounting::unordered;
};

/// Loss of deciding `decision` for one pair whose true state is `truth`.
inline double edge_loss(bool truth, bool decision, double a, double b) {
  if (!truth && decision) return a;
  if (truth && !decision) return b;
  return 0.0;
}

/// w(S, Q): total loss of decision Q when S is the true graph.
double loss(const AdjacencyMatrix& truth, const AdjacencyMatrix& decision, const LossSpec& spec);

/// Number of pairs the loss sums over: N(N-1)/2 unordered, N(N-1) ordered.
Index counted_pairs(Index dim, PairCounting counting);

/// alpha = b / (a + b); DomainError unless a, b > 0.
double alpha_from_losses(double a, double b);

enum class Procedure { sign, pearson };

std::string to_string(Procedure p);
Procedure procedure_from_string(const std::string& s);

struct RiskCurve {
  Procedure procedure = Procedure::sign;
  std::vector<double> grid;       // thresholds p0
  std::vector<double> risk;       // mean loss per grid point
  std::vector<double> std_error;  // Monte Carlo standard error per grid point
  Index replications = 0;         // replications contributing to the estimate
  Index failures = 0;             // replications where the procedure failed
};

struct RiskSweepConfig {
  explicit RiskSweepConfig(DistributionSpec distribution) : dist(std::move(distribution)) {}

  DistributionSpec dist;  // dist.seed is the master seed
  Index n = 400;
  std::vector<double> grid;
  LossSpec loss;
  std::optional<Significance> alpha;  // defaults to the loss-derived levels
  std::vector<Procedure> procedures{Procedure::sign, Procedure::pearson};
  Index replications = 500;
  unsigned threads = 1;  // 0 means hardware concurrency
  Centering centering = Centering::known_zero_mean;
  const std::atomic<bool>* cancel = nullptr;
};

struct RiskSweepResult {
  std::vector<RiskCurve> curves;  // one per requested procedure, same order
  Index completed = 0;            // replications finished
  bool interrupted = false;
};

/// Monte Carlo risk of each procedure along the threshold grid.
///
/// Replication r draws one sample from dist with seed derive_seed(master, r)
/// and evaluates every grid point and procedure on it, so procedures are
/// compared on identical data. The true graph at p0 is the reference graph of
/// the arcsine-transformed Σ; the Pearson procedure runs at
/// rho0 = sin(pi (p0 - 1/2)). Losses are stored per replication and reduced
/// in index order, so the result does not depend on the thread count.
RiskSweepResult risk_sweep(const RiskSweepConfig& config);

/// Thresholds start, start + step, ... up to stop (inclusive), each rounded
/// to 12 decimals so that e.g. 0.5 lands exactly on 0.5. ConfigError if any
/// lies outside (0, 1).
std::vector<double> make_grid(double start, double stop, double step);

/// "p0,procedure,risk,stderr,replications", one row per grid point and
/// procedure.
void write_risk_csv(std::ostream& out, const std::vector<RiskCurve>& curves);

}  // namespace mgraph
