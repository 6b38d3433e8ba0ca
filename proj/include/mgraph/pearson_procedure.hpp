#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "mgraph/graph_model.hpp"
#include "mgraph/normal_quantile.hpp"
#include "mgraph/significance.hpp"

namespace mgraph {

/// Sample Pearson correlation sum x_i x_j / sqrt(sum x_i^2 sum x_j^2).
///
/// With Centering::known_zero_mean the raw (uncentered) sums are used;
/// sample_mean subtracts each series' mean first. Throws DataError when a
/// series is identically zero after centering.
template <typename DerivedA, typename DerivedB>
double sample_correlation(const Eigen::MatrixBase<DerivedA>& xi, const Eigen::MatrixBase<DerivedB>& xj,
                          Centering centering = Centering::known_zero_mean) {
  if (xi.size() != xj.size()) throw ConfigError("sample_correlation: series lengths differ");
  if (xi.size() < 2) throw ConfigError("sample_correlation: need at least 2 observations");
  Eigen::VectorXd a = xi.template cast<double>().reshaped();
  Eigen::VectorXd b = xj.template cast<double>().reshaped();
  if (centering == Centering::sample_mean) {
    a.array() -= a.mean();
    b.array() -= b.mean();
  }
  const double saa = a.squaredNorm();
  const double sbb = b.squaredNorm();
  if (saa == 0.0 || sbb == 0.0) throw DataError("sample_correlation: degenerate (all-zero) series");
  return std::clamp(a.dot(b) / std::sqrt(saa * sbb), -1.0, 1.0);
}

/// Fisher statistic sqrt(n) (atanh r - atanh rho0).
/// Throws DomainError when |r| >= 1 (infinite statistic) or |rho0| >= 1.
double fisher_statistic(double r, double rho0, Index n);

/// Edge test: reject iff fisher_statistic(r, rho0, n) > c, c the (1 - alpha)
/// standard normal quantile. r = 1 always rejects and r = -1 never does.
struct PearsonTestSpec {
  double rho0 = 0.0;
  double alpha = 0.05;
  Index n = 0;
  double c = 0.0;

  static PearsonTestSpec make(Index n, double rho0, double alpha);
};

bool pearson_test_rejects(double r, const PearsonTestSpec& spec);

/// r_{i,j} for all pairs of rows of `centered` via the Gram matrix.
/// Throws DataError naming the first all-zero row.
Eigen::MatrixXd correlation_matrix_of(const Eigen::MatrixXd& centered);

/// Normal quantile c_{i,j} = z_{1 - alpha_{i,j}} for every pair.
Eigen::MatrixXd pearson_critical_matrix(Index dim, const Significance& alpha);

/// Edge (i, j) iff the Pearson edge test with critical(i, j) rejects on r(i, j).
AdjacencyMatrix decide_pearson(const Eigen::MatrixXd& r, Index n, double rho0,
                               const Eigen::MatrixXd& critical);

AdjacencyMatrix identify_pearson_from_correlations(const Eigen::MatrixXd& r, Index n, double rho0,
                                                   const Significance& alpha);

/// Pearson-network market graph identification at correlation threshold rho0.
AdjacencyMatrix identify_pearson(const SampleMatrix& sample, double rho0, const Significance& alpha);

}  // namespace mgraph
