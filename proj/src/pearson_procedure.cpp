#include "mgraph/pearson_procedure.hpp"

#include <map>
#include <string>

namespace mgraph {

double fisher_statistic(double r, double rho0, Index n) {
  if (!(std::abs(rho0) < 1.0)) throw DomainError("fisher_statistic: |rho0| must be < 1");
  if (n < 1) throw DomainError("fisher_statistic: n must be >= 1");
  if (!(std::abs(r) < 1.0)) throw DomainError("fisher_statistic: infinite statistic at |r| = 1");
  return std::sqrt(static_cast<double>(n)) * (std::atanh(r) - std::atanh(rho0));
}

PearsonTestSpec PearsonTestSpec::make(Index n, double rho0, double alpha) {
  if (n < 1) throw ConfigError("pearson test: sample size must be >= 1");
  if (!(std::abs(rho0) < 1.0)) throw ConfigError("pearson test: threshold rho0 must lie in (-1, 1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("pearson test: alpha must lie in (0, 1)");
  return PearsonTestSpec{rho0, alpha, n, normal_quantile(1.0 - alpha)};
}

bool pearson_test_rejects(double r, const PearsonTestSpec& spec) {
  if (r >= 1.0) return true;
  if (r <= -1.0) return false;
  return fisher_statistic(r, spec.rho0, spec.n) > spec.c;
}

Eigen::MatrixXd correlation_matrix_of(const Eigen::MatrixXd& centered) {
  const Eigen::VectorXd norms = centered.rowwise().norm();
  for (Index i = 0; i < norms.size(); ++i) {
    if (norms(i) == 0.0) throw DataError("degenerate series " + std::to_string(i) + ": all values zero");
  }
  const Eigen::VectorXd inv = norms.cwiseInverse();
  Eigen::MatrixXd r = inv.asDiagonal() * (centered * centered.transpose()) * inv.asDiagonal();
  r = r.cwiseMax(-1.0).cwiseMin(1.0);
  r.diagonal().setOnes();
  return r;
}

Eigen::MatrixXd pearson_critical_matrix(Index dim, const Significance& alpha) {
  alpha.validate(dim);
  std::map<double, double> cache;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = i + 1; j < dim; ++j) {
      const double a = alpha.at(i, j);
      auto it = cache.find(a);
      if (it == cache.end()) it = cache.emplace(a, normal_quantile(1.0 - a)).first;
      c(i, j) = c(j, i) = it->second;
    }
  }
  return c;
}

AdjacencyMatrix decide_pearson(const Eigen::MatrixXd& r, Index n, double rho0,
                               const Eigen::MatrixXd& critical) {
  if (!(std::abs(rho0) < 1.0)) throw ConfigError("pearson procedure: threshold rho0 must lie in (-1, 1)");
  if (n < 1) throw ConfigError("pearson procedure: sample size must be >= 1");
  AdjacencyMatrix g(r.rows());
  for (Index i = 0; i < g.dim(); ++i) {
    for (Index j = i + 1; j < g.dim(); ++j) {
      const PearsonTestSpec spec{rho0, 0.0, n, critical(i, j)};
      g.set_edge(i, j, pearson_test_rejects(r(i, j), spec));
    }
  }
  return g;
}

AdjacencyMatrix identify_pearson_from_correlations(const Eigen::MatrixXd& r, Index n, double rho0,
                                                   const Significance& alpha) {
  if (!(std::abs(rho0) < 1.0)) throw ConfigError("pearson procedure: threshold rho0 must lie in (-1, 1)");
  return decide_pearson(r, n, rho0, pearson_critical_matrix(r.rows(), alpha));
}

AdjacencyMatrix identify_pearson(const SampleMatrix& sample, double rho0, const Significance& alpha) {
  return identify_pearson_from_correlations(correlation_matrix_of(sample.centered()),
                                            sample.sample_size(), rho0, alpha);
}

}  // namespace mgraph
