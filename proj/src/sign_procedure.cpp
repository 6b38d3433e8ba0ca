#include "mgraph/sign_procedure.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace mgraph {

namespace {

void check_tail_args(Index n, double p0) {
  if (n < 0) throw DomainError("binomial: negative n");
  if (!(p0 > 0.0 && p0 < 1.0)) throw DomainError("binomial: p0 outside (0, 1)");
}

// Probability masses of Bin(n, p) for k = 0..n. Anchored at the heavier end
// and filled by the ratio recurrence, which keeps dyadic cases (p = 1/2)
// exact so that tails equal to alpha compare as ties. Falls back to a
// log-gamma anchor at the mode when the end term would underflow.
std::vector<long double> binomial_pmf(Index n, long double p) {
  std::vector<long double> pmf(static_cast<std::size_t>(n) + 1, 0.0L);
  const long double q = 1.0L - p;
  const bool from_top = p >= 0.5L;
  const long double log_end = n * std::log(from_top ? p : q);
  if (log_end > std::log(std::numeric_limits<long double>::min()) + 64.0L) {
    if (from_top) {
      pmf[n] = std::pow(p, n);
      for (Index k = n; k > 0; --k) pmf[k - 1] = pmf[k] * (k * q) / ((n - k + 1) * p);
    } else {
      pmf[0] = std::pow(q, n);
      for (Index k = 0; k < n; ++k) pmf[k + 1] = pmf[k] * ((n - k) * p) / ((k + 1) * q);
    }
    return pmf;
  }
  Index mode = static_cast<Index>(std::floor((n + 1) * p));
  if (mode > n) mode = n;
  const long double log_mode = std::lgamma(static_cast<long double>(n) + 1) -
                               std::lgamma(static_cast<long double>(mode) + 1) -
                               std::lgamma(static_cast<long double>(n - mode) + 1) +
                               mode * std::log(p) + (n - mode) * std::log1p(-p);
  pmf[mode] = std::exp(log_mode);
  for (Index k = mode; k < n; ++k) pmf[k + 1] = pmf[k] * ((n - k) * p) / ((k + 1) * q);
  for (Index k = mode; k > 0; --k) pmf[k - 1] = pmf[k] * (k * q) / ((n - k + 1) * p);
  return pmf;
}

}  // namespace

double binomial_tail(Index n, double p0, Index c) {
  check_tail_args(n, p0);
  if (c < 0 || c > n + 1) throw DomainError("binomial_tail: c outside [0, n + 1]");
  if (c == 0) return 1.0;
  if (c == n + 1) return 0.0;
  const auto pmf = binomial_pmf(n, p0);
  long double tail = 0.0L;
  for (Index k = n; k >= c; --k) tail += pmf[k];
  return static_cast<double>(std::min(tail, 1.0L));
}

Index critical_value(Index n, double p0, double alpha) {
  if (n < 1) throw DomainError("critical_value: n must be >= 1");
  check_tail_args(n, p0);
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("critical_value: alpha outside (0, 1)");
  const auto pmf = binomial_pmf(n, p0);
  const long double limit = alpha;
  // tail(c) is non-increasing in c; walk down from c = n + 1 while it stays <= alpha.
  long double tail = 0.0L;
  for (Index c = n; c >= 0; --c) {
    tail += pmf[c];
    if (tail > limit) return c + 1;
  }
  return 0;
}

SignTestSpec SignTestSpec::make(Index n, double p0, double alpha) {
  if (n < 1) throw ConfigError("sign test: sample size must be >= 1");
  if (!(p0 > 0.0 && p0 < 1.0)) throw ConfigError("sign test: threshold p0 must lie in (0, 1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("sign test: alpha must lie in (0, 1)");
  return SignTestSpec{p0, alpha, n, critical_value(n, p0, alpha)};
}

Eigen::MatrixXi sign_coincidence_matrix(const Eigen::MatrixXd& centered) {
  const Eigen::MatrixXd up = (centered.array() > 0.0).cast<double>().matrix();
  const Eigen::MatrixXd down = (1.0 - up.array()).matrix();
  // Integer-valued products below 2^53 are exact in double.
  const Eigen::MatrixXd v = up * up.transpose() + down * down.transpose();
  return v.array().round().cast<int>().matrix();
}

Eigen::MatrixXi critical_value_matrix(Index dim, Index n, double p0, const Significance& alpha) {
  if (!(p0 > 0.0 && p0 < 1.0)) throw ConfigError("sign procedure: threshold p0 must lie in (0, 1)");
  alpha.validate(dim);
  std::map<double, Index> cache;  // alpha -> c
  auto lookup = [&](double a) {
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, SignTestSpec::make(n, p0, a).c).first;
    return static_cast<int>(it->second);
  };
  Eigen::MatrixXi c = Eigen::MatrixXi::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = i + 1; j < dim; ++j) c(i, j) = c(j, i) = lookup(alpha.at(i, j));
  return c;
}

AdjacencyMatrix decide_sign(const Eigen::MatrixXi& coincidences, const Eigen::MatrixXi& critical) {
  AdjacencyMatrix g(coincidences.rows());
  for (Index i = 0; i < g.dim(); ++i)
    for (Index j = i + 1; j < g.dim(); ++j) g.set_edge(i, j, coincidences(i, j) > critical(i, j));
  return g;
}

AdjacencyMatrix identify_sign_from_counts(const Eigen::MatrixXi& coincidences, Index n, double p0,
                                          const Significance& alpha) {
  return decide_sign(coincidences, critical_value_matrix(coincidences.rows(), n, p0, alpha));
}

AdjacencyMatrix identify_sign(const SampleMatrix& sample, double p0, const Significance& alpha) {
  return identify_sign_from_counts(sign_coincidence_matrix(sample.centered()), sample.sample_size(),
                                   p0, alpha);
}

}  // namespace mgraph
