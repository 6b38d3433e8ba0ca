#pragma once

#include <Eigen/Dense>

#include "mgraph/graph_model.hpp"
#include "mgraph/significance.hpp"

namespace mgraph {

/// Contingency counts of the sign indicators u(t) = [x(t) > 0] of two series.
struct SignCounts {
  Index t11 = 0;
  Index t00 = 0;
  Index t10 = 0;
  Index t01 = 0;
  Index v = 0;  // t11 + t00, the number of sign coincidences
  Index n = 0;

  friend bool operator==(const SignCounts&, const SignCounts&) = default;
};

template <typename DerivedA, typename DerivedB>
SignCounts sign_counts(const Eigen::DenseBase<DerivedA>& xi, const Eigen::DenseBase<DerivedB>& xj) {
  if (xi.size() != xj.size()) throw ConfigError("sign_counts: series lengths differ");
  if (xi.size() < 1) throw ConfigError("sign_counts: empty series");
  SignCounts c;
  c.n = xi.size();
  for (Index t = 0; t < c.n; ++t) {
    // Zero maps to indicator 0.
    const bool ui = xi.derived().coeff(t) > 0;
    const bool uj = xj.derived().coeff(t) > 0;
    if (ui && uj) ++c.t11;
    else if (!ui && !uj) ++c.t00;
    else if (ui) ++c.t10;
    else ++c.t01;
  }
  c.v = c.t11 + c.t00;
  return c;
}

/// Upper binomial tail P(V >= c) for V ~ Bin(n, p0).
///
/// Terms are generated in long double by the ratio recurrence outwards from
/// the mode, whose mass is evaluated in log space, then summed from the far
/// tail inwards. tail(0) = 1 and tail(n + 1) = 0 exactly.
double binomial_tail(Index n, double p0, Index c);

/// Minimal c in [0, n + 1] with binomial_tail(n, p0, c) <= alpha.
///
/// Tails within a relative 1e-13 of alpha count as equal to it, so exact
/// ties (e.g. 1/2 for odd n at p0 = 1/2) are not lost to rounding.
Index critical_value(Index n, double p0, double alpha);

/// Non-randomized sign edge test: reject (edge present) iff V > c.
/// c = n + 1 encodes an empty rejection region.
struct SignTestSpec {
  double p0 = 0.5;
  double alpha = 0.05;
  Index n = 0;
  Index c = 0;

  /// Validates p0, alpha in (0, 1) and n >= 1 (ConfigError) and derives c.
  static SignTestSpec make(Index n, double p0, double alpha);
};

inline bool sign_test_rejects(Index v, const SignTestSpec& spec) { return v > spec.c; }

template <typename DerivedA, typename DerivedB>
int edge_test_sign(const Eigen::DenseBase<DerivedA>& xi, const Eigen::DenseBase<DerivedB>& xj,
                   const SignTestSpec& spec) {
  if (xi.size() != spec.n) throw ConfigError("edge_test_sign: series length differs from spec.n");
  return sign_test_rejects(sign_counts(xi, xj).v, spec) ? 1 : 0;
}

/// V_{i,j} for all pairs of rows of `centered` (N x n), via indicator Gram
/// products U U^T + (1 - U)(1 - U)^T. The diagonal holds n.
Eigen::MatrixXi sign_coincidence_matrix(const Eigen::MatrixXd& centered);

/// Critical value c_{i,j} for every pair (diagonal left at 0).
Eigen::MatrixXi critical_value_matrix(Index dim, Index n, double p0, const Significance& alpha);

/// Edge (i, j) iff coincidences(i, j) > critical(i, j).
AdjacencyMatrix decide_sign(const Eigen::MatrixXi& coincidences, const Eigen::MatrixXi& critical);

/// Sign procedure on precomputed coincidence counts.
AdjacencyMatrix identify_sign_from_counts(const Eigen::MatrixXi& coincidences, Index n, double p0,
                                          const Significance& alpha);

/// Sign-similarity market graph identification: edge (i, j) iff the sign
/// edge test at threshold p0 and level alpha_{i,j} rejects on series i, j.
AdjacencyMatrix identify_sign(const SampleMatrix& sample, double p0, const Significance& alpha);

}  // namespace mgraph
