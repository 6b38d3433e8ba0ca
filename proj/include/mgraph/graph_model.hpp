#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "mgraph/errors.hpp"

namespace mgraph {

using Index = Eigen::Index;

/// Offset added once to the diagonal when a Cholesky factorization fails.
inline constexpr double kCholeskyJitter = 1e-10;
/// Absolute tolerance for symmetry and unit-diagonal checks.
inline constexpr double kSymmetryTolerance = 1e-12;

/// Sign-coincidence probability of a centered elliptical pair with correlation
/// `rho`: p = 1/2 + asin(rho) / pi.
template <typename Scalar>
Scalar sign_prob_from_correlation(Scalar rho) {
  if (!(rho >= Scalar(-1) && rho <= Scalar(1))) {
    throw DomainError("correlation outside [-1, 1]");
  }
  return Scalar(0.5) + std::asin(rho) / std::numbers::pi_v<Scalar>;
}

/// Inverse of sign_prob_from_correlation: rho = sin(pi (p - 1/2)).
template <typename Scalar>
Scalar correlation_from_sign_prob(Scalar p) {
  if (!(p >= Scalar(0) && p <= Scalar(1))) {
    throw DomainError("probability outside [0, 1]");
  }
  return std::sin(std::numbers::pi_v<Scalar> * (p - Scalar(0.5)));
}

enum class CorrelationDiagnostic {
  ok,
  not_square,
  non_finite,
  asymmetric,
  non_unit_diagonal,
  out_of_range,
  indefinite,
};

std::string to_string(CorrelationDiagnostic d);

struct CorrelationValidation {
  CorrelationDiagnostic diagnostic = CorrelationDiagnostic::ok;
  std::string message;
  bool jittered = false;  // Cholesky needed the diagonal jitter

  bool ok() const { return diagnostic == CorrelationDiagnostic::ok; }
};

/// Checks, in order: square, finite, symmetric, unit diagonal, entries in
/// [-1, 1], and Cholesky factorizability (one retry with kCholeskyJitter).
/// The first violated property is reported.
CorrelationValidation validate_correlation_matrix(const Eigen::MatrixXd& sigma);

/// Validated correlation matrix Σ together with its lower Cholesky factor.
class CorrelationMatrix {
 public:
  /// Throws DataError carrying the validation message if `sigma` is invalid.
  explicit CorrelationMatrix(Eigen::MatrixXd sigma);

  static CorrelationMatrix identity(Index dim);

  Index dim() const { return entries_.rows(); }
  double operator()(Index i, Index j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  const Eigen::MatrixXd& cholesky_lower() const { return lower_; }
  bool jittered() const { return jittered_; }

 private:
  Eigen::MatrixXd entries_;
  Eigen::MatrixXd lower_;
  bool jittered_ = false;
};

/// Matrix of sign-coincidence probabilities p^{i,j}; the diagonal is fixed to 1.
class SignProbabilityMatrix {
 public:
  explicit SignProbabilityMatrix(Eigen::MatrixXd p);

  static SignProbabilityMatrix from_correlation(const CorrelationMatrix& sigma);

  Index dim() const { return entries_.rows(); }
  double operator()(Index i, Index j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const { return entries_; }

 private:
  Eigen::MatrixXd entries_;
};

/// Symmetric 0/1 adjacency matrix with zero diagonal.
class AdjacencyMatrix {
 public:
  using Storage = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

  explicit AdjacencyMatrix(Index dim = 0) : entries_(Storage::Zero(dim, dim)) {}
  static AdjacencyMatrix complete(Index dim);

  Index dim() const { return entries_.rows(); }
  bool edge(Index i, Index j) const { return entries_(i, j) != 0; }
  void set_edge(Index i, Index j, bool present);
  Index edge_count() const;
  const Storage& entries() const { return entries_; }

  friend bool operator==(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
    return a.dim() == b.dim() && a.entries_ == b.entries_;
  }

 private:
  Storage entries_;
};

/// Reference graph: edge (i, j) iff p^{i,j} > p0 (strict).
AdjacencyMatrix reference_graph(const SignProbabilityMatrix& p, double p0);

enum class Centering { known_zero_mean, sample_mean };

std::string to_string(Centering c);
Centering centering_from_string(const std::string& s);

/// N series (rows) by n observations (columns).
class SampleMatrix {
 public:
  SampleMatrix(Eigen::MatrixXd values, Centering centering = Centering::known_zero_mean);

  Index series_count() const { return values_.rows(); }
  Index sample_size() const { return values_.cols(); }
  Centering centering() const { return centering_; }
  const Eigen::MatrixXd& values() const { return values_; }

  /// Values with the centering applied: unchanged for known_zero_mean,
  /// row means subtracted for sample_mean.
  Eigen::MatrixXd centered() const;

 private:
  Eigen::MatrixXd values_;
  Centering centering_;
};

}  // namespace mgraph
