#include "mgraph/graph_model.hpp"

#include <algorithm>
#include <sstream>

namespace mgraph {

std::string to_string(CorrelationDiagnostic d) {
  switch (d) {
    case CorrelationDiagnostic::ok: return "ok";
    case CorrelationDiagnostic::not_square: return "not_square";
    case CorrelationDiagnostic::non_finite: return "non_finite";
    case CorrelationDiagnostic::asymmetric: return "asymmetric";
    case CorrelationDiagnostic::non_unit_diagonal: return "non_unit_diagonal";
    case CorrelationDiagnostic::out_of_range: return "out_of_range";
    case CorrelationDiagnostic::indefinite: return "indefinite";
  }
  return "unknown";
}

namespace {

CorrelationValidation fail(CorrelationDiagnostic d, const std::string& detail) {
  return {d, to_string(d) + ": " + detail, false};
}

std::string at(Index i, Index j) {
  std::ostringstream os;
  os << "entry (" << i << "," << j << ")";
  return os.str();
}

bool try_cholesky(const Eigen::MatrixXd& m, Eigen::MatrixXd& lower) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return false;
  lower = llt.matrixL();
  return true;
}

// Returns false if neither m nor m + jitter*I factorizes.
bool factor_with_jitter(const Eigen::MatrixXd& m, Eigen::MatrixXd& lower, bool& jittered) {
  jittered = false;
  if (try_cholesky(m, lower)) return true;
  Eigen::MatrixXd shifted = m;
  shifted.diagonal().array() += kCholeskyJitter;
  jittered = true;
  return try_cholesky(shifted, lower);
}

}  // namespace

CorrelationValidation validate_correlation_matrix(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0) {
    std::ostringstream os;
    os << sigma.rows() << "x" << sigma.cols() << " matrix";
    return fail(CorrelationDiagnostic::not_square, os.str());
  }
  const Index n = sigma.rows();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (!std::isfinite(sigma(i, j))) return fail(CorrelationDiagnostic::non_finite, at(i, j));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (std::abs(sigma(i, j) - sigma(j, i)) > kSymmetryTolerance)
        return fail(CorrelationDiagnostic::asymmetric, at(i, j));
  for (Index i = 0; i < n; ++i)
    if (std::abs(sigma(i, i) - 1.0) > kSymmetryTolerance)
      return fail(CorrelationDiagnostic::non_unit_diagonal, at(i, i));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (std::abs(sigma(i, j)) > 1.0) return fail(CorrelationDiagnostic::out_of_range, at(i, j));

  Eigen::MatrixXd lower;
  bool jittered = false;
  if (!factor_with_jitter(sigma, lower, jittered)) {
    return fail(CorrelationDiagnostic::indefinite, "Cholesky factorization failed after jitter");
  }
  CorrelationValidation v;
  v.jittered = jittered;
  v.message = jittered ? "ok (diagonal jitter applied)" : "ok";
  return v;
}

CorrelationMatrix::CorrelationMatrix(Eigen::MatrixXd sigma) : entries_(std::move(sigma)) {
  const auto v = validate_correlation_matrix(entries_);
  if (!v.ok()) throw DataError("invalid correlation matrix: " + v.message);
  // Exact symmetry and unit diagonal for downstream consumers.
  entries_ = (0.5 * (entries_ + entries_.transpose())).eval();
  entries_.diagonal().setOnes();
  if (!factor_with_jitter(entries_, lower_, jittered_)) {
    throw DataError("invalid correlation matrix: indefinite");
  }
}

CorrelationMatrix CorrelationMatrix::identity(Index dim) {
  return CorrelationMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

SignProbabilityMatrix::SignProbabilityMatrix(Eigen::MatrixXd p) : entries_(std::move(p)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw DataError("sign probability matrix must be square and non-empty");
  }
  const Index n = entries_.rows();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double v = entries_(i, j);
      if (!(v >= 0.0 && v <= 1.0)) throw DataError("sign probability outside [0, 1] at " + at(i, j));
      if (std::abs(v - entries_(j, i)) > kSymmetryTolerance)
        throw DataError("sign probability matrix asymmetric at " + at(i, j));
    }
  }
  entries_.diagonal().setOnes();
}

SignProbabilityMatrix SignProbabilityMatrix::from_correlation(const CorrelationMatrix& sigma) {
  Eigen::MatrixXd p = sigma.entries().unaryExpr(
      [](double rho) { return sign_prob_from_correlation(std::clamp(rho, -1.0, 1.0)); });
  return SignProbabilityMatrix(std::move(p));
}

AdjacencyMatrix AdjacencyMatrix::complete(Index dim) {
  AdjacencyMatrix g(dim);
  g.entries_.setOnes();
  g.entries_.diagonal().setZero();
  return g;
}

void AdjacencyMatrix::set_edge(Index i, Index j, bool present) {
  if (i == j) return;
  entries_(i, j) = entries_(j, i) = present ? 1 : 0;
}

Index AdjacencyMatrix::edge_count() const {
  Index count = 0;
  for (Index i = 0; i < dim(); ++i)
    for (Index j = i + 1; j < dim(); ++j) count += entries_(i, j);
  return count;
}

AdjacencyMatrix reference_graph(const SignProbabilityMatrix& p, double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw DomainError("threshold p0 outside [0, 1]");
  AdjacencyMatrix g(p.dim());
  for (Index i = 0; i < p.dim(); ++i)
    for (Index j = i + 1; j < p.dim(); ++j) g.set_edge(i, j, p(i, j) > p0);
  return g;
}

std::string to_string(Centering c) {
  return c == Centering::known_zero_mean ? "known-zero-mean" : "sample-mean";
}

Centering centering_from_string(const std::string& s) {
  if (s == "known-zero-mean" || s == "zero") return Centering::known_zero_mean;
  if (s == "sample-mean" || s == "mean") return Centering::sample_mean;
  throw ConfigError("unknown centering mode '" + s + "'");
}

SampleMatrix::SampleMatrix(Eigen::MatrixXd values, Centering centering)
    : values_(std::move(values)), centering_(centering) {
  if (values_.cols() < 2) throw DataError("sample needs at least 2 observations");
  if (values_.rows() < 1) throw DataError("sample needs at least one series");
  if (!values_.allFinite()) throw DataError("sample contains non-finite values");
}

Eigen::MatrixXd SampleMatrix::centered() const {
  if (centering_ == Centering::known_zero_mean) return values_;
  return values_.colwise() - values_.rowwise().mean();
}

}  // namespace mgraph
