#pragma once

#include <Eigen/Dense>

#include "mgraph/errors.hpp"

namespace mgraph {

/// Per-edge significance levels alpha_{i,j}: either one scalar broadcast to
/// every edge, or a full symmetric matrix (e.g. derived from a loss pair).
class Significance {
 public:
  Significance(double alpha) : scalar_(alpha) {}  // NOLINT(implicit)
  explicit Significance(Eigen::MatrixXd per_edge) : per_edge_(std::move(per_edge)), matrix_(true) {}

  bool is_uniform() const { return !matrix_; }
  double at(Eigen::Index i, Eigen::Index j) const { return matrix_ ? per_edge_(i, j) : scalar_; }

  /// Throws ConfigError unless every off-diagonal level lies in (0, 1) and a
  /// matrix, if given, is dim x dim and symmetric.
  void validate(Eigen::Index dim) const {
    auto check = [](double a) {
      if (!(a > 0.0 && a < 1.0)) throw ConfigError("significance level must lie in (0, 1)");
    };
    if (!matrix_) return check(scalar_);
    if (per_edge_.rows() != dim || per_edge_.cols() != dim)
      throw ConfigError("significance matrix dimension mismatch");
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = i + 1; j < dim; ++j) {
        check(per_edge_(i, j));
        if (per_edge_(i, j) != per_edge_(j, i)) throw ConfigError("significance matrix asymmetric");
      }
  }

 private:
  double scalar_ = 0.0;
  Eigen::MatrixXd per_edge_;
  bool matrix_ = false;
};

}  // namespace mgraph
