#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mgraph/graph_model.hpp"

namespace mgraph {

/// Daily returns: N series (rows) by n observations (columns).
struct ReturnsTable {
  std::vector<std::string> tickers;
  std::vector<std::string> dates;  // empty when the file has no date column
  Eigen::MatrixXd values;
  Index dropped_rows = 0;  // observation rows removed for missing cells

  Index series_count() const { return values.rows(); }
  Index sample_size() const { return values.cols(); }
};

struct LoadOptions {
  // Strict: a non-numeric cell is an error. Otherwise such rows are dropped.
  bool strict = true;
};

/// Reads a returns CSV: one observation (date) per row, one stock per column.
///
/// The first row is a header of tickers when any of its cells after the first
/// is non-numeric. The first column holds date labels when the first data
/// row's leading cell is non-numeric. Rows with empty cells are dropped and
/// counted. Parse errors carry the 1-based line and column.
ReturnsTable load_returns_csv(std::istream& in, const LoadOptions& options = {});
ReturnsTable load_returns_csv(const std::filesystem::path& path, const LoadOptions& options = {});

struct EstimatedMatrices {
  CorrelationMatrix correlation;
  SignProbabilityMatrix sign_probability;
};

/// Sample correlations (with the chosen centering) and sign-coincidence
/// frequencies V_{i,j} / n. Real returns rarely have a known zero mean, hence
/// the sample-mean default.
EstimatedMatrices estimate_matrices(const ReturnsTable& table,
                                    Centering centering = Centering::sample_mean);

}  // namespace mgraph
