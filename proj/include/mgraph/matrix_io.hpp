#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mgraph/graph_model.hpp"

// Plain-CSV matrix formats: N rows of N comma-separated decimals, no header.
namespace mgraph {

namespace csv {

/// Splits one CSV record on commas; surrounding whitespace and double quotes
/// are stripped from each cell.
std::vector<std::string> split_record(std::string_view line);

/// Parses a full cell as a decimal number; nullopt if any character is left over.
std::optional<double> parse_number(std::string_view cell);

/// Shortest round-trip representation of a double.
std::string format_number(double v);

}  // namespace csv

Eigen::MatrixXd read_matrix_csv(std::istream& in);
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);

void write_adjacency_csv(std::ostream& out, const AdjacencyMatrix& g);

/// One "i,j" line per edge, 0-based with i < j, in row-major order.
void write_edge_list(std::ostream& out, const AdjacencyMatrix& g);
AdjacencyMatrix read_edge_list(std::istream& in, Index dim);

}  // namespace mgraph
