#include "mgraph/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace mgraph {

namespace csv {

namespace {
std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}
}  // namespace

std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const auto cell = line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                         : comma - start);
    cells.emplace_back(trim(cell));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

}  // namespace csv

Eigen::MatrixXd read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = csv::split_record(line);
    std::vector<double> row;
    row.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto v = csv::parse_number(cells[c]);
      if (!v) {
        std::ostringstream os;
        os << "matrix csv: unparseable cell at line " << line_no << ", column " << c + 1 << ": '"
           << cells[c] << "'";
        throw DataError(os.str());
      }
      row.push_back(*v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      std::ostringstream os;
      os << "matrix csv: line " << line_no << " has " << row.size() << " cells, expected "
         << rows.front().size();
      throw DataError(os.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("matrix csv: no data");
  Eigen::MatrixXd m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << csv::format_number(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_matrix_csv(out, m);
}

void write_adjacency_csv(std::ostream& out, const AdjacencyMatrix& g) {
  for (Index i = 0; i < g.dim(); ++i) {
    for (Index j = 0; j < g.dim(); ++j) {
      if (j) out << ',';
      out << (g.edge(i, j) ? '1' : '0');
    }
    out << '\n';
  }
}

void write_edge_list(std::ostream& out, const AdjacencyMatrix& g) {
  for (Index i = 0; i < g.dim(); ++i)
    for (Index j = i + 1; j < g.dim(); ++j)
      if (g.edge(i, j)) out << i << ',' << j << '\n';
}

AdjacencyMatrix read_edge_list(std::istream& in, Index dim) {
  AdjacencyMatrix g(dim);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = csv::split_record(line);
    const auto i = cells.size() == 2 ? csv::parse_number(cells[0]) : std::nullopt;
    const auto j = cells.size() == 2 ? csv::parse_number(cells[1]) : std::nullopt;
    if (!i || !j || *i < 0 || *j < 0 || *i >= dim || *j >= dim || *i >= *j) {
      throw DataError("edge list: bad pair at line " + std::to_string(line_no));
    }
    g.set_edge(static_cast<Index>(*i), static_cast<Index>(*j), true);
  }
  return g;
}

}  // namespace mgraph
