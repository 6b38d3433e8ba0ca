#include "mgraph/ingest.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>

#include "mgraph/matrix_io.hpp"
#include "mgraph/pearson_procedure.hpp"
#include "mgraph/sign_procedure.hpp"

namespace mgraph {

namespace {

bool is_blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

[[noreturn]] void parse_error(std::size_t line, std::size_t column, const std::string& what) {
  std::ostringstream os;
  os << "returns csv: line " << line << ", column " << column << ": " << what;
  throw DataError(os.str());
}

}  // namespace

ReturnsTable load_returns_csv(std::istream& in, const LoadOptions& options) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_blank(line)) records.emplace_back(line_no, csv::split_record(line));
  }
  if (records.empty()) throw DataError("returns csv: no data");

  ReturnsTable table;
  std::size_t first_data = 0;
  const auto& head = records.front().second;
  bool has_header = false;
  for (std::size_t c = 1; c < head.size(); ++c)
    if (!head[c].empty() && !csv::parse_number(head[c])) has_header = true;
  if (has_header) first_data = 1;
  if (first_data >= records.size()) throw DataError("returns csv: header without observations");

  const auto& probe = records[first_data].second;
  const bool has_dates = !probe.empty() && !probe[0].empty() && !csv::parse_number(probe[0]);
  const std::size_t offset = has_dates ? 1 : 0;
  const std::size_t width = probe.size();
  if (width < offset + 2) throw DataError("returns csv: need at least 2 series");
  const std::size_t series = width - offset;

  if (has_header) {
    if (head.size() != width) parse_error(records.front().first, head.size(), "header width differs from data");
    table.tickers.assign(head.begin() + static_cast<std::ptrdiff_t>(offset), head.end());
  } else {
    for (std::size_t s = 0; s < series; ++s) table.tickers.push_back("S" + std::to_string(s));
  }

  std::vector<std::vector<double>> rows;
  for (std::size_t r = first_data; r < records.size(); ++r) {
    const auto& [number, cells] = records[r];
    if (cells.size() != width) {
      if (cells.size() < width) {
        ++table.dropped_rows;
        continue;
      }
      parse_error(number, width + 1, "too many cells");
    }
    std::vector<double> row(series);
    bool keep = true;
    for (std::size_t c = offset; c < width && keep; ++c) {
      if (cells[c].empty()) {
        keep = false;
        break;
      }
      const auto v = csv::parse_number(cells[c]);
      if (!v || !std::isfinite(*v)) {
        if (options.strict) parse_error(number, c + 1, "unparseable cell '" + cells[c] + "'");
        keep = false;
        break;
      }
      row[c - offset] = *v;
    }
    if (!keep) {
      ++table.dropped_rows;
      continue;
    }
    if (has_dates) table.dates.push_back(cells[0]);
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw DataError("returns csv: need at least 2 complete observation rows");

  table.values.resize(static_cast<Index>(series), static_cast<Index>(rows.size()));
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (std::size_t s = 0; s < series; ++s) table.values(static_cast<Index>(s), static_cast<Index>(t)) = rows[t][s];
  return table;
}

ReturnsTable load_returns_csv(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return load_returns_csv(in, options);
}

EstimatedMatrices estimate_matrices(const ReturnsTable& table, Centering centering) {
  const SampleMatrix sample(table.values, centering);
  const Eigen::MatrixXd centered = sample.centered();
  for (Index i = 0; i < centered.rows(); ++i) {
    if (centered.row(i).squaredNorm() == 0.0) {
      const std::string name = i < static_cast<Index>(table.tickers.size()) ? table.tickers[i] : std::to_string(i);
      throw DataError("degenerate series '" + name + "': constant after centering");
    }
  }
  Eigen::MatrixXd corr = correlation_matrix_of(centered);
  corr = (0.5 * (corr + corr.transpose())).eval();
  const Eigen::MatrixXd freq =
      sign_coincidence_matrix(centered).cast<double>() / static_cast<double>(sample.sample_size());
  return {CorrelationMatrix(std::move(corr)), SignProbabilityMatrix(freq)};
}

}  // namespace mgraph
