#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "mgraph/ingest.hpp"
#include "mgraph/sampling.hpp"
#include "mgraph/sign_procedure.hpp"

using namespace mgraph;

TEST_CASE("plain numeric table") {
  std::istringstream in("0.1,0.2\n-0.3,0.4\n0.5,-0.6\n");
  const auto t = load_returns_csv(in);
  CHECK(t.series_count() == 2);
  CHECK(t.sample_size() == 3);
  CHECK(t.values(1, 2) == -0.6);
  CHECK(t.tickers == std::vector<std::string>{"S0", "S1"});
  CHECK(t.dates.empty());
}

TEST_CASE("header and date column") {
  std::istringstream in("AAA,BBB\n1,2\n3,4\n5,6\n");
  const auto t = load_returns_csv(in);
  CHECK(t.tickers == std::vector<std::string>{"AAA", "BBB"});
  CHECK(t.sample_size() == 3);

  std::istringstream dated("date,AAA,BBB,CCC\n2013-01-02,1,2,3\n2013-01-03,4,5,6\n");
  const auto d = load_returns_csv(dated);
  CHECK(d.series_count() == 3);
  CHECK(d.dates == std::vector<std::string>{"2013-01-02", "2013-01-03"});
  CHECK(d.values(2, 1) == 6.0);
}

TEST_CASE("missing cells drop rows and are counted") {
  std::istringstream in("A,B\n1,2\n3,\n5,6\n7\n8,9\n");
  const auto t = load_returns_csv(in);
  CHECK(t.sample_size() == 3);
  CHECK(t.dropped_rows == 2);
}

TEST_CASE("bad cells are positioned errors in strict mode") {
  std::istringstream in("1,2\nx,3\n4,5\n");
  try {
    load_returns_csv(in);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 2, column 1") != std::string::npos);
  }
  std::istringstream lenient("1,2\n3,x\n4,5\n");
  const auto t = load_returns_csv(lenient, LoadOptions{false});
  CHECK(t.sample_size() == 2);
  CHECK(t.dropped_rows == 1);
  std::istringstream tiny("1,2\n");
  CHECK_THROWS_AS(load_returns_csv(tiny), DataError);
  CHECK_THROWS_AS(load_returns_csv(std::filesystem::path("/nonexistent/returns.csv")), DataError);
}

TEST_CASE("identical and opposite series") {
  ReturnsTable t;
  t.values.resize(3, 5);
  t.values.row(0) << 0.3, -1.2, 0.8, 2.0, -0.4;
  t.values.row(1) = t.values.row(0);
  t.values.row(2) = -t.values.row(0);
  t.tickers = {"A", "B", "C"};
  const auto m = estimate_matrices(t, Centering::known_zero_mean);
  CHECK(m.correlation(0, 1) == doctest::Approx(1.0));
  CHECK(m.sign_probability(0, 1) == 1.0);
  CHECK(m.correlation(0, 2) == doctest::Approx(-1.0));
  CHECK(m.sign_probability(0, 2) == 0.0);
}

TEST_CASE("sign probabilities are exact count ratios") {
  ReturnsTable t;
  t.values.resize(3, 7);
  t.values.row(0) << 1, -2, 3, -4, 5, 6, -7;
  t.values.row(1) << 2, 1, -1, -3, 2, -1, 1;
  t.values.row(2) << -1, -1, 2, 5, -3, 4, 1;
  t.tickers = {"A", "B", "C"};
  const auto m = estimate_matrices(t, Centering::known_zero_mean);
  for (Index i = 0; i < 3; ++i)
    for (Index j = i + 1; j < 3; ++j) {
      const auto c = sign_counts(t.values.row(i), t.values.row(j));
      CHECK(m.sign_probability(i, j) == static_cast<double>(c.v) / 7.0);
    }
}

TEST_CASE("degenerate series is named") {
  ReturnsTable t;
  t.values.resize(2, 4);
  t.values.row(0) << 1, 2, 3, 4;
  t.values.row(1).setConstant(0.01);
  t.tickers = {"GOOD", "FLAT"};
  try {
    estimate_matrices(t);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("FLAT") != std::string::npos);
  }
}

TEST_CASE("arcsine target recovered from simulated returns") {
  Eigen::MatrixXd s(2, 2);
  s << 1.0, 0.5, 0.5, 1.0;
  const auto x = sample_gaussian(DistributionSpec{Family::gaussian, 3.0, CorrelationMatrix(s), 2024}, 100000);
  ReturnsTable t;
  t.values = x.values();
  t.tickers = {"A", "B"};
  const auto m = estimate_matrices(t);
  CHECK(std::abs(m.sign_probability(0, 1) - 2.0 / 3.0) < 0.01);
  CHECK(std::abs(m.correlation(0, 1) - 0.5) < 0.01);
}

TEST_CASE("estimation error shrinks with the sample size") {
  const auto sigma = make_sigma(SigmaSpec::parse("equicorrelated:0.6"), 6);
  const double target = 0.5 + std::asin(0.6) / std::numbers::pi;
  std::vector<double> log_n, log_err;
  for (Index n : {1000, 10000, 100000}) {
    double err = 0.0;
    int count = 0;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      ReturnsTable t;
      t.values = sample_gaussian(DistributionSpec{Family::gaussian, 3.0, sigma, derive_seed(31, seed)}, n).values();
      for (int k = 0; k < 6; ++k) t.tickers.push_back("S" + std::to_string(k));
      const auto m = estimate_matrices(t, Centering::known_zero_mean);
      for (Index i = 0; i < 6; ++i)
        for (Index j = i + 1; j < 6; ++j, ++count) err += std::pow(m.sign_probability(i, j) - target, 2);
    }
    log_n.push_back(std::log(static_cast<double>(n)));
    log_err.push_back(0.5 * std::log(err / count));
  }
  const double slope = (log_err[2] - log_err[0]) / (log_n[2] - log_n[0]);
  CHECK(slope < -0.35);
  CHECK(slope > -0.65);
}
