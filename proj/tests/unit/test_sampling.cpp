#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mgraph/pearson_procedure.hpp"
#include "mgraph/sampling.hpp"
#include "mgraph/sign_procedure.hpp"

using namespace mgraph;

namespace {

CorrelationMatrix pair_sigma(double rho) {
  Eigen::MatrixXd s(2, 2);
  s << 1.0, rho, rho, 1.0;
  return CorrelationMatrix(s);
}

double sign_frequency(const SampleMatrix& x) {
  const auto c = sign_counts(x.values().row(0), x.values().row(1));
  return static_cast<double>(c.v) / static_cast<double>(c.n);
}

}  // namespace

TEST_CASE("rng determinism and range") {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int k = 0; k < 1000; ++k) {
    const double u = a.uniform_open();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    const double v = b.uniform_open();
    CHECK(u == v);
    differs = differs || (c.uniform_open() != u);
  }
  CHECK(differs);
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(9, 5) == derive_seed(9, 5));
}

TEST_CASE("gamma and chi-square moments") {
  Rng rng(8);
  for (double shape : {0.4, 1.5, 7.0}) {
    const int m = 200000;
    double sum = 0.0, sq = 0.0;
    for (int k = 0; k < m; ++k) {
      const double g = rng.gamma(shape);
      CHECK(g > 0.0);
      sum += g;
      sq += g * g;
    }
    const double mean = sum / m;
    const double var = sq / m - mean * mean;
    CHECK(std::abs(mean - shape) < 4.0 * std::sqrt(shape / m));
    CHECK(var == doctest::Approx(shape).epsilon(0.05));
  }
  double total = 0.0;
  for (int k = 0; k < 100000; ++k) total += rng.chi_square(3.0);
  CHECK(std::abs(total / 100000 - 3.0) < 4.0 * std::sqrt(6.0 / 100000));
}

TEST_CASE("same seed gives identical samples") {
  const DistributionSpec spec{Family::student, 3.0, make_sigma(SigmaSpec::parse("equicorrelated:0.3"), 4), 99};
  CHECK(sample(spec, 50).values() == sample(spec, 50).values());
  DistributionSpec other = spec;
  other.seed = 100;
  CHECK(sample(spec, 50).values() != sample(other, 50).values());
}

TEST_CASE("make_sigma constructors") {
  CHECK(make_sigma(SigmaSpec::parse("identity"), 30).entries() == Eigen::MatrixXd::Identity(30, 30));
  const auto s3 = make_sigma(SigmaSpec::parse("equicorrelated:0.9"), 30);
  CHECK(s3(0, 29) == 0.9);
  CHECK(s3(4, 4) == 1.0);
  // Eigenvalue 1 + (N - 1) rho = -13.5 for rho = -0.5.
  CHECK(1.0 + 29 * -0.5 == -13.5);
  CHECK_THROWS_AS(make_sigma(SigmaSpec::parse("equicorrelated:-0.5"), 30), DataError);
  CHECK_THROWS_AS(make_sigma(SigmaSpec::parse("equicorrelated:1"), 30), DataError);
  CHECK_THROWS_AS(SigmaSpec::parse("banded:0.3"), ConfigError);
  CHECK(SigmaSpec::parse("equicorrelated:0.9").label() == "equi0.9");
  CHECK(SigmaSpec::parse("file:/tmp/x/sigma2_role.csv").label() == "sigma2_role");
  CHECK(SigmaSpec::parse("equicorrelated:0.25").to_string() == "equicorrelated:0.25");
}

TEST_CASE("gaussian sample correlations") {
  const auto x1 = sample_gaussian(DistributionSpec{Family::gaussian, 3.0, CorrelationMatrix::identity(3), 1}, 100000);
  const Eigen::MatrixXd r1 = correlation_matrix_of(x1.values());
  const auto x3 = sample_gaussian(
      DistributionSpec{Family::gaussian, 3.0, make_sigma(SigmaSpec::parse("equicorrelated:0.9"), 3), 2}, 100000);
  const Eigen::MatrixXd r3 = correlation_matrix_of(x3.values());
  for (Index i = 0; i < 3; ++i)
    for (Index j = i + 1; j < 3; ++j) {
      CHECK(std::abs(r1(i, j)) < 0.01);
      CHECK(std::abs(r3(i, j) - 0.9) < 0.01);
    }
}

TEST_CASE("arcsine law for both families") {
  for (Family f : {Family::gaussian, Family::student}) {
    for (double rho : {0.0, 0.5, 0.9}) {
      const auto x = sample(DistributionSpec{f, 3.0, pair_sigma(rho), 17}, 400000);
      const double target = 0.5 + std::asin(rho) / std::numbers::pi;
      CHECK(std::abs(sign_frequency(x) - target) < 0.01);
    }
  }
  CHECK(0.5 + std::asin(0.5) / std::numbers::pi == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("student with huge nu behaves like gaussian") {
  const auto g = sample(DistributionSpec{Family::gaussian, 3.0, pair_sigma(0.5), 4}, 200000);
  const auto t = sample(DistributionSpec{Family::student, 1e6, pair_sigma(0.5), 5}, 200000);
  const double se = std::sqrt(2.0 * (2.0 / 3.0) * (1.0 / 3.0) / 200000);
  CHECK(std::abs(sign_frequency(g) - sign_frequency(t)) < 4.0 * se);
}

TEST_CASE("student marginal variance") {
  const auto x = sample_student(DistributionSpec{Family::student, 3.0, CorrelationMatrix::identity(2), 31}, 2000000);
  const double var = x.values().row(0).squaredNorm() / static_cast<double>(x.sample_size());
  CHECK(var == doctest::Approx(3.0).epsilon(0.1));
  const auto y = sample_student(DistributionSpec{Family::student, 6.0, CorrelationMatrix::identity(2), 32}, 1000000);
  CHECK(y.values().row(1).squaredNorm() / 1e6 == doctest::Approx(1.5).epsilon(0.02));
}

TEST_CASE("sign symmetry of generated data") {
  for (Family f : {Family::gaussian, Family::student}) {
    const auto x = sample(DistributionSpec{f, 3.0, pair_sigma(0.4), 6}, 200000);
    const auto c = sign_counts(x.values().row(0), x.values().row(1));
    const double n = static_cast<double>(c.n);
    const double p11 = c.t11 / n, p00 = c.t00 / n;
    const double se = std::sqrt((p11 + p00 - (p11 - p00) * (p11 - p00)) / n);
    CHECK(std::abs(p11 - p00) <= 3.0 * se);
  }
}

TEST_CASE("family names") {
  CHECK(family_from_string("t") == Family::student);
  CHECK(family_from_string("gaussian") == Family::gaussian);
  CHECK(to_string(Family::student) == "student");
  CHECK_THROWS_AS(family_from_string("cauchy"), ConfigError);
  CHECK_THROWS_AS(sample_gaussian(DistributionSpec{Family::gaussian, 3.0, CorrelationMatrix::identity(2), 1}, 1),
                  ConfigError);
}
