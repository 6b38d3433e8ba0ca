#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "mgraph/graph_model.hpp"

using namespace mgraph;

TEST_CASE("sign_prob_from_correlation reference values") {
  CHECK(sign_prob_from_correlation(0.0) == 0.5);
  CHECK(sign_prob_from_correlation(1.0) == 1.0);
  CHECK(sign_prob_from_correlation(-1.0) == 0.0);

  // Extended-precision oracle evaluated independently of the double path.
  const long double oracle = 0.5L + std::asin(0.9L) / std::numbers::pi_v<long double>;
  CHECK(std::abs(sign_prob_from_correlation(0.9) - static_cast<double>(oracle)) < 1e-15);
  CHECK(sign_prob_from_correlation(0.9) == doctest::Approx(0.8564337068712937).epsilon(1e-15));

  CHECK_THROWS_AS(sign_prob_from_correlation(1.5), DomainError);
  CHECK_THROWS_AS(sign_prob_from_correlation(std::nan("")), DomainError);
  CHECK_THROWS_AS(correlation_from_sign_prob(-0.1), DomainError);
}

TEST_CASE("transform is strictly increasing and round-trips") {
  double previous = -1.0;
  for (int k = 0; k <= 20000; ++k) {
    const double rho = -1.0 + k * 1e-4;
    const double p = sign_prob_from_correlation(rho);
    if (k > 0) CHECK(p > previous);
    previous = p;
    CHECK(std::abs(correlation_from_sign_prob(p) - rho) <= 1e-12);
  }
  CHECK(correlation_from_sign_prob(0.5) == 0.0);
}

TEST_CASE("reference_graph examples") {
  const auto p1 = SignProbabilityMatrix::from_correlation(CorrelationMatrix::identity(30));
  CHECK(reference_graph(p1, 0.5).edge_count() == 0);

  Eigen::MatrixXd s3 = Eigen::MatrixXd::Constant(30, 30, 0.9);
  s3.diagonal().setOnes();
  const auto p3 = SignProbabilityMatrix::from_correlation(CorrelationMatrix(s3));
  CHECK(reference_graph(p3, 0.8) == AdjacencyMatrix::complete(30));
  CHECK(reference_graph(p3, 0.8).edge_count() == 435);
  CHECK(reference_graph(p3, 1.0).edge_count() == 0);
  CHECK(reference_graph(p1, 1.0).edge_count() == 0);
  CHECK_THROWS_AS(reference_graph(p1, 1.5), DomainError);
}

TEST_CASE("reference_graph is monotone in p0, symmetric, zero diagonal") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 8;
    Eigen::MatrixXd p(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) p(i, j) = p(j, i) = u(gen);
    const SignProbabilityMatrix probs(p);
    AdjacencyMatrix previous = reference_graph(probs, 0.0);
    for (double p0 = 0.05; p0 <= 1.0; p0 += 0.05) {
      const auto g = reference_graph(probs, p0);
      for (Index i = 0; i < n; ++i) {
        CHECK_FALSE(g.edge(i, i));
        for (Index j = 0; j < n; ++j) {
          CHECK(g.edge(i, j) == g.edge(j, i));
          if (g.edge(i, j)) CHECK(previous.edge(i, j));
        }
      }
      previous = g;
    }
  }
}

TEST_CASE("ties at the threshold are non-edges") {
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(3, 3, 0.7);
  const auto g = reference_graph(SignProbabilityMatrix(p), 0.7);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("validate_correlation_matrix diagnostics") {
  CHECK(validate_correlation_matrix(Eigen::MatrixXd::Identity(30, 30)).ok());

  Eigen::MatrixXd range(2, 2);
  range << 1.0, 1.5, 1.5, 1.0;
  CHECK(validate_correlation_matrix(range).diagnostic == CorrelationDiagnostic::out_of_range);

  Eigen::MatrixXd indefinite(3, 3);
  indefinite << 1.0, 0.9, 0.9, 0.9, 1.0, -0.9, 0.9, -0.9, 1.0;
  // Independent route: the spectrum has a negative eigenvalue.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(indefinite);
  CHECK(eig.eigenvalues().minCoeff() < -0.5);
  CHECK(validate_correlation_matrix(indefinite).diagnostic == CorrelationDiagnostic::indefinite);

  Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(3, 3);
  asym(0, 1) = 0.2;
  CHECK(validate_correlation_matrix(asym).diagnostic == CorrelationDiagnostic::asymmetric);

  Eigen::MatrixXd diag = Eigen::MatrixXd::Identity(3, 3);
  diag(2, 2) = 1.1;
  CHECK(validate_correlation_matrix(diag).diagnostic == CorrelationDiagnostic::non_unit_diagonal);

  CHECK(validate_correlation_matrix(Eigen::MatrixXd::Identity(2, 3)).diagnostic ==
        CorrelationDiagnostic::not_square);
  Eigen::MatrixXd nan = Eigen::MatrixXd::Identity(2, 2);
  nan(0, 1) = nan(1, 0) = std::nan("");
  CHECK(validate_correlation_matrix(nan).diagnostic == CorrelationDiagnostic::non_finite);

  CHECK_THROWS_AS(CorrelationMatrix{indefinite}, DataError);
}

TEST_CASE("singular PSD matrices pass with jitter reported") {
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(3, 3);
  const auto v = validate_correlation_matrix(ones);
  CHECK(v.ok());
  CHECK(v.jittered);
  const CorrelationMatrix sigma(ones);
  CHECK(sigma.jittered());
  CHECK_FALSE(CorrelationMatrix::identity(4).jittered());
}

TEST_CASE("cholesky factor reproduces sigma") {
  Eigen::MatrixXd s = Eigen::MatrixXd::Constant(5, 5, 0.3);
  s.diagonal().setOnes();
  const CorrelationMatrix sigma(s);
  const Eigen::MatrixXd& l = sigma.cholesky_lower();
  CHECK((l * l.transpose() - s).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("sign probability matrix invariants") {
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(3, 3, 0.4);
  p.diagonal().setZero();
  const SignProbabilityMatrix probs(p);
  CHECK(probs(1, 1) == 1.0);
  Eigen::MatrixXd bad = p;
  bad(0, 1) = 1.2;
  CHECK_THROWS_AS(SignProbabilityMatrix{bad}, DataError);
  bad = p;
  bad(0, 1) = 0.1;
  CHECK_THROWS_AS(SignProbabilityMatrix{bad}, DataError);
}

TEST_CASE("adjacency matrix keeps symmetry") {
  AdjacencyMatrix g(4);
  g.set_edge(0, 3, true);
  g.set_edge(2, 2, true);
  CHECK(g.edge(3, 0));
  CHECK_FALSE(g.edge(2, 2));
  CHECK(g.edge_count() == 1);
  CHECK(AdjacencyMatrix::complete(4).edge_count() == 6);
}

TEST_CASE("sample matrix validation and centering") {
  CHECK_THROWS_AS(SampleMatrix{Eigen::MatrixXd::Ones(2, 1)}, DataError);
  Eigen::MatrixXd x(1, 3);
  x << 1.0, 2.0, std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(SampleMatrix{x}, DataError);

  Eigen::MatrixXd y(2, 3);
  y << 1, 2, 3, 4, 4, 4;
  const SampleMatrix raw(y);
  CHECK(raw.centered() == y);
  const SampleMatrix centered(y, Centering::sample_mean);
  Eigen::MatrixXd expected(2, 3);
  expected << -1, 0, 1, 0, 0, 0;
  CHECK(centered.centered() == expected);
  CHECK(centering_from_string(to_string(Centering::sample_mean)) == Centering::sample_mean);
  CHECK_THROWS_AS(centering_from_string("median"), ConfigError);
}
