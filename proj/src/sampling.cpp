#include "mgraph/sampling.hpp"

#include <cmath>
#include <sstream>

#include "mgraph/matrix_io.hpp"
#include "mgraph/normal_quantile.hpp"

namespace mgraph {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  engine_.seed(seq);
}

double Rng::uniform_open() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() { return normal_quantile(uniform_open()); }

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw DomainError("gamma: shape must be positive");
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    const double x = normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = uniform_open();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

std::string to_string(Family f) { return f == Family::gaussian ? "gaussian" : "student"; }

Family family_from_string(const std::string& s) {
  if (s == "gaussian" || s == "normal") return Family::gaussian;
  if (s == "student" || s == "t") return Family::student;
  throw ConfigError("unknown distribution family '" + s + "'");
}

SigmaSpec SigmaSpec::parse(const std::string& text) {
  SigmaSpec s;
  if (text == "identity") return s;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "equicorrelated" && !tail.empty()) {
    const auto rho = csv::parse_number(tail);
    if (!rho) throw ConfigError("sigma: bad correlation in '" + text + "'");
    s.kind = Kind::equicorrelated;
    s.rho = *rho;
    return s;
  }
  if (head == "file" && !tail.empty()) {
    s.kind = Kind::from_file;
    s.path = tail;
    return s;
  }
  throw ConfigError("sigma: expected identity, equicorrelated:<rho> or file:<path>, got '" + text + "'");
}

std::string SigmaSpec::to_string() const {
  switch (kind) {
    case Kind::identity: return "identity";
    case Kind::equicorrelated: return "equicorrelated:" + csv::format_number(rho);
    case Kind::from_file: return "file:" + path.string();
  }
  return {};
}

std::string SigmaSpec::label() const {
  switch (kind) {
    case Kind::identity: return "identity";
    case Kind::equicorrelated: return "equi" + csv::format_number(rho);
    case Kind::from_file: return path.stem().string();
  }
  return {};
}

CorrelationMatrix make_sigma(const SigmaSpec& spec, Index N) {
  switch (spec.kind) {
    case SigmaSpec::Kind::identity:
      if (N < 2) throw ConfigError("sigma: dimension must be >= 2");
      return CorrelationMatrix::identity(N);
    case SigmaSpec::Kind::equicorrelated: {
      if (N < 2) throw ConfigError("sigma: dimension must be >= 2");
      // Eigenvalues are 1 - rho and 1 + (N - 1) rho.
      const double rho = spec.rho;
      if (!(rho < 1.0 && 1.0 + (N - 1) * rho > 0.0)) {
        std::ostringstream os;
        os << "invalid correlation matrix: indefinite: equicorrelated rho=" << rho << " needs -1/"
           << N - 1 << " < rho < 1";
        throw DataError(os.str());
      }
      Eigen::MatrixXd m = Eigen::MatrixXd::Constant(N, N, rho);
      m.diagonal().setOnes();
      return CorrelationMatrix(std::move(m));
    }
    case SigmaSpec::Kind::from_file:
      return CorrelationMatrix(read_matrix_csv(spec.path));
  }
  throw ConfigError("sigma: unknown kind");
}

namespace {

SampleMatrix draw(const DistributionSpec& spec, Index n, bool student) {
  if (n < 2) throw ConfigError("sample size must be >= 2");
  if (student && !(spec.nu > 0.0)) throw ConfigError("student: nu must be positive");
  const Index dim = spec.sigma.dim();
  const Eigen::MatrixXd& lower = spec.sigma.cholesky_lower();
  Rng rng(spec.seed);
  Eigen::MatrixXd z(dim, n);
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(n);
  for (Index t = 0; t < n; ++t) {
    for (Index i = 0; i < dim; ++i) z(i, t) = rng.normal();
    if (student) scale(t) = 1.0 / std::sqrt(rng.chi_square(spec.nu) / spec.nu);
  }
  Eigen::MatrixXd x = lower.triangularView<Eigen::Lower>() * z;
  if (student) x = x * scale.asDiagonal();
  return SampleMatrix(std::move(x), Centering::known_zero_mean);
}

}  // namespace

SampleMatrix sample_gaussian(const DistributionSpec& spec, Index n) { return draw(spec, n, false); }

SampleMatrix sample_student(const DistributionSpec& spec, Index n) { return draw(spec, n, true); }

SampleMatrix sample(const DistributionSpec& spec, Index n) {
  return spec.family == Family::student ? sample_student(spec, n) : sample_gaussian(spec, n);
}

}  // namespace mgraph
