#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "mgraph/graph_model.hpp"

namespace mgraph {

/// Deterministic random stream: mt19937_64 seeded through std::seed_seq,
/// normals by inverse CDF, gammas by Marsaglia-Tsang. Every step is
/// specified by the standard or by this file, so a seed fixes the output on
/// any conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform_open();
  double normal();
  /// Gamma(shape, 1).
  double gamma(double shape);
  double chi_square(double nu) { return 2.0 * gamma(0.5 * nu); }

 private:
  std::mt19937_64 engine_;
};

/// Seed for stream `index` under `master`; distinct indices give unrelated
/// streams and the value does not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

enum class Family { gaussian, student };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct DistributionSpec {
  Family family = Family::gaussian;
  double nu = 3.0;  // Student degrees of freedom
  CorrelationMatrix sigma;
  std::uint64_t seed = 0;
};

/// Correlation structure selector: identity (zero correlations),
/// equicorrelated(rho), or a CSV matrix file.
struct SigmaSpec {
  enum class Kind { identity, equicorrelated, from_file };

  Kind kind = Kind::identity;
  double rho = 0.0;
  std::filesystem::path path;

  /// "identity", "equicorrelated:<rho>" or "file:<path>".
  static SigmaSpec parse(const std::string& text);
  std::string to_string() const;
  /// Short token for file names.
  std::string label() const;
};

/// Builds Σ of dimension N (ignored for files, whose size is taken as is).
/// Equicorrelated requires -1/(N-1) < rho < 1; violations and invalid files
/// raise DataError.
CorrelationMatrix make_sigma(const SigmaSpec& spec, Index N);

/// Columns i.i.d. N(0, Σ): x = L z with L the Cholesky factor of Σ.
SampleMatrix sample_gaussian(const DistributionSpec& spec, Index n);

/// Columns i.i.d. multivariate Student: x = L z / sqrt(w / nu) with one
/// chi-square(nu) draw w shared by all coordinates of a column.
SampleMatrix sample_student(const DistributionSpec& spec, Index n);

SampleMatrix sample(const DistributionSpec& spec, Index n);

}  // namespace mgraph
