#pragma once

namespace mgraph {

/// Inverse standard normal CDF.
///
/// Wichura's AS 241 (PPND16) rational approximations: a central rational
/// function for |q - 0.5| <= 0.425 and two tail rationals in
/// r = sqrt(-log(min(q, 1 - q))). Relative accuracy is about 1e-16, well
/// inside an absolute error of 1e-8 over [1e-12, 1 - 1e-12]. The value is
/// exactly antisymmetric about q = 0.5.
///
/// Throws DomainError unless 0 < q < 1.
double normal_quantile(double q);

/// Standard normal CDF via erfc.
double normal_cdf(double x);

}  // namespace mgraph
