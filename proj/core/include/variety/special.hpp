#pragma once

namespace variety {

/// log B(a, b) via lgamma.
[[nodiscard]] double log_beta(double a, double b);

/// Density of Beta(a, b) at x in [0, 1]. Endpoint values follow the limits
/// (0, the finite value, or +infinity for a or b below one).
[[nodiscard]] double beta_pdf(double x, double a, double b);

/// I_x(a, b), the Beta(a, b) CDF. Continued fraction (modified Lentz) on the
/// side of the mean where it converges quickly, reflected through
/// I_x(a, b) = 1 - I_{1-x}(b, a) otherwise. Throws DomainError for x outside
/// [0, 1] or non-positive a, b.
[[nodiscard]] double regularized_incomplete_beta(double a, double b, double x);

/// Inverse of I_x(a, b) in x, by bisection. Accurate to ~1e-14 in x.
[[nodiscard]] double inverse_regularized_incomplete_beta(double a, double b, double p);

}  // namespace variety
