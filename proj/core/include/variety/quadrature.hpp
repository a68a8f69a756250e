#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace variety {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t intervals = 0;
};

inline constexpr std::size_t kDefaultIntervalBudget = 10000;

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
///
/// The interval is first split at every breakpoint inside (a, b); after that
/// the panel with the largest error estimate is bisected until the summed
/// estimate drops to abs_tol. Integrands with kinks should pass the kink
/// locations as breakpoints, since the Kronrod error estimate assumes local
/// smoothness. Throws QuadratureFailure when the interval budget runs out.
[[nodiscard]] QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                                  double b, double abs_tol,
                                                  std::span<const double> breakpoints = {},
                                                  std::size_t max_intervals = kDefaultIntervalBudget);

/// Roots of g on [a, b] found by scanning `grid` equal cells for sign changes
/// and bisecting each bracket to machine precision. Sorted ascending.
[[nodiscard]] std::vector<double> locate_sign_changes(const std::function<double(double)>& g,
                                                      double a, double b, std::size_t grid = 512);

}  // namespace variety
