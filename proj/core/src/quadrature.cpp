#include "variety/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "variety/error.hpp"

namespace variety {

namespace {

constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, std::span<const double> breakpoints,
                                    std::size_t max_intervals) {
  if (!(abs_tol > 0.0)) throw Error(Errc::DomainError, "tolerance must be positive");
  if (!(a <= b)) throw Error(Errc::DomainError, "empty integration range");
  if (a == b) return {};

  std::vector<double> cuts{a};
  for (double x : breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> panels;
  double total = 0.0;
  double error = 0.0;
  // Panels narrower than this cannot be bisected meaningfully; their estimate
  // is frozen into `settled`.
  double settled_value = 0.0;
  double settled_error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = gauss_kronrod(f, cuts[i], cuts[i + 1]);
    total += p.value;
    error += p.error;
    panels.push(p);
  }

  std::size_t count = panels.size();
  while (error > abs_tol) {
    if (panels.empty()) break;
    if (count >= max_intervals) {
      throw Error(Errc::QuadratureFailure,
                  "error estimate " + std::to_string(error) + " above tolerance " +
                      std::to_string(abs_tol) + " after " + std::to_string(count) + " intervals");
    }
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      settled_value += worst.value;
      settled_error += worst.error;
      total -= worst.value;
      error -= worst.error;
      continue;
    }
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }

  // Re-sum from scratch so the running updates do not accumulate round-off.
  double value = settled_value;
  double err = settled_error;
  while (!panels.empty()) {
    value += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  if (err > abs_tol && settled_error > 0.0) {
    throw Error(Errc::QuadratureFailure, "round-off limits accuracy to " + std::to_string(err));
  }
  return {value, err, count};
}

std::vector<double> locate_sign_changes(const std::function<double(double)>& g, double a,
                                        double b, std::size_t grid) {
  std::vector<double> roots;
  if (grid == 0 || !(a < b)) return roots;
  const double step = (b - a) / static_cast<double>(grid);
  double x0 = a;
  double g0 = g(x0);
  for (std::size_t i = 1; i <= grid; ++i) {
    const double x1 = i == grid ? b : a + step * static_cast<double>(i);
    const double g1 = g(x1);
    if (g0 == 0.0 && i > 1) {
      roots.push_back(x0);
    } else if ((g0 < 0.0 && g1 > 0.0) || (g0 > 0.0 && g1 < 0.0)) {
      double lo = x0;
      double hi = x1;
      double glo = g0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const double gm = g(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    g0 = g1;
  }
  return roots;
}

}  // namespace variety
