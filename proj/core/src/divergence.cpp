#include "variety/divergence.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <limits>
#include <random>

#include "variety/error.hpp"

namespace variety {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kProbabilitySlack = 1e-9;

constexpr std::array<std::string_view, 4> kBuiltinNames = {"tvd", "kl", "pearson", "hellinger"};

void require_probability(std::span<const double> v, const char* which) {
  double total = 0.0;
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(Errc::NotAProbability, std::string(which) + " has entry " + std::to_string(x));
    }
    total += x;
  }
  if (std::abs(total - 1.0) > kProbabilitySlack) {
    throw Error(Errc::NotAProbability, std::string(which) + " sums to " + std::to_string(total));
  }
}

void require_binary(const JointDistribution& joint) {
  if (joint.n_choices() != 2) {
    throw Error(Errc::NotBinary, "joint has " + std::to_string(joint.n_choices()) + " choices");
  }
}

}  // namespace

const DivergenceKind& DivergenceKind::tvd() {
  static const DivergenceKind kind("tvd", [](double x) { return 0.5 * std::abs(x - 1.0); }, 0.5,
                                   0.5);
  return kind;
}

const DivergenceKind& DivergenceKind::kl() {
  static const DivergenceKind kind("kl", [](double x) { return -std::log(x); }, 0.0, kInf);
  return kind;
}

const DivergenceKind& DivergenceKind::pearson() {
  static const DivergenceKind kind(
      "pearson", [](double x) { return (x - 1.0) * (x - 1.0) / x; }, 1.0, kInf);
  return kind;
}

const DivergenceKind& DivergenceKind::hellinger() {
  static const DivergenceKind kind(
      "hellinger",
      [](double x) {
        const double r = std::sqrt(x) - 1.0;
        return 0.5 * r * r;
      },
      0.5, 0.5);
  return kind;
}

std::span<const std::string_view> DivergenceKind::builtin_names() { return kBuiltinNames; }

const DivergenceKind& DivergenceKind::by_name(std::string_view name) {
  if (name == "tvd") return tvd();
  if (name == "kl") return kl();
  if (name == "pearson") return pearson();
  if (name == "hellinger") return hellinger();
  throw Error(Errc::InvalidKind, "unknown divergence '" + std::string(name) +
                                     "' (expected tvd, kl, pearson or hellinger)");
}

DivergenceKind DivergenceKind::custom(std::string name, Generator f, double tail,
                                      std::optional<double> zero_limit) {
  if (!f) throw Error(Errc::InvalidKind, "empty generator");
  if (std::isnan(tail)) throw Error(Errc::InvalidKind, "tail coefficient is NaN");
  const double at_one = f(1.0);
  if (!(std::abs(at_one) <= 1e-12)) {
    throw Error(Errc::InvalidKind, name + ": f(1) = " + std::to_string(at_one));
  }
  // Fixed seed so registration is reproducible.
  std::mt19937_64 engine(0x5eed'c0de'f00dULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    std::array<double, 3> xs{};
    for (double& x : xs) {
      do {
        x = 10.0 * (1.0 - unit(engine));
      } while (x <= 0.0);
    }
    std::sort(xs.begin(), xs.end());
    if (xs[0] == xs[2]) continue;
    const double t = (xs[1] - xs[0]) / (xs[2] - xs[0]);
    const double chord = (1.0 - t) * f(xs[0]) + t * f(xs[2]);
    if (!(f(xs[1]) <= chord + 1e-9)) {
      throw Error(Errc::InvalidKind, name + " is not convex near x = " + std::to_string(xs[1]));
    }
  }
  const double z = zero_limit.value_or(f(0.0));
  if (std::isnan(z)) throw Error(Errc::InvalidKind, name + ": f(0+) is NaN");
  return DivergenceKind(std::move(name), std::move(f), tail, z);
}

double DivergenceKind::term(double p, double q) const {
  if (p == 0.0) {
    if (q == 0.0) return 0.0;
    return tail_ == 0.0 ? 0.0 : q * tail_;
  }
  if (q == 0.0) return zero_limit_ == 0.0 ? 0.0 : p * zero_limit_;
  return p * f_(q / p);
}

std::vector<DivergenceKind> parse_kinds(std::string_view list) {
  std::vector<DivergenceKind> kinds;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto end = std::min(list.find(',', start), list.size());
    auto token = list.substr(start, end - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) kinds.push_back(DivergenceKind::by_name(token));
    start = end + 1;
  }
  if (kinds.empty()) throw Error(Errc::InvalidKind, "no divergence given");
  return kinds;
}

double f_divergence(std::span<const double> p, std::span<const double> q,
                    const DivergenceKind& kind) {
  if (p.size() != q.size()) {
    throw Error(Errc::LengthMismatch,
                std::to_string(p.size()) + " vs " + std::to_string(q.size()) + " outcomes");
  }
  require_probability(p, "p");
  require_probability(q, "q");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double t = kind.term(p[i], q[i]);
    if (t == kInf) return kInf;
    total += t;
  }
  return total;
}

double f_variety(const JointDistribution& joint, const DivergenceKind& kind) {
  const auto projection = uninformative_projection(joint);
  const double value = f_divergence(joint.mass(), projection.mass(), kind);
  // q(s) = 0 forces p(s) = 0 here, so the value is always finite.
  assert(std::isfinite(value));
  return value;
}

double tvd_variety_binary_closed_form(const JointDistribution& joint) {
  require_binary(joint);
  double total = 0.0;
  for (std::size_t b = 0; b < joint.n_bins(); ++b) total += std::abs(joint(0, b) - joint(1, b));
  return 0.5 * total;
}

double baseline(const JointDistribution& joint) {
  require_binary(joint);
  return std::abs(marginals(joint).choice[0] - 0.5);
}

}  // namespace variety
