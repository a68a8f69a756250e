#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "variety/dist_core.hpp"

namespace variety {

/// A convex generator f with f(1) = 0, together with the two limits needed to
/// evaluate D_f(p, q) = sum p f(q / p) where either argument vanishes:
///   tail       = lim_{u->inf} f(u) / u, used when p(s) = 0 < q(s)
///   zero_limit = lim_{u->0+} f(u),      used when q(s) = 0 < p(s)
/// Either limit may be +infinity.
class DivergenceKind {
 public:
  using Generator = std::function<double(double)>;

  static const DivergenceKind& tvd();
  static const DivergenceKind& kl();
  static const DivergenceKind& pearson();
  static const DivergenceKind& hellinger();

  /// Looks up "tvd" | "kl" | "pearson" | "hellinger". Throws InvalidKind.
  static const DivergenceKind& by_name(std::string_view name);
  static std::span<const std::string_view> builtin_names();

  /// Registers a user generator. Rejects it with InvalidKind unless f(1) = 0
  /// within 1e-12 and f passes a numeric convexity probe on (0, 10].
  /// When zero_limit is omitted it is taken as f(0).
  static DivergenceKind custom(std::string name, Generator f, double tail,
                               std::optional<double> zero_limit = std::nullopt);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] double operator()(double x) const { return f_(x); }
  [[nodiscard]] double tail() const noexcept { return tail_; }
  [[nodiscard]] double zero_limit() const noexcept { return zero_limit_; }

  /// Contribution p f(q / p) of a single outcome, extended to p = 0 or q = 0.
  [[nodiscard]] double term(double p, double q) const;

 private:
  DivergenceKind(std::string name, Generator f, double tail, double zero_limit)
      : name_(std::move(name)), f_(std::move(f)), tail_(tail), zero_limit_(zero_limit) {}

  std::string name_;
  Generator f_;
  double tail_;
  double zero_limit_;
};

/// Parses a comma-separated list of builtin kind names.
[[nodiscard]] std::vector<DivergenceKind> parse_kinds(std::string_view list);

/// D_f(p, q) = sum p(s) f(q(s) / p(s)). Returns +infinity (never throws) when a
/// term is unbounded, e.g. KL with q(s) = 0 < p(s).
[[nodiscard]] double f_divergence(std::span<const double> p, std::span<const double> q,
                                  const DivergenceKind& kind);

/// f-variety: D_f between the joint and its uninformative projection.
[[nodiscard]] double f_variety(const JointDistribution& joint, const DivergenceKind& kind);

/// Half the L1 distance between the two choice rows. Throws NotBinary.
[[nodiscard]] double tvd_variety_binary_closed_form(const JointDistribution& joint);

/// |q_0 - 1/2|, the unbalance of binary choice statistics. Throws NotBinary.
[[nodiscard]] double baseline(const JointDistribution& joint);

}  // namespace variety
