#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace variety {

/// Canonical number of prediction options: {0%, 10%, ..., 100%}.
inline constexpr std::size_t kPredictionBins = 11;

struct ChoiceIndex {
  std::size_t value = 0;
  friend bool operator==(ChoiceIndex, ChoiceIndex) = default;
};

struct PredictionBin {
  std::size_t value = 0;
  friend bool operator==(PredictionBin, PredictionBin) = default;
};

/// Finite probability table over (choice, prediction-bin) pairs, stored
/// row-major with one row per choice. Instances are immutable and always
/// normalized; construct them through make_joint or the factory functions.
class JointDistribution {
 public:
  /// Validates and renormalizes. Entries must be non-negative and sum to one
  /// within 1e-9.
  static JointDistribution from_row_major(std::vector<double> mass, std::size_t n_choices,
                                          std::size_t n_bins);

  [[nodiscard]] std::size_t n_choices() const noexcept { return n_choices_; }
  [[nodiscard]] std::size_t n_bins() const noexcept { return n_bins_; }
  [[nodiscard]] std::size_t size() const noexcept { return mass_.size(); }

  [[nodiscard]] double operator()(std::size_t choice, std::size_t bin) const {
    return mass_[choice * n_bins_ + bin];
  }
  [[nodiscard]] double at(ChoiceIndex c, PredictionBin b) const;

  [[nodiscard]] std::span<const double> mass() const noexcept { return mass_; }
  [[nodiscard]] std::span<const double> row(std::size_t choice) const {
    return std::span<const double>(mass_).subspan(choice * n_bins_, n_bins_);
  }

  [[nodiscard]] std::vector<std::vector<double>> to_table() const;

  friend bool operator==(const JointDistribution&, const JointDistribution&) = default;

 private:
  JointDistribution(std::vector<double> mass, std::size_t n_choices, std::size_t n_bins)
      : mass_(std::move(mass)), n_choices_(n_choices), n_bins_(n_bins) {}

  std::vector<double> mass_;
  std::size_t n_choices_;
  std::size_t n_bins_;
};

struct Marginals {
  std::vector<double> choice;
  std::vector<double> prediction;
};

struct WeightedJoint {
  double weight;
  JointDistribution joint;
};

/// Builds a joint from a nested table, checking it has exactly n_choices rows
/// of n_bins entries each.
[[nodiscard]] JointDistribution make_joint(const std::vector<std::vector<double>>& table,
                                           std::size_t n_choices, std::size_t n_bins);

[[nodiscard]] Marginals marginals(const JointDistribution& joint);

/// Entrywise convex combination. Weights must be non-negative and sum to one
/// within 1e-12; every component must share the same shape.
[[nodiscard]] JointDistribution mix(std::span<const WeightedJoint> components);
[[nodiscard]] JointDistribution mix(double weight_a, const JointDistribution& a, double weight_b,
                                    const JointDistribution& b);

/// U(x)P: uniform choice marginal, independent of the prediction, with the same
/// prediction marginal as the input.
[[nodiscard]] JointDistribution uninformative_projection(const JointDistribution& joint);

/// Uniform over choices times an arbitrary prediction marginal.
[[nodiscard]] JointDistribution make_uninformative(std::span<const double> prediction_marginal,
                                                   std::size_t n_choices);

[[nodiscard]] double max_norm_distance(const JointDistribution& a, const JointDistribution& b);

[[nodiscard]] bool is_uninformative(const JointDistribution& joint, double tol);

}  // namespace variety
