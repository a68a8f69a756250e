#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "variety/dist_core.hpp"
#include "variety/divergence.hpp"
#include "variety/random.hpp"
#include "variety/samples.hpp"

namespace variety {

struct BetaParams {
  double alpha = 1.0;
  double beta = 1.0;

  [[nodiscard]] double mean() const noexcept { return alpha / (alpha + beta); }
  friend bool operator==(const BetaParams&, const BetaParams&) = default;
};

/// Experts pick choice c with probability expert_weights[c] and then report a
/// prediction drawn from expert_beta[c]; non-experts pick uniformly at random
/// and report from nonexpert_beta. A fraction nonexpert_ratio of the
/// population are non-experts.
struct PopulationModel {
  std::size_t n_choices = 2;
  std::vector<double> expert_weights;
  std::vector<BetaParams> expert_beta;
  BetaParams nonexpert_beta{2.0, 2.0};
  double nonexpert_ratio = 0.0;

  /// Throws ConfigError when any field is out of range.
  void validate() const;
  [[nodiscard]] PopulationModel with_ratio(double ratio) const;

  friend bool operator==(const PopulationModel&, const PopulationModel&) = default;
};

/// "uniform-1", "non-uniform-1", "uniform-2", "non-uniform-2" (ratio 0).
[[nodiscard]] PopulationModel preset(std::string_view name);
[[nodiscard]] std::span<const std::string_view> preset_names();

/// One Beta draw as X / (X + Y) with X ~ Gamma(alpha), Y ~ Gamma(beta).
[[nodiscard]] double beta_sample(RandomStream& stream, const BetaParams& params);

/// Nearest of the 11 options {0%, ..., 100%}, halves rounding up.
[[nodiscard]] PredictionBin discretize_prediction(double x);

/// Probability that a Beta(params) prediction lands in each of the 11 bins.
[[nodiscard]] std::vector<double> bin_probabilities(const BetaParams& params);

/// Exact 11-bin joint of the model, bin masses from the Beta CDF.
[[nodiscard]] JointDistribution exact_discretized_joint(const PopulationModel& model);

inline constexpr double kDefaultQuadratureTol = 1e-8;

/// f-variety of the continuous (un-binned) joint of the model, by adaptive
/// quadrature to absolute tolerance tol. Crossings of each choice density
/// with the choice-averaged density are located first and used as
/// breakpoints. Throws QuadratureFailure.
[[nodiscard]] double continuous_f_variety(const PopulationModel& model, const DivergenceKind& kind,
                                          double tol = kDefaultQuadratureTol);

/// n i.i.d. observations from the model, predictions discretized.
[[nodiscard]] SampleSet draw_samples(const PopulationModel& model, std::size_t n,
                                     RandomStream& stream);

}  // namespace variety
