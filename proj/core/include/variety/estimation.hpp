#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "variety/dist_core.hpp"
#include "variety/divergence.hpp"
#include "variety/random.hpp"
#include "variety/samples.hpp"

namespace variety {

/// Plug-in histogram estimate: count(c, b) / n. Throws EmptySampleSet.
[[nodiscard]] JointDistribution empirical_joint(const SampleSet& samples);

[[nodiscard]] double empirical_f_variety(const SampleSet& samples, const DivergenceKind& kind);

enum class Side { A, B };

/// Result of comparing two groups at equal size. The larger group (B on a
/// tie) is subsampled without replacement down to the smaller group's size,
/// `trials` times; its value is the mean over trials and its std the sample
/// standard deviation. The other side is evaluated once and has std 0.
/// group_a_* always describe the first input and group_b_* the second.
struct GroupComparison {
  std::string metric_name;
  double group_a_value = 0.0;
  double group_a_std = 0.0;
  double group_b_mean = 0.0;
  double group_b_std = 0.0;
  std::size_t trials = 0;
  std::size_t subsample_size = 0;
  Side subsampled = Side::B;

  friend bool operator==(const GroupComparison&, const GroupComparison&) = default;
};

using GroupMetric = std::function<double(const JointDistribution&)>;

inline constexpr std::size_t kDefaultComparisonTrials = 1000;

/// Number of subsampling units: distinct respondent ids, with id-less
/// observations each counting as their own respondent.
[[nodiscard]] std::size_t respondent_count(const SampleSet& samples);

/// Draws `size` respondents without replacement and returns all of their
/// observations.
[[nodiscard]] SampleSet subsample_respondents(const SampleSet& samples, std::size_t size,
                                              RandomStream& stream);

[[nodiscard]] GroupComparison compare_groups_equalized(const SampleSet& group_a,
                                                       const SampleSet& group_b,
                                                       const DivergenceKind& kind,
                                                       std::size_t trials, const RandomStream& stream,
                                                       std::size_t threads = 1);

/// Same protocol with an arbitrary metric of the empirical joint.
[[nodiscard]] GroupComparison compare_groups_equalized(const SampleSet& group_a,
                                                       const SampleSet& group_b,
                                                       const std::string& metric_name,
                                                       const GroupMetric& metric,
                                                       std::size_t trials, const RandomStream& stream,
                                                       std::size_t threads = 1);

/// "metric,group_a,group_b_mean,group_b_std,trials,subsample_size,group_a_std"
[[nodiscard]] std::string group_comparison_csv_header();
[[nodiscard]] std::string to_csv_row(const GroupComparison& cmp);
[[nodiscard]] std::string to_json(const GroupComparison& cmp);

}  // namespace variety
