#include "variety/estimation.hpp"

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "variety/error.hpp"
#include "variety/format.hpp"
#include "variety/parallel.hpp"

namespace variety {

SampleSet::SampleSet(std::size_t n_choices, std::size_t n_bins, std::vector<Observation> observations)
    : n_choices_(n_choices), n_bins_(n_bins), observations_(std::move(observations)) {
  if (n_choices_ < 2 || n_bins_ < 1) {
    throw Error(Errc::ValidationError, "sample set needs at least 2 choices and 1 bin");
  }
  for (const auto& obs : observations_) check(obs);
}

void SampleSet::add(Observation obs) {
  check(obs);
  observations_.push_back(std::move(obs));
}

void SampleSet::check(const Observation& obs) const {
  if (obs.choice.value >= n_choices_) {
    throw Error(Errc::ValidationError, "choice " + std::to_string(obs.choice.value) +
                                           " outside [0, " + std::to_string(n_choices_) + ")");
  }
  if (obs.prediction.value >= n_bins_) {
    throw Error(Errc::ValidationError, "prediction bin " + std::to_string(obs.prediction.value) +
                                           " outside [0, " + std::to_string(n_bins_) + ")");
  }
}

JointDistribution empirical_joint(const SampleSet& samples) {
  if (samples.empty()) throw Error(Errc::EmptySampleSet, "no observations");
  std::vector<std::size_t> counts(samples.n_choices() * samples.n_bins(), 0);
  for (const auto& obs : samples.observations()) {
    ++counts[obs.choice.value * samples.n_bins() + obs.prediction.value];
  }
  const auto n = static_cast<double>(samples.size());
  std::vector<double> mass(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) mass[i] = static_cast<double>(counts[i]) / n;
  return JointDistribution::from_row_major(std::move(mass), samples.n_choices(), samples.n_bins());
}

double empirical_f_variety(const SampleSet& samples, const DivergenceKind& kind) {
  return f_variety(empirical_joint(samples), kind);
}

namespace {

// Observation indices grouped per respondent, in order of first appearance.
std::vector<std::vector<std::size_t>> respondent_units(const SampleSet& samples) {
  std::vector<std::vector<std::size_t>> units;
  std::map<std::string, std::size_t> slot;
  const auto& obs = samples.observations();
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (!obs[i].respondent_id) {
      units.push_back({i});
      continue;
    }
    auto [it, inserted] = slot.try_emplace(*obs[i].respondent_id, units.size());
    if (inserted) units.emplace_back();
    units[it->second].push_back(i);
  }
  return units;
}

SampleSet subsample_units(const SampleSet& samples,
                          const std::vector<std::vector<std::size_t>>& units, std::size_t size,
                          RandomStream& stream) {
  std::vector<std::size_t> order(units.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Partial Fisher-Yates: the first `size` slots are a uniform draw without
  // replacement.
  for (std::size_t i = 0; i < size && i + 1 < order.size(); ++i) {
    const auto j = i + static_cast<std::size_t>(stream.below(order.size() - i));
    std::swap(order[i], order[j]);
  }
  std::vector<Observation> picked;
  const auto& obs = samples.observations();
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t idx : units[order[i]]) picked.push_back(obs[idx]);
  }
  return SampleSet(samples.n_choices(), samples.n_bins(), std::move(picked));
}

}  // namespace

std::size_t respondent_count(const SampleSet& samples) { return respondent_units(samples).size(); }

SampleSet subsample_respondents(const SampleSet& samples, std::size_t size, RandomStream& stream) {
  const auto units = respondent_units(samples);
  if (size > units.size()) {
    throw Error(Errc::ValidationError, "cannot draw " + std::to_string(size) + " of " +
                                           std::to_string(units.size()) + " respondents");
  }
  return subsample_units(samples, units, size, stream);
}

GroupComparison compare_groups_equalized(const SampleSet& group_a, const SampleSet& group_b,
                                         const DivergenceKind& kind, std::size_t trials,
                                         const RandomStream& stream, std::size_t threads) {
  return compare_groups_equalized(
      group_a, group_b, kind.name(),
      [&kind](const JointDistribution& joint) { return f_variety(joint, kind); }, trials, stream,
      threads);
}

GroupComparison compare_groups_equalized(const SampleSet& group_a, const SampleSet& group_b,
                                         const std::string& metric_name, const GroupMetric& metric,
                                         std::size_t trials, const RandomStream& stream,
                                         std::size_t threads) {
  if (group_a.empty()) throw Error(Errc::EmptySampleSet, "group A has no observations");
  if (group_b.empty()) throw Error(Errc::EmptySampleSet, "group B has no observations");
  if (trials < 1) throw Error(Errc::ConfigError, "need at least one trial");

  const auto units_a = respondent_units(group_a);
  const auto units_b = respondent_units(group_b);
  const bool subsample_a = units_a.size() > units_b.size();
  const SampleSet& fixed = subsample_a ? group_b : group_a;
  const SampleSet& pooled = subsample_a ? group_a : group_b;
  const auto& pooled_units = subsample_a ? units_a : units_b;
  const std::size_t m = std::min(units_a.size(), units_b.size());

  const double fixed_value = metric(empirical_joint(fixed));
  std::vector<double> values(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    RandomStream trial_stream = stream.child(t);
    values[t] = metric(empirical_joint(subsample_units(pooled, pooled_units, m, trial_stream)));
  });

  // Shifted by the first value so identical trials give exactly that value and std 0.
  double shifted = 0.0;
  for (double v : values) shifted += v - values.front();
  const double mean = values.front() + shifted / static_cast<double>(trials);
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  const double sd = trials > 1 ? std::sqrt(sq / static_cast<double>(trials - 1)) : 0.0;

  GroupComparison out;
  out.metric_name = metric_name;
  out.trials = trials;
  out.subsample_size = m;
  out.subsampled = subsample_a ? Side::A : Side::B;
  if (subsample_a) {
    out.group_a_value = mean;
    out.group_a_std = sd;
    out.group_b_mean = fixed_value;
    out.group_b_std = 0.0;
  } else {
    out.group_a_value = fixed_value;
    out.group_a_std = 0.0;
    out.group_b_mean = mean;
    out.group_b_std = sd;
  }
  return out;
}

std::string group_comparison_csv_header() {
  return "metric,group_a,group_b_mean,group_b_std,trials,subsample_size,group_a_std";
}

std::string to_csv_row(const GroupComparison& cmp) {
  return cmp.metric_name + "," + format_real(cmp.group_a_value) + "," +
         format_real(cmp.group_b_mean) + "," + format_real(cmp.group_b_std) + "," +
         std::to_string(cmp.trials) + "," + std::to_string(cmp.subsample_size) + "," +
         format_real(cmp.group_a_std);
}

}  // namespace variety
