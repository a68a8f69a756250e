#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "variety/dist_core.hpp"

namespace variety {

struct Observation {
  ChoiceIndex choice;
  PredictionBin prediction;
  std::optional<std::string> respondent_id;
  std::optional<std::string> question_id;

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// Observations over a declared (n_choices, n_bins) shape. The constructor
/// rejects out-of-range indices with ValidationError; emptiness is allowed
/// here and rejected by the metric functions instead.
class SampleSet {
 public:
  SampleSet(std::size_t n_choices, std::size_t n_bins, std::vector<Observation> observations = {});

  void add(Observation obs);

  [[nodiscard]] std::size_t n_choices() const noexcept { return n_choices_; }
  [[nodiscard]] std::size_t n_bins() const noexcept { return n_bins_; }
  [[nodiscard]] std::size_t size() const noexcept { return observations_.size(); }
  [[nodiscard]] bool empty() const noexcept { return observations_.empty(); }
  [[nodiscard]] const std::vector<Observation>& observations() const noexcept {
    return observations_;
  }

  friend bool operator==(const SampleSet&, const SampleSet&) = default;

 private:
  void check(const Observation& obs) const;

  std::size_t n_choices_;
  std::size_t n_bins_;
  std::vector<Observation> observations_;
};

}  // namespace variety
