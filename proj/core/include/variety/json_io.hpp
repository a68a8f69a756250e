#pragma once

#include <string>
#include <string_view>

#include "variety/dist_core.hpp"
#include "variety/experiments.hpp"
#include "variety/synthesis.hpp"

namespace variety {

// Joint: {"n_choices": int, "n_bins": int, "mass": [[row 0], [row 1], ...]}
[[nodiscard]] JointDistribution joint_from_json(std::string_view text);
[[nodiscard]] std::string joint_to_json(const JointDistribution& joint);

// Model: {"n_choices", "expert_weights": [...], "expert_beta": [[a, b], ...],
//         "nonexpert_beta": [a, b], "nonexpert_ratio"}
// nonexpert_beta defaults to [2, 2] and nonexpert_ratio to 0 when absent.
[[nodiscard]] PopulationModel model_from_json(std::string_view text);
[[nodiscard]] std::string model_to_json(const PopulationModel& model);

/// Array of row objects with the same keys as the sweep CSV.
[[nodiscard]] std::string sweep_to_json(const SweepResult& result);

/// Whole file contents. Throws IoError.
[[nodiscard]] std::string read_text_file(const std::string& path);

}  // namespace variety
