#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "variety/synthesis.hpp"

namespace variety {

struct SweepConfig {
  /// Base model; its nonexpert_ratio is overridden by each entry of `ratios`.
  PopulationModel model = preset("uniform-1");
  std::vector<double> ratios = default_ratios();
  std::vector<std::size_t> sample_sizes = {100, 200, 500, 1000};
  std::size_t trials_per_point = 100;
  std::vector<std::string> divergences = {"tvd"};
  std::uint64_t base_seed = 0;
  /// Worker threads; 0 uses hardware concurrency. Never changes the output.
  std::size_t threads = 0;
  double quadrature_tol = kDefaultQuadratureTol;

  /// 0.0, 0.1, ..., 1.0.
  static std::vector<double> default_ratios();

  /// Throws ConfigError.
  void validate() const;
};

struct SweepRow {
  std::string kind;
  double ratio = 0.0;
  std::size_t n = 0;
  double empirical_mean = 0.0;
  double empirical_std = 0.0;
  double theoretical_continuous = 0.0;
  double theoretical_discretized = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
  /// Ordered by (kind, ratio, n) in configuration order.
  std::vector<SweepRow> rows;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// Stream used for one trial of one grid point. Keyed on the kind name, the
/// ratio value and n rather than positions, so extending the grid leaves the
/// draws of existing points untouched.
[[nodiscard]] RandomStream sweep_stream(std::uint64_t base_seed, std::string_view kind,
                                        double ratio, std::size_t n, std::size_t trial);

[[nodiscard]] SweepResult run_sweep(const SweepConfig& config);

enum class SweepFormat { Csv, Json };

[[nodiscard]] SweepFormat parse_sweep_format(std::string_view name);

/// Renders the table. CSV header is kind,ratio,n,mean,std,theory_cont,theory_disc;
/// reals use 6 significant digits in both formats.
[[nodiscard]] std::string format_sweep(const SweepResult& result, SweepFormat format);

/// Writes format_sweep to `path`. Throws IoError.
void write_sweep(const SweepResult& result, const std::string& path, SweepFormat format);

}  // namespace variety
