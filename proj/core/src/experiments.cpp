#include "variety/experiments.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>

#include "variety/error.hpp"
#include "variety/estimation.hpp"
#include "variety/format.hpp"
#include "variety/parallel.hpp"
#include "variety/json_io.hpp"

namespace variety {

std::vector<double> SweepConfig::default_ratios() {
  std::vector<double> r;
  for (int i = 0; i <= 10; ++i) r.push_back(static_cast<double>(i) / 10.0);
  return r;
}

void SweepConfig::validate() const {
  model.validate();
  if (ratios.empty()) throw Error(Errc::ConfigError, "no ratios");
  for (double r : ratios) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw Error(Errc::ConfigError, "ratio " + std::to_string(r) + " outside [0, 1]");
    }
  }
  if (sample_sizes.empty()) throw Error(Errc::ConfigError, "no sample sizes");
  for (std::size_t n : sample_sizes) {
    if (n < 1) throw Error(Errc::ConfigError, "sample sizes must be at least 1");
  }
  if (trials_per_point < 2) {
    throw Error(Errc::ConfigError, "trials_per_point must be at least 2 for a standard deviation");
  }
  if (divergences.empty()) throw Error(Errc::ConfigError, "no divergences");
  for (const auto& name : divergences) {
    try {
      (void)DivergenceKind::by_name(name);
    } catch (const Error& e) {
      throw Error(Errc::ConfigError, e.what());
    }
  }
  if (!(quadrature_tol > 0.0)) throw Error(Errc::ConfigError, "quadrature_tol must be positive");
}

RandomStream sweep_stream(std::uint64_t base_seed, std::string_view kind, double ratio,
                          std::size_t n, std::size_t trial) {
  // +0.0 so that -0.0 and 0.0 key the same point.
  const auto ratio_bits = std::bit_cast<std::uint64_t>(ratio + 0.0);
  return RandomStream(base_seed, hash_words({hash_string(kind), ratio_bits, n, trial}));
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const std::size_t n_kinds = config.divergences.size();
  const std::size_t n_ratios = config.ratios.size();
  const std::size_t n_sizes = config.sample_sizes.size();
  const std::size_t trials = config.trials_per_point;

  std::vector<const DivergenceKind*> kinds;
  for (const auto& name : config.divergences) kinds.push_back(&DivergenceKind::by_name(name));

  struct Theory {
    double continuous;
    double discretized;
  };
  std::vector<Theory> theory(n_kinds * n_ratios);
  parallel_for(theory.size(), config.threads, [&](std::size_t i) {
    const auto& kind = *kinds[i / n_ratios];
    const auto model = config.model.with_ratio(config.ratios[i % n_ratios]);
    theory[i] = {continuous_f_variety(model, kind, config.quadrature_tol),
                 f_variety(exact_discretized_joint(model), kind)};
  });

  const std::size_t n_points = n_kinds * n_ratios * n_sizes;
  std::vector<double> values(n_points * trials);
  parallel_for(values.size(), config.threads, [&](std::size_t job) {
    const std::size_t point = job / trials;
    const std::size_t trial = job % trials;
    const std::size_t k = point / (n_ratios * n_sizes);
    const std::size_t r = (point / n_sizes) % n_ratios;
    const std::size_t s = point % n_sizes;
    const std::size_t n = config.sample_sizes[s];
    const double ratio = config.ratios[r];
    auto stream = sweep_stream(config.base_seed, config.divergences[k], ratio, n, trial);
    const auto samples = draw_samples(config.model.with_ratio(ratio), n, stream);
    values[job] = empirical_f_variety(samples, *kinds[k]);
  });

  SweepResult result;
  result.rows.reserve(n_points);
  for (std::size_t point = 0; point < n_points; ++point) {
    const std::size_t k = point / (n_ratios * n_sizes);
    const std::size_t r = (point / n_sizes) % n_ratios;
    const std::size_t s = point % n_sizes;
    const auto first = values.begin() + static_cast<std::ptrdiff_t>(point * trials);
    const auto last = first + static_cast<std::ptrdiff_t>(trials);
    const double mean = std::accumulate(first, last, 0.0) / static_cast<double>(trials);
    double sq = 0.0;
    for (auto it = first; it != last; ++it) sq += (*it - mean) * (*it - mean);
    const auto& t = theory[k * n_ratios + r];
    result.rows.push_back(SweepRow{config.divergences[k], config.ratios[r], config.sample_sizes[s],
                                   mean, std::sqrt(sq / static_cast<double>(trials - 1)),
                                   t.continuous, t.discretized});
  }
  return result;
}

SweepFormat parse_sweep_format(std::string_view name) {
  if (name == "csv") return SweepFormat::Csv;
  if (name == "json") return SweepFormat::Json;
  throw Error(Errc::ConfigError, "unknown output format '" + std::string(name) + "'");
}

std::string format_sweep(const SweepResult& result, SweepFormat format) {
  if (format == SweepFormat::Json) return sweep_to_json(result);
  std::string out = "kind,ratio,n,mean,std,theory_cont,theory_disc\n";
  for (const auto& row : result.rows) {
    out += row.kind;
    out += ',' + format_real(row.ratio);
    out += ',' + std::to_string(row.n);
    out += ',' + format_real(row.empirical_mean);
    out += ',' + format_real(row.empirical_std);
    out += ',' + format_real(row.theoretical_continuous);
    out += ',' + format_real(row.theoretical_discretized);
    out += '\n';
  }
  return out;
}

void write_sweep(const SweepResult& result, const std::string& path, SweepFormat format) {
  const auto text = format_sweep(result, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(Errc::IoError, "failed writing " + path);
}

}  // namespace variety
