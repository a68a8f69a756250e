#include "variety/synthesis.hpp"

#include <array>
#include <cmath>
#include <string>

#include "variety/error.hpp"
#include "variety/quadrature.hpp"
#include "variety/special.hpp"

namespace variety {

namespace {

constexpr std::array<std::string_view, 4> kPresetNames = {"uniform-1", "non-uniform-1",
                                                          "uniform-2", "non-uniform-2"};

void check_beta(const BetaParams& p, const std::string& what) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0) || !std::isfinite(p.alpha) || !std::isfinite(p.beta)) {
    throw Error(Errc::ConfigError, what + " must have positive finite parameters");
  }
}

// Bin k covers [0.1k - 0.05, 0.1k + 0.05) clipped to [0, 1].
double bin_upper_edge(std::size_t k) {
  return k + 1 == kPredictionBins ? 1.0 : (2.0 * static_cast<double>(k) + 1.0) / 20.0;
}

// Density of one Beta component with its normalizer hoisted out of the loop.
struct BetaDensity {
  double a;
  double b;
  double log_norm;

  explicit BetaDensity(const BetaParams& p)
      : a(p.alpha), b(p.beta), log_norm(-log_beta(p.alpha, p.beta)) {}

  double operator()(double x) const {
    if (x <= 0.0 || x >= 1.0) return beta_pdf(x, a, b);
    return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) + log_norm);
  }
};

}  // namespace

void PopulationModel::validate() const {
  if (n_choices < 2) throw Error(Errc::ConfigError, "need at least two choices");
  if (expert_weights.size() != n_choices) {
    throw Error(Errc::ConfigError, "expert_weights must have n_choices entries");
  }
  if (expert_beta.size() != n_choices) {
    throw Error(Errc::ConfigError, "expert_beta must have n_choices entries");
  }
  double total = 0.0;
  for (double w : expert_weights) {
    if (!(w >= 0.0)) throw Error(Errc::ConfigError, "negative expert weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(Errc::ConfigError, "expert weights sum to " + std::to_string(total));
  }
  for (std::size_t c = 0; c < n_choices; ++c) {
    check_beta(expert_beta[c], "expert_beta[" + std::to_string(c) + "]");
  }
  check_beta(nonexpert_beta, "nonexpert_beta");
  if (!(nonexpert_ratio >= 0.0 && nonexpert_ratio <= 1.0)) {
    throw Error(Errc::ConfigError, "nonexpert_ratio must lie in [0, 1]");
  }
}

PopulationModel PopulationModel::with_ratio(double ratio) const {
  PopulationModel copy = *this;
  copy.nonexpert_ratio = ratio;
  return copy;
}

std::span<const std::string_view> preset_names() { return kPresetNames; }

PopulationModel preset(std::string_view name) {
  PopulationModel m;
  m.n_choices = 2;
  m.nonexpert_beta = {2.0, 2.0};
  m.nonexpert_ratio = 0.0;
  if (name == "uniform-1") {
    m.expert_weights = {0.5, 0.5};
    m.expert_beta = {{8.0, 3.0}, {4.0, 5.0}};
  } else if (name == "non-uniform-1") {
    m.expert_weights = {0.3, 0.7};
    m.expert_beta = {{8.0, 3.0}, {4.0, 5.0}};
  } else if (name == "uniform-2") {
    m.expert_weights = {0.5, 0.5};
    m.expert_beta = {{6.0, 6.0}, {2.0, 3.0}};
  } else if (name == "non-uniform-2") {
    m.expert_weights = {0.3, 0.7};
    m.expert_beta = {{6.0, 6.0}, {2.0, 3.0}};
  } else {
    throw Error(Errc::ConfigError, "unknown preset '" + std::string(name) + "'");
  }
  return m;
}

double beta_sample(RandomStream& stream, const BetaParams& params) {
  const double x = stream.gamma(params.alpha);
  const double y = stream.gamma(params.beta);
  const double sum = x + y;
  // Both draws underflow only for tiny shapes; fall back on the mean's side.
  if (!(sum > 0.0)) return params.alpha >= params.beta ? 1.0 : 0.0;
  return x / sum;
}

PredictionBin discretize_prediction(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(Errc::DomainError, "prediction must lie in [0, 1], got " + std::to_string(x));
  }
  // The slack makes decimal edges such as 0.15 round up despite their binary
  // representation falling just below the half.
  const auto bin = static_cast<std::size_t>(std::floor(10.0 * x + 0.5 + 1e-12));
  return PredictionBin{std::min(bin, kPredictionBins - 1)};
}

std::vector<double> bin_probabilities(const BetaParams& params) {
  std::vector<double> probs(kPredictionBins);
  double lower_cdf = 0.0;
  for (std::size_t k = 0; k < kPredictionBins; ++k) {
    const double upper_cdf = regularized_incomplete_beta(params.alpha, params.beta, bin_upper_edge(k));
    probs[k] = std::max(0.0, upper_cdf - lower_cdf);
    lower_cdf = upper_cdf;
  }
  return probs;
}

JointDistribution exact_discretized_joint(const PopulationModel& model) {
  model.validate();
  const std::size_t nc = model.n_choices;
  const double alpha = model.nonexpert_ratio;
  const double share = 1.0 / static_cast<double>(nc);
  const auto noise = bin_probabilities(model.nonexpert_beta);
  std::vector<double> mass(nc * kPredictionBins);
  for (std::size_t c = 0; c < nc; ++c) {
    const auto expert = bin_probabilities(model.expert_beta[c]);
    for (std::size_t k = 0; k < kPredictionBins; ++k) {
      mass[c * kPredictionBins + k] =
          (1.0 - alpha) * model.expert_weights[c] * expert[k] + alpha * share * noise[k];
    }
  }
  return JointDistribution::from_row_major(std::move(mass), nc, kPredictionBins);
}

double continuous_f_variety(const PopulationModel& model, const DivergenceKind& kind, double tol) {
  model.validate();
  if (!(tol > 0.0)) throw Error(Errc::DomainError, "tolerance must be positive");
  const std::size_t nc = model.n_choices;
  const double alpha = model.nonexpert_ratio;
  const double share = 1.0 / static_cast<double>(nc);

  std::vector<BetaDensity> experts;
  experts.reserve(nc);
  for (const auto& p : model.expert_beta) experts.emplace_back(p);
  const BetaDensity noise(model.nonexpert_beta);

  auto choice_density = [&](std::size_t c, double x) {
    const double e = model.expert_weights[c] == 0.0 || alpha == 1.0
                         ? 0.0
                         : (1.0 - alpha) * model.expert_weights[c] * experts[c](x);
    const double u = alpha == 0.0 ? 0.0 : alpha * share * noise(x);
    return e + u;
  };
  auto mean_density = [&](double x) {
    double m = 0.0;
    for (std::size_t c = 0; c < nc; ++c) m += choice_density(c, x);
    return m * share;
  };

  std::vector<double> breakpoints;
  for (std::size_t c = 0; c < nc; ++c) {
    auto roots = locate_sign_changes(
        [&](double x) { return choice_density(c, x) - mean_density(x); }, 0.0, 1.0);
    breakpoints.insert(breakpoints.end(), roots.begin(), roots.end());
  }

  std::vector<double> densities(nc);
  auto integrand = [&](double x) {
    double m = 0.0;
    for (std::size_t c = 0; c < nc; ++c) {
      densities[c] = choice_density(c, x);
      m += densities[c];
    }
    m *= share;
    double total = 0.0;
    for (std::size_t c = 0; c < nc; ++c) total += kind.term(densities[c], m);
    return total;
  };
  const auto result = integrate_adaptive(integrand, 0.0, 1.0, tol, breakpoints);
  return std::max(0.0, result.value);
}

SampleSet draw_samples(const PopulationModel& model, std::size_t n, RandomStream& stream) {
  model.validate();
  if (n == 0) throw Error(Errc::ConfigError, "sample size must be at least 1");
  const std::size_t nc = model.n_choices;
  std::vector<Observation> obs;
  obs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t choice;
    double x;
    if (stream.uniform() < model.nonexpert_ratio) {
      choice = static_cast<std::size_t>(stream.below(nc));
      x = beta_sample(stream, model.nonexpert_beta);
    } else {
      const double u = stream.uniform();
      double cumulative = 0.0;
      choice = nc - 1;
      for (std::size_t c = 0; c < nc; ++c) {
        cumulative += model.expert_weights[c];
        if (u < cumulative) {
          choice = c;
          break;
        }
      }
      // Zero-weight choices are never selected, even via the fallback.
      while (model.expert_weights[choice] == 0.0 && choice > 0) --choice;
      x = beta_sample(stream, model.expert_beta[choice]);
    }
    obs.push_back(Observation{ChoiceIndex{choice}, discretize_prediction(x), {}, {}});
  }
  return SampleSet(nc, kPredictionBins, std::move(obs));
}

}  // namespace variety
