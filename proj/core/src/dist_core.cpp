#include "variety/dist_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "variety/error.hpp"

namespace variety {

namespace {

constexpr double kNormalizationSlack = 1e-9;
constexpr double kWeightSlack = 1e-12;

void require_same_shape(const JointDistribution& a, const JointDistribution& b) {
  if (a.n_choices() != b.n_choices() || a.n_bins() != b.n_bins()) {
    throw Error(Errc::ShapeMismatch, std::to_string(a.n_choices()) + "x" +
                                         std::to_string(a.n_bins()) + " vs " +
                                         std::to_string(b.n_choices()) + "x" +
                                         std::to_string(b.n_bins()));
  }
}

}  // namespace

JointDistribution JointDistribution::from_row_major(std::vector<double> mass,
                                                    std::size_t n_choices, std::size_t n_bins) {
  if (n_choices < 2 || n_bins < 1) {
    throw Error(Errc::BadShape, "need at least 2 choices and 1 bin, got " +
                                    std::to_string(n_choices) + "x" + std::to_string(n_bins));
  }
  if (mass.size() != n_choices * n_bins) {
    throw Error(Errc::BadShape, "expected " + std::to_string(n_choices * n_bins) +
                                    " entries, got " + std::to_string(mass.size()));
  }
  double total = 0.0;
  for (double m : mass) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw Error(Errc::NegativeMass, "entry " + std::to_string(m));
    }
    total += m;
  }
  if (std::abs(total - 1.0) > kNormalizationSlack) {
    throw Error(Errc::NotNormalized, "entries sum to " + std::to_string(total));
  }
  if (total != 1.0) {
    for (double& m : mass) m /= total;
  }
  return JointDistribution(std::move(mass), n_choices, n_bins);
}

double JointDistribution::at(ChoiceIndex c, PredictionBin b) const {
  if (c.value >= n_choices_ || b.value >= n_bins_) {
    throw Error(Errc::DomainError, "index out of range");
  }
  return (*this)(c.value, b.value);
}

std::vector<std::vector<double>> JointDistribution::to_table() const {
  std::vector<std::vector<double>> table(n_choices_);
  for (std::size_t c = 0; c < n_choices_; ++c) {
    auto r = row(c);
    table[c].assign(r.begin(), r.end());
  }
  return table;
}

JointDistribution make_joint(const std::vector<std::vector<double>>& table, std::size_t n_choices,
                             std::size_t n_bins) {
  if (table.size() != n_choices) {
    throw Error(Errc::BadShape, "table has " + std::to_string(table.size()) + " rows, expected " +
                                    std::to_string(n_choices));
  }
  std::vector<double> flat;
  flat.reserve(n_choices * n_bins);
  for (const auto& r : table) {
    if (r.size() != n_bins) {
      throw Error(Errc::BadShape, "row has " + std::to_string(r.size()) + " entries, expected " +
                                      std::to_string(n_bins));
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return JointDistribution::from_row_major(std::move(flat), n_choices, n_bins);
}

Marginals marginals(const JointDistribution& joint) {
  Marginals out{std::vector<double>(joint.n_choices(), 0.0),
                std::vector<double>(joint.n_bins(), 0.0)};
  for (std::size_t c = 0; c < joint.n_choices(); ++c) {
    for (std::size_t b = 0; b < joint.n_bins(); ++b) {
      out.choice[c] += joint(c, b);
      out.prediction[b] += joint(c, b);
    }
  }
  return out;
}

JointDistribution mix(std::span<const WeightedJoint> components) {
  if (components.empty()) {
    throw Error(Errc::BadWeights, "no components");
  }
  double total = 0.0;
  for (const auto& comp : components) {
    if (!(comp.weight >= 0.0)) {
      throw Error(Errc::BadWeights, "negative weight " + std::to_string(comp.weight));
    }
    require_same_shape(components.front().joint, comp.joint);
    total += comp.weight;
  }
  if (std::abs(total - 1.0) > kWeightSlack) {
    throw Error(Errc::BadWeights, "weights sum to " + std::to_string(total));
  }
  const auto& first = components.front().joint;
  std::vector<double> mass(first.size(), 0.0);
  for (const auto& comp : components) {
    auto src = comp.joint.mass();
    for (std::size_t i = 0; i < mass.size(); ++i) mass[i] += comp.weight * src[i];
  }
  return JointDistribution::from_row_major(std::move(mass), first.n_choices(), first.n_bins());
}

JointDistribution mix(double weight_a, const JointDistribution& a, double weight_b,
                      const JointDistribution& b) {
  const WeightedJoint parts[] = {{weight_a, a}, {weight_b, b}};
  return mix(parts);
}

JointDistribution make_uninformative(std::span<const double> prediction_marginal,
                                     std::size_t n_choices) {
  const std::size_t n_bins = prediction_marginal.size();
  std::vector<double> mass(n_choices * n_bins);
  const double share = 1.0 / static_cast<double>(n_choices);
  for (std::size_t c = 0; c < n_choices; ++c) {
    for (std::size_t b = 0; b < n_bins; ++b) mass[c * n_bins + b] = prediction_marginal[b] * share;
  }
  return JointDistribution::from_row_major(std::move(mass), n_choices, n_bins);
}

JointDistribution uninformative_projection(const JointDistribution& joint) {
  return make_uninformative(marginals(joint).prediction, joint.n_choices());
}

double max_norm_distance(const JointDistribution& a, const JointDistribution& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  auto ma = a.mass();
  auto mb = b.mass();
  for (std::size_t i = 0; i < ma.size(); ++i) worst = std::max(worst, std::abs(ma[i] - mb[i]));
  return worst;
}

bool is_uninformative(const JointDistribution& joint, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::DomainError, "tolerance must be positive");
  return max_norm_distance(joint, uninformative_projection(joint)) <= tol;
}

}  // namespace variety
