#include "variety/json_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "variety/error.hpp"
#include "variety/estimation.hpp"
#include "variety/format.hpp"

namespace variety {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, std::string(what) + ": " + e.what());
  }
}

template <class T>
T field(const json& obj, const char* key, const char* what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(Errc::ParseError, std::string(what) + ": missing field \"" + key + "\"");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string(what) + ": field \"" + key + "\": " + e.what());
  }
}

BetaParams beta_from_pair(const std::vector<double>& pair, const char* what) {
  if (pair.size() != 2) {
    throw Error(Errc::ParseError, std::string(what) + ": Beta parameters must be [a, b]");
  }
  return {pair[0], pair[1]};
}

// Rounds to 6 significant digits so JSON and CSV carry the same values.
double rounded(double v) { return std::strtod(format_real(v).c_str(), nullptr); }

}  // namespace

JointDistribution joint_from_json(std::string_view text) {
  const json doc = parse(text, "joint");
  const auto n_choices = field<std::size_t>(doc, "n_choices", "joint");
  const auto n_bins = field<std::size_t>(doc, "n_bins", "joint");
  const auto mass = field<std::vector<std::vector<double>>>(doc, "mass", "joint");
  return make_joint(mass, n_choices, n_bins);
}

std::string joint_to_json(const JointDistribution& joint) {
  ordered_json doc;
  doc["n_choices"] = joint.n_choices();
  doc["n_bins"] = joint.n_bins();
  doc["mass"] = joint.to_table();
  return doc.dump();
}

PopulationModel model_from_json(std::string_view text) {
  const json doc = parse(text, "model");
  PopulationModel m;
  m.n_choices = field<std::size_t>(doc, "n_choices", "model");
  m.expert_weights = field<std::vector<double>>(doc, "expert_weights", "model");
  for (const auto& pair : field<std::vector<std::vector<double>>>(doc, "expert_beta", "model")) {
    m.expert_beta.push_back(beta_from_pair(pair, "model expert_beta"));
  }
  if (doc.contains("nonexpert_beta")) {
    m.nonexpert_beta =
        beta_from_pair(field<std::vector<double>>(doc, "nonexpert_beta", "model"), "model");
  }
  if (doc.contains("nonexpert_ratio")) {
    m.nonexpert_ratio = field<double>(doc, "nonexpert_ratio", "model");
  }
  m.validate();
  return m;
}

std::string model_to_json(const PopulationModel& model) {
  ordered_json doc;
  doc["n_choices"] = model.n_choices;
  doc["expert_weights"] = model.expert_weights;
  ordered_json betas = ordered_json::array();
  for (const auto& b : model.expert_beta) betas.push_back({b.alpha, b.beta});
  doc["expert_beta"] = betas;
  doc["nonexpert_beta"] = {model.nonexpert_beta.alpha, model.nonexpert_beta.beta};
  doc["nonexpert_ratio"] = model.nonexpert_ratio;
  return doc.dump(2);
}

std::string sweep_to_json(const SweepResult& result) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : result.rows) {
    ordered_json r;
    r["kind"] = row.kind;
    r["ratio"] = rounded(row.ratio);
    r["n"] = row.n;
    r["mean"] = rounded(row.empirical_mean);
    r["std"] = rounded(row.empirical_std);
    r["theory_cont"] = rounded(row.theoretical_continuous);
    r["theory_disc"] = rounded(row.theoretical_discretized);
    rows.push_back(std::move(r));
  }
  return rows.dump(2) + "\n";
}

std::string to_json(const GroupComparison& cmp) {
  ordered_json doc;
  doc["metric"] = cmp.metric_name;
  doc["group_a"] = cmp.group_a_value;
  doc["group_a_std"] = cmp.group_a_std;
  doc["group_b_mean"] = cmp.group_b_mean;
  doc["group_b_std"] = cmp.group_b_std;
  doc["trials"] = cmp.trials;
  doc["subsample_size"] = cmp.subsample_size;
  doc["subsampled"] = cmp.subsampled == Side::A ? "a" : "b";
  return doc.dump();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(Errc::IoError, "failed reading " + path);
  return buf.str();
}

}  // namespace variety
