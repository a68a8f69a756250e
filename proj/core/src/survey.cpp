#include "variety/survey.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "variety/csv.hpp"
#include "variety/error.hpp"
#include "variety/format.hpp"
#include "variety/parallel.hpp"

namespace variety {

namespace {

std::string where(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line) + ": ";
}

std::size_t require_column(const csv::Table& table, const std::string& name,
                           const std::string& path) {
  const auto idx = table.column(name);
  if (idx == std::string::npos) {
    throw Error(Errc::ParseError, path + ": missing column '" + name + "'");
  }
  return idx;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto end = text.find(sep, start);
    parts.emplace_back(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string pair_key(const std::string& respondent, const std::string& question) {
  return respondent + '\x1f' + question;
}

}  // namespace

const Question* SurveyDataset::find_question(std::string_view id) const {
  for (const auto& q : questions) {
    if (q.id == id) return &q;
  }
  return nullptr;
}

const Respondent* SurveyDataset::find_respondent(std::string_view id) const {
  for (const auto& r : respondents) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

void SurveyDataset::validate() const {
  std::unordered_map<std::string, const Question*> qs;
  for (const auto& q : questions) {
    if (q.options.size() < 2) {
      throw Error(Errc::ValidationError, "question " + q.id + " has fewer than two options");
    }
    std::set<std::string> distinct(q.options.begin(), q.options.end());
    if (distinct.size() != q.options.size()) {
      throw Error(Errc::ValidationError, "question " + q.id + " repeats an option");
    }
    if (!qs.emplace(q.id, &q).second) {
      throw Error(Errc::ValidationError, "duplicate question " + q.id);
    }
  }
  std::unordered_set<std::string> rs;
  for (const auto& r : respondents) {
    if (!rs.insert(r.id).second) throw Error(Errc::ValidationError, "duplicate respondent " + r.id);
  }
  std::unordered_set<std::string> pairs;
  for (const auto& resp : responses) {
    if (!rs.contains(resp.respondent_id)) {
      throw Error(Errc::ValidationError, "response from unknown respondent " + resp.respondent_id);
    }
    const auto it = qs.find(resp.question_id);
    if (it == qs.end()) {
      throw Error(Errc::ValidationError, "response to unknown question " + resp.question_id);
    }
    if (resp.choice >= it->second->n_choices()) {
      throw Error(Errc::ValidationError, "choice outside the options of " + resp.question_id);
    }
    if (resp.prediction_pct < 0 || resp.prediction_pct > 100 || resp.prediction_pct % 10 != 0) {
      throw Error(Errc::ValidationError,
                  "prediction " + std::to_string(resp.prediction_pct) + " is not one of 0,10,...,100");
    }
    if (!pairs.insert(pair_key(resp.respondent_id, resp.question_id)).second) {
      throw Error(Errc::ValidationError,
                  resp.respondent_id + " answered " + resp.question_id + " twice");
    }
  }
}

SurveyDataset load_survey(const std::string& responses_path, const std::string& respondents_path,
                          const std::optional<std::string>& questions_path) {
  SurveyDataset ds;

  const auto people = csv::read_file(respondents_path);
  const auto id_col = require_column(people, "respondent_id", respondents_path);
  for (std::size_t c = 0; c < people.header.size(); ++c) {
    if (c != id_col) ds.attribute_names.push_back(people.header[c]);
  }
  std::unordered_set<std::string> known;
  for (std::size_t i = 0; i < people.rows.size(); ++i) {
    const auto& row = people.rows[i];
    Respondent r{row[id_col], {}};
    if (r.id.empty()) {
      throw Error(Errc::ValidationError,
                  where(respondents_path, people.line_numbers[i]) + "empty respondent_id");
    }
    if (!known.insert(r.id).second) {
      throw Error(Errc::ValidationError,
                  where(respondents_path, people.line_numbers[i]) + "duplicate respondent " + r.id);
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c != id_col) r.attributes.emplace(people.header[c], row[c]);
    }
    ds.respondents.push_back(std::move(r));
  }

  const bool declared = questions_path.has_value();
  std::unordered_map<std::string, std::size_t> question_slot;
  if (declared) {
    const auto qt = csv::read_file(*questions_path);
    const auto qcol = require_column(qt, "question_id", *questions_path);
    const auto ocol = require_column(qt, "options", *questions_path);
    for (std::size_t i = 0; i < qt.rows.size(); ++i) {
      Question q{qt.rows[i][qcol], split(qt.rows[i][ocol], '|')};
      const std::set<std::string> distinct(q.options.begin(), q.options.end());
      if (q.options.size() < 2 || distinct.size() != q.options.size()) {
        throw Error(Errc::ValidationError, where(*questions_path, qt.line_numbers[i]) +
                                               "question needs at least two distinct options");
      }
      if (!question_slot.emplace(q.id, ds.questions.size()).second) {
        throw Error(Errc::ValidationError,
                    where(*questions_path, qt.line_numbers[i]) + "duplicate question " + q.id);
      }
      ds.questions.push_back(std::move(q));
    }
  }

  const auto table = csv::read_file(responses_path);
  const auto rcol = require_column(table, "respondent_id", responses_path);
  const auto qcol = require_column(table, "question_id", responses_path);
  const auto ccol = require_column(table, "choice", responses_path);
  const auto pcol = require_column(table, "prediction_pct", responses_path);
  std::unordered_set<std::string> pairs;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const auto at = where(responses_path, table.line_numbers[i]);

    Response resp;
    resp.respondent_id = row[rcol];
    resp.question_id = row[qcol];

    const auto pct_text = trim(row[pcol]);
    int pct = 0;
    const auto [ptr, ec] = std::from_chars(pct_text.data(), pct_text.data() + pct_text.size(), pct);
    if (ec != std::errc{} || ptr != pct_text.data() + pct_text.size() || pct_text.empty()) {
      throw Error(Errc::ParseError, at + "prediction_pct '" + row[pcol] + "' is not an integer");
    }
    if (pct < 0 || pct > 100 || pct % 10 != 0) {
      throw Error(Errc::ValidationError,
                  at + "prediction_pct " + std::to_string(pct) + " is not one of 0,10,...,100");
    }
    resp.prediction_pct = pct;

    if (!known.contains(resp.respondent_id)) {
      throw Error(Errc::ValidationError, at + "unknown respondent " + resp.respondent_id);
    }

    auto slot = question_slot.find(resp.question_id);
    if (slot == question_slot.end()) {
      if (declared) {
        throw Error(Errc::ValidationError, at + "unknown question " + resp.question_id);
      }
      slot = question_slot.emplace(resp.question_id, ds.questions.size()).first;
      ds.questions.push_back(Question{resp.question_id, {}});
    }
    auto& options = ds.questions[slot->second].options;
    const auto opt = std::find(options.begin(), options.end(), row[ccol]);
    if (opt == options.end()) {
      if (declared) {
        throw Error(Errc::ValidationError,
                    at + "choice '" + row[ccol] + "' is not an option of " + resp.question_id);
      }
      options.push_back(row[ccol]);
      resp.choice = options.size() - 1;
    } else {
      resp.choice = static_cast<std::size_t>(opt - options.begin());
    }

    if (!pairs.insert(pair_key(resp.respondent_id, resp.question_id)).second) {
      throw Error(Errc::ValidationError,
                  at + resp.respondent_id + " answered " + resp.question_id + " twice");
    }
    ds.responses.push_back(std::move(resp));
  }

  for (const auto& q : ds.questions) {
    if (q.options.size() < 2) {
      throw Error(Errc::ValidationError,
                  "question " + q.id +
                      " has fewer than two observed options; declare them in a questions file");
    }
  }
  return ds;
}

void write_survey(const SurveyDataset& dataset, const std::string& responses_path,
                  const std::string& respondents_path, const std::string& questions_path) {
  auto open = [](const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot open " + path + " for writing");
    return out;
  };
  auto finish = [](std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw Error(Errc::IoError, "failed writing " + path);
  };

  {
    auto out = open(questions_path);
    out << "question_id,options\n";
    for (const auto& q : dataset.questions) {
      std::string joined;
      for (std::size_t i = 0; i < q.options.size(); ++i) {
        if (i) joined += '|';
        joined += q.options[i];
      }
      out << csv::escape(q.id) << ',' << csv::escape(joined) << '\n';
    }
    finish(out, questions_path);
  }
  {
    auto out = open(respondents_path);
    out << "respondent_id";
    for (const auto& a : dataset.attribute_names) out << ',' << csv::escape(a);
    out << '\n';
    for (const auto& r : dataset.respondents) {
      out << csv::escape(r.id);
      for (const auto& a : dataset.attribute_names) {
        const auto it = r.attributes.find(a);
        out << ',' << csv::escape(it == r.attributes.end() ? std::string{} : it->second);
      }
      out << '\n';
    }
    finish(out, respondents_path);
  }
  {
    auto out = open(responses_path);
    out << "respondent_id,question_id,choice,prediction_pct\n";
    for (const auto& resp : dataset.responses) {
      const auto* q = dataset.find_question(resp.question_id);
      if (q == nullptr || resp.choice >= q->n_choices()) {
        throw Error(Errc::ValidationError, "response does not match a declared question option");
      }
      out << csv::escape(resp.respondent_id) << ',' << csv::escape(resp.question_id) << ','
          << csv::escape(q->options[resp.choice]) << ',' << resp.prediction_pct << '\n';
    }
    finish(out, responses_path);
  }
}

RespondentFilter RespondentFilter::parse(std::string_view text) {
  std::vector<Predicate> preds;
  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), '&', ';');
  for (const auto& raw : split(normalized, ';')) {
    const auto clause = trim(raw);
    if (clause.empty()) continue;
    Predicate p;
    std::string_view rhs;
    if (const auto ne = clause.find("!="); ne != std::string_view::npos) {
      p.attribute = std::string(trim(clause.substr(0, ne)));
      p.op = Op::NotEqual;
      rhs = clause.substr(ne + 2);
    } else if (const auto eq = clause.find('='); eq != std::string_view::npos) {
      p.attribute = std::string(trim(clause.substr(0, eq)));
      p.op = Op::Equal;
      rhs = clause.substr(eq + 1);
    } else if (const auto in = clause.find(" in "); in != std::string_view::npos) {
      p.attribute = std::string(trim(clause.substr(0, in)));
      p.op = Op::In;
      rhs = clause.substr(in + 4);
    } else {
      throw Error(Errc::ParseError, "filter clause '" + std::string(clause) +
                                        "' needs '=', '!=' or ' in '");
    }
    if (p.attribute.empty()) {
      throw Error(Errc::ParseError, "filter clause '" + std::string(clause) + "' has no attribute");
    }
    if (p.op == Op::In) {
      for (const auto& v : split(rhs, '|')) p.values.emplace_back(trim(v));
    } else {
      p.values.emplace_back(trim(rhs));
    }
    preds.push_back(std::move(p));
  }
  if (preds.empty()) throw Error(Errc::ParseError, "empty filter");
  return RespondentFilter(std::move(preds));
}

void RespondentFilter::validate(const SurveyDataset& dataset) const {
  for (const auto& p : predicates_) {
    if (std::find(dataset.attribute_names.begin(), dataset.attribute_names.end(), p.attribute) ==
        dataset.attribute_names.end()) {
      throw Error(Errc::ValidationError, "filter references unknown attribute '" + p.attribute + "'");
    }
  }
}

bool RespondentFilter::matches(const Respondent& respondent) const {
  for (const auto& p : predicates_) {
    const auto it = respondent.attributes.find(p.attribute);
    const std::string value = it == respondent.attributes.end() ? std::string{} : it->second;
    const bool in_set = std::find(p.values.begin(), p.values.end(), value) != p.values.end();
    if (p.op == Op::NotEqual ? in_set : !in_set) return false;
  }
  return true;
}

std::string RespondentFilter::describe() const {
  std::string out;
  for (const auto& p : predicates_) {
    if (!out.empty()) out += ";";
    out += p.attribute;
    if (p.op == Op::In) {
      out += " in ";
      for (std::size_t i = 0; i < p.values.size(); ++i) {
        if (i) out += '|';
        out += p.values[i];
      }
    } else {
      out += p.op == Op::Equal ? "=" : "!=";
      out += p.values.front();
    }
  }
  return out;
}

SampleSet extract_samples(const SurveyDataset& dataset, std::string_view question_id,
                          const std::optional<RespondentFilter>& filter) {
  const auto* question = dataset.find_question(question_id);
  if (question == nullptr) {
    throw Error(Errc::UnknownQuestion, "no question '" + std::string(question_id) + "'");
  }
  std::unordered_set<std::string> members;
  if (filter) {
    filter->validate(dataset);
    for (const auto& r : dataset.respondents) {
      if (filter->matches(r)) members.insert(r.id);
    }
    if (members.empty()) {
      throw Error(Errc::EmptyGroup, "filter '" + filter->describe() + "' matches no respondent");
    }
  }
  SampleSet samples(question->n_choices(), kPredictionBins);
  for (const auto& resp : dataset.responses) {
    if (resp.question_id != question_id) continue;
    if (filter && !members.contains(resp.respondent_id)) continue;
    samples.add(Observation{ChoiceIndex{resp.choice},
                            PredictionBin{static_cast<std::size_t>(resp.prediction_pct / 10)},
                            resp.respondent_id, resp.question_id});
  }
  if (samples.empty()) {
    throw Error(Errc::EmptyGroup, "no matching responses to question '" +
                                      std::string(question_id) + "'");
  }
  return samples;
}

namespace {

GroupSummary summarize(const SampleSet& samples, const DivergenceKind& kind) {
  GroupSummary s;
  s.respondents = respondent_count(samples);
  const auto joint = empirical_joint(samples);
  s.variety = f_variety(joint, kind);
  if (joint.n_choices() == 2) s.baseline = baseline(joint);
  return s;
}

}  // namespace

AnalysisReport analyze(const SurveyDataset& dataset, const AnalyzeOptions& options) {
  const auto& kind = DivergenceKind::by_name(options.divergence);
  if (options.filter_a) options.filter_a->validate(dataset);
  if (options.filter_b) options.filter_b->validate(dataset);

  std::vector<std::string> ids = options.question_ids;
  if (ids.empty()) {
    for (const auto& q : dataset.questions) ids.push_back(q.id);
  }
  for (const auto& id : ids) {
    if (dataset.find_question(id) == nullptr) {
      throw Error(Errc::UnknownQuestion, "no question '" + id + "'");
    }
  }

  AnalysisReport report;
  report.divergence = kind.name();
  report.has_group_b = options.filter_b.has_value();
  report.questions.resize(ids.size());
  parallel_for(ids.size(), options.threads, [&](std::size_t i) {
    const auto& id = ids[i];
    QuestionReport& qr = report.questions[i];
    qr.question_id = id;
    const auto a = extract_samples(dataset, id, options.filter_a);
    qr.group_a = summarize(a, kind);
    if (!options.filter_b) return;
    const auto b = extract_samples(dataset, id, options.filter_b);
    qr.group_b = summarize(b, kind);
    const RandomStream stream(options.seed, hash_string(id));
    qr.variety_comparison = compare_groups_equalized(a, b, kind, options.trials, stream);
    if (a.n_choices() == 2) {
      qr.baseline_comparison = compare_groups_equalized(
          a, b, "baseline", [](const JointDistribution& j) { return baseline(j); }, options.trials,
          stream);
    }
  });
  return report;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "table") return ReportFormat::Table;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw Error(Errc::ConfigError, "unknown report format '" + std::string(name) + "'");
}

namespace {

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string percent(double v) { return format_fixed(100.0 * v, 1); }

std::string percent(const std::optional<double>& v) { return v ? percent(*v) : "-"; }

std::string with_bar(double value, double sd) {
  return sd > 0.0 ? percent(value) + " +/- " + percent(sd) : percent(value);
}

std::string optional_real(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

std::string render_table(const AnalysisReport& report) {
  std::string out;
  if (!report.has_group_b) {
    out += pad("question", 14) + pad("n", 8) + pad(report.divergence + "x100", 16) + "baselinex100\n";
    for (const auto& q : report.questions) {
      out += pad(q.question_id, 14) + pad(std::to_string(q.group_a.respondents), 8) +
             pad(percent(q.group_a.variety), 16) + percent(q.group_a.baseline) + "\n";
    }
    return out;
  }
  out += pad("question", 14) + pad("n_a", 6) + pad("n_b", 6) + pad("m", 6) +
         pad(report.divergence + "_a", 18) + pad(report.divergence + "_b", 18) +
         pad("baseline_a", 18) + "baseline_b\n";
  for (const auto& q : report.questions) {
    const auto& v = *q.variety_comparison;
    out += pad(q.question_id, 14) + pad(std::to_string(q.group_a.respondents), 6) +
           pad(std::to_string(q.group_b->respondents), 6) + pad(std::to_string(v.subsample_size), 6) +
           pad(with_bar(v.group_a_value, v.group_a_std), 18) +
           pad(with_bar(v.group_b_mean, v.group_b_std), 18);
    if (q.baseline_comparison) {
      const auto& b = *q.baseline_comparison;
      out += pad(with_bar(b.group_a_value, b.group_a_std), 18) +
             with_bar(b.group_b_mean, b.group_b_std);
    } else {
      out += pad("-", 18) + "-";
    }
    out += "\n";
  }
  out += "(metrics x100; the larger group is subsampled to m respondents, +/- is its std)\n";
  return out;
}

std::string render_csv(const AnalysisReport& report) {
  std::string out;
  if (!report.has_group_b) {
    out += "question_id,divergence,n,variety,baseline\n";
    for (const auto& q : report.questions) {
      out += csv::escape(q.question_id) + "," + report.divergence + "," +
             std::to_string(q.group_a.respondents) + "," + format_real(q.group_a.variety) + "," +
             optional_real(q.group_a.baseline) + "\n";
    }
    return out;
  }
  out += "question_id,n_a,n_b," + group_comparison_csv_header() + "\n";
  for (const auto& q : report.questions) {
    const std::string prefix = csv::escape(q.question_id) + "," +
                               std::to_string(q.group_a.respondents) + "," +
                               std::to_string(q.group_b->respondents) + ",";
    out += prefix + to_csv_row(*q.variety_comparison) + "\n";
    if (q.baseline_comparison) out += prefix + to_csv_row(*q.baseline_comparison) + "\n";
  }
  return out;
}

std::string render_json(const AnalysisReport& report) {
  using nlohmann::ordered_json;
  auto summary = [](const GroupSummary& s) {
    ordered_json j;
    j["respondents"] = s.respondents;
    j["variety"] = s.variety;
    j["baseline"] = s.baseline ? ordered_json(*s.baseline) : ordered_json(nullptr);
    return j;
  };
  ordered_json doc;
  doc["divergence"] = report.divergence;
  ordered_json qs = ordered_json::array();
  for (const auto& q : report.questions) {
    ordered_json j;
    j["question_id"] = q.question_id;
    j["group_a"] = summary(q.group_a);
    if (q.group_b) j["group_b"] = summary(*q.group_b);
    if (q.variety_comparison) {
      j["variety_comparison"] = ordered_json::parse(to_json(*q.variety_comparison));
    }
    if (q.baseline_comparison) {
      j["baseline_comparison"] = ordered_json::parse(to_json(*q.baseline_comparison));
    }
    qs.push_back(std::move(j));
  }
  doc["questions"] = std::move(qs);
  return doc.dump(2) + "\n";
}

}  // namespace

std::string format_report(const AnalysisReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Table: return render_table(report);
    case ReportFormat::Csv: return render_csv(report);
    case ReportFormat::Json: return render_json(report);
  }
  return {};
}

SurveyDataset make_fixture(const FixtureSpec& spec) {
  spec.model.validate();
  SurveyDataset ds;
  ds.attribute_names = {"attention", "gender", "watch_sports"};
  for (std::size_t q = 0; q < spec.questions; ++q) {
    Question question{"Q" + std::to_string(q + 1), {}};
    if (spec.model.n_choices == 2) {
      question.options = {"X", "Y"};
    } else {
      for (std::size_t c = 0; c < spec.model.n_choices; ++c) {
        question.options.push_back("option" + std::to_string(c + 1));
      }
    }
    ds.questions.push_back(std::move(question));
  }

  const auto expert_model = spec.model.with_ratio(spec.expert_ratio);
  const auto novice_model = spec.model.with_ratio(spec.novice_ratio);
  const std::size_t total = spec.experts + spec.novices + spec.inattentive;
  const int width = static_cast<int>(std::to_string(total).size());

  for (std::size_t i = 0; i < total; ++i) {
    std::string digits = std::to_string(i + 1);
    Respondent r{"r" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') + digits, {}};
    const bool expert = i < spec.experts;
    const bool novice = !expert && i < spec.experts + spec.novices;
    RandomStream traits(spec.seed, hash_words({0xa77bULL, i}));
    r.attributes["attention"] = expert || novice ? "pass" : "fail";
    r.attributes["gender"] = traits.below(2) == 0 ? "female" : "male";
    if (expert) {
      r.attributes["watch_sports"] = "yes";
    } else if (novice) {
      r.attributes["watch_sports"] = "no";
    } else {
      r.attributes["watch_sports"] = traits.below(2) == 0 ? "yes" : "no";
    }

    for (std::size_t q = 0; q < spec.questions; ++q) {
      RandomStream stream(spec.seed, hash_words({q, i}));
      std::size_t choice;
      std::size_t bin;
      if (expert || novice) {
        const auto obs = draw_samples(expert ? expert_model : novice_model, 1, stream);
        choice = obs.observations().front().choice.value;
        bin = obs.observations().front().prediction.value;
      } else {
        choice = static_cast<std::size_t>(stream.below(spec.model.n_choices));
        bin = static_cast<std::size_t>(stream.below(kPredictionBins));
      }
      ds.responses.push_back(
          Response{r.id, ds.questions[q].id, choice, static_cast<int>(bin * 10)});
    }
    ds.respondents.push_back(std::move(r));
  }
  return ds;
}

}  // namespace variety
