#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "variety/divergence.hpp"
#include "variety/estimation.hpp"
#include "variety/samples.hpp"
#include "variety/synthesis.hpp"

namespace variety {

struct Question {
  std::string id;
  /// Declared option order; choice index i is options[i]. Predictions refer
  /// to the share of respondents picking options[0].
  std::vector<std::string> options;

  [[nodiscard]] std::size_t n_choices() const noexcept { return options.size(); }
  friend bool operator==(const Question&, const Question&) = default;
};

struct Respondent {
  std::string id;
  std::map<std::string, std::string> attributes;
  friend bool operator==(const Respondent&, const Respondent&) = default;
};

struct Response {
  std::string respondent_id;
  std::string question_id;
  std::size_t choice = 0;
  int prediction_pct = 0;
  friend bool operator==(const Response&, const Response&) = default;
};

struct SurveyDataset {
  std::vector<Question> questions;
  std::vector<Respondent> respondents;
  std::vector<Response> responses;
  /// Attribute columns in file order.
  std::vector<std::string> attribute_names;

  [[nodiscard]] const Question* find_question(std::string_view id) const;
  [[nodiscard]] const Respondent* find_respondent(std::string_view id) const;

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;

  friend bool operator==(const SurveyDataset&, const SurveyDataset&) = default;
};

/// Reads responses.csv (respondent_id,question_id,choice,prediction_pct) and
/// respondents.csv (respondent_id,<attribute columns>). Questions and their
/// option order come from questions.csv (question_id,options with options
/// separated by '|') when given, otherwise from first appearance in the
/// responses file. Throws ParseError with the line number for malformed
/// rows, ValidationError for rows that parse but break an invariant, and
/// IoError for unreadable files.
[[nodiscard]] SurveyDataset load_survey(const std::string& responses_path,
                                        const std::string& respondents_path,
                                        const std::optional<std::string>& questions_path = {});

/// Writes the three files load_survey reads. Throws IoError.
void write_survey(const SurveyDataset& dataset, const std::string& responses_path,
                  const std::string& respondents_path, const std::string& questions_path);

class RespondentFilter {
 public:
  enum class Op { Equal, NotEqual, In };

  struct Predicate {
    std::string attribute;
    Op op = Op::Equal;
    std::vector<std::string> values;
    friend bool operator==(const Predicate&, const Predicate&) = default;
  };

  RespondentFilter() = default;
  explicit RespondentFilter(std::vector<Predicate> predicates) : predicates_(std::move(predicates)) {}

  /// Conjunction of predicates separated by ';' or '&'. Each predicate is
  /// `attr=value`, `attr!=value` or `attr in v1|v2|...`. Throws ParseError.
  static RespondentFilter parse(std::string_view text);

  /// Throws ValidationError if a referenced attribute is not in the dataset.
  void validate(const SurveyDataset& dataset) const;
  [[nodiscard]] bool matches(const Respondent& respondent) const;

  [[nodiscard]] const std::vector<Predicate>& predicates() const noexcept { return predicates_; }
  [[nodiscard]] std::string describe() const;

 private:
  std::vector<Predicate> predicates_;
};

/// Observations of every matching respondent for one question, with
/// respondent and question ids attached. Throws UnknownQuestion, ValidationError
/// (bad filter) or EmptyGroup.
[[nodiscard]] SampleSet extract_samples(const SurveyDataset& dataset, std::string_view question_id,
                                        const std::optional<RespondentFilter>& filter = {});

struct GroupSummary {
  std::size_t respondents = 0;
  double variety = 0.0;
  /// Absent for questions with more than two options.
  std::optional<double> baseline;
};

struct QuestionReport {
  std::string question_id;
  GroupSummary group_a;
  std::optional<GroupSummary> group_b;
  std::optional<GroupComparison> variety_comparison;
  std::optional<GroupComparison> baseline_comparison;
};

struct AnalyzeOptions {
  /// Empty means every question in declaration order.
  std::vector<std::string> question_ids;
  std::optional<RespondentFilter> filter_a;
  std::optional<RespondentFilter> filter_b;
  std::string divergence = "tvd";
  std::size_t trials = kDefaultComparisonTrials;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

struct AnalysisReport {
  std::string divergence;
  bool has_group_b = false;
  std::vector<QuestionReport> questions;
};

/// Per-question f-variety and baseline for group A, and for group B when
/// filter_b is set, in which case both metrics are also compared at equal
/// group size (compare_groups_equalized). The subsampling stream of each
/// question depends only on (seed, question id).
[[nodiscard]] AnalysisReport analyze(const SurveyDataset& dataset, const AnalyzeOptions& options);

enum class ReportFormat { Table, Csv, Json };

[[nodiscard]] ReportFormat parse_report_format(std::string_view name);

/// Table output scales metrics by 100; CSV and JSON keep raw values.
[[nodiscard]] std::string format_report(const AnalysisReport& report, ReportFormat format);

/// Synthetic two-group survey: `experts` respondents with watch_sports=yes
/// drawn from `model` at expert_ratio, `novices` with watch_sports=no drawn at
/// novice_ratio, and `inattentive` respondents with attention=fail answering
/// uniformly at random. Every respondent answers every question.
struct FixtureSpec {
  std::size_t questions = 7;
  std::size_t experts = 300;
  std::size_t novices = 300;
  std::size_t inattentive = 20;
  PopulationModel model = preset("uniform-1");
  double expert_ratio = 0.2;
  double novice_ratio = 0.9;
  std::uint64_t seed = 2024;
};

[[nodiscard]] SurveyDataset make_fixture(const FixtureSpec& spec);

}  // namespace variety
