#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include <unistd.h>

#include "variety/error.hpp"
#include "variety/survey.hpp"

using namespace variety;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("variety_survey_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

Errc load_error(const std::string& responses, const std::string& respondents,
                std::string* message = nullptr) {
  TempDir dir;
  try {
    (void)load_survey(dir.write("r.csv", responses), dir.write("a.csv", respondents));
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return Errc::IoError;
}

const std::string kRespondents = "respondent_id,watch_sports\nr1,yes\nr2,no\nr3,yes\n";

// Group "yes": half pick X and predict 90%, half pick Y and predict 10%.
// Group "no": choice and prediction cycle over all combinations uniformly.
SurveyDataset dependent_vs_uniform() {
  SurveyDataset ds;
  ds.attribute_names = {"group"};
  ds.questions = {{"Q1", {"X", "Y"}}, {"Q2", {"X", "Y"}}, {"Q3", {"X", "Y"}}};
  for (int i = 0; i < 44; ++i) {
    const std::string id = "a" + std::to_string(i);
    ds.respondents.push_back({id, {{"group", "dependent"}}});
    for (const auto& q : ds.questions) {
      ds.responses.push_back({id, q.id, std::size_t(i % 2), i % 2 == 0 ? 90 : 10});
    }
  }
  for (int i = 0; i < 66; ++i) {
    const std::string id = "b" + std::to_string(i);
    ds.respondents.push_back({id, {{"group", "random"}}});
    for (const auto& q : ds.questions) {
      ds.responses.push_back({id, q.id, std::size_t(i % 2), 10 * ((i / 2) % 11)});
    }
  }
  ds.validate();
  return ds;
}

}  // namespace

TEST(LoadSurvey, ThreeRespondentsOneQuestion) {
  TempDir dir;
  const auto ds = load_survey(
      dir.write("r.csv", "respondent_id,question_id,choice,prediction_pct\n"
                         "r1,Q1,X,70\nr2,Q1,Y,20\nr3,Q1,X,100\n"),
      dir.write("a.csv", kRespondents));
  ASSERT_EQ(ds.questions.size(), 1u);
  EXPECT_EQ(ds.questions[0].options, (std::vector<std::string>{"X", "Y"}));
  const auto s = extract_samples(ds, "Q1");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.observations()[0].prediction.value, 7u);
  EXPECT_EQ(s.observations()[1].choice.value, 1u);
  EXPECT_EQ(s.observations()[2].respondent_id, std::optional<std::string>("r3"));
}

TEST(LoadSurvey, DeclaredOptionOrder) {
  TempDir dir;
  const auto ds = load_survey(
      dir.write("r.csv", "respondent_id,question_id,choice,prediction_pct\nr1,Q1,Y,70\n"),
      dir.write("a.csv", kRespondents),
      dir.write("q.csv", "question_id,options\nQ1,X|Y\nQ2,a|b|c\n"));
  EXPECT_EQ(ds.responses[0].choice, 1u);
  EXPECT_EQ(ds.find_question("Q2")->n_choices(), 3u);
}

TEST(LoadSurvey, PredictionNotMultipleOfTen) {
  std::string msg;
  EXPECT_EQ(load_error("respondent_id,question_id,choice,prediction_pct\nr1,Q1,X,55\n",
                       kRespondents, &msg),
            Errc::ValidationError);
  EXPECT_NE(msg.find("r.csv:2:"), std::string::npos) << msg;
}

TEST(LoadSurvey, ValidationErrors) {
  const std::string header = "respondent_id,question_id,choice,prediction_pct\n";
  EXPECT_EQ(load_error(header + "r9,Q1,X,50\n", kRespondents), Errc::ValidationError);
  EXPECT_EQ(load_error(header + "r1,Q1,X,110\n", kRespondents), Errc::ValidationError);
  EXPECT_EQ(load_error(header + "r1,Q1,X,50\nr1,Q1,Y,50\n", kRespondents), Errc::ValidationError);
  EXPECT_EQ(load_error(header + "r1,Q1,X,50\n", "respondent_id,g\nr1,a\nr1,b\n"),
            Errc::ValidationError);
}

TEST(LoadSurvey, ParseErrorsCarryLineNumbers) {
  const std::string header = "respondent_id,question_id,choice,prediction_pct\n";
  std::string msg;
  EXPECT_EQ(load_error(header + "r1,Q1,X,50\nr2,Q1,Y,abc\n", kRespondents, &msg), Errc::ParseError);
  EXPECT_NE(msg.find("r.csv:3:"), std::string::npos) << msg;
  EXPECT_EQ(load_error(header + "r1,Q1,X\n", kRespondents, &msg), Errc::ParseError);
  EXPECT_NE(msg.find("r.csv:2:"), std::string::npos) << msg;
  EXPECT_EQ(load_error("respondent,question_id,choice,prediction_pct\n", kRespondents),
            Errc::ParseError);
}

TEST(LoadSurvey, MissingFileIsIoError) {
  try {
    (void)load_survey("/nonexistent/r.csv", "/nonexistent/a.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IoError);
  }
}

TEST(RespondentFilter, ParseAndMatch) {
  const auto f = RespondentFilter::parse("watch_sports=yes; gender != male");
  ASSERT_EQ(f.predicates().size(), 2u);
  EXPECT_EQ(f.predicates()[1].op, RespondentFilter::Op::NotEqual);
  EXPECT_TRUE(f.matches({"x", {{"watch_sports", "yes"}, {"gender", "female"}}}));
  EXPECT_FALSE(f.matches({"x", {{"watch_sports", "yes"}, {"gender", "male"}}}));

  const auto in = RespondentFilter::parse("level in pro|semi & attention=pass");
  EXPECT_EQ(in.predicates()[0].values, (std::vector<std::string>{"pro", "semi"}));
  EXPECT_TRUE(in.matches({"x", {{"level", "semi"}, {"attention", "pass"}}}));
  EXPECT_FALSE(in.matches({"x", {{"level", "amateur"}, {"attention", "pass"}}}));

  EXPECT_THROW((void)RespondentFilter::parse(""), Error);
  EXPECT_THROW((void)RespondentFilter::parse("justaword"), Error);
  EXPECT_THROW((void)RespondentFilter::parse("=yes"), Error);
}

TEST(ExtractSamples, FiltersOnTheFixture) {
  const auto ds = make_fixture(FixtureSpec{});
  const auto all = extract_samples(ds, "Q1");
  EXPECT_EQ(all.size(), 620u);
  const auto fans = extract_samples(ds, "Q1", RespondentFilter::parse("watch_sports=yes"));
  for (const auto& o : fans.observations()) {
    EXPECT_EQ(ds.find_respondent(*o.respondent_id)->attributes.at("watch_sports"), "yes");
  }
  EXPECT_GE(fans.size(), 300u);
  EXPECT_LT(fans.size(), 620u);

  try {
    (void)extract_samples(ds, "Q1", RespondentFilter::parse("shoe_size=9"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ValidationError);
  }
  try {
    (void)extract_samples(ds, "Q99");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownQuestion);
  }
  try {
    (void)extract_samples(ds, "Q1", RespondentFilter::parse("watch_sports=sometimes"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyGroup);
  }
}

TEST(Analyze, SingleGroupDirectSummation) {
  // Realizes [[0.4, 0.4], [0.1, 0.1]] over predictions {0%, 100%}.
  SurveyDataset ds;
  ds.questions = {{"Q1", {"X", "Y"}}};
  const int choice[] = {0, 0, 0, 0, 0, 0, 0, 0, 1, 1};
  const int pct[] = {0, 0, 0, 0, 100, 100, 100, 100, 0, 100};
  for (int i = 0; i < 10; ++i) {
    ds.respondents.push_back({"r" + std::to_string(i), {}});
    ds.responses.push_back({"r" + std::to_string(i), "Q1", std::size_t(choice[i]), pct[i]});
  }
  const auto report = analyze(ds, AnalyzeOptions{});
  ASSERT_EQ(report.questions.size(), 1u);
  EXPECT_NEAR(report.questions[0].group_a.variety, 0.3, 1e-15);
  EXPECT_NEAR(*report.questions[0].group_a.baseline, 0.3, 1e-15);
  const auto table = format_report(report, ReportFormat::Table);
  EXPECT_NE(table.find("30.0"), std::string::npos) << table;
  EXPECT_EQ(format_report(report, ReportFormat::Csv),
            "question_id,divergence,n,variety,baseline\nQ1,tvd,10,0.3,0.3\n");
}

TEST(Analyze, DependentGroupBeatsRandomGroup) {
  const auto ds = dependent_vs_uniform();
  AnalyzeOptions opts;
  opts.filter_a = RespondentFilter::parse("group=dependent");
  opts.filter_b = RespondentFilter::parse("group=random");
  opts.trials = 200;
  const auto report = analyze(ds, opts);
  ASSERT_TRUE(report.has_group_b);
  for (const auto& q : report.questions) {
    EXPECT_NEAR(q.group_a.variety, 0.5, 1e-12);
    EXPECT_NEAR(*q.group_a.baseline, 0.0, 1e-12);
    EXPECT_NEAR(*q.group_b->baseline, 0.0, 1e-12);
    EXPECT_NEAR(q.group_b->variety, 0.0, 1e-12);
    EXPECT_GT(q.variety_comparison->group_a_value, q.variety_comparison->group_b_mean);
    EXPECT_EQ(q.variety_comparison->subsample_size, 44u);
  }
}

TEST(Analyze, UninformativeFixture) {
  FixtureSpec spec;
  spec.experts = 0;
  spec.novices = 2000;
  spec.inattentive = 0;
  spec.novice_ratio = 1.0;
  spec.questions = 2;
  const auto report = analyze(make_fixture(spec), AnalyzeOptions{});
  for (const auto& q : report.questions) {
    EXPECT_LT(q.group_a.variety, 0.05);
    EXPECT_LT(*q.group_a.baseline, 0.05);
  }
}

TEST(Analyze, SwappingFiltersSwapsSidesOnly) {
  const auto ds = make_fixture(FixtureSpec{});
  AnalyzeOptions ab;
  ab.filter_a = RespondentFilter::parse("watch_sports=yes;attention=pass");
  ab.filter_b = RespondentFilter::parse("watch_sports=no");
  ab.trials = 100;
  ab.seed = 7;
  AnalyzeOptions ba = ab;
  std::swap(ba.filter_a, ba.filter_b);
  const auto r1 = analyze(ds, ab);
  const auto r2 = analyze(ds, ba);
  ASSERT_EQ(r1.questions.size(), r2.questions.size());
  for (std::size_t i = 0; i < r1.questions.size(); ++i) {
    const auto& x = *r1.questions[i].variety_comparison;
    const auto& y = *r2.questions[i].variety_comparison;
    EXPECT_EQ(x.group_a_value, y.group_b_mean);
    EXPECT_EQ(x.group_b_mean, y.group_a_value);
    EXPECT_EQ(x.group_a_std, y.group_b_std);
    EXPECT_NE(x.subsampled, y.subsampled);
  }
}

TEST(Analyze, FixtureSeparatesExpertsFromNovices) {
  const auto ds = make_fixture(FixtureSpec{});
  AnalyzeOptions opts;
  opts.filter_a = RespondentFilter::parse("watch_sports=yes;attention=pass");
  opts.filter_b = RespondentFilter::parse("watch_sports=no;attention=pass");
  opts.trials = 200;
  const auto report = analyze(ds, opts);
  ASSERT_EQ(report.questions.size(), 7u);
  int separated = 0;
  for (const auto& q : report.questions) {
    separated += q.variety_comparison->group_a_value > q.variety_comparison->group_b_mean;
    EXPECT_LT(*q.group_a.baseline, 0.1);
    EXPECT_LT(*q.group_b->baseline, 0.1);
  }
  EXPECT_GE(separated, 6);
}

TEST(Analyze, DeterministicAcrossThreads) {
  const auto ds = make_fixture(FixtureSpec{});
  AnalyzeOptions opts;
  opts.filter_a = RespondentFilter::parse("watch_sports=yes");
  opts.filter_b = RespondentFilter::parse("watch_sports=no");
  opts.trials = 100;
  const auto one = format_report(analyze(ds, opts), ReportFormat::Json);
  opts.threads = 4;
  EXPECT_EQ(one, format_report(analyze(ds, opts), ReportFormat::Json));
}

TEST(Analyze, QuestionSelectionAndErrors) {
  const auto ds = make_fixture(FixtureSpec{});
  AnalyzeOptions opts;
  opts.question_ids = {"Q3", "Q1"};
  const auto report = analyze(ds, opts);
  ASSERT_EQ(report.questions.size(), 2u);
  EXPECT_EQ(report.questions[0].question_id, "Q3");
  opts.question_ids = {"Q8"};
  EXPECT_THROW((void)analyze(ds, opts), Error);
  EXPECT_THROW((void)parse_report_format("xml"), Error);
}

TEST(Fixture, WriteLoadRoundTrip) {
  const auto ds = make_fixture(FixtureSpec{});
  TempDir dir;
  write_survey(ds, dir.file("responses.csv"), dir.file("respondents.csv"), dir.file("questions.csv"));
  const auto loaded =
      load_survey(dir.file("responses.csv"), dir.file("respondents.csv"), dir.file("questions.csv"));
  EXPECT_EQ(loaded, ds);
  for (const auto& q : ds.questions) {
    EXPECT_EQ(empirical_joint(extract_samples(loaded, q.id)),
              empirical_joint(extract_samples(ds, q.id)));
  }
}

TEST(Fixture, DeterministicBySeed) {
  FixtureSpec spec;
  EXPECT_EQ(make_fixture(spec), make_fixture(spec));
  spec.seed = 1;
  EXPECT_NE(make_fixture(spec).responses, make_fixture(FixtureSpec{}).responses);
}
