// variety: group informativeness of choice-prediction feedback.
//
//   variety compute      --joint joint.json --divergence tvd
//   variety theoretical  --model m.json --divergence pearson
//   variety simulate     --preset uniform-1 --divergence tvd,pearson --seed 42 --out r.csv
//   variety analyze      --responses r.csv --respondents a.csv --filter "watch=often" ...
//   variety fixture      --out-dir data/fixtures/athletes
//
// Exit status: 0 success, 2 validation or usage errors, 3 I/O errors.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "variety/divergence.hpp"
#include "variety/error.hpp"
#include "variety/experiments.hpp"
#include "variety/format.hpp"
#include "variety/json_io.hpp"
#include "variety/survey.hpp"
#include "variety/synthesis.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

using namespace variety;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else if (ch != ' ') {
      item.push_back(ch);
    }
  }
  return out;
}

PopulationModel resolve_model(const std::string& preset_name, const std::string& model_path) {
  if (!model_path.empty()) return model_from_json(read_text_file(model_path));
  return preset(preset_name.empty() ? "uniform-1" : preset_name);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw Error(Errc::IoError, "failed writing " + path);
}

struct ComputeArgs {
  std::string joint;
  std::string divergence = "tvd";
};

void run_compute(const ComputeArgs& args) {
  const auto joint = joint_from_json(read_text_file(args.joint));
  for (const auto& kind : parse_kinds(args.divergence)) {
    std::cout << kind.name() << ' ' << format_real(f_variety(joint, kind), 10) << '\n';
  }
  if (joint.n_choices() == 2) std::cout << "baseline " << format_real(baseline(joint), 10) << '\n';
}

struct TheoreticalArgs {
  std::string model;
  std::string preset;
  std::vector<double> ratios;
  std::string divergence = "tvd";
  double tol = kDefaultQuadratureTol;
};

void run_theoretical(const TheoreticalArgs& args) {
  const auto base = resolve_model(args.preset, args.model);
  std::vector<PopulationModel> models;
  if (args.ratios.empty()) models.push_back(base);
  for (double r : args.ratios) models.push_back(base.with_ratio(r));
  for (const auto& m : models) m.validate();
  const auto kinds = parse_kinds(args.divergence);
  std::cout << "kind,ratio,theory_cont,theory_disc\n";
  for (const auto& kind : kinds) {
    for (const auto& m : models) {
      std::cout << kind.name() << ',' << format_real(m.nonexpert_ratio) << ','
                << format_real(continuous_f_variety(m, kind, args.tol)) << ','
                << format_real(f_variety(exact_discretized_joint(m), kind)) << '\n';
    }
  }
}

struct SimulateArgs {
  std::string preset;
  std::string model;
  std::string divergence = "tvd";
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::string ratios;
  std::string sizes;
  std::size_t threads = 0;
  std::string out;
  std::string format;
};

void run_simulate(const SimulateArgs& args) {
  SweepConfig config;
  config.model = resolve_model(args.preset, args.model);
  config.divergences = split_list(args.divergence);
  config.base_seed = args.seed;
  config.trials_per_point = args.trials;
  config.threads = args.threads;
  if (!args.ratios.empty()) {
    config.ratios.clear();
    for (const auto& r : split_list(args.ratios)) {
      try {
        config.ratios.push_back(std::stod(r));
      } catch (const std::exception&) {
        throw Error(Errc::ConfigError, "bad ratio '" + r + "'");
      }
    }
  }
  if (!args.sizes.empty()) {
    config.sample_sizes.clear();
    for (const auto& s : split_list(args.sizes)) {
      try {
        config.sample_sizes.push_back(static_cast<std::size_t>(std::stoull(s)));
      } catch (const std::exception&) {
        throw Error(Errc::ConfigError, "bad sample size '" + s + "'");
      }
    }
  }
  std::string format = args.format;
  if (format.empty()) {
    format = std::filesystem::path(args.out).extension() == ".json" ? "json" : "csv";
  }
  const auto fmt = parse_sweep_format(format);
  const auto result = run_sweep(config);
  if (args.out.empty() || args.out == "-") {
    std::cout << format_sweep(result, fmt);
  } else {
    write_sweep(result, args.out, fmt);
  }
}

struct AnalyzeArgs {
  std::string responses;
  std::string respondents;
  std::string questions_file;
  std::string questions;
  std::string filter;
  std::string filter_b;
  std::string divergence = "tvd";
  std::size_t trials = kDefaultComparisonTrials;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string format = "table";
  std::string out;
};

void run_analyze(const AnalyzeArgs& args) {
  const auto dataset =
      load_survey(args.responses, args.respondents,
                  args.questions_file.empty() ? std::nullopt
                                              : std::optional<std::string>(args.questions_file));
  AnalyzeOptions opts;
  opts.question_ids = split_list(args.questions);
  if (!args.filter.empty()) opts.filter_a = RespondentFilter::parse(args.filter);
  if (!args.filter_b.empty()) opts.filter_b = RespondentFilter::parse(args.filter_b);
  opts.divergence = args.divergence;
  opts.trials = args.trials;
  opts.seed = args.seed;
  opts.threads = args.threads;
  const auto fmt = parse_report_format(args.format);
  emit(format_report(analyze(dataset, opts), fmt), args.out);
}

struct FixtureArgs {
  std::string out_dir;
  FixtureSpec spec;
  std::string preset = "uniform-1";
};

void run_fixture(FixtureArgs args) {
  args.spec.model = preset(args.preset);
  const auto dataset = make_fixture(args.spec);
  const std::filesystem::path dir(args.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + dir.string() + ": " + ec.message());
  write_survey(dataset, (dir / "responses.csv").string(), (dir / "respondents.csv").string(),
               (dir / "questions.csv").string());
  std::cout << "wrote " << dataset.responses.size() << " responses from "
            << dataset.respondents.size() << " respondents to " << dir.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group informativeness (f-variety) of choice-prediction feedback"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* cmd_compute = app.add_subcommand("compute", "f-variety and baseline of a joint distribution");
  cmd_compute->add_option("--joint", compute.joint, "Joint distribution JSON")->required();
  cmd_compute->add_option("--divergence", compute.divergence, "tvd,kl,pearson,hellinger");

  TheoreticalArgs theo;
  auto* cmd_theo = app.add_subcommand("theoretical", "Theoretical f-variety of a population model");
  auto* theo_model = cmd_theo->add_option("--model", theo.model, "Population model JSON");
  cmd_theo->add_option("--preset", theo.preset, "Named preset model")->excludes(theo_model);
  cmd_theo->add_option("--ratio", theo.ratios, "Comma-separated non-expert ratios overriding the model's")
      ->delimiter(',');
  cmd_theo->add_option("--divergence", theo.divergence, "tvd,kl,pearson,hellinger");
  cmd_theo->add_option("--tol", theo.tol, "Absolute quadrature tolerance");

  SimulateArgs sim;
  auto* cmd_sim = app.add_subcommand("simulate", "Monte-Carlo sweep over ratios and sample sizes");
  auto* sim_model = cmd_sim->add_option("--model", sim.model, "Population model JSON");
  cmd_sim->add_option("--preset", sim.preset, "uniform-1 | non-uniform-1 | uniform-2 | non-uniform-2")
      ->excludes(sim_model);
  cmd_sim->add_option("--divergence", sim.divergence, "Comma-separated kinds");
  cmd_sim->add_option("--seed", sim.seed, "Base seed");
  cmd_sim->add_option("--trials", sim.trials, "Trials per grid point");
  cmd_sim->add_option("--ratios", sim.ratios, "Comma-separated non-expert ratios");
  cmd_sim->add_option("--sizes", sim.sizes, "Comma-separated sample sizes");
  cmd_sim->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  cmd_sim->add_option("--out", sim.out, "Output path (default stdout)");
  cmd_sim->add_option("--format", sim.format, "csv | json (default from --out extension)");

  AnalyzeArgs an;
  auto* cmd_an = app.add_subcommand("analyze", "Per-question metrics and group comparisons");
  cmd_an->add_option("--responses", an.responses, "responses.csv")->required();
  cmd_an->add_option("--respondents", an.respondents, "respondents.csv")->required();
  cmd_an->add_option("--questions-file", an.questions_file, "questions.csv with option order");
  cmd_an->add_option("--questions", an.questions, "Comma-separated question ids (default all)");
  cmd_an->add_option("--filter", an.filter, "Group A filter, e.g. \"watch=often\"");
  cmd_an->add_option("--filter-b", an.filter_b, "Group B filter; enables equalized comparison");
  cmd_an->add_option("--divergence", an.divergence, "tvd | kl | pearson | hellinger");
  cmd_an->add_option("--trials", an.trials, "Subsampling trials");
  cmd_an->add_option("--seed", an.seed, "Subsampling seed");
  cmd_an->add_option("--threads", an.threads, "Worker threads (0 = all cores)");
  cmd_an->add_option("--format", an.format, "table | csv | json");
  cmd_an->add_option("--out", an.out, "Output path (default stdout)");

  FixtureArgs fx;
  auto* cmd_fx = app.add_subcommand("fixture", "Write a synthetic two-group survey");
  cmd_fx->add_option("--out-dir", fx.out_dir, "Directory for the three CSV files")->required();
  cmd_fx->add_option("--seed", fx.spec.seed, "Seed");
  cmd_fx->add_option("--preset", fx.preset, "Preset model for the questions");
  cmd_fx->add_option("--questions", fx.spec.questions, "Number of questions");
  cmd_fx->add_option("--experts", fx.spec.experts, "Respondents with watch_sports=yes");
  cmd_fx->add_option("--novices", fx.spec.novices, "Respondents with watch_sports=no");
  cmd_fx->add_option("--inattentive", fx.spec.inattentive, "Respondents failing attention");
  cmd_fx->add_option("--expert-ratio", fx.spec.expert_ratio, "Non-expert ratio in the expert group");
  cmd_fx->add_option("--novice-ratio", fx.spec.novice_ratio, "Non-expert ratio in the novice group");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*cmd_compute) run_compute(compute);
    if (*cmd_theo) run_theoretical(theo);
    if (*cmd_sim) run_simulate(sim);
    if (*cmd_an) run_analyze(an);
    if (*cmd_fx) run_fixture(fx);
  } catch (const Error& e) {
    std::cerr << "variety: " << e.what() << '\n';
    return e.code() == Errc::IoError ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "variety: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
