// Acceptance suite: one PASS/FAIL line per criterion, detail lines indented
// below it. Exit status is non-zero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "variety/divergence.hpp"
#include "variety/estimation.hpp"
#include "variety/experiments.hpp"
#include "variety/special.hpp"
#include "variety/survey.hpp"
#include "variety/synthesis.hpp"

using namespace variety;

namespace {

const DivergenceKind* const kBuiltins[] = {&DivergenceKind::tvd(), &DivergenceKind::kl(),
                                           &DivergenceKind::pearson(),
                                           &DivergenceKind::hellinger()};

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void check(bool ok, const std::string& detail) {
    if (!ok) ok_ = false;
    details_.push_back(std::string(ok ? "ok   " : "FAIL ") + detail);
  }

  void value(const std::string& what, double got, double want, double tol) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s = %.7g (target %.7g +/- %.1e)", what.c_str(), got, want, tol);
    check(std::abs(got - want) <= tol, buf);
  }

  void note(const std::string& text) { details_.push_back("info " + text); }

  void runtime_under(double seconds, double limit) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "runtime %.2f s (limit %.0f s)", seconds, limit);
    check(seconds < limit, buf);
  }

  bool report() const {
    std::printf("[%s] criterion %d: %s\n", ok_ ? "PASS" : "FAIL", id_, title_.c_str());
    for (const auto& d : details_) std::printf("         %s\n", d.c_str());
    std::fflush(stdout);
    return ok_;
  }

 private:
  int id_;
  std::string title_;
  bool ok_ = true;
  std::vector<std::string> details_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

bool criterion_1() {
  Criterion c(1, "continuous Tvd-variety at ratio 0 for the four presets");
  const auto start = std::chrono::steady_clock::now();
  const std::pair<const char*, double> targets[] = {
      {"uniform-1", 0.329576}, {"non-uniform-1", 0.348710}, {"uniform-2", 0.152907},
      {"non-uniform-2", 0.200000}};
  for (const auto& [name, want] : targets) {
    c.value(name, continuous_f_variety(preset(name), DivergenceKind::tvd()), want, 1e-3);
  }
  c.runtime_under(seconds_since(start), 5.0);
  return c.report();
}

bool criterion_2() {
  Criterion c(2, "Pearson and Hellinger theoretical values, configs (a)=uniform-1 and (b)=non-uniform-1");
  const auto u1 = preset("uniform-1");
  const auto nu1 = preset("non-uniform-1");
  c.value("pearson uniform-1 ratio 0", continuous_f_variety(u1, DivergenceKind::pearson()), 0.248505,
          1e-3);
  c.value("pearson non-uniform-1 ratio 0", continuous_f_variety(nu1, DivergenceKind::pearson()),
          0.572854, 1e-3);
  c.value("hellinger uniform-1 ratio 0", continuous_f_variety(u1, DivergenceKind::hellinger()),
          0.100891, 1e-3);
  c.value("hellinger non-uniform-1 ratio 0", continuous_f_variety(nu1, DivergenceKind::hellinger()),
          0.116269, 1e-3);
  c.value("pearson uniform-1 ratio 0.5",
          continuous_f_variety(u1.with_ratio(0.5), DivergenceKind::pearson()), 0.0660054, 1e-3);

  const auto oracle_u1 = oracle::continuous_binary("pearson", 0.5, 8, 3, 4, 5, 0.0);
  c.note(fmt("brute-force Simpson oracle, pearson uniform-1 ratio 0: %.7g", oracle_u1));
  c.note(fmt("pearson non-uniform-2 ratio 0 / 0.5: %.7g / %.7g",
             continuous_f_variety(preset("non-uniform-2"), DivergenceKind::pearson()),
             continuous_f_variety(preset("non-uniform-2").with_ratio(0.5), DivergenceKind::pearson())));
  c.note("the 0.248505 / 0.0660054 targets coincide with the non-uniform-2 curve");
  return c.report();
}

bool criterion_3() {
  Criterion c(3, "Monte-Carlo sweep, uniform-1, Tvd, n=1000, 100 trials");
  const auto start = std::chrono::steady_clock::now();
  SweepConfig cfg;
  cfg.ratios = {0.0, 1.0};
  cfg.sample_sizes = {1000};
  cfg.trials_per_point = 100;
  cfg.base_seed = 42;
  const auto r = run_sweep(cfg);
  c.value("mean at ratio 0", r.rows[0].empirical_mean, 0.3231, 0.004);
  c.value("mean at ratio 1", r.rows[1].empirical_mean, 0.0384, 0.004);
  c.value("std at ratio 0", r.rows[0].empirical_std, 0.0115, 0.5 * 0.0115);
  c.value("std at ratio 1", r.rows[1].empirical_std, 0.0095, 0.5 * 0.0095);
  c.runtime_under(seconds_since(start), 60.0);
  return c.report();
}

bool criterion_4() {
  Criterion c(4, "property suite, 1000 random instances each, all builtins");
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> choices(2, 4);
  std::uniform_int_distribution<std::size_t> bins(1, 11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = 1000;

  int nonneg = 0, proj = 0, mono = 0, linear = 0, closed = 0, stable = 0, additive = 0;
  double worst_proj = 0.0, worst_mono = -1.0, worst_linear = 0.0, worst_closed = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto nc = choices(rng);
    const auto nb = bins(rng);
    const auto d = oracle::random_joint(rng, nc, nb);
    const auto d0 = oracle::random_uninformative(rng, nc, nb);
    const auto p = uninformative_projection(d);
    const double alpha = unit(rng);
    const auto mixed = mix(1.0 - alpha, d, alpha, d0);
    bool all_nonneg = true, all_proj = true, all_mono = true;
    for (const auto* k : kBuiltins) {
      const double v = f_variety(d, *k);
      all_nonneg &= v >= 0.0;
      const double vp = f_variety(p, *k);
      worst_proj = std::max(worst_proj, vp);
      all_proj &= vp <= 1e-12;
      const double excess = f_variety(mixed, *k) - (1.0 - alpha) * v;
      worst_mono = std::max(worst_mono, excess);
      all_mono &= excess <= 1e-9;
    }
    nonneg += all_nonneg;
    proj += all_proj;
    mono += all_mono;
    const double lin = std::abs(f_variety(mixed, DivergenceKind::tvd()) -
                                (1.0 - alpha) * f_variety(d, DivergenceKind::tvd()));
    worst_linear = std::max(worst_linear, lin);
    linear += lin <= 1e-9;

    const auto b = oracle::random_joint(rng, 2, nb);
    const double cf = std::abs(tvd_variety_binary_closed_form(b) - f_variety(b, DivergenceKind::tvd()));
    worst_closed = std::max(worst_closed, cf);
    closed += cf <= 1e-12;

    const auto u1 = oracle::random_uninformative(rng, nc, nb);
    const double lambda = unit(rng);
    stable += is_uninformative(mix(lambda, u1, 1.0 - lambda, d0), 1e-9);
  }
  // Additivity: lambda > 0 of an informative joint keeps the mixture
  // informative. Instances whose informative residual falls below the
  // predicate tolerance are redrawn.
  int drawn = 0;
  while (drawn < n) {
    const auto nc = choices(rng);
    const auto nb = bins(rng);
    const auto d = oracle::random_joint(rng, nc, nb);
    const auto d0 = oracle::random_uninformative(rng, nc, nb);
    const double lambda = 1.0 - unit(rng);
    if (lambda * max_norm_distance(d, uninformative_projection(d)) <= 2e-9) continue;
    ++drawn;
    additive += !is_uninformative(mix(lambda, d, 1.0 - lambda, d0), 1e-9);
  }
  auto line = [&](const char* what, int passed) {
    c.check(passed == n, std::string(what) + ": " + std::to_string(passed) + "/" + std::to_string(n));
  };
  line("non-negativity", nonneg);
  line("projection variety <= 1e-12", proj);
  line("monotonicity, slack 1e-9", mono);
  line("Tvd linearity within 1e-9", linear);
  line("binary closed form within 1e-12", closed);
  line("stability of uninformative mixtures", stable);
  line("additivity with informative joints", additive);
  c.note(fmt("worst projection variety %.3g, worst monotonicity excess %.3g", worst_proj, worst_mono));
  c.note(fmt("worst Tvd linearity error %.3g, worst closed-form error %.3g", worst_linear,
             worst_closed));
  c.runtime_under(seconds_since(start), 30.0);
  return c.report();
}

bool criterion_5() {
  Criterion c(5, "oracle equivalence for f_divergence and the incomplete beta");
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> length(1, 12);
  int matched = 0;
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto n = length(rng);
    const auto p = oracle::random_probability(rng, n, true);
    const auto q = oracle::random_probability(rng, n, true);
    bool ok = true;
    for (const auto* k : kBuiltins) {
      const double want = oracle::divergence(k->name(), p, q);
      const double got = f_divergence(p, q, *k);
      if (std::isinf(want) || std::isinf(got)) {
        ok &= std::isinf(want) && std::isinf(got);
      } else {
        worst = std::max(worst, std::abs(got - want));
        ok &= std::abs(got - want) <= 1e-12;
      }
    }
    matched += ok;
  }
  c.check(matched == 500, "f_divergence pairs matching within 1e-12: " + std::to_string(matched) +
                              "/500" + fmt(" (worst %.3g)", worst));

  int cases = 0;
  int good = 0;
  double worst_ib = 0.0;
  for (int a = 1; a < 16; ++a) {
    for (int b = 1; a + b <= 16; ++b) {
      for (int i = 1; i <= 9; ++i) {
        const double x = i / 10.0;
        const double err = std::abs(regularized_incomplete_beta(a, b, x) - oracle::ibeta_binomial(a, b, x));
        worst_ib = std::max(worst_ib, err);
        ++cases;
        good += err <= 1e-9;
      }
    }
  }
  c.check(good == cases, "incomplete beta within 1e-9 of binomial sums: " + std::to_string(good) +
                             "/" + std::to_string(cases) + fmt(" (worst %.3g)", worst_ib));
  return c.report();
}

bool criterion_6() {
  Criterion c(6, "data processing: discretized <= continuous + 1e-6");
  for (auto name : preset_names()) {
    const auto m = preset(name);
    const auto joint = exact_discretized_joint(m);
    for (const auto* k : kBuiltins) {
      const double disc = f_variety(joint, *k);
      const double cont = continuous_f_variety(m, *k);
      c.check(disc <= cont + 1e-6, std::string(name) + " " + k->name() +
                                       fmt(": %.7g <= %.7g", disc, cont));
    }
  }
  return c.report();
}

bool criterion_7() {
  Criterion c(7, "consistency: mean |error| at n=1000 below n=100, 50 trials, Tvd");
  for (auto name : preset_names()) {
    const auto model = preset(name);
    const double truth = f_variety(exact_discretized_joint(model), DivergenceKind::tvd());
    auto mean_error = [&](std::size_t n) {
      double sum = 0.0;
      for (std::size_t t = 0; t < 50; ++t) {
        RandomStream s = sweep_stream(7, "tvd", 0.0, n, t);
        sum += std::abs(empirical_f_variety(draw_samples(model, n, s), DivergenceKind::tvd()) - truth);
      }
      return sum / 50.0;
    };
    const double e100 = mean_error(100);
    const double e1000 = mean_error(1000);
    c.check(e1000 < e100, std::string(name) + fmt(": %.5f < %.5f", e1000, e100));
  }
  return c.report();
}

bool criterion_8() {
  Criterion c(8, "shipped two-group survey fixture separates experts from novices");
  const std::filesystem::path dir = VARIETY_FIXTURE_DIR;
  SurveyDataset ds;
  try {
    ds = load_survey((dir / "responses.csv").string(), (dir / "respondents.csv").string(),
                     (dir / "questions.csv").string());
  } catch (const std::exception& e) {
    c.check(false, std::string("loading fixture: ") + e.what());
    return c.report();
  }
  c.check(ds == make_fixture(FixtureSpec{}), "shipped files equal the default fixture generator");
  AnalyzeOptions opts;
  opts.filter_a = RespondentFilter::parse("watch_sports=yes;attention=pass");
  opts.filter_b = RespondentFilter::parse("watch_sports=no;attention=pass");
  opts.trials = 1000;
  opts.seed = 8;
  const auto report = analyze(ds, opts);
  int separated = 0;
  double worst_baseline = 0.0;
  for (const auto& q : report.questions) {
    const auto& v = *q.variety_comparison;
    separated += v.group_a_value > v.group_b_mean;
    worst_baseline = std::max({worst_baseline, *q.group_a.baseline, *q.group_b->baseline});
    c.note(q.question_id + fmt(": expert %.1f, novice %.1f (x100)", 100 * v.group_a_value,
                               100 * v.group_b_mean) +
           fmt(", baselines %.1f / %.1f", 100 * *q.group_a.baseline, 100 * *q.group_b->baseline));
  }
  c.check(separated >= 6, "questions where expert variety > novice: " + std::to_string(separated) +
                              "/" + std::to_string(report.questions.size()) + " (need >= 6)");
  c.check(worst_baseline <= 0.10, fmt("largest baseline %.4f (near zero: <= 0.10)", worst_baseline));
  return c.report();
}

int run_command(const std::string& args, const std::filesystem::path& out) {
  const std::string cmd = std::string("\"") + VARIETY_CLI + "\" " + args + " --out \"" +
                          out.string() + "\" >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool criterion_9() {
  Criterion c(9, "variety simulate is byte-identical across runs and thread counts");
  const auto dir = std::filesystem::temp_directory_path() / "variety_acceptance_9";
  std::filesystem::create_directories(dir);
  const std::string base =
      "simulate --preset uniform-1 --divergence tvd,pearson,hellinger --seed 42 --trials 100";
  const int s1 = run_command(base + " --threads 1", dir / "a.csv");
  const int s2 = run_command(base + " --threads 1", dir / "b.csv");
  const int s3 = run_command(base + " --threads 4", dir / "c.csv");
  const int s4 = run_command(base + " --threads 0", dir / "d.csv");
  c.check(s1 == 0 && s2 == 0 && s3 == 0 && s4 == 0, "all runs exit 0");
  const auto a = slurp(dir / "a.csv");
  c.check(!a.empty() && a == slurp(dir / "b.csv"), "two runs, 1 thread: identical bytes");
  c.check(a == slurp(dir / "c.csv"), "1 thread vs 4 threads: identical bytes");
  c.check(a == slurp(dir / "d.csv"), "1 thread vs hardware concurrency: identical bytes");
  c.note(std::to_string(std::count(a.begin(), a.end(), '\n')) + " lines compared");
  std::filesystem::remove_all(dir);
  return c.report();
}

}  // namespace

int main() {
  const std::function<bool()> criteria[] = {criterion_1, criterion_2, criterion_3,
                                            criterion_4, criterion_5, criterion_6,
                                            criterion_7, criterion_8, criterion_9};
  int failed = 0;
  for (const auto& run : criteria) {
    try {
      failed += !run();
    } catch (const std::exception& e) {
      std::printf("[FAIL] uncaught exception: %s\n", e.what());
      ++failed;
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
