// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "canfis/baseline.hpp"
#include "canfis/dataset.hpp"
#include "canfis/experiment.hpp"
#include "canfis/format.hpp"
#include "canfis/gradient.hpp"
#include "canfis/metrics.hpp"
#include "canfis/random.hpp"
#include "canfis/training.hpp"
#include "oracle.hpp"

using namespace canfis;
namespace fs = std::filesystem;
using canfis::testing::random_network;
using canfis::testing::Wide;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) { return format_real(v); }

Outcome gradient_correctness() {
  Rng rng(2024);
  int bad = 0;
  double worst = 0.0;
  std::size_t coords = 0;
  for (int draw = 0; draw < 1000; ++draw) {
    const auto net = random_network(1 + draw % 3, rng);
    const double x = rng.uniform(-0.5, 1.5), y = rng.uniform(-0.5, 1.5);
    const Target<double> d(rng.uniform(0, 1), rng.uniform(0, 1));
    const auto g = backward(net, x, y, d);
    const auto fd = finite_diff_gradient<Wide>(net, x, y, d, 1e-6);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      if (std::abs(g(i)) < 1e-10 && std::abs(fd(i)) < 1e-10) continue;
      const double rel = std::abs(g(i) - fd(i)) / std::max(std::abs(g(i)), std::abs(fd(i)));
      worst = std::max(worst, rel);
      ++coords;
      if (!(rel <= 1e-5)) ++bad;
    }
  }
  return {bad == 0, std::to_string(coords) + " coordinates over 1000 draws, worst relative error " + fmt(worst)};
}

Outcome nmse_definition() {
  Eigen::VectorXd s(6), c(6);
  const auto test = builtin_test();
  for (int i = 0; i < 6; ++i) {
    s(i) = test.samples[i].s;
    c(i) = test.samples[i].c;
  }
  const double ns = 0.0014003 / population_variance(s);
  const double nc = 0.0003647 / population_variance(c);
  const bool ok = std::abs(ns - 0.0056014) <= 1e-7 && std::abs(nc - 0.0026258) <= 1e-7;
  return {ok, "S " + fmt(ns) + " vs 0.0056014, C " + fmt(nc) + " vs 0.0026258"};
}

std::vector<SeedResult> experiment1_runs() {
  const ExperimentData data{builtin_training(), builtin_cv(), builtin_test()};
  TrainingConfig cfg;  // step 1, momentum 0.6, 1000 epochs
  std::vector<SeedResult> runs;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) runs.push_back(run_seed(data, 2, 0.05, cfg, seed));
  return runs;
}

Outcome experiment1_training(const std::vector<SeedResult>& runs) {
  int within_5e3 = 0, within_1e3 = 0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : runs) {
    if (!r.ok) continue;
    const double f = r.report.final_train_mse;
    best = std::min(best, f);
    within_5e3 += f <= 5e-3;
    within_1e3 += f <= 1e-3;
  }
  return {within_5e3 >= 7 && within_1e3 >= 1, std::to_string(within_5e3) + "/10 seeds <= 5e-3, " +
                                                   std::to_string(within_1e3) + "/10 <= 1e-3, best final MSE " +
                                                   fmt(best) + " (published 0.0001761)"};
}

Outcome testing_fidelity(const std::vector<SeedResult>& runs) {
  int ok = 0, successful = 0;
  double worst_err = 0.0, worst_r = 1.0;
  for (const auto& r : runs) {
    if (!r.ok) continue;
    ++successful;
    bool seed_ok = r.binary_fidelity;
    for (const auto& rec : r.evaluation.records) {
      const double e = std::max(std::abs(rec.output_s - rec.desired_s), std::abs(rec.output_c - rec.desired_c));
      worst_err = std::max(worst_err, e);
      seed_ok = seed_ok && e <= 0.1;
    }
    for (const auto& m : r.evaluation.performance.outputs) {
      worst_r = std::min(worst_r, m.r);
      seed_ok = seed_ok && m.r >= 0.99;
    }
    ok += seed_ok;
  }
  return {successful > 0 && ok == successful, std::to_string(ok) + "/" + std::to_string(successful) +
                                                  " successful seeds faithful, worst |error| " + fmt(worst_err) +
                                                  ", worst r " + fmt(worst_r)};
}

Outcome experiment_ranking(const std::vector<SeedResult>& exp1) {
  const ExperimentData data{builtin_training(), builtin_cv(), builtin_test()};
  std::string detail;
  std::vector<std::optional<int>> medians;
  for (int n_mf : {2, 3, 4}) {
    ExperimentResult e;
    e.n_mf = n_mf;
    if (n_mf == 2) {
      e.runs = exp1;
    } else {
      for (std::uint64_t seed = 1; seed <= 10; ++seed)
        e.runs.push_back(run_seed(data, n_mf, 0.05, TrainingConfig{}, seed));
    }
    const auto m = e.median_threshold_epoch();
    medians.push_back(m);
    detail += (detail.empty() ? "" : ", ") + std::string("median n_mf=") + std::to_string(n_mf) + ": " +
              (m ? std::to_string(*m) : std::string("unreached"));
  }
  const auto below = [](const std::optional<int>& a, const std::optional<int>& b) { return a && (!b || *a < *b); };
  return {below(medians[0], medians[1]) && below(medians[0], medians[2]), detail + " (published 593/922/844)"};
}

Outcome proportionality_reference() {
  const auto a = proportionality_analysis(reference_proportionality_inputs());
  const double expected[5] = {1.186, 2.766, 3.376, 7.32, 7.014};
  bool ok = a.rows.size() == 5 && a.not_constant;
  std::string ks;
  for (std::size_t i = 0; i < a.rows.size() && i < 5; ++i) {
    ok = ok && a.rows[i].product_k && std::abs(*a.rows[i].product_k - expected[i]) < 1e-9;
    ks += (i ? "," : "") + (a.rows[i].product_k ? fmt(*a.rows[i].product_k) : std::string("-"));
  }
  return {ok, "products {" + ks + "}, ratio " + (a.ratio ? fmt(*a.ratio) : "-") +
                  (a.not_constant ? ", NOT-CONSTANT" : ", no flag")};
}

Outcome metric_oracle() {
  Rng rng(77);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng.uniform(0, 30));
    std::vector<TestingRecord> rows(n);
    for (auto& r : rows) {
      r.desired_s = rng.uniform(-1, 2);
      r.desired_c = rng.uniform(-1, 2);
      r.output_s = rng.uniform(-1, 2);
      r.output_c = rng.uniform(-1, 2);
    }
    const auto p = performance_from_records(rows);
    for (int o = 0; o < 2; ++o) {
      std::vector<double> d, a;
      for (const auto& r : rows) {
        d.push_back(o == 0 ? r.desired_s : r.desired_c);
        a.push_back(o == 0 ? r.output_s : r.output_c);
      }
      double sq = 0, ab = 0, mn = 1e300, mx = 0, md = 0, ma = 0;
      for (int i = 0; i < n; ++i) {
        const double e = a[i] - d[i];
        sq += e * e;
        ab += std::abs(e);
        mn = std::min(mn, std::abs(e));
        mx = std::max(mx, std::abs(e));
        md += d[i];
        ma += a[i];
      }
      md /= n;
      ma /= n;
      double vd = 0, va = 0, cov = 0;
      for (int i = 0; i < n; ++i) {
        vd += (d[i] - md) * (d[i] - md);
        va += (a[i] - ma) * (a[i] - ma);
        cov += (d[i] - md) * (a[i] - ma);
      }
      const double mse = sq / n;
      const double naive[6] = {mse, mse / (vd / n), ab / n, mn, mx, cov / std::sqrt(vd * va)};
      const auto& m = p.outputs[o];
      const double got[6] = {m.mse, m.nmse, m.mae, m.min_abs_error, m.max_abs_error, m.r};
      for (int k = 0; k < 6; ++k) worst = std::max(worst, std::abs(naive[k] - got[k]));
    }
  }
  return {worst <= 1e-12, "100 random datasets, worst absolute difference " + fmt(worst)};
}

Outcome builtin_golden() {
  const std::vector<Sample> t1{{0, 0, 0, 0}, {0, 1, 1, 0}, {1, 0, 1, 0}, {1, 1, 0, 1}};
  const std::vector<Sample> t2{{0.05, 0.03, 0, 0}, {0.09, 0.98, 1, 0},  {0.06, 1.06, 1, 0},
                               {1.02, 0.96, 0, 1}, {0.97, 0.035, 1, 0}, {0.99, 0.97, 0, 1},
                               {0.055, 0.98, 1, 0}, {1.01, 0.03, 1, 0}, {1.04, 0.99, 0, 1}};
  const std::vector<Sample> t3{{0.07, 0.02, 0, 0}, {0.09, 0.99, 1, 0}, {1.045, 0.03, 1, 0},
                               {0.08, 0.01, 0, 0}, {0.98, 0.02, 1, 0}, {0.975, 0.98, 0, 1}};
  bool ok = builtin_training().samples == t1 && builtin_cv().samples == t2 && builtin_test().samples == t3;
  const auto dir = fs::temp_directory_path() / "canfis_acceptance_golden";
  fs::remove_all(dir);
  for (const auto& d : {builtin_training(), builtin_cv(), builtin_test()}) {
    const auto p = dir / (d.name + ".csv");
    save_csv(d, p);
    ok = ok && load_csv(p, d.role).samples == d.samples;
  }
  fs::remove_all(dir);
  return {ok, "tables match cell-for-cell and round-trip through CSV exactly"};
}

Outcome baseline_subnets() {
  using namespace baseline;
  const auto train_set = builtin_training();
  int xor_ok = 0, and_ok = 0;
  double composed_worst = 0.0, composed_best = 1e300;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SubnetConfig cfg;
    cfg.seed = seed;
    const auto x = train_subnet(train_set, Channel::Sum, {2, 2, 1}, cfg);
    cfg.seed = seed ^ 0x9e3779b97f4a7c15ULL;
    const auto a = train_subnet(train_set, Channel::Carry, {2, 1}, cfg);
    xor_ok += x.final_rmse() <= 0.01;
    and_ok += a.final_rmse() <= 0.01;
    const double c = compose_and_evaluate({x.subnet, a.subnet}, builtin_test()).rmse;
    composed_worst = std::max(composed_worst, c);
    composed_best = std::min(composed_best, c);
  }
  return {xor_ok >= 7 && and_ok >= 7, "XOR " + std::to_string(xor_ok) + "/10, AND " + std::to_string(and_ok) +
                                          "/10 <= 0.01; composed test RMSE " + fmt(composed_best) + ".." +
                                          fmt(composed_worst) + " vs reported " + fmt(kReportedComposedRmse)};
}

// Every file under `a` must exist under `b` with identical bytes.
bool same_tree(const fs::path& a, const fs::path& b, std::size_t& files) {
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    const auto other = b / fs::relative(e.path(), a);
    if (!fs::exists(other) || read_text_file(e.path()) != read_text_file(other)) return false;
    ++files;
  }
  return true;
}

Outcome determinism() {
  const auto root = fs::temp_directory_path() / "canfis_acceptance_determinism";
  fs::remove_all(root);
  const auto produce = [](const fs::path& out) {
    ExperimentSpec spec;
    spec.n_mf = 2;
    spec.seeds = {1, 2, 3};
    spec.output_dir = out / "run";
    spec.jobs = 3;
    run_experiment(spec);
    emit_plot_data(out / "run" / "seed_1");
    SuiteOptions suite;
    suite.output_dir = out / "suite";
    suite.seeds = {1, 2};
    suite.n_mfs = {2, 3};
    suite.jobs = 2;
    run_suite(suite);
    BaselineOptions base;
    base.output_dir = out / "baseline";
    base.seeds = {1, 2};
    run_baseline(base);
  };
  produce(root / "first");
  produce(root / "second");
  std::size_t files = 0;
  const bool ok = same_tree(root / "first", root / "second", files);
  fs::remove_all(root);
  return {ok && files > 0, std::to_string(files) + " artifacts from run, plotdata, suite and baseline compared"};
}

}  // namespace

int main() {
  int failures = 0;
  const auto report = [&](int id, const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] criterion %d: %s - %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "gradient correctness", gradient_correctness);
  report(2, "NMSE definition", nmse_definition);
  const auto exp1 = experiment1_runs();
  report(3, "experiment 1 training", [&] { return experiment1_training(exp1); });
  report(4, "testing fidelity", [&] { return testing_fidelity(exp1); });
  report(5, "experiment ranking", [&] { return experiment_ranking(exp1); });
  report(6, "proportionality analysis", proportionality_reference);
  report(7, "metric oracle equivalence", metric_oracle);
  report(8, "built-in data golden", builtin_golden);
  report(9, "baseline subnets", baseline_subnets);
  report(10, "determinism", determinism);

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
