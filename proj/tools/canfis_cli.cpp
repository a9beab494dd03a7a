// Command-line harness: trains CANFIS half-adder networks, runs the n_mf sweep,
// the modular-MLP baseline, and converts run reports into plot data.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "canfis/errors.hpp"
#include "canfis/experiment.hpp"
#include "canfis/format.hpp"

namespace {

// Accepts "1,2,5" and ranges such as "1-10" (combinable: "1-3,7").
std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& item : canfis::split_csv_line(text)) {
    if (item.empty()) throw canfis::ConfigError("empty entry in seed list '" + text + "'");
    const auto dash = item.find('-');
    try {
      std::size_t used = 0;
      if (dash == std::string::npos) {
        seeds.push_back(std::stoull(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } else {
        const auto lo = std::stoull(item.substr(0, dash));
        const auto hi = std::stoull(item.substr(dash + 1), &used);
        if (used != item.size() - dash - 1 || hi < lo) throw std::invalid_argument(item);
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw canfis::ConfigError("invalid seed list entry '" + item + "'");
    }
  }
  if (seeds.empty()) throw canfis::ConfigError("seed list is empty");
  return seeds;
}

std::filesystem::path data_path(const std::string& arg) {
  return arg == "builtin" ? std::filesystem::path{} : std::filesystem::path{arg};
}

std::string opt_epoch(const std::optional<int>& e) { return e ? std::to_string(*e) : std::string("not reached"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CANFIS half-adder training and experiment harness"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Train one n_mf configuration over a list of seeds");
  int mf = 2;
  std::string seeds_arg = "1-10";
  canfis::TrainingConfig tc;
  std::string train_arg = "builtin", cv_arg = "builtin", test_arg = "builtin";
  std::string out_dir;
  int jobs = 1;
  bool record_time = false;
  double jitter = 0.05;
  run->add_option("--mf", mf, "Membership functions per input")->check(CLI::PositiveNumber);
  run->add_option("--seeds", seeds_arg, "Seed list, e.g. 1,2,3 or 1-10");
  run->add_option("--epochs", tc.max_epochs, "Maximum epochs")->check(CLI::PositiveNumber);
  run->add_option("--step-size", tc.step_size, "Momentum learning rule step size");
  run->add_option("--momentum", tc.momentum, "Momentum coefficient");
  run->add_option("--patience", tc.cv_patience, "Epochs of rising CV MSE before stopping (0 disables)");
  run->add_option("--jitter", jitter, "Relative MF initialization jitter");
  run->add_option("--train", train_arg, "Training CSV or 'builtin'");
  run->add_option("--cv", cv_arg, "Cross-validation CSV or 'builtin'");
  run->add_option("--test", test_arg, "Testing CSV or 'builtin'");
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--jobs", jobs, "Concurrent seed runs (0 = hardware concurrency)");
  run->add_flag("--record-time", record_time, "Record wall-clock time in summaries");

  // suite
  auto* suite = app.add_subcommand("suite", "Run the n_mf = 2..6 sweep and the epoch/MSE analysis");
  std::string suite_out;
  std::string suite_seeds = "1-10";
  int suite_jobs = 1;
  bool suite_time = false;
  suite->add_option("--out", suite_out, "Output directory")->required();
  suite->add_option("--seeds", suite_seeds, "Seed list, e.g. 1,2,3 or 1-10");
  suite->add_option("--jobs", suite_jobs, "Concurrent seed runs (0 = hardware concurrency)");
  suite->add_flag("--record-time", suite_time, "Record wall-clock time in summaries");

  // baseline
  auto* base = app.add_subcommand("baseline", "Train XOR/AND MLP subnets and compose them into a half-adder");
  std::string base_out;
  std::string base_seeds = "1-10";
  canfis::baseline::SubnetConfig sc;
  base->add_option("--out", base_out, "Output directory")->required();
  base->add_option("--seeds", base_seeds, "Seed list");
  base->add_option("--epochs", sc.max_epochs, "Maximum epochs per subnet")->check(CLI::PositiveNumber);
  base->add_option("--step-size", sc.step_size, "Step size");
  base->add_option("--momentum", sc.momentum, "Momentum coefficient");
  base->add_option("--target-rmse", sc.target_rmse, "Stop once RMSE reaches this level (0 disables)");

  // plotdata
  auto* plot = app.add_subcommand("plotdata", "Write graph CSVs from a seed run directory");
  std::string run_dir;
  plot->add_option("--run", run_dir, "Seed run directory (holds summary.json and reports)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      canfis::ExperimentSpec spec;
      spec.n_mf = mf;
      spec.seeds = parse_seed_list(seeds_arg);
      spec.training = tc;
      spec.mf_jitter = jitter;
      spec.data = {data_path(train_arg), data_path(cv_arg), data_path(test_arg)};
      spec.output_dir = out_dir;
      spec.jobs = jobs;
      spec.record_time = record_time;
      const auto result = canfis::run_experiment(spec);
      for (const auto& r : result.runs) {
        if (r.ok)
          std::cout << "seed " << r.seed << ": final train MSE " << canfis::format_real(r.report.final_train_mse)
                    << ", min CV MSE " << canfis::format_real(r.report.min_cv_mse) << " at epoch "
                    << r.report.best_epoch << ", MSE<=0.001 at epoch "
                    << opt_epoch(r.threshold_epoch > 0 ? std::optional<int>(r.threshold_epoch) : std::nullopt)
                    << ", half-adder " << (r.binary_fidelity ? "exact" : "NOT exact") << "\n";
        else
          std::cout << "seed " << r.seed << ": " << r.error << "\n";
      }
      std::cout << "median epoch to MSE 0.001: " << opt_epoch(result.median_threshold_epoch()) << "\n";
    } else if (*suite) {
      canfis::SuiteOptions opts;
      opts.output_dir = suite_out;
      opts.seeds = parse_seed_list(suite_seeds);
      opts.jobs = suite_jobs;
      opts.record_time = suite_time;
      const auto res = canfis::run_suite(opts);
      for (const auto& e : res.experiments)
        std::cout << "n_mf=" << e.n_mf << ": " << e.reached_count() << "/" << e.runs.size()
                  << " seeds reached MSE 0.001, median epoch " << opt_epoch(e.median_threshold_epoch()) << "\n";
      std::cout << "n_mf=2 fastest: " << (res.n_mf2_fastest ? "yes" : "no") << "\n";
      if (res.proportionality.ratio)
        std::cout << "Proportionality product ratio " << canfis::format_real(*res.proportionality.ratio)
                  << (res.proportionality.not_constant ? " (NOT-CONSTANT)" : "") << "\n";
    } else if (*base) {
      canfis::BaselineOptions opts;
      opts.output_dir = base_out;
      opts.seeds = parse_seed_list(base_seeds);
      opts.config = sc;
      for (const auto& r : canfis::run_baseline(opts)) {
        if (r.ok)
          std::cout << "seed " << r.seed << ": XOR RMSE " << canfis::format_real(r.xor_rmse) << ", AND RMSE "
                    << canfis::format_real(r.and_rmse) << ", composed RMSE (test) "
                    << canfis::format_real(r.composed_rmse_test) << " vs reported "
                    << canfis::format_real(canfis::baseline::kReportedComposedRmse) << "\n";
        else
          std::cout << "seed " << r.seed << ": " << r.error << "\n";
      }
    } else if (*plot) {
      for (const auto& p : canfis::emit_plot_data(run_dir)) std::cout << p.string() << "\n";
    }
  } catch (const canfis::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
