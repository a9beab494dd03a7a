#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "canfis/baseline.hpp"
#include "canfis/dataset.hpp"
#include "canfis/metrics.hpp"
#include "canfis/network.hpp"
#include "canfis/training.hpp"

namespace canfis {

/// Training MSE level whose first crossing is tracked per run.
inline constexpr double kMseThreshold = 0.001;

/// Where a dataset comes from: empty path means the built-in table.
struct DataSources {
  std::filesystem::path train;
  std::filesystem::path cv;
  std::filesystem::path test;
};

struct ExperimentSpec {
  int n_mf = 2;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  TrainingConfig training;
  double mf_jitter = 0.05;
  DataSources data;
  std::filesystem::path output_dir;
  /// Adds wall-clock time to the summaries (which then stop being reproducible).
  bool record_time = false;
  /// Concurrent seed runs; 0 picks the hardware concurrency.
  int jobs = 1;

  void validate() const;
};

struct SeedResult {
  std::uint64_t seed = 0;
  bool ok = false;
  int diverged_epoch = 0;  // set when !ok
  std::string error;
  TrainingReport report;
  Evaluation evaluation;  // of the best weights on the test set
  bool binary_fidelity = false;
  int threshold_epoch = 0;  // first epoch with train MSE <= kMseThreshold, 0 if never
  double wall_time_s = 0.0;
};

struct ExperimentResult {
  int n_mf = 0;
  std::vector<SeedResult> runs;  // in spec.seeds order

  /// Lower median of threshold epochs over all seeds; unreached or failed
  /// seeds count as +infinity. Empty when that median is unreached.
  std::optional<int> median_threshold_epoch() const;
  int reached_count() const;
  /// First successful run, used for single-run tables.
  const SeedResult* representative() const;
};

/// Loads the three datasets named by `sources`, built-ins for empty paths.
struct ExperimentData {
  Dataset train;
  Dataset cv;
  Dataset test;
};
ExperimentData load_experiment_data(const DataSources& sources);

/// Trains one seed and evaluates its best weights. Never throws for divergence.
SeedResult run_seed(const ExperimentData& data, int n_mf, double mf_jitter, const TrainingConfig& training,
                    std::uint64_t seed);

/// Runs every seed and writes, per seed under output_dir/seed_<s>/:
/// training_report.csv, performance_report.csv, testing_report.csv,
/// best_params.json and summary.json; plus output_dir/experiment_summary.json.
ExperimentResult run_experiment(const ExperimentSpec& spec);

struct ProportionalityInput {
  int n_mf = 0;
  std::optional<int> n_e;
  std::optional<double> min_mse;
};

struct ProportionalityRow {
  int n_mf = 0;
  std::optional<int> n_e;
  std::optional<double> min_mse;
  std::optional<double> product_k;  // kMseThreshold * n_mf * n_e
};

struct ProportionalityAnalysis {
  std::vector<ProportionalityRow> rows;
  std::optional<double> ratio;  // max(k) / min(k) over rows with n_e
  bool not_constant = false;    // ratio > kProportionalityRatioLimit
  std::vector<std::string> notes;
};

inline constexpr double kProportionalityRatioLimit = 2.0;

/// Tabulates min(MSE) ~ 1/(n_mf * n_e) in threshold form. Descriptive only:
/// flags NOT-CONSTANT when the products spread by more than a factor of 2.
ProportionalityAnalysis proportionality_analysis(const std::vector<ProportionalityInput>& inputs);

/// Threshold epochs reported for n_mf = 2..6 in the published runs.
std::vector<ProportionalityInput> reference_proportionality_inputs();

/// `n_mf,n_e,min_mse,product_k`, plus reference columns when given.
std::string proportionality_table_csv(const ProportionalityAnalysis& measured, const ProportionalityAnalysis* reference = nullptr);

struct SuiteOptions {
  std::filesystem::path output_dir;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<int> n_mfs{2, 3, 4, 5, 6};
  int jobs = 1;
  bool record_time = false;
};

struct SuiteResult {
  std::vector<ExperimentResult> experiments;  // in n_mfs order
  ProportionalityAnalysis proportionality;
  ProportionalityAnalysis reference_proportionality;
  /// n_mf = 2 has the strictly smallest median threshold epoch among the
  /// configurations 2, 3 and 4 (false when any of them is missing).
  bool n_mf2_fastest = false;
};

/// Epoch budget the suite uses for a given n_mf (2000 for 5 and 6, else 1000).
int suite_epochs(int n_mf);

/// Runs the experiment sweep into output_dir/n_mf_<n>/ and writes suite-level
/// tables: threshold_epochs.csv, proportionality_table.csv, training_table.csv,
/// performance_table.csv, testing_table.csv and suite_summary.json.
SuiteResult run_suite(const SuiteOptions& options);

/// Writes graph_train_<n_mf>.csv and graph_test_<n_mf>.csv into `run_dir`
/// from the reports a seed run left there. Returns the written paths.
std::vector<std::filesystem::path> emit_plot_data(const std::filesystem::path& run_dir);

struct BaselineOptions {
  std::filesystem::path output_dir;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  baseline::SubnetConfig config;
  std::vector<int> xor_topology{2, 2, 1};
  std::vector<int> and_topology{2, 1};
};

struct BaselineSeedResult {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double xor_rmse = 0.0;
  double and_rmse = 0.0;
  double composed_rmse_train = 0.0;
  double composed_rmse_test = 0.0;
  bool binary_fidelity = false;
};

/// Trains XOR and AND subnets per seed, composes them and writes
/// baseline_-prefixed reports under output_dir/seed_<s>/ plus
/// output_dir/baseline_summary.csv and baseline_summary.json.
std::vector<BaselineSeedResult> run_baseline(const BaselineOptions& options);

}  // namespace canfis
