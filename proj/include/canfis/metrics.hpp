#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "canfis/dataset.hpp"
#include "canfis/network.hpp"

namespace canfis {

/// Regression statistics for one output channel.
struct OutputMetrics {
  double mse = 0.0;
  double nmse = 0.0;
  double mae = 0.0;
  double min_abs_error = 0.0;
  double max_abs_error = 0.0;
  double r = 0.0;
};

/// Index 0 is the sum output S, index 1 the carry output C.
struct PerformanceRecord {
  std::array<OutputMetrics, 2> outputs;
};

/// One row of a testing report, in report column order.
struct TestingRecord {
  double x = 0.0;
  double y = 0.0;
  double desired_s = 0.0;
  double desired_c = 0.0;
  double output_s = 0.0;
  double output_c = 0.0;
};

struct Evaluation {
  PerformanceRecord performance;
  std::vector<TestingRecord> records;
};

/// Population variance (divides by N).
double population_variance(const Eigen::Ref<const Eigen::VectorXd>& v);

/// Pearson product-moment correlation. Throws DimensionError for mismatched or
/// too-short inputs and CorrelationUndefinedError when either side is constant.
double pearson_r(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b);

/// All statistics for one channel. `output` tags errors with the channel index.
OutputMetrics output_metrics(const Eigen::Ref<const Eigen::VectorXd>& desired,
                             const Eigen::Ref<const Eigen::VectorXd>& actual, int output = -1);

/// Performance statistics over already-computed testing rows.
PerformanceRecord performance_from_records(const std::vector<TestingRecord>& records);

/// Runs the network over the test set and scores both outputs.
Evaluation evaluate(const CanfisNetwork<double>& net, const Dataset& test_set);

struct FidelityRow {
  int rounded_s = 0;
  int rounded_c = 0;
  bool matches = false;
};

struct FidelityResult {
  bool all_match = false;
  std::vector<FidelityRow> rows;
};

/// Rounds every output at `threshold` (a value equal to the threshold rounds
/// to 1) and checks the result against the desired bits.
FidelityResult binary_fidelity(const std::vector<TestingRecord>& records, double threshold = 0.5);

/// Rows are metric names, columns `S,C`.
std::string performance_report_csv(const PerformanceRecord& perf);
/// Several runs side by side; `labels[i]` prefixes the S/C column pair of `perfs[i]`.
std::string performance_table_csv(const std::vector<std::string>& labels,
                                  const std::vector<PerformanceRecord>& perfs);
/// Header `X,Y,S,C,S_output,C_output`.
std::string testing_report_csv(const std::vector<TestingRecord>& records);

}  // namespace canfis
