#include "canfis/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "canfis/errors.hpp"
#include "canfis/format.hpp"

namespace canfis {

double population_variance(const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (v.size() == 0) throw DimensionError("variance of an empty series");
  return (v.array() - v.mean()).square().mean();
}

double pearson_r(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b) {
  if (a.size() != b.size()) throw DimensionError("pearson_r needs equal-length series");
  if (a.size() < 2) throw DimensionError("pearson_r needs at least two points");
  const Eigen::ArrayXd da = a.array() - a.mean();
  const Eigen::ArrayXd db = b.array() - b.mean();
  const double saa = da.square().sum();
  const double sbb = db.square().sum();
  if (saa == 0.0 || sbb == 0.0) throw CorrelationUndefinedError("pearson_r of a constant series", -1);
  const double r = (da * db).sum() / std::sqrt(saa * sbb);
  return std::clamp(r, -1.0, 1.0);
}

OutputMetrics output_metrics(const Eigen::Ref<const Eigen::VectorXd>& desired,
                             const Eigen::Ref<const Eigen::VectorXd>& actual, int output) {
  if (desired.size() != actual.size()) throw DimensionError("desired and actual differ in length");
  if (desired.size() == 0) throw DataError("cannot score an empty series");
  const double var = population_variance(desired);
  if (var == 0.0)
    throw CorrelationUndefinedError(
        "desired values of output " + std::to_string(output) + " are constant; r and NMSE are undefined", output);

  const Eigen::ArrayXd err = (desired - actual).array();
  const Eigen::ArrayXd abs_err = err.abs();
  OutputMetrics m;
  m.mse = err.square().mean();
  m.nmse = m.mse / var;
  m.mae = abs_err.mean();
  m.min_abs_error = abs_err.minCoeff();
  m.max_abs_error = abs_err.maxCoeff();
  try {
    m.r = pearson_r(desired, actual);
  } catch (const CorrelationUndefinedError&) {
    throw CorrelationUndefinedError("network output " + std::to_string(output) + " is constant; r is undefined",
                                    output);
  }
  return m;
}

PerformanceRecord performance_from_records(const std::vector<TestingRecord>& records) {
  const auto n = static_cast<Eigen::Index>(records.size());
  Eigen::VectorXd ds(n), dc(n), os(n), oc(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = records[static_cast<std::size_t>(i)];
    ds(i) = r.desired_s;
    dc(i) = r.desired_c;
    os(i) = r.output_s;
    oc(i) = r.output_c;
  }
  return {{output_metrics(ds, os, 0), output_metrics(dc, oc, 1)}};
}

Evaluation evaluate(const CanfisNetwork<double>& net, const Dataset& test_set) {
  test_set.validate();
  Evaluation ev;
  ev.records.reserve(test_set.size());
  for (const auto& s : test_set.samples) {
    const auto out = predict(net, s.x, s.y);
    ev.records.push_back({s.x, s.y, s.s, s.c, out(0), out(1)});
  }
  ev.performance = performance_from_records(ev.records);
  return ev;
}

FidelityResult binary_fidelity(const std::vector<TestingRecord>& records, double threshold) {
  if (records.empty()) throw DataError("binary_fidelity needs at least one record");
  const auto bit = [threshold](double v) { return v >= threshold ? 1 : 0; };
  FidelityResult res;
  res.all_match = true;
  for (const auto& r : records) {
    FidelityRow row{bit(r.output_s), bit(r.output_c), false};
    row.matches = row.rounded_s == r.desired_s && row.rounded_c == r.desired_c;
    res.all_match = res.all_match && row.matches;
    res.rows.push_back(row);
  }
  return res;
}

namespace {

constexpr std::array<const char*, 6> kMetricNames{"MSE", "NMSE", "MAE", "Min Abs Error", "Max Abs Error", "r"};

double metric_value(const OutputMetrics& m, std::size_t i) {
  switch (i) {
    case 0: return m.mse;
    case 1: return m.nmse;
    case 2: return m.mae;
    case 3: return m.min_abs_error;
    case 4: return m.max_abs_error;
    default: return m.r;
  }
}

}  // namespace

std::string performance_table_csv(const std::vector<std::string>& labels,
                                  const std::vector<PerformanceRecord>& perfs) {
  if (labels.size() != perfs.size()) throw DimensionError("one label per performance record");
  std::ostringstream out;
  out << "metric";
  for (const auto& l : labels) {
    if (l.empty())
      out << ",S,C";
    else
      out << ',' << l << "_S," << l << "_C";
  }
  out << '\n';
  for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
    out << kMetricNames[i];
    for (const auto& p : perfs)
      out << ',' << format_real(metric_value(p.outputs[0], i)) << ',' << format_real(metric_value(p.outputs[1], i));
    out << '\n';
  }
  return out.str();
}

std::string performance_report_csv(const PerformanceRecord& perf) {
  return performance_table_csv({""}, {perf});
}

std::string testing_report_csv(const std::vector<TestingRecord>& records) {
  std::ostringstream out;
  out << "X,Y,S,C,S_output,C_output\n";
  for (const auto& r : records)
    out << format_real(r.x) << ',' << format_real(r.y) << ',' << format_real(r.desired_s) << ','
        << format_real(r.desired_c) << ',' << format_real(r.output_s) << ',' << format_real(r.output_c) << '\n';
  return out.str();
}

}  // namespace canfis
