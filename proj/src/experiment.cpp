#include "canfis/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "canfis/errors.hpp"
#include "canfis/format.hpp"
#include "canfis/serialize.hpp"

namespace canfis {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

// Runs body(i) for i in [0, n) on up to `jobs` threads. Exceptions from any
// task are rethrown (the first one by index) after every thread joins.
template <typename Body>
void parallel_for(std::size_t n, int jobs, Body body) {
  std::size_t workers = jobs > 0 ? static_cast<std::size_t>(jobs) : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  std::vector<std::exception_ptr> errors(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string seed_dir_name(std::uint64_t seed) { return "seed_" + std::to_string(seed); }

ordered_json training_config_json(const TrainingConfig& c) {
  return {{"max_epochs", c.max_epochs},
          {"step_size", c.step_size},
          {"momentum", c.momentum},
          {"cv_patience", c.cv_patience},
          {"batch_mode", "full batch, mean gradient"}};
}

ordered_json network_config_json(int n_mf, double jitter) {
  return {{"n_inputs", NetworkConfig::kInputs},
          {"n_outputs", NetworkConfig::kOutputs},
          {"n_mf", n_mf},
          {"mf_shape", NetworkConfig::kMfShape},
          {"fuzzy_model", NetworkConfig::kFuzzyModel},
          {"output_transfer", NetworkConfig::kOutputTransfer},
          {"mf_jitter", jitter}};
}

ordered_json metrics_json(const OutputMetrics& m) {
  return {{"mse", m.mse},   {"nmse", m.nmse}, {"mae", m.mae}, {"min_abs_error", m.min_abs_error},
          {"max_abs_error", m.max_abs_error}, {"r", m.r}};
}

template <typename T>
ordered_json optional_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string source_label(const fs::path& p) { return p.empty() ? std::string("builtin") : p.string(); }

ordered_json seed_summary_json(const ExperimentSpec& spec, const SeedResult& r) {
  ordered_json j;
  j["n_mf"] = spec.n_mf;
  j["seed"] = r.seed;
  j["status"] = r.ok ? "ok" : "diverged";
  j["network"] = network_config_json(spec.n_mf, spec.mf_jitter);
  j["training"] = training_config_json(spec.training);
  j["data"] = {{"train", source_label(spec.data.train)},
               {"cv", source_label(spec.data.cv)},
               {"test", source_label(spec.data.test)}};
  if (!r.ok) {
    j["diverged_epoch"] = r.diverged_epoch;
    j["error"] = r.error;
  } else {
    const auto& rep = r.report;
    j["epochs_run"] = rep.records.size();
    j["stopped_early"] = rep.stopped_early;
    j["best_epoch"] = rep.best_epoch;
    j["min_cv_mse"] = rep.min_cv_mse;
    j["min_train_mse"] = rep.min_train_mse();
    j["final_train_mse"] = rep.final_train_mse;
    j["final_cv_mse"] = rep.records.back().cv_mse;
    j["mse_threshold"] = kMseThreshold;
    j["threshold_epoch"] = r.threshold_epoch > 0 ? ordered_json(r.threshold_epoch) : ordered_json(nullptr);
    j["test"] = {{"weights", "best"},
                 {"S", metrics_json(r.evaluation.performance.outputs[0])},
                 {"C", metrics_json(r.evaluation.performance.outputs[1])},
                 {"binary_fidelity", r.binary_fidelity}};
  }
  if (spec.record_time) j["wall_time_s"] = r.wall_time_s;
  return j;
}

void write_seed_artifacts(const ExperimentSpec& spec, const SeedResult& r, const fs::path& dir) {
  if (r.ok) {
    write_text_file(dir / "training_report.csv", training_report_csv(r.report));
    write_text_file(dir / "performance_report.csv", performance_report_csv(r.evaluation.performance));
    write_text_file(dir / "testing_report.csv", testing_report_csv(r.evaluation.records));
    auto best = make_network<double>(spec.n_mf);
    set_params(best, r.report.best_params);
    save_params(best, r.seed, dir / "best_params.json");
  }
  write_text_file(dir / "summary.json", seed_summary_json(spec, r).dump(2) + "\n");
}

}  // namespace

void ExperimentSpec::validate() const {
  if (n_mf < 1) throw ConfigError("n_mf must be >= 1");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (output_dir.empty()) throw ConfigError("an output directory is required");
  if (jobs < 0) throw ConfigError("jobs must be >= 0");
  if (!(mf_jitter >= 0.0 && mf_jitter < 1.0)) throw ConfigError("mf_jitter must lie in [0, 1)");
  training.validate();
}

std::optional<int> ExperimentResult::median_threshold_epoch() const {
  if (runs.empty()) return std::nullopt;
  std::vector<int> epochs;
  for (const auto& r : runs)
    epochs.push_back(r.ok && r.threshold_epoch > 0 ? r.threshold_epoch : std::numeric_limits<int>::max());
  std::sort(epochs.begin(), epochs.end());
  const int m = epochs[(epochs.size() - 1) / 2];
  if (m == std::numeric_limits<int>::max()) return std::nullopt;
  return m;
}

int ExperimentResult::reached_count() const {
  return static_cast<int>(std::count_if(runs.begin(), runs.end(), [](const auto& r) { return r.ok && r.threshold_epoch > 0; }));
}

const SeedResult* ExperimentResult::representative() const {
  for (const auto& r : runs)
    if (r.ok) return &r;
  return nullptr;
}

ExperimentData load_experiment_data(const DataSources& sources) {
  ExperimentData d{
      sources.train.empty() ? builtin_training() : load_csv(sources.train, Role::Train),
      sources.cv.empty() ? builtin_cv() : load_csv(sources.cv, Role::CrossValidation),
      sources.test.empty() ? builtin_test() : load_csv(sources.test, Role::Test),
  };
  d.train.validate();
  d.cv.validate();
  d.test.validate();
  return d;
}

SeedResult run_seed(const ExperimentData& data, int n_mf, double mf_jitter, const TrainingConfig& training,
                    std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  SeedResult r;
  r.seed = seed;
  NetworkConfig net_cfg;
  net_cfg.n_mf = n_mf;
  net_cfg.seed = seed;
  net_cfg.mf_jitter = mf_jitter;
  const auto net = init_network(net_cfg, input_ranges(data.train));
  TrainingConfig cfg = training;
  cfg.seed = seed;
  try {
    r.report = train(net, data.train, data.cv, cfg);
    r.ok = true;
  } catch (const TrainingDivergedError& e) {
    r.diverged_epoch = e.epoch();
    r.error = e.what();
  }
  if (r.ok) {
    const auto best = with_params(net, r.report.best_params);
    r.evaluation = evaluate(best, data.test);
    r.binary_fidelity = binary_fidelity(r.evaluation.records).all_match;
    r.threshold_epoch = r.report.first_epoch_train_below(kMseThreshold);
  }
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const auto data = load_experiment_data(spec.data);
  ExperimentResult result;
  result.n_mf = spec.n_mf;
  result.runs.resize(spec.seeds.size());
  parallel_for(spec.seeds.size(), spec.jobs, [&](std::size_t i) {
    result.runs[i] = run_seed(data, spec.n_mf, spec.mf_jitter, spec.training, spec.seeds[i]);
    write_seed_artifacts(spec, result.runs[i], spec.output_dir / seed_dir_name(spec.seeds[i]));
  });

  ordered_json summary;
  summary["n_mf"] = spec.n_mf;
  summary["network"] = network_config_json(spec.n_mf, spec.mf_jitter);
  summary["training"] = training_config_json(spec.training);
  summary["seeds"] = spec.seeds;
  summary["mse_threshold"] = kMseThreshold;
  summary["threshold_reached"] = result.reached_count();
  summary["median_threshold_epoch"] = optional_json(result.median_threshold_epoch());
  ordered_json runs = ordered_json::array();
  for (const auto& r : result.runs) {
    ordered_json j{{"seed", r.seed}, {"status", r.ok ? "ok" : "diverged"}, {"dir", seed_dir_name(r.seed)}};
    if (r.ok) {
      j["best_epoch"] = r.report.best_epoch;
      j["min_cv_mse"] = r.report.min_cv_mse;
      j["final_train_mse"] = r.report.final_train_mse;
      j["threshold_epoch"] = r.threshold_epoch > 0 ? ordered_json(r.threshold_epoch) : ordered_json(nullptr);
      j["binary_fidelity"] = r.binary_fidelity;
    } else {
      j["diverged_epoch"] = r.diverged_epoch;
    }
    if (spec.record_time) j["wall_time_s"] = r.wall_time_s;
    runs.push_back(std::move(j));
  }
  summary["runs"] = std::move(runs);
  write_text_file(spec.output_dir / "experiment_summary.json", summary.dump(2) + "\n");
  return result;
}

ProportionalityAnalysis proportionality_analysis(const std::vector<ProportionalityInput>& inputs) {
  if (inputs.size() < 2) throw ConfigError("proportionality_analysis needs at least two configurations");
  ProportionalityAnalysis a;
  double kmin = std::numeric_limits<double>::infinity();
  double kmax = 0.0;
  int with_k = 0;
  for (const auto& in : inputs) {
    if (in.n_mf < 1) throw ConfigError("proportionality_analysis: n_mf must be >= 1");
    ProportionalityRow row{in.n_mf, in.n_e, in.min_mse, std::nullopt};
    if (in.n_e && *in.n_e >= 1) {
      const double k = kMseThreshold * in.n_mf * *in.n_e;
      row.product_k = k;
      kmin = std::min(kmin, k);
      kmax = std::max(kmax, k);
      ++with_k;
    } else {
      row.n_e.reset();
      a.notes.push_back("n_mf=" + std::to_string(in.n_mf) + " never reached MSE " + format_real(kMseThreshold) +
                        "; excluded");
    }
    a.rows.push_back(row);
  }
  if (with_k >= 2) {
    a.ratio = kmax / kmin;
    a.not_constant = *a.ratio > kProportionalityRatioLimit;
  } else {
    a.notes.push_back("fewer than two configurations reached the threshold; ratio undefined");
  }
  return a;
}

std::vector<ProportionalityInput> reference_proportionality_inputs() {
  return {
      {2, 593, 0.0001761},
      {3, 922, 0.0009010},
      {4, 844, 0.0007791},
      {5, 1464, std::nullopt},
      {6, 1169, std::nullopt},
  };
}

std::string proportionality_table_csv(const ProportionalityAnalysis& measured, const ProportionalityAnalysis* reference) {
  const auto opt = [](const auto& v) { return v ? format_real(static_cast<double>(*v)) : std::string(); };
  std::map<int, const ProportionalityRow*> ref_rows;
  if (reference)
    for (const auto& r : reference->rows) ref_rows[r.n_mf] = &r;
  std::ostringstream out;
  out << "n_mf,n_e,min_mse,product_k";
  if (reference) out << ",reference_n_e,reference_product_k";
  out << '\n';
  for (const auto& r : measured.rows) {
    out << r.n_mf << ',' << opt(r.n_e) << ',' << opt(r.min_mse) << ',' << opt(r.product_k);
    if (reference) {
      const auto it = ref_rows.find(r.n_mf);
      if (it != ref_rows.end())
        out << ',' << opt(it->second->n_e) << ',' << opt(it->second->product_k);
      else
        out << ",,";
    }
    out << '\n';
  }
  return out.str();
}

int suite_epochs(int n_mf) { return n_mf >= 5 ? 2000 : 1000; }

namespace {

ordered_json proportionality_json(const ProportionalityAnalysis& a) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : a.rows)
    rows.push_back({{"n_mf", r.n_mf},
                    {"n_e", optional_json(r.n_e)},
                    {"min_mse", optional_json(r.min_mse)},
                    {"product_k", optional_json(r.product_k)}});
  return {{"rows", rows},
          {"ratio", optional_json(a.ratio)},
          {"ratio_limit", kProportionalityRatioLimit},
          {"flag", a.not_constant ? "NOT-CONSTANT" : ""},
          {"notes", a.notes}};
}

std::string training_table_csv(const std::vector<ExperimentResult>& exps) {
  std::ostringstream out;
  out << "epoch";
  for (const auto& e : exps) out << ",n" << e.n_mf << "_train,n" << e.n_mf << "_cv";
  out << '\n';
  const auto cell = [](const SeedResult* r, int epoch, bool cv) {
    if (!r || epoch > static_cast<int>(r->report.records.size())) return std::string(",");
    const auto& rec = r->report.records[static_cast<std::size_t>(epoch - 1)];
    return "," + format_real(cv ? rec.cv_mse : rec.train_mse);
  };
  std::vector<int> checkpoints{1};
  for (int e = 200; e <= 1000; e += 200) checkpoints.push_back(e);
  for (int epoch : checkpoints) {
    out << epoch;
    for (const auto& e : exps) {
      const auto* r = e.representative();
      out << cell(r, epoch, false) << cell(r, epoch, true);
    }
    out << '\n';
  }
  out << "Min MSE";
  for (const auto& e : exps) {
    const auto* r = e.representative();
    if (r)
      out << ',' << format_real(r->report.min_train_mse()) << ',' << format_real(r->report.min_cv_mse);
    else
      out << ",,";
  }
  out << "\nFinal MSE";
  for (const auto& e : exps) {
    const auto* r = e.representative();
    if (r)
      out << ',' << format_real(r->report.final_train_mse) << ',' << format_real(r->report.records.back().cv_mse);
    else
      out << ",,";
  }
  out << '\n';
  return out.str();
}

std::string testing_table_csv(const std::vector<ExperimentResult>& exps) {
  std::vector<const SeedResult*> reps;
  for (const auto& e : exps)
    if (const auto* r = e.representative()) reps.push_back(r);
  std::ostringstream out;
  out << "X,Y,S,C";
  for (const auto& e : exps)
    if (e.representative()) out << ",n" << e.n_mf << "_S_output,n" << e.n_mf << "_C_output";
  out << '\n';
  if (reps.empty()) return out.str();
  const auto& base = reps.front()->evaluation.records;
  for (std::size_t i = 0; i < base.size(); ++i) {
    out << format_real(base[i].x) << ',' << format_real(base[i].y) << ',' << format_real(base[i].desired_s) << ','
        << format_real(base[i].desired_c);
    for (const auto* r : reps)
      out << ',' << format_real(r->evaluation.records[i].output_s) << ','
          << format_real(r->evaluation.records[i].output_c);
    out << '\n';
  }
  return out.str();
}

}  // namespace

SuiteResult run_suite(const SuiteOptions& options) {
  if (options.output_dir.empty()) throw ConfigError("an output directory is required");
  if (options.seeds.empty()) throw ConfigError("at least one seed is required");
  if (options.n_mfs.size() < 2) throw ConfigError("the suite needs at least two n_mf values");

  SuiteResult suite;
  for (int n_mf : options.n_mfs) {
    ExperimentSpec spec;
    spec.n_mf = n_mf;
    spec.seeds = options.seeds;
    spec.training.max_epochs = suite_epochs(n_mf);
    spec.output_dir = options.output_dir / ("n_mf_" + std::to_string(n_mf));
    spec.jobs = options.jobs;
    spec.record_time = options.record_time;
    suite.experiments.push_back(run_experiment(spec));
  }

  std::ostringstream thresholds;
  thresholds << "n_mf,seed,status,threshold_epoch,min_train_mse,best_epoch,min_cv_mse,binary_fidelity\n";
  std::vector<ProportionalityInput> prop_in;
  for (const auto& e : suite.experiments) {
    std::optional<double> min_mse;
    for (const auto& r : e.runs) {
      thresholds << e.n_mf << ',' << r.seed << ',' << (r.ok ? "ok" : "diverged") << ',';
      if (r.ok) {
        const double m = r.report.min_train_mse();
        min_mse = min_mse ? std::min(*min_mse, m) : m;
        thresholds << (r.threshold_epoch > 0 ? std::to_string(r.threshold_epoch) : "") << ',' << format_real(m) << ','
                   << r.report.best_epoch << ',' << format_real(r.report.min_cv_mse) << ','
                   << (r.binary_fidelity ? "true" : "false");
      } else {
        thresholds << ",,,,";
      }
      thresholds << '\n';
    }
    prop_in.push_back({e.n_mf, e.median_threshold_epoch(), min_mse});
  }
  suite.proportionality = proportionality_analysis(prop_in);
  suite.reference_proportionality = proportionality_analysis(reference_proportionality_inputs());

  std::map<int, std::optional<int>> medians;
  for (const auto& e : suite.experiments) medians[e.n_mf] = e.median_threshold_epoch();
  const auto med = [&](int n) { return medians.count(n) ? medians[n] : std::optional<int>{}; };
  suite.n_mf2_fastest = med(2) && (!med(3) || *med(2) < *med(3)) && (!med(4) || *med(2) < *med(4)) &&
                        medians.count(3) && medians.count(4);

  std::vector<std::string> labels;
  std::vector<PerformanceRecord> perfs;
  for (const auto& e : suite.experiments)
    if (const auto* r = e.representative()) {
      labels.push_back("n" + std::to_string(e.n_mf));
      perfs.push_back(r->evaluation.performance);
    }

  const auto& dir = options.output_dir;
  write_text_file(dir / "threshold_epochs.csv", thresholds.str());
  write_text_file(dir / "proportionality_table.csv", proportionality_table_csv(suite.proportionality, &suite.reference_proportionality));
  write_text_file(dir / "training_table.csv", training_table_csv(suite.experiments));
  write_text_file(dir / "performance_table.csv", performance_table_csv(labels, perfs));
  write_text_file(dir / "testing_table.csv", testing_table_csv(suite.experiments));

  ordered_json summary;
  summary["seeds"] = options.seeds;
  summary["mse_threshold"] = kMseThreshold;
  ordered_json configs = ordered_json::array();
  for (const auto& e : suite.experiments) {
    const auto* rep = e.representative();
    configs.push_back({{"n_mf", e.n_mf},
                       {"max_epochs", suite_epochs(e.n_mf)},
                       {"dir", "n_mf_" + std::to_string(e.n_mf)},
                       {"threshold_reached", e.reached_count()},
                       {"median_threshold_epoch", optional_json(e.median_threshold_epoch())},
                       {"representative_seed", rep ? ordered_json(rep->seed) : ordered_json(nullptr)}});
  }
  summary["configurations"] = configs;
  summary["n_mf2_fastest"] = suite.n_mf2_fastest;
  summary["proportionality"] = proportionality_json(suite.proportionality);
  summary["proportionality_reference"] = proportionality_json(suite.reference_proportionality);
  write_text_file(dir / "suite_summary.json", summary.dump(2) + "\n");
  return suite;
}

namespace {

std::vector<std::vector<std::string>> read_report(const fs::path& path, const std::vector<std::string>& header) {
  if (!fs::exists(path)) throw FileError("missing report " + path.filename().string(), path.string());
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != header)
    throw FileError("unexpected header in report " + path.filename().string(), path.string());
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw FileError("wrong field count in report " + path.filename().string(), path.string());
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

std::vector<fs::path> emit_plot_data(const fs::path& run_dir) {
  const auto summary_path = run_dir / "summary.json";
  if (!fs::exists(summary_path)) throw FileError("missing run summary summary.json", summary_path.string());
  int n_mf = 0;
  try {
    n_mf = nlohmann::json::parse(read_text_file(summary_path)).at("n_mf").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw FileError(std::string("unreadable run summary (") + e.what() + ")", summary_path.string());
  }
  const auto train_rows = read_report(run_dir / "training_report.csv", {"epoch", "train_mse", "cv_mse"});
  const auto test_rows = read_report(run_dir / "testing_report.csv", {"X", "Y", "S", "C", "S_output", "C_output"});

  std::ostringstream train;
  train << "epoch,train_mse,cv_mse\n";
  for (const auto& r : train_rows) train << r[0] << ',' << r[1] << ',' << r[2] << '\n';
  std::ostringstream test;
  test << "sample,desired_s,output_s,desired_c,output_c\n";
  for (std::size_t i = 0; i < test_rows.size(); ++i) {
    const auto& r = test_rows[i];
    test << (i + 1) << ',' << r[2] << ',' << r[4] << ',' << r[3] << ',' << r[5] << '\n';
  }
  const auto train_path = run_dir / ("graph_train_" + std::to_string(n_mf) + ".csv");
  const auto test_path = run_dir / ("graph_test_" + std::to_string(n_mf) + ".csv");
  write_text_file(train_path, train.str());
  write_text_file(test_path, test.str());
  return {train_path, test_path};
}

std::vector<BaselineSeedResult> run_baseline(const BaselineOptions& options) {
  using namespace baseline;
  if (options.output_dir.empty()) throw ConfigError("an output directory is required");
  if (options.seeds.empty()) throw ConfigError("at least one seed is required");
  options.config.validate();
  const auto train_set = builtin_training();
  const auto test_set = builtin_test();

  const auto history_csv = [](const std::vector<double>& h) {
    std::ostringstream out;
    out << "epoch,rmse\n";
    for (std::size_t i = 0; i < h.size(); ++i) out << (i + 1) << ',' << format_real(h[i]) << '\n';
    return out.str();
  };

  std::vector<BaselineSeedResult> results;
  ordered_json runs = ordered_json::array();
  std::ostringstream table;
  table << "seed,status,xor_rmse,and_rmse,composed_rmse_train,composed_rmse_test,reported_composed_rmse,binary_fidelity\n";
  for (const auto seed : options.seeds) {
    BaselineSeedResult r;
    r.seed = seed;
    const auto dir = options.output_dir / seed_dir_name(seed);
    SubnetConfig cfg = options.config;
    cfg.seed = seed;
    ordered_json j{{"seed", seed}};
    try {
      const auto xor_fit = train_subnet(train_set, Channel::Sum, options.xor_topology, cfg);
      // distinct stream for the second subnet
      cfg.seed = seed ^ 0x9e3779b97f4a7c15ULL;
      const auto and_fit = train_subnet(train_set, Channel::Carry, options.and_topology, cfg);
      const ComposedHalfAdder composed{xor_fit.subnet, and_fit.subnet};
      const auto on_train = compose_and_evaluate(composed, train_set);
      const auto on_test = compose_and_evaluate(composed, test_set);
      r.ok = true;
      r.xor_rmse = xor_fit.final_rmse();
      r.and_rmse = and_fit.final_rmse();
      r.composed_rmse_train = on_train.rmse;
      r.composed_rmse_test = on_test.rmse;
      r.binary_fidelity = binary_fidelity(on_test.records).all_match;

      write_text_file(dir / "baseline_xor_training_report.csv", history_csv(xor_fit.rmse_history));
      write_text_file(dir / "baseline_and_training_report.csv", history_csv(and_fit.rmse_history));
      write_text_file(dir / "baseline_testing_report.csv", testing_report_csv(on_test.records));
      write_text_file(dir / "baseline_performance_report.csv",
                      performance_report_csv(performance_from_records(on_test.records)));
      j["status"] = "ok";
      j["xor"] = {{"topology", options.xor_topology}, {"epochs", xor_fit.rmse_history.size()}, {"final_rmse", r.xor_rmse}};
      j["and"] = {{"topology", options.and_topology}, {"epochs", and_fit.rmse_history.size()}, {"final_rmse", r.and_rmse}};
      j["composed_rmse_train"] = r.composed_rmse_train;
      j["composed_rmse_test"] = r.composed_rmse_test;
      j["binary_fidelity"] = r.binary_fidelity;
    } catch (const TrainingDivergedError& e) {
      r.error = e.what();
      j["status"] = "diverged";
      j["error"] = r.error;
    }
    j["reported_composed_rmse"] = kReportedComposedRmse;
    write_text_file(dir / "baseline_summary.json", j.dump(2) + "\n");
    runs.push_back(j);

    table << seed << ',' << (r.ok ? "ok" : "diverged") << ',';
    if (r.ok)
      table << format_real(r.xor_rmse) << ',' << format_real(r.and_rmse) << ',' << format_real(r.composed_rmse_train)
            << ',' << format_real(r.composed_rmse_test) << ',';
    else
      table << ",,,,";
    table << format_real(kReportedComposedRmse) << ',' << (r.binary_fidelity ? "true" : "false") << '\n';
    results.push_back(r);
  }

  ordered_json summary;
  summary["config"] = {{"max_epochs", options.config.max_epochs},
                       {"step_size", options.config.step_size},
                       {"momentum", options.config.momentum},
                       {"init_range", options.config.init_range},
                       {"target_rmse", options.config.target_rmse}};
  summary["reported_composed_rmse"] = kReportedComposedRmse;
  summary["runs"] = std::move(runs);
  write_text_file(options.output_dir / "baseline_summary.json", summary.dump(2) + "\n");
  write_text_file(options.output_dir / "baseline_summary.csv", table.str());
  return results;
}

}  // namespace canfis
