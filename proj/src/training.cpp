#include "canfis/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "canfis/errors.hpp"
#include "canfis/format.hpp"
#include "canfis/gradient.hpp"

namespace canfis {

void TrainingConfig::validate() const {
  if (max_epochs < 1) throw ConfigError("max_epochs must be >= 1");
  if (!(step_size > 0.0) || !std::isfinite(step_size)) throw ConfigError("step_size must be finite and > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw ConfigError("momentum must lie in [0, 1)");
  if (cv_patience < 0) throw ConfigError("cv_patience must be >= 0");
}

int TrainingReport::first_epoch_train_below(double threshold) const {
  for (const auto& r : records)
    if (r.train_mse <= threshold) return r.epoch;
  return 0;
}

double TrainingReport::min_train_mse() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : records) m = std::min(m, r.train_mse);
  return m;
}

double compute_mse(const Network& net, const Dataset& data) {
  if (data.empty()) throw DataError("cannot compute MSE of an empty dataset");
  double sum = 0.0;
  for (const auto& s : data.samples) sum += (s.desired() - predict(net, s.x, s.y)).squaredNorm();
  return sum / (2.0 * static_cast<double>(data.size()));
}

Eigen::VectorXd batch_gradient(const Network& net, const Dataset& data, double* loss) {
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(net.param_count());
  double total = 0.0;
  for (const auto& s : data.samples) {
    const auto trace = forward(net, s.x, s.y);
    const Target<double> d = s.desired();
    total += sample_loss<double>(trace.outputs, d);
    grad += backward(net, trace, d);
  }
  if (loss) *loss = total;
  return grad / static_cast<double>(data.size());
}

MomentumState momentum_step(const Eigen::VectorXd& params, const Eigen::VectorXd& grads,
                            const Eigen::VectorXd& velocity, double step_size, double momentum) {
  if (params.size() != grads.size() || params.size() != velocity.size())
    throw DimensionError("momentum_step needs params, grads and velocity of equal length");
  MomentumState next;
  next.velocity = momentum * velocity - step_size * grads;
  next.params = params + next.velocity;
  return next;
}

namespace {

// The bell depends on its width only through |a|, so a step that carries a
// width below zero is mirrored back (with its velocity) onto a > 0. The
// network function and the subsequent trajectory are unchanged.
void reflect_widths(Eigen::VectorXd& params, Eigen::VectorXd& velocity, int n_mf) {
  const Eigen::Index mf_params = Eigen::Index(2) * n_mf * 3;
  for (Eigen::Index i = 0; i < mf_params; i += 3)
    if (params(i) < 0.0) {
      params(i) = -params(i);
      velocity(i) = -velocity(i);
    }
}

}  // namespace

TrainingReport train(const Network& net, const Dataset& train_set, const Dataset& cv_set,
                     const TrainingConfig& config) {
  config.validate();
  train_set.validate();
  cv_set.validate();
  net.validate();

  Network work = net;
  Eigen::VectorXd params = get_params(work);
  Eigen::VectorXd velocity = Eigen::VectorXd::Zero(params.size());

  TrainingReport report;
  report.records.reserve(static_cast<std::size_t>(config.max_epochs));
  report.min_cv_mse = std::numeric_limits<double>::infinity();
  int above_min = 0;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const Eigen::VectorXd grad = batch_gradient(work, train_set);
    auto next = momentum_step(params, grad, velocity, config.step_size, config.momentum);
    if (!next.params.allFinite()) throw TrainingDivergedError(epoch);
    params = std::move(next.params);
    velocity = std::move(next.velocity);
    reflect_widths(params, velocity, work.n_mf());
    set_params(work, params);

    double train_mse = 0.0;
    double cv_mse = 0.0;
    try {
      train_mse = compute_mse(work, train_set);
      cv_mse = compute_mse(work, cv_set);
    } catch (const ParameterDomainError&) {
      // a width or slope was driven to <= 0
      throw TrainingDivergedError(epoch);
    }
    if (!std::isfinite(train_mse) || !std::isfinite(cv_mse)) throw TrainingDivergedError(epoch);
    report.records.push_back({epoch, train_mse, cv_mse});

    if (cv_mse < report.min_cv_mse) {
      report.min_cv_mse = cv_mse;
      report.best_epoch = epoch;
      report.best_params = params;
      above_min = 0;
    } else if (cv_mse > report.min_cv_mse) {
      ++above_min;
    } else {
      above_min = 0;
    }
    if (config.cv_patience > 0 && above_min >= config.cv_patience) {
      report.stopped_early = true;
      break;
    }
  }

  report.final_params = params;
  report.final_train_mse = report.records.back().train_mse;
  return report;
}

std::array<InputRange, 2> input_ranges(const Dataset& data) {
  data.validate();
  std::array<InputRange, 2> r{InputRange{data.samples[0].x, data.samples[0].x},
                              InputRange{data.samples[0].y, data.samples[0].y}};
  for (const auto& s : data.samples) {
    r[0].lo = std::min(r[0].lo, s.x);
    r[0].hi = std::max(r[0].hi, s.x);
    r[1].lo = std::min(r[1].lo, s.y);
    r[1].hi = std::max(r[1].hi, s.y);
  }
  return r;
}

std::string training_report_csv(const TrainingReport& report) {
  std::ostringstream out;
  out << "epoch,train_mse,cv_mse\n";
  for (const auto& r : report.records)
    out << r.epoch << ',' << format_real(r.train_mse) << ',' << format_real(r.cv_mse) << '\n';
  return out.str();
}

}  // namespace canfis
