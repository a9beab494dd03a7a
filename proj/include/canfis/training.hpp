#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "canfis/dataset.hpp"
#include "canfis/network.hpp"

namespace canfis {

using Network = CanfisNetwork<double>;

struct TrainingConfig {
  int max_epochs = 1000;
  double step_size = 1.0;
  double momentum = 0.6;
  /// Consecutive epochs with CV MSE above its running minimum before stopping.
  /// 0 disables early stopping.
  int cv_patience = 50;
  std::uint64_t seed = 1;

  void validate() const;
};

struct EpochRecord {
  int epoch = 0;  // 1-based
  double train_mse = 0.0;
  double cv_mse = 0.0;
};

struct TrainingReport {
  std::vector<EpochRecord> records;
  int best_epoch = 0;
  double min_cv_mse = 0.0;
  double final_train_mse = 0.0;
  Eigen::VectorXd final_params;
  Eigen::VectorXd best_params;
  bool stopped_early = false;

  /// First epoch whose training MSE is <= threshold, or 0 when never reached.
  int first_epoch_train_below(double threshold) const;
  double min_train_mse() const;
};

/// MSE averaged over samples and both outputs.
double compute_mse(const Network& net, const Dataset& data);

/// Sum over the dataset of the per-sample loss gradient (see backward).
/// Also returns the summed per-sample loss through `loss` when non-null.
Eigen::VectorXd batch_gradient(const Network& net, const Dataset& data, double* loss = nullptr);

struct MomentumState {
  Eigen::VectorXd params;
  Eigen::VectorXd velocity;
};

/// Heavy-ball step: velocity <- momentum * velocity - step_size * grads;
/// params <- params + velocity.
MomentumState momentum_step(const Eigen::VectorXd& params, const Eigen::VectorXd& grads,
                            const Eigen::VectorXd& velocity, double step_size, double momentum);

/// Full-batch training with cross-validation monitoring. `net` supplies the
/// initial parameters and is left unchanged.
TrainingReport train(const Network& net, const Dataset& train_set, const Dataset& cv_set,
                     const TrainingConfig& config);

/// Per-input [min, max] of a dataset's inputs; used to place the MF grid.
std::array<InputRange, 2> input_ranges(const Dataset& data);

/// CSV with header `epoch,train_mse,cv_mse`, one row per epoch.
std::string training_report_csv(const TrainingReport& report);

}  // namespace canfis
