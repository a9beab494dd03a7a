#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "canfis/dataset.hpp"
#include "canfis/errors.hpp"
#include "canfis/fuzzy.hpp"
#include "canfis/metrics.hpp"
#include "canfis/network.hpp"

namespace canfis::baseline {

/// Which desired column of a Dataset a subnet learns.
enum class Channel { Sum, Carry };

inline double target(const Sample& s, Channel ch) { return ch == Channel::Sum ? s.s : s.c; }

/// Fully connected sigmoid MLP with two inputs and one output. Parameters are
/// stored layer by layer: weights (row-major, rows = units of the layer) then
/// biases.
struct MlpSubnet {
  std::vector<int> topology{2, 2, 1};
  Eigen::VectorXd params;

  static Eigen::Index param_count(const std::vector<int>& topology);
  void validate() const;
};

/// Evaluates the subnet in any scalar type; `params` must match `topology`.
template <typename Scalar>
Scalar mlp_output(const std::vector<int>& topology, const VectorX<Scalar>& params, Scalar x, Scalar y) {
  VectorX<Scalar> act(2);
  act << x, y;
  Eigen::Index offset = 0;
  for (std::size_t l = 1; l < topology.size(); ++l) {
    const int in = topology[l - 1];
    const int out = topology[l];
    Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> w(
        params.data() + offset, out, in);
    offset += Eigen::Index(out) * in;
    const auto bias = params.segment(offset, out);
    offset += out;
    act = (w * act + bias).unaryExpr([](Scalar z) { return sigmoid(z); });
  }
  return act(0);
}

inline double predict(const MlpSubnet& net, double x, double y) {
  return mlp_output<double>(net.topology, net.params, x, y);
}

/// Gradient of 0.5 * (desired - output)^2 with respect to the parameters.
Eigen::VectorXd mlp_backward(const MlpSubnet& net, double x, double y, double desired);

/// Central-difference oracle for mlp_backward, evaluated in long double.
Eigen::VectorXd mlp_finite_diff(const MlpSubnet& net, double x, double y, double desired, double step);

/// Uniform random weights in [-init_range, init_range].
MlpSubnet init_subnet(const std::vector<int>& topology, double init_range, std::uint64_t seed);

struct SubnetConfig {
  int max_epochs = 20000;
  double step_size = 2.0;
  double momentum = 0.9;
  double init_range = 0.5;
  /// Training stops once RMSE falls to this level; 0 trains for max_epochs.
  double target_rmse = 0.0009;
  std::uint64_t seed = 1;

  void validate() const;
};

struct SubnetTraining {
  MlpSubnet subnet;
  std::vector<double> rmse_history;  // one entry per epoch, after its update

  double final_rmse() const { return rmse_history.back(); }
};

/// RMSE of a subnet over one channel of a dataset.
double subnet_rmse(const MlpSubnet& net, const Dataset& data, Channel channel);

/// Full-batch backprop with heavy-ball momentum. Throws TrainingDivergedError.
SubnetTraining train_subnet(const Dataset& truth_table, Channel channel, const std::vector<int>& topology,
                            const SubnetConfig& config);

/// XOR drives the sum output, AND the carry output.
struct ComposedHalfAdder {
  MlpSubnet xor_subnet;
  MlpSubnet and_subnet;
};

struct ComposedEvaluation {
  double rmse = 0.0;  // over samples and both outputs
  std::vector<TestingRecord> records;
};

ComposedEvaluation compose_and_evaluate(const ComposedHalfAdder& composed, const Dataset& test_set);

/// RMSE the published modular network could not get below; reported, never asserted.
inline constexpr double kReportedComposedRmse = 0.35;

}  // namespace canfis::baseline
