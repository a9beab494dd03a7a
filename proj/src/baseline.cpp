#include "canfis/baseline.hpp"

#include "canfis/random.hpp"

namespace canfis::baseline {

namespace {
using RowMajorMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
}  // namespace

Eigen::Index MlpSubnet::param_count(const std::vector<int>& topology) {
  Eigen::Index n = 0;
  for (std::size_t l = 1; l < topology.size(); ++l) n += Eigen::Index(topology[l]) * (topology[l - 1] + 1);
  return n;
}

void MlpSubnet::validate() const {
  if (topology.size() < 2) throw ConfigError("MLP topology needs an input and an output layer");
  for (int units : topology)
    if (units < 1) throw ConfigError("every MLP layer needs at least one unit");
  if (topology.front() != 2 || topology.back() != 1)
    throw ConfigError("baseline subnets map 2 inputs to 1 output");
  if (params.size() != param_count(topology))
    throw DimensionError("MLP parameter vector does not match its topology");
}

Eigen::VectorXd mlp_backward(const MlpSubnet& net, double x, double y, double desired) {
  net.validate();
  const auto& topo = net.topology;
  const std::size_t layers = topo.size();

  std::vector<Eigen::VectorXd> acts(layers);
  std::vector<Eigen::Index> offsets(layers, 0);
  acts[0] = Eigen::Vector2d(x, y);
  Eigen::Index offset = 0;
  for (std::size_t l = 1; l < layers; ++l) {
    offsets[l] = offset;
    const RowMajorMap w(net.params.data() + offset, topo[l], topo[l - 1]);
    offset += Eigen::Index(topo[l]) * topo[l - 1];
    const Eigen::VectorXd z = w * acts[l - 1] + net.params.segment(offset, topo[l]);
    offset += topo[l];
    acts[l] = z.unaryExpr([](double v) { return sigmoid(v); });
  }

  Eigen::VectorXd grad(net.params.size());
  // dL/dz at the output layer
  Eigen::VectorXd delta = (acts.back().array() - desired) * acts.back().array() * (1.0 - acts.back().array());
  for (std::size_t l = layers - 1; l >= 1; --l) {
    const int in = topo[l - 1];
    const int out = topo[l];
    const Eigen::Index w_off = offsets[l];
    const Eigen::Index b_off = w_off + Eigen::Index(out) * in;
    for (int u = 0; u < out; ++u)
      for (int v = 0; v < in; ++v) grad(w_off + Eigen::Index(u) * in + v) = delta(u) * acts[l - 1](v);
    grad.segment(b_off, out) = delta;
    if (l == 1) break;
    const RowMajorMap w(net.params.data() + w_off, out, in);
    const Eigen::ArrayXd a = acts[l - 1].array();
    delta = ((w.transpose() * delta).array() * a * (1.0 - a)).matrix();
  }
  return grad;
}

Eigen::VectorXd mlp_finite_diff(const MlpSubnet& net, double x, double y, double desired, double step) {
  net.validate();
  if (!(step > 0.0)) throw ConfigError("finite-difference step must be > 0");
  using Ext = long double;
  VectorX<Ext> p = net.params.cast<Ext>();
  const auto loss = [&](const VectorX<Ext>& q) {
    const Ext e = Ext(desired) - mlp_output<Ext>(net.topology, q, Ext(x), Ext(y));
    return Ext(0.5) * e * e;
  };
  Eigen::VectorXd grad(p.size());
  const Ext h = step;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Ext orig = p(i);
    p(i) = orig + h;
    const Ext up = loss(p);
    p(i) = orig - h;
    const Ext down = loss(p);
    p(i) = orig;
    grad(i) = static_cast<double>((up - down) / (2 * h));
  }
  return grad;
}

MlpSubnet init_subnet(const std::vector<int>& topology, double init_range, std::uint64_t seed) {
  MlpSubnet net;
  net.topology = topology;
  net.params.resize(MlpSubnet::param_count(topology));
  Rng rng(seed);
  for (Eigen::Index i = 0; i < net.params.size(); ++i) net.params(i) = rng.uniform(-init_range, init_range);
  net.validate();
  return net;
}

void SubnetConfig::validate() const {
  if (max_epochs < 1) throw ConfigError("max_epochs must be >= 1");
  if (!(step_size > 0.0) || !std::isfinite(step_size)) throw ConfigError("step_size must be finite and > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw ConfigError("momentum must lie in [0, 1)");
  if (!(init_range > 0.0)) throw ConfigError("init_range must be > 0");
  if (!(target_rmse >= 0.0)) throw ConfigError("target_rmse must be >= 0");
}

double subnet_rmse(const MlpSubnet& net, const Dataset& data, Channel channel) {
  data.validate();
  double sum = 0.0;
  for (const auto& s : data.samples) {
    const double e = target(s, channel) - predict(net, s.x, s.y);
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(data.size()));
}

SubnetTraining train_subnet(const Dataset& truth_table, Channel channel, const std::vector<int>& topology,
                            const SubnetConfig& config) {
  config.validate();
  truth_table.validate();
  SubnetTraining result;
  result.subnet = init_subnet(topology, config.init_range, config.seed);
  auto& net = result.subnet;
  Eigen::VectorXd velocity = Eigen::VectorXd::Zero(net.params.size());
  const double n = static_cast<double>(truth_table.size());

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(net.params.size());
    for (const auto& s : truth_table.samples) grad += mlp_backward(net, s.x, s.y, target(s, channel));
    grad /= n;
    velocity = config.momentum * velocity - config.step_size * grad;
    net.params += velocity;
    const double rmse = subnet_rmse(net, truth_table, channel);
    if (!net.params.allFinite() || !std::isfinite(rmse)) throw TrainingDivergedError(epoch);
    result.rmse_history.push_back(rmse);
    if (rmse <= config.target_rmse) break;
  }
  return result;
}

ComposedEvaluation compose_and_evaluate(const ComposedHalfAdder& composed, const Dataset& test_set) {
  test_set.validate();
  ComposedEvaluation ev;
  double sum = 0.0;
  for (const auto& s : test_set.samples) {
    const double out_s = predict(composed.xor_subnet, s.x, s.y);
    const double out_c = predict(composed.and_subnet, s.x, s.y);
    ev.records.push_back({s.x, s.y, s.s, s.c, out_s, out_c});
    sum += (s.s - out_s) * (s.s - out_s) + (s.c - out_c) * (s.c - out_c);
  }
  ev.rmse = std::sqrt(sum / (2.0 * static_cast<double>(test_set.size())));
  return ev;
}

}  // namespace canfis::baseline
