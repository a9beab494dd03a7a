#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

#include <Eigen/Core>

#include "canfis/errors.hpp"
#include "canfis/fuzzy.hpp"
#include "canfis/random.hpp"

namespace canfis {

/// Architecture knobs. Input/output counts, MF shape, fuzzy model and output
/// transfer are fixed; only n_mf and the initialization vary.
struct NetworkConfig {
  static constexpr int kInputs = 2;
  static constexpr int kOutputs = 2;
  static constexpr std::string_view kMfShape = "bell";
  static constexpr std::string_view kFuzzyModel = "TSK first-order";
  static constexpr std::string_view kOutputTransfer = "sigmoid";

  int n_mf = 2;
  std::uint64_t seed = 1;
  /// Relative amplitude of the uniform jitter applied to every MF parameter.
  double mf_jitter = 0.05;
  /// Consequent coefficients are drawn uniform in [-consequent_range, consequent_range].
  double consequent_range = 0.1;

  void validate() const {
    if (n_mf < 1) throw ConfigError("n_mf must be >= 1");
    if (!(mf_jitter >= 0.0 && mf_jitter < 1.0)) throw ConfigError("mf_jitter must lie in [0, 1)");
    if (!(consequent_range >= 0.0) || !std::isfinite(consequent_range))
      throw ConfigError("consequent_range must be finite and >= 0");
  }
};

struct InputRange {
  double lo = 0.0;
  double hi = 1.0;
};

/// First-order TSK consequent: f = p * x + q * y + r_bias.
template <typename Scalar>
struct TskConsequent {
  Scalar p{0};
  Scalar q{0};
  Scalar r_bias{0};
};

/// CANFIS network: one grid of antecedents shared by both outputs, and one
/// TSK consequent per (rule, output). Row k of `consequents` holds
/// [p_0, q_0, r_0, p_1, q_1, r_1] for rule k, so its row-major storage is the
/// consequent half of the flat parameter vector.
template <typename Scalar>
struct CanfisNetwork {
  static constexpr int kOutputs = NetworkConfig::kOutputs;
  static constexpr int kConsequentParams = 3;
  using ConsequentTable = Eigen::Matrix<Scalar, Eigen::Dynamic, kOutputs * kConsequentParams, Eigen::RowMajor>;

  FuzzyGrid<Scalar> grid;
  ConsequentTable consequents;

  int n_mf() const { return grid.n_mf(); }
  int n_rules() const { return grid.n_rules(); }
  Eigen::Index mf_param_count() const { return Eigen::Index(FuzzyGrid<Scalar>::kInputs) * n_mf() * 3; }
  Eigen::Index param_count() const {
    return mf_param_count() + Eigen::Index(n_rules()) * kOutputs * kConsequentParams;
  }

  TskConsequent<Scalar> consequent(int rule, int output) const {
    const int o = output * kConsequentParams;
    return {consequents(rule, o), consequents(rule, o + 1), consequents(rule, o + 2)};
  }

  void set_consequent(int rule, int output, const TskConsequent<Scalar>& t) {
    const int o = output * kConsequentParams;
    consequents(rule, o) = t.p;
    consequents(rule, o + 1) = t.q;
    consequents(rule, o + 2) = t.r_bias;
  }

  void validate() const {
    grid.validate();
    if (consequents.rows() != n_rules())
      throw DimensionError("consequent table must have one row per rule");
    if (!consequents.allFinite()) throw ParameterDomainError("consequent parameters must be finite");
  }

  template <typename Other>
  CanfisNetwork<Other> cast() const {
    return {grid.template cast<Other>(), consequents.template cast<Other>()};
  }
};

/// Zero-initialized network with the given MF count (MF params left at a=1,b=1
/// and centers 0..n_mf-1 so the grid is valid).
template <typename Scalar = double>
CanfisNetwork<Scalar> make_network(int n_mf) {
  if (n_mf < 1) throw ConfigError("n_mf must be >= 1");
  CanfisNetwork<Scalar> net;
  for (auto& mfs : net.grid.inputs) {
    mfs.resize(n_mf);
    for (int m = 0; m < n_mf; ++m) mfs[m] = {Scalar(1), Scalar(1), Scalar(m)};
  }
  net.consequents = CanfisNetwork<Scalar>::ConsequentTable::Zero(n_mf * n_mf, CanfisNetwork<Scalar>::kOutputs * 3);
  return net;
}

/// Grid initialization: centers equally spaced over [lo, hi] (midpoint when
/// n_mf = 1), width (hi - lo) / max(1, 2 (n_mf - 1)) ((hi - lo) / 2 when
/// n_mf = 1), slope 2; every MF parameter then scaled by 1 + U(-jitter, jitter)
/// and consequents drawn from U(-range, range). Draw order: input 0 MFs, input 1
/// MFs (a, b, c each), then consequents in flat-parameter order.
inline CanfisNetwork<double> init_network(const NetworkConfig& config,
                                          const std::array<InputRange, 2>& ranges, Rng& rng) {
  config.validate();
  auto net = make_network<double>(config.n_mf);
  const int n = config.n_mf;
  for (int in = 0; in < 2; ++in) {
    const auto [lo, hi] = ranges[in];
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo))
      throw ConfigError("input range must satisfy lo < hi on input " + std::to_string(in));
    const double span = hi - lo;
    const double width = n == 1 ? span / 2.0 : span / std::max(1.0, 2.0 * (n - 1));
    auto& mfs = net.grid.inputs[in];
    for (int m = 0; m < n; ++m) {
      const double center = n == 1 ? lo + span / 2.0 : lo + span * m / (n - 1);
      mfs[m] = {width, 2.0, center};
    }
    if (config.mf_jitter > 0.0) {
      const double j = config.mf_jitter;
      for (auto& mf : mfs) {
        mf.a *= 1.0 + rng.uniform(-j, j);
        mf.b *= 1.0 + rng.uniform(-j, j);
        mf.c *= 1.0 + rng.uniform(-j, j);
      }
      std::sort(mfs.begin(), mfs.end(), [](const auto& l, const auto& r) { return l.c < r.c; });
    }
  }
  const double range = config.consequent_range;
  for (Eigen::Index k = 0; k < net.consequents.rows(); ++k)
    for (Eigen::Index col = 0; col < net.consequents.cols(); ++col)
      net.consequents(k, col) = range > 0.0 ? rng.uniform(-range, range) : 0.0;
  net.validate();
  return net;
}

inline CanfisNetwork<double> init_network(const NetworkConfig& config,
                                          const std::array<InputRange, 2>& ranges) {
  Rng rng(config.seed);
  return init_network(config, ranges, rng);
}

/// Every intermediate of one forward pass, kept for backpropagation.
template <typename Scalar>
struct ForwardTrace {
  Scalar x{0};
  Scalar y{0};
  Eigen::Matrix<Scalar, 2, Eigen::Dynamic> memberships;
  FiringVector<Scalar> firing;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> rule_outputs;
  Eigen::Matrix<Scalar, 2, 1> aggregates;
  Eigen::Matrix<Scalar, 2, 1> outputs;
};

template <typename Scalar>
Scalar sigmoid(Scalar z) {
  using std::exp;
  return Scalar(1) / (Scalar(1) + exp(-z));
}

template <typename Scalar>
ForwardTrace<Scalar> forward(const CanfisNetwork<Scalar>& net, Scalar x, Scalar y) {
  ForwardTrace<Scalar> t;
  t.x = x;
  t.y = y;
  t.memberships = memberships(net.grid, x, y);
  t.firing = normalize_firings<Scalar>(fire_rules<Scalar>(t.memberships));
  const int rules = net.n_rules();
  t.rule_outputs.resize(rules, 2);
  for (int k = 0; k < rules; ++k)
    for (int o = 0; o < 2; ++o) {
      const auto c = net.consequent(k, o);
      t.rule_outputs(k, o) = c.p * x + c.q * y + c.r_bias;
    }
  t.aggregates = t.rule_outputs.transpose() * t.firing.normalized;
  for (int o = 0; o < 2; ++o) t.outputs(o) = sigmoid(t.aggregates(o));
  return t;
}

/// Network outputs only.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> predict(const CanfisNetwork<Scalar>& net, Scalar x, Scalar y) {
  return forward(net, x, y).outputs;
}

/// Flat parameter view. Layout: MF parameters input-major, then MF-major, then
/// (a, b, c); followed by consequents rule-major, then output-major, then
/// (p, q, r_bias).
template <typename Scalar>
VectorX<Scalar> get_params(const CanfisNetwork<Scalar>& net) {
  VectorX<Scalar> v(net.param_count());
  Eigen::Index i = 0;
  for (const auto& mfs : net.grid.inputs)
    for (const auto& mf : mfs) {
      v(i++) = mf.a;
      v(i++) = mf.b;
      v(i++) = mf.c;
    }
  v.tail(net.consequents.size()) =
      Eigen::Map<const VectorX<Scalar>>(net.consequents.data(), net.consequents.size());
  return v;
}

/// Overwrites every parameter of `net` from a flat vector laid out as in
/// get_params. The result is not re-validated; see CanfisNetwork::validate.
template <typename Scalar, typename Derived>
void set_params(CanfisNetwork<Scalar>& net, const Eigen::MatrixBase<Derived>& v) {
  if (v.size() != net.param_count())
    throw DimensionError("parameter vector has length " + std::to_string(v.size()) +
                         ", network expects " + std::to_string(net.param_count()));
  Eigen::Index i = 0;
  for (auto& mfs : net.grid.inputs)
    for (auto& mf : mfs) {
      mf.a = v(i++);
      mf.b = v(i++);
      mf.c = v(i++);
    }
  Eigen::Map<VectorX<Scalar>>(net.consequents.data(), net.consequents.size()) =
      v.tail(net.consequents.size());
}

template <typename Scalar, typename Derived>
CanfisNetwork<Scalar> with_params(CanfisNetwork<Scalar> net, const Eigen::MatrixBase<Derived>& v) {
  set_params(net, v);
  return net;
}

}  // namespace canfis
