#pragma once

#include <Eigen/Core>

#include "canfis/errors.hpp"
#include "canfis/fuzzy.hpp"
#include "canfis/network.hpp"

namespace canfis {

template <typename Scalar>
using Target = Eigen::Matrix<Scalar, 2, 1>;

/// Per-sample loss 0.5 * sum_o (desired_o - y_o)^2.
template <typename Scalar>
Scalar sample_loss(const Eigen::Matrix<Scalar, 2, 1>& outputs, const Target<Scalar>& desired) {
  return Scalar(0.5) * (desired - outputs).squaredNorm();
}

template <typename Scalar>
Scalar sample_loss(const CanfisNetwork<Scalar>& net, Scalar x, Scalar y, const Target<Scalar>& desired) {
  return sample_loss<Scalar>(predict(net, x, y), desired);
}

/// Gradient of sample_loss with respect to every parameter, laid out as in
/// get_params. Backpropagates through the sigmoid, the weighted TSK sum, the
/// firing normalization, the product T-norm and the bell partials.
template <typename Scalar>
VectorX<Scalar> backward(const CanfisNetwork<Scalar>& net, const ForwardTrace<Scalar>& trace,
                         const Target<Scalar>& desired) {
  const int n = net.n_mf();
  const int rules = net.n_rules();
  if (trace.memberships.cols() != n || trace.firing.normalized.size() != rules ||
      trace.rule_outputs.rows() != rules)
    throw DimensionError("forward trace does not match the network shape");

  VectorX<Scalar> grad(net.param_count());
  const auto& wn = trace.firing.normalized;

  // dL/dz_o through the sigmoid.
  Eigen::Matrix<Scalar, 2, 1> delta;
  for (int o = 0; o < 2; ++o) {
    const Scalar yo = trace.outputs(o);
    delta(o) = (yo - desired(o)) * yo * (Scalar(1) - yo);
  }

  // Consequents: dL/d(p,q,r) of (k, o) = delta_o * wn_k * (x, y, 1).
  const Eigen::Index base = net.mf_param_count();
  for (int k = 0; k < rules; ++k)
    for (int o = 0; o < 2; ++o) {
      const Scalar g = delta(o) * wn(k);
      const Eigen::Index i = base + Eigen::Index(k) * 6 + o * 3;
      grad(i) = g * trace.x;
      grad(i + 1) = g * trace.y;
      grad(i + 2) = g;
    }

  // dL/dwn_k, then through wn_k = w_k / W (zero when the sum was degenerate).
  const VectorX<Scalar> g_norm = trace.rule_outputs * delta;
  VectorX<Scalar> g_raw = VectorX<Scalar>::Zero(rules);
  if (!trace.firing.degenerate) {
    const Scalar total = trace.firing.raw.sum();
    g_raw = (g_norm.array() - g_norm.dot(wn)) / total;
  }

  // w_{ij} = mu_0i(x) * mu_1j(y).
  Eigen::Matrix<Scalar, 2, Eigen::Dynamic> g_mu = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>::Zero(2, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Scalar g = g_raw(i * n + j);
      g_mu(0, i) += g * trace.memberships(1, j);
      g_mu(1, j) += g * trace.memberships(0, i);
    }

  const Scalar inputs[2] = {trace.x, trace.y};
  Eigen::Index i = 0;
  for (int in = 0; in < 2; ++in)
    for (int m = 0; m < n; ++m) {
      const auto pd = grad_bell(net.grid.inputs[in][m], inputs[in]);
      grad(i++) = g_mu(in, m) * pd.da;
      grad(i++) = g_mu(in, m) * pd.db;
      grad(i++) = g_mu(in, m) * pd.dc;
    }
  return grad;
}

template <typename Scalar>
VectorX<Scalar> backward(const CanfisNetwork<Scalar>& net, Scalar x, Scalar y, const Target<Scalar>& desired) {
  return backward(net, forward(net, x, y), desired);
}

/// Central-difference gradient of sample_loss over the flat parameter vector.
/// `Oracle` is the scalar type the loss is evaluated in; an extended type
/// keeps cancellation error below the truncation error. Any type with Eigen
/// NumTraits and ADL-visible exp/pow/abs works (long double, multiprecision).
template <typename Oracle = long double, typename Scalar>
VectorX<Scalar> finite_diff_gradient(const CanfisNetwork<Scalar>& net, Scalar x, Scalar y,
                                     const Target<Scalar>& desired, Scalar step) {
  if (!(step > Scalar(0))) throw ConfigError("finite-difference step must be > 0");
  auto probe = net.template cast<Oracle>();
  const VectorX<Oracle> base = get_params(probe);
  const Target<Oracle> d = desired.template cast<Oracle>();
  const Oracle h = static_cast<Oracle>(step);
  const Oracle xo = static_cast<Oracle>(x);
  const Oracle yo = static_cast<Oracle>(y);

  VectorX<Scalar> grad(base.size());
  VectorX<Oracle> p = base;
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    p(i) = base(i) + h;
    set_params(probe, p);
    const Oracle up = sample_loss(probe, xo, yo, d);
    p(i) = base(i) - h;
    set_params(probe, p);
    const Oracle down = sample_loss(probe, xo, yo, d);
    p(i) = base(i);
    grad(i) = static_cast<Scalar>((up - down) / (Oracle(2) * h));
  }
  return grad;
}

}  // namespace canfis
