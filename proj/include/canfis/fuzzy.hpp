#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "canfis/errors.hpp"

namespace canfis {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Generalized bell membership function
///   mu(x) = 1 / (1 + |(x - c) / a|^(2b))
/// with width a > 0, slope b > 0 and center c.
template <typename Scalar>
struct BellMF {
  Scalar a{1};
  Scalar b{1};
  Scalar c{0};

  bool valid() const {
    using std::isfinite;
    return isfinite(a) && isfinite(b) && isfinite(c) && a > Scalar(0) && b > Scalar(0);
  }

  template <typename Other>
  BellMF<Other> cast() const {
    return {static_cast<Other>(a), static_cast<Other>(b), static_cast<Other>(c)};
  }
};

/// Partial derivatives of a bell membership value.
template <typename Scalar>
struct BellGradient {
  Scalar da{0};
  Scalar db{0};
  Scalar dc{0};
  Scalar dx{0};
};

/// Below this distance from the center every partial is reported as 0.
inline constexpr double kBellCenterGuard = 1e-12;

namespace detail {

template <typename Scalar>
void check_bell_args(const BellMF<Scalar>& mf, Scalar x) {
  using std::isfinite;
  if (!mf.valid()) throw ParameterDomainError("bell MF requires finite a > 0, b > 0 and finite c");
  if (!isfinite(x)) throw ParameterDomainError("bell MF evaluated at a non-finite input");
}

}  // namespace detail

template <typename Scalar>
Scalar eval_bell(const BellMF<Scalar>& mf, Scalar x) {
  using std::abs;
  using std::pow;
  detail::check_bell_args(mf, x);
  const Scalar t = abs((x - mf.c) / mf.a);
  return Scalar(1) / (Scalar(1) + pow(t, Scalar(2) * mf.b));
}

/// Analytic partials of eval_bell. With u = |t|^(2b), t = (x - c)/a and
/// mu = 1/(1 + u), the identity mu^2 u = mu (1 - mu) gives
///   dmu/dx = -2b mu(1-mu)/(x-c),  dmu/da = 2b mu(1-mu)/a,
///   dmu/db = -2 mu(1-mu) ln|t|,   dmu/dc = -dmu/dx,
/// which stays finite when u overflows.
template <typename Scalar>
BellGradient<Scalar> grad_bell(const BellMF<Scalar>& mf, Scalar x) {
  using std::abs;
  using std::log;
  using std::pow;
  detail::check_bell_args(mf, x);
  const Scalar d = x - mf.c;
  if (abs(d) < Scalar(kBellCenterGuard)) return {};
  const Scalar t = abs(d / mf.a);
  const Scalar u = pow(t, Scalar(2) * mf.b);
  const Scalar mu = Scalar(1) / (Scalar(1) + u);
  if (mu == Scalar(0)) return {};
  // 1 - mu as u mu: no cancellation when mu is close to 1
  const Scalar s = mu * (u * mu);
  if (s == Scalar(0)) return {};
  const Scalar dx = -Scalar(2) * mf.b * s / d;
  return {
      Scalar(2) * mf.b * s / mf.a,
      -Scalar(2) * s * log(t),
      -dx,
      dx,
  };
}

/// Grid partition over two inputs: every input carries the same number of bell
/// MFs, ordered by strictly increasing center. Rule k = i * n_mf + j pairs MF i
/// of input 0 with MF j of input 1 (row-major).
template <typename Scalar>
struct FuzzyGrid {
  static constexpr int kInputs = 2;
  std::array<std::vector<BellMF<Scalar>>, kInputs> inputs;

  int n_mf() const { return static_cast<int>(inputs[0].size()); }
  int n_rules() const { return n_mf() * n_mf(); }

  /// Throws ConfigError / ParameterDomainError when the grid invariants fail.
  void validate() const {
    if (inputs[0].empty()) throw ConfigError("fuzzy grid needs at least one MF per input");
    if (inputs[0].size() != inputs[1].size())
      throw ConfigError("both inputs of the fuzzy grid must carry the same number of MFs");
    for (int in = 0; in < kInputs; ++in) {
      const auto& mfs = inputs[in];
      for (std::size_t m = 0; m < mfs.size(); ++m) {
        if (!mfs[m].valid())
          throw ParameterDomainError("invalid bell MF " + std::to_string(m) + " on input " +
                                     std::to_string(in));
        if (m > 0 && !(mfs[m].c > mfs[m - 1].c))
          throw ConfigError("MF centers must be strictly increasing on input " + std::to_string(in));
      }
    }
  }

  template <typename Other>
  FuzzyGrid<Other> cast() const {
    FuzzyGrid<Other> out;
    for (int in = 0; in < kInputs; ++in)
      for (const auto& mf : inputs[in]) out.inputs[in].push_back(mf.template cast<Other>());
    return out;
  }
};

template <typename Scalar>
struct FiringVector {
  VectorX<Scalar> raw;
  VectorX<Scalar> normalized;
  bool degenerate = false;
};

/// Firing sums below this are treated as degenerate.
inline constexpr double kDegenerateFiringSum = 1e-12;

/// Membership degrees, one row per input, one column per MF.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, Eigen::Dynamic> memberships(const FuzzyGrid<Scalar>& grid, Scalar x,
                                                     Scalar y) {
  const int n = grid.n_mf();
  Eigen::Matrix<Scalar, 2, Eigen::Dynamic> mu(2, n);
  for (int m = 0; m < n; ++m) {
    mu(0, m) = eval_bell(grid.inputs[0][m], x);
    mu(1, m) = eval_bell(grid.inputs[1][m], y);
  }
  return mu;
}

/// Product T-norm over the grid, from precomputed membership degrees.
template <typename Scalar>
VectorX<Scalar> fire_rules(const Eigen::Matrix<Scalar, 2, Eigen::Dynamic>& mu) {
  const Eigen::Index n = mu.cols();
  VectorX<Scalar> raw(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) raw(i * n + j) = mu(0, i) * mu(1, j);
  return raw;
}

template <typename Scalar>
FiringVector<Scalar> fire_rules(const FuzzyGrid<Scalar>& grid, Scalar x, Scalar y) {
  FiringVector<Scalar> f;
  f.raw = fire_rules<Scalar>(memberships(grid, x, y));
  return f;
}

template <typename Scalar>
FiringVector<Scalar> normalize_firings(const VectorX<Scalar>& raw) {
  if (raw.size() == 0) throw DimensionError("cannot normalize an empty firing vector");
  if ((raw.array() < Scalar(0)).any()) throw ParameterDomainError("firing strengths must be >= 0");
  FiringVector<Scalar> f;
  f.raw = raw;
  const Scalar total = raw.sum();
  if (total < Scalar(kDegenerateFiringSum)) {
    f.normalized = VectorX<Scalar>::Constant(raw.size(), Scalar(1) / Scalar(raw.size()));
    f.degenerate = true;
  } else {
    f.normalized = raw / total;
  }
  return f;
}

}  // namespace canfis
