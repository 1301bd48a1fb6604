// Copyright 2026 The mlplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// A 784-H-1 perceptron: ReLU hidden layer, single sigmoid output.

#ifndef MLPLAB_MLP_HPP_
#define MLPLAB_MLP_HPP_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include "mlplab/errors.hpp"
#include "mlplab/types.hpp"

namespace mlplab {

template <typename Scalar>
struct Mlp {
  Matrix<Scalar> w1;     // H x 784
  Vector<Scalar> b1;     // H
  RowVector<Scalar> w2;  // 1 x H
  Scalar b2 = 0;

  Eigen::Index hidden_size() const { return w1.rows(); }
  Eigen::Index input_size() const { return w1.cols(); }

  bool all_finite() const {
    return w1.allFinite() && b1.allFinite() && w2.allFinite() && std::isfinite(b2);
  }

  void check_shape() const {
    require(b1.size() == w1.rows() && w2.size() == w1.rows(), ErrorCode::kShapeMismatch,
            "inconsistent hidden size");
  }

  static Mlp zeros(Eigen::Index hidden, Eigen::Index inputs = kImagePixels) {
    Mlp m;
    m.w1 = Matrix<Scalar>::Zero(hidden, inputs);
    m.b1 = Vector<Scalar>::Zero(hidden);
    m.w2 = RowVector<Scalar>::Zero(hidden);
    m.b2 = 0;
    return m;
  }

  template <typename Other>
  Mlp<Other> cast() const {
    Mlp<Other> m;
    m.w1 = w1.template cast<Other>();
    m.b1 = b1.template cast<Other>();
    m.w2 = w2.template cast<Other>();
    m.b2 = static_cast<Other>(b2);
    return m;
  }

  friend bool operator==(const Mlp& a, const Mlp& b) {
    return a.w1.rows() == b.w1.rows() && a.w1.cols() == b.w1.cols() && a.w1 == b.w1 &&
           a.b1 == b.b1 && a.w2 == b.w2 && a.b2 == b.b2;
  }
};

using MlpD = Mlp<double>;

/// He-normal weights (variance 2/fan_in), zero biases.
template <typename Scalar = double>
Mlp<Scalar> init_mlp(Eigen::Index hidden_size, std::uint64_t seed) {
  require(hidden_size >= 1, ErrorCode::kInvalidArgument, "hidden_size must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> first(0.0, std::sqrt(2.0 / kImagePixels));
  std::normal_distribution<double> second(0.0, std::sqrt(2.0 / static_cast<double>(hidden_size)));
  auto m = Mlp<Scalar>::zeros(hidden_size);
  // Fill row by row so the draw order does not depend on storage order.
  for (Eigen::Index r = 0; r < hidden_size; ++r) {
    for (Eigen::Index c = 0; c < kImagePixels; ++c) m.w1(r, c) = static_cast<Scalar>(first(rng));
  }
  for (Eigen::Index j = 0; j < hidden_size; ++j) m.w2(j) = static_cast<Scalar>(second(rng));
  return m;
}

/// Logistic function evaluated without overflow. The result is kept strictly
/// inside (0, 1) even where it would round to an endpoint.
template <std::floating_point Scalar>
Scalar sigmoid(Scalar z) {
  Scalar p;
  if (z >= 0) {
    p = Scalar(1) / (Scalar(1) + std::exp(-z));
  } else {
    const Scalar e = std::exp(z);
    p = e / (Scalar(1) + e);
  }
  constexpr Scalar lo = std::numeric_limits<Scalar>::min();
  constexpr Scalar hi = Scalar(1) - std::numeric_limits<Scalar>::epsilon() / 2;
  return std::clamp(p, lo, hi);
}

template <typename Derived>
auto sigmoid(const Eigen::ArrayBase<Derived>& z) {
  using Scalar = typename Derived::Scalar;
  return z.unaryExpr([](Scalar v) { return sigmoid(v); });
}

template <typename Scalar>
struct ForwardTrace {
  Vector<Scalar> z1;
  Vector<Scalar> a1;
  Scalar z2 = 0;
  Scalar p = 0;
};

template <typename Scalar, typename Derived>
ForwardTrace<Scalar> forward(const Mlp<Scalar>& model, const Eigen::MatrixBase<Derived>& x) {
  require(x.size() == model.input_size(), ErrorCode::kShapeMismatch,
          "input has " + std::to_string(x.size()) + " entries, model expects " +
              std::to_string(model.input_size()));
  ForwardTrace<Scalar> t;
  t.z1.noalias() = model.w1 * x.derived().reshaped();
  t.z1 += model.b1;
  t.a1 = t.z1.cwiseMax(Scalar(0));
  t.z2 = model.w2.dot(t.a1) + model.b2;
  t.p = sigmoid(t.z2);
  return t;
}

/// N x H post-ReLU activations for a row-per-sample matrix.
template <typename Scalar, typename Derived>
Matrix<Scalar> hidden_activations(const Mlp<Scalar>& model, const Eigen::MatrixBase<Derived>& x) {
  require(x.cols() == model.input_size(), ErrorCode::kShapeMismatch,
          "input has " + std::to_string(x.cols()) + " columns, model expects " +
              std::to_string(model.input_size()));
  Matrix<Scalar> z = x * model.w1.transpose();
  z.rowwise() += model.b1.transpose();
  return z.cwiseMax(Scalar(0));
}

/// Output probabilities for a row-per-sample matrix.
template <typename Scalar, typename Derived>
Vector<Scalar> predict(const Mlp<Scalar>& model, const Eigen::MatrixBase<Derived>& x) {
  const Matrix<Scalar> a1 = hidden_activations(model, x);
  Vector<Scalar> z2 = a1 * model.w2.transpose();
  z2.array() += model.b2;
  return sigmoid(z2.array()).matrix();
}

inline constexpr double kBceEpsilon = 1e-12;

template <std::floating_point Scalar>
Scalar bce_loss(Scalar p, Scalar y) {
  const Scalar q = std::clamp(p, Scalar(kBceEpsilon), Scalar(1 - kBceEpsilon));
  return -(y * std::log(q) + (Scalar(1) - y) * std::log(Scalar(1) - q));
}

template <typename Scalar>
Scalar mean_bce(const Vector<Scalar>& p, const Vector<Scalar>& y) {
  require(p.size() == y.size() && p.size() > 0, ErrorCode::kShapeMismatch, "bad loss inputs");
  Scalar total = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) total += bce_loss(p(i), y(i));
  return total / static_cast<Scalar>(p.size());
}

/// Parameter-shaped gradient, plus the batch loss it was taken at.
template <typename Scalar>
struct Gradients {
  Matrix<Scalar> w1;
  Vector<Scalar> b1;
  RowVector<Scalar> w2;
  Scalar b2 = 0;
  Scalar loss = 0;
};

/// Mean-over-batch BCE gradients. Uses the sigmoid+BCE residual p - y at the
/// output; the ReLU derivative is 0 at exactly 0.
template <typename Scalar, typename DerivedX, typename DerivedY>
Gradients<Scalar> backward(const Mlp<Scalar>& model, const Eigen::MatrixBase<DerivedX>& x,
                           const Eigen::MatrixBase<DerivedY>& y) {
  require(x.rows() > 0, ErrorCode::kInvalidArgument, "empty batch");
  require(x.cols() == model.input_size() && y.size() == x.rows(), ErrorCode::kShapeMismatch,
          "batch shape does not match model");
  const auto n = static_cast<Scalar>(x.rows());

  Matrix<Scalar> z1 = x * model.w1.transpose();  // N x H
  z1.rowwise() += model.b1.transpose();
  const Matrix<Scalar> a1 = z1.cwiseMax(Scalar(0));
  Vector<Scalar> z2 = a1 * model.w2.transpose();
  z2.array() += model.b2;
  const Vector<Scalar> p = sigmoid(z2.array()).matrix();
  const Vector<Scalar> yv = y.derived().template cast<Scalar>();

  Gradients<Scalar> g;
  g.loss = mean_bce(p, yv);
  const Vector<Scalar> delta2 = (p - yv) / n;
  g.w2.noalias() = delta2.transpose() * a1;
  g.b2 = delta2.sum();
  Matrix<Scalar> delta1 = delta2 * model.w2;  // N x H
  delta1.array() *= (z1.array() > Scalar(0)).template cast<Scalar>();
  g.w1.noalias() = delta1.transpose() * x;
  g.b1 = delta1.colwise().sum().transpose();
  return g;
}

/// theta <- theta - lr * grad
template <typename Scalar>
void sgd_step(Mlp<Scalar>& model, const Gradients<Scalar>& g, Scalar lr) {
  model.w1.noalias() -= lr * g.w1;
  model.b1.noalias() -= lr * g.b1;
  model.w2.noalias() -= lr * g.w2;
  model.b2 -= lr * g.b2;
}

}  // namespace mlplab

#endif  // MLPLAB_MLP_HPP_
