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

#include "mlplab/mlp.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <random>

#include <gtest/gtest.h>

#include "mlplab/checkpoint.hpp"
#include "test_support.hpp"

namespace mlplab {
namespace {

using testing::error_code_of;

MlpD random_model(Eigen::Index hidden, Eigen::Index inputs, std::uint64_t seed, double scale = 0.5) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, scale);
  MlpD m = MlpD::zeros(hidden, inputs);
  for (Eigen::Index i = 0; i < m.w1.size(); ++i) m.w1.data()[i] = n(rng);
  for (Eigen::Index i = 0; i < hidden; ++i) {
    m.b1(i) = n(rng);
    m.w2(i) = n(rng);
  }
  m.b2 = n(rng);
  return m;
}

FeatureMatrix random_inputs(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FeatureMatrix x(rows, cols);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = u(rng);
  return x;
}

// Scalar reference forward pass, written out loop by loop.
double reference_probability(const MlpD& m, const Eigen::RowVectorXd& x) {
  double z2 = m.b2;
  for (Eigen::Index j = 0; j < m.hidden_size(); ++j) {
    double z = m.b1(j);
    for (Eigen::Index i = 0; i < x.size(); ++i) z += m.w1(j, i) * x(i);
    z2 += m.w2(j) * std::max(z, 0.0);
  }
  return 1.0 / (1.0 + std::exp(-z2));
}

double batch_loss(const MlpD& m, const FeatureMatrix& x, const Eigen::VectorXd& y) {
  return mean_bce(predict(m, x), y);
}

TEST(Init, DeterministicPerSeed) {
  EXPECT_TRUE(init_mlp(4, 1) == init_mlp(4, 1));
  EXPECT_FALSE(init_mlp(4, 1) == init_mlp(4, 2));
}

TEST(Init, HeVarianceAndZeroBiases) {
  const MlpD m = init_mlp(64, 3);
  const double mean = m.w1.mean();
  const double var = (m.w1.array() - mean).square().mean();
  EXPECT_NEAR(var, 2.0 / 784.0, 0.2 * 2.0 / 784.0);
  EXPECT_NEAR(mean, 0.0, 0.001);
  EXPECT_TRUE(m.b1.isZero(0.0));
  EXPECT_EQ(m.b2, 0.0);
  EXPECT_EQ(m.w1.rows(), 64);
  EXPECT_EQ(m.w1.cols(), 784);
}

TEST(Init, RejectsEmptyHiddenLayer) {
  EXPECT_EQ(error_code_of([] { init_mlp(0, 1); }), ErrorCode::kInvalidArgument);
}

TEST(Forward, ZeroModelGivesOneHalf) {
  const MlpD m = MlpD::zeros(5);
  const auto t = forward(m, random_inputs(1, 784, 1).row(0));
  EXPECT_EQ(t.p, 0.5);
}

TEST(Forward, HandWorkedSingleUnit) {
  MlpD m = MlpD::zeros(1);
  m.w1.setOnes();
  m.w2(0) = 1.0;
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(784, 1.0 / 784.0);
  const auto t = forward(m, x);
  EXPECT_NEAR(t.z1(0), 1.0, 1e-12);
  EXPECT_NEAR(t.p, 0.7310585786300049, 1e-12);
}

TEST(Forward, ReluZeroesNegativeUnits) {
  MlpD m = MlpD::zeros(3);
  m.b1 << -1.0, 2.0, 0.0;
  const auto t = forward(m, Eigen::VectorXd::Zero(784));
  EXPECT_EQ(t.a1(0), 0.0);
  EXPECT_EQ(t.a1(1), 2.0);
  EXPECT_EQ(t.a1(2), 0.0);
  EXPECT_EQ(t.a1, t.z1.cwiseMax(0.0));
}

TEST(Forward, MatchesReferenceAndBatchPaths) {
  const MlpD m = random_model(6, 784, 4, 0.05);
  const FeatureMatrix x = random_inputs(7, 784, 5);
  const Eigen::VectorXd p = predict(m, x);
  const auto a = hidden_activations(m, x);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const auto t = forward(m, x.row(r));
    EXPECT_NEAR(p(r), reference_probability(m, x.row(r)), 1e-12);
    EXPECT_NEAR(t.p, p(r), 1e-12);
    EXPECT_LT((a.row(r).transpose() - t.a1).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Forward, ShapeMismatch) {
  const MlpD m = MlpD::zeros(2);
  EXPECT_EQ(error_code_of([&] { forward(m, Eigen::VectorXd::Zero(783)); }), ErrorCode::kShapeMismatch);
  EXPECT_EQ(error_code_of([&] { predict(m, FeatureMatrix::Zero(2, 10)); }), ErrorCode::kShapeMismatch);
}

TEST(Forward, ProbabilitiesStayStrictlyInsideUnitInterval) {
  for (double z : {-1e4, -800.0, -40.0, 0.0, 40.0, 800.0, 1e4}) {
    const double p = sigmoid(z);
    EXPECT_GT(p, 0.0) << z;
    EXPECT_LT(p, 1.0) << z;
  }
  MlpD m = random_model(4, 784, 6, 10.0);
  const Eigen::VectorXd p = predict(m, random_inputs(50, 784, 7));
  EXPECT_TRUE((p.array() > 0.0 && p.array() < 1.0).all());
}

TEST(Loss, KnownValues) {
  EXPECT_NEAR(bce_loss(0.5, 1.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(bce_loss(0.7310585786300049, 0.0), 1.3132616875182228, 1e-12);
  EXPECT_LT(bce_loss(1.0 - 1e-15, 1.0), 1e-11);
  EXPECT_GE(bce_loss(1.0, 1.0), 0.0);
  // Clamped at 1e-12, so a hard miss costs about 27.6 nats instead of infinity.
  EXPECT_NEAR(bce_loss(0.0, 1.0), -std::log(1e-12), 1e-9);
}

TEST(Backward, ZeroResidualGivesZeroGradient) {
  const MlpD m = MlpD::zeros(3);
  const FeatureMatrix x = random_inputs(4, 784, 8);
  const auto g = backward(m, x, Eigen::VectorXd::Constant(4, 0.5));
  EXPECT_TRUE(g.w1.isZero(0.0));
  EXPECT_TRUE(g.b1.isZero(0.0));
  EXPECT_TRUE(g.w2.isZero(0.0));
  EXPECT_EQ(g.b2, 0.0);
}

TEST(Backward, HandWorkedOutputBias) {
  MlpD m = MlpD::zeros(1);
  m.w1.setOnes();
  m.w2(0) = 1.0;
  FeatureMatrix x = FeatureMatrix::Constant(1, 784, 1.0 / 784.0);
  const auto g = backward(m, x, Eigen::VectorXd::Ones(1));
  EXPECT_NEAR(g.b2, 0.7310585786300049 - 1.0, 1e-12);
  EXPECT_NEAR(g.w2(0), (0.7310585786300049 - 1.0) * 1.0, 1e-12);
}

// Relative error with a small floor so that near-zero components are judged
// on the absolute scale that central differences can resolve.
double rel_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-4});
}

TEST(Backward, MatchesCentralDifferences) {
  constexpr double kStep = 1e-6;
  int instance = 0;
  for (Eigen::Index hidden : {1, 2, 4}) {
    for (int rep = 0; rep < 7 && instance < 20; ++rep, ++instance) {
      const auto seed = static_cast<std::uint64_t>(instance * 31 + 7);
      MlpD m = random_model(hidden, 784, seed, 0.1);
      const FeatureMatrix x = random_inputs(5, 784, seed + 1);
      Eigen::VectorXd y(5);
      for (int i = 0; i < 5; ++i) y(i) = (seed >> i) & 1U;
      const auto g = backward(m, x, y);
      EXPECT_NEAR(g.loss, batch_loss(m, x, y), 1e-12);

      double worst = 0;
      auto probe = [&](double& param, double analytic) {
        const double saved = param;
        param = saved + kStep;
        const double up = batch_loss(m, x, y);
        param = saved - kStep;
        const double down = batch_loss(m, x, y);
        param = saved;
        worst = std::max(worst, rel_error(analytic, (up - down) / (2 * kStep)));
      };
      for (Eigen::Index i = 0; i < m.w1.size(); ++i) probe(m.w1.data()[i], g.w1.data()[i]);
      for (Eigen::Index j = 0; j < hidden; ++j) {
        probe(m.b1(j), g.b1(j));
        probe(m.w2(j), g.w2(j));
      }
      probe(m.b2, g.b2);
      EXPECT_LT(worst, 1e-5) << "H=" << hidden << " instance " << instance;
    }
  }
  EXPECT_EQ(instance, 20);
}

TEST(Backward, RejectsEmptyBatch) {
  const MlpD m = MlpD::zeros(2);
  EXPECT_EQ(error_code_of([&] { backward(m, FeatureMatrix(0, 784), Eigen::VectorXd(0)); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(error_code_of([&] { backward(m, FeatureMatrix::Zero(2, 784), Eigen::VectorXd::Zero(3)); }),
            ErrorCode::kShapeMismatch);
}

TEST(Sgd, StepIsThetaMinusLrGrad) {
  MlpD m = random_model(3, 784, 9);
  const MlpD before = m;
  const auto g = backward(m, random_inputs(4, 784, 10), Eigen::VectorXd::Ones(4));
  sgd_step(m, g, 0.1);
  EXPECT_LT((m.w1 - (before.w1 - 0.1 * g.w1)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_DOUBLE_EQ(m.b2, before.b2 - 0.1 * g.b2);
}

TEST(Cast, FloatModelTracksDouble) {
  const MlpD m = random_model(4, 784, 11, 0.05);
  const Mlp<float> f = m.cast<float>();
  const FeatureMatrix x = random_inputs(3, 784, 12);
  const Eigen::VectorXf pf = predict(f, x.cast<float>());
  const Eigen::VectorXd pd = predict(m, x);
  EXPECT_LT((pf.cast<double>() - pd).cwiseAbs().maxCoeff(), 1e-5);
}

template <typename T>
T read_le(const std::vector<std::uint8_t>& bytes, std::size_t at) {
  std::array<std::uint8_t, sizeof(T)> raw{};
  for (std::size_t i = 0; i < sizeof(T); ++i) raw[i] = bytes[at + i];
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
  T v;
  std::memcpy(&v, raw.data(), sizeof(T));
  return v;
}

TEST(Checkpoint, LayoutAndSize) {
  const MlpD m = random_model(24, 784, 13);
  const auto bytes = save_checkpoint(m);
  EXPECT_EQ(bytes.size(), 8u + 4u + 4u + 8u * (24u * 784u + 24u + 24u + 1u));
  EXPECT_EQ(bytes.size(), checkpoint_size(24));
  EXPECT_TRUE(std::equal(kCheckpointMagic.begin(), kCheckpointMagic.end(), bytes.begin()));
  EXPECT_EQ(read_le<std::uint32_t>(bytes, 8), kCheckpointVersion);
  EXPECT_EQ(read_le<std::uint32_t>(bytes, 12), 24u);
  EXPECT_EQ(read_le<double>(bytes, 16), m.w1(0, 0));
  EXPECT_EQ(read_le<double>(bytes, 16 + 8), m.w1(0, 1));
  EXPECT_EQ(read_le<double>(bytes, 16 + 8 * 784), m.w1(1, 0));
  EXPECT_EQ(read_le<double>(bytes, bytes.size() - 8), m.b2);
}

TEST(Checkpoint, RoundTripIsBitIdentical) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    MlpD m = random_model(static_cast<Eigen::Index>(seed + 1), 784, seed);
    m.w1(0, 0) = -0.0;
    m.b2 = std::nextafter(1.0, 2.0);
    const MlpD back = load_checkpoint(save_checkpoint(m));
    ASSERT_TRUE(back == m);
    EXPECT_TRUE(std::signbit(back.w1(0, 0)));
  }
}

TEST(Checkpoint, Errors) {
  const auto good = save_checkpoint(random_model(2, 784, 1));
  auto truncated = good;
  truncated.resize(good.size() - 1);
  EXPECT_EQ(error_code_of([&] { load_checkpoint(truncated); }), ErrorCode::kTruncated);
  auto short_header = good;
  short_header.resize(10);
  EXPECT_EQ(error_code_of([&] { load_checkpoint(short_header); }), ErrorCode::kTruncated);
  auto magic = good;
  magic[0] = 'X';
  EXPECT_EQ(error_code_of([&] { load_checkpoint(magic); }), ErrorCode::kBadMagic);
  auto version = good;
  version[8] = 99;
  EXPECT_EQ(error_code_of([&] { load_checkpoint(version); }), ErrorCode::kVersionUnsupported);
}

TEST(Checkpoint, FileRoundTrip) {
  const auto dir = testing::scratch_dir("ckpt");
  const MlpD m = random_model(3, 784, 2);
  save_checkpoint_file(m, dir / "a" / "m.mlp");
  EXPECT_TRUE(load_checkpoint_file(dir / "a" / "m.mlp") == m);
}

}  // namespace
}  // namespace mlplab
