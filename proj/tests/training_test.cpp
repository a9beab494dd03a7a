#include <cmath>

#include <gtest/gtest.h>

#include "canfis/gradient.hpp"
#include "canfis/training.hpp"

using namespace canfis;

namespace {

Network init(int n_mf, std::uint64_t seed) {
  NetworkConfig c;
  c.n_mf = n_mf;
  c.seed = seed;
  return init_network(c, input_ranges(builtin_training()));
}

}  // namespace

TEST(ComputeMse, ZeroWhenOutputsMatch) {
  const auto net = make_network<double>(1);  // outputs 0.5 everywhere
  const Dataset d{"half", Role::Test, {{0, 0, 0.5, 0.5}, {1, 1, 0.5, 0.5}}};
  EXPECT_EQ(compute_mse(net, d), 0.0);
}

TEST(ComputeMse, SingleSampleAveragesOverOutputs) {
  const auto net = make_network<double>(1);
  const Dataset d{"one", Role::Test, {{0.3, 0.3, 0, 1}}};
  EXPECT_DOUBLE_EQ(compute_mse(net, d), 0.25);
}

TEST(ComputeMse, UntrainedNetworkOnTruthTable) {
  // every output is 0.5 and every target is 0 or 1: 8 squared errors of 0.25
  EXPECT_DOUBLE_EQ(compute_mse(make_network<double>(1), builtin_training()), 0.25);
}

TEST(ComputeMse, EmptyDatasetIsDataError) {
  EXPECT_THROW(compute_mse(make_network<double>(1), Dataset{}), DataError);
}

TEST(MomentumStep, Examples) {
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(3, 2.0);
  const auto zero = momentum_step(p, Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3), 1.0, 0.6);
  EXPECT_EQ(zero.params, p);

  const Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
  const auto s1 = momentum_step(Eigen::VectorXd::Zero(1), one, Eigen::VectorXd::Zero(1), 1.0, 0.6);
  EXPECT_DOUBLE_EQ(s1.velocity(0), -1.0);
  EXPECT_DOUBLE_EQ(s1.params(0), -1.0);
  const auto s2 = momentum_step(s1.params, one, s1.velocity, 1.0, 0.6);
  EXPECT_DOUBLE_EQ(s2.velocity(0), -1.6);
  EXPECT_DOUBLE_EQ(s2.params(0), -2.6);
}

TEST(MomentumStep, LengthMismatch) {
  EXPECT_THROW(momentum_step(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(2), 1, 0.6),
               DimensionError);
}

TEST(BatchGradient, IsMeanOfSampleGradients) {
  const auto net = init(2, 3);
  const auto data = builtin_training();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(net.param_count());
  for (const auto& s : data.samples) sum += backward(net, s.x, s.y, Target<double>(s.desired()));
  double loss = 0.0;
  const auto g = batch_gradient(net, data, &loss);
  EXPECT_TRUE(g.isApprox(sum / 4.0, 1e-14));
  EXPECT_NEAR(loss / 4.0, compute_mse(net, data), 1e-15);
}

TEST(Train, OneEpochGivesOneRecord) {
  TrainingConfig cfg;
  cfg.max_epochs = 1;
  const auto r = train(init(2, 1), builtin_training(), builtin_cv(), cfg);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].epoch, 1);
  EXPECT_EQ(r.best_epoch, 1);
}

TEST(Train, RejectsInvalidConfig) {
  const auto net = init(2, 1);
  TrainingConfig cfg;
  cfg.max_epochs = 0;
  EXPECT_THROW(train(net, builtin_training(), builtin_cv(), cfg), ConfigError);
  cfg = {};
  cfg.momentum = 1.0;
  EXPECT_THROW(train(net, builtin_training(), builtin_cv(), cfg), ConfigError);
  cfg = {};
  cfg.step_size = 0.0;
  EXPECT_THROW(train(net, builtin_training(), builtin_cv(), cfg), ConfigError);
  EXPECT_THROW(train(net, Dataset{}, builtin_cv(), TrainingConfig{}), DataError);
}

TEST(Train, DivergenceIsTypedWithEpoch) {
  TrainingConfig cfg;
  cfg.step_size = 1e308;
  try {
    train(init(2, 1), builtin_training(), builtin_cv(), cfg);
    FAIL() << "expected divergence";
  } catch (const TrainingDivergedError& e) {
    EXPECT_GE(e.epoch(), 1);
    EXPECT_LE(e.epoch(), 3);
  }
}

TEST(Train, ReportInvariants) {
  TrainingConfig cfg;
  cfg.max_epochs = 300;
  const auto cv = builtin_cv();
  const auto r = train(init(3, 7), builtin_training(), cv, cfg);
  double running = std::numeric_limits<double>::infinity();
  double min_cv = running;
  for (const auto& rec : r.records) {
    EXPECT_GE(rec.train_mse, 0.0);
    EXPECT_GE(rec.cv_mse, 0.0);
    const double next = std::min(running, rec.cv_mse);
    EXPECT_LE(next, running);
    running = next;
    min_cv = std::min(min_cv, rec.cv_mse);
  }
  EXPECT_EQ(r.min_cv_mse, min_cv);
  EXPECT_EQ(r.records[static_cast<std::size_t>(r.best_epoch - 1)].cv_mse, r.min_cv_mse);
  // re-evaluating the snapshot reproduces the minimum exactly
  EXPECT_EQ(compute_mse(with_params(init(3, 7), r.best_params), cv), r.min_cv_mse);
  EXPECT_EQ(r.final_train_mse, r.records.back().train_mse);
}

TEST(Train, EarlyStopAfterPatience) {
  // Cross validation with inverted targets: its error rises as training fits.
  auto cv = builtin_training();
  for (auto& s : cv.samples) {
    s.s = 1 - s.s;
    s.c = 1 - s.c;
  }
  TrainingConfig cfg;
  cfg.cv_patience = 20;
  const auto r = train(init(2, 2), builtin_training(), cv, cfg);
  ASSERT_TRUE(r.stopped_early);
  ASSERT_GE(r.records.size(), 20u);
  EXPECT_LT(r.records.size(), 1000u);
  for (std::size_t i = r.records.size() - 20; i < r.records.size(); ++i) EXPECT_GT(r.records[i].cv_mse, r.min_cv_mse);

  cfg.cv_patience = 0;
  cfg.max_epochs = 200;
  const auto full = train(init(2, 2), builtin_training(), cv, cfg);
  EXPECT_FALSE(full.stopped_early);
  EXPECT_EQ(full.records.size(), 200u);
}

TEST(Train, Deterministic) {
  TrainingConfig cfg;
  cfg.max_epochs = 200;
  const auto a = train(init(2, 5), builtin_training(), builtin_cv(), cfg);
  const auto b = train(init(2, 5), builtin_training(), builtin_cv(), cfg);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].train_mse, b.records[i].train_mse);
    EXPECT_EQ(a.records[i].cv_mse, b.records[i].cv_mse);
  }
  EXPECT_EQ(a.best_params, b.best_params);
  EXPECT_EQ(a.final_params, b.final_params);
}

TEST(Train, LearnsTruthTableForEverySeed) {
  const auto tr = builtin_training();
  const auto cv = builtin_cv();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = train(init(2, seed), tr, cv, TrainingConfig{});
    ASSERT_EQ(r.records.size(), 1000u) << "seed " << seed;
    EXPECT_LT(r.records.back().train_mse, r.records.front().train_mse) << "seed " << seed;
  }
}

TEST(Train, WidthsStayPositive) {
  // n_mf = 5 drives interior widths through zero; the reflected widths keep
  // every network valid and the run finite.
  const auto r = train(init(5, 1), builtin_training(), builtin_cv(), TrainingConfig{});
  auto net = with_params(init(5, 1), r.final_params);
  for (const auto& mfs : net.grid.inputs)
    for (const auto& mf : mfs) EXPECT_GT(mf.a, 0.0);
  EXPECT_TRUE(std::isfinite(r.final_train_mse));
}

TEST(InputRanges, PerInputMinMax) {
  const auto r = input_ranges(builtin_cv());
  EXPECT_DOUBLE_EQ(r[0].lo, 0.05);
  EXPECT_DOUBLE_EQ(r[0].hi, 1.04);
  EXPECT_DOUBLE_EQ(r[1].lo, 0.03);
  EXPECT_DOUBLE_EQ(r[1].hi, 1.06);
}

TEST(TrainingReportCsv, HeaderAndRows) {
  TrainingReport r;
  r.records = {{1, 0.25, 0.5}, {2, 0.125, 0.0625}};
  EXPECT_EQ(training_report_csv(r), "epoch,train_mse,cv_mse\n1,0.25,0.5\n2,0.125,0.0625\n");
}
