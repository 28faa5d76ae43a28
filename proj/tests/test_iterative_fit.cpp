#include <gtest/gtest.h>

#include <random>

#include "isoreg/cone_projection.hpp"
#include "isoreg/error.hpp"
#include "isoreg/iterative_fit.hpp"
#include "isoreg/variation.hpp"
#include "test_util.hpp"

using namespace isoreg;
using isoreg::testing::max_abs;
using isoreg::testing::max_abs_diff;
using isoreg::testing::mean;

namespace {

SortedSample running_example() { return SortedSample::on_unit_grid({1, 3, 2}); }

std::vector<double> sub(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace

TEST(IirStep, FirstAndSecondCycle) {
  const SortedSample s = running_example();
  const StepResult first = iir_step(s, std::vector<double>(3, 0.0));
  EXPECT_LE(max_abs_diff(first.u, std::vector<double>{1, 2.5, 2.5}), 1e-15);
  EXPECT_LE(max_abs_diff(first.b, std::vector<double>{0.25, 0.25, -0.5}), 1e-15);

  const StepResult second = iir_step(s, std::vector<double>{0.25, 0.25, -0.5});
  EXPECT_LE(max_abs_diff(second.u, std::vector<double>{0.75, 2.625, 2.625}), 1e-15);
  EXPECT_LE(max_abs_diff(second.b, std::vector<double>{0.3125, 0.3125, -0.625}), 1e-15);
  EXPECT_TRUE(singular_variations(second.u, second.b, 1e-12));
}

TEST(IirStep, MatchesOracleProjections) {
  const SortedSample s = running_example();
  const std::vector<double> b_prev{0.25, 0.25, -0.5};
  const StepResult step = iir_step(s, b_prev);
  const auto u_oracle =
      brute_force_projection(WeightedSequence(sub(s.y(), b_prev)), Direction::nondecreasing);
  const auto b_oracle =
      brute_force_projection(WeightedSequence(sub(s.y(), u_oracle)), Direction::nonincreasing);
  EXPECT_LE(max_abs_diff(step.u, u_oracle), 1e-12);
  EXPECT_LE(max_abs_diff(step.b, b_oracle), 1e-12);
}

TEST(IirStep, MonotoneInputIsFixedPoint) {
  const SortedSample s = SortedSample::on_unit_grid({-1, 0, 0, 4});
  const StepResult step = iir_step(s, std::vector<double>(4, 0.0));
  EXPECT_EQ(step.u, s.y());
  EXPECT_EQ(step.b, std::vector<double>(4, 0.0));
}

TEST(IibrStep, Examples) {
  const SortedSample s = running_example();
  const StepResult first = iibr_step(s, std::vector<double>(3, 0.0));
  EXPECT_LE(max_abs_diff(first.u, std::vector<double>{1, 2.5, 2.5}), 1e-15);
  EXPECT_LE(max_abs_diff(first.b, std::vector<double>{0.25, 0.25, -0.5}), 1e-15);

  const StepResult second = iibr_step(s, std::vector<double>{1.25, 2.75, 2});
  EXPECT_LE(max_abs_diff(second.u, std::vector<double>{-0.25, 0.125, 0.125}), 1e-15);
  EXPECT_LE(max_abs_diff(second.b, std::vector<double>{0.0625, 0.0625, -0.125}), 1e-15);
  // The increment equals u_hat(2) - u_hat(1) of the backfitting run.
  EXPECT_LE(max_abs_diff(second.u, sub(std::vector<double>{0.75, 2.625, 2.625},
                                       std::vector<double>{1, 2.5, 2.5})),
            1e-15);
  EXPECT_TRUE(singular_variations(second.u, second.b, 1e-12));

  const StepResult none = iibr_step(s, s.y());
  EXPECT_EQ(none.u, std::vector<double>(3, 0.0));
  EXPECT_EQ(none.b, std::vector<double>(3, 0.0));
}

TEST(Run, FixedTwoIterationsRunningExample) {
  for (Algorithm a : {Algorithm::iir, Algorithm::iibr}) {
    const FitTrace t = run(running_example(), a, {FixedIterations{2}});
    ASSERT_EQ(t.iterations(), 2u);
    EXPECT_EQ(t.stop_reason, StopReason::target_reached);
    EXPECT_LE(max_abs_diff(t.at(1).y_hat, std::vector<double>{1.25, 2.75, 2}), 1e-15);
    EXPECT_LE(max_abs_diff(t.at(2).y_hat, std::vector<double>{1.0625, 2.9375, 2.0}), 1e-15);
    EXPECT_DOUBLE_EQ(t.at(1).rss, 0.125);
    EXPECT_DOUBLE_EQ(t.at(2).rss, 0.0078125);
    EXPECT_EQ(t.at(1).level_sets, 3u);
  }
}

TEST(Run, MonotoneSampleStopsAtFirstIteration) {
  for (Algorithm a : {Algorithm::iir, Algorithm::iibr}) {
    const SortedSample s = SortedSample::on_unit_grid({0, 1, 1, 2, 5});
    const FitTrace t = run(s, a, {FixedIterations{10}});
    ASSERT_EQ(t.iterations(), 1u);
    EXPECT_EQ(t.stop_reason, StopReason::exact_fit);
    EXPECT_EQ(t.last().y_hat, s.y());
    EXPECT_EQ(t.last().rss, 0.0);
  }
}

TEST(Run, PolicyValidation) {
  const SortedSample s = running_example();
  try {
    run(s, Algorithm::iir, {ResidualTolerance{1e-6}, 0});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "no cap");
  }
  EXPECT_THROW(run(s, Algorithm::iir, {FixedIterations{0}}), InvalidArgument);
  EXPECT_THROW(run(s, Algorithm::iir, {FixedIterations{5}, 3}), InvalidArgument);
  EXPECT_THROW(run(s, Algorithm::iir, {CriterionStop{Criterion::aic, {}}}), InvalidArgument);
  EXPECT_THROW(run(s, Algorithm::iir, {CriterionStop{Criterion::aic, {0, 1}}}), InvalidArgument);
  EXPECT_THROW(run(s, Algorithm::iir, {CriterionStop{Criterion::aic, {1, 9}}, 5}), InvalidArgument);
}

TEST(Run, ToleranceAndCap) {
  const SortedSample s = running_example();
  const FitTrace t = run(s, Algorithm::iir, {ResidualTolerance{1e-6}, 1000});
  EXPECT_EQ(t.stop_reason, StopReason::tolerance_met);
  EXPECT_LE(max_abs_diff(t.last().y_hat, s.y()), 1e-6);
  EXPECT_GT(max_abs_diff(t.at(t.iterations() - 1).y_hat, s.y()), 1e-6);

  const FitTrace capped = run(s, Algorithm::iir, {ResidualTolerance{0.0}, 4});
  EXPECT_EQ(capped.iterations(), 4u);
  EXPECT_EQ(capped.stop_reason, StopReason::cap_reached);
}

TEST(Run, TraceRetentionBound) {
  const SortedSample s = SortedSample::on_unit_grid({0, 2, -1, 3, 0.5, 1, -2});
  const FitTrace t = run(s, Algorithm::iir, {FixedIterations{20}}, {5});
  ASSERT_EQ(t.iterations(), 20u);
  for (std::size_t k = 1; k < 20; ++k) EXPECT_FALSE(t.at(k).has_vectors()) << k;
  EXPECT_TRUE(t.last().has_vectors());

  const FitTrace full = run(s, Algorithm::iir, {FixedIterations{20}});
  EXPECT_EQ(full.last().y_hat, t.last().y_hat);
  for (std::size_t k = 1; k <= 20; ++k) EXPECT_EQ(full.at(k).rss, t.at(k).rss);
}

TEST(TranslatedCone, Examples) {
  const std::vector<double> y{1, 3, 2};
  EXPECT_LE(max_abs_diff(translated_cone_projection(y, std::vector<double>{1, 2.5, 2.5}),
                         std::vector<double>{0.75, 2.75, 2.5}),
            1e-15);
  const std::vector<double> inside{2, 5, 5};  // y + (1, 2, 3)
  EXPECT_LE(max_abs_diff(translated_cone_projection(y, std::vector<double>{2, 5, 5}), inside), 1e-15);
  const std::vector<double> x{4, -1, 2};
  EXPECT_EQ(translated_cone_projection(std::vector<double>(3, 0.0), x),
            project_isotone(WeightedSequence(x)).expand());
  EXPECT_THROW(translated_cone_projection(y, std::vector<double>{1}), InvalidInput);
}

TEST(IterationProperties, AlgorithmsCoincide) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = isoreg::testing::uniform_size(rng, 2, 50);
    const SortedSample s = SortedSample::on_unit_grid(isoreg::testing::uniform_vector(rng, n, -5, 5));
    const FitTrace a = run(s, Algorithm::iir, {FixedIterations{30}});
    const FitTrace b = run(s, Algorithm::iibr, {FixedIterations{30}});
    const std::size_t K = std::min(a.iterations(), b.iterations());
    for (std::size_t k = 1; k <= K; ++k) {
      ASSERT_LE(max_abs_diff(a.at(k).u_hat, b.at(k).u_hat), 1e-8);
      ASSERT_LE(max_abs_diff(a.at(k).b_hat, b.at(k).b_hat), 1e-8);
    }
  }
}

TEST(IterationProperties, PerIterationInvariants) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = isoreg::testing::uniform_size(rng, 2, 40);
    const auto y = isoreg::testing::uniform_vector(rng, n, -5, 5);
    const SortedSample s = SortedSample::on_unit_grid(y);
    for (Algorithm alg : {Algorithm::iir, Algorithm::iibr}) {
      const FitTrace t = run(s, alg, {FixedIterations{40}});
      const double scale = 1.0 + std::abs(mean(y));
      const double ymax = max_abs(y);
      double previous_residual = std::numeric_limits<double>::infinity();
      for (std::size_t k = 1; k <= t.iterations(); ++k) {
        const IterationState& st = t.at(k);
        ASSERT_TRUE(is_in_cone(st.u_hat, Direction::nondecreasing, 1e-10));
        ASSERT_TRUE(is_in_cone(st.b_hat, Direction::nonincreasing, 1e-10));
        ASSERT_NEAR(mean(st.u_hat), mean(y), 1e-10 * scale);
        ASSERT_NEAR(mean(st.b_hat), 0.0, 1e-10 * scale);
        ASSERT_TRUE(singular_variations(st.u_hat, st.b_hat, 1e-9 * (1.0 + ymax * ymax)));
        ASSERT_LE(max_abs_diff(sub(y, st.b_hat), translated_cone_projection(y, st.u_hat)), 1e-10);
        ASSERT_LE(st.rss, previous_residual);
        previous_residual = st.rss;
        if (k > 1) {
          ASSERT_TRUE(is_in_cone(sub(st.u_hat, t.at(k - 1).u_hat), Direction::nondecreasing, 1e-10));
          ASSERT_TRUE(is_in_cone(sub(st.b_hat, t.at(k - 1).b_hat), Direction::nonincreasing, 1e-10));
        }
      }
    }
  }
}

TEST(IterationProperties, ConvergesToJordanDecomposition) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = isoreg::testing::uniform_size(rng, 2, 15);
    const auto y = isoreg::testing::uniform_vector(rng, n, -5, 5);
    const SortedSample s = SortedSample::on_unit_grid(y);
    const FitTrace t = run(s, Algorithm::iir, {ResidualTolerance{1e-6}, 100'000}, {0});
    ASSERT_NE(t.stop_reason, StopReason::cap_reached);
    ASSERT_LE(max_abs_diff(t.last().y_hat, y), 1e-6);
    const auto jordan = jordan_decompose(y);
    EXPECT_LE(max_abs_diff(t.last().u_hat, jordan.u), 1e-4);
    EXPECT_LE(max_abs_diff(t.last().b_hat, jordan.b), 1e-4);
  }
}
