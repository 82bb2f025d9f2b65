#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "l0l1fw/datagen.hpp"
#include "l0l1fw/diagnostics.hpp"
#include "l0l1fw/solvers.hpp"
#include "support/oracles.hpp"
#include "support/problems.hpp"

using namespace l0l1fw;

namespace {

constexpr double kE = std::numbers::e;

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

SolverConfig budget(std::size_t max_iter, double gap_tol = 0.0) {
  SolverConfig c;
  c.max_iter = max_iter;
  c.gap_tol = gap_tol;
  return c;
}

Problem logistic_problem(std::uint64_t seed, std::size_t n, std::size_t d,
                         std::shared_ptr<const FeasibleSet> set) {
  DataGenConfig cfg;
  cfg.n_samples = n;
  cfg.n_features = d;
  cfg.seed = seed;
  const Dataset data = generate_logistic_dataset(cfg);
  Problem p;
  p.objective = std::make_shared<LogisticRegression>(data.matrix_a, data.labels);
  p.set = std::move(set);
  p.x0 = p.set->center();
  p.name = "logistic";
  return p;
}

// f_{k+1} - f_k <= -(alpha_k / 2) gap_k, relative slack 1e-12.
std::size_t descent_violations(const Trace& t) {
  std::size_t bad = 0;
  for (std::size_t k = 0; k + 1 < t.records.size(); ++k) {
    const auto& r = t.records[k];
    const double lhs = t.records[k + 1].f_value - r.f_value;
    if (lhs > -0.5 * r.alpha * r.fw_gap + slack_for(r.f_value)) ++bad;
  }
  return bad;
}

}  // namespace

// ---------------------------------------------------------------------------
// step rule and acceptance test

TEST(StepSize, UnitExample) {
  EXPECT_DOUBLE_EQ(step_size_l0l1(vec({-1, 0}), vec({1, 0}), 1.0, 0.0), 1.0 / kE);
}

TEST(StepSize, ClassicReductionWhenL1IsZero) {
  const Vector g = vec({-0.3, 0.2});
  const Vector d = vec({2.0, -1.0});
  const double l = 0.7;
  const double classic = std::min(1.0, -g.dot(d) / (l * d.squaredNorm()));
  EXPECT_DOUBLE_EQ(step_size_l0l1(g, d, l, 0.0), std::min(1.0, classic / kE));
}

TEST(StepSize, ClampedToOneAndErrors) {
  EXPECT_EQ(step_size_l0l1(vec({-100, 0}), vec({1, 0}), 1.0, 0.0), 1.0);
  EXPECT_THROW(step_size_l0l1(vec({-1, 0}), vec({0, 0}), 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(step_size_l0l1(vec({0, 0}), vec({1, 0}), 0.0, 3.0), std::invalid_argument);
}

TEST(StepSize, MatchesGridSearchOnSurrogate) {
  oracle::Sampler rng(31);
  for (int t = 0; t < 50; ++t) {
    const Vector g = rng.normal_vector(3);
    Vector d = rng.normal_vector(3);
    if (g.dot(d) > 0.0) d = -d;
    const double l0 = rng.uniform(0.0, 2.0);
    const double l1 = rng.uniform(0.01, 2.0);
    const double a = l0 + l1 * g.norm();
    const double alpha = step_size_l0l1(g, d, l0, l1);
    const double grid = oracle::grid_minimizer(g.dot(d), a * kE * d.squaredNorm());
    EXPECT_NEAR(alpha, grid, 1e-6) << t;
    // alpha ||d|| <= 1 / l1
    EXPECT_LE(alpha * d.norm(), 1.0 / l1 + 1e-12);
  }
}

TEST(SurrogateCheck, ZeroStepComparesValues) {
  const Vector g = vec({1, 2});
  const Vector d = vec({-1, 0});
  EXPECT_TRUE(surrogate_check(1.0, 1.0, g, d, 0.0, 5.0));
  EXPECT_TRUE(surrogate_check(1.0, 0.5, g, d, 0.0, 5.0));
  EXPECT_FALSE(surrogate_check(1.0, 1.0 + 1e-9, g, d, 0.0, 5.0));
  EXPECT_TRUE(surrogate_check(1.0, 1.0 + 1e-13, g, d, 0.0, 5.0));
}

TEST(SurrogateCheck, QuadraticDominatedWhenConstantExceedsL) {
  oracle::Sampler rng(32);
  const auto f = quadratic(rng.spd(4, 0.5, 6.0), rng.normal_vector(4));
  const double l = *f->smoothness().classic_l;
  for (int t = 0; t < 100; ++t) {
    const Vector x = rng.normal_vector(4);
    const Vector d = rng.normal_vector(4);
    const double alpha = rng.uniform();
    const double a_k = l * rng.uniform(1.0, 3.0);
    EXPECT_TRUE(surrogate_check(f->value(x), f->value(x + alpha * d), f->gradient(x), d,
                                alpha, a_k));
  }
}

TEST(SurrogateCheck, RejectsTinyConstantOnSteepLogistic) {
  const auto p = logistic_problem(5, 100, 8, std::make_shared<L2Ball>(Vector::Zero(8), 25.0));
  const Vector x = p.x0;
  const Vector g = p.objective->gradient(x);
  const Vector d = p.set->lmo(g) - x;
  const double f0 = p.objective->value(x);
  const double f1 = p.objective->value(x + d);
  EXPECT_FALSE(surrogate_check(f0, f1, g, d, 1.0, 1e-8));
  const double rhs = surrogate_bound(f0, g.dot(d), d.squaredNorm(), 1.0, 1e-8);
  EXPECT_GT(f1, rhs);
}

TEST(ShouldStop, Examples) {
  const SolverConfig c = budget(100, 1e-9);
  IterateRecord r;
  r.iter = 3;
  r.d_norm = 1.0;
  r.fw_gap = 1e-12;
  EXPECT_EQ(should_stop(r, c), TerminationReason::gap_tol);
  r.fw_gap = 1.0;
  EXPECT_FALSE(should_stop(r, budget(100, 0.0)).has_value());
  r.iter = 100;
  EXPECT_EQ(should_stop(r, c), TerminationReason::max_iter);
  r.d_norm = 0.0;
  EXPECT_EQ(should_stop(r, c), TerminationReason::zero_direction);
}

TEST(SolverConfig, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.max_iter = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SolverConfig{};
  c.gap_tol = -1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SolverConfig{};
  c.rho = 0.9;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_EQ(parse_solver_kind("adapt_l0l1"), SolverKind::adapt_l0l1);
  EXPECT_THROW(parse_solver_kind("newton"), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// classic and adaptive classic

TEST(ClassicFw, InteriorQuadraticReachesSmallGap) {
  const Problem p = testprob::interior_quadratic_on_ball(0.0);
  const Trace t = run_classic_fw(p, budget(10000, 1e-8));
  EXPECT_EQ(t.termination, TerminationReason::gap_tol);
  EXPECT_LT(t.records.size(), 10001u);
  EXPECT_TRUE(is_monotone_nonincreasing(t));
}

TEST(ClassicFw, FullFirstStepDescends) {
  // Minimizer far outside the unit ball: the first shortest step clamps to 1.
  const auto f = quadratic(Matrix::Identity(2, 2), vec({10, 0}));
  Problem p;
  p.objective = f;
  p.set = std::make_shared<L2Ball>(vec({0, 0}), 1.0);
  p.x0 = vec({-1, 0});
  const Trace t = run_classic_fw(p, budget(1));
  ASSERT_EQ(t.records.size(), 2u);
  EXPECT_EQ(t.records[0].alpha, 1.0);
  EXPECT_LE(t.records[1].f_value, t.records[0].f_value);
}

TEST(ClassicFw, RequiresL) {
  Problem p = testprob::exp_linear_on_ball();
  EXPECT_THROW(run_classic_fw(p, budget(5)), SolverError);
  SolverConfig c = budget(5);
  c.classic_l = 100.0;
  EXPECT_NO_THROW(run_classic_fw(p, c));
}

TEST(ClassicFw, L0L1StepIsClassicOverE) {
  const Problem p = testprob::interior_quadratic_on_ball(0.0);
  const double l = *p.objective->smoothness().classic_l;
  SolverConfig c = budget(1);
  c.smoothness = SmoothnessParams{l, 0.0, {}};
  const Trace classic = run_classic_fw(p, c);
  const Trace l0l1 = run_l0l1_fw(p, c);
  const auto& rc = classic.records[0];
  const auto& rl = l0l1.records[0];
  EXPECT_EQ(rc.fw_gap, rl.fw_gap);
  ASSERT_LT(rc.alpha, 1.0);
  EXPECT_NEAR(rl.alpha, rc.alpha / kE, 1e-15);
}

TEST(AdaptiveClassicFw, AcceptedLStaysBelowTwiceCurvature) {
  const Problem p = testprob::exterior_quadratic_on_ball();
  const double l = *p.objective->smoothness().classic_l;
  SolverConfig c = budget(300);
  c.l_init = l;
  const Trace t = run_adaptive_classic_fw(p, c);
  for (const auto& r : t.records) EXPECT_LE(r.a_k, 2.0 * l);
  EXPECT_TRUE(is_monotone_nonincreasing(t));
}

TEST(AdaptiveClassicFw, OverestimateAcceptedOnFirstCheck) {
  const auto p = logistic_problem(6, 100, 6, std::make_shared<L2Ball>(Vector::Zero(6), 25.0));
  SolverConfig c = budget(1);
  c.l_init = 1e9;
  const Trace t = run_adaptive_classic_fw(p, c);
  EXPECT_EQ(t.records[0].inner_checks, 1u);
  EXPECT_LT(t.records[0].alpha, 1e-3);
}

// Start 2^6 below lambda_max(Q). The first iteration halves once more, so
// the accepted L is reached after at most 7 doublings, i.e. 8 checks.
TEST(AdaptiveClassicFw, UnderestimateBoundedDoublings) {
  for (std::uint64_t seed : {101u, 102u, 103u, 104u}) {
    const Problem p = testprob::exterior_quadratic_on_ball(seed);
    const double l = *p.objective->smoothness().classic_l;
    SolverConfig c = budget(1);
    c.l_init = l / 64.0;
    const Trace t = run_adaptive_classic_fw(p, c);
    const std::size_t checks = t.records[0].inner_checks;
    EXPECT_GE(checks, 1u);
    EXPECT_LE(checks - 1, 7u) << "doublings";
  }
}

// ---------------------------------------------------------------------------
// (L0, L1)-FW

TEST(L0L1Fw, ExpLinearDescentFor500Iterations) {
  const Problem p = testprob::exp_linear_on_ball();
  const Trace t = run_l0l1_fw(p, budget(500));
  EXPECT_EQ(t.steps, 500u);
  EXPECT_EQ(descent_violations(t), 0u);
  const double l1 = p.objective->smoothness().l1;
  for (std::size_t k = 0; k + 1 < t.records.size(); ++k) {
    EXPECT_LE(t.records[k].alpha * t.records[k].d_norm, 1.0 / l1 + 1e-12);
  }
}

TEST(L0L1Fw, ExpLinearSublinearEnvelopeAgainstReferenceRun) {
  const Problem p = testprob::exp_linear_on_ball();
  SolverConfig ref_cfg = budget(1000000);
  ref_cfg.record_stride = 1000;
  const Trace ref = run_l0l1_fw(p, ref_cfg);
  // Best value minus final gap lower-bounds f*.
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : ref.records) best = std::min(best, r.f_value);
  const double f_star = best - ref.records.back().fw_gap;
  EXPECT_LE(f_star, *p.f_star + 1e-12);
  EXPECT_NEAR(f_star, *p.f_star, 1e-6);

  const Trace t = run_l0l1_fw(p, budget(2000));
  const auto s = p.objective->smoothness();
  const double diam = p.set->diameter();
  double sup_g = 0.0;
  for (const auto& r : t.records) {
    sup_g = std::max(sup_g, r.grad_norm);
    const double env =
        2.0 * kE * (s.l0 + s.l1 * sup_g) * diam * diam / (static_cast<double>(r.iter) + 3.0);
    EXPECT_LE(r.f_value - f_star, env) << r.iter;
  }
}

TEST(L0L1Fw, ZeroGradientAtStartStopsImmediately) {
  Problem p;
  p.objective = power_norm(2, 3);
  p.set = std::make_shared<L2Ball>(Vector::Zero(3), 1.0);
  p.x0 = Vector::Zero(3);
  SolverConfig c = budget(100);
  c.classic_l = 2.0;
  for (auto kind : {SolverKind::classic, SolverKind::adaptive_classic, SolverKind::l0l1,
                    SolverKind::adapt_l0l1}) {
    const Trace t = run_solver(kind, p, c);
    EXPECT_EQ(t.termination, TerminationReason::zero_direction) << to_string(kind);
    EXPECT_EQ(t.steps, 0u);
    ASSERT_EQ(t.records.size(), 1u);
    EXPECT_EQ(t.records[0].alpha, 0.0);
  }
}

TEST(L0L1Fw, RegimeCountsPartitionTheTrace) {
  const Problem p = testprob::interior_quadratic_on_ball(0.5);
  const Trace t = run_l0l1_fw(p, budget(400));
  std::size_t tc = 0, kc = 0;
  for (const auto& r : t.records) {
    (r.regime == Regime::T ? tc : kc) += 1;
    EXPECT_EQ(r.regime, classify_regime(r.l0_k, r.l1_k, r.grad_norm));
  }
  EXPECT_EQ(tc + kc, t.records.size());
  EXPECT_GT(tc, 0u);
  EXPECT_GT(kc, 0u);
}

TEST(L0L1Fw, RecordStrideKeepsTerminalRecord) {
  const auto p = logistic_problem(16, 100, 5, std::make_shared<Simplex>(5));
  SolverConfig c = budget(95);
  c.record_stride = 10;
  const Trace t = run_l0l1_fw(p, c);
  ASSERT_EQ(t.records.size(), 11u);
  EXPECT_EQ(t.records.front().iter, 0u);
  EXPECT_EQ(t.records[9].iter, 90u);
  EXPECT_EQ(t.records.back().iter, 95u);
  EXPECT_EQ(t.steps, 95u);
}

// ---------------------------------------------------------------------------
// Adaptive (L0, L1)-FW

TEST(AdaptL0L1Fw, DescentAtEveryAcceptedIterate) {
  const std::vector<Problem> problems = {
      testprob::exterior_quadratic_on_ball(), testprob::interior_quadratic_on_ball(0.5),
      testprob::exp_linear_on_ball(),
      logistic_problem(7, 150, 6, std::make_shared<L2Ball>(Vector::Zero(6), 25.0)),
      logistic_problem(8, 150, 6, std::make_shared<Simplex>(6)),
      logistic_problem(9, 150, 6, std::make_shared<LInfBall>(Vector::Zero(6), 1.0))};
  for (const auto& p : problems) {
    for (double rho : {2.0, 3.0}) {
      SolverConfig c = budget(1500);
      c.rho = rho;
      const Trace t = run_adapt_l0l1_fw(p, c);
      EXPECT_EQ(descent_violations(t), 0u) << p.name << " rho=" << rho;
      EXPECT_TRUE(is_monotone_nonincreasing(t)) << p.name;
    }
  }
}

TEST(AdaptL0L1Fw, DegenerateStartCompletes) {
  const auto p = logistic_problem(10, 200, 10, std::make_shared<L2Ball>(Vector::Zero(10), 25.0));
  SolverConfig c = budget(200);
  c.l0_init = 1e-8;
  c.l1_init = 1e-8;
  const Trace t = run_adapt_l0l1_fw(p, c);
  EXPECT_EQ(t.steps, 200u);
  EXPECT_GT(t.records[0].inner_checks, 1u);
  EXPECT_EQ(descent_violations(t), 0u);
}

TEST(AdaptL0L1Fw, ParametersRespectMaxima) {
  const auto p = logistic_problem(11, 200, 10, std::make_shared<L2Ball>(Vector::Zero(10), 25.0));
  SolverConfig c = budget(300);
  c.rho = 3.0;
  c.l0_max = 5.0;
  c.l1_max = 1e6;
  const Trace t = run_adapt_l0l1_fw(p, c);
  for (const auto& r : t.records) {
    EXPECT_LE(r.l0_k, c.l0_max);
    EXPECT_LE(r.l1_k, c.l1_max);
  }
}

TEST(AdaptL0L1Fw, InnerCapRaisesDistinctError) {
  const auto p = logistic_problem(12, 200, 10, std::make_shared<L2Ball>(Vector::Zero(10), 25.0));
  SolverConfig c = budget(50);
  c.l0_init = c.l1_init = 1e-9;
  c.l0_max = c.l1_max = 1e-9;
  EXPECT_THROW(run_adapt_l0l1_fw(p, c), SolverError);
}

// With rho = 1 the multiply factor rho - share never exceeds 1, so a
// rejected step can never be repaired.
TEST(AdaptL0L1Fw, RhoOneCannotRecoverFromRejection) {
  const auto p = logistic_problem(17, 150, 6, std::make_shared<L2Ball>(Vector::Zero(6), 25.0));
  SolverConfig c = budget(200);
  c.rho = 1.0;
  c.l0_init = c.l1_init = 1e-6;
  EXPECT_THROW(run_adapt_l0l1_fw(p, c), SolverError);
}

TEST(AdaptL0L1Fw, ExponentialSurrogateIsStricter) {
  const auto p = logistic_problem(13, 150, 6, std::make_shared<L2Ball>(Vector::Zero(6), 25.0));
  SolverConfig c = budget(300);
  c.surrogate = SurrogateForm::exponential;
  const Trace t = run_adapt_l0l1_fw(p, c);
  EXPECT_EQ(descent_violations(t), 0u);
}

TEST(Solvers, DeterministicTraces) {
  const auto p = logistic_problem(14, 150, 8, std::make_shared<LInfBall>(Vector::Zero(8), 1.0));
  for (auto kind : {SolverKind::classic, SolverKind::adaptive_classic, SolverKind::l0l1,
                    SolverKind::adapt_l0l1}) {
    const Trace a = run_solver(kind, p, budget(300));
    const Trace b = run_solver(kind, p, budget(300));
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
      EXPECT_EQ(a.records[k].f_value, b.records[k].f_value);
      EXPECT_EQ(a.records[k].alpha, b.records[k].alpha);
      EXPECT_EQ(a.records[k].l0_k, b.records[k].l0_k);
      EXPECT_EQ(a.records[k].l1_k, b.records[k].l1_k);
    }
    EXPECT_EQ(a.final_point, b.final_point);
  }
}

TEST(Solvers, NextPointIsConvexCombination) {
  const auto p = logistic_problem(15, 100, 5, std::make_shared<Simplex>(5));
  for (auto kind : {SolverKind::classic, SolverKind::adaptive_classic, SolverKind::l0l1,
                    SolverKind::adapt_l0l1}) {
    SolverConfig c = budget(1);
    const Trace t = run_solver(kind, p, c);
    const Vector g = p.objective->gradient(p.x0);
    const Vector expected = p.x0 + t.records[0].alpha * (p.set->lmo(g) - p.x0);
    EXPECT_EQ(t.final_point, expected) << to_string(kind);
    EXPECT_TRUE(p.set->contains(t.final_point));
  }
}

TEST(Problem, Validation) {
  Problem p = testprob::exp_linear_on_ball();
  EXPECT_NO_THROW(p.validate());
  p.x0 = vec({500, 5});
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.x0 = vec({0, 0, 0});
  EXPECT_THROW(p.validate(), std::invalid_argument);
}
