#include <gtest/gtest.h>

#include <numbers>

#include "support/generators.hpp"

using namespace aqg;
constexpr double kPi = std::numbers::pi;

namespace {

SpectralField<double> sample(const Grid<double>& g, double (*f)(double, double)) {
  return forward_transform(PhysicalField<double>::sample(g, f));
}

SolverConfig quick(double dt, double t_end, int every = 1) {
  SolverConfig c;
  c.dt = dt;
  c.t_end = t_end;
  c.diagnostics_every = every;
  return c;
}

SpectralField<double> final_state(const SpectralField<double>& theta0, const DissipationParams& p,
                                  const SolverConfig& c) {
  return run(theta0, p, c, [](const DiagnosticsRecord&) {}).theta;
}

}  // namespace

TEST(LinearPropagator, Basics) {
  const auto g = Grid<double>::square(32, 2 * kPi);
  const auto F = sample(g, [](double x1, double) { return std::sin(x1); });
  const DissipationParams p{1, 1, 0.5, 0.5};
  EXPECT_TRUE((linear_propagator(F, p, 0.0).coeffs == F.coeffs).all());
  const auto E = linear_propagator(F, p, 1.0);
  EXPECT_NEAR(std::abs(E.at(1, 0) - F.at(1, 0) * std::exp(-1.0)), 0.0, 1e-14 * std::abs(F.at(1, 0)));
  EXPECT_THROW(linear_propagator(F, p, -1.0), InvalidArgument);

  gen::Engine rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const auto G = forward_transform(gen::noise_field(rng, gen::random_grid(rng)));
    ASSERT_LE(l2_norm(linear_propagator(G, gen::random_params(rng), gen::uniform(rng, 0.0, 3.0))), l2_norm(G));
  }
}

TEST(Solver, LinearFlowIsExactMode) {
  const auto g = Grid<double>::square(32, 6.0);
  SpectralField<double> F(g);
  F.at(2, -3) = {0.3, 0.7};
  F.at(-2, 3) = {0.3, -0.7};
  const DissipationParams p{0.7, 1.3, 0.35, 0.85};
  auto c = quick(0.01, 2.0, 10);
  c.nonlinear = false;
  const double lambda = p.mu * std::pow(2 * 2 * kPi / 6.0, 2 * p.alpha) + p.nu * std::pow(3 * 2 * kPi / 6.0, 2 * p.beta);
  for (const auto& r : run(F, p, c)) {
    const double exact = std::exp(-lambda * r.t) * l2_norm(F);
    ASSERT_NEAR(r.l2, exact, 1e-12 * l2_norm(F)) << r.t;
  }
  for (auto scheme : {Integrator::IFRK4, Integrator::IFEuler}) {
    c.integrator = scheme;
    const auto out = final_state(F, p, c);
    EXPECT_NEAR(std::abs(out.at(2, -3) - F.at(2, -3) * std::exp(-lambda * 2.0)), 0.0, 1e-12);
  }
}

TEST(Solver, ShearProfileSeesNoNonlinearity) {
  const auto g = Grid<double>::square(32, 2 * kPi);
  const auto F = sample(g, [](double x1, double) { return std::sin(x1) + 0.3 * std::cos(3 * x1); });
  const DissipationParams p{1, 1, 0.4, 0.6};
  const auto c = quick(0.05, 3.0, 20);
  const auto out = final_state(F, p, c);
  EXPECT_LT((out.coeffs - linear_propagator(F, p, 3.0).coeffs).abs().maxCoeff(), 1e-12 * F.coeffs.abs().maxCoeff());
}

TEST(Solver, ZeroDataStaysZero) {
  const auto g = Grid<double>::square(16, 2 * kPi);
  for (const auto& r : run(SpectralField<double>(g), DissipationParams{}, quick(0.1, 1.0))) {
    EXPECT_EQ(r.l2, 0.0);
    EXPECT_EQ(r.linf, 0.0);
    EXPECT_EQ(r.budget_residual, 0.0);
    for (const auto& [s, v] : r.hs) EXPECT_EQ(v, 0.0);
  }
  EXPECT_EQ(energy_budget(run(SpectralField<double>(g), DissipationParams{}, quick(0.1, 1.0))), 0.0);
}

TEST(Solver, FourthOrderSelfConvergence) {
  const auto g = Grid<double>::square(64, 2 * kPi);
  const auto F = sample(g, [](double x1, double x2) { return std::sin(x1) + std::cos(2 * x2); });
  const DissipationParams p{1, 1, 0.75, 0.75};
  // below the advective bound at every level, so no step is subdivided
  auto cfg = [](double dt) {
    auto c = quick(dt, 1.0, 1000);
    c.cfl_safety = 1.0;
    return c;
  };
  const double dt = 0.05;
  const auto a = final_state(F, p, cfg(dt));
  const auto b = final_state(F, p, cfg(dt / 2));
  const auto c = final_state(F, p, cfg(dt / 4));
  const double e1 = l2_norm(a - b), e2 = l2_norm(b - c);
  const double order = std::log2(e1 / e2);
  EXPECT_GE(order, 3.5) << e1 << " " << e2;
}

TEST(Solver, EulerCrossCheckIsFirstOrder) {
  const auto g = Grid<double>::square(32, 2 * kPi);
  const auto F = sample(g, [](double x1, double x2) { return std::sin(x1) + std::cos(2 * x2); });
  const DissipationParams p{1, 1, 0.75, 0.75};
  auto cfg = [](double dt) {
    auto c = quick(dt, 1.0, 1000);
    c.integrator = Integrator::IFEuler;
    return c;
  };
  const auto ref = final_state(F, p, quick(0.005, 1.0, 1000));
  const double e1 = l2_norm(final_state(F, p, cfg(0.02)) - ref);
  const double e2 = l2_norm(final_state(F, p, cfg(0.01)) - ref);
  EXPECT_NEAR(std::log2(e1 / e2), 1.0, 0.2);
}

TEST(Solver, RandomDecayIsMonotone) {
  gen::Engine rng(62);
  const auto g = Grid<double>::square(32, 4 * kPi);
  const auto F = gen::smooth_field(rng, g);
  const auto recs = run(F, DissipationParams{1, 1, 0.75, 0.75}, quick(0.01, 3.0, 10));
  for (std::size_t i = 1; i < recs.size(); ++i) {
    ASSERT_LT(recs[i].l2, recs[i - 1].l2);
    ASSERT_LE(recs[i].linf, recs[i - 1].linf * (1 + 1e-6));
  }
}

TEST(Solver, RecordsAtStartEveryKStepsAndEnd) {
  const auto g = Grid<double>::square(16, 2 * kPi);
  const auto F = sample(g, [](double x1, double x2) { return std::sin(x1 + x2); });
  const auto recs = run(F, DissipationParams{}, quick(0.1, 1.05, 4));
  ASSERT_EQ(recs.size(), 4u);  // t = 0, 0.4, 0.8, 1.05
  EXPECT_EQ(recs.front().t, 0.0);
  EXPECT_NEAR(recs[1].t, 0.4, 1e-15);
  EXPECT_EQ(recs.back().t, 1.05);
}

TEST(Solver, BudgetMatchesTrapezoidClosedForm) {
  // One mode, linear: the only budget error is the trapezoid rule on
  // E0 * 2 lambda * int exp(-2 lambda t) dt.
  const auto g = Grid<double>::square(32, 2 * kPi);
  const auto F = sample(g, [](double x1, double) { return std::sin(x1); });
  const DissipationParams p{1, 1, 0.5, 0.5};
  const double lambda = 1.0, T = 2.0, E0 = l2_norm_squared(F);
  std::vector<double> residual;
  for (double dt : {0.02, 0.01}) {
    auto c = quick(dt, T, 1);
    c.nonlinear = false;
    const auto recs = run(F, p, c);
    const int n = int(std::lround(T / dt));
    double trap = 0;
    for (int i = 0; i < n; ++i) trap += dt / 2 * (std::exp(-2 * lambda * i * dt) + std::exp(-2 * lambda * (i + 1) * dt));
    const double expected = E0 * std::exp(-2 * lambda * T) + 2 * lambda * E0 * trap - E0;
    EXPECT_NEAR(recs.back().budget_residual, expected, 1e-12 * E0);
    EXPECT_GT(recs.back().budget_residual, 0.0);  // trapezoid overestimates a convex integrand
    residual.push_back(energy_budget(recs));
  }
  EXPECT_NEAR(residual[0] / residual[1], 4.0, 0.05);
}

TEST(Solver, DissipationIdentityBetweenRecords) {
  gen::Engine rng(63);
  const auto g = Grid<double>::square(32, 4 * kPi);
  const auto F = gen::smooth_field(rng, g);
  const DissipationParams p{0.8, 1.2, 0.6, 0.8};
  const double dt = 0.002;
  const auto recs = run(F, p, quick(dt, 0.2, 1));
  double worst = 0, scale = 0;
  for (std::size_t i = 1; i + 1 < recs.size(); ++i) {
    const double dE = (recs[i + 1].l2 * recs[i + 1].l2 - recs[i - 1].l2 * recs[i - 1].l2) / (2 * dt);
    const double rate = -2 * (p.mu * recs[i].diss1 + p.nu * recs[i].diss2);
    worst = std::max(worst, std::abs(dE - rate));
    scale = std::max(scale, std::abs(rate));
  }
  EXPECT_LT(worst, 1e-4 * scale);
}

TEST(Solver, CflViolationIsReportedAndSubdivided) {
  const auto g = Grid<double>::square(32, 2 * kPi);
  const auto F = 50.0 * sample(g, [](double x1, double x2) { return std::sin(x1) * std::cos(x2); });
  const DissipationParams p{1, 1, 0.75, 0.75};
  const Stepper<double> big(g, p, 0.5, Integrator::IFRK4, true, 0.5);
  SimulationState<double> s{0.0, F, 0.0, 0.0};
  try {
    big.step(s);
    FAIL() << "expected a CFL violation";
  } catch (const CflViolation& e) {
    EXPECT_GT(e.suggested_dt(), 0.0);
    EXPECT_LT(e.suggested_dt(), 0.5);
  }
  const auto recs = run(F, p, quick(0.5, 1.0, 1));
  EXPECT_EQ(recs.back().t, 1.0);
  EXPECT_LT(recs.back().l2, recs.front().l2);
}

TEST(Solver, NonFiniteStateAborts) {
  const auto g = Grid<double>::square(16, 2 * kPi);
  auto F = sample(g, [](double x1, double) { return std::sin(x1); });
  F.at(1, 1) = F.at(-1, -1) = std::nan("");
  SimulationState<double> s{0.25, F, 0.0, 0.0};
  try {
    step(s, DissipationParams{}, quick(0.01, 1.0));
    FAIL();
  } catch (const NumericalBlowup& e) {
    EXPECT_EQ(e.last_valid_time(), 0.25);
  }
}

TEST(Solver, RejectsUnsuitableInitialData) {
  const auto g = Grid<double>::square(16, 2 * kPi);
  SpectralField<double> F(g);
  F.at(0, 0) = 1.0;
  EXPECT_THROW(run(F, DissipationParams{}, quick(0.1, 1.0)), InvalidArgument);
  SpectralField<double> G(g);
  G.at(7, 0) = G.at(-7, 0) = 1.0;  // outside the 2/3 box
  EXPECT_THROW(run(G, DissipationParams{}, quick(0.1, 1.0)), InvalidArgument);
  DissipationParams bad;
  bad.beta = 1.0;
  EXPECT_THROW(run(SpectralField<double>(g), bad, quick(0.1, 1.0)), InvalidArgument);
}

TEST(Solver, FloatInstantiationRuns) {
  const auto g = Grid<float>::square(16, 2 * std::numbers::pi_v<float>);
  const auto F = forward_transform(
      PhysicalField<float>::sample(g, [](float x1, float x2) { return std::sin(x1) + std::cos(2 * x2); }));
  SolverConfig c = quick(0.01, 0.5, 10);
  const auto recs = run(F, DissipationParams{}, c);
  EXPECT_LT(recs.back().l2, recs.front().l2);
  EXPECT_LT(std::abs(recs.back().budget_residual), 1e-3 * recs.front().l2 * recs.front().l2);
}
