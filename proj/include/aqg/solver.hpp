#pragma once

#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "aqg/diagnostics.hpp"
#include "aqg/splitting.hpp"

namespace aqg {

enum class Integrator { IFRK4, IFEuler };

inline const char* to_string(Integrator i) { return i == Integrator::IFRK4 ? "IFRK4" : "IFEuler"; }

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Integrator integrator = Integrator::IFRK4;
  double cfl_safety = 0.5;
  int diagnostics_every = 10;
  std::vector<double> s_diag{1.0, 2.0};
  std::vector<double> p_diag{2.0, 4.0, 8.0, kInf};
  std::vector<double> delta_list{1.0, 2.0, 4.0, 8.0};  // multiples of the fundamental wavenumber
  bool nonlinear = true;                               // off only in tests of the linear semigroup

  void validate() const {
    if (!(dt > 0)) throw InvalidArgument("dt must be positive");
    if (!(t_end > 0)) throw InvalidArgument("t_end must be positive");
    if (!(cfl_safety > 0 && cfl_safety <= 1)) throw InvalidArgument("cfl_safety must lie in (0,1]");
    if (diagnostics_every < 1) throw InvalidArgument("diagnostics_every must be a positive integer");
    for (double p : p_diag)
      if (!(p >= 1)) throw InvalidArgument("every p in p_diag must be >= 1");
    for (double d : delta_list)
      if (!(d > 0)) throw InvalidArgument("every delta in delta_list must be positive");
  }
};

template <typename Scalar = double>
struct SimulationState {
  double t = 0;
  SpectralField<Scalar> theta;
  double cum1 = 0;  // int_0^t || |d1|^alpha theta ||^2, trapezoidal
  double cum2 = 0;  // int_0^t || |d2|^beta theta ||^2, trapezoidal
};

/// exp(-h (mu |k1|^{2 alpha} + nu |k2|^{2 beta})) applied coefficientwise.
template <typename Scalar>
SpectralField<Scalar> linear_propagator(const SpectralField<Scalar>& F, const DissipationParams& params,
                                        Scalar h) {
  if (!(h >= 0)) throw InvalidArgument("propagation time must be nonnegative");
  if (h == Scalar(0)) return F;
  const Scalar mu = params.mu, nu = params.nu, a2 = 2 * params.alpha, b2 = 2 * params.beta;
  return apply_multiplier(F, [&](Scalar k1, Scalar k2, int, int) {
    return std::exp(-h * (mu * abs_pow(k1, a2) + nu * abs_pow(k2, b2)));
  });
}

/// Integrating-factor time stepper for one (grid, parameters, step size).
///
/// theta_t = -L theta - N(theta) with L = mu|k1|^{2a} + nu|k2|^{2b}; the
/// substitution exp(tL) theta removes L exactly, so only N is integrated.
template <typename Scalar = double>
class Stepper {
 public:
  Stepper(const Grid<Scalar>& grid, const DissipationParams& params, Scalar h, Integrator scheme,
          bool nonlinear, Scalar cfl_safety)
      : grid_(grid), h_(h), scheme_(scheme), nonlinear_(nonlinear), cfl_safety_(cfl_safety),
        half_(grid.n1(), grid.n2()), w1_(grid.n1()), w2_(grid.n2()), eval_(grid) {
    params.validate();
    const auto k1 = grid.wavenumbers1();
    const auto k2 = grid.wavenumbers2();
    for (int i = 0; i < grid.n1(); ++i) w1_(i) = abs_pow(k1(i), Scalar(2 * params.alpha));
    for (int j = 0; j < grid.n2(); ++j) w2_(j) = abs_pow(k2(j), Scalar(2 * params.beta));
    for (int j = 0; j < grid.n2(); ++j)
      for (int i = 0; i < grid.n1(); ++i)
        half_(i, j) = std::exp(-h / 2 * (Scalar(params.mu) * w1_(i) + Scalar(params.nu) * w2_(j)));
  }

  Scalar step_size() const { return h_; }

  std::pair<Scalar, Scalar> dissipation(const ComplexArray<Scalar>& theta) const {
    const RealArray<Scalar> e = theta.abs2();
    return {(e.colwise() * w1_).sum() / grid_.area(), (e.rowwise() * w2_.transpose()).sum() / grid_.area()};
  }

  /// Advances by one step of size h. Throws CflViolation before touching the
  /// state when h exceeds the advective bound, NumericalBlowup on non-finite output.
  SimulationState<Scalar> step(const SimulationState<Scalar>& s) const {
    const ComplexArray<Scalar>& v = s.theta.coeffs;
    const auto E = half_.template cast<std::complex<Scalar>>();
    ComplexArray<Scalar> next;

    if (!nonlinear_) {
      next = E * E * v;
    } else {
      Scalar speed = 0;
      const ComplexArray<Scalar> a = -h_ * eval_.evaluate(v, &speed);
      check_cfl(speed, s.t);
      if (scheme_ == Integrator::IFEuler) {
        next = E * E * (v + a);
      } else {
        const ComplexArray<Scalar> b = -h_ * eval_.evaluate(E * (v + a / Scalar(2)));
        const ComplexArray<Scalar> Ev = E * v;
        const ComplexArray<Scalar> c = -h_ * eval_.evaluate(Ev + b / Scalar(2));
        const ComplexArray<Scalar> d = -h_ * eval_.evaluate(E * (Ev + c));
        next = E * (Ev + (E * a + Scalar(2) * (b + c)) / Scalar(6)) + d / Scalar(6);
      }
    }
    next(0, 0) = 0;

    SimulationState<Scalar> out{s.t + double(h_), SpectralField<Scalar>(grid_, std::move(next)), s.cum1, s.cum2};
    const auto [d1a, d2a] = dissipation(v);
    const auto [d1b, d2b] = dissipation(out.theta.coeffs);
    if (!std::isfinite(double(d1b + d2b)) || !std::isfinite(double(out.theta.coeffs.abs2().sum()))) {
      throw NumericalBlowup("solution became non-finite after t = " + std::to_string(s.t), s.t);
    }
    out.cum1 += double(h_ * (d1a + d1b) / 2);
    out.cum2 += double(h_ * (d2a + d2b) / 2);
    return out;
  }

 private:
  void check_cfl(Scalar speed, double t) const {
    if (speed <= 0) return;
    const Scalar limit = cfl_safety_ * grid_.spacing() / speed;
    if (h_ > limit) {
      throw CflViolation("time step " + std::to_string(double(h_)) + " exceeds the CFL bound " +
                             std::to_string(double(limit)) + " at t = " + std::to_string(t),
                         double(limit));
    }
  }

  Grid<Scalar> grid_;
  Scalar h_;
  Integrator scheme_;
  bool nonlinear_;
  Scalar cfl_safety_;
  RealArray<Scalar> half_;  // exp(-h L / 2)
  RealVector<Scalar> w1_;   // |k1|^{2 alpha}
  RealVector<Scalar> w2_;   // |k2|^{2 beta}
  NonlinearEvaluator<Scalar> eval_;
};

/// Single step with config.dt; builds the stepper on every call, so loops should use Stepper.
template <typename Scalar>
SimulationState<Scalar> step(const SimulationState<Scalar>& state, const DissipationParams& params,
                             const SolverConfig& config) {
  return Stepper<Scalar>(state.theta.grid, params, Scalar(config.dt), config.integrator, config.nonlinear,
                         Scalar(config.cfl_safety))
      .step(state);
}

/// Snapshot of all diagnostics for `state`. `l2_initial_sq` anchors the energy budget.
template <typename Scalar>
DiagnosticsRecord make_record(const SimulationState<Scalar>& state, const DissipationParams& params,
                              const SolverConfig& config, double l2_initial_sq) {
  const auto& th = state.theta;
  DiagnosticsRecord r;
  r.t = state.t;
  r.l2 = double(l2_norm(th));
  const PhysicalField<Scalar> phys(th.grid, detail::inverse_unchecked(th.coeffs, th.grid.area()));
  r.linf = double(phys.values.abs().maxCoeff());
  for (double p : config.p_diag) r.lp.emplace_back(p, double(lp_norm(phys, Scalar(p))));
  for (double s : config.s_diag) {
    r.hs.emplace_back(s, double(sobolev_norm(th, Scalar(s))));
    r.hs_hom.emplace_back(s, double(homogeneous_norm(th, Scalar(s))));
  }
  const auto [d1, d2] = dissipation_pair(th, params);
  r.diss1 = double(d1);
  r.diss2 = double(d2);
  r.cum1 = state.cum1;
  r.cum2 = state.cum2;
  const Scalar fundamental = th.grid.fundamental();
  for (double m : config.delta_list) {
    const auto [lo, hi] = split_norms(th, Scalar(m) * fundamental);
    r.split.push_back({m, double(lo), double(hi)});
  }
  r.budget_residual = r.l2 * r.l2 + 2 * params.mu * r.cum1 + 2 * params.nu * r.cum2 - l2_initial_sq;
  return r;
}

using RecordSink = std::function<void(const DiagnosticsRecord&)>;

/// Advances theta0 to config.t_end, emitting a record at t = 0, every
/// diagnostics_every steps and at the final time. Steps that violate the CFL
/// bound are subdivided into equal substeps. Returns the final state.
template <typename Scalar>
SimulationState<Scalar> run(const SpectralField<Scalar>& theta0, const DissipationParams& params,
                            const SolverConfig& config, const RecordSink& sink) {
  params.validate();
  config.validate();
  SpectralField<Scalar> start = theta0;
  const Scalar total = start.coeffs.abs2().sum();
  const Scalar tol = std::pow(std::numeric_limits<Scalar>::epsilon() * Scalar(1e4), Scalar(2)) * total;
  if (std::norm(start.mean_coefficient()) > tol) {
    throw InvalidArgument("initial data must be mean-free");
  }
  start.coeffs(0, 0) = 0;
  const SpectralField<Scalar> boxed = dealias(start);
  if ((start.coeffs - boxed.coeffs).abs2().sum() > tol) {
    throw InvalidArgument("initial data must be band-limited inside the 2/3 dealiasing box");
  }

  SimulationState<Scalar> state{0.0, boxed, 0.0, 0.0};
  const double l2_0_sq = double(l2_norm_squared(state.theta));
  sink(make_record(state, params, config, l2_0_sq));

  std::map<long long, std::unique_ptr<Stepper<Scalar>>> steppers;  // keyed by step size bits
  auto stepper_for = [&](double h) -> const Stepper<Scalar>& {
    long long key;
    static_assert(sizeof(key) == sizeof(h));
    std::memcpy(&key, &h, sizeof h);
    auto& slot = steppers[key];
    if (!slot) {
      slot = std::make_unique<Stepper<Scalar>>(state.theta.grid, params, Scalar(h), config.integrator,
                                               config.nonlinear, Scalar(config.cfl_safety));
    }
    return *slot;
  };

  std::function<void(double, int)> advance = [&](double h, int depth) {
    try {
      state = stepper_for(h).step(state);
    } catch (const CflViolation& e) {
      if (depth > 30) throw;
      const long long parts = static_cast<long long>(std::ceil(h / e.suggested_dt()));
      const double sub = h / double(std::max(parts, 2LL));
      for (long long q = 0; q < std::max(parts, 2LL); ++q) advance(sub, depth + 1);
    }
  };

  const long long n_steps = std::max(1LL, static_cast<long long>(std::ceil(config.t_end / config.dt - 1e-9)));
  for (long long n = 0; n < n_steps; ++n) {
    const bool last = n + 1 == n_steps;
    const double t_next = last ? config.t_end : double(n + 1) * config.dt;
    double h = config.dt;
    if (last) {
      const double rest = config.t_end - double(n) * config.dt;
      if (std::abs(rest - config.dt) > 1e-12 * config.dt) h = rest;
    }
    advance(h, 0);
    state.t = t_next;
    if ((n + 1) % config.diagnostics_every == 0 || n + 1 == n_steps) {
      sink(make_record(state, params, config, l2_0_sq));
    }
  }
  return state;
}

template <typename Scalar>
std::vector<DiagnosticsRecord> run(const SpectralField<Scalar>& theta0, const DissipationParams& params,
                                   const SolverConfig& config) {
  std::vector<DiagnosticsRecord> out;
  run(theta0, params, config, [&out](const DiagnosticsRecord& r) { out.push_back(r); });
  return out;
}

}  // namespace aqg
