#pragma once

#include <array>
#include <vector>

namespace xsuperint {

/// Parameters of the classical limit. k = p/q.
struct ClassicalParams {
    double omega_hat = 1.0;
    double alpha_hat = 1.0;
    double beta_hat = 1.0;
    int p = 1;
    int q = 1;

    /// Throws DomainError unless all three constants are positive and p, q
    /// are coprime positive integers.
    void validate() const;
    double k() const { return static_cast<double>(p) / q; }
    double wedge() const;
    /// Period of the radial oscillation, pi / omega_hat.
    double radial_period() const;
};

struct PhaseState {
    double r = 1.0;
    double phi = 0.0;
    double p_r = 0.0;
    double p_phi = 0.0;
};

struct TrajectorySample {
    double t = 0.0;
    PhaseState state;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double step = 0.0;
    int order = 8;
};

/// 1/2 (p_r^2 + p_phi^2/r^2) + 1/2 omega^2 r^2 + k^2/(2r^2) W(phi),
/// W = alpha^2/sin^2(k phi) + beta^2/cos^2(k phi).
double h_classical(const PhaseState& s, const ClassicalParams& cp);
/// p_phi^2/k^2 + W(phi).
double l1_classical(const PhaseState& s, const ClassicalParams& cp);

/// Right-hand side of Hamilton's equations as (dr, dphi, dp_r, dp_phi).
std::array<double, 4> hamilton_rhs(const PhaseState& s, const ClassicalParams& cp);

/// The equilibrium point: p = 0, tan^2(k phi) = alpha/beta and r at the
/// minimum of the effective radial potential.
PhaseState potential_minimum(const ClassicalParams& cp);

/// A bounded, generic starting point used by the cli and the tests.
PhaseState default_initial_state(const ClassicalParams& cp);

struct IntegrateOptions {
    /// Relative energy drift that aborts the run with StepSizeTooLargeError.
    double drift_guard = 1e-6;
};

/// Fixed-step eighth-order Runge-Kutta (Dormand-Prince 8(5,3) weights) over
/// [0, t_end]. The step is t_end / ceil(t_end / dt), so the last sample lands
/// on t_end. Throws WedgeExitError when a step leaves the wedge.
Trajectory integrate(const PhaseState& s0, const ClassicalParams& cp, double dt, double t_end,
                     const IntegrateOptions& opts = {});

/// Minimum over samples with t in (T_r/2, periods * T_r] of the phase-space
/// distance to the first sample, each coordinate divided by its range over
/// that window. periods = 0 selects q. Throws InsufficientSpanError when the
/// trajectory is shorter than periods * T_r.
double closure_metric(const Trajectory& traj, const ClassicalParams& cp, int periods = 0);

/// max |H(t) - H(0)| / |H(0)| and the same for L1.
struct Drift {
    double energy = 0.0;
    double l1 = 0.0;
};
Drift conservation_drift(const Trajectory& traj, const ClassicalParams& cp);

struct ConvergenceStudy {
    std::array<double, 3> differences{};  // RMS of y(h) - y(h/2) over the coarse step times, h = dt, dt/2, dt/4
    std::array<double, 2> orders{};       // log2 of successive difference ratios
    /// The estimate from the finest three step sizes.
    double order() const { return orders[1]; }
};

/// Richardson study over step sizes dt, dt/2, dt/4, dt/8, integrated in long
/// double and compared at every multiple of the coarse step.
ConvergenceStudy convergence_order(const PhaseState& s0, const ClassicalParams& cp, double dt, double t_end);

}  // namespace xsuperint
