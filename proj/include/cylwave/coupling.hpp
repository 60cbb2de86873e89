#pragma once

/**
 * @file coupling.hpp
 * @brief The coupled wave / floating-cylinder evolution: state space,
 *        generator blocks, energy functional, and time integration of
 *        zdot = (A + P) z + F(t).
 *
 * State z = [v, h, u, l]: surface potential trace, cylinder displacement,
 * dv/dt, and dh/dt. The energy is
 *   ||z||_X^2 = <(I + g Lambda) v, v> + (2g/pi) h^2 + ||u||^2 + l^2.
 */

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "cylwave/dtn.hpp"
#include "cylwave/grid.hpp"
#include "cylwave/linalg.hpp"

namespace cylwave {

struct PhysicsParams {
    double g = 9.81;     // m/s^2
    double rho = 1000.0; // kg/m^3
};

struct SystemState {
    SurfaceFunction v;
    double h = 0.0;
    SurfaceFunction u;
    double l = 0.0;
    double t = 0.0;

    SystemState() = default;
    explicit SystemState(SurfaceGridPtr grid) : v(grid), u(std::move(grid)) {}
};

struct StateDeriv {
    std::vector<double> dv;
    double dh = 0.0;
    std::vector<double> du;
    double dl = 0.0;
};

// ---------------------------------------------------------------------------
// Forcing
// ---------------------------------------------------------------------------

enum class ForcingKind { zero, constant, sinusoid, pulse, table };

/// Applied vertical force f(t) in N per unit cylinder length.
struct Forcing {
    ForcingKind kind = ForcingKind::zero;
    double amplitude = 0.0;
    double frequency = 0.0;  // rad/s (sinusoid)
    double phase = 0.0;
    double t0 = 0.0;         // pulse center
    double width = 1.0;      // pulse width
    std::vector<double> ts, fs;  // table: piecewise linear

    double operator()(double t) const;
    /// Table kind must cover [0, T].
    void validate_window(double T) const;
};

// ---------------------------------------------------------------------------
// Heave kernel and added force
// ---------------------------------------------------------------------------

/// K(x) = I1(x) + I2(x): the angular integrals reducing the hydrodynamic
/// force on the cylinder to a weighted surface integral.
struct HeaveKernel {
    SurfaceGridPtr grid;
    std::vector<double> K;
};

HeaveKernel heave_kernel(SurfaceGridPtr grid);

/// I1 alone (its closed-form log bound is part of the verification suite).
double heave_I1(double xt);

enum class ForceRoute { kernel, field };

/// (1/pi) int_{-pi/2}^{pi/2} (D_Omega u)(sin t, cos t) cos t dt. The kernel
/// route evaluates (2/pi^2) int u K by the surface trapezoid rule; the field
/// route quadratures the extension on the half-circle directly.
double added_force(const SurfaceFunction& u, const HeaveKernel& kernel,
                   ForceRoute route = ForceRoute::kernel,
                   Exec exec = default_exec());

// ---------------------------------------------------------------------------
// Generator blocks and energy
// ---------------------------------------------------------------------------

/// A z = [u, l, -g Lambda v, -(2g/pi) h] (symmetrized Lambda).
StateDeriv apply_A(const SystemState& z, const PhysicsParams& p, const DtnOperator& op);

/// P z = [0, 0, -g l sigma, added_force(u)] with sigma(x) = 1/x^2.
StateDeriv apply_P(const SystemState& z, const PhysicsParams& p, const HeaveKernel& kernel);

/// Q z = [0, 0, -v, 0]: the bounded shift that makes A + Q skew-adjoint in
/// the X inner product above (the v-block of the generator becomes
/// -(I + g Lambda) v; the h-block is already skew against (2g/pi)|h|^2).
StateDeriv apply_Q(const SystemState& z);

/// ||z||_X^2.
double energy(const SystemState& z, const PhysicsParams& p, const DtnOperator& op);

/// X inner product of two states.
double x_inner(const SystemState& a, const SystemState& b,
               const PhysicsParams& p, const DtnOperator& op);

// ---------------------------------------------------------------------------
// Time stepping
// ---------------------------------------------------------------------------

enum class Scheme { implicit_midpoint, rk4 };

struct StepperOptions {
    Scheme scheme = Scheme::implicit_midpoint;
    bool include_P = true;
    bool include_Q = false;  // true integrates the skew part A + Q instead of A
};

/// One-step integrator for zdot = L z + F(t), L = A [+P] [+Q]. The implicit
/// midpoint solve is prefactorized: the (v,u) Schur complement
/// I + (dt/2)^2 C is Cholesky-factored once per (operator, dt) pair and the
/// rank-one heave coupling is folded in by Sherman-Morrison.
class TimeStepper {
public:
    TimeStepper(const DtnOperator& op, const HeaveKernel& kernel,
                const PhysicsParams& params, double dt, StepperOptions opts);

    SystemState step(const SystemState& z, const Forcing& f) const;

    StateDeriv generator(const SystemState& z) const;  // L z (no forcing)
    double dt() const { return dt_; }

private:
    const DtnOperator& op_;
    const HeaveKernel& kernel_;
    PhysicsParams params_;
    double dt_;
    StepperOptions opts_;

    // W^{1/2}-coordinate Cholesky of I + s^2 C and Sherman-Morrison data.
    Cholesky chol_;
    std::vector<double> sqw_;        // sqrt of quadrature weights
    std::vector<double> a_;          // added-force functional (kernel route)
    std::vector<double> sigma_;      // 1/x^2 at the nodes
    std::vector<double> minv_sigma_; // M^{-1} sigma in W^{1/2} coordinates
    double beta_ = 1.0;
    double sm_denominator_ = 1.0;

    SystemState step_midpoint(const SystemState& z, const Forcing& f) const;
    SystemState step_rk4(const SystemState& z, const Forcing& f) const;
    std::vector<double> apply_C(const std::vector<double>& v) const;
};

// ---------------------------------------------------------------------------
// Simulation driver
// ---------------------------------------------------------------------------

struct Snapshot {
    double t = 0.0;
    std::vector<double> v, u;
};

struct Trajectory {
    std::vector<double> t, h, hdot, energy, v_l2, v_half;
    std::vector<Snapshot> snapshots;
};

struct SimulationSetup {
    SurfaceGridPtr grid;
    const DtnOperator* op = nullptr;
    const HeaveKernel* kernel = nullptr;
    PhysicsParams params;
    StepperOptions stepper;
    Forcing forcing;
    SystemState initial;
    double dt = 1e-3;
    double T = 1.0;
    int output_stride = 1;              // in steps
    std::vector<double> snapshot_times;
};

/// Deterministic single-threaded loop: records (t, h, hdot, energy, |v|_L2,
/// sqrt-norm of v) every stride and full snapshots at the requested times.
Trajectory run_simulation(const SimulationSetup& setup);

} // namespace cylwave
