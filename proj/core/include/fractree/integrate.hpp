#pragma once

#include <optional>
#include <vector>

#include "fractree/generator.hpp"
#include "fractree/vec2.hpp"

namespace fractree {

struct Span {
    double begin = 0.0;
    double end = 0.0;
    double length() const { return end - begin; }
};

struct Sample {
    double s;
    GeneratorState state;
};

/// An integrated branch: ordered samples over a span, with the field that
/// produced them. Samples run from span.begin to span.end inclusive;
/// ascending spans are the normal case (descending ones occur only when a
/// trajectory is retraced backwards).
struct Trajectory {
    std::vector<Sample> samples;
    Span span;
    GeneratorField field;

    const GeneratorState& start_state() const { return samples.front().state; }
    const GeneratorState& end_state() const { return samples.back().state; }
};

struct IntegrateOptions {
    double rk4_step = 1e-3;            // per unit of s
    double closed_form_sample_ds = 1.0 / 64.0;
    bool endpoints_only = false;       // keep only first and last samples
};

enum class IntegratorKind { automatic, closed_form, rk4 };

/// Exact trajectory for the two closed families:
///   (i)  rho constant-valued, kappa constant-valued: circular arc, with the
///        straight-line limit taken analytically when |kappa| < 1e-12;
///   (ii) rho of the form c*A^phase, kappa constant-valued: evaluated from
///        the antiderivative of A^u e^{i(theta0 + kappa u)}.
/// Returns nullopt for any other profile combination (fall back to RK4).
std::optional<Trajectory> integrate_closed_form(const GeneratorField& field,
                                                const GeneratorState& init,
                                                Span span,
                                                const IntegrateOptions& opts = {});

/// Classical fixed-step fourth-order Runge-Kutta over the planar system.
/// The final partial step is shortened to land exactly on span.end; tau
/// advances at unit rate. Throws Error("nonfinite") if any evaluation
/// produces a non-finite value. Descending spans integrate backwards.
Trajectory integrate_rk4(const GeneratorField& field, const GeneratorState& init,
                         Span span, double step,
                         const IntegrateOptions& opts = {});

/// Closed form when supported, RK4 otherwise.
Trajectory integrate(const GeneratorField& field, const GeneratorState& init,
                     Span span, IntegratorKind kind = IntegratorKind::automatic,
                     const IntegrateOptions& opts = {});

/// Projection of the state trajectory onto the plane, order preserved.
std::vector<Vec2> realize(const Trajectory& traj);

/// Phase at which the field's profiles are sampled at local offset u from
/// the span begin.
double phase_base(const GeneratorField& field, const GeneratorState& init, Span span);

}  // namespace fractree
