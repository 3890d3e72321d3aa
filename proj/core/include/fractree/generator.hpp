#pragma once

#include "fractree/profile.hpp"

namespace fractree {

/// Which phase the field's profiles are evaluated at. Local restarts at 0
/// on every branch; Global uses the shared progress variable tau, which is
/// inherited unchanged at branch events.
enum class PhaseMode { local, global };

/// Planar internal state plus global phase. theta is stored unwrapped so
/// total turning stays recoverable.
struct GeneratorState {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
    double tau = 0.0;

    bool operator==(const GeneratorState&) const = default;
};

/// Speed and turning-rate profiles for the planar generator system
///   x' = rho cos(theta),  y' = rho sin(theta),  theta' = kappa,  tau' = 1.
/// rho must evaluate strictly positive over any span it is integrated on.
struct GeneratorField {
    AnalyticProfile rho = AnalyticProfile::constant(1.0);
    AnalyticProfile kappa = AnalyticProfile::constant(0.0);
    PhaseMode phase_mode = PhaseMode::local;
};

}  // namespace fractree
