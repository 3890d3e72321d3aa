#pragma once

#include <memory>
#include <optional>

namespace fractree {

/// A closed family of analytic scalar functions of the generator phase.
///
/// The family is algebraic rather than arbitrary user code: scaling a
/// profile (branch inheritance) is an exact symbolic transform, and the
/// integrator can decide closed-form support by inspecting the structure.
///
///   constant(c)             -> c
///   exponential(A), A > 0   -> A^s
///   affine(a, b)            -> a + b s
///   sinusoid(k0, e, w)      -> k0 + e sin(w s)
///   scaled(f, p)            -> f * p(s)
class AnalyticProfile {
public:
    enum class Kind { constant, exponential, affine, sinusoid, scaled };

    AnalyticProfile() = default;  // constant 0

    static AnalyticProfile constant(double value);
    static AnalyticProfile exponential(double base);  // throws for base <= 0
    static AnalyticProfile affine(double a, double b);
    static AnalyticProfile sinusoid(double k0, double eps, double omega);
    static AnalyticProfile scaled(double factor, AnalyticProfile inner);

    Kind kind() const { return kind_; }

    /// Total on all finite s; pure.
    double eval(double s) const;

    /// Definite integral over [s0, s1], evaluated from the exact
    /// antiderivative of the variant.
    double integral(double s0, double s1) const;

    /// Folds chains of scaled() over a constant into a single value.
    /// Empty when the profile is not constant-valued by structure.
    std::optional<double> effective_constant() const;

    /// scale * base^s form, folding scaled() chains over exponential().
    struct ExpForm {
        double scale;
        double base;
    };
    std::optional<ExpForm> effective_exponential() const;

    // Variant parameters, meaning depends on kind (see factories).
    double p0() const { return p0_; }
    double p1() const { return p1_; }
    double p2() const { return p2_; }
    const AnalyticProfile& inner() const { return *inner_; }

private:
    AnalyticProfile(Kind k, double a, double b, double c,
                    std::shared_ptr<const AnalyticProfile> inner)
        : kind_(k), p0_(a), p1_(b), p2_(c), inner_(std::move(inner)) {}

    Kind kind_ = Kind::constant;
    double p0_ = 0.0;
    double p1_ = 0.0;
    double p2_ = 0.0;
    std::shared_ptr<const AnalyticProfile> inner_;
};

}  // namespace fractree
