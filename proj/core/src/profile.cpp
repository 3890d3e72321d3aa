#include "fractree/profile.hpp"

#include <cmath>

#include "fractree/error.hpp"

namespace fractree {

AnalyticProfile AnalyticProfile::constant(double value) {
    return {Kind::constant, value, 0.0, 0.0, nullptr};
}

AnalyticProfile AnalyticProfile::exponential(double base) {
    if (!(base > 0.0)) {
        throw Error(errkind::config, "exponential profile base must be > 0");
    }
    return {Kind::exponential, base, 0.0, 0.0, nullptr};
}

AnalyticProfile AnalyticProfile::affine(double a, double b) {
    return {Kind::affine, a, b, 0.0, nullptr};
}

AnalyticProfile AnalyticProfile::sinusoid(double k0, double eps, double omega) {
    return {Kind::sinusoid, k0, eps, omega, nullptr};
}

AnalyticProfile AnalyticProfile::scaled(double factor, AnalyticProfile inner) {
    return {Kind::scaled, factor, 0.0, 0.0,
            std::make_shared<const AnalyticProfile>(std::move(inner))};
}

double AnalyticProfile::eval(double s) const {
    switch (kind_) {
        case Kind::constant:
            return p0_;
        case Kind::exponential:
            return std::pow(p0_, s);
        case Kind::affine:
            return p0_ + p1_ * s;
        case Kind::sinusoid:
            return p0_ + p1_ * std::sin(p2_ * s);
        case Kind::scaled:
            return p0_ * inner_->eval(s);
    }
    return 0.0;  // unreachable
}

double AnalyticProfile::integral(double s0, double s1) const {
    switch (kind_) {
        case Kind::constant:
            return p0_ * (s1 - s0);
        case Kind::exponential:
            if (p0_ == 1.0) return s1 - s0;
            return (std::pow(p0_, s1) - std::pow(p0_, s0)) / std::log(p0_);
        case Kind::affine:
            return p0_ * (s1 - s0) + 0.5 * p1_ * (s1 * s1 - s0 * s0);
        case Kind::sinusoid: {
            double base = p0_ * (s1 - s0);
            if (p2_ == 0.0) return base;
            return base - (p1_ / p2_) * (std::cos(p2_ * s1) - std::cos(p2_ * s0));
        }
        case Kind::scaled:
            return p0_ * inner_->integral(s0, s1);
    }
    return 0.0;  // unreachable
}

std::optional<double> AnalyticProfile::effective_constant() const {
    if (kind_ == Kind::constant) return p0_;
    if (kind_ == Kind::scaled) {
        if (auto v = inner_->effective_constant()) return p0_ * *v;
    }
    return std::nullopt;
}

std::optional<AnalyticProfile::ExpForm> AnalyticProfile::effective_exponential() const {
    if (kind_ == Kind::exponential) return ExpForm{1.0, p0_};
    if (kind_ == Kind::scaled) {
        if (auto f = inner_->effective_exponential()) {
            return ExpForm{p0_ * f->scale, f->base};
        }
    }
    return std::nullopt;
}

}  // namespace fractree
