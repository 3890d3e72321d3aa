#include "fractree/integrate.hpp"

#include <cmath>
#include <complex>

#include "fractree/error.hpp"

namespace fractree {

namespace {

constexpr double kStraightKappaThreshold = 1e-12;
constexpr int kSpeedCheckSamples = 257;

// sin(x)/x with the removable singularity filled in.
double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// (exp(z) - 1) / z, series-guarded against cancellation near z = 0.
std::complex<double> expm1_over(std::complex<double> z) {
    if (std::abs(z) < 1e-3) {
        return 1.0 + z * (1.0 / 2.0 + z * (1.0 / 6.0 + z * (1.0 / 24.0 +
                          z * (1.0 / 120.0 + z / 720.0))));
    }
    return (std::exp(z) - 1.0) / z;
}

// Dense positivity check of rho over the phase interval actually used.
void check_speed_positive(const GeneratorField& field, double phase0, double len) {
    for (int i = 0; i < kSpeedCheckSamples; ++i) {
        double u = len * static_cast<double>(i) / (kSpeedCheckSamples - 1);
        if (!(field.rho.eval(phase0 + u) > 0.0)) {
            throw Error(errkind::speed,
                        "rho is not strictly positive on the branch span");
        }
    }
}

void check_finite(const GeneratorState& st) {
    if (!std::isfinite(st.x) || !std::isfinite(st.y) || !std::isfinite(st.theta) ||
        !std::isfinite(st.tau)) {
        throw Error(errkind::nonfinite, "integration produced a non-finite state");
    }
}

std::vector<double> sample_offsets(double len, double ds, bool endpoints_only) {
    if (len == 0.0) return {0.0};
    if (endpoints_only) return {0.0, len};
    int n = std::max(1, static_cast<int>(std::ceil(std::abs(len) / ds)));
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        out.push_back(len * static_cast<double>(j) / n);
    }
    return out;
}

}  // namespace

double phase_base(const GeneratorField& field, const GeneratorState& init, Span span) {
    return field.phase_mode == PhaseMode::global ? init.tau : span.begin;
}

std::optional<Trajectory> integrate_closed_form(const GeneratorField& field,
                                                const GeneratorState& init,
                                                Span span,
                                                const IntegrateOptions& opts) {
    double len = span.length();
    if (len < 0.0) return std::nullopt;

    auto kappa0 = field.kappa.effective_constant();
    if (!kappa0) return std::nullopt;

    double p0 = phase_base(field, init, span);

    Trajectory traj;
    traj.span = span;
    traj.field = field;
    auto offsets = sample_offsets(len, opts.closed_form_sample_ds, opts.endpoints_only);

    if (auto rho0 = field.rho.effective_constant()) {
        check_speed_positive(field, p0, len);
        double k = *kappa0;
        for (double u : offsets) {
            GeneratorState st;
            st.theta = init.theta + k * u;
            st.tau = init.tau + u;
            if (std::abs(k) < kStraightKappaThreshold) {
                st.x = init.x + *rho0 * u * std::cos(init.theta);
                st.y = init.y + *rho0 * u * std::sin(init.theta);
            } else {
                // Half-angle product form of the arc displacement
                // (rho0/k)(sin(theta0+ku) - sin(theta0)); stable for small k.
                double half = 0.5 * k * u;
                double reach = *rho0 * u * sinc(half);
                st.x = init.x + reach * std::cos(init.theta + half);
                st.y = init.y + reach * std::sin(init.theta + half);
            }
            traj.samples.push_back({span.begin + u, st});
        }
        return traj;
    }

    if (auto ef = field.rho.effective_exponential()) {
        check_speed_positive(field, p0, len);
        double k = *kappa0;
        double rho_at_start = ef->scale * std::pow(ef->base, p0);
        std::complex<double> c(std::log(ef->base), k);
        std::complex<double> z0(init.x, init.y);
        std::complex<double> head = std::polar(rho_at_start, init.theta);
        for (double u : offsets) {
            GeneratorState st;
            st.theta = init.theta + k * u;
            st.tau = init.tau + u;
            std::complex<double> z = z0 + head * u * expm1_over(c * u);
            st.x = z.real();
            st.y = z.imag();
            traj.samples.push_back({span.begin + u, st});
        }
        return traj;
    }

    return std::nullopt;
}

namespace {

struct Deriv {
    double dx, dy, dtheta, dtau;
};

Deriv eval_field(const GeneratorField& field, double s, const GeneratorState& st) {
    double phase = field.phase_mode == PhaseMode::global ? st.tau : s;
    double rho = field.rho.eval(phase);
    double kappa = field.kappa.eval(phase);
    Deriv d{rho * std::cos(st.theta), rho * std::sin(st.theta), kappa, 1.0};
    if (!std::isfinite(d.dx) || !std::isfinite(d.dy) || !std::isfinite(d.dtheta)) {
        throw Error(errkind::nonfinite, "field evaluation produced non-finite values");
    }
    return d;
}

GeneratorState advance(const GeneratorState& st, const Deriv& d, double h) {
    return {st.x + h * d.dx, st.y + h * d.dy, st.theta + h * d.dtheta, st.tau + h * d.dtau};
}

GeneratorState rk4_step(const GeneratorField& field, double s, const GeneratorState& st,
                        double h) {
    Deriv k1 = eval_field(field, s, st);
    Deriv k2 = eval_field(field, s + 0.5 * h, advance(st, k1, 0.5 * h));
    Deriv k3 = eval_field(field, s + 0.5 * h, advance(st, k2, 0.5 * h));
    Deriv k4 = eval_field(field, s + h, advance(st, k3, h));
    GeneratorState out;
    out.x = st.x + h / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    out.y = st.y + h / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
    out.theta = st.theta + h / 6.0 * (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta);
    out.tau = st.tau + h / 6.0 * (k1.dtau + 2.0 * k2.dtau + 2.0 * k3.dtau + k4.dtau);
    check_finite(out);
    return out;
}

}  // namespace

Trajectory integrate_rk4(const GeneratorField& field, const GeneratorState& init,
                         Span span, double step, const IntegrateOptions& opts) {
    if (!(step > 0.0)) {
        throw Error(errkind::config, "rk4 step must be > 0");
    }
    double len = span.length();

    Trajectory traj;
    traj.span = span;
    traj.field = field;
    traj.samples.push_back({span.begin, init});
    if (len == 0.0) return traj;

    check_speed_positive(field, phase_base(field, init, span),
                         len);

    double dir = len > 0.0 ? 1.0 : -1.0;
    double h = dir * step;
    long n_full = static_cast<long>(std::floor(std::abs(len) / step));
    // Fold a roundoff sliver into the closing step so it never degenerates.
    if (n_full > 0 && std::abs(len) - static_cast<double>(n_full) * step < step * 1e-9) {
        --n_full;
    }

    GeneratorState st = init;
    for (long i = 0; i < n_full; ++i) {
        double s = span.begin + static_cast<double>(i) * h;
        st = rk4_step(field, s, st, h);
        if (!opts.endpoints_only) traj.samples.push_back({s + h, st});
    }
    double s_last = span.begin + static_cast<double>(n_full) * h;
    st = rk4_step(field, s_last, st, span.end - s_last);
    traj.samples.push_back({span.end, st});
    return traj;
}

Trajectory integrate(const GeneratorField& field, const GeneratorState& init, Span span,
                     IntegratorKind kind, const IntegrateOptions& opts) {
    switch (kind) {
        case IntegratorKind::closed_form: {
            auto t = integrate_closed_form(field, init, span, opts);
            if (!t) {
                throw Error(errkind::unsupported_family,
                            "no closed form for this profile combination");
            }
            return *t;
        }
        case IntegratorKind::rk4:
            return integrate_rk4(field, init, span, opts.rk4_step, opts);
        case IntegratorKind::automatic:
        default:
            if (auto t = integrate_closed_form(field, init, span, opts)) return *t;
            return integrate_rk4(field, init, span, opts.rk4_step, opts);
    }
}

std::vector<Vec2> realize(const Trajectory& traj) {
    if (traj.samples.empty()) {
        throw Error(errkind::config, "cannot realize an empty trajectory");
    }
    std::vector<Vec2> out;
    out.reserve(traj.samples.size());
    for (const auto& s : traj.samples) out.push_back({s.state.x, s.state.y});
    return out;
}

}  // namespace fractree
