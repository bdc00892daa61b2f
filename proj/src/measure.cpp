#include "ghl/measure.hpp"

#include <algorithm>
#include <cmath>

#include "ghl/elliptic.hpp"
#include "ghl/quadrature.hpp"

namespace ghl {

ExpansionCoeffs expansion_coeffs(double gamma, double r) {
    if (!(gamma > r) || !(r > 0.0)) throw domain_error("expansion_coeffs: need gamma > r > 0");
    ExpansionCoeffs c{};
    const double g = gamma;
    c.b0 = std::sqrt(2.0 * r / (g * (g - r)));
    c.b1 = c.b0 * (r * r - 3.0 * r * g - 3.0 * g * g) / (12.0 * (g * g * r - g * r * r));
    c.b2 = c.b0 *
           (3.0 * r * r * r * r + 25.0 * r * r * g * g - 10.0 * r * r * r * g +
            30.0 * g * g * g * r - 5.0 * g * g * g * g) /
           (160.0 * g * g * (g - r) * (g - r) * r * r);
    c.q0 = 4.0 * c.b0 / 3.0;
    c.q1 = 4.0 * c.b1 / 5.0;
    c.q2 = 4.0 * c.b2 / 7.0;
    return c;
}

namespace {

// 2 * int_{gamma-r}^{u} psi with w = gamma - r + s^2, which puts the sqrt
// edge behaviour of psi onto a polynomial in s.
double q_quad(double gamma, double u, double r, double abs_tol) {
    const double t = u - (gamma - r);
    if (t <= 0.0) return 0.0;
    const double smax = std::sqrt(t);
    return integrate(
        [gamma, r](double s) { return 4.0 * s * sink_angle(gamma, gamma - r + s * s, r); }, 0.0,
        smax, abs_tol);
}

// Closed form through incomplete elliptic integrals with modulus
// k = (gamma+r)/(gamma-r) > 1, evaluated on the lower side of the cut:
//   Q(u) = 2 Re[ u psi(u) + i (gamma-r) dE + i 2r dF ].
// The imaginary parts cancel exactly in theory; the residue is surfaced as
// an error if they fail to.
//
// The integrals are fed to Carlson's forms directly instead of through the
// phi-based wrappers: the lower limit sits exactly on the branch point
// 1 - k^2 sin^2(phi_0) = 0, where recomputing that quantity from sin(phi_0)
// rounds to +-eps and the sqrt cusp of RD turns the rounding into ~1e-8 of
// absolute error. Algebraically y0 = 0 and y(u) = -t (1 + k s) / (gamma-r),
// both cancellation-free.
double q_exact(double gamma, double u, double r) {
    const double t = u - (gamma - r);
    if (t <= 0.0) return 0.0;
    const double gr = gamma - r, gpr = gamma + r;
    const double k = gpr / gr;
    const cx one(1.0, 0.0), zero(0.0, 0.0);

    const double s0 = gr / gpr;
    const cx c02(4.0 * gamma * r / (gpr * gpr), 0.0);
    const cx rf0 = carlson_rf(c02, zero, one);
    const cx rd0 = carlson_rd(c02, zero, one);
    const cx f0 = s0 * rf0;
    const cx e0 = f0 - k * k * s0 * s0 * s0 / 3.0 * rd0;

    const double su = u / gpr;
    const cx cu2((gpr - u) * (gpr + u) / (gpr * gpr), 0.0);
    const cx yu(-t * (1.0 + k * su) / gr, -0.0);  // lower side of the cut
    const cx rfu = carlson_rf(cu2, yu, one);
    const cx rdu = carlson_rd(cu2, yu, one);
    const cx fu = su * rfu;
    const cx eu = fu - k * k * su * su * su / 3.0 * rdu;

    const cx val =
        2.0 * (u * sink_angle(gamma, u, r) + cx(0.0, 1.0) * (gr * (eu - e0) + 2.0 * r * (fu - f0)));
    if (std::fabs(val.imag()) > 1e-9 * std::fmax(1.0, std::fabs(val.real())))
        throw residue_error("mean measure closed form: imaginary residue too large");
    return val.real();
}

double q_asym(double gamma, double u, double r, int terms) {
    const double t = u - (gamma - r);
    if (t <= 0.0) return 0.0;
    const ExpansionCoeffs c = expansion_coeffs(gamma, r);
    const double t32 = t * std::sqrt(t);
    double v = t32 * (c.q0 + c.q1 * t);
    if (terms >= 3) v += t32 * c.q2 * t * t;
    return v;
}

void check_q_domain(double gamma, double u, double r) {
    if (!(gamma > r) || !(r > 0.0)) throw domain_error("mean measure: need gamma > r > 0");
    const double slack = 1e-12 * gamma;
    if (u < gamma - r - slack || u > gamma + slack)
        throw domain_error("mean measure: u outside [gamma - r, gamma]");
}

}  // namespace

double mean_measure_quadrature(double gamma, double u, const ModelParams& params) {
    check_q_domain(gamma, u, params.r);
    return params.lambda * q_quad(gamma, std::min(u, gamma), params.r, 1e-10 / params.lambda);
}

double mean_measure_exact(double gamma, double u, const ModelParams& params) {
    check_q_domain(gamma, u, params.r);
    return params.lambda * q_exact(gamma, std::min(u, gamma), params.r);
}

double q_rescaled(double gamma, double u, const ModelParams& params, MeasureMode mode) {
    check_q_domain(gamma, u, params.r);
    const double uc = std::min(u, gamma);
    switch (mode) {
        case MeasureMode::Quadrature: return q_quad(gamma, uc, params.r, 1e-12);
        case MeasureMode::ExactElliptic: return q_exact(gamma, uc, params.r);
        case MeasureMode::Asymptotic2: return q_asym(gamma, uc, params.r, 2);
        case MeasureMode::Asymptotic3: return q_asym(gamma, uc, params.r, 3);
    }
    throw config_error("q_rescaled: unknown mode");
}

double q_derivative(double gamma, double u, double r) { return 2.0 * sink_angle(gamma, u, r); }

namespace {

double q_dispatch(double gamma, double u, double r, MeasureMode mode) {
    const double uc = std::min(u, gamma);
    switch (mode) {
        case MeasureMode::Quadrature: return q_quad(gamma, uc, r, 1e-12);
        case MeasureMode::ExactElliptic: return q_exact(gamma, uc, r);
        case MeasureMode::Asymptotic2: return q_asym(gamma, uc, r, 2);
        case MeasureMode::Asymptotic3: return q_asym(gamma, uc, r, 3);
    }
    throw config_error("unknown measure mode");
}

}  // namespace

double intersection_q(const PolarPoint& x0, const PolarPoint& x1, double u2,
                      const ModelParams& params, MeasureMode mode) {
    const double r = params.r;
    const double u0 = x0.u, u1 = x1.u;
    if (!(u1 <= u0 + 1e-12 * u0) || !(u1 >= u0 - r - 1e-12 * u0))
        throw domain_error("intersection_q: x1 must lie within one hop below x0");
    if (u2 > u1 + 1e-12 * u1) throw domain_error("intersection_q: u2 must not exceed u1");
    // The overlap is contained in x0's disk, so it is empty below u0 - r.
    if (u2 <= u0 - r) return 0.0;

    const IntersectionGeometry geo = circle_intersection(x0, x1, r);
    const double th1 = std::fabs(wrap_angle(x1.theta - x0.theta));

    // Below the chord point's radius the overlap's angular section is x0's
    // entire section whenever that point sits below the baseline, else the
    // overlap has not started. Above it, the section is the average of the
    // two disks' sections minus the angular separation of the centres.
    double q = 0.0;
    const double m1 = std::min(u2, geo.u01);
    if (geo.below_baseline) q += q_dispatch(u0, m1, r, mode);
    if (u2 > geo.u01) {
        q += 0.5 * (q_dispatch(u0, u2, r, mode) - q_dispatch(u0, geo.u01, r, mode)) +
             0.5 * (q_dispatch(u1, u2, r, mode) - q_dispatch(u1, geo.u01, r, mode)) -
             th1 * (u2 - geo.u01);
    }
    if (q < 0.0) {
        if (q < -1e-12) throw domain_error("intersection_q: negative overlap measure");
        q = 0.0;
    }
    return q;
}

namespace {

double overlap_corrected_q(const PathState& path, double u_next, const ModelParams& params,
                           MeasureMode mode, double weight) {
    if (path.points.empty()) throw domain_error("corrected measure: empty path");
    const PolarPoint& cur = path.points.back();
    if (!(cur.u > params.r)) throw domain_error("corrected measure: current node already within reach");
    double q = q_dispatch(cur.u, u_next, params.r, mode);
    if (path.points.size() >= 2) {
        const PolarPoint& prev = path.points[path.points.size() - 2];
        q -= weight * intersection_q(prev, cur, u_next, params, mode);
    }
    return std::fmax(q, 0.0);
}

}  // namespace

double dependent_q(const PathState& path, double u_next, const ModelParams& params,
                   MeasureMode mode) {
    return overlap_corrected_q(path, u_next, params, mode, 1.0);
}

double sleep_q(const PathState& path, double u_next, const ModelParams& params,
               MeasureMode mode) {
    return overlap_corrected_q(path, u_next, params, mode, params.p);
}

}  // namespace ghl
