#include "ghl/hop.hpp"

#include <cmath>

#include "ghl/quadrature.hpp"

namespace ghl {

namespace {

double check_advancement(double c, double r) {
    if (c < -1e-12 || c > r + 1e-12) throw domain_error("hop law: advancement outside [0, r]");
    return std::fmin(std::fmax(c, 0.0), r);
}

}  // namespace

double MixedHopDistribution::cdf(double c) const {
    c = check_advancement(c, params.r);
    return std::exp(-params.lambda * q_rescaled(gamma, gamma - c, params, mode));
}

double MixedHopDistribution::survival(double c) const { return 1.0 - cdf(c); }

double MixedHopDistribution::density(double c) const {
    c = check_advancement(c, params.r);
    const double u = gamma - c;
    return params.lambda * q_derivative(gamma, u, params.r) *
           std::exp(-params.lambda * q_rescaled(gamma, u, params, mode));
}

MixedHopDistribution hop_distribution(double gamma, const ModelParams& params,
                                      MeasureMode mode) {
    if (!(gamma > params.r)) throw domain_error("hop_distribution: need gamma > r");
    MixedHopDistribution d{gamma, params, mode, 0.0};
    d.void_atom = std::exp(-params.lambda * q_rescaled(gamma, gamma, params, mode));
    return d;
}

double sink_cdf(double gamma, double u, const ModelParams& params, MeasureMode mode) {
    if (!(gamma > params.r)) throw domain_error("sink_cdf: need gamma > r");
    if (u < gamma - params.r) return 0.0;
    if (u >= gamma) return 1.0;  // the void mass sits at u = gamma
    return 1.0 - std::exp(-params.lambda * q_rescaled(gamma, u, params, mode));
}

double moment_numeric(double gamma, int m, const ModelParams& params, MeasureMode mode) {
    if (m < 1) throw domain_error("moment_numeric: order must be positive");
    const double r = params.r;
    // E C^m = r^m - m int_0^r c^{m-1} F(c) dc, integrating the CDF directly.
    const double integral = integrate(
        [&](double c) {
            return std::pow(c, m - 1) *
                   std::exp(-params.lambda * q_rescaled(gamma, gamma - c, params, mode));
        },
        0.0, r, 1e-10);
    return std::pow(r, m) - m * integral;
}

double moment_asymptotic(double gamma, int m, const ModelParams& params) {
    const ExpansionCoeffs c = expansion_coeffs(gamma, params.r);
    const double s = std::pow(params.lambda * c.q0, -2.0 / 3.0);
    const double g53 = std::tgamma(5.0 / 3.0);
    if (m == 1) return params.r - g53 * s;
    if (m == 2)
        return params.r * params.r - 2.0 * params.r * g53 * s + std::tgamma(7.0 / 3.0) * s * s;
    throw domain_error("moment_asymptotic: only orders 1 and 2 are expanded");
}

double kl_divergence(double gamma1, double gamma2, const ModelParams& params,
                     MeasureMode mode) {
    if (!(gamma1 > params.r) || !(gamma2 > params.r))
        throw domain_error("kl_divergence: need gamma > r");
    const double r = params.r;
    const double lam = params.lambda;

    // log f at advancement c, split so the ratio below never overflows.
    auto log_psi = [&](double g, double c) { return std::log(sink_angle(g, g - c, r)); };
    auto qq = [&](double g, double c) { return q_rescaled(g, g - c, params, mode); };

    // c = r - s^2 removes the sqrt vanishing of the densities at c = r; the
    // log-ratio stays bounded there because both angles vanish at the same
    // rate.
    const double integral = integrate(
        [&](double s) {
            const double c = r - s * s;
            const double q2 = qq(gamma2, c);
            const double f2 = 2.0 * lam * std::exp(log_psi(gamma2, c) - lam * q2);
            const double log_ratio =
                log_psi(gamma2, c) - log_psi(gamma1, c) + lam * (qq(gamma1, c) - q2);
            return 2.0 * s * f2 * log_ratio;
        },
        0.0, std::sqrt(r), 1e-11);

    const double q1_full = q_rescaled(gamma1, gamma1, params, mode);
    const double q2_full = q_rescaled(gamma2, gamma2, params, mode);
    const double atom2 = std::exp(-lam * q2_full);
    return integral + atom2 * lam * (q1_full - q2_full);
}

}  // namespace ghl
