#pragma once

#include "ghl/geometry.hpp"
#include "ghl/params.hpp"

namespace ghl {

// How to evaluate the rescaled mean measure Q_gamma(u) of the feasible
// region (transmission disk intersected with the disk of sink distance u).
//  - Quadrature: adaptive numerical integral of 2 psi, the reference.
//  - ExactElliptic: closed form via incomplete elliptic integrals.
//  - Asymptotic2/3: boundary-layer expansion near u = gamma - r with two or
//    three terms, accurate for small advancement and much cheaper.
enum class MeasureMode { ExactElliptic, Quadrature, Asymptotic2, Asymptotic3 };

// Coefficients of the expansion psi ~ b0 t^{1/2} + b1 t^{3/2} + b2 t^{5/2}
// in t = u - (gamma - r), and of the induced expansion of Q with leading
// coefficient q0 = 4 b0 / 3. tau(k) and mu feed Watson-lemma moments.
struct ExpansionCoeffs {
    double b0, b1, b2;
    double q0, q1, q2;
    static constexpr double mu = 1.5;
    static constexpr double tau(int k) { return 2.0 * (k + 1) / 3.0; }
};

ExpansionCoeffs expansion_coeffs(double gamma, double r);

// Unrescaled mean measure Lambda_gamma(u) = lambda * Q_gamma(u).
double mean_measure_quadrature(double gamma, double u, const ModelParams& params);
double mean_measure_exact(double gamma, double u, const ModelParams& params);

// Q_gamma(u) = 2 * integral of psi_gamma from gamma - r to u, for
// u in [gamma - r, gamma]. Density-free (the lambda factor is not applied).
double q_rescaled(double gamma, double u, const ModelParams& params,
                  MeasureMode mode = MeasureMode::ExactElliptic);

// d/du Q_gamma(u) = 2 psi_gamma(u).
double q_derivative(double gamma, double u, double r);

// Rescaled measure of the overlap D0 and D1 truncated at sink radius u2,
// where Di is the feasible region of the node xi (disk of radius r about xi
// cut to sink distance below u_i). Requires u2 <= u1 <= u0 with u1 within
// one hop of u0. Tiny negative round-off (within 1e-12) is clamped to zero.
double intersection_q(const PolarPoint& x0, const PolarPoint& x1, double u2,
                      const ModelParams& params,
                      MeasureMode mode = MeasureMode::ExactElliptic);

// Rescaled measure governing the next hop when the previous relay's empty
// feasible region is accounted for: Q_{u_i}(u) minus the overlap with the
// predecessor's region. `dependent_q` removes the overlap entirely (every
// node there was already observed absent); `sleep_q` removes only the awake
// fraction p of it, since sleeping nodes are re-drawn on each attempt.
double dependent_q(const PathState& path, double u_next, const ModelParams& params,
                   MeasureMode mode = MeasureMode::ExactElliptic);
double sleep_q(const PathState& path, double u_next, const ModelParams& params,
               MeasureMode mode = MeasureMode::ExactElliptic);

}  // namespace ghl
