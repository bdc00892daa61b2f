#pragma once

#include "ghl/measure.hpp"

namespace ghl {

// Law of the single-hop advancement C from a node at sink distance gamma.
// C <= c exactly when no feasible node sits below sink distance gamma - c,
// so F(c) = exp(-lambda * Q_gamma(gamma - c)) on [0, r]. The law is mixed:
// continuous on (0, r] plus an atom at zero (empty feasible region, a void)
// of mass F(0) = exp(-lambda * Q_gamma(gamma)).
struct MixedHopDistribution {
    double gamma;
    ModelParams params;
    MeasureMode mode;
    double void_atom;

    double cdf(double c) const;       // includes the atom
    double survival(double c) const;  // 1 - cdf(c)
    // Density of the continuous part, 2 lambda psi e^{-lambda Q}.
    double density(double c) const;
};

MixedHopDistribution hop_distribution(double gamma, const ModelParams& params,
                                      MeasureMode mode = MeasureMode::ExactElliptic);

// CDF of the relay's sink distance U = gamma - C:
//   P(U <= u) piecewise over [gamma - r, gamma], with the void mass parked
//   at u = gamma (no movement).
double sink_cdf(double gamma, double u, const ModelParams& params,
                MeasureMode mode = MeasureMode::ExactElliptic);

// m-th moment of the advancement, E C^m = r^m - m int_0^r c^{m-1} P(C > c) dc.
double moment_numeric(double gamma, int m, const ModelParams& params,
                      MeasureMode mode = MeasureMode::ExactElliptic);

// Watson-lemma moments from the boundary-layer expansion of Q:
//   E C   ~ r - Gamma(5/3) / (lambda q0)^{2/3}
//   E C^2 ~ r^2 - 2 r Gamma(5/3) / (lambda q0)^{2/3} + Gamma(7/3) / (lambda q0)^{4/3}
double moment_asymptotic(double gamma, int m, const ModelParams& params);

// Kullback-Leibler divergence between the mixed hop laws at gamma1 and
// gamma2, with the expectation taken under the second argument's law:
//   int f2 ln(f2/f1) dc + atom2 ln(atom2/atom1).
double kl_divergence(double gamma1, double gamma2, const ModelParams& params,
                     MeasureMode mode = MeasureMode::ExactElliptic);

}  // namespace ghl
