#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "ghl/params.hpp"

namespace ghl {

namespace detail {

// Gauss(7)-Kronrod(15) positive nodes (descending, centre last) and weights.
// The embedded Gauss rule uses the odd-indexed nodes plus the centre.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kGK15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kG7Weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
std::pair<double, double> gk15(F&& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double ik = 0.0, ig = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double fv =
            (j == 7) ? f(c) : f(c - h * kGK15Nodes[j]) + f(c + h * kGK15Nodes[j]);
        ik += kGK15Weights[j] * fv;
        if (j % 2 == 1 || j == 7) ig += kG7Weights[j / 2] * fv;
    }
    ik *= h;
    ig *= h;
    return {ik, std::fabs(ik - ig)};
}

}  // namespace detail

// Adaptive bisection quadrature built on Gauss-Kronrod 7/15. Splits until the
// per-segment error estimate meets the locally apportioned absolute tolerance
// (with a relative floor so roundoff plateaus don't trigger endless splits).
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-12, int max_depth = 40) {
    if (!(b >= a)) throw domain_error("integrate: inverted interval");
    if (a == b) return 0.0;

    struct Seg {
        double a, b, tol;
        int depth;
    };
    Seg stack[64];
    int top = 0;
    stack[top++] = {a, b, abs_tol, 0};
    double total = 0.0;
    while (top > 0) {
        const Seg s = stack[--top];
        const auto [ik, err] = detail::gk15(f, s.a, s.b);
        if (err <= s.tol || err <= 1e-14 * std::fabs(ik)) {
            total += ik;
            continue;
        }
        if (s.depth >= max_depth) {
            if (err > 1e3 * s.tol) throw nonconvergence("integrate: refinement limit reached");
            total += ik;
            continue;
        }
        const double m = 0.5 * (s.a + s.b);
        if (top + 2 > 64) throw nonconvergence("integrate: stack overflow");
        stack[top++] = {s.a, m, 0.5 * s.tol, s.depth + 1};
        stack[top++] = {m, s.b, 0.5 * s.tol, s.depth + 1};
    }
    return total;
}

}  // namespace ghl
