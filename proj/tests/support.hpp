#pragma once

// Shared helpers for the test suites. The overlap-measure oracle here is a
// deliberately naive reimplementation: membership tests on Euclidean
// distances plus angular scanning, nothing shared with the closed-form code
// under test.

#include <cmath>
#include <vector>

#include "ghl/params.hpp"

namespace testsup {

inline double rel_err(double got, double want) {
    const double scale = std::fmax(std::fabs(want), 1e-300);
    return std::fabs(got - want) / scale;
}

// Total angular measure (radians) of {theta in (-pi, pi] : inside(u, theta)}:
// coarse scan for sign changes, bisection to refine each crossing, then one
// pass accumulating the inside segments.
template <class Member>
double angular_measure(double u, Member&& inside, int coarse = 4096) {
    const double step = 2.0 * ghl::kPi / coarse;
    const bool first = inside(u, -ghl::kPi);
    std::vector<double> crossings;
    bool prev = first;
    for (int i = 1; i <= coarse; ++i) {
        const double th = -ghl::kPi + step * i;
        const bool cur = inside(u, th);
        if (cur != prev) {
            double lo = th - step, hi = th;
            for (int b = 0; b < 60; ++b) {
                const double mid = 0.5 * (lo + hi);
                if (inside(u, mid) == prev)
                    lo = mid;
                else
                    hi = mid;
            }
            crossings.push_back(0.5 * (lo + hi));
            prev = cur;
        }
    }
    double total = 0.0;
    bool state = first;
    double last = -ghl::kPi;
    for (double c : crossings) {
        if (state) total += c - last;
        state = !state;
        last = c;
    }
    if (state) total += ghl::kPi - last;
    return total;
}

// Rescaled measure of D(x0, r) n D(x1, r) n {sink distance <= u2}, computed
// as int (angular width) du by the trapezoid rule on a fine radial grid.
inline double overlap_measure_oracle(const ghl::PolarPoint& x0, const ghl::PolarPoint& x1,
                                     double u2, double r, int radial = 2500, int coarse = 2048) {
    const double p0x = x0.u * std::cos(x0.theta), p0y = x0.u * std::sin(x0.theta);
    const double p1x = x1.u * std::cos(x1.theta), p1y = x1.u * std::sin(x1.theta);
    auto inside = [&](double u, double th) {
        const double px = u * std::cos(th), py = u * std::sin(th);
        const double d0 = (px - p0x) * (px - p0x) + (py - p0y) * (py - p0y);
        const double d1 = (px - p1x) * (px - p1x) + (py - p1y) * (py - p1y);
        return d0 <= r * r && d1 <= r * r;
    };
    const double lo = std::fmax(0.0, std::fmax(x0.u - r, x1.u - r));
    const double hi = std::fmin(u2, std::fmin(x0.u + r, x1.u + r));
    if (hi <= lo) return 0.0;
    double acc = 0.0;
    double prev = angular_measure(lo, inside, coarse);
    for (int i = 1; i <= radial; ++i) {
        const double u = lo + (hi - lo) * i / radial;
        const double cur = angular_measure(u, inside, coarse);
        acc += 0.5 * (prev + cur) * (hi - lo) / radial;
        prev = cur;
    }
    return acc;
}

}  // namespace testsup
