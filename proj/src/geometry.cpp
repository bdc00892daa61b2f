#include "ghl/geometry.hpp"

#include <cmath>

namespace ghl {

double sink_angle(double gamma, double u, double r) {
    if (!(gamma > r) || !(r > 0.0)) throw domain_error("sink_angle: need gamma > r > 0");
    const double slack = 1e-12 * (gamma + r);
    if (u < gamma - r - slack || u > gamma + r + slack)
        throw domain_error("sink_angle: u outside [gamma - r, gamma + r]");
    const double clamped = u < gamma - r ? gamma - r : (u > gamma + r ? gamma + r : u);
    // Half-angle form of the side-side-side angle. Unlike acos of the law of
    // cosines it keeps full relative precision at both edges of the annulus,
    // where the acos argument grazes +-1 and cancellation costs ~sqrt(eps).
    const double num = (r + gamma - clamped) * (r + clamped - gamma);
    const double den = (clamped + gamma + r) * (clamped + gamma - r);
    return 2.0 * std::atan2(std::sqrt(std::fmax(0.0, num)), std::sqrt(den));
}

IntersectionGeometry circle_intersection(const PolarPoint& x0, const PolarPoint& x1, double r) {
    if (!(r > 0.0)) throw domain_error("circle_intersection: need r > 0");

    // Work in the frame where x0 sits on the positive x-axis and x1 at a
    // non-negative relative angle; mirror back at the end. The two chord
    // points are then unambiguous and the smaller-angle one is well defined.
    const double dth = wrap_angle(x1.theta - x0.theta);
    const double flip = dth < 0.0 ? -1.0 : 1.0;
    const double a0x = x0.u, a0y = 0.0;
    const double a1x = x1.u * std::cos(flip * dth);
    const double a1y = x1.u * std::sin(flip * dth);

    const double ddx = a1x - a0x, ddy = a1y - a0y;
    const double d2 = ddx * ddx + ddy * ddy;
    const double d = std::sqrt(d2);
    if (d < 1e-14 * (x0.u + x1.u + r)) throw degenerate_geometry("circle_intersection: coincident centres");
    if (d >= 2.0 * r) throw no_intersection("circle_intersection: centres too far apart");

    // Equal radii: the chord bisects the segment between centres.
    const double mx = 0.5 * (a0x + a1x), my = 0.5 * (a0y + a1y);
    const double h = std::sqrt(std::fmax(0.0, r * r - 0.25 * d2));
    // Unit normal to the centre line.
    const double nx = -ddy / d, ny = ddx / d;

    const double c0x = mx + h * nx, c0y = my + h * ny;
    const double c1x = mx - h * nx, c1y = my - h * ny;
    const double ang0 = std::atan2(c0y, c0x);
    const double ang1 = std::atan2(c1y, c1x);

    const bool take0 = ang0 <= ang1;
    const double sx = take0 ? c0x : c1x;
    const double sy = take0 ? c0y : c1y;
    const double sang = take0 ? ang0 : ang1;

    IntersectionGeometry out;
    out.u01 = std::hypot(sx, sy);
    out.below_baseline = sang <= 0.0;
    // Undo the mirror and the rotation by x0.theta.
    const double y_real = flip * sy;
    const double ca = std::cos(x0.theta), sa = std::sin(x0.theta);
    out.px = ca * sx - sa * y_real;
    out.py = sa * sx + ca * y_real;
    return out;
}

}  // namespace ghl
