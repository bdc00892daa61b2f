#pragma once

#include "ghl/params.hpp"

namespace ghl {

// Half-angular width of the transmission disk of a node at sink distance
// `gamma`, measured at sink radius u:
//   psi_gamma(u) = arccos((u^2 + gamma^2 - r^2) / (2 u gamma)).
// Defined for u in [gamma - r, gamma + r]; arguments outside by more than
// 1e-12 raise, values within the slack are clamped onto the boundary.
double sink_angle(double gamma, double u, double r);

// Two circles of radius r about x0 and x1 (both in polar coordinates about
// the sink) intersect in two points. We report the one with the smaller
// angular coordinate relative to the ray through x0: `u01` is its sink
// distance and `below_baseline` says whether it lies on or below the
// sink--x0 baseline once the frame is rotated so x1 sits at a non-negative
// relative angle. (px, py) are its Cartesian coordinates in the original
// frame, kept for verification.
struct IntersectionGeometry {
    double u01 = 0.0;
    bool below_baseline = false;
    double px = 0.0;
    double py = 0.0;
};

IntersectionGeometry circle_intersection(const PolarPoint& x0, const PolarPoint& x1, double r);

}  // namespace ghl
