#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghl {

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Closed form produced a complex value whose imaginary residue is too large;
// indicates a convention or branch-cut mistake upstream.
struct residue_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct no_intersection : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct degenerate_geometry : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct nonconvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scalar network parameters. `lambda` is the awake node density scale (the
// planar density at sink distance u is lambda/u), `r` the transmission
// radius, `ell` the source-sink distance. Sleep scheduling thins an
// underlying deployment of density `alpha` by the per-attempt awake
// probability `p`, so lambda = p * alpha.
struct ModelParams {
    double lambda = 30.0;
    double r      = 1.0;
    double ell    = 10.0;
    double p      = 1.0;
    double alpha  = 0.0;  // 0 = derive from lambda / p
};

// Point in polar coordinates about the sink; theta in (-pi, pi].
struct PolarPoint {
    double u     = 0.0;
    double theta = 0.0;
};

// Forwarding sequence: points[0] is the source (ell, 0); consecutive sink
// distances satisfy u_{i+1} in [u_i - r, u_i).
struct PathState {
    std::vector<PolarPoint> points;
};

inline ModelParams validate_params(ModelParams raw) {
    if (!(raw.r > 0.0)) throw domain_error("transmission radius must be positive");
    if (!(raw.lambda > 0.0)) throw domain_error("node density must be positive");
    if (!(raw.ell > raw.r)) throw domain_error("source-sink distance must exceed the transmission radius");
    if (!(raw.p > 0.0) || raw.p > 1.0) throw domain_error("awake probability must lie in (0, 1]");
    if (raw.alpha <= 0.0) {
        raw.alpha = raw.lambda / raw.p;
    } else if (std::fabs(raw.lambda - raw.p * raw.alpha) > 1e-12 * raw.lambda) {
        throw domain_error("inconsistent densities: lambda must equal p * alpha");
    }
    return raw;
}

inline PolarPoint source_point(const ModelParams& params) { return {params.ell, 0.0}; }

inline constexpr double kPi = 3.14159265358979323846;

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

}  // namespace ghl
