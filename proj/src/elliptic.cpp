#include "ghl/elliptic.hpp"

#include <cmath>

namespace ghl {

namespace {

constexpr int kMaxIter = 100;
// Differences shrink 4x per duplication; the tail series then contributes
// O(eps^6), so stopping at 1e-4 leaves ~1e-24 relative truncation.
constexpr double kStop = 1e-4;

// Arguments exactly on the cut (negative real axis) are resolved by the sign
// of the zero imaginary part; a denormal-free nudge keeps branch selection
// independent of how csqrt treats signed zero.
cx off_cut(cx v) {
    if (v.imag() == 0.0 && v.real() < 0.0)
        return {v.real(), std::copysign(1e-300 * std::fabs(v.real()), v.imag())};
    return v;
}

bool is_zero(cx v) { return v.real() == 0.0 && v.imag() == 0.0; }

}  // namespace

cx carlson_rf(cx x, cx y, cx z) {
    const int zeros = is_zero(x) + is_zero(y) + is_zero(z);
    if (zeros > 1) throw domain_error("carlson_rf: at most one argument may vanish");
    x = off_cut(x);
    y = off_cut(y);
    z = off_cut(z);

    cx a = (x + y + z) / 3.0;
    const double scale0 = std::max({std::abs(a - x), std::abs(a - y), std::abs(a - z)});
    if (scale0 == 0.0) return 1.0 / std::sqrt(a);

    int iter = 0;
    while (std::max({std::abs(a - x), std::abs(a - y), std::abs(a - z)}) > kStop * std::abs(a)) {
        if (++iter > kMaxIter) throw nonconvergence("carlson_rf: duplication did not converge");
        const cx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const cx lam = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
    }

    const cx dx = (a - x) / a, dy = (a - y) / a, dz = -dx - dy;
    const cx e2 = dx * dy - dz * dz;
    const cx e3 = dx * dy * dz;
    const cx series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0 -
                      5.0 * e2 * e2 * e2 / 208.0 + 3.0 * e3 * e3 / 104.0 +
                      e2 * e2 * e3 / 16.0;
    return series / std::sqrt(a);
}

cx carlson_rd(cx x, cx y, cx z) {
    if (is_zero(z)) throw domain_error("carlson_rd: third argument must not vanish");
    if (is_zero(x) && is_zero(y)) throw domain_error("carlson_rd: x and y may not both vanish");
    x = off_cut(x);
    y = off_cut(y);
    z = off_cut(z);

    cx a = (x + y + 3.0 * z) / 5.0;
    cx sum = 0.0;
    double fac = 1.0;
    int iter = 0;
    while (std::max({std::abs(a - x), std::abs(a - y), std::abs(a - z)}) > kStop * std::abs(a)) {
        if (++iter > kMaxIter) throw nonconvergence("carlson_rd: duplication did not converge");
        const cx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const cx lam = sx * sy + sy * sz + sz * sx;
        sum += fac / (sz * (z + lam));
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
    }

    const cx dx = (a - x) / a, dy = (a - y) / a;
    const cx dz = -(dx + dy) / 3.0;
    const cx e2 = dx * dy - 6.0 * dz * dz;
    const cx e3 = (3.0 * dx * dy - 8.0 * dz * dz) * dz;
    const cx e4 = 3.0 * (dx * dy - dz * dz) * dz * dz;
    const cx e5 = dx * dy * dz * dz * dz;
    const cx series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 -
                      3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
    return 3.0 * sum + fac * series / (a * std::sqrt(a));
}

namespace {

struct FE {
    cx f, e;
};

// Both integrals for |phi| <= pi/2 under the sin^2 convention; shared because
// they reuse the same Carlson arguments.
FE legendre_sin(double phi, double k, CutSide side) {
    const double sign = phi < 0.0 ? -1.0 : 1.0;
    const double aphi = std::fabs(phi);
    if (aphi > (kPi / 2.0) + 1e-12) throw domain_error("legendre: |phi| must not exceed pi/2");
    const double s = std::sin(std::min(aphi, (kPi / 2.0)));
    const double c2 = std::fmax(0.0, 1.0 - s * s);
    const double yr = 1.0 - k * k * s * s;
    const cx y = yr < 0.0 ? cx(yr, side == CutSide::Lower ? -0.0 : +0.0) : cx(yr, 0.0);
    const cx rf = carlson_rf(c2, y, 1.0);
    FE out;
    out.f = sign * s * rf;
    if (s == 0.0) {
        out.e = 0.0;
        return out;
    }
    const cx rd = carlson_rd(c2, y, 1.0);
    out.e = sign * (s * rf - (k * k * s * s * s / 3.0) * rd);
    return out;
}

}  // namespace

cx legendre_f(double phi, double k, EllipticConvention conv, CutSide side) {
    if (conv == EllipticConvention::SinSquared) return legendre_sin(phi, k, side).f;
    // 1 - k^2 cos^2(theta) under the root: shift by the complete integral,
    // F_cos(phi) = F_sin(pi/2) - F_sin(pi/2 - phi), extended oddly.
    const double sign = phi < 0.0 ? -1.0 : 1.0;
    const double aphi = std::fabs(phi);
    return sign * (legendre_sin((kPi / 2.0), k, side).f - legendre_sin((kPi / 2.0) - aphi, k, side).f);
}

cx legendre_e(double phi, double k, EllipticConvention conv, CutSide side) {
    if (conv == EllipticConvention::SinSquared) return legendre_sin(phi, k, side).e;
    const double sign = phi < 0.0 ? -1.0 : 1.0;
    const double aphi = std::fabs(phi);
    return sign * (legendre_sin((kPi / 2.0), k, side).e - legendre_sin((kPi / 2.0) - aphi, k, side).e);
}

}  // namespace ghl
