#pragma once

#include <complex>

#include "ghl/params.hpp"

namespace ghl {

using cx = std::complex<double>;

// Carlson symmetric integrals on the cut complex plane (cut along the
// negative real axis). Arguments exactly on the cut are resolved by the sign
// of their zero imaginary part, so cx(-0.5, -0.0) selects the lower side.
// At most one argument of rf may vanish; rd requires z != 0.
cx carlson_rf(cx x, cx y, cx z);
cx carlson_rd(cx x, cx y, cx z);

// Which squared trigonometric function appears under the square root of the
// incomplete integrals, and which side of the cut to take once the modulus
// exceeds one and 1 - k^2 sin^2(phi) turns negative.
enum class EllipticConvention { SinSquared, CosSquared };
enum class CutSide { Lower, Upper };

// Incomplete Legendre integrals F(phi, k), E(phi, k) for |phi| <= pi/2,
// evaluated through the Carlson forms. The modulus may exceed one, in which
// case the result is complex and `side` picks the branch: Lower continues
// the integrand as the conjugate of the principal square root.
cx legendre_f(double phi, double k,
              EllipticConvention conv = EllipticConvention::SinSquared,
              CutSide side = CutSide::Lower);
cx legendre_e(double phi, double k,
              EllipticConvention conv = EllipticConvention::SinSquared,
              CutSide side = CutSide::Lower);

}  // namespace ghl
