#pragma once

#include <complex>

namespace pudtai {

// Faddeeva function w(z) = e^{-z^2} erfc(-iz) for Im(z) >= 0.
// Absolute accuracy ~1e-14 on |z| <= 12 (midpoint series with residue
// correction; interleaved node grids avoid denominator collisions).
std::complex<double> faddeeva_w(std::complex<double> z);

// Dawson integral D(x) = e^{-x^2} int_0^x e^{t^2} dt, any real x.
double dawson(double x);

// Complementary error function for complex argument, full plane.
std::complex<double> cerfc(std::complex<double> z);

}  // namespace pudtai
