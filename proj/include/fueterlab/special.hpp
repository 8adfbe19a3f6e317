#pragma once

#include "fueterlab/hypercomplex.hpp"

namespace fueterlab {

// Lanczos approximation (g = 7, 9 terms) with reflection for Re z < 1/2.
Complex complexGamma(Complex z);

// 1/Gamma(z); exact zero at the poles.
Complex reciprocalGamma(Complex z);

Complex complexExpm1(Complex z);

// t^beta for t > 0 on the principal branch.
inline Complex powPositive(double t, Complex beta) { return std::exp(beta * std::log(t)); }

}  // namespace fueterlab
