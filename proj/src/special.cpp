#include "fueterlab/special.hpp"

#include <numbers>

namespace fueterlab {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool isNonPositiveInteger(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

Complex complexGamma(Complex z) {
  constexpr double pi = std::numbers::pi;
  if (isNonPositiveInteger(z)) throw DomainError("Gamma pole at " + std::to_string(z.real()));
  if (z.real() < 0.5) return pi / (std::sin(pi * z) * complexGamma(1.0 - z));
  z -= 1.0;
  Complex x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
  const Complex t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * pi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

Complex reciprocalGamma(Complex z) {
  if (isNonPositiveInteger(z)) return 0.0;
  return 1.0 / complexGamma(z);
}

Complex complexExpm1(Complex z) {
  if (std::abs(z) > 0.5) return std::exp(z) - 1.0;
  // exp(a+ib) - 1 = expm1(a) cos b - 2 sin^2(b/2) + i e^a sin b
  const double a = z.real();
  const double b = z.imag();
  const double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

}  // namespace fueterlab
