#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fueterlab/fraccalc.hpp"

using namespace fueterlab;

namespace {

Profile1D scalarProfile(std::function<double(double)> f, std::function<double(double)> df = {}) {
  Profile1D p;
  p.value = [f](double t) { return CQuat::real(f(t)); };
  if (df) p.derivative = [df](double t) { return CQuat::real(df(t)); };
  return p;
}

Profile1D monomial(double a, double mu) {
  return scalarProfile([a, mu](double t) { return std::pow(t - a, mu); },
                       [a, mu](double t) { return mu * std::pow(t - a, mu - 1); });
}

double relErr(const CQuat& got, double want) { return (got - CQuat::real(want)).magnitude() / std::abs(want); }

// D^alpha (t-a)^mu = Gamma(mu+1)/Gamma(mu+1-alpha) (t-a)^(mu-alpha); alpha < 0 gives the integral.
double monomialOracle(double mu, double order, double len) {
  return std::tgamma(mu + 1) / std::tgamma(mu + 1 - order) * std::pow(len, mu - order);
}

const Profile1D kOne = scalarProfile([](double) { return 1.0; }, [](double) { return 0.0; });

}  // namespace

TEST_CASE("gamma") {
  for (double x = 0.1; x < 8.0; x += 0.37) {
    CHECK(std::abs(complexGamma(x).real() / std::tgamma(x) - 1.0) < 1e-13);
  }
  for (double x = -3.7; x < 0.0; x += 0.5) {
    CHECK(std::abs(complexGamma(x).real() / std::tgamma(x) - 1.0) < 1e-12);
  }
  const Complex z(0.3, 1.7);
  CHECK(std::abs(complexGamma(z + 1.0) / (z * complexGamma(z)) - 1.0) < 1e-13);
  const double pi = std::numbers::pi;
  CHECK(std::abs(std::norm(complexGamma(Complex(0, 1))) - pi / std::sinh(pi)) < 1e-13);
  CHECK(reciprocalGamma(-2.0) == 0.0);
  CHECK_THROWS_AS(complexGamma(0.0), DomainError);
}

TEST_CASE("complex expm1") {
  for (Complex z : {Complex(1e-9, 2e-9), Complex(-0.3, 0.2), Complex(0.0, 0.45), Complex(2.0, -1.0)}) {
    CHECK(std::abs(complexExpm1(z) - (std::exp(z) - 1.0)) <= 1e-15 * std::max(1.0, std::abs(std::exp(z))) + 1e-16);
  }
  CHECK(complexExpm1(Complex(1e-12, 0)).real() == std::expm1(1e-12));
}

TEST_CASE("product rule is exact on linear functions") {
  for (Complex beta : {Complex(0.5), Complex(0.25, 0.3), Complex(1e-6), Complex(1.5)}) {
    const ProductRule rule(gradedMesh(0.0, 1.0, {16, 2.0}), beta);
    // int_0^1 (1-t)^(b-1) dt = 1/b, int_0^1 t (1-t)^(b-1) dt = 1/(b(b+1))
    const CQuat m0 = rule.sum([](double) { return CQuat::Identity(); });
    const CQuat m1 = rule.sum([](double t) { return CQuat::real(t); });
    CHECK(std::abs(m0.w() * beta - 1.0) < 1e-12);
    CHECK(std::abs(m1.w() * beta * (beta + 1.0) - 1.0) < 1e-12);
    for (double t : rule.nodes()) CHECK(t > 0.0);
  }
}

TEST_CASE("integral examples") {
  CHECK(relErr(rlIntegralLeft(kOne, 1.0, 0.0, 2.0), 2.0) < 1e-13);
  CHECK(relErr(rlIntegralLeft(kOne, 0.5, 0.0, 1.0), 1.1283791670955126) < 1e-12);
  CHECK(relErr(rlIntegralLeft(monomial(0, 1), 0.5, 0.0, 1.0), 0.75225277806367508) < 1e-12);
  CHECK(relErr(rlIntegralRight(kOne, 1.0, 2.0, 0.0), 2.0) < 1e-13);
  CHECK(relErr(rlIntegralRight(kOne, 0.5, 1.0, 0.0), 1.1283791670955126) < 1e-12);
  const Profile1D zero = scalarProfile([](double) { return 0.0; });
  CHECK(rlIntegralRight(zero, 0.5, 1.0, 0.0).magnitude() == 0.0);
  CHECK_THROWS_AS(rlIntegralLeft(kOne, 0.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(rlIntegralRight(kOne, 0.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(rlIntegralLeft(kOne, -0.5, 0.0, 1.0), OrderOutOfRange);
}

TEST_CASE("derivative examples") {
  CHECK(relErr(rlDerivativeLeft(kOne, 0.5, 0.0, 1.0), 0.56418958354775628) < 1e-12);
  CHECK(relErr(rlDerivativeLeft(monomial(0, 1), 0.5, 0.0, 1.0), 1.1283791670955126) < 1e-12);
  CHECK(relErr(rlDerivativeRight(kOne, 0.5, 1.0, 0.0), 0.56418958354775628) < 1e-12);
  const Profile1D reflected = scalarProfile([](double t) { return 1.0 - t; }, [](double) { return -1.0; });
  CHECK(relErr(rlDerivativeRight(reflected, 0.5, 1.0, 0.0), 1.1283791670955126) < 1e-12);
  const Profile1D zero = scalarProfile([](double) { return 0.0; });
  CHECK(rlDerivativeLeft(zero, 0.3, 0.0, 1.0).magnitude() == 0.0);
  CHECK(rlDerivativeRight(zero, 0.3, 1.0, 0.0).magnitude() == 0.0);
  CHECK_THROWS_AS(rlDerivativeLeft(kOne, 1.2, 0.0, 1.0), OrderOutOfRange);
  CHECK_THROWS_AS(rlDerivativeLeft(kOne, 0.5, 0.0, 0.0), DomainError);
}

TEST_CASE("constant derivative oracle") {
  CHECK(std::abs(rlConstDerivativeOracle(0.5, 0.0, 1.0) - 0.56418958354775628) < 1e-15);
  CHECK(std::abs(rlConstDerivativeOracle(0.5, 0.0, 4.0) - 0.28209479177387814) < 1e-15);
  CHECK(std::abs(rlConstDerivativeOracle(1e-6, 0.0, 1.0) - 1.0) < 1e-4);
  CHECK_THROWS_AS(rlConstDerivativeOracle(0.5, 1.0, 1.0), DomainError);
}

TEST_CASE("AC1 and integral-differentiation paths agree") {
  const Profile1D withD = scalarProfile([](double t) { return std::sin(t) + t * t; },
                                        [](double t) { return std::cos(t) + 2 * t; });
  Profile1D noD = withD;
  noD.derivative = {};
  for (double alpha : {0.25, 0.5, 0.75}) {
    for (double x : {0.3, 1.0, 2.5}) {
      const CQuat p = rlDerivativeLeft(withD, alpha, 0.0, x);
      const CQuat q = rlDerivativeLeft(noD, alpha, 0.0, x);
      CHECK((p - q).magnitude() <= 1e-4 * p.magnitude());
    }
  }
  const CQuat p = rlDerivativeRight(withD, 0.4, 2.0, 0.5);
  const CQuat q = rlDerivativeRight(noD, 0.4, 2.0, 0.5);
  CHECK((p - q).magnitude() <= 1e-4 * p.magnitude());
}

TEST_CASE("complex order against Gamma-ratio oracle") {
  const Complex alpha(0.4, 0.3);
  const double len = 1.7;
  const CQuat got = rlDerivativeLeft(monomial(0.0, 2.0), alpha, 0.0, len);
  const Complex want = complexGamma(3.0) / complexGamma(3.0 - alpha) * std::exp((2.0 - alpha) * std::log(len));
  CHECK(std::abs(got.w() - want) <= 1e-6 * std::abs(want));
  const CQuat integral = rlIntegralLeft(monomial(0.0, 1.0), alpha, 0.0, len);
  const Complex wantI = complexGamma(2.0) / complexGamma(2.0 + alpha) * std::exp((1.0 + alpha) * std::log(len));
  CHECK(std::abs(integral.w() - wantI) <= 1e-6 * std::abs(wantI));
}

TEST_CASE("fundamental theorem D^a I^a f = f") {
  struct Case { Profile1D f; std::function<double(double)> exact; };
  const std::vector<Case> cases = {
      {kOne, [](double) { return 1.0; }},
      {monomial(0, 1), [](double t) { return t; }},
      {monomial(0, 2), [](double t) { return t * t; }},
      {scalarProfile([](double t) { return std::sin(t); }, [](double t) { return std::cos(t); }),
       [](double t) { return std::sin(t); }},
  };
  const double a = 0.0, b = 2.0;
  for (const auto& c : cases) {
    for (double alpha : {0.25, 0.5, 0.75}) {
      Profile1D left;
      left.value = [&](double t) { return rlIntegralLeft(c.f, alpha, a, t); };
      left.upper = b;
      Profile1D right;
      right.value = [&](double t) { return rlIntegralRight(c.f, alpha, b, t); };
      right.lower = a;
      for (double x : {0.5, 1.3}) {
        CHECK(relErr(rlDerivativeLeft(left, alpha, a, x), c.exact(x)) < 1e-3);
        CHECK(relErr(rlDerivativeRight(right, alpha, b, x), c.exact(x)) < 1e-3);
      }
    }
  }
}

TEST_CASE("semigroup on monomials") {
  const double a = 0.5, x = 1.6;
  for (double mu : {1.0, 2.0}) {
    for (auto [alpha, beta] : {std::pair{0.25, 0.25}, std::pair{0.3, 0.6}, std::pair{0.1, 0.45}}) {
      Profile1D inner;
      inner.value = [&, beta = beta](double t) { return rlDerivativeLeft(monomial(a, mu), beta, a, t); };
      inner.upper = 3.0;
      const CQuat got = rlDerivativeLeft(inner, alpha, a, x);
      CHECK(relErr(got, monomialOracle(mu, alpha + beta, x - a)) < 1e-3);
    }
  }
}

TEST_CASE("linearity") {
  const Profile1D f = scalarProfile([](double t) { return std::exp(t); }, [](double t) { return std::exp(t); });
  Profile1D g;
  g.value = [](double t) { return CQuat(Quat(0, t, 0, 1)); };
  g.derivative = [](double) { return CQuat(Quat(0, 1, 0, 0)); };
  const Complex c(0.7, -0.2);
  Profile1D h;
  h.value = [&](double t) { return c * f.value(t) + g.value(t); };
  h.derivative = [&](double t) { return c * f.derivative(t) + g.derivative(t); };
  const CQuat lhs = rlDerivativeLeft(h, 0.35, 0.0, 1.2);
  const CQuat rhs = c * rlDerivativeLeft(f, 0.35, 0.0, 1.2) + rlDerivativeLeft(g, 0.35, 0.0, 1.2);
  CHECK((lhs - rhs).magnitude() <= 16 * 2.2e-16 * lhs.magnitude());
  const CQuat li = rlIntegralLeft(h, 0.35, 0.0, 1.2);
  const CQuat ri = c * rlIntegralLeft(f, 0.35, 0.0, 1.2) + rlIntegralLeft(g, 0.35, 0.0, 1.2);
  CHECK((li - ri).magnitude() <= 16 * 2.2e-16 * li.magnitude());
}

TEST_CASE("convergence on t^2 under mesh doubling") {
  Profile1D f = monomial(0.0, 2.0);
  f.derivative = {};  // the AC1 path is exact here
  const double want = monomialOracle(2.0, 0.5, 1.0);
  double previous = 0.0;
  for (int n : {8, 16, 32, 64}) {
    const double err = relErr(rlDerivativeLeft(f, 0.5, 0.0, 1.0, {n, 2.0}), want);
    if (previous > 0.0) CHECK(previous / err >= 1.8);
    previous = err;
  }
}
