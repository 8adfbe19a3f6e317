#include "fueterlab/fraccalc.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace fueterlab {

namespace {

struct CellMoments {
  Complex e0;  // int_0^d (1-s)^(b-1) ds
  Complex e1;  // int_0^d (1-s)^(b-1) s ds
  Complex d;   // int_0^d (1-s)^(b-1) (d-s) ds
};

CellMoments cellMoments(double delta, Complex beta) {
  CellMoments m{};
  if (delta <= 0.5) {
    Complex c = 1.0;
    double p = delta;
    for (int k = 0; k < 400; ++k) {
      const Complex t0 = c * p / double(k + 1);
      m.e0 += t0;
      m.e1 += c * p * delta / double(k + 2);
      m.d += t0 * delta / double(k + 2);
      if (k > 2 && std::abs(t0) < 1e-18 * std::abs(m.e0)) break;
      c *= (double(k + 1) - beta) / double(k + 1);
      p *= delta;
    }
    return m;
  }
  const double rho = 1.0 - delta;
  Complex oneMinusPb, oneMinusPb1;
  if (rho <= 0.0) {
    oneMinusPb = 1.0;
    oneMinusPb1 = 1.0;
  } else {
    const double lr = std::log(rho);
    oneMinusPb = -complexExpm1(beta * lr);
    oneMinusPb1 = -complexExpm1((beta + 1.0) * lr);
  }
  m.e0 = oneMinusPb / beta;
  m.e1 = m.e0 - oneMinusPb1 / (beta + 1.0);
  m.d = delta * m.e0 - m.e1;
  return m;
}

double gradedPosition(double u, double p) {
  if (u <= 0.5) return 0.5 * std::pow(2.0 * u, p);
  return 1.0 - 0.5 * std::pow(2.0 - 2.0 * u, p);
}

}  // namespace

void requireIntegralOrder(Complex alpha) {
  if (!(alpha.real() > 0.0)) throw OrderOutOfRange("integral order needs Re(alpha) > 0");
}

void requireDerivativeOrder(Complex alpha) {
  if (!(alpha.real() > 0.0 && alpha.real() < 1.0)) throw OrderOutOfRange("derivative order needs 0 < Re(alpha) < 1");
}

std::vector<double> gradedMesh(double a, double x, const Grid1D& grid) {
  const int n = std::max(grid.intervals, 1);
  std::vector<double> mesh(n + 1);
  for (int k = 0; k <= n; ++k) mesh[k] = a + (x - a) * gradedPosition(double(k) / n, grid.grading);
  mesh.front() = a;
  mesh.back() = x;
  return mesh;
}

std::vector<double> gradedMesh(double a, double x, const Grid1D& grid, std::span<const double> breakpoints) {
  std::vector<double> cuts{a};
  for (double b : breakpoints) {
    if (b > cuts.back() && b < x) cuts.push_back(b);
  }
  cuts.push_back(x);
  const int pieces = int(cuts.size()) - 1;
  std::vector<double> mesh{a};
  for (int p = 0; p < pieces; ++p) {
    Grid1D sub = grid;
    sub.intervals = std::max(8, grid.intervals / pieces);
    const auto part = gradedMesh(cuts[p], cuts[p + 1], sub);
    mesh.insert(mesh.end(), part.begin() + 1, part.end());
  }
  return mesh;
}

ProductRule::ProductRule(const std::vector<double>& mesh, Complex beta) : beta_(beta), rgamma_(reciprocalGamma(beta)) {
  requireIntegralOrder(beta);
  const std::size_t cells = mesh.size() - 1;
  if (mesh.size() < 2) throw DomainError("product rule needs at least one cell");
  const double x = mesh.back();
  nodes_.resize(cells + 2);
  weights_.assign(cells + 2, Complex(0.0));
  // slots 0, 1: interior nodes of the first cell; slot k + 1: mesh node k for k >= 1
  for (std::size_t k = 1; k <= cells; ++k) nodes_[k + 1] = mesh[k];
  for (std::size_t i = 0; i < cells; ++i) {
    const double lo = mesh[i];
    const double h = mesh[i + 1] - lo;
    const double big = x - lo;
    const double delta = h / big;
    const CellMoments m = cellMoments(delta, beta);
    const Complex scale = powPositive(big, beta);
    if (i == 0) {
      const double off = 0.5 / std::sqrt(3.0);
      const double xa = h * (0.5 - off);
      const double xb = h * (0.5 + off);
      const Complex m0 = scale * m.e0;
      const Complex m1 = scale * big * m.e1;
      const Complex wb = (m1 - m0 * xa) / (xb - xa);
      nodes_[0] = lo + xa;
      nodes_[1] = lo + xb;
      weights_[0] = m0 - wb;
      weights_[1] = wb;
    } else {
      weights_[i + 1] += scale * m.d / delta;
      weights_[i + 2] += scale * m.e1 / delta;
    }
  }
}

std::shared_ptr<const ProductRule> ProductRule::reference(Complex beta, const Grid1D& grid) {
  using Key = std::tuple<double, double, int, double>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const ProductRule>> cache;
  const Key key{beta.real(), beta.imag(), grid.intervals, grid.grading};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto rule = std::make_shared<const ProductRule>(gradedMesh(0.0, 1.0, grid), beta);
  cache.emplace(key, rule);
  return rule;
}

namespace {

Profile1D reflect(const Profile1D& f) {
  Profile1D g;
  g.value = [v = f.value](double t) { return v(-t); };
  if (f.derivative) g.derivative = [d = f.derivative](double t) { return -d(-t); };
  g.lower = -f.upper;
  g.upper = -f.lower;
  return g;
}

CQuat derivativeFromIntegral(const Profile1D& f, Complex alpha, double a, double x, const Grid1D& grid) {
  const double h = 1e-3 * (x - a);
  auto F = [&](double s) { return rlIntegralLeft(f, 1.0 - alpha, a, s, grid); };
  if (x + 2.0 * h <= f.upper) {
    return (F(x - 2 * h) - 8.0 * F(x - h) + 8.0 * F(x + h) - F(x + 2 * h)) / (12.0 * h);
  }
  return (25.0 * F(x) - 48.0 * F(x - h) + 36.0 * F(x - 2 * h) - 16.0 * F(x - 3 * h) + 3.0 * F(x - 4 * h)) / (12.0 * h);
}

}  // namespace

CQuat rlIntegralLeft(const Profile1D& f, FracOrder alpha, double a, double x, const Grid1D& grid) {
  if (!(x > a)) throw DomainError("RL integral needs x > a");
  requireIntegralOrder(alpha.value);
  return ProductRule::reference(alpha.value, grid)->integrate(f.value, a, x);
}

CQuat rlIntegralRight(const Profile1D& f, FracOrder alpha, double b, double x, const Grid1D& grid) {
  if (!(x < b)) throw DomainError("right RL integral needs x < b");
  return rlIntegralLeft(reflect(f), alpha, -b, -x, grid);
}

CQuat rlDerivativeLeft(const Profile1D& f, FracOrder alpha, double a, double x, const Grid1D& grid) {
  if (!(x > a)) throw DomainError("RL derivative needs x > a");
  requireDerivativeOrder(alpha.value);
  if (!f.derivative) return derivativeFromIntegral(f, alpha.value, a, x, grid);
  const Complex beta = 1.0 - alpha.value;
  const auto rule = ProductRule::reference(beta, grid);
  const double len = x - a;
  const Complex scale = powPositive(len, beta);
  const CQuat tail = rule->sum([&](double phi) { return f.derivative(a + len * phi); });
  return rule->reciprocalGammaBeta() * ((scale / len) * f.value(a) + scale * tail);
}

CQuat rlDerivativeLeft(const Profile1D& f, FracOrder alpha, double a, double x, const Grid1D& grid,
                       std::span<const double> breakpoints) {
  if (breakpoints.empty() || !f.derivative) return rlDerivativeLeft(f, alpha, a, x, grid);
  if (!(x > a)) throw DomainError("RL derivative needs x > a");
  requireDerivativeOrder(alpha.value);
  const Complex beta = 1.0 - alpha.value;
  const ProductRule rule(gradedMesh(a, x, grid, breakpoints), beta);
  const CQuat tail = rule.sum(f.derivative);
  return rule.reciprocalGammaBeta() * (powPositive(x - a, -alpha.value) * f.value(a) + tail);
}

CQuat rlDerivativeRight(const Profile1D& f, FracOrder alpha, double b, double x, const Grid1D& grid) {
  if (!(x < b)) throw DomainError("right RL derivative needs x < b");
  return rlDerivativeLeft(reflect(f), alpha, -b, -x, grid);
}

Complex rlConstDerivativeOracle(FracOrder alpha, double a, double x) {
  if (!(x > a)) throw DomainError("oracle needs x > a");
  return powPositive(x - a, -alpha.value) * reciprocalGamma(1.0 - alpha.value);
}

}  // namespace fueterlab
