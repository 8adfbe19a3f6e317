#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "fueterlab/hypercomplex.hpp"
#include "fueterlab/special.hpp"

namespace fueterlab {

struct FracOrder {
  Complex value;
  FracOrder(double a) : value(a) {}
  FracOrder(Complex a) : value(a) {}
};

struct Segment1D {
  double a, b;
  Segment1D(double a_, double b_) : a(a_), b(b_) {
    if (!(a < b)) throw DomainError("segment needs a < b");
  }
};

// Mesh on a segment: `intervals` cells, clustered at both ends with exponent `grading`.
struct Grid1D {
  int intervals = 128;
  double grading = 2.0;
};

struct Profile1D {
  std::function<CQuat(double)> value;
  std::function<CQuat(double)> derivative;  // optional
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

std::vector<double> gradedMesh(double a, double x, const Grid1D& grid);

// Composite graded mesh with extra nodes clustered around each breakpoint in (a, x).
std::vector<double> gradedMesh(double a, double x, const Grid1D& grid, std::span<const double> breakpoints);

// Product integration for int_{t_0}^{x} g(t) (x - t)^(beta - 1) dt on a mesh t_0 < ... < t_M = x,
// exact for g piecewise linear on the mesh. The first cell uses two interior nodes so g is never
// evaluated at t_0 (profiles may blow up there).
class ProductRule {
 public:
  ProductRule(const std::vector<double>& mesh, Complex beta);

  // Rule on [0, 1], cached per (beta, grid).
  static std::shared_ptr<const ProductRule> reference(Complex beta, const Grid1D& grid);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<Complex>& weights() const { return weights_; }
  Complex beta() const { return beta_; }
  Complex reciprocalGammaBeta() const { return rgamma_; }

  template <typename G>
  CQuat sum(G&& g) const {
    CQuat acc;
    for (std::size_t k = 0; k < nodes_.size(); ++k) acc += weights_[k] * g(nodes_[k]);
    return acc;
  }

  // For a reference rule: (1/Gamma(beta)) int_a^x g(t)(x-t)^(beta-1) dt.
  template <typename G>
  CQuat integrate(G&& g, double a, double x) const {
    const double len = x - a;
    const CQuat s = sum([&](double phi) { return g(a + len * phi); });
    return (rgamma_ * powPositive(len, beta_)) * s;
  }

 private:
  std::vector<double> nodes_;
  std::vector<Complex> weights_;
  Complex beta_;
  Complex rgamma_;
};

CQuat rlIntegralLeft(const Profile1D& f, FracOrder alpha, double a, double x, const Grid1D& grid = {});
CQuat rlIntegralRight(const Profile1D& f, FracOrder alpha, double b, double x, const Grid1D& grid = {});

// AC^1 representation when f.derivative is set, otherwise d/dx of the order 1 - alpha integral.
CQuat rlDerivativeLeft(const Profile1D& f, FracOrder alpha, double a, double x, const Grid1D& grid = {});
CQuat rlDerivativeRight(const Profile1D& f, FracOrder alpha, double b, double x, const Grid1D& grid = {});

// AC^1 path on a composite mesh refined around near-singular points of the profile.
CQuat rlDerivativeLeft(const Profile1D& f, FracOrder alpha, double a, double x, const Grid1D& grid,
                       std::span<const double> breakpoints);

// (x - a)^(-alpha) / Gamma(1 - alpha)
Complex rlConstDerivativeOracle(FracOrder alpha, double a, double x);

void requireIntegralOrder(Complex alpha);
void requireDerivativeOrder(Complex alpha);

}  // namespace fueterlab
