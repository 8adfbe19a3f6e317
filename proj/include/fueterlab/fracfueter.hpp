#pragma once

#include <array>
#include <optional>
#include <string>

#include "fueterlab/fueter.hpp"

namespace fueterlab {

class FracOrderVec {
 public:
  FracOrderVec(Complex all) : v_{all, all, all, all} {}
  FracOrderVec(double all) : FracOrderVec(Complex(all)) {}
  FracOrderVec(const std::array<Complex, 4>& v) : v_(v) {}

  const Complex& operator[](int k) const { return v_[k]; }
  const std::array<Complex, 4>& values() const { return v_; }
  // throws OrderOutOfRange unless 0 < Re < 1 on every axis
  void validate() const;

  friend FracOrderVec operator+(const FracOrderVec& a, const FracOrderVec& b) {
    return std::array<Complex, 4>{a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
  }

 private:
  std::array<Complex, 4> v_;
};

// q freezes the coordinates not being differentiated or integrated; x is the active point.
struct AnchoredPoint {
  Point q;
  Point x;
};

// s -> f(q_0, ..., s, ..., q_3) on [a_j, b_j], with the analytic derivative when f has partials.
Profile1D axisProfile(const Field& f, const Point& q, int j);

CQuat fracFueter(const StructuralSet& psi, const FracOrderVec& alpha, const Field& f, const AnchoredPoint& p,
                 const Grid1D& grid, Side side);
CQuat fracFueterLeft(const StructuralSet& psi, const FracOrderVec& alpha, const Field& f, const Box4& box,
                     const AnchoredPoint& p, const Grid1D& grid);
CQuat fracFueterRight(const StructuralSet& psi, const FracOrderVec& alpha, const Field& f, const Box4& box,
                      const AnchoredPoint& p, const Grid1D& grid);

// sum_j I^{alpha_j}[(conj(psi_j) f + conj(f) psi_j) / 2](x_j)
CQuat fracIntegralJ(const StructuralSet& psi, const FracOrderVec& alpha, const Field& f, const Box4& box,
                    const AnchoredPoint& p, const Grid1D& grid);

// (1/m(J_a^x)) int_{J_a^x} sum_k f(q_{tau,k}) (x_k - tau_k)^{alpha_k} / Gamma(alpha_k) dtau, by separability
CQuat calI(const StructuralSet& psi, const FracOrderVec& alpha, const Field& f, const Box4& box,
           const AnchoredPoint& p, const Grid1D& grid);

// calI extended to the closed box: a term with x_k = a_k takes its limit 0.
CQuat calIOnClosure(const FracOrderVec& alpha, const Field& f, const Point& q, const Point& x, const Grid1D& grid);

// The same operators as functions of x with q fixed, for composition and finite differences.
Field fracFueterField(const StructuralSet& psi, const FracOrderVec& alpha, const Field& f, const Point& q,
                      const Grid1D& grid, Side side);
Field fracIntegralJField(const StructuralSet& psi, const FracOrderVec& alpha, const Field& f, const Point& q,
                         const Grid1D& grid);
Field calIField(const FracOrderVec& alpha, const Field& f, const Point& q, const Grid1D& grid);

enum class FracIdentity { Eq5, Eq6, Eq7, Laplacian, Eq8, Eq9, Eq8Right, Eq9Right };

std::string to_string(FracIdentity id);
FracIdentity fracIdentityFromString(const std::string& s);

struct FracContext {
  StructuralSet psi;
  FracOrderVec alpha;
  std::optional<FracOrderVec> beta;
  Field f;
  AnchoredPoint anchored;
  Grid1D grid;
  int nodesPerAxis = 12;  // outer FD step h = min edge / (4 nodesPerAxis)
  double tolerance = 1e-3;

  double fdStep() const { return f.box.minEdge() / (4.0 * nodesPerAxis); }
};

IdentityReport verifyFracIdentity(FracIdentity id, const FracContext& ctx);

}  // namespace fueterlab
