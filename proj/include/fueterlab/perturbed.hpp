#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fueterlab/fracfueter.hpp"

namespace fueterlab {

struct Perturbation {
  CQuat u;
  CQuat v;
};

// Pointwise h f and f h.
Field leftMul(const PointFunction& h, const Field& f);
Field rightMul(const Field& f, const PointFunction& h);
// Constant multipliers keep the analytic partials.
Field leftMul(const CQuat& h, const Field& f);
Field rightMul(const Field& f, const CQuat& h);

// D[f] + u f(x) + v I[f] on the left; D_r[f] + f(x) u + I[f] v on the right.
CQuat perturbedFracFueter(const StructuralSet& psi, const FracOrderVec& alpha, const Perturbation& pert,
                          const Field& f, const AnchoredPoint& p, const Grid1D& grid, Side side);
CQuat perturbedFracFueterLeft(const StructuralSet& psi, const FracOrderVec& alpha, const Perturbation& pert,
                              const Field& f, const Box4& box, const AnchoredPoint& p, const Grid1D& grid);
CQuat perturbedFracFueterRight(const StructuralSet& psi, const FracOrderVec& alpha, const Perturbation& pert,
                               const Field& f, const Box4& box, const AnchoredPoint& p, const Grid1D& grid);
Field perturbedFracFueterField(const StructuralSet& psi, const FracOrderVec& alpha, const Perturbation& pert,
                               const Field& f, const Point& q, const Grid1D& grid, Side side);

// I[f](q, x) + T[u f](x) (left) or I[f](q, x) + T_r[f u](x) (right). Defined on the closed box.
CQuat hPotential(const StructuralSet& psi, const FracOrderVec& alpha, const CQuat& u, const Field& f,
                 const AnchoredPoint& p, const Grid1D& grid, const QuadratureSpec& inner, Side side);
CQuat hPotentialLeft(const StructuralSet& psi, const FracOrderVec& alpha, const CQuat& u, const Field& f,
                     const Box4& box, const AnchoredPoint& p, const Grid1D& grid, const QuadratureSpec& inner);
CQuat hPotentialRight(const StructuralSet& psi, const FracOrderVec& alpha, const CQuat& u, const Field& f,
                      const Box4& box, const AnchoredPoint& p, const Grid1D& grid, const QuadratureSpec& inner);
Field hPotentialField(const StructuralSet& psi, const FracOrderVec& alpha, const CQuat& u, const Field& f,
                      const Point& q, const Grid1D& grid, const QuadratureSpec& inner, Side side);

// The potential written as one integral over J_a^x with the combined integrand, by 4D quadrature.
CQuat hPotentialExpandedForm(const StructuralSet& psi, const FracOrderVec& alpha, const CQuat& u, const Field& f,
                             const AnchoredPoint& p, const QuadratureSpec& spec, Side side);

// sum_i D^{alpha_i} in x_i (lower terminal a_i) of K(tau - x), resp. of exp(<u, tau - x>) K(tau - x).
CQuat fracCauchyKernelK(const StructuralSet& psi, const FracOrderVec& alpha, const Point& a, const Point& tau,
                        const Point& x, const Grid1D& grid);
CQuat expCauchyKernelK(const StructuralSet& psi, const FracOrderVec& alpha, const CQuat& u, const Point& a,
                       const Point& tau, const Point& x, const Grid1D& grid);

// sum_{i != j} (I^{alpha_j} f)(q_0, .., x_j, .., q_3) / (Gamma(alpha_i) (x_i - a_i)^{alpha_i})
CQuat correctionN(const FracOrderVec& alpha, const Field& f, const Box4& box, const AnchoredPoint& p,
                  const Grid1D& grid);
// N[f] + N[g] (orders beta) + sum_i D^{alpha_i} T[u f](x) + sum_i D^{beta_i} T_r[g v](x)
CQuat correctionM(const StructuralSet& psi, const FracOrderVec& alpha, const FracOrderVec& beta, const Field& f,
                  const Field& g, const Box4& box, const AnchoredPoint& p, const CQuat& u, const CQuat& v,
                  const Grid1D& grid, const QuadratureSpec& inner);

struct PerturbedContext {
  StructuralSet psi;
  FracOrderVec alpha;
  std::optional<FracOrderVec> beta;
  Perturbation pert;
  Field f;
  Field g;
  AnchoredPoint anchored;
  Grid1D grid;
  QuadratureSpec quad;  // nodesPerAxis drives boundary/volume rules, innerNodes the Teodorescu potentials
  double tolerance = 1e-3;

  const Box4& box() const { return f.box; }
  FracOrderVec betaOrAlpha() const { return beta ? *beta : alpha; }
  double fdStep() const { return f.box.minEdge() / (4.0 * quad.nodesPerAxis); }
  QuadratureSpec innerSpec() const;
};

inline const std::vector<std::string>& propositionIds() {
  static const std::vector<std::string> ids{"p1a", "p1b", "p1c", "p1d", "p1e-left", "p1e-right",
                                            "p1e-laplace", "p2a", "p2b", "p2c", "p2d", "p2e"};
  return ids;
}

IdentityReport verifyPropositionSuite(const std::string& id, const PerturbedContext& ctx);

IdentityReport stokesPerturbedResidual(int part, const PerturbedContext& ctx);

// Assembled boundary - volume - expected at x; expected is 0 outside the closed box.
IdentityReport borelPompeiuPerturbedResidual(int part, const PerturbedContext& ctx, const Point& x);

// Right-hand side of the interior formula at x.
CQuat borelPompeiuPerturbedExpected(int part, const PerturbedContext& ctx, const Point& x);

inline const std::vector<std::string>& corollaryIds() {
  static const std::vector<std::string> ids{"stokes-cauchy-1", "stokes-cauchy-2", "bp-cauchy-1", "bp-cauchy-2"};
  return ids;
}

struct CorollaryResult {
  IdentityReport report;
  double boundaryTerm = 0.0;   // B
  double operatorResidual = 0.0;  // r_op
  double constant = 0.0;       // C
  double quadratureBound = 0.0;
};

// Stokes corollaries: B <= C r_op + quadrature bound. B-P corollaries at x = q: boundary term against
// 4 (f + g)(q) + correction when r_op vanishes, the same bound when r_op <= nearNull, NotApplicable otherwise.
CorollaryResult cauchyCorollaryCheck(const std::string& which, const PerturbedContext& ctx, double nearNull = 1e-3);

// max over an interior 4^4 lattice of the perturbed operator magnitudes of f and g for the given part
double perturbedOperatorResidual(int part, const PerturbedContext& ctx);

}  // namespace fueterlab
