#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fueterlab/fraccalc.hpp"
#include "fueterlab/hypercomplex.hpp"

namespace fueterlab {

// Closed hyperrectangle [a_0, b_0] x ... x [a_3, b_3]; interior is the open box J_a^b.
class Box4 {
 public:
  Box4(const Point& a, const Point& b);
  static Box4 unit() { return Box4(Point::Zero(), Point::Ones()); }

  const Point& a() const { return a_; }
  const Point& b() const { return b_; }
  double edge(int k) const { return b_[k] - a_[k]; }
  double maxEdge() const { return (b_ - a_).maxCoeff(); }
  double minEdge() const { return (b_ - a_).minCoeff(); }
  double measure() const { return (b_ - a_).prod(); }
  Point center() const { return 0.5 * (a_ + b_); }

  bool contains(const Point& x) const { return (x.array() > a_.array()).all() && (x.array() < b_.array()).all(); }
  bool inClosure(const Point& x, double tol = 0.0) const;
  bool onBoundary(const Point& x, double tol) const { return inClosure(x, tol) && !contains(x, tol); }
  // interior with margin tol
  bool contains(const Point& x, double tol) const;

  // J_a^x for x in the box
  Box4 lowerCorner(const Point& x) const { return Box4(a_, x); }

 private:
  Point a_, b_;
};

inline double boxMeasure(const Box4& box) { return box.measure(); }

enum class QuadratureRule { GaussLegendre, GradedTrapezoid };

struct QuadratureSpec {
  int nodesPerAxis = 12;
  QuadratureRule rule = QuadratureRule::GaussLegendre;
  double exclusionRadius = 0.0;
  double gradingExponent = 2.0;
  Grid1D fractional{128, 2.0};
  int innerNodes = 6;  // volume rule used for potentials evaluated inside another quadrature
};

struct BoundaryFace {
  int axis;
  bool high;
  double normal() const { return high ? 1.0 : -1.0; }
};

std::array<BoundaryFace, 8> boundaryFaces();

// Nodes and weights on [0, 1].
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const Rule1D& gaussLegendre(int n);
Rule1D gradedTrapezoid(int n, double grading);

using PointFunction = std::function<CQuat(const Point&)>;
using ScalarWeight = std::function<Complex(const Point&)>;
using NodeVisitor = std::function<void(const Point&, double)>;

// Volume nodes of the rule. With a singular point in the closed box the box is cut into orthant
// boxes with a corner there, each split into pyramids and mapped with a Duffy transform so that
// the |y - x|^-3 singularity is cancelled by the Jacobian. Nodes within exclusionRadius are dropped.
void visitVolumeNodes(const Box4& box, const QuadratureSpec& spec, const std::optional<Point>& singularAt,
                      const NodeVisitor& visit);

CQuat volumeIntegral(const Box4& box, const PointFunction& integrand, const QuadratureSpec& spec,
                     const ScalarWeight& weight = {}, const std::optional<Point>& singularAt = std::nullopt);

// Faces carry sum_k psi_k n_k dS. Singular points lying on a face get the 3D version of the
// Duffy split on that face.
CQuat boundaryIntegral(const Box4& box, const PointFunction& left, const PointFunction& right,
                       const StructuralSet& psi, const QuadratureSpec& spec, const ScalarWeight& weight = {},
                       std::span<const Point> singularPoints = {});

// e^{<u, x>_psi} with u given by its psi-coordinates.
ScalarWeight exponentialWeight(const ComplexVec4& uCoords);

}  // namespace fueterlab
