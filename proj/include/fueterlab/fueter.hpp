#pragma once

#include <array>
#include <string>

#include "fueterlab/quadrature.hpp"
#include "fueterlab/report.hpp"

namespace fueterlab {

enum class Smoothness { AnalyticPartials, FdOnly };
enum class Side { Left, Right };

struct Field {
  std::string name;
  Box4 box;
  PointFunction value;
  std::array<PointFunction, 4> partials;  // all set or all empty

  Field(std::string name_, const Box4& box_, PointFunction value_, std::array<PointFunction, 4> partials_ = {})
      : name(std::move(name_)), box(box_), value(std::move(value_)), partials(std::move(partials_)) {}

  Smoothness smoothness() const { return partials[0] ? Smoothness::AnalyticPartials : Smoothness::FdOnly; }
  CQuat operator()(const Point& x) const { return value(x); }
};

// 4th-order central difference of fn along axis k; the stencil must stay in the closed box.
CQuat partialFd(const PointFunction& fn, int k, const Point& x, const Box4& box, double h);
CQuat partial(const Field& f, int k, const Point& x, double h = 0.0);

// Default FD step 1e-4 * edge.
double defaultFdStep(const Box4& box, int k);

CQuat fueterLeft(const StructuralSet& psi, const Field& f, const Point& x, double h = 0.0);
CQuat fueterRight(const StructuralSet& psi, const Field& f, const Point& x, double h = 0.0);
CQuat fueter(const StructuralSet& psi, const Field& f, const Point& x, Side side, double h = 0.0);

// FD-only versions on a bare function, step h on every axis.
CQuat fueterFd(const StructuralSet& psi, const PointFunction& fn, const Point& x, const Box4& box, double h, Side side);
CQuat laplacianFd(const PointFunction& fn, const Point& x, const Box4& box, double h);

// Largest relative mismatch between analytic partials and central differences at the probes.
double checkPartials(const Field& f, const std::vector<Point>& probes);

// Sampled sup norm on a 5^4 lattice of the closed box.
double supNorm(const PointFunction& fn, const Box4& box);

struct KernelValue {
  CQuat value;
  Point sourcePoint;
  Point fieldPoint;
};

// K(d) = conj(d_psi) / (2 pi^2 |d|^4) and its partials in d_i.
Quat kernel(const StructuralSet& psi, const Point& d);
Quat kernelPartial(const StructuralSet& psi, const Point& d, int i);
KernelValue cauchyKernel(const StructuralSet& psi, const Point& tau, const Point& x);

// Right inverse of the Fueter operator: -int_box K(y - x) f(y) dy (resp. f(y) K(y - x)).
CQuat teodorescu(const StructuralSet& psi, const PointFunction& f, const Box4& box, const Point& x,
                 const QuadratureSpec& spec, Side side);
CQuat teodorescuLeft(const StructuralSet& psi, const Field& f, const Box4& box, const Point& x,
                     const QuadratureSpec& spec);
CQuat teodorescuRight(const StructuralSet& psi, const Field& f, const Box4& box, const Point& x,
                      const QuadratureSpec& spec);

IdentityReport borelPompeiuClassicalResidual(const StructuralSet& psi, const Field& f, const Field& g,
                                             const Box4& box, const Point& x, const QuadratureSpec& spec);
IdentityReport stokesClassicalResidual(const StructuralSet& psi, const Field& f, const Field& g, const Box4& box,
                                       const QuadratureSpec& spec);
// psi-D applied by finite differences to the Teodorescu transform, compared with f at the probes.
IdentityReport fueterInverseResidual(const StructuralSet& psi, const Field& f, const Box4& box,
                                     const std::vector<Point>& probes, const QuadratureSpec& spec, Side side);

Field zeroField(const Box4& box);

}  // namespace fueterlab
