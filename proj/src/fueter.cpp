#include "fueterlab/fueter.hpp"

#include <cmath>
#include <numbers>

namespace fueterlab {

namespace {

constexpr double kTwoPiSq = 2.0 * std::numbers::pi * std::numbers::pi;

Point shifted(const Point& x, int k, double s) {
  Point y = x;
  y[k] += s;
  return y;
}

}  // namespace

double defaultFdStep(const Box4& box, int k) { return 1e-4 * box.edge(k); }

CQuat partialFd(const PointFunction& fn, int k, const Point& x, const Box4& box, double h) {
  if (x[k] - 2 * h < box.a()[k] || x[k] + 2 * h > box.b()[k]) {
    throw BoundaryTooClose("FD stencil on axis " + std::to_string(k) + " leaves the box");
  }
  return (fn(shifted(x, k, -2 * h)) - 8.0 * fn(shifted(x, k, -h)) + 8.0 * fn(shifted(x, k, h)) -
          fn(shifted(x, k, 2 * h))) /
         Complex(12.0 * h);
}

CQuat partial(const Field& f, int k, const Point& x, double h) {
  if (f.partials[k]) return f.partials[k](x);
  return partialFd(f.value, k, x, f.box, h > 0.0 ? h : defaultFdStep(f.box, k));
}

CQuat fueter(const StructuralSet& psi, const Field& f, const Point& x, Side side, double h) {
  CQuat acc;
  for (int k = 0; k < 4; ++k) {
    const CQuat d = partial(f, k, x, h);
    acc += side == Side::Left ? CQuat(psi[k]) * d : d * CQuat(psi[k]);
  }
  return acc;
}

CQuat fueterLeft(const StructuralSet& psi, const Field& f, const Point& x, double h) {
  return fueter(psi, f, x, Side::Left, h);
}

CQuat fueterRight(const StructuralSet& psi, const Field& f, const Point& x, double h) {
  return fueter(psi, f, x, Side::Right, h);
}

CQuat fueterFd(const StructuralSet& psi, const PointFunction& fn, const Point& x, const Box4& box, double h, Side side) {
  CQuat acc;
  for (int k = 0; k < 4; ++k) {
    const CQuat d = partialFd(fn, k, x, box, h);
    acc += side == Side::Left ? CQuat(psi[k]) * d : d * CQuat(psi[k]);
  }
  return acc;
}

CQuat laplacianFd(const PointFunction& fn, const Point& x, const Box4& box, double h) {
  const CQuat center = fn(x);
  CQuat acc;
  for (int k = 0; k < 4; ++k) {
    if (x[k] - 2 * h < box.a()[k] || x[k] + 2 * h > box.b()[k]) throw BoundaryTooClose("Laplacian stencil");
    acc += (-1.0 * fn(shifted(x, k, -2 * h)) + 16.0 * fn(shifted(x, k, -h)) - 30.0 * center +
            16.0 * fn(shifted(x, k, h)) - fn(shifted(x, k, 2 * h))) /
           Complex(12.0 * h * h);
  }
  return acc;
}

double checkPartials(const Field& f, const std::vector<Point>& probes) {
  double worst = 0.0;
  if (!f.partials[0]) return worst;
  for (const Point& x : probes) {
    for (int k = 0; k < 4; ++k) {
      const CQuat exact = f.partials[k](x);
      const CQuat fd = partialFd(f.value, k, x, f.box, 1e-3 * f.box.edge(k));
      worst = std::max(worst, (exact - fd).magnitude() / std::max(exact.magnitude(), 1.0));
    }
  }
  return worst;
}

double supNorm(const PointFunction& fn, const Box4& box) {
  double best = 0.0;
  Point y;
  for (int i = 0; i < 625; ++i) {
    for (int k = 0, r = i; k < 4; ++k, r /= 5) y[k] = box.a()[k] + box.edge(k) * (r % 5) / 4.0;
    best = std::max(best, fn(y).magnitude());
  }
  return best;
}

Quat kernel(const StructuralSet& psi, const Point& d) {
  const double r2 = d.squaredNorm();
  return psi.synthesize(d).conjugate() / (kTwoPiSq * r2 * r2);
}

Quat kernelPartial(const StructuralSet& psi, const Point& d, int i) {
  const double r2 = d.squaredNorm();
  const double r6 = r2 * r2 * r2;
  return (psi[i].conjugate() * r2 - 4.0 * d[i] * psi.synthesize(d).conjugate()) / (kTwoPiSq * r6);
}

KernelValue cauchyKernel(const StructuralSet& psi, const Point& tau, const Point& x) {
  const Point d = tau - x;
  if (d.norm() < 1e-14) throw SingularPoint("kernel evaluated at tau = x");
  return {CQuat(kernel(psi, d)), tau, x};
}

CQuat teodorescu(const StructuralSet& psi, const PointFunction& f, const Box4& box, const Point& x,
                 const QuadratureSpec& spec, Side side) {
  const PointFunction integrand = [&](const Point& y) {
    const Quat k = kernel(psi, y - x);
    return side == Side::Left ? k * f(y) : f(y) * k;
  };
  return -volumeIntegral(box, integrand, spec, {}, x);
}

CQuat teodorescuLeft(const StructuralSet& psi, const Field& f, const Box4& box, const Point& x,
                     const QuadratureSpec& spec) {
  return teodorescu(psi, f.value, box, x, spec, Side::Left);
}

CQuat teodorescuRight(const StructuralSet& psi, const Field& f, const Box4& box, const Point& x,
                      const QuadratureSpec& spec) {
  return teodorescu(psi, f.value, box, x, spec, Side::Right);
}

namespace {

GridMeta metaFor(const QuadratureSpec& spec, double fdStep = 0.0) {
  return {spec.nodesPerAxis, spec.exclusionRadius, fdStep, spec.fractional.intervals};
}

}  // namespace

IdentityReport borelPompeiuClassicalResidual(const StructuralSet& psi, const Field& f, const Field& g,
                                             const Box4& box, const Point& x, const QuadratureSpec& spec) {
  const double tol = 1e-12 * box.maxEdge();
  if (box.onBoundary(x, tol)) throw UndefinedOnBoundary("Borel-Pompeiu point on the boundary");
  const bool interior = box.contains(x);
  const PointFunction kx = [&](const Point& t) { return CQuat(kernel(psi, t - x)); };
  const CQuat boundary =
      boundaryIntegral(box, kx, f.value, psi, spec) + boundaryIntegral(box, g.value, kx, psi, spec);
  const PointFunction integrand = [&](const Point& y) {
    const Quat k = kernel(psi, y - x);
    return k * fueterLeft(psi, f, y) + fueterRight(psi, g, y) * k;
  };
  const CQuat volume = volumeIntegral(box, integrand, spec, {}, x);
  const CQuat expected = interior ? f(x) + g(x) : CQuat();
  ResidualAccumulator acc;
  acc.add(boundary - volume, expected, x);
  std::optional<double> scale;
  if (!interior) scale = std::max(supNorm(f.value, box), supNorm(g.value, box));
  auto report = acc.finish(interior ? "borel-pompeiu-interior" : "borel-pompeiu-exterior", 5e-2, metaFor(spec), scale);
  return report;
}

IdentityReport stokesClassicalResidual(const StructuralSet& psi, const Field& f, const Field& g, const Box4& box,
                                       const QuadratureSpec& spec) {
  const CQuat boundary = boundaryIntegral(box, g.value, f.value, psi, spec);
  const PointFunction integrand = [&](const Point& y) {
    return g(y) * fueterLeft(psi, f, y) + fueterRight(psi, g, y) * f(y);
  };
  const CQuat volume = volumeIntegral(box, integrand, spec);
  ResidualAccumulator acc;
  acc.add(boundary, volume, box.center());
  // both sides vanish for hyperholomorphic pairs, so measure against |g f| over the surface
  double area = 0.0;
  for (int k = 0; k < 4; ++k) area += 2.0 * box.measure() / box.edge(k);
  const double gf = supNorm([&](const Point& y) { return g(y) * f(y); }, box);
  const double scale = std::max({boundary.magnitude(), volume.magnitude(), area * gf});
  return acc.finish("stokes", 1e-8, metaFor(spec), scale);
}

IdentityReport fueterInverseResidual(const StructuralSet& psi, const Field& f, const Box4& box,
                                     const std::vector<Point>& probes, const QuadratureSpec& spec, Side side) {
  const double h = box.minEdge() / (4.0 * spec.nodesPerAxis);
  const PointFunction transform = [&](const Point& x) { return teodorescu(psi, f.value, box, x, spec, side); };
  ResidualAccumulator acc;
  for (const Point& x : probes) acc.add(fueterFd(psi, transform, x, box, h, side), f(x), x);
  return acc.finish(side == Side::Left ? "fueter-inverse-left" : "fueter-inverse-right", 5e-2, metaFor(spec, h));
}

Field zeroField(const Box4& box) {
  const PointFunction zero = [](const Point&) { return CQuat(); };
  return Field("zero", box, zero, {zero, zero, zero, zero});
}

}  // namespace fueterlab
