#include "fueterlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace fueterlab {

Box4::Box4(const Point& a, const Point& b) : a_(a), b_(b) {
  if (!((b.array() > a.array()).all()) || !a.allFinite() || !b.allFinite()) {
    throw InvalidBox("box needs a_k < b_k on every axis");
  }
}

bool Box4::inClosure(const Point& x, double tol) const {
  return (x.array() >= a_.array() - tol).all() && (x.array() <= b_.array() + tol).all();
}

bool Box4::contains(const Point& x, double tol) const {
  return (x.array() > a_.array() + tol).all() && (x.array() < b_.array() - tol).all();
}

std::array<BoundaryFace, 8> boundaryFaces() {
  std::array<BoundaryFace, 8> faces{};
  for (int k = 0; k < 4; ++k) {
    faces[2 * k] = {k, false};
    faces[2 * k + 1] = {k, true};
  }
  return faces;
}

namespace {

Rule1D computeGaussLegendre(int n) {
  // Golub-Welsch start, polished by Newton on P_n.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  Rule1D rule;
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()[i];
    double dp = 1.0;
    for (int it = 0; it < 3; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      x -= p1 / dp;
    }
    rule.nodes.push_back(0.5 * (x + 1.0));
    rule.weights.push_back(1.0 / ((1.0 - x * x) * dp * dp));
  }
  return rule;
}

template <int D>
using Vec = std::array<double, D>;

// Integrates over the box [lo, hi] (dimension D) with a corner-type singularity at x inside it.
template <int D, typename Visit>
void visitCornerSingular(const Vec<D>& lo, const Vec<D>& hi, const Vec<D>& x, const Rule1D& sRule,
                         const Rule1D& tRule, double eps, double scale, Visit&& visit) {
  const int nt = int(tRule.nodes.size());
  int tCount = 1;
  for (int d = 0; d < D - 1; ++d) tCount *= nt;
  for (int mask = 0; mask < (1 << D); ++mask) {
    Vec<D> extent{}, dir{};
    bool empty = false;
    double vol = 1.0;
    for (int l = 0; l < D; ++l) {
      const bool up = mask & (1 << l);
      dir[l] = up ? 1.0 : -1.0;
      extent[l] = up ? hi[l] - x[l] : x[l] - lo[l];
      if (extent[l] <= 1e-14 * scale) empty = true;
      vol *= extent[l];
    }
    if (empty) continue;
    for (int k = 0; k < D; ++k) {
      std::array<int, D - 1> others{};
      for (int l = 0, m = 0; l < D; ++l) {
        if (l != k) others[m++] = l;
      }
      for (int ti = 0; ti < tCount; ++ti) {
        Vec<D - 1> t{};
        double wt = 1.0;
        double rho2 = extent[k] * extent[k];
        for (int m = 0, rest = ti; m < D - 1; ++m, rest /= nt) {
          const int idx = rest % nt;
          t[m] = tRule.nodes[idx];
          wt *= tRule.weights[idx];
          const double e = t[m] * extent[others[m]];
          rho2 += e * e;
        }
        const double rho = std::sqrt(rho2);
        const double s0 = eps > 0.0 ? eps / rho : 0.0;
        if (s0 >= 1.0) continue;
        for (std::size_t si = 0; si < sRule.nodes.size(); ++si) {
          const double s = s0 + (1.0 - s0) * sRule.nodes[si];
          if (eps == 0.0 && s * rho < 1e-14) throw SingularityOnGrid("quadrature node on the singular point");
          Vec<D> y{};
          y[k] = x[k] + dir[k] * s * extent[k];
          for (int m = 0; m < D - 1; ++m) {
            const int l = others[m];
            y[l] = x[l] + dir[l] * s * t[m] * extent[l];
          }
          double jac = 1.0;
          for (int m = 0; m < D - 1; ++m) jac *= s;
          visit(y, (1.0 - s0) * sRule.weights[si] * wt * jac * vol);
        }
      }
    }
  }
}

struct VolumeRules {
  Rule1D tensor, s, t;
};

VolumeRules rulesFor(const QuadratureSpec& spec, int n) {
  if (n < 1) throw DomainError("nodesPerAxis must be positive");
  if (spec.rule == QuadratureRule::GaussLegendre) {
    const Rule1D& g = gaussLegendre(n);
    return {g, g, g};
  }
  return {gradedTrapezoid(n, 1.0), gradedTrapezoid(n, spec.gradingExponent), gradedTrapezoid(n, 1.0)};
}

template <typename Visit>
void visitWithRules(const Box4& box, const VolumeRules& rules, double eps, const std::optional<Point>& singularAt,
                    Visit&& visit) {
  const double tol = 1e-12 * box.maxEdge();
  if (singularAt && box.inClosure(*singularAt, tol)) {
    Vec<4> lo{}, hi{}, x{};
    for (int k = 0; k < 4; ++k) {
      lo[k] = box.a()[k];
      hi[k] = box.b()[k];
      x[k] = std::clamp((*singularAt)[k], lo[k], hi[k]);
    }
    visitCornerSingular<4>(lo, hi, x, rules.s, rules.t, eps, box.maxEdge(), [&](const Vec<4>& y, double w) {
      visit(Point(y[0], y[1], y[2], y[3]), w);
    });
    return;
  }
  const Rule1D& r = rules.tensor;
  const int n = int(r.nodes.size());
  Point y;
  for (int i0 = 0; i0 < n; ++i0) {
    y[0] = box.a()[0] + box.edge(0) * r.nodes[i0];
    for (int i1 = 0; i1 < n; ++i1) {
      y[1] = box.a()[1] + box.edge(1) * r.nodes[i1];
      for (int i2 = 0; i2 < n; ++i2) {
        y[2] = box.a()[2] + box.edge(2) * r.nodes[i2];
        const double w012 = r.weights[i0] * r.weights[i1] * r.weights[i2];
        for (int i3 = 0; i3 < n; ++i3) {
          y[3] = box.a()[3] + box.edge(3) * r.nodes[i3];
          visit(y, w012 * r.weights[i3] * box.measure());
        }
      }
    }
  }
}

}  // namespace

const Rule1D& gaussLegendre(int n) {
  static std::mutex mutex;
  static std::map<int, Rule1D> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, computeGaussLegendre(n)).first;
  return it->second;
}

Rule1D gradedTrapezoid(int n, double grading) {
  Rule1D rule;
  std::vector<double> t(n + 1);
  for (int i = 0; i <= n; ++i) t[i] = std::pow(double(i) / n, grading);
  rule.nodes = t;
  rule.weights.assign(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    rule.weights[i] += 0.5 * (t[i + 1] - t[i]);
    rule.weights[i + 1] += 0.5 * (t[i + 1] - t[i]);
  }
  return rule;
}

void visitVolumeNodes(const Box4& box, const QuadratureSpec& spec, const std::optional<Point>& singularAt,
                      const NodeVisitor& visit) {
  visitWithRules(box, rulesFor(spec, spec.nodesPerAxis), spec.exclusionRadius, singularAt, visit);
}

CQuat volumeIntegral(const Box4& box, const PointFunction& integrand, const QuadratureSpec& spec,
                     const ScalarWeight& weight, const std::optional<Point>& singularAt) {
  CQuat acc;
  const VolumeRules rules = rulesFor(spec, spec.nodesPerAxis);
  if (weight) {
    visitWithRules(box, rules, spec.exclusionRadius, singularAt,
                   [&](const Point& y, double w) { acc += (w * weight(y)) * integrand(y); });
  } else {
    visitWithRules(box, rules, spec.exclusionRadius, singularAt,
                   [&](const Point& y, double w) { acc += Complex(w) * integrand(y); });
  }
  return acc;
}

CQuat boundaryIntegral(const Box4& box, const PointFunction& left, const PointFunction& right,
                       const StructuralSet& psi, const QuadratureSpec& spec, const ScalarWeight& weight,
                       std::span<const Point> singularPoints) {
  const VolumeRules rules = rulesFor(spec, spec.nodesPerAxis);
  const Rule1D& g = rules.tensor;
  const int n = int(g.nodes.size());
  const double tol = 1e-12 * box.maxEdge();
  CQuat total;
  for (const BoundaryFace& face : boundaryFaces()) {
    const int k = face.axis;
    const double level = face.high ? box.b()[k] : box.a()[k];
    std::array<int, 3> axes{};
    for (int l = 0, m = 0; l < 4; ++l) {
      if (l != k) axes[m++] = l;
    }
    const CQuat normal = CQuat(face.normal() * psi[k]);
    CQuat acc;
    auto add = [&](const Point& y, double w) {
      const CQuat value = left(y) * normal * right(y);
      acc += (weight ? w * weight(y) : Complex(w)) * value;
    };
    const Point* singular = nullptr;
    for (const Point& p : singularPoints) {
      if (std::abs(p[k] - level) <= tol && box.inClosure(p, tol)) {
        singular = &p;
        break;
      }
    }
    if (singular) {
      Vec<3> lo{}, hi{}, x{};
      for (int m = 0; m < 3; ++m) {
        lo[m] = box.a()[axes[m]];
        hi[m] = box.b()[axes[m]];
        x[m] = std::clamp((*singular)[axes[m]], lo[m], hi[m]);
      }
      visitCornerSingular<3>(lo, hi, x, rules.s, rules.t, 0.0, box.maxEdge(), [&](const Vec<3>& z, double w) {
        Point y;
        y[k] = level;
        for (int m = 0; m < 3; ++m) y[axes[m]] = z[m];
        add(y, w);
      });
    } else {
      const double area = box.measure() / box.edge(k);
      Point y;
      y[k] = level;
      for (int i0 = 0; i0 < n; ++i0) {
        y[axes[0]] = box.a()[axes[0]] + box.edge(axes[0]) * g.nodes[i0];
        for (int i1 = 0; i1 < n; ++i1) {
          y[axes[1]] = box.a()[axes[1]] + box.edge(axes[1]) * g.nodes[i1];
          for (int i2 = 0; i2 < n; ++i2) {
            y[axes[2]] = box.a()[axes[2]] + box.edge(axes[2]) * g.nodes[i2];
            add(y, g.weights[i0] * g.weights[i1] * g.weights[i2] * area);
          }
        }
      }
    }
    total += acc;
  }
  return total;
}

ScalarWeight exponentialWeight(const ComplexVec4& uCoords) {
  return [uCoords](const Point& x) {
    Complex e = 0.0;
    for (int k = 0; k < 4; ++k) e += uCoords[k] * x[k];
    return std::exp(e);
  };
}

}  // namespace fueterlab
