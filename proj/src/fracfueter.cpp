#include "fueterlab/fracfueter.hpp"

namespace fueterlab {

void FracOrderVec::validate() const {
  for (const Complex& a : v_) requireDerivativeOrder(a);
}

Profile1D axisProfile(const Field& f, const Point& q, int j) {
  Profile1D p;
  p.value = [&f, q, j](double s) {
    Point y = q;
    y[j] = s;
    return f.value(y);
  };
  if (f.partials[j]) {
    p.derivative = [&f, q, j](double s) {
      Point y = q;
      y[j] = s;
      return f.partials[j](y);
    };
  }
  p.lower = f.box.a()[j];
  p.upper = f.box.b()[j];
  return p;
}

namespace {

void requireAbove(const Box4& box, const Point& x) {
  for (int j = 0; j < 4; ++j) {
    if (!(x[j] > box.a()[j])) throw DomainError("x_" + std::to_string(j) + " <= a_" + std::to_string(j));
  }
}

}  // namespace

CQuat fracFueter(const StructuralSet& psi, const FracOrderVec& alpha, const Field& f, const AnchoredPoint& p,
                 const Grid1D& grid, Side side) {
  requireAbove(f.box, p.x);
  CQuat acc;
  for (int j = 0; j < 4; ++j) {
    const CQuat d = rlDerivativeLeft(axisProfile(f, p.q, j), alpha[j], f.box.a()[j], p.x[j], grid);
    acc += side == Side::Left ? CQuat(psi[j]) * d : d * CQuat(psi[j]);
  }
  return acc;
}

CQuat fracFueterLeft(const StructuralSet& psi, const FracOrderVec& alpha, const Field& f, const Box4& box,
                     const AnchoredPoint& p, const Grid1D& grid) {
  Field g = f;
  g.box = box;
  return fracFueter(psi, alpha, g, p, grid, Side::Left);
}

CQuat fracFueterRight(const StructuralSet& psi, const FracOrderVec& alpha, const Field& f, const Box4& box,
                      const AnchoredPoint& p, const Grid1D& grid) {
  Field g = f;
  g.box = box;
  return fracFueter(psi, alpha, g, p, grid, Side::Right);
}

CQuat fracIntegralJ(const StructuralSet& psi, const FracOrderVec& alpha, const Field& f, const Box4& box,
                    const AnchoredPoint& p, const Grid1D& grid) {
  requireAbove(box, p.x);
  CQuat acc;
  for (int j = 0; j < 4; ++j) {
    const CQuat pj(psi[j]);
    const CQuat pjBar(psi[j].conjugate());
    Profile1D prof;
    prof.value = [&, j](double s) {
      Point y = p.q;
      y[j] = s;
      const CQuat v = f.value(y);
      return 0.5 * (pjBar * v + v.conjugate() * pj);
    };
    acc += rlIntegralLeft(prof, alpha[j], box.a()[j], p.x[j], grid);
  }
  return acc;
}

CQuat calIOnClosure(const FracOrderVec& alpha, const Field& f, const Point& q, const Point& x, const Grid1D& grid) {
  CQuat acc;
  for (int k = 0; k < 4; ++k) {
    const double len = x[k] - f.box.a()[k];
    if (len <= 0.0) continue;
    // Gamma(alpha + 1) / Gamma(alpha) = alpha
    acc += (alpha[k] / len) * rlIntegralLeft(axisProfile(f, q, k), alpha[k] + 1.0, f.box.a()[k], x[k], grid);
  }
  return acc;
}

CQuat calI(const StructuralSet&, const FracOrderVec& alpha, const Field& f, const Box4& box, const AnchoredPoint& p,
           const Grid1D& grid) {
  requireAbove(box, p.x);
  Field g = f;
  g.box = box;
  return calIOnClosure(alpha, g, p.q, p.x, grid);
}

Field fracFueterField(const StructuralSet& psi, const FracOrderVec& alpha, const Field& f, const Point& q,
                      const Grid1D& grid, Side side) {
  return Field("D[" + f.name + "]", f.box,
               [=](const Point& x) { return fracFueter(psi, alpha, f, {q, x}, grid, side); });
}

Field fracIntegralJField(const StructuralSet& psi, const FracOrderVec& alpha, const Field& f, const Point& q,
                         const Grid1D& grid) {
  return Field("J[" + f.name + "]", f.box,
               [=](const Point& x) { return fracIntegralJ(psi, alpha, f, f.box, {q, x}, grid); });
}

Field calIField(const FracOrderVec& alpha, const Field& f, const Point& q, const Grid1D& grid) {
  return Field("I[" + f.name + "]", f.box, [=](const Point& x) {
    requireAbove(f.box, x);
    return calIOnClosure(alpha, f, q, x, grid);
  });
}

std::string to_string(FracIdentity id) {
  switch (id) {
    case FracIdentity::Eq5: return "eq5";
    case FracIdentity::Eq6: return "eq6";
    case FracIdentity::Eq7: return "eq7";
    case FracIdentity::Laplacian: return "laplacian";
    case FracIdentity::Eq8: return "eq8";
    case FracIdentity::Eq9: return "eq9";
    case FracIdentity::Eq8Right: return "eq8-right";
    case FracIdentity::Eq9Right: return "eq9-right";
  }
  return "?";
}

FracIdentity fracIdentityFromString(const std::string& s) {
  for (FracIdentity id : {FracIdentity::Eq5, FracIdentity::Eq6, FracIdentity::Eq7, FracIdentity::Laplacian,
                          FracIdentity::Eq8, FracIdentity::Eq9, FracIdentity::Eq8Right, FracIdentity::Eq9Right}) {
    if (to_string(id) == s) return id;
  }
  throw ConfigError("unknown identity '" + s + "'");
}

namespace {

// sum_j w_j D^{gamma_j}[f along j](x_j), w_j = psi_j^2 or 1, on the requested side
CQuat semigroupRhs(const FracContext& ctx, const FracOrderVec& gamma, bool squared, Side side) {
  CQuat acc;
  for (int j = 0; j < 4; ++j) {
    const CQuat d = rlDerivativeLeft(axisProfile(ctx.f, ctx.anchored.q, j), gamma[j], ctx.f.box.a()[j],
                                     ctx.anchored.x[j], ctx.grid);
    const CQuat w = squared ? CQuat(ctx.psi[j]) * CQuat(ctx.psi[j]) : CQuat::Identity();
    acc += side == Side::Left ? w * d : d * w;
  }
  return acc;
}

}  // namespace

IdentityReport verifyFracIdentity(FracIdentity id, const FracContext& ctx) {
  ctx.alpha.validate();
  const bool semigroup = id == FracIdentity::Eq8 || id == FracIdentity::Eq9 || id == FracIdentity::Eq8Right ||
                         id == FracIdentity::Eq9Right;
  FracOrderVec gamma = ctx.alpha;
  if (semigroup) {
    if (!ctx.beta) throw ConfigError(to_string(id) + " needs a second order vector");
    ctx.beta->validate();
    gamma = ctx.alpha + *ctx.beta;
    gamma.validate();
  }

  const Field& f = ctx.f;
  const Point& q = ctx.anchored.q;
  const Point x = id == FracIdentity::Eq7 ? q : ctx.anchored.x;
  const AnchoredPoint p{q, x};
  const double h = ctx.fdStep();
  CQuat lhs, rhs;

  switch (id) {
    case FracIdentity::Eq5: {
      const Field inner = calIField(ctx.alpha, f, q, ctx.grid);
      lhs = fueterFd(ctx.psi, inner.value, x, f.box, h, Side::Left);
      rhs = fracFueter(ctx.psi, ctx.alpha, f, p, ctx.grid, Side::Left);
      break;
    }
    case FracIdentity::Eq6:
    case FracIdentity::Eq7: {
      const Field inner = fracIntegralJField(ctx.psi, ctx.alpha, f, q, ctx.grid);
      lhs = fracFueter(ctx.psi, ctx.alpha, inner, p, ctx.grid, Side::Left);
      for (int j = 0; j < 4; ++j) {
        Point y = q;
        y[j] = x[j];
        const ComplexVec4 c = psiCoords(ctx.psi, f(y));
        rhs += CQuat(ctx.psi[j]) * c[j];
      }
      break;
    }
    case FracIdentity::Laplacian: {
      const Field inner = fracFueterField(ctx.psi, ctx.alpha, f, q, ctx.grid, Side::Left);
      lhs = fueterFd(ctx.psi.conjugate(), inner.value, x, f.box, h, Side::Left);
      rhs = laplacianFd(calIField(ctx.alpha, f, q, ctx.grid).value, x, f.box, h);
      break;
    }
    case FracIdentity::Eq8:
    case FracIdentity::Eq9:
    case FracIdentity::Eq8Right:
    case FracIdentity::Eq9Right: {
      const bool right = id == FracIdentity::Eq8Right || id == FracIdentity::Eq9Right;
      const bool squared = id == FracIdentity::Eq8 || id == FracIdentity::Eq8Right;
      const Side side = right ? Side::Right : Side::Left;
      const Field inner = fracFueterField(ctx.psi, *ctx.beta, f, q, ctx.grid, side);
      const StructuralSet outerPsi = squared ? ctx.psi : ctx.psi.conjugate();
      lhs = fracFueter(outerPsi, ctx.alpha, inner, p, ctx.grid, side);
      rhs = semigroupRhs(ctx, gamma, squared, side);
      break;
    }
  }

  ResidualAccumulator acc;
  acc.add(lhs, rhs, x);
  GridMeta meta;
  meta.nodes = ctx.nodesPerAxis;
  meta.intervals = ctx.grid.intervals;
  if (id == FracIdentity::Eq5 || id == FracIdentity::Laplacian) meta.fdStep = h;
  return acc.finish(to_string(id), ctx.tolerance, meta);
}

}  // namespace fueterlab
