#include "fueterlab/perturbed.hpp"

#include <cmath>
#include <memory>

namespace fueterlab {

namespace {

bool isZero(const CQuat& q) { return q == CQuat(); }

CQuat mulSide(const CQuat& h, const CQuat& f, Side side) { return side == Side::Left ? h * f : f * h; }

Complex dotCoords(const ComplexVec4& c, const Point& y) {
  Complex s = 0.0;
  for (int k = 0; k < 4; ++k) s += c[k] * y[k];
  return s;
}

// Remembers the last evaluation so a factor can be tested for zero without computing it twice.
PointFunction memoized(PointFunction fn) {
  struct State {
    bool has = false;
    Point at;
    CQuat value;
  };
  auto st = std::make_shared<State>();
  return [fn = std::move(fn), st](const Point& y) {
    if (!st->has || st->at != y) {
      st->value = fn(y);
      st->at = y;
      st->has = true;
    }
    return st->value;
  };
}

GridMeta metaOf(const PerturbedContext& ctx, double h = 0.0) {
  GridMeta m;
  m.nodes = ctx.quad.nodesPerAxis;
  m.epsilon = ctx.quad.exclusionRadius;
  m.fdStep = h;
  m.intervals = ctx.grid.intervals;
  return m;
}

std::vector<Point> interiorLattice(const Box4& box, int n) {
  std::vector<Point> pts;
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int i3 = 0; i3 < n; ++i3) {
          const Point t((i0 + 0.5) / n, (i1 + 0.5) / n, (i2 + 0.5) / n, (i3 + 0.5) / n);
          pts.push_back(box.a() + (box.b() - box.a()).cwiseProduct(t));
        }
  return pts;
}

double latticeSup(const PointFunction& fn, const std::vector<Point>& pts) {
  double m = 0.0;
  for (const Point& y : pts) m = std::max(m, fn(y).magnitude());
  return m;
}

}  // namespace

Field leftMul(const PointFunction& h, const Field& f) {
  return Field("h*" + f.name, f.box, [h, f](const Point& x) { return h(x) * f(x); });
}

Field rightMul(const Field& f, const PointFunction& h) {
  return Field(f.name + "*h", f.box, [h, f](const Point& x) { return f(x) * h(x); });
}

Field leftMul(const CQuat& h, const Field& f) {
  std::array<PointFunction, 4> partials;
  if (f.smoothness() == Smoothness::AnalyticPartials) {
    for (int k = 0; k < 4; ++k) partials[k] = [h, d = f.partials[k]](const Point& x) { return h * d(x); };
  }
  return Field("c*" + f.name, f.box, [h, f](const Point& x) { return h * f(x); }, partials);
}

Field rightMul(const Field& f, const CQuat& h) {
  std::array<PointFunction, 4> partials;
  if (f.smoothness() == Smoothness::AnalyticPartials) {
    for (int k = 0; k < 4; ++k) partials[k] = [h, d = f.partials[k]](const Point& x) { return d(x) * h; };
  }
  return Field(f.name + "*c", f.box, [h, f](const Point& x) { return f(x) * h; }, partials);
}

CQuat perturbedFracFueter(const StructuralSet& psi, const FracOrderVec& alpha, const Perturbation& pert,
                          const Field& f, const AnchoredPoint& p, const Grid1D& grid, Side side) {
  CQuat r = fracFueter(psi, alpha, f, p, grid, side);
  if (!isZero(pert.u)) r += mulSide(pert.u, f(p.x), side);
  if (!isZero(pert.v)) r += mulSide(pert.v, calIOnClosure(alpha, f, p.q, p.x, grid), side);
  return r;
}

CQuat perturbedFracFueterLeft(const StructuralSet& psi, const FracOrderVec& alpha, const Perturbation& pert,
                              const Field& f, const Box4& box, const AnchoredPoint& p, const Grid1D& grid) {
  Field g = f;
  g.box = box;
  return perturbedFracFueter(psi, alpha, pert, g, p, grid, Side::Left);
}

CQuat perturbedFracFueterRight(const StructuralSet& psi, const FracOrderVec& alpha, const Perturbation& pert,
                               const Field& f, const Box4& box, const AnchoredPoint& p, const Grid1D& grid) {
  Field g = f;
  g.box = box;
  return perturbedFracFueter(psi, alpha, pert, g, p, grid, Side::Right);
}

Field perturbedFracFueterField(const StructuralSet& psi, const FracOrderVec& alpha, const Perturbation& pert,
                               const Field& f, const Point& q, const Grid1D& grid, Side side) {
  return Field("Dp[" + f.name + "]", f.box,
               [=](const Point& x) { return perturbedFracFueter(psi, alpha, pert, f, {q, x}, grid, side); });
}

CQuat hPotential(const StructuralSet& psi, const FracOrderVec& alpha, const CQuat& u, const Field& f,
                 const AnchoredPoint& p, const Grid1D& grid, const QuadratureSpec& inner, Side side) {
  CQuat r = calIOnClosure(alpha, f, p.q, p.x, grid);
  if (!isZero(u)) {
    const PointFunction uf = [&](const Point& y) { return mulSide(u, f(y), side); };
    r += teodorescu(psi, uf, f.box, p.x, inner, side);
  }
  return r;
}

CQuat hPotentialLeft(const StructuralSet& psi, const FracOrderVec& alpha, const CQuat& u, const Field& f,
                     const Box4& box, const AnchoredPoint& p, const Grid1D& grid, const QuadratureSpec& inner) {
  Field g = f;
  g.box = box;
  return hPotential(psi, alpha, u, g, p, grid, inner, Side::Left);
}

CQuat hPotentialRight(const StructuralSet& psi, const FracOrderVec& alpha, const CQuat& u, const Field& f,
                      const Box4& box, const AnchoredPoint& p, const Grid1D& grid, const QuadratureSpec& inner) {
  Field g = f;
  g.box = box;
  return hPotential(psi, alpha, u, g, p, grid, inner, Side::Right);
}

Field hPotentialField(const StructuralSet& psi, const FracOrderVec& alpha, const CQuat& u, const Field& f,
                      const Point& q, const Grid1D& grid, const QuadratureSpec& inner, Side side) {
  return Field("H[" + f.name + "]", f.box,
               [=](const Point& x) { return hPotential(psi, alpha, u, f, {q, x}, grid, inner, side); });
}

CQuat hPotentialExpandedForm(const StructuralSet& psi, const FracOrderVec& alpha, const CQuat& u, const Field& f,
                             const AnchoredPoint& p, const QuadratureSpec& spec, Side side) {
  const Box4 jx(f.box.a(), p.x);
  const double m = jx.measure();
  std::array<Complex, 4> rg;
  for (int k = 0; k < 4; ++k) rg[k] = reciprocalGamma(alpha[k]);
  const PointFunction integrand = [&](const Point& tau) {
    CQuat acc;
    for (int k = 0; k < 4; ++k) {
      Point y = p.q;
      y[k] = tau[k];
      acc += (powPositive(p.x[k] - tau[k], alpha[k]) * rg[k] / m) * f(y);
    }
    const CQuat kern(kernel(psi, tau - p.x));
    acc += side == Side::Left ? kern * u * f(tau) : f(tau) * u * kern;
    return acc;
  };
  return volumeIntegral(jx, integrand, spec, {}, p.x);
}

namespace {

CQuat kernelSum(const StructuralSet& psi, const FracOrderVec& alpha, const ComplexVec4* uc, const Point& a,
                const Point& tau, const Point& x, const Grid1D& grid) {
  CQuat acc;
  for (int i = 0; i < 4; ++i) {
    const double len = x[i] - a[i];
    if (!(len > 0.0)) throw DomainError("kernel needs x_i > a_i");
    double rho2 = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (k != i) rho2 += (tau[k] - x[k]) * (tau[k] - x[k]);
    }
    const double rho = std::sqrt(rho2);
    const bool alongSegment = tau[i] >= a[i] && tau[i] <= x[i];
    if (alongSegment && rho <= 1e-12 * std::max(1.0, len)) {
      throw SingularPath("kernel profile along axis " + std::to_string(i) + " passes through the source point");
    }
    const auto diff = [&, i](double s) {
      Point d = tau - x;
      d[i] = tau[i] - s;
      return d;
    };
    Profile1D prof;
    if (uc) {
      prof.value = [&, diff](double s) {
        const Point d = diff(s);
        return std::exp(dotCoords(*uc, d)) * CQuat(kernel(psi, d));
      };
      prof.derivative = [&, diff, i](double s) {
        const Point d = diff(s);
        const Complex e = std::exp(dotCoords(*uc, d));
        return -(e * ((*uc)[i] * CQuat(kernel(psi, d)) + CQuat(kernelPartial(psi, d, i))));
      };
    } else {
      prof.value = [&, diff](double s) { return CQuat(kernel(psi, diff(s))); };
      prof.derivative = [&, diff, i](double s) { return -CQuat(kernelPartial(psi, diff(s), i)); };
    }
    prof.lower = a[i];
    prof.upper = x[i];
    if (tau[i] > a[i] && tau[i] < x[i] && rho < 0.25 * len) {
      const double bp[] = {tau[i]};
      acc += rlDerivativeLeft(prof, alpha[i], a[i], x[i], grid, bp);
    } else {
      acc += rlDerivativeLeft(prof, alpha[i], a[i], x[i], grid);
    }
  }
  return acc;
}

}  // namespace

CQuat fracCauchyKernelK(const StructuralSet& psi, const FracOrderVec& alpha, const Point& a, const Point& tau,
                        const Point& x, const Grid1D& grid) {
  return kernelSum(psi, alpha, nullptr, a, tau, x, grid);
}

CQuat expCauchyKernelK(const StructuralSet& psi, const FracOrderVec& alpha, const CQuat& u, const Point& a,
                       const Point& tau, const Point& x, const Grid1D& grid) {
  if (isZero(u)) return fracCauchyKernelK(psi, alpha, a, tau, x, grid);
  const ComplexVec4 uc = psiCoords(psi, u);
  return kernelSum(psi, alpha, &uc, a, tau, x, grid);
}

CQuat correctionN(const FracOrderVec& alpha, const Field& f, const Box4& box, const AnchoredPoint& p,
                  const Grid1D& grid) {
  Field g = f;
  g.box = box;
  std::array<CQuat, 4> integrals;
  std::array<Complex, 4> weights;
  for (int k = 0; k < 4; ++k) {
    const double len = p.x[k] - box.a()[k];
    if (!(len > 0.0)) throw DomainError("correction needs x_i > a_i");
    integrals[k] = rlIntegralLeft(axisProfile(g, p.q, k), alpha[k], box.a()[k], p.x[k], grid);
    weights[k] = reciprocalGamma(alpha[k]) * powPositive(len, -alpha[k]);
  }
  CQuat acc;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) acc += weights[i] * integrals[j];
    }
  }
  return acc;
}

namespace {

// sum_i D^{order_i} in x_i of the Teodorescu transform of h
CQuat teodorescuDerivativeSum(const StructuralSet& psi, const FracOrderVec& order, const PointFunction& h,
                              const Box4& box, const Point& x, const Grid1D& grid, const QuadratureSpec& inner,
                              Side side) {
  CQuat acc;
  for (int i = 0; i < 4; ++i) {
    Profile1D prof;
    prof.value = [&, i](double s) {
      Point y = x;
      y[i] = s;
      return teodorescu(psi, h, box, y, inner, side);
    };
    prof.lower = box.a()[i];
    prof.upper = box.b()[i];
    acc += rlDerivativeLeft(prof, order[i], box.a()[i], x[i], grid);
  }
  return acc;
}

}  // namespace

CQuat correctionM(const StructuralSet& psi, const FracOrderVec& alpha, const FracOrderVec& beta, const Field& f,
                  const Field& g, const Box4& box, const AnchoredPoint& p, const CQuat& u, const CQuat& v,
                  const Grid1D& grid, const QuadratureSpec& inner) {
  CQuat r = correctionN(alpha, f, box, p, grid) + correctionN(beta, g, box, p, grid);
  if (!isZero(u)) {
    const PointFunction uf = [&](const Point& y) { return u * f(y); };
    r += teodorescuDerivativeSum(psi, alpha, uf, box, p.x, grid, inner, Side::Left);
  }
  if (!isZero(v)) {
    const PointFunction gv = [&](const Point& y) { return g(y) * v; };
    r += teodorescuDerivativeSum(psi, beta, gv, box, p.x, grid, inner, Side::Right);
  }
  return r;
}

QuadratureSpec PerturbedContext::innerSpec() const {
  QuadratureSpec s = quad;
  s.nodesPerAxis = quad.innerNodes;
  return s;
}

namespace {

// sum_j w_j D^{gamma_j}[f along j](x_j) with w_j psi_j on both sides (squared) or nothing
CQuat semigroupTerm(const PerturbedContext& ctx, const FracOrderVec& gamma, bool framed, Side side) {
  CQuat acc;
  const Field& f = ctx.f;
  for (int j = 0; j < 4; ++j) {
    const CQuat d =
        rlDerivativeLeft(axisProfile(f, ctx.anchored.q, j), gamma[j], f.box.a()[j], ctx.anchored.x[j], ctx.grid);
    if (!framed) {
      acc += d;
    } else {
      const CQuat pj(ctx.psi[j]);
      acc += side == Side::Left ? pj * pj * d : pj * d * pj;
    }
  }
  return acc;
}

}  // namespace

IdentityReport verifyPropositionSuite(const std::string& id, const PerturbedContext& ctx) {
  ctx.alpha.validate();
  const StructuralSet& psi = ctx.psi;
  const StructuralSet psiBar = psi.conjugate();
  const Field& f = ctx.f;
  const Box4& box = f.box;
  const Point& q = ctx.anchored.q;
  const Point& x = ctx.anchored.x;
  const AnchoredPoint& p = ctx.anchored;
  const Grid1D& grid = ctx.grid;
  const FracOrderVec& al = ctx.alpha;
  const FracOrderVec be = ctx.betaOrAlpha();
  be.validate();
  const CQuat u = ctx.pert.u;
  const CQuat v = ctx.pert.v;
  const QuadratureSpec inner = ctx.innerSpec();
  const double h = ctx.fdStep();
  const ComplexVec4 uc = psiCoords(psi, u);
  const Complex ex = std::exp(dotCoords(uc, x));
  const auto expField = [&](const FracOrderVec& ord) {
    return Field("eI", box, [&, ord](const Point& y) {
      return std::exp(dotCoords(uc, y)) * calIOnClosure(ord, f, q, y, grid);
    });
  };

  ResidualAccumulator acc;
  double step = h;

  if (id == "p1a" || id == "p1b") {
    const Side side = id == "p1a" ? Side::Left : Side::Right;
    const Field pot = hPotentialField(psi, al, u, f, q, grid, inner, side);
    acc.add(fueterFd(psi, pot.value, x, box, h, side), perturbedFracFueter(psi, al, {u, {}}, f, p, grid, side), x);
  } else if (id == "p1c") {
    const Field j = fracIntegralJField(psi, al, f, q, grid);
    CQuat recon;
    for (int k = 0; k < 4; ++k) {
      Point y = q;
      y[k] = x[k];
      recon += CQuat(psi[k]) * psiCoords(psi, f(y))[k];
    }
    const CQuat jx = j(x);
    acc.add(perturbedFracFueter(psi, al, {u, {}}, j, p, grid, Side::Left), recon + u * jx, x);
    acc.add(perturbedFracFueter(psi, al, {u, {}}, j, p, grid, Side::Right), recon + jx * u, x);
  } else if (id == "p1d") {
    const CQuat lap = laplacianFd(calIField(al, f, q, grid).value, x, box, h);
    const Field pl = perturbedFracFueterField(psi, al, {u, {}}, f, q, grid, Side::Left);
    acc.add(fueterFd(psiBar, pl.value, x, box, h, Side::Left), lap + fueterLeft(psiBar, leftMul(u, f), x), x);
    const Field pr = perturbedFracFueterField(psi, al, {u, {}}, f, q, grid, Side::Right);
    acc.add(fueterFd(psiBar, pr.value, x, box, h, Side::Right), lap + fueterRight(psiBar, rightMul(f, u), x), x);
  } else if (id == "p1e-left" || id == "p1e-right" || id == "p1e-laplace") {
    step = 0.0;
    const bool laplace = id == "p1e-laplace";
    const FracOrderVec inOrd = laplace ? al : be;
    const CQuat vv = laplace ? u.conjugate() : v;
    (al + inOrd).validate();
    const FracOrderVec gamma = al + inOrd;
    const CQuat fx = f(x);
    if (id == "p1e-left" || laplace) {
      const Field in = perturbedFracFueterField(psi, inOrd, {vv, {}}, f, q, grid, Side::Left);
      const StructuralSet& outer = laplace ? psiBar : psi;
      const CQuat lhs = perturbedFracFueter(outer, al, {u, {}}, in, p, grid, Side::Left);
      const CQuat rhs = semigroupTerm(ctx, gamma, !laplace, Side::Left) +
                        u * fracFueter(psi, inOrd, f, p, grid, Side::Left) +
                        fracFueter(outer, al, leftMul(vv, f), p, grid, Side::Left) + u * vv * fx;
      acc.add(lhs, rhs, x);
    } else {
      const Field in = perturbedFracFueterField(psi, be, {v, {}}, f, q, grid, Side::Right);
      const CQuat lhs = perturbedFracFueter(psi, al, {u, {}}, in, p, grid, Side::Left);
      const CQuat rhs = semigroupTerm(ctx, gamma, true, Side::Right) +
                        u * fracFueter(psi, be, f, p, grid, Side::Right) +
                        fracFueter(psi, al, f, p, grid, Side::Left) * v + u * fx * v;
      acc.add(lhs, rhs, x);
    }
  } else if (id == "p2a" || id == "p2b") {
    // both sides divided by the nonvanishing scalar exp(<u, x>)
    const Side side = id == "p2a" ? Side::Left : Side::Right;
    const FracOrderVec& ord = side == Side::Left ? al : be;
    const Field ei = expField(ord);
    acc.add(fueterFd(psi, ei.value, x, box, h, side) / ex, perturbedFracFueter(psi, ord, {{}, u}, f, p, grid, side),
            x);
  } else if (id == "p2c" || id == "p2d") {
    const Side side = id == "p2c" ? Side::Left : Side::Right;
    const FracOrderVec& ord = side == Side::Left ? al : be;
    const Field ep("eD", box, [&](const Point& y) {
      return std::exp(dotCoords(uc, y)) * perturbedFracFueter(psi, ord, {{}, u}, f, {q, y}, grid, side);
    });
    const Field ei = expField(ord);
    acc.add(fueterFd(psiBar, ep.value, x, box, h, side) / ex, laplacianFd(ei.value, x, box, h) / ex, x);
  } else if (id == "p2e") {
    step = 0.0;
    const Field in = perturbedFracFueterField(psi, be, {{}, v}, f, q, grid, Side::Left);
    const CQuat lhs = perturbedFracFueter(psiBar, al, {{}, u}, in, p, grid, Side::Left);
    const Field dB = fracFueterField(psi, be, f, q, grid, Side::Left);
    const Field iB = calIField(be, f, q, grid);
    const CQuat rhs = fracFueter(psiBar, al, dB, p, grid, Side::Left) +
                      fracFueter(psiBar, al, leftMul(v, iB), p, grid, Side::Left) +
                      u * calIOnClosure(al, dB, q, x, grid) + u * v * calIOnClosure(al, iB, q, x, grid);
    acc.add(lhs, rhs, x);
  } else {
    throw ConfigError("unknown proposition identity '" + id + "'");
  }
  return acc.finish(id, ctx.tolerance, metaOf(ctx, step));
}

IdentityReport stokesPerturbedResidual(int part, const PerturbedContext& ctx) {
  if (part != 1 && part != 2) throw ConfigError("Stokes part must be 1 or 2");
  const StructuralSet& psi = ctx.psi;
  const Box4& box = ctx.box();
  const Point& q = ctx.anchored.q;
  const FracOrderVec be = ctx.betaOrAlpha();
  const CQuat u = ctx.pert.u;
  const CQuat v = ctx.pert.v;
  const QuadratureSpec inner = ctx.innerSpec();
  Field g = ctx.g;
  g.box = box;

  CQuat boundary, volume;
  if (part == 1) {
    const Field pf = hPotentialField(psi, ctx.alpha, u, ctx.f, q, ctx.grid, inner, Side::Left);
    const Field pg = hPotentialField(psi, be, v, g, q, ctx.grid, inner, Side::Right);
    boundary = boundaryIntegral(box, pg.value, pf.value, psi, ctx.quad);
    const PointFunction integrand = [&](const Point& y) {
      return pg(y) * perturbedFracFueter(psi, ctx.alpha, {u, {}}, ctx.f, {q, y}, ctx.grid, Side::Left) +
             perturbedFracFueter(psi, be, {v, {}}, g, {q, y}, ctx.grid, Side::Right) * pf(y);
    };
    volume = volumeIntegral(box, integrand, ctx.quad);
  } else {
    const ComplexVec4 w = psiCoords(psi, u + v);
    const ScalarWeight weight = [w](const Point& y) { return std::exp(dotCoords(w, y)); };
    const PointFunction pf = [&](const Point& y) { return calIOnClosure(ctx.alpha, ctx.f, q, y, ctx.grid); };
    const PointFunction pg = [&](const Point& y) { return calIOnClosure(be, g, q, y, ctx.grid); };
    boundary = boundaryIntegral(box, pg, pf, psi, ctx.quad, weight);
    const PointFunction integrand = [&](const Point& y) {
      return pg(y) * perturbedFracFueter(psi, ctx.alpha, {{}, u}, ctx.f, {q, y}, ctx.grid, Side::Left) +
             perturbedFracFueter(psi, be, {{}, v}, g, {q, y}, ctx.grid, Side::Right) * pf(y);
    };
    volume = volumeIntegral(box, integrand, ctx.quad, weight);
  }
  ResidualAccumulator acc;
  acc.add(boundary, volume, box.center());
  return acc.finish("stokes-perturbed-" + std::to_string(part), 5e-2, metaOf(ctx));
}

namespace {

struct BpTerms {
  CQuat boundary;
  CQuat volume;
};

BpTerms borelPompeiuTerms(int part, const PerturbedContext& ctx, const Point& x, bool withVolume) {
  const StructuralSet& psi = ctx.psi;
  const Box4& box = ctx.box();
  const Point& q = ctx.anchored.q;
  const Point a = box.a();
  const FracOrderVec& al = ctx.alpha;
  const FracOrderVec be = ctx.betaOrAlpha();
  const CQuat u = ctx.pert.u;
  const CQuat v = ctx.pert.v;
  const QuadratureSpec inner = ctx.innerSpec();
  Field g = ctx.g;
  g.box = box;

  PointFunction kf, kg, pf, pg, df, dg;
  if (part == 1) {
    kf = [&](const Point& t) { return fracCauchyKernelK(psi, al, a, t, x, ctx.grid); };
    kg = [&](const Point& t) { return fracCauchyKernelK(psi, be, a, t, x, ctx.grid); };
    pf = [&](const Point& t) { return hPotential(psi, al, u, ctx.f, {q, t}, ctx.grid, inner, Side::Left); };
    pg = [&](const Point& t) { return hPotential(psi, be, v, g, {q, t}, ctx.grid, inner, Side::Right); };
    df = [&](const Point& y) { return perturbedFracFueter(psi, al, {u, {}}, ctx.f, {q, y}, ctx.grid, Side::Left); };
    dg = [&](const Point& y) { return perturbedFracFueter(psi, be, {v, {}}, g, {q, y}, ctx.grid, Side::Right); };
  } else {
    kf = [&](const Point& t) { return expCauchyKernelK(psi, al, u, a, t, x, ctx.grid); };
    kg = [&](const Point& t) { return expCauchyKernelK(psi, be, v, a, t, x, ctx.grid); };
    pf = [&](const Point& t) { return calIOnClosure(al, ctx.f, q, t, ctx.grid); };
    pg = [&](const Point& t) { return calIOnClosure(be, g, q, t, ctx.grid); };
    df = [&](const Point& y) { return perturbedFracFueter(psi, al, {{}, u}, ctx.f, {q, y}, ctx.grid, Side::Left); };
    dg = [&](const Point& y) { return perturbedFracFueter(psi, be, {{}, v}, g, {q, y}, ctx.grid, Side::Right); };
  }
  // a vanishing factor makes the kernel evaluation unnecessary
  const PointFunction pfm = memoized(pf), pgm = memoized(pg);
  const PointFunction kfGated = [&](const Point& t) { return pfm(t) == CQuat() ? CQuat() : kf(t); };
  const PointFunction kgGated = [&](const Point& t) { return pgm(t) == CQuat() ? CQuat() : kg(t); };

  BpTerms out;
  out.boundary = boundaryIntegral(box, kfGated, pfm, psi, ctx.quad) + boundaryIntegral(box, pgm, kgGated, psi, ctx.quad);
  if (withVolume) {
    const PointFunction integrand = [&](const Point& y) {
      CQuat r;
      const CQuat dfy = df(y);
      if (dfy != CQuat()) r += kf(y) * dfy;
      const CQuat dgy = dg(y);
      if (dgy != CQuat()) r += dgy * kg(y);
      return r;
    };
    std::optional<Point> singular;
    if (box.inClosure(x, 1e-12 * box.maxEdge())) singular = x;
    out.volume = volumeIntegral(box, integrand, ctx.quad, {}, singular);
  }
  return out;
}

}  // namespace

CQuat borelPompeiuPerturbedExpected(int part, const PerturbedContext& ctx, const Point& x) {
  const Box4& box = ctx.box();
  const Point& q = ctx.anchored.q;
  Field g = ctx.g;
  g.box = box;
  CQuat r;
  for (int i = 0; i < 4; ++i) {
    Point y = q;
    y[i] = x[i];
    r += ctx.f(y) + g(y);
  }
  const AnchoredPoint at{q, x};
  if (part == 1) {
    r += correctionM(ctx.psi, ctx.alpha, ctx.betaOrAlpha(), ctx.f, g, box, at, ctx.pert.u, ctx.pert.v, ctx.grid,
                     ctx.innerSpec());
  } else {
    r += correctionN(ctx.alpha, ctx.f, box, at, ctx.grid) + correctionN(ctx.betaOrAlpha(), g, box, at, ctx.grid);
  }
  return r;
}

IdentityReport borelPompeiuPerturbedResidual(int part, const PerturbedContext& ctx, const Point& x) {
  if (part != 1 && part != 2) throw ConfigError("Borel-Pompeiu part must be 1 or 2");
  const Box4& box = ctx.box();
  if (box.onBoundary(x, 1e-12 * box.maxEdge())) throw UndefinedOnBoundary("Borel-Pompeiu point on the boundary");
  const bool interior = box.contains(x);
  const BpTerms t = borelPompeiuTerms(part, ctx, x, true);
  const CQuat expected = interior ? borelPompeiuPerturbedExpected(part, ctx, x) : CQuat();
  ResidualAccumulator acc;
  acc.add(t.boundary - t.volume, expected, x);
  std::optional<double> scale;
  if (!interior) scale = std::max(supNorm(ctx.f.value, box), supNorm(ctx.g.value, box));
  const std::string name =
      "borel-pompeiu-perturbed-" + std::to_string(part) + (interior ? "-interior" : "-exterior");
  return acc.finish(name, 1e-1, metaOf(ctx), scale);
}

double perturbedOperatorResidual(int part, const PerturbedContext& ctx) {
  const Box4& box = ctx.box();
  Field g = ctx.g;
  g.box = box;
  const Point& q = ctx.anchored.q;
  const FracOrderVec be = ctx.betaOrAlpha();
  const Perturbation pf = part == 1 ? Perturbation{ctx.pert.u, {}} : Perturbation{{}, ctx.pert.u};
  const Perturbation pg = part == 1 ? Perturbation{ctx.pert.v, {}} : Perturbation{{}, ctx.pert.v};
  double r = 0.0;
  for (const Point& y : interiorLattice(box, 4)) {
    r = std::max(r, perturbedFracFueter(ctx.psi, ctx.alpha, pf, ctx.f, {q, y}, ctx.grid, Side::Left).magnitude());
    r = std::max(r, perturbedFracFueter(ctx.psi, be, pg, g, {q, y}, ctx.grid, Side::Right).magnitude());
  }
  return r;
}

namespace {

CQuat stokesBoundary(int part, const PerturbedContext& ctx, const QuadratureSpec& quad) {
  PerturbedContext c = ctx;
  c.quad = quad;
  const StructuralSet& psi = c.psi;
  const Point& q = c.anchored.q;
  const FracOrderVec be = c.betaOrAlpha();
  const QuadratureSpec inner = c.innerSpec();
  Field g = c.g;
  g.box = c.box();
  if (part == 1) {
    const Field pf = hPotentialField(psi, c.alpha, c.pert.u, c.f, q, c.grid, inner, Side::Left);
    const Field pg = hPotentialField(psi, be, c.pert.v, g, q, c.grid, inner, Side::Right);
    return boundaryIntegral(c.box(), pg.value, pf.value, psi, quad);
  }
  const ComplexVec4 w = psiCoords(psi, c.pert.u + c.pert.v);
  const ScalarWeight weight = [w](const Point& y) { return std::exp(dotCoords(w, y)); };
  const PointFunction pf = [&](const Point& y) { return calIOnClosure(c.alpha, c.f, q, y, c.grid); };
  const PointFunction pg = [&](const Point& y) { return calIOnClosure(be, g, q, y, c.grid); };
  return boundaryIntegral(c.box(), pg, pf, psi, quad, weight);
}

}  // namespace

CorollaryResult cauchyCorollaryCheck(const std::string& which, const PerturbedContext& ctx, double nearNull) {
  int part = 0;
  bool stokes = false;
  if (which == "stokes-cauchy-1" || which == "stokes-cauchy-2") {
    stokes = true;
    part = which.back() - '0';
  } else if (which == "bp-cauchy-1" || which == "bp-cauchy-2") {
    part = which.back() - '0';
  } else {
    throw ConfigError("unknown corollary '" + which + "'");
  }
  const Box4& box = ctx.box();
  CorollaryResult out;
  out.operatorResidual = perturbedOperatorResidual(part, ctx);
  QuadratureSpec finer = ctx.quad;
  finer.nodesPerAxis += 2;

  if (stokes) {
    const CQuat b = stokesBoundary(part, ctx, ctx.quad);
    out.boundaryTerm = b.magnitude();
    out.quadratureBound = (b - stokesBoundary(part, ctx, finer)).magnitude();
    // |B| = |int G D F + D_r G F| <= 2 m(J) max(|F|, |G|) r_op when the potentials invert the operators
    const std::vector<Point> lattice = interiorLattice(box, 4);
    const Point& q = ctx.anchored.q;
    const FracOrderVec be = ctx.betaOrAlpha();
    Field g = ctx.g;
    g.box = box;
    double potSup = 0.0, weightSup = 1.0;
    if (part == 1) {
      const QuadratureSpec inner = ctx.innerSpec();
      potSup = std::max(
          latticeSup(hPotentialField(ctx.psi, ctx.alpha, ctx.pert.u, ctx.f, q, ctx.grid, inner, Side::Left).value,
                     lattice),
          latticeSup(hPotentialField(ctx.psi, be, ctx.pert.v, g, q, ctx.grid, inner, Side::Right).value, lattice));
    } else {
      potSup = std::max(latticeSup(calIField(ctx.alpha, ctx.f, q, ctx.grid).value, lattice),
                        latticeSup(calIField(be, g, q, ctx.grid).value, lattice));
      const ComplexVec4 w = psiCoords(ctx.psi, ctx.pert.u + ctx.pert.v);
      for (const Point& y : lattice) weightSup = std::max(weightSup, std::abs(std::exp(dotCoords(w, y))));
    }
    out.constant = 2.0 * box.measure() * potSup * weightSup;
  } else {
    const Point& q = ctx.anchored.q;
    const CQuat expected = borelPompeiuPerturbedExpected(part, ctx, q);
    const CQuat b = borelPompeiuTerms(part, ctx, q, false).boundary;
    PerturbedContext fine = ctx;
    fine.quad = finer;
    out.boundaryTerm = b.magnitude();
    out.quadratureBound = (b - borelPompeiuTerms(part, fine, q, false).boundary).magnitude();
    if (out.operatorResidual <= 1e-14) {
      ResidualAccumulator acc;
      acc.add(b, expected, q);
      out.report = acc.finish(which, 1e-1, metaOf(ctx));
      return out;
    }
    const double scale = std::max({expected.magnitude(), b.magnitude(), 1.0});
    if (out.operatorResidual > nearNull * scale) {
      out.report = notApplicable(which, "perturbed operators do not vanish on this data");
      return out;
    }
    // |B - expected| = |volume term| <= (int |K_alpha| + int |K_beta|) r_op
    const FracOrderVec be = ctx.betaOrAlpha();
    const CQuat ua = part == 1 ? CQuat() : ctx.pert.u;
    const CQuat vb = part == 1 ? CQuat() : ctx.pert.v;
    const PointFunction mag = [&](const Point& y) {
      return CQuat::real(expCauchyKernelK(ctx.psi, ctx.alpha, ua, box.a(), y, q, ctx.grid).magnitude() +
                         expCauchyKernelK(ctx.psi, be, vb, box.a(), y, q, ctx.grid).magnitude());
    };
    out.constant = volumeIntegral(box, mag, ctx.quad, {}, q).w().real();
    out.boundaryTerm = (b - expected).magnitude();
  }

  const double bound = out.constant * out.operatorResidual + out.quadratureBound;
  IdentityReport r;
  r.identityName = which;
  r.residualAbs = out.boundaryTerm;
  r.scale = bound;
  r.residualRel = out.boundaryTerm / std::max(bound, 1e-14);
  r.tolerance = 1.0;
  r.gridMeta = metaOf(ctx);
  r.probePoints = {ctx.anchored.q};
  r.status = r.residualRel <= 1.0 ? CheckStatus::Pass : CheckStatus::Fail;
  r.note = "C=" + std::to_string(out.constant) + " r_op=" + std::to_string(out.operatorResidual);
  out.report = r;
  return out;
}

}  // namespace fueterlab
