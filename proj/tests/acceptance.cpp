// Acceptance run: one pass/fail line per criterion, details indented below it.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fueterlab/corpus.hpp"
#include "fueterlab/fracfueter.hpp"
#include "fueterlab/harness.hpp"
#include "fueterlab/perturbed.hpp"

using namespace fueterlab;

namespace {

const Box4 kBox(Point::Zero(), Point::Ones());
constexpr unsigned kSeed = 20240;

struct Outcome {
  bool ok = true;
  std::vector<std::string> details;

  void need(bool cond, const std::string& what) {
    if (!cond) ok = false;
    details.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { details.push_back("     " + what); }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string sci(double v) { return fmt("%.3e", v); }

double dist(const CQuat& a, const CQuat& b) { return (a - b).magnitude(); }

// refinement rule shared with the harness: last step ratio >= 1.5 or the finest value at roundoff
bool trending(const std::vector<double>& r, double scale) { return trendFlag(r, scale) == "ok"; }

std::string ladderText(const std::vector<int>& nodes, const std::vector<double>& r) {
  std::ostringstream s;
  for (std::size_t k = 0; k < r.size(); ++k) s << (k ? ", " : "") << nodes[k] << ":" << sci(r[k]);
  return s.str();
}

Profile1D scalarProfile(std::function<double(double)> f, double lo, double hi) {
  Profile1D p;
  p.value = [f](double t) { return CQuat::real(f(t)); };
  p.lower = lo;
  p.upper = hi;
  return p;
}

// --- criteria -----------------------------------------------------------------

Outcome constDerivative() {
  Outcome o;
  const Profile1D one = scalarProfile([](double) { return 1.0; }, 0.0, 1.0);
  for (double alpha : {0.25, 0.5, 0.75}) {
    double worst = 0.0;
    for (int k = 1; k <= 16; ++k) {
      const double x = k / 16.0;
      const double expected = std::pow(x, -alpha) / std::tgamma(1.0 - alpha);
      const CQuat got = rlDerivativeLeft(one, alpha, 0.0, x);
      worst = std::max(worst, dist(got, CQuat::real(expected)) / std::abs(expected));
    }
    o.need(worst <= 1e-4, "alpha=" + fmt("%.2f", alpha) + " max rel " + sci(worst) + " over 16 points");
  }
  return o;
}

Outcome fundamentalTheorem() {
  Outcome o;
  const Grid1D grid{128, 2.0};
  const std::vector<std::pair<std::string, std::function<double(double)>>> fs{
      {"1", [](double) { return 1.0; }},
      {"t", [](double t) { return t; }},
      {"t^2", [](double t) { return t * t; }},
      {"sin t", [](double t) { return std::sin(t); }}};
  for (const auto& [name, fn] : fs) {
    for (double alpha : {0.3, 0.6}) {
      const Profile1D f = scalarProfile(fn, 0.0, 1.0);
      Profile1D left = f, right = f;
      left.value = [&, alpha](double s) { return rlIntegralLeft(f, alpha, 0.0, s, grid); };
      right.value = [&, alpha](double s) { return rlIntegralRight(f, alpha, 1.0, s, grid); };
      double worstL = 0.0, worstR = 0.0;
      for (double x : {0.2, 0.45, 0.7, 0.9}) {
        const double scale = std::max(std::abs(fn(x)), 1e-3);
        worstL = std::max(worstL, dist(rlDerivativeLeft(left, alpha, 0.0, x, grid), CQuat::real(fn(x))) / scale);
        worstR = std::max(worstR, dist(rlDerivativeRight(right, alpha, 1.0, x, grid), CQuat::real(fn(x))) / scale);
      }
      o.need(worstL <= 1e-3 && worstR <= 1e-3, "f=" + name + " alpha=" + fmt("%.1f", alpha) + " left " +
                                                   sci(worstL) + " right " + sci(worstR));
    }
  }
  return o;
}

Outcome classicalStokes() {
  Outcome o;
  QuadratureSpec spec;
  spec.nodesPerAxis = 12;
  double worst = 0.0;
  std::string worstName;
  for (const NamedFrame& fr : frames()) {
    for (const std::string& name : polynomialCorpusNames()) {
      const Field f = corpusField(name, kBox);
      const IdentityReport r = stokesClassicalResidual(fr.psi, f, f, kBox, spec);
      if (r.residualRel >= worst) {
        worst = r.residualRel;
        worstName = name + "|" + fr.name;
      }
      if (!r.pass()) o.need(false, name + "|" + fr.name + " rel " + sci(r.residualRel));
    }
  }
  o.need(worst <= 1e-8, "max rel " + sci(worst) + " (" + worstName + ") at 12 nodes, 3 frames");
  return o;
}

Outcome classicalBorelPompeiu() {
  Outcome o;
  const std::vector<int> ladder{8, 12, 16};
  const StructuralSet psi = StructuralSet::standard();
  const Point outside = kBox.b() + 0.5 * (kBox.b() - kBox.a());
  // the inverse costs 16 transforms per level, so it runs on a subset covering each field kind
  const std::vector<std::string> inverseSet{"linear", "quadratic", "expsin", "hyperholomorphic", "complex"};
  for (const std::string& name : corpusNames()) {
    const Field f = corpusField(name, kBox);
    const bool inverse = std::find(inverseSet.begin(), inverseSet.end(), name) != inverseSet.end();
    std::vector<double> interior, fl, fr;
    double scale = 0.0, ext = 0.0, relI = 0.0, relL = 0.0, relR = 0.0;
    for (int n : ladder) {
      QuadratureSpec spec;
      spec.nodesPerAxis = n;
      const IdentityReport in = borelPompeiuClassicalResidual(psi, f, f, kBox, kBox.center(), spec);
      interior.push_back(in.residualAbs);
      scale = in.scale;
      relI = in.residualRel;
      if (inverse) {
        const IdentityReport left = fueterInverseResidual(psi, f, kBox, {kBox.center()}, spec, Side::Left);
        const IdentityReport right = fueterInverseResidual(psi, f, kBox, {kBox.center()}, spec, Side::Right);
        fl.push_back(left.residualAbs);
        fr.push_back(right.residualAbs);
        relL = left.residualRel;
        relR = right.residualRel;
      }
      if (n == ladder.back()) ext = borelPompeiuClassicalResidual(psi, f, f, kBox, outside, spec).residualRel;
    }
    const bool within = relI <= 5e-2 && relL <= 5e-2 && relR <= 5e-2 && ext <= 5e-2;
    const bool trend = trending(interior, scale) && (!inverse || (trending(fl, scale) && trending(fr, scale)));
    const std::string inv = inverse ? "; inverse L/R " + ladderText(ladder, fl) + " / rel16 " + sci(relL) + "/" + sci(relR) : "";
    o.need(within && trend, name + ": interior " + ladderText(ladder, interior) + " rel16 " + sci(relI) + inv +
                                "; exterior rel " + sci(ext));
  }
  return o;
}

Outcome fracPointwise() {
  Outcome o;
  const auto anchors = anchorPoints(kBox, kSeed, 4);
  const StructuralSet psi = StructuralSet::standard();
  std::map<std::string, std::pair<double, std::string>> worst;
  std::map<std::string, int> failures;
  int total = 0;
  for (const std::string& name : corpusNames()) {
    const Field f = corpusField(name, kBox);
    for (std::size_t k = 0; k < anchors.size(); ++k) {
      const AnchoredPoint p{anchors[k], anchors[(k + 1) % anchors.size()]};
      for (FracIdentity id : {FracIdentity::Eq5, FracIdentity::Eq6, FracIdentity::Eq7}) {
        const FracContext ctx{psi, FracOrderVec(0.5), std::nullopt, f, p, Grid1D{128, 2.0}, 12, 1e-3};
        const IdentityReport r = verifyFracIdentity(id, ctx);
        const std::string key = to_string(id);
        ++total;
        if (!r.pass()) ++failures[key];
        if (r.residualRel >= worst[key].first) worst[key] = {r.residualRel, name};
      }
    }
  }
  for (const auto& [id, w] : worst) {
    o.need(failures[id] == 0, id + ": " + std::to_string(failures[id]) + " of " + std::to_string(total / 3) +
                                  " fail; max rel " + sci(w.first) + " (" + w.second + ")");
  }
  // the analysis: the operator misses the cross-axis terms the closure formula carries
  const Field c = corpusField("const", kBox);
  const AnchoredPoint p{anchors[0], anchors[1]};
  const CQuat lhs = fueterFd(psi, calIField(FracOrderVec(0.5), c, p.q, Grid1D{}).value, p.x, kBox,
                             kBox.minEdge() / 48.0, Side::Left);
  const CQuat rhs = fracFueter(psi, FracOrderVec(0.5), c, p, Grid1D{}, Side::Left);
  o.note("f=const: derivative of the closure potential " + sci(lhs.magnitude()) + " vs fractional operator " +
         sci(rhs.magnitude()) + "; the operator keeps D^alpha of frozen profiles, the potential does not");
  return o;
}

// D^g (t - a)^p at x, and D^g of the constant c
double powerRule(double p, double g, double t) { return std::tgamma(p + 1) / std::tgamma(p + 1 - g) * std::pow(t, p - g); }

Outcome fracSemigroup() {
  Outcome o;
  const FracOrderVec alpha(0.25), beta(0.25);
  const Grid1D grid{128, 2.0};
  const StructuralSet psi = StructuralSet::standard();
  const auto anchors = anchorPoints(kBox, kSeed, 1);
  const AnchoredPoint p{anchors[0], anchors[1]};
  double worst = 0.0;
  std::string worstName;
  for (int axis = 0; axis < 4; ++axis) {
    for (int power : {1, 2}) {
      const Field f = monomialField(axis, 0.0, power, kBox);
      for (FracIdentity id : {FracIdentity::Eq8, FracIdentity::Eq9, FracIdentity::Eq8Right, FracIdentity::Eq9Right}) {
        const bool right = id == FracIdentity::Eq8Right || id == FracIdentity::Eq9Right;
        const bool squared = id == FracIdentity::Eq8 || id == FracIdentity::Eq8Right;
        const Side side = right ? Side::Right : Side::Left;
        const Field inner = fracFueterField(psi, beta, f, p.q, grid, side);
        const CQuat lhs = fracFueter(squared ? psi : psi.conjugate(), alpha, inner, p, grid, side);
        CQuat rhs;
        for (int j = 0; j < 4; ++j) {
          const double d = j == axis ? powerRule(power, 0.5, p.x[j])
                                     : std::pow(p.q[axis], power) * powerRule(0, 0.5, p.x[j]);
          const CQuat w = squared ? CQuat(psi[j]) * CQuat(psi[j]) : CQuat::Identity();
          rhs += right ? CQuat::real(d) * w : w * CQuat::real(d);
        }
        const double rel = dist(lhs, rhs) / std::max({lhs.magnitude(), rhs.magnitude(), 1e-14});
        if (rel >= worst) {
          worst = rel;
          worstName = f.name + " " + to_string(id);
        }
      }
    }
  }
  o.need(worst <= 1e-3, "max rel vs Gamma-ratio oracle " + sci(worst) + " (" + worstName + ")");
  o.note("the composition carries cross terms D^alpha_i of D^beta_j profiles, i != j, that the sum omits");
  return o;
}

PerturbedContext perturbedCtx(const StructuralSet& psi, FracOrderVec alpha, FracOrderVec beta, const CQuat& u,
                              const CQuat& v, const Field& f, const Field& g, int nodes, int intervals) {
  QuadratureSpec quad;
  quad.nodesPerAxis = nodes;
  quad.innerNodes = 3;
  return PerturbedContext{psi, alpha, beta, {u, v}, f, g, {kBox.center(), anchorPoints(kBox, kSeed, 1)[1]},
                          Grid1D{intervals, 2.0}, quad};
}

Outcome proposition() {
  Outcome o;
  const auto fr = frames();
  const auto ps = perturbations(kSeed);
  const Field zero = zeroField(kBox);
  std::map<std::string, int> failures;
  std::map<std::string, double> worst;
  int perId = 0;
  for (std::size_t k = 0; k < fr.size(); ++k) {
    for (const std::string& name : corpusNames()) {
      const Field f = corpusField(name, kBox);
      const PerturbedContext ctx = perturbedCtx(fr[k].psi, 0.25, 0.25, ps[k].u, ps[k].v, f, zero, 8, 128);
      ++perId;
      for (const std::string& id : propositionIds()) {
        const IdentityReport r = verifyPropositionSuite(id, ctx);
        if (!r.pass()) ++failures[id];
        worst[id] = std::max(worst[id], r.residualRel);
      }
    }
  }
  for (const std::string& id : propositionIds()) {
    o.need(failures[id] == 0, id + ": " + std::to_string(failures[id]) + " of " + std::to_string(perId) +
                                  " fail; max rel " + sci(worst[id]));
  }

  // reductions at u = v = 0, compared bit for bit
  bool exact = true;
  const Grid1D grid{64, 2.0};
  const auto anchors = anchorPoints(kBox, kSeed, 4);
  for (const std::string& name : corpusNames()) {
    const Field f = corpusField(name, kBox);
    for (std::size_t k = 0; k < anchors.size(); ++k) {
      const AnchoredPoint p{anchors[k], anchors[(k + 1) % anchors.size()]};
      for (Side side : {Side::Left, Side::Right}) {
        exact = exact && perturbedFracFueter(StructuralSet::standard(), 0.25, {}, f, p, grid, side) ==
                             fracFueter(StructuralSet::standard(), 0.25, f, p, grid, side);
      }
      QuadratureSpec inner;
      inner.nodesPerAxis = 3;
      exact = exact && hPotential(StructuralSet::standard(), 0.25, CQuat(), f, p, grid, inner, Side::Left) ==
                           calIOnClosure(0.25, f, p.q, p.x, grid);
    }
    const PerturbedContext ctx =
        perturbedCtx(StructuralSet::standard(), 0.25, 0.25, CQuat(), CQuat(), f, zero, 8, 64);
    FracContext fctx{ctx.psi, ctx.alpha, std::nullopt, f, ctx.anchored, ctx.grid, 8, 1e-3};
    exact = exact && verifyPropositionSuite("p1a", ctx).residualAbs == verifyFracIdentity(FracIdentity::Eq5, fctx).residualAbs;
  }
  o.need(exact, "u = v = 0 reductions bit-identical (operator, potential, p1a vs the unperturbed identity)");
  return o;
}

Outcome perturbedStokes() {
  Outcome o;
  const std::vector<int> ladder{8, 12};
  const auto ps = perturbations(kSeed);
  const Field lin = corpusField("linear", kBox);
  const Field cst = corpusField("const", kBox);
  const StructuralSet psi = StructuralSet::standard();
  for (int part : {1, 2}) {
    for (const NamedPerturbation& pert : ps) {
      if (part == 1 && pert.name != "pure") continue;
      std::vector<double> res;
      double rel = 0.0, scale = 0.0;
      for (int n : ladder) {
        const IdentityReport r =
            stokesPerturbedResidual(part, perturbedCtx(psi, 0.5, 0.25, pert.u, pert.v, lin, cst, n, 48));
        res.push_back(r.residualAbs);
        rel = r.residualRel;
        scale = r.scale;
      }
      o.need(rel <= 5e-2 && trending(res, scale), "part " + std::to_string(part) + " " + pert.name + ": " +
                                                      ladderText(ladder, res) + " rel12 " + sci(rel));
    }
  }
  o.note("the boundary term differs from the volume term by an O(1) amount that does not shrink with n");
  return o;
}

Outcome perturbedBorelPompeiu() {
  Outcome o;
  const std::vector<int> ladder{4, 6, 8};
  const Field zero = zeroField(kBox);
  const StructuralSet psi = StructuralSet::standard();
  const NamedPerturbation real = perturbations(kSeed)[0];
  const Point outside = kBox.b() + 0.3 * (kBox.b() - kBox.a());
  for (const std::string& name : {"const", "linear"}) {
    const Field f = corpusField(name, kBox);
    for (int part : {1, 2}) {
      const CQuat u = part == 1 ? CQuat() : real.u;
      const CQuat v = part == 1 ? CQuat() : real.v;
      std::vector<double> res;
      double rel = 0.0, scale = 0.0, ext = 0.0;
      for (int n : ladder) {
        const PerturbedContext ctx = perturbedCtx(psi, 0.5, 0.25, u, v, f, zero, n, 48);
        const IdentityReport r = borelPompeiuPerturbedResidual(part, ctx, ctx.anchored.q);
        res.push_back(r.residualAbs);
        rel = r.residualRel;
        scale = r.scale;
        if (n == ladder.back()) ext = borelPompeiuPerturbedResidual(part, ctx, outside).residualRel;
      }
      o.need(rel <= 1e-1 && trending(res, scale),
             std::string(name) + " part " + std::to_string(part) + " interior " + ladderText(ladder, res) +
                 " rel8 " + sci(rel));
      o.need(ext <= 1e-1, std::string(name) + " part " + std::to_string(part) + " exterior rel " + sci(ext));
    }
  }

  // correction terms on constants, against closed forms
  const Field c = constantField(CQuat::real(1.7), kBox);
  const Field g = constantField(CQuat::real(-0.4), kBox);
  const AnchoredPoint p{Point(0.5, 0.4, 0.6, 0.55), Point(0.7, 0.8, 0.3, 0.9)};
  const auto closedN = [&](double a, double value) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        s += std::pow(p.x[j], a) / std::tgamma(a + 1) / (std::tgamma(a) * std::pow(p.x[i], a));
      }
    }
    return value * s;
  };
  const Grid1D grid{128, 2.0};
  QuadratureSpec inner;
  inner.nodesPerAxis = 3;
  const double nf = closedN(0.5, 1.7);
  const double errN = dist(correctionN(0.5, c, kBox, p, grid), CQuat::real(nf)) / std::abs(nf);
  const double mf = nf + closedN(0.25, -0.4);
  const double errM =
      dist(correctionM(psi, 0.5, 0.25, c, g, kBox, p, CQuat(), CQuat(), grid, inner), CQuat::real(mf)) /
      std::abs(mf);
  o.need(errN <= 1e-3, "N on constants rel " + sci(errN));
  o.need(errM <= 1e-3, "M on constants (u = v = 0) rel " + sci(errM));
  return o;
}

Outcome corollaries() {
  Outcome o;
  const StructuralSet psi = StructuralSet::standard();
  const Field zero = zeroField(kBox);
  const NamedPerturbation pure = perturbations(kSeed)[1];
  for (const std::string& which : corollaryIds()) {
    const int n = which.rfind("bp", 0) == 0 ? 4 : 8;
    const CorollaryResult r = cauchyCorollaryCheck(which, perturbedCtx(psi, 0.5, 0.25, pure.u, pure.v, zero, zero, n, 48));
    o.need(r.boundaryTerm == 0.0 && r.report.pass(), which + " null data: B = " + sci(r.boundaryTerm));
  }
  const Field near = constantField(CQuat::real(1e-4), kBox, "near-null");
  for (const std::string& which : corollaryIds()) {
    const int n = which.rfind("bp", 0) == 0 ? 4 : 8;
    const CorollaryResult r = cauchyCorollaryCheck(which, perturbedCtx(psi, 0.5, 0.25, CQuat(), CQuat(), near, near, n, 48));
    if (r.report.status == CheckStatus::NotApplicable) {
      o.note(which + " near-null: not applicable (" + r.report.note + ")");
      continue;
    }
    o.need(r.report.pass(), which + " near-null: B " + sci(r.boundaryTerm) + " <= C " + sci(r.constant) +
                                " * r_op " + sci(r.operatorResidual) + " + qb " + sci(r.quadratureBound));
  }
  // x = q: the boundary term reproduces four copies of the value plus the corrections
  const std::vector<int> ladder{4, 6, 8};
  for (int part : {1, 2}) {
    std::vector<double> res;
    double rel = 0.0, scale = 0.0;
    for (int n : ladder) {
      const PerturbedContext ctx =
          perturbedCtx(psi, 0.5, 0.25, CQuat(), CQuat(), corpusField("const", kBox), zero, n, 48);
      const IdentityReport r = borelPompeiuPerturbedResidual(part, ctx, ctx.anchored.q);
      res.push_back(r.residualAbs);
      rel = r.residualRel;
      scale = r.scale;
    }
    o.need(rel <= 1e-1 && trending(res, scale),
           "x = q, part " + std::to_string(part) + ", const: " + ladderText(ladder, res) + " rel8 " + sci(rel));
  }
  return o;
}

struct Criterion {
  int id;
  std::string title;
  double budget;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "RL derivative of a constant", 1.0, constDerivative},
      {2, "D^a I^a f = f, left and right", 5.0, fundamentalTheorem},
      {3, "classical Stokes, polynomial corpus, 12 nodes", 10.0, classicalStokes},
      {4, "classical Borel-Pompeiu and Teodorescu inverse, ladder 8,12,16", 120.0, classicalBorelPompeiu},
      {5, "fractional Fueter relations (pointwise, 5 anchors)", 120.0, fracPointwise},
      {6, "fractional semigroup on monomials, alpha = beta = 0.25", 60.0, fracSemigroup},
      {7, "perturbed operator identities (12 items) and zero reductions", 300.0, proposition},
      {8, "perturbed Stokes, ladder 8,12", 300.0, perturbedStokes},
      {9, "perturbed Borel-Pompeiu, constant and linear fields", 600.0, perturbedBorelPompeiu},
      {10, "Cauchy-type corollaries", 600.0, corollaries},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.need(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.need(secs <= c.budget, "runtime " + fmt("%.2f", secs) + " s, budget " + fmt("%.0f", c.budget) + " s");
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << '\n';
    for (const std::string& d : o.details) std::cout << "        " << d << '\n';
    std::cout.flush();
  }
  std::cout << (criteria.size() - failed) << " of " << criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
