#include "fueterlab/corpus.hpp"

#include <random>

namespace fueterlab {

namespace {

using Fn = std::function<CQuat(const Point&)>;

Field make(const std::string& name, const Box4& box, Fn f, Fn d0, Fn d1, Fn d2, Fn d3) {
  return Field(name, box, std::move(f), {std::move(d0), std::move(d1), std::move(d2), std::move(d3)});
}

CQuat q(double w, double x, double y, double z) { return CQuat(Quat(w, x, y, z)); }

const Complex kI{0.0, 1.0};

}  // namespace

std::vector<std::string> corpusNames() {
  return {"zero", "const", "coord0", "coord1", "linear", "quadratic", "expsin", "hyperholomorphic", "complex"};
}

std::vector<std::string> polynomialCorpusNames() {
  return {"zero", "const", "coord0", "coord1", "linear", "quadratic", "hyperholomorphic", "complex"};
}

Field constantField(const CQuat& c, const Box4& box, const std::string& name) {
  const Fn zero = [](const Point&) { return CQuat(); };
  return make(name, box, [c](const Point&) { return c; }, zero, zero, zero, zero);
}

Field monomialField(int axis, double origin, int power, const Box4& box) {
  const Fn zero = [](const Point&) { return CQuat(); };
  std::array<Fn, 4> d{zero, zero, zero, zero};
  d[axis] = [=](const Point& x) { return CQuat::real(power * std::pow(x[axis] - origin, power - 1)); };
  return Field("monomial" + std::to_string(axis) + "^" + std::to_string(power), box,
               [=](const Point& x) { return CQuat::real(std::pow(x[axis] - origin, power)); }, d);
}

Field corpusField(const std::string& name, const Box4& box) {
  const Fn zero = [](const Point&) { return CQuat(); };
  if (name == "zero") return Field(name, box, zero, {zero, zero, zero, zero});
  if (name == "const") return constantField(q(1, -0.5, 0.25, 2), box);
  if (name == "coord0" || name == "coord1") {
    const int k = name == "coord0" ? 0 : 1;
    std::array<Fn, 4> d{zero, zero, zero, zero};
    d[k] = [](const Point&) { return CQuat::real(1.0); };
    return Field(name, box, [k](const Point& x) { return CQuat::real(x[k]); }, d);
  }
  if (name == "linear") {
    return make(
        name, box, [](const Point& x) { return q(1 + x[0], 2 * x[1] - x[3], x[2], -0.5 * x[0]); },
        [](const Point&) { return q(1, 0, 0, -0.5); }, [](const Point&) { return q(0, 2, 0, 0); },
        [](const Point&) { return q(0, 0, 1, 0); }, [](const Point&) { return q(0, -1, 0, 0); });
  }
  if (name == "quadratic") {
    return make(
        name, box, [](const Point& x) { return q(x[0] * x[0], x[1] * x[2], -x[3] * x[3], x[0] * x[3]); },
        [](const Point& x) { return q(2 * x[0], 0, 0, x[3]); }, [](const Point& x) { return q(0, x[2], 0, 0); },
        [](const Point& x) { return q(0, x[1], 0, 0); }, [](const Point& x) { return q(0, 0, -2 * x[3], x[0]); });
  }
  if (name == "expsin") {
    return make(
        name, box, [](const Point& x) { return std::exp(x[0]) * std::sin(x[1]) * q(1, 0, 1, 0); },
        [](const Point& x) { return std::exp(x[0]) * std::sin(x[1]) * q(1, 0, 1, 0); },
        [](const Point& x) { return std::exp(x[0]) * std::cos(x[1]) * q(1, 0, 1, 0); }, zero, zero);
  }
  if (name == "hyperholomorphic") {
    // x1 - i x0, annihilated by the standard left Fueter operator
    return make(
        name, box, [](const Point& x) { return q(x[1], -x[0], 0, 0); }, [](const Point&) { return q(0, -1, 0, 0); },
        [](const Point&) { return q(1, 0, 0, 0); }, zero, zero);
  }
  if (name == "complex") {
    // (1 + I j) x2 + I x0 with the commuting complex unit I
    const CQuat a = CQuat::Identity() + kI * CQuat(Quat::unit(2));
    const CQuat b = CQuat::real(kI);
    return make(
        name, box, [=](const Point& x) { return x[2] * a + x[0] * b; }, [=](const Point&) { return b; }, zero,
        [=](const Point&) { return a; }, zero);
  }
  throw ConfigError("unknown corpus field '" + name + "'");
}

std::vector<Field> corpus(const std::vector<std::string>& names, const Box4& box) {
  std::vector<Field> fields;
  for (const auto& n : names) fields.push_back(corpusField(n, box));
  return fields;
}

std::vector<NamedFrame> frames() {
  const Quat one = Quat::unit(0), i = Quat::unit(1), j = Quat::unit(2), k = Quat::unit(3);
  const Quat r = Quat(0.8, 0.36, -0.48, 0.0);  // unit quaternion
  return {
      {"standard", StructuralSet::standard()},
      {"rotated", validateStructuralSet({r * one, r * i, r * j, r * k})},
      {"flipped", validateStructuralSet({one, -i, j, k})},
  };
}

std::vector<Point> anchorPoints(const Box4& box, unsigned seed, int extra) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.2, 0.8);
  std::vector<Point> points{box.center()};
  for (int n = 0; n < extra; ++n) {
    Point p;
    for (int k = 0; k < 4; ++k) p[k] = box.a()[k] + box.edge(k) * u(rng);
    points.push_back(p);
  }
  return points;
}

std::vector<NamedPerturbation> perturbations(unsigned seed) {
  std::mt19937 rng(seed + 1);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  auto real = [&] { return CQuat::real(u(rng)); };
  auto pure = [&] { return CQuat(Quat(0, u(rng), u(rng), u(rng))); };
  auto cplx = [&] {
    CQuat c;
    for (int k = 0; k < 4; ++k) c[k] = Complex(u(rng), u(rng));
    return c;
  };
  NamedPerturbation a{"real", real(), real()};
  NamedPerturbation b{"pure", pure(), pure()};
  NamedPerturbation c{"complex", cplx(), cplx()};
  return {a, b, c};
}

}  // namespace fueterlab
