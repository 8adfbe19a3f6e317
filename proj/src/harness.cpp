#include "fueterlab/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace fueterlab {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> splitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double parseReal(const std::string& s, const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(field + ": '" + s + "' is not a number");
  }
  if (used != s.size()) throw ConfigError(field + ": '" + s + "' is not a number");
  return v;
}

// "0.5", "0.4+0.1i", "0.4-0.1i", "2i"
Complex parseComplex(const std::string& s, const std::string& field) {
  if (s.empty()) throw ConfigError(field + ": empty value");
  if (s.back() != 'i') return parseReal(s, field);
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    const std::string im = body.empty() || body == "+" || body == "-" ? body + "1" : body;
    return Complex(0.0, parseReal(im, field));
  }
  std::string im = body.substr(split);
  if (im == "+" || im == "-") im += "1";
  return Complex(parseReal(body.substr(0, split), field), parseReal(im, field));
}

std::array<Complex, 4> parseComplex4(const std::string& s, const std::string& field) {
  const auto items = splitList(s);
  if (items.size() == 1) {
    const Complex c = parseComplex(items[0], field);
    return {c, c, c, c};
  }
  if (items.size() != 4) throw ConfigError(field + ": expected 1 or 4 entries");
  std::array<Complex, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = parseComplex(items[k], field);
  return out;
}

Point parsePoint(const std::string& s, const std::string& field) {
  const auto items = splitList(s);
  if (items.size() != 4) throw ConfigError(field + ": expected 4 entries");
  Point p;
  for (int k = 0; k < 4; ++k) p[k] = parseReal(items[k], field);
  return p;
}

CQuat parseQuat(const std::string& s, const std::string& field) {
  const auto c = parseComplex4(s, field);
  CQuat q;
  for (int k = 0; k < 4; ++k) q[k] = c[k];
  return q;
}

std::vector<int> parseNodes(const std::string& s, const std::string& field) {
  std::vector<int> out;
  for (const auto& item : splitList(s)) {
    const double v = parseReal(item, field);
    if (v != std::floor(v) || v < 1) throw ConfigError(field + ": '" + item + "' is not a positive integer");
    out.push_back(int(v));
  }
  return out;
}

void applyKey(SuiteConfig& c, const std::string& key, const std::string& value) {
  if (key == "suite") {
    c.suite = value;
  } else if (key == "box_a") {
    c.boxA = parsePoint(value, key);
  } else if (key == "box_b") {
    c.boxB = parsePoint(value, key);
  } else if (key == "alpha") {
    c.alpha = parseComplex4(value, key);
  } else if (key == "beta") {
    c.beta = parseComplex4(value, key);
  } else if (key == "u") {
    c.u = parseQuat(value, key);
  } else if (key == "v") {
    c.v = parseQuat(value, key);
  } else if (key == "nodes") {
    c.nodes = parseNodes(value, key);
  } else if (key == "seed") {
    c.seed = unsigned(parseReal(value, key));
  } else if (key == "corpus") {
    c.corpus = value.empty() ? std::vector<std::string>{} : splitList(value);
  } else if (key == "anchors") {
    c.extraAnchors = int(parseReal(value, key));
  } else if (key == "inner_nodes") {
    c.innerNodes = int(parseReal(value, key));
  } else if (key == "jobs") {
    c.jobs = int(parseReal(value, key));
  } else if (key.rfind("tolerance.", 0) == 0) {
    c.tolerances[key.substr(10)] = parseReal(value, key);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

}  // namespace

void validate(const SuiteConfig& c) {
  static const std::set<std::string> suites{"classical", "fractional", "perturbed", "all"};
  if (!suites.count(c.suite)) throw ConfigError("suite: unknown suite '" + c.suite + "'");
  if (c.nodes.empty()) throw ConfigError("nodes: ladder is empty");
  for (std::size_t k = 1; k < c.nodes.size(); ++k) {
    if (c.nodes[k] <= c.nodes[k - 1]) throw ConfigError("nodes: ladder must be strictly increasing");
  }
  if (c.nodes.front() < 2) throw ConfigError("nodes: need at least 2 nodes per axis");
  if (c.corpus.empty()) throw ConfigError("corpus: selection is empty");
  const auto known = corpusNames();
  for (const auto& name : c.corpus) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw ConfigError("corpus: unknown field '" + name + "'");
    }
  }
  for (const auto& [id, tol] : c.tolerances) {
    if (!(tol > 0.0)) throw ConfigError("tolerance." + id + ": must be positive");
  }
  try {
    FracOrderVec(c.alpha).validate();
    FracOrderVec(c.beta).validate();
  } catch (const OrderOutOfRange& e) {
    throw ConfigError(std::string("alpha/beta: ") + e.what());
  }
  for (int k = 0; k < 4; ++k) {
    if (!(c.boxA[k] < c.boxB[k])) throw ConfigError("box_a/box_b: need a_k < b_k");
  }
  if (c.extraAnchors < 0) throw ConfigError("anchors: must be >= 0");
  if (c.innerNodes < 2) throw ConfigError("inner_nodes: must be >= 2");
  if (c.jobs < 1) throw ConfigError("jobs: must be >= 1");
}

SuiteConfig parseConfig(const std::string& text, SuiteConfig base) {
  std::stringstream ss(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(ss, line)) {
    ++lineNo;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineNo) + ": expected key = value");
    try {
      applyKey(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineNo) + ": " + e.what());
    }
  }
  return base;
}

SuiteConfig loadConfig(const std::string& path, SuiteConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parseConfig(ss.str(), std::move(base));
}

std::string trendFlag(const std::vector<double>& residuals, double scale) {
  if (residuals.size() < 2) return "insufficient ladder";
  const double last = residuals.back();
  const double prev = residuals[residuals.size() - 2];
  if (last <= 1e-12 * std::max(scale, 1.0)) return "ok";
  if (prev >= 1.5 * last) return "ok";
  return "no trend";
}

namespace {

using Task = std::function<CheckRecord()>;

struct SuiteBuilder {
  const SuiteConfig& cfg;
  Box4 box;
  std::vector<Task> tasks;

  double toleranceFor(const std::string& id, double fallback) const {
    const auto it = cfg.tolerances.find(id);
    return it == cfg.tolerances.end() ? fallback : it->second;
  }

  void add(std::string suite, std::string identity, std::string corpus, std::string variant, int nodes,
           std::function<IdentityReport()> fn) {
    tasks.push_back([=, this] {
      CheckRecord r{suite, identity, corpus, variant, nodes, {}, 0.0};
      const auto t0 = std::chrono::steady_clock::now();
      try {
        r.report = fn();
      } catch (const Error& e) {
        r.report.identityName = identity;
        r.report.residualAbs = -1.0;
        r.report.residualRel = -1.0;
        r.report.status = CheckStatus::Fail;
        r.report.note = e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const auto it = cfg.tolerances.find(r.report.identityName);
      if (it != cfg.tolerances.end() && r.report.status != CheckStatus::NotApplicable && r.report.residualRel >= 0) {
        r.report.tolerance = it->second;
        r.report.status = r.report.residualRel <= it->second ? CheckStatus::Pass : CheckStatus::Fail;
      }
      return r;
    });
  }

  std::vector<NamedPerturbation> perts() const {
    auto p = perturbations(cfg.seed);
    if (cfg.u || cfg.v) {
      return {NamedPerturbation{"configured", cfg.u.value_or(CQuat()), cfg.v.value_or(CQuat())}};
    }
    return p;
  }

  void classical() {
    const Point outside = box.b() + 0.5 * (box.b() - box.a());
    for (int n : cfg.nodes) {
      QuadratureSpec spec;
      spec.nodesPerAxis = n;
      for (const NamedFrame& fr : frames()) {
        for (const std::string& name : cfg.corpus) {
          const Field f = corpusField(name, box);
          const StructuralSet psi = fr.psi;
          add("classical", "stokes", name, fr.name, n, [=, this] { return stokesClassicalResidual(psi, f, f, box, spec); });
          add("classical", "borel-pompeiu-interior", name, fr.name, n,
              [=, this] { return borelPompeiuClassicalResidual(psi, f, f, box, box.center(), spec); });
          add("classical", "borel-pompeiu-exterior", name, fr.name, n,
              [=, this] { return borelPompeiuClassicalResidual(psi, f, f, box, outside, spec); });
          if (fr.name == "standard") {
            for (Side side : {Side::Left, Side::Right}) {
              const std::string id = side == Side::Left ? "fueter-inverse-left" : "fueter-inverse-right";
              add("classical", id, name, fr.name, n, [=, this] {
                return fueterInverseResidual(psi, f, box, {box.center()}, spec, side);
              });
            }
          }
        }
      }
    }
  }

  void fractional() {
    const auto anchors = anchorPoints(box, cfg.seed, cfg.extraAnchors);
    const FracOrderVec alpha(cfg.alpha), beta(cfg.beta);
    const std::vector<FracIdentity> pointwise{FracIdentity::Eq5, FracIdentity::Eq6, FracIdentity::Eq7,
                                              FracIdentity::Laplacian};
    const std::vector<FracIdentity> semigroup{FracIdentity::Eq8, FracIdentity::Eq9, FracIdentity::Eq8Right,
                                              FracIdentity::Eq9Right};
    const bool semigroupOk = [&] {
      try {
        (alpha + beta).validate();
        return true;
      } catch (const OrderOutOfRange&) {
        return false;
      }
    }();
    for (int n : cfg.nodes) {
      const Grid1D grid{16 * n, 2.0};
      for (const NamedFrame& fr : frames()) {
        for (const std::string& name : cfg.corpus) {
          const Field f = corpusField(name, box);
          for (std::size_t k = 0; k < anchors.size(); ++k) {
            // x is the next anchor so q and x differ in every coordinate
            const AnchoredPoint p{anchors[k], anchors[(k + 1) % anchors.size()]};
            const std::string variant = fr.name + "|a" + std::to_string(k);
            for (FracIdentity id : pointwise) {
              FracContext ctx{fr.psi, alpha, std::nullopt, f, p, grid, n, toleranceFor(to_string(id), 1e-3)};
              add("fractional", to_string(id), name, variant, n, [=] { return verifyFracIdentity(id, ctx); });
            }
            if (k != 0) continue;
            for (FracIdentity id : semigroup) {
              if (!semigroupOk) {
                add("fractional", to_string(id), name, variant, n,
                    [=] { return notApplicable(to_string(id), "Re(alpha + beta) >= 1"); });
                continue;
              }
              FracContext ctx{fr.psi, alpha, beta, f, p, grid, n, toleranceFor(to_string(id), 1e-3)};
              add("fractional", to_string(id), name, variant, n, [=] { return verifyFracIdentity(id, ctx); });
            }
          }
        }
      }
    }
  }

  PerturbedContext perturbedContext(const StructuralSet& psi, const NamedPerturbation& pert, const Field& f,
                                    const Field& g, int n, int intervals) const {
    QuadratureSpec quad;
    quad.nodesPerAxis = n;
    quad.innerNodes = cfg.innerNodes;
    return PerturbedContext{psi, FracOrderVec(cfg.alpha), FracOrderVec(cfg.beta), {pert.u, pert.v}, f, g,
                            {box.center(), anchorPoints(box, cfg.seed, 1)[1]}, Grid1D{intervals, 2.0}, quad};
  }

  void perturbed() {
    const auto fr = frames();
    const auto ps = perts();
    const Field zero = zeroField(box);
    const Point outside = box.b() + 0.3 * (box.b() - box.a());
    for (int n : cfg.nodes) {
      // proposition items: frame k paired with perturbation k
      for (std::size_t k = 0; k < fr.size(); ++k) {
        const NamedPerturbation& pert = ps[k % ps.size()];
        for (const std::string& name : cfg.corpus) {
          const Field f = corpusField(name, box);
          PerturbedContext ctx = perturbedContext(fr[k].psi, pert, f, zero, n, 16 * n);
          for (const std::string& id : propositionIds()) {
            PerturbedContext c = ctx;
            c.tolerance = toleranceFor(id, 1e-3);
            if (id.rfind("p1e", 0) == 0) {
              try {
                (c.alpha + c.betaOrAlpha()).validate();
                if (id == "p1e-laplace") (c.alpha + c.alpha).validate();
              } catch (const OrderOutOfRange&) {
                add("perturbed", id, name, fr[k].name + "|" + pert.name, n,
                    [=] { return notApplicable(id, "Re(alpha + beta) >= 1"); });
                continue;
              }
            }
            add("perturbed", id, name, fr[k].name + "|" + pert.name, n, [=] { return verifyPropositionSuite(id, c); });
          }
        }
      }
      const StructuralSet& psi = fr[0].psi;
      const Field lin = corpusField("linear", box);
      const Field cst = corpusField("const", box);
      // the pure perturbation drives part 1 (one Teodorescu transform per quadrature node)
      const NamedPerturbation& pure = ps.size() > 1 ? ps[1] : ps[0];
      add("perturbed", "stokes-perturbed-1", "linear", pure.name, n,
          [=, this] { return stokesPerturbedResidual(1, perturbedContext(psi, pure, lin, cst, n, 48)); });
      for (const NamedPerturbation& pert : ps) {
        add("perturbed", "stokes-perturbed-2", "linear", pert.name, n,
            [=, this] { return stokesPerturbedResidual(2, perturbedContext(psi, pert, lin, cst, n, 48)); });
      }
      // the volume term evaluates a fractional kernel profile per Duffy node, so it runs at half the ladder
      const int half = std::max(2, n / 2);
      const NamedPerturbation none{"none", {}, {}};
      const NamedPerturbation& real = ps[0];
      for (const Field& f : {cst, lin}) {
        for (int part : {1, 2}) {
          const NamedPerturbation& pert = part == 1 ? none : real;
          const PerturbedContext ctx = perturbedContext(psi, pert, f, zero, half, 48);
          const std::string id = "borel-pompeiu-perturbed-" + std::to_string(part);
          add("perturbed", id + "-interior", f.name, pert.name, half,
              [=] { return borelPompeiuPerturbedResidual(part, ctx, ctx.anchored.q); });
          add("perturbed", id + "-exterior", f.name, pert.name, half,
              [=] { return borelPompeiuPerturbedResidual(part, ctx, outside); });
        }
      }
      const Field nearNull = constantField(CQuat::real(1e-4), box, "near-null");
      for (const std::string& which : corollaryIds()) {
        const bool bp = which.rfind("bp", 0) == 0;
        const int m = bp ? half : n;
        for (const Field* data : {&zero, &nearNull}) {
          const PerturbedContext ctx = perturbedContext(psi, none, *data, *data, m, 48);
          add("perturbed", which, data->name, "none", m, [=] { return cauchyCorollaryCheck(which, ctx).report; });
        }
      }
    }
  }
};

std::vector<CheckRecord> runTasks(const std::vector<Task>& tasks, int jobs) {
  std::vector<CheckRecord> out(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) out[k] = tasks[k]();
  };
  const int n = std::max(1, std::min<int>(jobs, int(tasks.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::vector<ConvergenceEntry> convergenceOf(const std::vector<CheckRecord>& checks) {
  std::vector<ConvergenceEntry> out;
  std::map<std::tuple<std::string, std::string, std::string, std::string>, std::size_t> index;
  std::vector<double> scales;
  for (const CheckRecord& c : checks) {
    if (c.report.status == CheckStatus::NotApplicable) continue;
    const auto key = std::make_tuple(c.suite, c.identity, c.corpus, c.variant);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      out.push_back(ConvergenceEntry{c.suite, c.identity, c.corpus, c.variant, {}, {}, {}, ""});
      scales.push_back(0.0);
    }
    ConvergenceEntry& e = out[it->second];
    e.nodes.push_back(c.nodes);
    e.residuals.push_back(c.report.residualAbs);
    scales[it->second] = c.report.scale;
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    ConvergenceEntry& e = out[k];
    for (std::size_t j = 0; j + 1 < e.residuals.size(); ++j) {
      const double a = e.residuals[j], b = e.residuals[j + 1];
      e.ratios.push_back(a == 0.0 && b == 0.0 ? 1.0 : a / std::max(b, 1e-300));
    }
    e.flag = trendFlag(e.residuals, scales[k]);
  }
  return out;
}

}  // namespace

RunReport runSuite(const SuiteConfig& config) {
  validate(config);
  SuiteBuilder b{config, Box4(config.boxA, config.boxB), {}};
  const bool all = config.suite == "all";
  if (all || config.suite == "classical") b.classical();
  if (all || config.suite == "fractional") b.fractional();
  if (all || config.suite == "perturbed") b.perturbed();

  RunReport report;
  report.config = config;
  report.checks = runTasks(b.tasks, config.jobs);
  report.convergence = convergenceOf(report.checks);
  report.pass = std::all_of(report.checks.begin(), report.checks.end(), [](const CheckRecord& c) {
    return c.report.status != CheckStatus::Fail;
  });
  return report;
}

ReportFormat reportFormatFromString(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "text") return ReportFormat::Text;
  throw ConfigError("format: unknown format '" + s + "'");
}

namespace {

json complexJson(const Complex& c) { return json::array({c.real(), c.imag()}); }
Complex complexFrom(const json& j) { return Complex(j.at(0).get<double>(), j.at(1).get<double>()); }

json quatJson(const CQuat& q) {
  json a = json::array();
  for (int k = 0; k < 4; ++k) a.push_back(complexJson(q[k]));
  return a;
}

CQuat quatFrom(const json& j) {
  CQuat q;
  for (int k = 0; k < 4; ++k) q[k] = complexFrom(j.at(k));
  return q;
}

json pointJson(const Point& p) { return json::array({p[0], p[1], p[2], p[3]}); }
Point pointFrom(const json& j) { return Point(j.at(0), j.at(1), j.at(2), j.at(3)); }

json configJson(const SuiteConfig& c) {
  json j;
  j["suite"] = c.suite;
  j["box_a"] = pointJson(c.boxA);
  j["box_b"] = pointJson(c.boxB);
  for (const char* key : {"alpha", "beta"}) {
    const auto& v = std::string(key) == "alpha" ? c.alpha : c.beta;
    json a = json::array();
    for (const Complex& x : v) a.push_back(complexJson(x));
    j[key] = a;
  }
  j["u"] = c.u ? quatJson(*c.u) : json(nullptr);
  j["v"] = c.v ? quatJson(*c.v) : json(nullptr);
  j["nodes"] = c.nodes;
  j["tolerances"] = c.tolerances;
  j["seed"] = c.seed;
  j["corpus"] = c.corpus;
  j["anchors"] = c.extraAnchors;
  j["inner_nodes"] = c.innerNodes;
  j["jobs"] = c.jobs;
  return j;
}

SuiteConfig configFrom(const json& j) {
  SuiteConfig c;
  c.suite = j.at("suite");
  c.boxA = pointFrom(j.at("box_a"));
  c.boxB = pointFrom(j.at("box_b"));
  for (int k = 0; k < 4; ++k) {
    c.alpha[k] = complexFrom(j.at("alpha").at(k));
    c.beta[k] = complexFrom(j.at("beta").at(k));
  }
  if (!j.at("u").is_null()) c.u = quatFrom(j.at("u"));
  if (!j.at("v").is_null()) c.v = quatFrom(j.at("v"));
  c.nodes = j.at("nodes").get<std::vector<int>>();
  c.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  c.seed = j.at("seed");
  c.corpus = j.at("corpus").get<std::vector<std::string>>();
  c.extraAnchors = j.at("anchors");
  c.innerNodes = j.at("inner_nodes");
  c.jobs = j.at("jobs");
  return c;
}

json checkJson(const CheckRecord& c, bool withTimings) {
  const IdentityReport& r = c.report;
  json j;
  j["suite"] = c.suite;
  j["identity"] = c.identity;
  j["corpus"] = c.corpus;
  j["variant"] = c.variant;
  j["nodes"] = c.nodes;
  j["report_name"] = r.identityName;
  j["residual_abs"] = r.residualAbs;
  j["residual_rel"] = r.residualRel;
  j["scale"] = r.scale;
  j["tolerance"] = r.tolerance;
  j["status"] = to_string(r.status);
  j["note"] = r.note;
  j["grid"] = {{"nodes", r.gridMeta.nodes},
               {"epsilon", r.gridMeta.epsilon},
               {"fd_step", r.gridMeta.fdStep},
               {"intervals", r.gridMeta.intervals}};
  json probes = json::array();
  for (const Point& p : r.probePoints) probes.push_back(pointJson(p));
  j["probes"] = probes;
  if (withTimings) j["seconds"] = c.seconds;
  return j;
}

CheckRecord checkFrom(const json& j) {
  CheckRecord c;
  c.suite = j.at("suite");
  c.identity = j.at("identity");
  c.corpus = j.at("corpus");
  c.variant = j.at("variant");
  c.nodes = j.at("nodes");
  IdentityReport& r = c.report;
  r.identityName = j.at("report_name");
  r.residualAbs = j.at("residual_abs");
  r.residualRel = j.at("residual_rel");
  r.scale = j.at("scale");
  r.tolerance = j.at("tolerance");
  r.status = checkStatusFromString(j.at("status"));
  r.note = j.at("note");
  const json& g = j.at("grid");
  r.gridMeta.nodes = g.at("nodes");
  r.gridMeta.epsilon = g.at("epsilon");
  r.gridMeta.fdStep = g.at("fd_step");
  r.gridMeta.intervals = g.at("intervals");
  for (const json& p : j.at("probes")) r.probePoints.push_back(pointFrom(p));
  if (j.contains("seconds")) c.seconds = j.at("seconds");
  return c;
}

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string corpusLabel(const CheckRecord& c) { return c.variant.empty() ? c.corpus : c.corpus + "|" + c.variant; }

}  // namespace

std::string toJson(const RunReport& report, bool withTimings) {
  json j;
  j["corpus_version"] = kCorpusVersion;
  j["config"] = configJson(report.config);
  j["pass"] = report.pass;
  json checks = json::array();
  for (const CheckRecord& c : report.checks) checks.push_back(checkJson(c, withTimings));
  j["checks"] = checks;
  json conv = json::array();
  for (const ConvergenceEntry& e : report.convergence) {
    conv.push_back({{"suite", e.suite},
                    {"identity", e.identity},
                    {"corpus", e.corpus},
                    {"variant", e.variant},
                    {"nodes", e.nodes},
                    {"residuals", e.residuals},
                    {"ratios", e.ratios},
                    {"flag", e.flag}});
  }
  j["convergence"] = conv;
  return j.dump(2);
}

RunReport fromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report is not valid JSON: ") + e.what());
  }
  RunReport r;
  r.config = configFrom(j.at("config"));
  r.pass = j.at("pass");
  for (const json& c : j.at("checks")) r.checks.push_back(checkFrom(c));
  for (const json& e : j.at("convergence")) {
    r.convergence.push_back(ConvergenceEntry{e.at("suite"), e.at("identity"), e.at("corpus"), e.at("variant"),
                                             e.at("nodes").get<std::vector<int>>(),
                                             e.at("residuals").get<std::vector<double>>(),
                                             e.at("ratios").get<std::vector<double>>(), e.at("flag")});
  }
  return r;
}

void writeReport(std::ostream& out, const RunReport& report, ReportFormat format, bool withTimings) {
  switch (format) {
    case ReportFormat::Json:
      out << toJson(report, withTimings) << '\n';
      break;
    case ReportFormat::Csv: {
      out << "suite,identity,corpus,nodes,epsilon,residual_abs,residual_rel,pass\n";
      out << std::setprecision(17);
      for (const CheckRecord& c : report.checks) {
        out << csvField(c.suite) << ',' << csvField(c.identity) << ',' << csvField(corpusLabel(c)) << ',' << c.nodes
            << ',' << c.report.gridMeta.epsilon << ',' << c.report.residualAbs << ',' << c.report.residualRel << ','
            << to_string(c.report.status) << '\n';
      }
      break;
    }
    case ReportFormat::Text: {
      out << std::left << std::setw(11) << "suite" << std::setw(40) << "identity" << std::setw(36) << "corpus"
          << std::setw(6) << "nodes" << std::setw(13) << "residual_rel" << "status\n";
      for (const CheckRecord& c : report.checks) {
        std::ostringstream rel;
        if (c.report.status == CheckStatus::NotApplicable) {
          rel << "-";
        } else {
          rel << std::scientific << std::setprecision(3) << c.report.residualRel;
        }
        out << std::setw(11) << c.suite << std::setw(40) << c.identity << std::setw(36) << corpusLabel(c)
            << std::setw(6) << c.nodes << std::setw(13) << rel.str() << to_string(c.report.status);
        if (withTimings) out << "  " << std::fixed << std::setprecision(2) << c.seconds << "s";
        if (!c.report.note.empty() && c.report.status != CheckStatus::Pass) out << "  (" << c.report.note << ")";
        out << '\n';
      }
      std::size_t flagged = 0;
      for (const ConvergenceEntry& e : report.convergence) flagged += e.flag != "ok";
      out << "convergence groups: " << report.convergence.size() << ", without trend: " << flagged << '\n';
      out << "overall: " << (report.pass ? "pass" : "fail") << '\n';
      break;
    }
  }
}

void emitReport(const RunReport& report, ReportFormat format, const std::string& path, bool withTimings) {
  std::ofstream out(path);
  if (!out) throw IOError("cannot open '" + path + "' for writing");
  writeReport(out, report, format, withTimings);
  if (!out) throw IOError("failed writing '" + path + "'");
}

int runVerifyCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Identity verification suites for fractional psi-Fueter operators"};
  std::string suite, configPath, nodes, alpha, beta, u, v, corpus, reportPath, format;
  std::optional<unsigned> seed;
  std::optional<int> jobs;
  bool timings = false;
  app.add_option("suite", suite, "classical | fractional | perturbed | all")
      ->required()
      ->check(CLI::IsMember({"classical", "fractional", "perturbed", "all"}));
  app.add_option("--config", configPath, "key = value configuration file");
  app.add_option("--nodes", nodes, "refinement ladder, e.g. 8,12,16");
  app.add_option("--alpha", alpha, "orders alpha (1 or 4 entries, complex as a+bi)");
  app.add_option("--beta", beta, "orders beta");
  app.add_option("--u", u, "perturbation u (4 entries)");
  app.add_option("--v", v, "perturbation v (4 entries)");
  app.add_option("--corpus", corpus, "comma-separated corpus selection");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--jobs", jobs, "worker threads (default: $FUETERLAB_JOBS or 1)");
  app.add_option("--report", reportPath, "write the report to this file");
  app.add_option("--format", format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--timings", timings, "include wall-clock seconds in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    SuiteConfig cfg;
    if (const char* env = std::getenv("FUETERLAB_JOBS")) {
      try {
        cfg.jobs = std::stoi(env);
      } catch (const std::exception&) {
        throw ConfigError("FUETERLAB_JOBS: not an integer");
      }
    }
    if (!configPath.empty()) cfg = loadConfig(configPath, cfg);
    cfg.suite = suite;
    if (!nodes.empty()) cfg.nodes = parseNodes(nodes, "--nodes");
    if (!alpha.empty()) cfg.alpha = parseComplex4(alpha, "--alpha");
    if (!beta.empty()) cfg.beta = parseComplex4(beta, "--beta");
    if (!u.empty()) cfg.u = parseQuat(u, "--u");
    if (!v.empty()) cfg.v = parseQuat(v, "--v");
    if (!corpus.empty()) cfg.corpus = splitList(corpus);
    if (seed) cfg.seed = *seed;
    if (jobs) cfg.jobs = *jobs;
    validate(cfg);

    const ReportFormat fmt = reportFormatFromString(format.empty() ? (reportPath.empty() ? "text" : "json") : format);
    const RunReport report = runSuite(cfg);
    if (reportPath.empty()) {
      writeReport(out, report, fmt, timings);
    } else {
      emitReport(report, fmt, reportPath, timings);
      out << "overall: " << (report.pass ? "pass" : "fail") << '\n';
    }
    return report.pass ? 0 : 1;
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const IOError& e) {
    err << e.what() << '\n';
    return 2;
  }
}

}  // namespace fueterlab
