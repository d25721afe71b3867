#include "excalc/commands.hpp"

#include <random>
#include <sstream>

namespace excalc {

namespace {

using cplx = std::complex<double>;
using nlohmann::ordered_json;

ordered_json cpxJ(cplx v) { return ordered_json::array({v.real(), v.imag()}); }

double numOf(const ordered_json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      size_t used = 0;
      double v = std::stod(j.get<std::string>(), &used);
      if (used == j.get<std::string>().size()) return v;
    } catch (...) {
    }
  }
  throw SceneError("expected block '" + where + "' is not numeric");
}

struct Ctx {
  const Scene* sc;
  const CliOptions& opt;
  ordered_json results = ordered_json::object();
  ordered_json quad = ordered_json::object();
  QuadStats stats;
  bool pass = true;

  const Scene& scene(const std::string& cmd) const {
    if (!sc) throw SceneError(cmd + ": a scene file is required");
    return *sc;
  }
  template <class T>
  const T& need(const std::optional<T>& o, const std::string& what,
                const std::string& cmd) const {
    if (!o) throw SceneError(cmd + ": " + what + " required");
    return *o;
  }
  ordered_json expectedBlock(const std::string& key) const {
    if (sc && sc->expected.contains(key)) return sc->expected.at(key);
    return ordered_json();
  }
  void checkValue(const std::string& key, cplx value, double fallbackTol) {
    ordered_json e = expectedBlock(key);
    if (e.is_null() || !e.contains("value")) return;
    double tol = e.value("tol", fallbackTol);
    cplx want;
    if (e.at("value").is_array())
      want = {numOf(e.at("value")[0], key), numOf(e.at("value")[1], key)};
    else
      want = {numOf(e.at("value"), key), 0.0};
    double err = std::abs(value - want);
    results["expected"] = cpxJ(want);
    results["expected_error"] = err;
    if (err > tol) pass = false;
  }
};

Region unionRegion(const std::map<std::string, Region>& m) {
  Region r;
  for (auto& [ch, reg] : m)
    for (auto& p : reg.prims) r.prims.push_back(p);
  return r;
}

ResidueTheoremInput theoremInput(Ctx& c, const std::string& cmd) {
  const Scene& sc = c.scene(cmd);
  ResidueTheoremInput in;
  in.bundle = c.need(sc.bundle, "bundle", cmd);
  in.sections = c.need(sc.sections, "sections", cmd);
  if (sc.v0.empty()) throw SceneError(cmd + ": v0 region required");
  in.v0 = sc.v0;
  in.c1 = c.need(sc.c1, "connection c1", cmd);
  in.pu = c.need(sc.pu, "covering/partition of unity", cmd);
  in.honeycomb = c.need(sc.honeycomb, "honeycomb", cmd);
  in.tri = c.need(sc.tri, "triangulation", cmd);
  in.q = c.opt.q;
  return in;
}

void cmdChern(Ctx& c) {
  const Scene& sc = c.scene("chern");
  ResidueTheoremInput in = theoremInput(c, "chern");
  ConnectionData c0 = trivialConnection(in.bundle, in.sections, in.v0,
                                        c.opt.seed);
  ConnectionData glued = glueConnections(in.pu, c0, in.c1);
  ChernForm cq = chernForm(glued, c.opt.q);
  cplx val = integrateFundamentalClass(cq.comp, in.tri, c.opt.tol, &c.stats);
  c.results["q"] = c.opt.q;
  c.results["integral"] = cpxJ(val);
  c.checkValue("chern", val, 1e-6);
  (void)sc;
}

void cmdBottDiff(Ctx& c) {
  const Scene& sc = c.scene("bott-diff");
  ResidueTheoremInput in = theoremInput(c, "bott-diff");
  ConnectionData c0 = trivialConnection(in.bundle, in.sections, in.v0,
                                        c.opt.seed);
  DifferenceForm b01 = bottDifference(c0, in.c1, c.opt.q);
  DifferenceForm b10 = bottDifference(in.c1, c0, c.opt.q);
  ChernForm cq0 = chernForm(c0, c.opt.q), cq1 = chernForm(in.c1, c.opt.q);
  double maxIdent = 0.0, maxAnti = 0.0;
  int used = 0;
  for (auto& [chart, z] : sampleRegion(unionRegion(sc.v0),
                                       std::max(1, c.opt.trials),
                                       c.opt.seed)) {
    if (!b01.comp.count(chart)) continue;
    EvalPoint p;
    p.z = {z};
    Form ident = b01.on(chart).d() - (cq1.on(chart) - cq0.on(chart));
    Form anti = b01.on(chart) + b10.on(chart);
    maxIdent = std::max(maxIdent, formCoeffNorm(ident, p));
    maxAnti = std::max(maxAnti, formCoeffNorm(anti, p));
    ++used;
  }
  c.results["q"] = c.opt.q;
  c.results["samples"] = used;
  c.results["max_identity_residual"] = maxIdent;
  c.results["max_antisymmetry_residual"] = maxAnti;
  if (used == 0 || maxIdent > 1e-7 || maxAnti > 1e-12) c.pass = false;
}

void cmdCechVerify(Ctx& c) {
  const Scene& sc = c.scene("cech verify");
  const PartitionOfUnity& pu =
      c.need(sc.pu, "covering/partition of unity", "cech verify");
  const HoneycombSystem& h = c.need(sc.honeycomb, "honeycomb", "cech verify");
  const Triangulation& tri = c.need(sc.tri, "triangulation", "cech verify");
  CechCochain coc;
  if (sc.bundle) {
    coc = localizedChernCocycle(*sc.bundle,
                                c.need(sc.sections, "sections", "cech verify"),
                                sc.v0,
                                c.need(sc.c1, "connection c1", "cech verify"),
                                c.opt.q);
    c.results["cochain"] = "localized-chern";
  } else {
    coc = restrictGlobal(c.need(sc.globalForm, "global_form or bundle",
                                "cech verify"));
    c.results["cochain"] = "restricted-global";
  }
  // sampled D-closedness
  CechCochain dd = applyD(coc);
  double maxD = 0.0;
  for (auto& ch : sc.charts) {
    Region r{{{ch.id, cplx(0, 0), 0.2, 1.0}}};
    for (auto& [chart, z] : sampleRegion(r, 10, c.opt.seed)) {
      EvalPoint p;
      p.z.assign(ch.n, cplx(0, 0));
      p.z[0] = z;
      for (auto* part : {&dd.w0, &dd.w1, &dd.w01})
        if (part->count(chart))
          maxD = std::max(maxD, formCoeffNorm(part->at(chart), p));
    }
  }
  cplx hc = honeycombIntegrate(coc, tri.top, h, c.opt.tol, &c.stats);
  SceneForm collated = collate(coc, pu);
  cplx direct = integrateFundamentalClass(collated.comp, tri, c.opt.tol,
                                          &c.stats);
  c.results["max_d_closedness_residual"] = maxD;
  c.results["honeycomb_integral"] = cpxJ(hc);
  c.results["direct_integral"] = cpxJ(direct);
  c.results["difference"] = std::abs(hc - direct);
  if (maxD > 1e-7) c.pass = false;
  if (std::abs(hc - direct) > 2 * std::max(c.opt.tol, 1e-9)) c.pass = false;
  c.checkValue("cech", hc, 2e-6);
}

void cmdResidueIndex(Ctx& c) {
  const Scene& sc = c.scene("residue index");
  const Scene::BmIndexSpec& sp = c.need(sc.bmindex, "bm_index", "residue index");
  Form beta = bochnerMartinelliKernel(sp.m);
  Form pulled = beta.pullback(sp.f, sp.m, "");
  ordered_json runs = ordered_json::array();
  long first = 0;
  bool same = true, integral = true;
  for (size_t i = 0; i < sp.radii.size(); ++i) {
    double r = sp.radii[i];
    Chain sphere = sp.m == 1 ? linkOfPoint("", cplx(0, 0), r, sp.segments)
                             : sphereChain(2, r, sp.refinement);
    cplx val = -integrateOverChain(pulled, sphere, c.opt.tol, &c.stats);
    long idx = std::lround(val.real());
    double resid = std::abs(val - cplx((double)idx, 0.0));
    runs.push_back({{"radius", r}, {"index", idx}, {"residual", resid}});
    if (i == 0) first = idx;
    if (idx != first) same = false;
    if (resid > 1e-3) integral = false;
  }
  c.results["m"] = sp.m;
  c.results["runs"] = runs;
  c.results["radius_invariant"] = same;
  if (!same || !integral) c.pass = false;
  ordered_json e = c.expectedBlock("residue-index");
  if (!e.is_null() && e.contains("index")) {
    c.results["expected_index"] = e.at("index");
    if (first != (long)numOf(e.at("index"), "residue-index")) c.pass = false;
  }
}

void cmdCamachoSad(Ctx& c) {
  const Scene& sc = c.scene("residue camacho-sad");
  const Scene::Foliation& f =
      c.need(sc.foliation, "foliation", "residue camacho-sad");
  Chain link = linkOfPoint(f.linkChart, f.linkCenter, f.linkRadius,
                           f.linkSegments);
  cplx val = camachoSadResidue({f.a, f.b}, link, c.opt.tol, &c.stats);
  c.results["residue"] = cpxJ(val);
  c.results["link_radius"] = f.linkRadius;
  c.checkValue("camacho-sad", val, 1e-8);
}

void cmdResidueTheorem(Ctx& c) {
  ResidueTheoremInput in = theoremInput(c, "verify residue-theorem");
  double tol = std::max(c.opt.tol, 1e-9);
  ResidueReport rep = residueTheoremCheck(in, tol);
  ordered_json locals = ordered_json::array();
  for (auto& l : rep.locals) {
    ordered_json pts = ordered_json::array();
    for (auto& p : l.points) pts.push_back(cpxJ(p.z));
    locals.push_back({{"chart", l.chart},
                      {"center", cpxJ(l.center)},
                      {"singular_points", pts},
                      {"value", cpxJ(l.value)},
                      {"integer_residual", l.integerResidual}});
    if (l.integerResidual > 1e-3) c.pass = false;
  }
  c.results["locals"] = locals;
  c.results["global"] = cpxJ(rep.global);
  c.results["discrepancy"] = rep.discrepancy;
  c.stats.cells += rep.stats.cells;
  c.stats.errorEstimate += rep.stats.errorEstimate;
  if (!rep.pass) c.pass = false;
  c.checkValue("residue-theorem", rep.global, 1e-6);
  ordered_json e = c.expectedBlock("residue-theorem");
  if (!e.is_null() && e.contains("locals")) {
    if (e.at("locals").size() != rep.locals.size()) c.pass = false;
    for (size_t i = 0; i < rep.locals.size() && i < e.at("locals").size();
         ++i)
      if (std::abs(rep.locals[i].value -
                   cplx(numOf(e.at("locals")[i], "residue-theorem.locals"),
                        0.0)) > 1e-3)
        c.pass = false;
  }
}

void cmdStokes(Ctx& c) {
  std::mt19937_64 rng(c.opt.seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_real_distribution<double> pos(-1.0, 1.0);
  auto randPoly = [&] {
    ScalarField f(0L);
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; a + b <= 2; ++b)
        f = f + ScalarField((long)coeff(rng)) *
                    ScalarField::coord(1).pow(a) *
                    ScalarField::coordBar(1).pow(b);
    return f;
  };
  double maxDiff = 0.0;
  int trials = std::max(1, c.opt.trials), passed = 0;
  for (int t = 0; t < trials; ++t) {
    Form w(1, 1, "");
    w.addTerm(randPoly(), {{Covector::DZ, 1}});
    w.addTerm(randPoly(), {{Covector::DZBAR, 1}});
    std::vector<std::vector<cplx>> verts;
    for (int v = 0; v < 3; ++v) verts.push_back({cplx(pos(rng), pos(rng))});
    Chain tri;
    tri.append(Simplex::affineSimplex("", verts));
    StokesReport rep = stokesCheck(w, tri, std::min(c.opt.tol, 1e-9));
    maxDiff = std::max(maxDiff, rep.difference());
    if (rep.difference() < 1e-8) ++passed;
  }
  c.results["trials"] = trials;
  c.results["passed"] = passed;
  c.results["max_difference"] = maxDiff;
  if (passed != trials) c.pass = false;
}

void cmdBloomHerrera(Ctx& c) {
  Form omega = Form::term(2, ScalarField::coord(1), {2}, {});
  std::vector<ScalarField> map = {parseField("z1^5"),
                                  parseField("z1^6+z1^7")};
  if (c.sc && c.sc->ext) {
    omega = c.sc->ext->omega;
    map = c.sc->ext->map;
  }
  int N = c.opt.maxDegree;
  if (N < 1) throw SceneError("bloom-herrera: --max-degree must be >= 1");
  ObstructionReport rep = bloomHerreraPipeline(omega, map, N);
  // truncation sweep: first N where the membership system turns infeasible
  long nStar = -1;
  bool monotone = true, seenInfeasible = false;
  for (int n = 1; n <= N; ++n) {
    ObstructionReport r = bloomHerreraPipeline(omega, map, n);
    if (!r.membership.feasible) {
      if (nStar < 0) nStar = n;
      seenInfeasible = true;
    } else {
      if (seenInfeasible) monotone = false;
      if (!r.membership.residual.isZero()) c.pass = false;
    }
  }
  c.results["max_degree"] = N;
  c.results["h"] = rep.h.str();
  c.results["verdict"] = rep.obstruction ? "INFEASIBLE" : "FEASIBLE";
  if (rep.obstruction) {
    c.results["obstruction_degree"] = rep.membership.obstructionDegree;
    c.results["first_infeasible_truncation"] = nStar;
  } else {
    ordered_json cert = ordered_json::array();
    for (auto& t : rep.membership.certificate)
      cert.push_back({{"a", t.a}, {"b", t.b}, {"coeff", t.coeff.str()}});
    c.results["certificate"] = cert;
    c.results["certificate_residual_zero"] = rep.membership.residual.isZero();
    if (!rep.membership.residual.isZero()) c.pass = false;
  }
  if (!monotone) c.pass = false;
  ordered_json e = c.expectedBlock("bloom-herrera");
  if (!e.is_null() && e.contains("obstruction_degree")) {
    long want = (long)numOf(e.at("obstruction_degree"), "bloom-herrera");
    if (!rep.obstruction || rep.membership.obstructionDegree != want ||
        nStar != want)
      c.pass = false;
  }
}

}  // namespace

const std::string& conventionMemo() {
  static const std::string memo =
      "excalc conventions v1: Wirtinger d = dz d/dz + dzbar d/dzbar (+ "
      "dsigma); trivial connection theta = -dF F^-1; transition v_a = g "
      "v_b with g, coords in source-chart variables; Chern form c^q = "
      "principal q-minors of (i/2pi) K; Bott difference = minus the "
      "dsigma-part of c^q of the family connection, fibre-integrated over "
      "[0,1], so d bott(c0,c1) = c^q(c1) - c^q(c0); Cech D third component "
      "w1 - w0 - d w01; collate = rho0 w0 + rho1 w1 - d rho0 ^ w01; "
      "honeycomb interface = boundary orientation of the singular cells, "
      "interface term subtracted; bmIndex = -Re int f* beta_m with "
      "bmIndex(z) = +1 on the ccw unit circle and S^3 oriented as the "
      "boundary of the unit ball in C^2; Camacho-Sad = (1/2 pi i) oint "
      "a(0,y)/b(0,y) dy over the ccw link.";
  return memo;
}

std::string conventionMemoHash() {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : conventionMemo()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                (unsigned long long)h);
  return buf;
}

CommandResult runCommand(const Scene* scene, const CliOptions& opt) {
  std::string cmd;
  for (auto& c : opt.command) cmd += (cmd.empty() ? "" : " ") + c;

  Ctx ctx{scene, opt};
  if (cmd == "chern")
    cmdChern(ctx);
  else if (cmd == "bott-diff")
    cmdBottDiff(ctx);
  else if (cmd == "cech verify")
    cmdCechVerify(ctx);
  else if (cmd == "residue index")
    cmdResidueIndex(ctx);
  else if (cmd == "residue camacho-sad")
    cmdCamachoSad(ctx);
  else if (cmd == "verify residue-theorem")
    cmdResidueTheorem(ctx);
  else if (cmd == "verify stokes")
    cmdStokes(ctx);
  else if (cmd == "extendability bloom-herrera")
    cmdBloomHerrera(ctx);
  else
    throw SceneError("unknown command '" + cmd + "'");

  ordered_json rep;
  rep["schema"] = 1;
  rep["command"] = cmd;
  rep["scene"] = scene ? scene->name : "";
  if (scene && !scene->params.empty()) {
    ordered_json p = ordered_json::object();
    for (auto& [k, v] : scene->params) p[k] = v;
    rep["params"] = p;
  }
  rep["tol"] = opt.tol;
  rep["seed"] = opt.seed;
  rep["convention_memo_hash"] = conventionMemoHash();
  rep["results"] = ctx.results;
  rep["quadrature"] = {{"cells", ctx.stats.cells},
                       {"error_estimate", ctx.stats.errorEstimate}};
  rep["pass"] = ctx.pass;

  CommandResult out;
  out.exitCode = ctx.pass ? 0 : 1;
  out.report = std::move(rep);
  return out;
}

namespace {
void flatten(const ordered_json& j, const std::string& prefix,
             std::ostringstream& out) {
  if (j.is_object()) {
    for (auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())
             && j.size() > 2) {
    for (size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << " = " << j.dump() << "\n";
  }
}
}  // namespace

std::string renderTable(const nlohmann::ordered_json& report) {
  std::ostringstream out;
  flatten(report, "", out);
  return out.str();
}

}  // namespace excalc
