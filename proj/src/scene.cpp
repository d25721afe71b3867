#include "excalc/scene.hpp"

#include <cmath>
#include <fstream>

namespace excalc {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw SceneError("scene: " + where + ": " + what);
}

std::complex<double> cplxOf(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number())
    fail(where, "expected a complex number as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Region regionOf(const ordered_json& j, const std::string& where) {
  Region r;
  if (!j.is_array()) fail(where, "expected a list of annuli");
  for (auto& p : j) {
    Region::Prim prim;
    prim.chart = p.at("chart").get<std::string>();
    prim.center = cplxOf(p.at("center"), where + ".center");
    prim.r0 = p.at("r0").get<double>();
    prim.r1 = p.at("r1").get<double>();
    if (prim.r0 < 0 || prim.r1 < prim.r0) fail(where, "bad annulus radii");
    r.prims.push_back(std::move(prim));
  }
  return r;
}

AffineReal affineOf(const ordered_json& j, const std::string& where) {
  AffineReal a;
  a.c0 = j.at("c0").get<double>();
  for (auto& v : j.at("c")) {
    if (!v.is_number()) fail(where, "affine coefficients must be numbers");
    a.c.push_back(v.get<double>());
  }
  return a;
}

Simplex simplexOf(const ordered_json& j, const std::string& where) {
  std::string kind = j.at("kind").get<std::string>();
  std::string chart = j.value("chart", std::string());
  double sign = j.value("sign", 1.0);
  if (kind == "affine") {
    std::vector<std::vector<std::complex<double>>> verts;
    for (auto& v : j.at("verts")) {
      std::vector<std::complex<double>> pt;
      for (auto& c : v) pt.push_back(cplxOf(c, where + ".verts"));
      verts.push_back(std::move(pt));
    }
    return Simplex::affineSimplex(chart, std::move(verts), sign);
  }
  if (kind == "polar")
    return Simplex::polarTriangle(chart, cplxOf(j.at("center"), where),
                                  affineOf(j.at("R"), where + ".R"),
                                  affineOf(j.at("A"), where + ".A"), sign);
  if (kind == "arc")
    return Simplex::arc(chart, cplxOf(j.at("center"), where),
                        j.at("r").get<double>(), j.at("a0").get<double>(),
                        j.at("a1").get<double>(), sign);
  if (kind == "cone")
    return Simplex::coneOverArc(chart, cplxOf(j.at("apex"), where),
                                cplxOf(j.at("center"), where),
                                j.at("r").get<double>(),
                                j.at("a0").get<double>(),
                                j.at("a1").get<double>(), sign);
  if (kind == "point") {
    std::vector<std::complex<double>> p;
    for (auto& c : j.at("p")) p.push_back(cplxOf(c, where + ".p"));
    return Simplex::point(chart, std::move(p), sign);
  }
  fail(where, "unknown simplex kind '" + kind + "'");
}

// ${name} / ${-name} parameter substitution inside a string.
std::string substParams(const std::string& s,
                        const std::map<std::string, double>& params,
                        const std::string& where) {
  std::string out;
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '$' && i + 1 < s.size() && s[i + 1] == '{') {
      size_t e = s.find('}', i + 2);
      if (e == std::string::npos) fail(where, "unterminated ${...}");
      std::string tok = s.substr(i + 2, e - i - 2);
      bool neg = !tok.empty() && tok[0] == '-';
      std::string name = neg ? tok.substr(1) : tok;
      auto it = params.find(name);
      if (it == params.end()) fail(where, "unknown parameter '" + name + "'");
      double v = neg ? -it->second : it->second;
      long iv = std::lround(v);
      if (std::abs(v - (double)iv) > 1e-9)
        fail(where, "parameter '" + name + "' is not an integer");
      out += std::to_string(iv);
      i = e + 1;
    } else {
      out += s[i++];
    }
  }
  return out;
}

void substAll(ordered_json& j, const std::map<std::string, double>& params) {
  if (j.is_string())
    j = substParams(j.get<std::string>(), params, "parameter substitution");
  else if (j.is_object() || j.is_array())
    for (auto& v : j) substAll(v, params);
}

}  // namespace

int Scene::chartDim(const std::string& id) const {
  for (auto& c : charts)
    if (c.id == id) return c.n;
  return 1;
}

Scene loadScene(const std::string& path,
                const std::map<std::string, double>& overrides) {
  std::ifstream in(path);
  if (!in) throw SceneError("scene: cannot open '" + path + "'");
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw SceneError("scene: parse error in '" + path + "': " + e.what());
  }

  Scene sc;
  sc.path = path;
  sc.name = j.value("name", std::string("unnamed"));
  auto step = [&](const std::string& what, auto&& fn) {
    try {
      fn();
    } catch (const SceneError&) {
      throw;
    } catch (const std::exception& e) {
      throw SceneError("scene '" + sc.name + "': " + what + ": " + e.what());
    }
  };

  if (j.contains("params"))
    for (auto& [k, v] : j.at("params").items())
      sc.params[k] = v.get<double>();
  for (auto& [k, v] : overrides) sc.params[k] = v;
  substAll(j, sc.params);

  step("charts", [&] {
    for (auto& c : j.value("charts", ordered_json::array())) {
      Chart ch;
      ch.id = c.at("id").get<std::string>();
      ch.n = c.value("n", 1);
      sc.charts.push_back(std::move(ch));
    }
  });

  step("transitions", [&] {
    for (auto& t : j.value("transitions", ordered_json::array())) {
      TransitionMap tm;
      tm.from = t.at("from").get<std::string>();
      tm.to = t.at("to").get<std::string>();
      for (auto& e : t.at("map"))
        tm.comp.push_back(parseField(e.get<std::string>()));
      checkHolomorphic(tm.comp, sc.chartDim(tm.from),
                       "transition " + tm.from + "->" + tm.to);
      tm.overlap = regionOf(t.at("overlap"), "transition overlap");
      sc.transitions.push_back(std::move(tm));
    }
  });

  // sampled invertibility: composing with the reverse map is the identity
  step("transition round-trip", [&] {
    for (auto& t : sc.transitions) {
      const TransitionMap* back = nullptr;
      for (auto& o : sc.transitions)
        if (o.from == t.to && o.to == t.from) back = &o;
      if (!back) continue;
      std::vector<ScalarField> comp;
      for (auto& b : back->comp) comp.push_back(b.substCoords(t.comp));
      for (auto& [ch, z] : sampleRegion(t.overlap, 10, 0x5EED)) {
        EvalPoint p;
        p.z = {z};
        for (size_t i = 0; i < comp.size(); ++i)
          if (std::abs(comp[i].eval(p) - (i == 0 ? z : 0.0)) > 1e-9)
            throw ExcalcError(t.from + "->" + t.to +
                              " is not inverted by the reverse map at " +
                              std::to_string(z.real()) + "+" +
                              std::to_string(z.imag()) + "i");
      }
    }
  });

  if (j.contains("bundle")) {
    step("bundle", [&] {
      auto& b = j.at("bundle");
      BundleData bd;
      bd.rank = b.at("rank").get<int>();
      bd.n = b.value("n", 1);
      for (auto& c : sc.charts) bd.charts.push_back(c.id);
      for (auto& g : b.at("g")) {
        BundleTransition bt;
        bt.from = g.at("from").get<std::string>();
        bt.to = g.at("to").get<std::string>();
        const TransitionMap* tm = nullptr;
        for (auto& t : sc.transitions)
          if (t.from == bt.from && t.to == bt.to) tm = &t;
        if (!tm)
          throw ExcalcError("no coordinate transition for bundle pair " +
                            bt.from + "->" + bt.to);
        bt.coordMap = tm->comp;
        bt.overlap = tm->overlap;
        auto& m = g.at("matrix");
        bt.g = FieldMatrix((int)m.size(), (int)m[0].size());
        for (int r = 0; r < bt.g.rows; ++r)
          for (int cix = 0; cix < bt.g.cols; ++cix)
            bt.g.at(r, cix) = parseField(m[r][cix].get<std::string>());
        bd.transitions.push_back(std::move(bt));
      }
      checkBundle(bd);
      sc.bundle = std::move(bd);
    });
  }

  if (j.contains("sections")) {
    step("sections", [&] {
      auto& s = j.at("sections");
      SectionTuple st;
      st.rank = s.at("rank").get<int>();
      for (auto& [chart, rows] : s.at("comps").items()) {
        std::vector<std::vector<ScalarField>> rr;
        for (auto& row : rows) {
          std::vector<ScalarField> r1;
          for (auto& e : row) r1.push_back(parseField(e.get<std::string>()));
          rr.push_back(std::move(r1));
        }
        st.comps[chart] = std::move(rr);
      }
      if (sc.bundle) checkSections(*sc.bundle, st);
      sc.sections = std::move(st);
    });
  }

  if (j.contains("v0")) {
    step("v0", [&] {
      for (auto& [chart, reg] : j.at("v0").items())
        sc.v0[chart] = regionOf(reg, "v0." + chart);
    });
  }

  if (j.contains("connections")) {
    step("connections", [&] {
      auto& c = j.at("connections").at("c1");
      ConnectionData cd;
      cd.rank = sc.bundle ? sc.bundle->rank : 1;
      for (auto& [chart, m] : c.items()) {
        int n = sc.chartDim(chart);
        if (m.is_string() && m.get<std::string>() == "zero") {
          cd.theta.emplace(chart,
                           FormMatrix::zeroConnection(cd.rank, n, chart));
          continue;
        }
        FormMatrix fm((int)m.size(), (int)m[0].size(), n, 1, chart);
        for (int r = 0; r < fm.rows; ++r)
          for (int cix = 0; cix < fm.cols; ++cix)
            fm.at(r, cix) = parseForm(m[r][cix].get<std::string>(), n, chart);
        cd.theta.emplace(chart, std::move(fm));
      }
      sc.c1 = std::move(cd);
    });
  }

  if (j.contains("covering")) {
    step("covering", [&] {
      auto& c = j.at("covering");
      for (auto& z : c.value("zones", ordered_json::array())) {
        PUZone zn;
        zn.chart = z.at("chart").get<std::string>();
        zn.center = cplxOf(z.at("center"), "zone center");
        zn.rIn = z.at("r_in").get<double>();
        zn.rOut = z.at("r_out").get<double>();
        zn.innerSet = z.value("inner_set", 1);
        sc.puZones.push_back(std::move(zn));
      }
      ordered_json defs = c.value("defaults", ordered_json::object());
      for (auto& [chart, v] : defs.items()) sc.puDefaults[chart] = v.get<int>();
      std::string prof = c.value("profile", std::string("standard"));
      if (prof == "standard")
        sc.profile = BumpProfile::Standard;
      else if (prof == "cubic")
        sc.profile = BumpProfile::Cubic;
      else
        throw ExcalcError("unknown bump profile '" + prof + "'");
      sc.pu = buildPartitionOfUnity(sc.puZones, sc.puDefaults, sc.profile);
    });
  }

  if (j.contains("honeycomb")) {
    step("honeycomb", [&] {
      HoneycombSystem h;
      for (auto& c : j.at("honeycomb").at("cells"))
        h.cells.push_back({c.at("chart").get<std::string>(),
                           cplxOf(c.at("center"), "cell center"),
                           c.at("r").get<double>()});
      sc.honeycomb = std::move(h);
    });
  }

  if (j.contains("triangulation")) {
    step("triangulation", [&] {
      Triangulation t;
      auto& tj = j.at("triangulation");
      int i = 0;
      for (auto& s : tj.at("simplices"))
        t.top.append(simplexOf(s, "simplex " + std::to_string(i++)));
      for (auto& e : tj.value("incidence", ordered_json::array())) {
        IncidenceEntry ie;
        ie.simplexA = e.at("a").get<int>();
        ie.faceA = e.at("face_a").get<int>();
        ie.simplexB = e.at("b").get<int>();
        ie.faceB = e.at("face_b").get<int>();
        if (e.contains("transition_b_to_a")) {
          std::vector<ScalarField> comp;
          for (auto& f : e.at("transition_b_to_a"))
            comp.push_back(parseField(f.get<std::string>()));
          ie.transitionBtoA = std::move(comp);
        }
        t.incidence.push_back(std::move(ie));
      }
      checkCoherence(t);
      sc.tri = std::move(t);
    });
  }

  if (j.contains("global_form")) {
    step("global_form", [&] {
      SceneForm f;
      for (auto& [chart, e] : j.at("global_form").items())
        f.comp.emplace(chart, parseForm(e.get<std::string>(),
                                        sc.chartDim(chart), chart));
      sc.globalForm = std::move(f);
    });
  }

  if (j.contains("foliation")) {
    step("foliation", [&] {
      auto& f = j.at("foliation");
      Scene::Foliation fo{parseField(f.at("a").get<std::string>()),
                          parseField(f.at("b").get<std::string>())};
      checkHolomorphic({fo.a, fo.b}, 2, "foliation germ");
      auto& l = f.at("link");
      fo.linkChart = l.value("chart", std::string("y"));
      fo.linkCenter = cplxOf(l.at("center"), "link center");
      fo.linkRadius = l.at("radius").get<double>();
      fo.linkSegments = l.value("segments", 16);
      sc.foliation = std::move(fo);
    });
  }

  if (j.contains("bm_index")) {
    step("bm_index", [&] {
      auto& b = j.at("bm_index");
      Scene::BmIndexSpec sp;
      for (auto& e : b.at("f"))
        sp.f.push_back(parseField(e.get<std::string>()));
      sp.m = (int)sp.f.size();
      checkHolomorphic(sp.f, sp.m, "bm_index map");
      if (b.contains("radii")) {
        sp.radii.clear();
        for (auto& r : b.at("radii")) sp.radii.push_back(r.get<double>());
      }
      sp.segments = b.value("segments", 16);
      sp.refinement = b.value("refinement", 2);
      sc.bmindex = std::move(sp);
    });
  }

  if (j.contains("extendability")) {
    step("extendability", [&] {
      auto& e = j.at("extendability");
      Scene::Extendability ex{
          parseForm(e.at("omega").get<std::string>(), 2),
          {}};
      for (auto& f : e.at("map"))
        ex.map.push_back(parseField(f.get<std::string>()));
      checkHolomorphic(ex.map, 1, "extendability map");
      sc.ext = std::move(ex);
    });
  }

  if (j.contains("expected")) sc.expected = j.at("expected");
  return sc;
}

}  // namespace excalc
