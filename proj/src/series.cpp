#include "excalc/series.hpp"

#include <algorithm>
#include <functional>

namespace excalc {

namespace {

using Mono = std::vector<long>;
using PolyMap = std::map<Mono, CRat>;

void addInto(PolyMap& m, const Mono& e, const CRat& v) {
  CRat s = m[e] + v;
  if (s.isZero())
    m.erase(e);
  else
    m[e] = s;
}

PolyMap polyMul(const PolyMap& a, const PolyMap& b) {
  PolyMap out;
  for (auto& [ea, ca] : a)
    for (auto& [eb, cb] : b) {
      Mono e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      addInto(out, e, ca * cb);
    }
  return out;
}

}  // namespace

CRat TruncatedSeries::coeff(long k) const {
  auto it = c.find(k);
  return it == c.end() ? CRat() : it->second;
}

void TruncatedSeries::set(long k, CRat v) {
  if (k < 0) throw ExcalcError("TruncatedSeries: negative degree");
  if (k > N || v.isZero())
    c.erase(k);
  else
    c[k] = std::move(v);
}

long TruncatedSeries::order() const {
  return c.empty() ? -1 : c.begin()->first;
}

long TruncatedSeries::maxDegree() const {
  return c.empty() ? -1 : c.rbegin()->first;
}

TruncatedSeries TruncatedSeries::add(const TruncatedSeries& o) const {
  TruncatedSeries out = zero(std::min(N, o.N));
  for (auto& [k, v] : c) out.set(k, v);
  for (auto& [k, v] : o.c) out.set(k, out.coeff(k) + v);
  return out;
}

TruncatedSeries TruncatedSeries::mul(const TruncatedSeries& o) const {
  TruncatedSeries out = zero(std::min(N, o.N));
  for (auto& [ka, va] : c)
    for (auto& [kb, vb] : o.c) {
      if (ka + kb > out.N) continue;
      out.set(ka + kb, out.coeff(ka + kb) + va * vb);
    }
  return out;
}

TruncatedSeries TruncatedSeries::scaled(const CRat& s) const {
  TruncatedSeries out = zero(N);
  if (s.isZero()) return out;
  for (auto& [k, v] : c) out.set(k, v * s);
  return out;
}

TruncatedSeries TruncatedSeries::powi(long k) const {
  if (k < 0) throw ExcalcError("TruncatedSeries: negative power");
  TruncatedSeries acc = zero(N);
  acc.set(0, CRat(1));
  for (long i = 0; i < k; ++i) acc = acc.mul(*this);
  return acc;
}

TruncatedSeries TruncatedSeries::truncated(int n) const {
  TruncatedSeries out = zero(n);
  for (auto& [k, v] : c) out.set(k, v);
  return out;
}

bool TruncatedSeries::sameAs(const TruncatedSeries& o) const {
  return c == o.c;
}

std::string TruncatedSeries::str() const {
  if (c.empty()) return "0";
  std::string out;
  for (auto& [k, v] : c) {
    if (!out.empty()) out += " + ";
    out += "(" + v.str() + ")";
    if (k == 1)
      out += "*z";
    else if (k > 1)
      out += "*z^" + std::to_string(k);
  }
  return out;
}

std::map<std::vector<long>, CRat> laurentCoeffs(const ScalarField& f,
                                                int nvars) {
  std::function<PolyMap(const ExprPtr&)> rec = [&](const ExprPtr& e) {
    PolyMap out;
    switch (e->op) {
      case Op::Const: {
        if (!e->c.exact)
          throw ExcalcError("laurentCoeffs: non-exact constant");
        if (!e->c.r.isZero()) out[Mono(nvars, 0)] = e->c.r;
        return out;
      }
      case Op::Coord: {
        if (e->idx > nvars)
          throw ExcalcError("laurentCoeffs: coordinate index out of range");
        Mono m(nvars, 0);
        m[e->idx - 1] = 1;
        out[m] = CRat(1);
        return out;
      }
      case Op::Add: {
        for (auto& k : e->kids)
          for (auto& [m, v] : rec(k)) addInto(out, m, v);
        return out;
      }
      case Op::Mul: {
        out[Mono(nvars, 0)] = CRat(1);
        for (auto& k : e->kids) out = polyMul(out, rec(k));
        return out;
      }
      case Op::Pow: {
        PolyMap base = rec(e->kids[0]);
        if (e->expo >= 0) {
          out[Mono(nvars, 0)] = CRat(1);
          for (long i = 0; i < e->expo; ++i) out = polyMul(out, base);
          return out;
        }
        if (base.size() != 1)
          throw ExcalcError(
              "laurentCoeffs: negative power of a non-monomial");
        auto& [m, v] = *base.begin();
        Mono e2(nvars);
        for (int i = 0; i < nvars; ++i) e2[i] = m[i] * e->expo;
        out[e2] = v.powi(e->expo);
        return out;
      }
      default:
        throw ExcalcError(
            "laurentCoeffs: field is not a polynomial in z1..zn");
    }
  };
  return rec(f.expr());
}

TruncatedSeries seriesOfField(const ScalarField& f, int N) {
  TruncatedSeries out = TruncatedSeries::zero(N);
  for (auto& [m, v] : laurentCoeffs(f, 1)) {
    if (m[0] < 0)
      throw ExcalcError("seriesOfField: negative exponent");
    out.set(m[0], out.coeff(m[0]) + v);
  }
  return out;
}

TruncatedSeries pullbackSeries(long a, long b,
                               const std::vector<TruncatedSeries>& f, int N) {
  if (a < 0 || b < 0)
    throw ExcalcError("pullbackSeries: exponents must be nonnegative");
  if (f.size() != 2)
    throw ExcalcError("pullbackSeries: expected two generators");
  return f[0].truncated(N).powi(a).mul(f[1].truncated(N).powi(b));
}

TruncatedSeries primitive1D(const Form& a) {
  if (a.n() != 1 || a.degree() != 1)
    throw ExcalcError("primitive1D: expected a 1-form in one variable");
  // collect the Laurent coefficient of dz
  std::map<long, CRat> lc;
  for (auto& t : a.terms()) {
    if (t.J.size() || t.ds)
      throw ExcalcError("primitive1D: form must be holomorphic");
    for (auto& [m, v] : laurentCoeffs(t.c, 1)) {
      CRat s = lc[m[0]] + v;
      if (s.isZero())
        lc.erase(m[0]);
      else
        lc[m[0]] = s;
    }
  }
  if (lc.count(-1))
    throw ExcalcError("primitive1D: z^-1 term integrates to a logarithm");
  long top = lc.empty() ? -1 : lc.rbegin()->first;
  TruncatedSeries out = TruncatedSeries::zero((int)top + 1);
  for (auto& [k, v] : lc) {
    if (k < 0)
      throw ExcalcError("primitive1D: coefficient is not polynomial");
    out.set(k + 1, v / CRat(k + 1));
  }
  return out;
}

MembershipResult subalgebraMembership(const TruncatedSeries& h,
                                      const std::vector<TruncatedSeries>& f,
                                      int N) {
  if (f.size() != 2)
    throw ExcalcError("subalgebraMembership: expected two generators");
  TruncatedSeries u = f[0].truncated(N), v = f[1].truncated(N);
  for (auto& g : {u, v})
    if (!g.isZero() && g.order() < 1)
      throw ExcalcError(
          "subalgebraMembership: generators must vanish at the origin");

  // monomial pairs whose series can reach degree <= N
  std::vector<std::pair<long, long>> pairs;
  std::vector<TruncatedSeries> cols;
  long ou = u.isZero() ? N + 1 : u.order();
  long ov = v.isZero() ? N + 1 : v.order();
  for (long a = 0; a * ou <= N; ++a)
    for (long b = (a == 0 ? 1 : 0); a * ou + b * ov <= N; ++b) {
      pairs.push_back({a, b});
      cols.push_back(u.powi(a).mul(v.powi(b)));
    }
  int nc = (int)cols.size();

  // feasibility of the constraint rows for degrees 1..D, exact elimination
  auto solveUpTo = [&](int D, std::vector<CRat>* sol) {
    std::vector<std::vector<CRat>> M;  // rows: [col coeffs | rhs]
    for (long k = 1; k <= D; ++k) {
      std::vector<CRat> row(nc + 1);
      for (int j = 0; j < nc; ++j) row[j] = cols[j].coeff(k);
      row[nc] = h.coeff(k);
      M.push_back(std::move(row));
    }
    std::vector<int> pivotCol;
    int r = 0;
    for (int j = 0; j < nc && r < (int)M.size(); ++j) {
      int p = -1;
      for (int i = r; i < (int)M.size(); ++i)
        if (!M[i][j].isZero()) {
          p = i;
          break;
        }
      if (p < 0) continue;
      std::swap(M[r], M[p]);
      CRat inv = M[r][j].inv();
      for (int t = j; t <= nc; ++t) M[r][t] = M[r][t] * inv;
      for (int i = 0; i < (int)M.size(); ++i) {
        if (i == r || M[i][j].isZero()) continue;
        CRat fct = M[i][j];
        for (int t = j; t <= nc; ++t)
          M[i][t] = M[i][t] - fct * M[r][t];
      }
      pivotCol.push_back(j);
      ++r;
    }
    for (int i = r; i < (int)M.size(); ++i)
      if (!M[i][nc].isZero()) return false;
    if (sol) {
      sol->assign(nc, CRat());
      for (int i = 0; i < r; ++i) (*sol)[pivotCol[i]] = M[i][nc];
    }
    return true;
  };

  MembershipResult res;
  std::vector<CRat> sol;
  if (solveUpTo(N, &sol)) {
    res.feasible = true;
    TruncatedSeries recon = TruncatedSeries::zero(N);
    for (int j = 0; j < nc; ++j) {
      if (sol[j].isZero()) continue;
      res.certificate.push_back({pairs[j].first, pairs[j].second, sol[j]});
      recon = recon.add(cols[j].scaled(sol[j]));
    }
    res.residual = h.truncated(N).add(recon.scaled(CRat(-1)));
    res.residual.set(0, CRat());  // the absorbed additive constant
    return res;
  }
  res.feasible = false;
  for (int D = 1; D <= N; ++D)
    if (!solveUpTo(D, nullptr)) {
      res.obstructionDegree = D;
      break;
    }
  res.residual = TruncatedSeries::zero(N);
  return res;
}

ObstructionReport bloomHerreraPipeline(const Form& omega,
                                       const std::vector<ScalarField>& fmap,
                                       int N) {
  if (N < 1) throw ExcalcError("bloomHerreraPipeline: N must be >= 1");
  if ((int)fmap.size() != omega.n())
    throw ExcalcError("bloomHerreraPipeline: map/form dimension mismatch");
  Form pulled = omega.pullback(fmap, 1, "");
  ObstructionReport rep;
  rep.N = N;
  rep.h = primitive1D(pulled).truncated(N);
  std::vector<TruncatedSeries> gens;
  for (auto& g : fmap) gens.push_back(seriesOfField(g, N));
  rep.membership = subalgebraMembership(rep.h, gens, N);
  rep.obstruction = !rep.membership.feasible;
  return rep;
}

ObstructionReport bloomHerreraCertificate(int N) {
  Form omega = Form::term(2, ScalarField::coord(1), {2}, {});
  std::vector<ScalarField> fmap = {parseField("z1^5"),
                                   parseField("z1^6+z1^7")};
  return bloomHerreraPipeline(omega, fmap, N);
}

}  // namespace excalc
