#include "excalc/field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace excalc {

namespace {

ExprPtr node(Expr e) {
  switch (e.op) {
    case Op::Const:
      e.key = "C" + e.c.key();
      break;
    case Op::Coord:
      e.key = "z" + std::to_string(e.idx);
      break;
    case Op::CoordBar:
      e.key = "Z" + std::to_string(e.idx);
      break;
    case Op::Param:
      e.key = "s";
      break;
    case Op::Add: {
      e.key = "(+";
      for (auto& k : e.kids) e.key += " " + k->key;
      e.key += ")";
      break;
    }
    case Op::Mul: {
      e.key = "(*";
      for (auto& k : e.kids) e.key += " " + k->key;
      e.key += ")";
      break;
    }
    case Op::Pow:
      e.key = "(^ " + e.kids[0]->key + " " + std::to_string(e.expo) + ")";
      break;
    case Op::Exp:
      e.key = "(exp " + e.kids[0]->key + ")";
      break;
    case Op::Bump:
      e.key = "(B " + e.kids[0]->key + ")";
      break;
  }
  return std::make_shared<const Expr>(std::move(e));
}

bool isConst(const ExprPtr& e) { return e->op == Op::Const; }

// Split a normalized term into (constant coefficient, remaining factor).
// The remaining factor is nullptr when the term is a pure constant.
std::pair<CNum, ExprPtr> splitConst(const ExprPtr& e) {
  if (isConst(e)) return {e->c, nullptr};
  if (e->op == Op::Mul && isConst(e->kids[0])) {
    std::vector<ExprPtr> rest(e->kids.begin() + 1, e->kids.end());
    if (rest.size() == 1) return {e->kids[0]->c, rest[0]};
    Expr m;
    m.op = Op::Mul;
    m.kids = std::move(rest);
    return {e->kids[0]->c, node(std::move(m))};
  }
  return {CNum(1L), e};
}

}  // namespace

ExprPtr mkConst(CNum c) {
  Expr e;
  e.op = Op::Const;
  e.c = std::move(c);
  return node(std::move(e));
}

ExprPtr mkCoord(int i, bool bar) {
  Expr e;
  e.op = bar ? Op::CoordBar : Op::Coord;
  e.idx = i;
  return node(std::move(e));
}

ExprPtr mkParam() {
  Expr e;
  e.op = Op::Param;
  return node(std::move(e));
}

ExprPtr mkAdd(std::vector<ExprPtr> kids) {
  // key of "rest" -> (accumulated coefficient, rest expr)
  std::map<std::string, std::pair<CNum, ExprPtr>> terms;
  CNum constPart(0L);
  std::vector<ExprPtr> stack(kids.rbegin(), kids.rend());
  while (!stack.empty()) {
    ExprPtr k = stack.back();
    stack.pop_back();
    if (k->op == Op::Add) {
      for (auto it = k->kids.rbegin(); it != k->kids.rend(); ++it)
        stack.push_back(*it);
      continue;
    }
    auto [c, rest] = splitConst(k);
    if (!rest) {
      constPart = constPart + c;
      continue;
    }
    auto it = terms.find(rest->key);
    if (it == terms.end())
      terms.emplace(rest->key, std::make_pair(c, rest));
    else
      it->second.first = it->second.first + c;
  }
  std::vector<ExprPtr> out;
  for (auto& [kkey, cr] : terms) {
    auto& [c, rest] = cr;
    if (c.isZero()) continue;
    if (c.isOne())
      out.push_back(rest);
    else
      out.push_back(mkMul({mkConst(c), rest}));
  }
  if (!constPart.isZero() || out.empty()) out.push_back(mkConst(constPart));
  if (out.size() == 1) return out[0];
  std::sort(out.begin(), out.end(),
            [](const ExprPtr& a, const ExprPtr& b) { return a->key < b->key; });
  Expr e;
  e.op = Op::Add;
  e.kids = std::move(out);
  return node(std::move(e));
}

ExprPtr mkMul(std::vector<ExprPtr> kids) {
  CNum acc(1L);
  // base key -> (base, net exponent)
  std::map<std::string, std::pair<ExprPtr, long>> factors;
  std::vector<ExprPtr> stack(kids.rbegin(), kids.rend());
  while (!stack.empty()) {
    ExprPtr k = stack.back();
    stack.pop_back();
    if (k->op == Op::Mul) {
      for (auto it = k->kids.rbegin(); it != k->kids.rend(); ++it)
        stack.push_back(*it);
      continue;
    }
    if (isConst(k)) {
      acc = acc * k->c;
      continue;
    }
    ExprPtr base = k;
    long ex = 1;
    if (k->op == Op::Pow) {
      base = k->kids[0];
      ex = k->expo;
    }
    auto it = factors.find(base->key);
    if (it == factors.end())
      factors.emplace(base->key, std::make_pair(base, ex));
    else
      it->second.second += ex;
  }
  if (acc.isZero()) return mkConst(CNum(0L));
  // Sums with a positive exponent are distributed (expanded) so that the
  // canonical form of a polynomial is a flat sum of monomials; sums with a
  // negative exponent stay opaque as Pow nodes.
  std::vector<ExprPtr> addFactors;
  std::vector<ExprPtr> out;
  for (auto& [bkey, be] : factors) {
    auto& [base, ex] = be;
    if (ex == 0) continue;
    if (base->op == Op::Add && ex >= 1) {
      for (long r = 0; r < ex; ++r) addFactors.push_back(base);
      continue;
    }
    out.push_back(ex == 1 ? base : mkPow(base, ex));
  }
  if (!addFactors.empty()) {
    std::vector<ExprPtr> opaque = out;
    opaque.push_back(mkConst(acc));
    std::vector<ExprPtr> sumTerms = {mkMul(std::move(opaque))};
    for (auto& addF : addFactors) {
      std::vector<ExprPtr> next;
      for (auto& t : sumTerms)
        for (auto& kid : addF->kids) next.push_back(mkMul({t, kid}));
      sumTerms = std::move(next);
    }
    return mkAdd(std::move(sumTerms));
  }
  std::sort(out.begin(), out.end(),
            [](const ExprPtr& a, const ExprPtr& b) { return a->key < b->key; });
  if (out.empty()) return mkConst(acc);
  if (!acc.isOne()) out.insert(out.begin(), mkConst(acc));
  if (out.size() == 1) return out[0];
  Expr e;
  e.op = Op::Mul;
  e.kids = std::move(out);
  return node(std::move(e));
}

ExprPtr mkPow(ExprPtr base, long k) {
  if (k == 0) return mkConst(CNum(1L));
  if (k == 1) return base;
  if (isConst(base)) return mkConst(base->c.powi(k));
  if (base->op == Op::Pow) return mkPow(base->kids[0], k * base->expo);
  if (base->op == Op::Add && k >= 2 && k <= 32)
    return mkMul(std::vector<ExprPtr>((size_t)k, base));
  if (base->op == Op::Mul) {
    std::vector<ExprPtr> kids;
    for (auto& f : base->kids) kids.push_back(mkPow(f, k));
    return mkMul(std::move(kids));
  }
  Expr e;
  e.op = Op::Pow;
  e.expo = k;
  e.kids = {std::move(base)};
  return node(std::move(e));
}

ExprPtr mkExp(ExprPtr a) {
  if (isConst(a) && a->c.isZero()) return mkConst(CNum(1L));
  Expr e;
  e.op = Op::Exp;
  e.kids = {std::move(a)};
  return node(std::move(e));
}

ExprPtr mkBump(ExprPtr a) {
  if (isConst(a)) {
    double t = a->c.value().real();
    double v = std::abs(t) >= 1.0 ? 0.0 : std::exp(1.0 / (t * t - 1.0));
    return mkConst(CNum::approx({v, 0.0}));
  }
  Expr e;
  e.op = Op::Bump;
  e.kids = {std::move(a)};
  return node(std::move(e));
}

namespace {

ExprPtr conjE(const ExprPtr& e) {
  switch (e->op) {
    case Op::Const:
      return mkConst(e->c.conj());
    case Op::Coord:
      return mkCoord(e->idx, true);
    case Op::CoordBar:
      return mkCoord(e->idx, false);
    case Op::Param:
      return e;  // sigma is real
    case Op::Add: {
      std::vector<ExprPtr> kids;
      for (auto& k : e->kids) kids.push_back(conjE(k));
      return mkAdd(std::move(kids));
    }
    case Op::Mul: {
      std::vector<ExprPtr> kids;
      for (auto& k : e->kids) kids.push_back(conjE(k));
      return mkMul(std::move(kids));
    }
    case Op::Pow:
      return mkPow(conjE(e->kids[0]), e->expo);
    case Op::Exp:
      return mkExp(conjE(e->kids[0]));
    case Op::Bump:
      return mkBump(conjE(e->kids[0]));  // bump arguments are real-valued
  }
  throw ExcalcError("conj: bad node");
}

ExprPtr derivE(const ExprPtr& e, Var v) {
  auto zero = [] { return mkConst(CNum(0L)); };
  switch (e->op) {
    case Op::Const:
      return zero();
    case Op::Coord:
      return (v.kind == Var::Z && v.idx == e->idx) ? mkConst(CNum(1L)) : zero();
    case Op::CoordBar:
      return (v.kind == Var::ZBAR && v.idx == e->idx) ? mkConst(CNum(1L))
                                                      : zero();
    case Op::Param:
      return v.kind == Var::SIGMA ? mkConst(CNum(1L)) : zero();
    case Op::Add: {
      std::vector<ExprPtr> kids;
      for (auto& k : e->kids) kids.push_back(derivE(k, v));
      return mkAdd(std::move(kids));
    }
    case Op::Mul: {
      std::vector<ExprPtr> sum;
      for (size_t i = 0; i < e->kids.size(); ++i) {
        std::vector<ExprPtr> prod;
        for (size_t j = 0; j < e->kids.size(); ++j)
          prod.push_back(j == i ? derivE(e->kids[j], v) : e->kids[j]);
        sum.push_back(mkMul(std::move(prod)));
      }
      return mkAdd(std::move(sum));
    }
    case Op::Pow: {
      // d(b^k) = k b^{k-1} b'
      return mkMul({mkConst(CNum(e->expo)), mkPow(e->kids[0], e->expo - 1),
                    derivE(e->kids[0], v)});
    }
    case Op::Exp:
      return mkMul({e, derivE(e->kids[0], v)});
    case Op::Bump: {
      // B'(t) = -2 t / (t^2 - 1)^2 * B(t)
      const ExprPtr& t = e->kids[0];
      ExprPtr den = mkAdd({mkPow(t, 2), mkConst(CNum(-1L))});
      return mkMul({mkConst(CNum(-2L)), t, mkPow(den, -2), e,
                    derivE(t, v)});
    }
  }
  throw ExcalcError("deriv: bad node");
}

ExprPtr substE(const ExprPtr& e, const std::vector<ScalarField>& sub) {
  switch (e->op) {
    case Op::Const:
    case Op::Param:
      return e;
    case Op::Coord:
      if (e->idx < 1 || e->idx > (int)sub.size())
        throw ExcalcError("substitution: missing coordinate z" +
                          std::to_string(e->idx));
      return sub[e->idx - 1].expr();
    case Op::CoordBar:
      if (e->idx < 1 || e->idx > (int)sub.size())
        throw ExcalcError("substitution: missing coordinate z" +
                          std::to_string(e->idx));
      return conjE(sub[e->idx - 1].expr());
    case Op::Add: {
      std::vector<ExprPtr> kids;
      for (auto& k : e->kids) kids.push_back(substE(k, sub));
      return mkAdd(std::move(kids));
    }
    case Op::Mul: {
      std::vector<ExprPtr> kids;
      for (auto& k : e->kids) kids.push_back(substE(k, sub));
      return mkMul(std::move(kids));
    }
    case Op::Pow:
      return mkPow(substE(e->kids[0], sub), e->expo);
    case Op::Exp:
      return mkExp(substE(e->kids[0], sub));
    case Op::Bump:
      return mkBump(substE(e->kids[0], sub));
  }
  throw ExcalcError("subst: bad node");
}

ExprPtr substSigmaE(const ExprPtr& e, double value) {
  switch (e->op) {
    case Op::Const:
    case Op::Coord:
    case Op::CoordBar:
      return e;
    case Op::Param:
      return mkConst(CNum::approx({value, 0.0}));
    case Op::Add: {
      std::vector<ExprPtr> kids;
      for (auto& k : e->kids) kids.push_back(substSigmaE(k, value));
      return mkAdd(std::move(kids));
    }
    case Op::Mul: {
      std::vector<ExprPtr> kids;
      for (auto& k : e->kids) kids.push_back(substSigmaE(k, value));
      return mkMul(std::move(kids));
    }
    case Op::Pow:
      return mkPow(substSigmaE(e->kids[0], value), e->expo);
    case Op::Exp:
      return mkExp(substSigmaE(e->kids[0], value));
    case Op::Bump:
      return mkBump(substSigmaE(e->kids[0], value));
  }
  throw ExcalcError("substSigma: bad node");
}

// Shared subtrees (product-rule derivatives alias their factors) make the
// expression a DAG; memoizing per node keeps evaluation linear in the DAG
// size.  Each top-level evaluation bumps a global epoch, so stale cached
// values are simply ignored.  Pole outcomes are cached as well so the Mul
// annihilation rule sees them consistently.
std::uint64_t gEvalEpoch = 0;

std::complex<double> evalE(const ExprPtr& e, const EvalPoint& p,
                           std::uint64_t epoch);

std::complex<double> evalChecked(const ExprPtr& e, const EvalPoint& p) {
  std::complex<double> v = evalE(e, p, ++gEvalEpoch);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw EvalError("non-finite evaluation");
  return v;
}

std::complex<double> evalRaw(const ExprPtr& e, const EvalPoint& p,
                             std::uint64_t epoch) {
  switch (e->op) {
    case Op::Const:
      return e->c.value();
    case Op::Coord:
      if (e->idx < 1 || e->idx > (int)p.z.size())
        throw EvalError("evaluation point misses coordinate z" +
                        std::to_string(e->idx));
      return p.z[e->idx - 1];
    case Op::CoordBar:
      if (e->idx < 1 || e->idx > (int)p.z.size())
        throw EvalError("evaluation point misses coordinate z" +
                        std::to_string(e->idx));
      return std::conj(p.z[e->idx - 1]);
    case Op::Param:
      return {p.sigma, 0.0};
    case Op::Add: {
      std::complex<double> s = 0.0;
      for (auto& k : e->kids) s += evalE(k, p, epoch);
      return s;
    }
    case Op::Mul: {
      // A factor evaluating to exact zero (typically a bump outside its
      // support) annihilates the product even if another factor has a
      // pole there; genuine isolated poles surface as PoleError.
      std::complex<double> prod = 1.0;
      bool hasZero = false;
      bool poleSeen = false;
      for (auto& k : e->kids) {
        try {
          std::complex<double> v = evalE(k, p, epoch);
          if (v == 0.0) hasZero = true;
          prod *= v;
        } catch (const PoleError&) {
          poleSeen = true;
        }
      }
      if (hasZero) return 0.0;
      if (poleSeen) throw PoleError("pole inside product");
      return prod;
    }
    case Op::Pow: {
      std::complex<double> b = evalE(e->kids[0], p, epoch);
      if (e->expo < 0 && std::abs(b) < 1e-14)
        throw PoleError("pole: negative power of (near-)zero base");
      {
        // binary exponentiation; std::pow on complex goes through polar
        // form and is far slower
        long n = e->expo < 0 ? -e->expo : e->expo;
        std::complex<double> acc = 1.0, sq = b;
        for (; n; n >>= 1, sq *= sq)
          if (n & 1) acc *= sq;
        return e->expo < 0 ? 1.0 / acc : acc;
      }
    }
    case Op::Exp:
      return std::exp(evalE(e->kids[0], p, epoch));
    case Op::Bump: {
      double t = evalE(e->kids[0], p, epoch).real();
      if (std::abs(t) >= 1.0) return 0.0;
      return {std::exp(1.0 / (t * t - 1.0)), 0.0};
    }
  }
  throw EvalError("eval: bad node");
}

std::complex<double> evalE(const ExprPtr& e, const EvalPoint& p,
                           std::uint64_t epoch) {
  if (e->evalEpoch == epoch) {
    if (e->evalPole) throw PoleError("pole (cached)");
    return e->evalVal;
  }
  try {
    std::complex<double> v = evalRaw(e, p, epoch);
    e->evalVal = v;
    e->evalPole = false;
    e->evalEpoch = epoch;
    return v;
  } catch (const PoleError&) {
    e->evalVal = 0.0;
    e->evalPole = true;
    e->evalEpoch = epoch;
    throw;
  }
}

}  // namespace

ScalarField ScalarField::conj() const { return ScalarField(conjE(e_)); }
ScalarField ScalarField::derivative(Var v) const {
  return ScalarField(derivE(e_, v));
}
ScalarField ScalarField::substCoords(const std::vector<ScalarField>& sub) const {
  return ScalarField(substE(e_, sub));
}
ScalarField ScalarField::substSigma(double value) const {
  return ScalarField(substSigmaE(e_, value));
}
std::complex<double> ScalarField::eval(const EvalPoint& p) const {
  return evalChecked(e_, p);
}

EvalScope::EvalScope() : epoch_(++gEvalEpoch) {}

std::complex<double> EvalScope::eval(const ScalarField& f,
                                     const EvalPoint& p) const {
  std::complex<double> v = evalE(f.e_, p, epoch_);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw EvalError("non-finite evaluation");
  return v;
}

ScalarField expF(const ScalarField& a) { return ScalarField(mkExp(a.expr())); }
ScalarField bumpF(const ScalarField& a) { return ScalarField(mkBump(a.expr())); }
ScalarField reF(const ScalarField& a) {
  // re(f) = (f + conj f)/2
  return (a + a.conj()) * ScalarField::constant(CNum(CRat(BigRat(1, 2))));
}
ScalarField imF(const ScalarField& a) {
  // im(f) = (f - conj f)/(2i)
  return (a - a.conj()) * ScalarField::constant(CNum(CRat(0, BigRat(-1, 2))));
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const ExprPtr& e) {
  switch (e->op) {
    case Op::Add:
      return 1;
    case Op::Mul:
      return 2;
    case Op::Pow:
      return 3;
    default:
      return 4;
  }
}

void printE(const ExprPtr& e, std::ostream& os, int parentPrec) {
  int prec = precedence(e);
  bool paren = prec < parentPrec;
  if (paren) os << "(";
  switch (e->op) {
    case Op::Const: {
      if (e->c.exact) {
        const CRat& r = e->c.r;
        if (r.im == 0)
          os << r.re.str();
        else if (r.re == 0)
          os << (r.im == 1 ? "i" : r.im.str() + "*i");
        else
          os << "(" << r.re.str() << "+" << r.im.str() << "*i)";
      } else {
        std::ostringstream tmp;
        tmp.precision(17);
        tmp << "(" << e->c.d.real() << "+" << e->c.d.imag() << "*i)";
        os << tmp.str();
      }
      break;
    }
    case Op::Coord:
      os << "z" << e->idx;
      break;
    case Op::CoordBar:
      os << "zbar" << e->idx;
      break;
    case Op::Param:
      os << "sigma";
      break;
    case Op::Add:
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) os << "+";
        printE(e->kids[i], os, prec);
      }
      break;
    case Op::Mul:
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) os << "*";
        printE(e->kids[i], os, prec);
      }
      break;
    case Op::Pow:
      printE(e->kids[0], os, prec + 1);
      os << "^";
      if (e->expo < 0)
        os << "(" << e->expo << ")";
      else
        os << e->expo;
      break;
    case Op::Exp:
      os << "exp(";
      printE(e->kids[0], os, 0);
      os << ")";
      break;
    case Op::Bump:
      os << "bump(";
      printE(e->kids[0], os, 0);
      os << ")";
      break;
  }
  if (paren) os << ")";
}

}  // namespace

std::string ScalarField::str() const {
  std::ostringstream os;
  printE(e_, os, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ExcalcError("parse error at position " + std::to_string(pos) + ": " +
                      msg + " in \"" + s + "\"");
  }

  ScalarField parseExpr() {
    ScalarField v = parseTerm();
    for (;;) {
      if (eat('+'))
        v = v + parseTerm();
      else if (eat('-'))
        v = v - parseTerm();
      else
        return v;
    }
  }

  ScalarField parseTerm() {
    ScalarField v = parseUnary();
    for (;;) {
      if (eat('*'))
        v = v * parseUnary();
      else if (eat('/'))
        v = v / parseUnary();
      else
        return v;
    }
  }

  ScalarField parseUnary() {
    if (eat('-')) return -parseUnary();
    if (eat('+')) return parseUnary();
    return parsePower();
  }

  ScalarField parsePower() {
    ScalarField base = parseAtom();
    if (eat('^')) {
      bool neg = false;
      bool paren = eat('(');
      if (eat('-')) neg = true;
      skip();
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      if (start == pos) fail("expected integer exponent");
      long k = std::stol(s.substr(start, pos - start));
      if (paren && !eat(')')) fail("expected ')' after exponent");
      return base.pow(neg ? -k : k);
    }
    return base;
  }

  ScalarField parseAtom() {
    skip();
    if (pos >= s.size()) fail("unexpected end");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      ScalarField v = parseExpr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit((unsigned char)c)) return parseNumber();
    if (std::isalpha((unsigned char)c)) return parseIdent();
    fail("unexpected character");
  }

  ScalarField parseNumber() {
    size_t start = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    BigRat value(boost::multiprecision::cpp_int(s.substr(start, pos - start)));
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      size_t fs = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      if (fs == pos) fail("expected digits after decimal point");
      std::string frac = s.substr(fs, pos - fs);
      boost::multiprecision::cpp_int num(frac), den = 1;
      for (size_t i = 0; i < frac.size(); ++i) den *= 10;
      value += BigRat(num, den);
    } else if (pos < s.size() && s[pos] == '/') {
      // p/q only when q is a plain integer; otherwise leave '/' to the
      // term parser.
      size_t save = pos;
      ++pos;
      size_t ds = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      bool plain =
          ds != pos && (pos >= s.size() || !(std::isalnum((unsigned char)s[pos]) ||
                                             s[pos] == '(' || s[pos] == '.'));
      if (plain)
        value /= BigRat(boost::multiprecision::cpp_int(s.substr(ds, pos - ds)));
      else
        pos = save;
    }
    return ScalarField::constant(CNum(CRat(value)));
  }

  ScalarField parseIdent() {
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
      ++pos;
    std::string id = s.substr(start, pos - start);
    if (id == "i") return ScalarField::i();
    if (id == "sigma") return ScalarField::sigma();
    auto coordIndex = [&](size_t prefix) {
      return std::stoi(id.substr(prefix));
    };
    if (id.size() > 4 && id.rfind("zbar", 0) == 0 &&
        std::isdigit((unsigned char)id[4]))
      return ScalarField::coordBar(coordIndex(4));
    if (id.size() > 1 && id[0] == 'z' && std::isdigit((unsigned char)id[1]))
      return ScalarField::coord(coordIndex(1));
    // function call
    if (!eat('(')) fail("unknown identifier '" + id + "'");
    ScalarField arg = parseExpr();
    if (!eat(')')) fail("expected ')' after argument of " + id);
    if (id == "conj") return arg.conj();
    if (id == "exp") return expF(arg);
    if (id == "bump") return bumpF(arg);
    if (id == "re") return reF(arg);
    if (id == "im") return imF(arg);
    fail("unknown function '" + id + "'");
  }
};

}  // namespace

ScalarField parseField(const std::string& text) {
  Parser p(text);
  ScalarField v = p.parseExpr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return v;
}

}  // namespace excalc
