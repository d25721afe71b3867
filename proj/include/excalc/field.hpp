#pragma once
// Symbolic scalar fields: complex-valued expressions in chart coordinates
// z1..zn, their conjugates, and an optional free real parameter sigma,
// closed under Wirtinger differentiation (d/dz = (d/dx - i d/dy)/2).
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "num.hpp"

namespace excalc {

enum class Op { Const, Coord, CoordBar, Param, Add, Mul, Pow, Exp, Bump };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  Op op;
  CNum c;                     // Const
  int idx = 0;                // Coord/CoordBar (1-based)
  long expo = 0;              // Pow
  std::vector<ExprPtr> kids;  // Add/Mul children, Pow/Exp/Bump operand
  std::string key;            // canonical form, used for ordering/merging

  // per-evaluation memo (shared subtrees make expressions DAGs); valid only
  // while evalEpoch matches the evaluator's current epoch
  mutable std::uint64_t evalEpoch = 0;
  mutable std::complex<double> evalVal;
  mutable bool evalPole = false;
};

// Differentiation variable.
struct Var {
  enum Kind { Z, ZBAR, SIGMA } kind;
  int idx;  // 1-based, ignored for SIGMA
  static Var z(int i) { return {Z, i}; }
  static Var zbar(int i) { return {ZBAR, i}; }
  static Var sigma() { return {SIGMA, 0}; }
};

struct EvalPoint {
  std::vector<std::complex<double>> z;
  double sigma = 0.0;
};

// Normalizing constructors.
ExprPtr mkConst(CNum c);
ExprPtr mkCoord(int i, bool bar = false);
ExprPtr mkParam();
ExprPtr mkAdd(std::vector<ExprPtr> kids);
ExprPtr mkMul(std::vector<ExprPtr> kids);
ExprPtr mkPow(ExprPtr base, long k);
ExprPtr mkExp(ExprPtr a);
ExprPtr mkBump(ExprPtr a);

class ScalarField {
 public:
  ScalarField() : e_(mkConst(CNum(0))) {}
  explicit ScalarField(ExprPtr e) : e_(std::move(e)) {}
  ScalarField(long v) : e_(mkConst(CNum(v))) {}
  static ScalarField constant(CNum c) { return ScalarField(mkConst(std::move(c))); }
  static ScalarField coord(int i) { return ScalarField(mkCoord(i)); }
  static ScalarField coordBar(int i) { return ScalarField(mkCoord(i, true)); }
  static ScalarField sigma() { return ScalarField(mkParam()); }
  static ScalarField i() { return constant(CNum(CRat(0, 1))); }

  const ExprPtr& expr() const { return e_; }
  const std::string& key() const { return e_->key; }
  bool isZero() const { return e_->op == Op::Const && e_->c.isZero(); }
  bool sameAs(const ScalarField& o) const { return key() == o.key(); }

  ScalarField operator+(const ScalarField& o) const {
    return ScalarField(mkAdd({e_, o.e_}));
  }
  ScalarField operator-(const ScalarField& o) const {
    return *this + (-o);
  }
  ScalarField operator-() const {
    return ScalarField(mkMul({mkConst(CNum(-1L)), e_}));
  }
  ScalarField operator*(const ScalarField& o) const {
    return ScalarField(mkMul({e_, o.e_}));
  }
  ScalarField operator/(const ScalarField& o) const {
    return ScalarField(mkMul({e_, mkPow(o.e_, -1)}));
  }
  ScalarField pow(long k) const { return ScalarField(mkPow(e_, k)); }

  ScalarField conj() const;
  ScalarField derivative(Var v) const;
  // Substitute coordinates: z_i -> sub[i], zbar_i -> conj(sub[i]).
  ScalarField substCoords(const std::vector<ScalarField>& sub) const;
  ScalarField substSigma(double value) const;

  std::complex<double> eval(const EvalPoint& p) const;
  std::string str() const;  // infix rendering

  friend class EvalScope;

 private:
  ExprPtr e_;
};

// Shares one memo epoch across evaluations of several fields at the same
// point (their expression DAGs typically overlap through common subtrees).
// Never reuse a scope at a different evaluation point.
class EvalScope {
 public:
  EvalScope();
  std::complex<double> eval(const ScalarField& f, const EvalPoint& p) const;

 private:
  std::uint64_t epoch_;
};

ScalarField expF(const ScalarField& a);
ScalarField bumpF(const ScalarField& a);
ScalarField reF(const ScalarField& a);
ScalarField imF(const ScalarField& a);

// Parse the infix expression grammar (z1..zn, conj, bump, exp, re, im, i,
// rationals p/q, decimals, + - * / ^int, sigma).
ScalarField parseField(const std::string& text);

}  // namespace excalc
