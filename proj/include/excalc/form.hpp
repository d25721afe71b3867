#pragma once
// Graded exterior forms with ScalarField coefficients in the basis
// dz_I ^ dzbar_J (^ dsigma), on an n-dimensional chart.
#include <optional>
#include <string>
#include <vector>

#include "field.hpp"

namespace excalc {

// One basis covector of the wedge basis.
struct Covector {
  enum Kind { DZ, DZBAR, DSIGMA } kind;
  int idx;  // 1-based; ignored for DSIGMA
  bool operator<(const Covector& o) const {
    if (kind != o.kind) return kind < o.kind;
    return idx < o.idx;
  }
  bool operator==(const Covector& o) const {
    return kind == o.kind && idx == o.idx;
  }
};

struct FTerm {
  ScalarField c;
  std::vector<int> I;  // strictly increasing holomorphic indices
  std::vector<int> J;  // strictly increasing antiholomorphic indices
  bool ds = false;     // carries a trailing dsigma factor
  int degree() const { return (int)I.size() + (int)J.size() + (ds ? 1 : 0); }
  std::string basisKey() const;
};

struct Tangent {
  std::vector<std::complex<double>> dz, dzbar;
  double dsigma = 0.0;
  // Real tangent vector: dzbar components are conjugates of dz.
  static Tangent real(std::vector<std::complex<double>> v) {
    Tangent t;
    t.dzbar.reserve(v.size());
    for (auto& c : v) t.dzbar.push_back(std::conj(c));
    t.dz = std::move(v);
    return t;
  }
};

class Form {
 public:
  Form() = default;
  Form(int n, int degree, std::string chartId = "")
      : n_(n), degree_(degree), chart_(std::move(chartId)) {}
  // degree-0 form from a field
  static Form scalar(int n, ScalarField f, std::string chartId = "");
  // single term
  static Form term(int n, ScalarField c, std::vector<int> I, std::vector<int> J,
                   bool ds = false, std::string chartId = "");
  static Form dz(int n, int i, std::string chartId = "");
  static Form dzbar(int n, int i, std::string chartId = "");
  static Form dsigma(int n, std::string chartId = "");

  int n() const { return n_; }
  int degree() const { return degree_; }
  const std::string& chart() const { return chart_; }
  void setChart(std::string c) { chart_ = std::move(c); }
  const std::vector<FTerm>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }

  // Adds coeff * basis (sorting the covectors, sign from permutation parity).
  void addTerm(ScalarField c, std::vector<Covector> basis);

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form operator-() const;
  Form scaled(const ScalarField& f) const;
  Form wedge(const Form& o) const;
  Form d() const;  // exterior derivative (includes the dsigma direction)
  // Pullback through a map whose components (target coords) are fields in
  // the source chart's coordinates.
  Form pullback(const std::vector<ScalarField>& comp, int srcN,
                std::string srcChart = "") const;
  Form substSigma(double value) const;
  // Coefficient of dsigma: the (degree-1)-form a with this = a ^ dsigma + rest.
  Form dsigmaPart() const;

  std::complex<double> eval(const EvalPoint& p,
                            const std::vector<Tangent>& vectors) const;
  std::string str() const;

 private:
  void normalizeInPlace();
  int n_ = 0;
  int degree_ = 0;
  std::string chart_;
  std::vector<FTerm> terms_;
};

// Parse a form expression: sum of products of scalar factors and basis
// covectors dzK / dzbarK / dsigma joined by '*' or '^'.
Form parseForm(const std::string& text, int n, std::string chartId = "");

}  // namespace excalc
