#include "excalc/form.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace excalc {

std::string FTerm::basisKey() const {
  std::string k;
  for (int i : I) k += "z" + std::to_string(i) + ".";
  for (int j : J) k += "Z" + std::to_string(j) + ".";
  if (ds) k += "s";
  return k;
}

Form Form::scalar(int n, ScalarField f, std::string chartId) {
  Form a(n, 0, std::move(chartId));
  a.addTerm(std::move(f), {});
  return a;
}

Form Form::term(int n, ScalarField c, std::vector<int> I, std::vector<int> J,
                bool ds, std::string chartId) {
  std::vector<Covector> basis;
  for (int i : I) basis.push_back({Covector::DZ, i});
  for (int j : J) basis.push_back({Covector::DZBAR, j});
  if (ds) basis.push_back({Covector::DSIGMA, 0});
  Form a(n, (int)basis.size(), std::move(chartId));
  a.addTerm(std::move(c), std::move(basis));
  return a;
}

Form Form::dz(int n, int i, std::string chartId) {
  return term(n, ScalarField(1L), {i}, {}, false, std::move(chartId));
}
Form Form::dzbar(int n, int i, std::string chartId) {
  return term(n, ScalarField(1L), {}, {i}, false, std::move(chartId));
}
Form Form::dsigma(int n, std::string chartId) {
  return term(n, ScalarField(1L), {}, {}, true, std::move(chartId));
}

void Form::addTerm(ScalarField c, std::vector<Covector> basis) {
  if ((int)basis.size() != degree_)
    throw ExcalcError("addTerm: degree mismatch");
  // insertion sort counting transpositions (all covectors have odd degree)
  int swaps = 0;
  for (size_t i = 1; i < basis.size(); ++i)
    for (size_t j = i; j > 0 && basis[j] < basis[j - 1]; --j) {
      std::swap(basis[j], basis[j - 1]);
      ++swaps;
    }
  for (size_t i = 1; i < basis.size(); ++i)
    if (basis[i] == basis[i - 1]) return;  // repeated covector: zero
  if (swaps % 2) c = -c;
  FTerm t;
  t.c = std::move(c);
  for (auto& b : basis) {
    if (b.kind == Covector::DZ)
      t.I.push_back(b.idx);
    else if (b.kind == Covector::DZBAR)
      t.J.push_back(b.idx);
    else
      t.ds = true;
  }
  terms_.push_back(std::move(t));
  normalizeInPlace();
}

void Form::normalizeInPlace() {
  std::map<std::string, FTerm> merged;
  for (auto& t : terms_) {
    auto key = t.basisKey();
    auto it = merged.find(key);
    if (it == merged.end())
      merged.emplace(key, t);
    else
      it->second.c = it->second.c + t.c;
  }
  terms_.clear();
  for (auto& [k, t] : merged)
    if (!t.c.isZero()) terms_.push_back(std::move(t));
}

namespace {
void checkCompatible(const Form& a, const Form& b, const char* opname) {
  if (a.n() != b.n())
    throw ExcalcError(std::string(opname) + ": chart dimension mismatch");
  if (!a.chart().empty() && !b.chart().empty() && a.chart() != b.chart())
    throw ExcalcError(std::string(opname) + ": chart mismatch (" + a.chart() +
                      " vs " + b.chart() + ")");
}
std::string pickChart(const Form& a, const Form& b) {
  return a.chart().empty() ? b.chart() : a.chart();
}
std::vector<Covector> basisOf(const FTerm& t) {
  std::vector<Covector> basis;
  for (int i : t.I) basis.push_back({Covector::DZ, i});
  for (int j : t.J) basis.push_back({Covector::DZBAR, j});
  if (t.ds) basis.push_back({Covector::DSIGMA, 0});
  return basis;
}
}  // namespace

Form Form::operator+(const Form& o) const {
  checkCompatible(*this, o, "add");
  if (degree_ != o.degree_) throw ExcalcError("add: degree mismatch");
  Form r(n_, degree_, pickChart(*this, o));
  r.terms_ = terms_;
  for (auto& t : o.terms_) r.terms_.push_back(t);
  r.normalizeInPlace();
  return r;
}

Form Form::operator-() const {
  Form r(n_, degree_, chart_);
  for (auto& t : terms_) {
    FTerm nt = t;
    nt.c = -t.c;
    r.terms_.push_back(std::move(nt));
  }
  return r;
}

Form Form::operator-(const Form& o) const { return *this + (-o); }

Form Form::scaled(const ScalarField& f) const {
  Form r(n_, degree_, chart_);
  for (auto& t : terms_) {
    FTerm nt = t;
    nt.c = t.c * f;
    if (!nt.c.isZero()) r.terms_.push_back(std::move(nt));
  }
  return r;
}

Form Form::wedge(const Form& o) const {
  checkCompatible(*this, o, "wedge");
  Form r(n_, degree_ + o.degree_, pickChart(*this, o));
  for (auto& a : terms_)
    for (auto& b : o.terms_) {
      auto basis = basisOf(a);
      auto bb = basisOf(b);
      basis.insert(basis.end(), bb.begin(), bb.end());
      r.addTerm(a.c * b.c, std::move(basis));
    }
  return r;
}

Form Form::d() const {
  Form r(n_, degree_ + 1, chart_);
  for (auto& t : terms_) {
    auto base = basisOf(t);
    for (int i = 1; i <= n_; ++i) {
      ScalarField dz = t.c.derivative(Var::z(i));
      if (!dz.isZero()) {
        auto basis = base;
        basis.insert(basis.begin(), {Covector::DZ, i});
        r.addTerm(std::move(dz), std::move(basis));
      }
      ScalarField dzb = t.c.derivative(Var::zbar(i));
      if (!dzb.isZero()) {
        auto basis = base;
        basis.insert(basis.begin(), {Covector::DZBAR, i});
        r.addTerm(std::move(dzb), std::move(basis));
      }
    }
    ScalarField dsig = t.c.derivative(Var::sigma());
    if (!dsig.isZero()) {
      auto basis = base;
      basis.insert(basis.begin(), {Covector::DSIGMA, 0});
      r.addTerm(std::move(dsig), std::move(basis));
    }
  }
  return r;
}

Form Form::pullback(const std::vector<ScalarField>& comp, int srcN,
                    std::string srcChart) const {
  if ((int)comp.size() != n_)
    throw ExcalcError("pullback: map has " + std::to_string(comp.size()) +
                      " components for an n=" + std::to_string(n_) + " chart");
  // Differentials of the map components as 1-forms on the source chart.
  std::vector<Form> dcomp, dcompBar;
  for (int i = 0; i < n_; ++i) {
    Form df(srcN, 1, srcChart);
    for (int j = 1; j <= srcN; ++j) {
      ScalarField a = comp[i].derivative(Var::z(j));
      if (!a.isZero()) df.addTerm(a, {{Covector::DZ, j}});
      ScalarField b = comp[i].derivative(Var::zbar(j));
      if (!b.isZero()) df.addTerm(b, {{Covector::DZBAR, j}});
    }
    dcomp.push_back(df);
    Form dfb(srcN, 1, srcChart);
    for (auto& t : df.terms()) {
      std::vector<Covector> basis;
      for (int i2 : t.I) basis.push_back({Covector::DZBAR, i2});
      for (int j2 : t.J) basis.push_back({Covector::DZ, j2});
      dfb.addTerm(t.c.conj(), std::move(basis));
    }
    dcompBar.push_back(dfb);
  }
  Form r(srcN, degree_, srcChart);
  for (auto& t : terms_) {
    Form acc = Form::scalar(srcN, t.c.substCoords(comp), srcChart);
    for (int i : t.I) acc = acc.wedge(dcomp[i - 1]);
    for (int j : t.J) acc = acc.wedge(dcompBar[j - 1]);
    if (t.ds) acc = acc.wedge(Form::dsigma(srcN, srcChart));
    for (auto& tt : acc.terms()) r.addTerm(tt.c, basisOf(tt));
  }
  return r;
}

Form Form::substSigma(double value) const {
  Form r(n_, degree_, chart_);
  for (auto& t : terms_) {
    FTerm nt = t;
    nt.c = t.c.substSigma(value);
    if (!nt.c.isZero()) r.terms_.push_back(std::move(nt));
  }
  r.normalizeInPlace();
  return r;
}

Form Form::dsigmaPart() const {
  Form r(n_, degree_ - 1, chart_);
  for (auto& t : terms_) {
    if (!t.ds) continue;
    // t = c * dz_I ^ dzbar_J ^ dsigma; moving dsigma to the end costs no
    // sign because the basis is already stored in that order.
    FTerm nt = t;
    nt.ds = false;
    r.terms_.push_back(std::move(nt));
  }
  return r;
}

std::complex<double> Form::eval(const EvalPoint& p,
                                const std::vector<Tangent>& vectors) const {
  if ((int)vectors.size() != degree_)
    throw ExcalcError("eval: need exactly degree-many tangent vectors");
  std::complex<double> total = 0.0;
  int pdeg = degree_;
  std::vector<std::complex<double>> m(pdeg * pdeg);
  EvalScope scope;  // coefficients are all evaluated at the same point
  for (auto& t : terms_) {
    std::complex<double> coeff = scope.eval(t.c, p);
    if (coeff == 0.0) continue;
    // matrix rows = vectors, columns = covectors of the term's basis
    auto basis = basisOf(t);
    for (int r = 0; r < pdeg; ++r) {
      const Tangent& v = vectors[r];
      for (int c = 0; c < pdeg; ++c) {
        const Covector& cv = basis[c];
        std::complex<double> x;
        if (cv.kind == Covector::DZ)
          x = cv.idx <= (int)v.dz.size() ? v.dz[cv.idx - 1] : 0.0;
        else if (cv.kind == Covector::DZBAR)
          x = cv.idx <= (int)v.dzbar.size() ? v.dzbar[cv.idx - 1] : 0.0;
        else
          x = v.dsigma;
        m[r * pdeg + c] = x;
      }
    }
    // determinant via Gaussian elimination with partial pivoting
    std::vector<std::complex<double>> a = m;
    std::complex<double> det = 1.0;
    for (int col = 0; col < pdeg; ++col) {
      int piv = col;
      for (int r2 = col + 1; r2 < pdeg; ++r2)
        if (std::abs(a[r2 * pdeg + col]) > std::abs(a[piv * pdeg + col]))
          piv = r2;
      if (a[piv * pdeg + col] == 0.0) {
        det = 0.0;
        break;
      }
      if (piv != col) {
        for (int c2 = 0; c2 < pdeg; ++c2)
          std::swap(a[piv * pdeg + c2], a[col * pdeg + c2]);
        det = -det;
      }
      det *= a[col * pdeg + col];
      for (int r2 = col + 1; r2 < pdeg; ++r2) {
        std::complex<double> f = a[r2 * pdeg + col] / a[col * pdeg + col];
        for (int c2 = col; c2 < pdeg; ++c2)
          a[r2 * pdeg + c2] -= f * a[col * pdeg + c2];
      }
    }
    total += coeff * det;
  }
  return total;
}

std::string Form::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.c.str() << ")";
    for (int i : t.I) os << "*dz" << i;
    for (int j : t.J) os << "*dzbar" << j;
    if (t.ds) os << "*dsigma";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Form parser: the scalar-expression grammar extended with covector tokens.

namespace {

// Splits top-level '+'/'-' terms, then within a term top-level '*'/'^'
// factors; each factor is either a covector token or a scalar expression.
struct FormParser {
  const std::string& s;
  int n;
  std::string chart;

  Form parse() {
    std::vector<std::pair<int, std::string>> termTexts;  // sign, text
    int depth = 0;
    size_t start = 0;
    int sign = 1;
    auto flush = [&](size_t end, int nextSign) {
      std::string t = s.substr(start, end - start);
      if (t.find_first_not_of(" \t") != std::string::npos)
        termTexts.push_back({sign, t});
      sign = nextSign;
      start = end + 1;
    };
    for (size_t i = 0; i < s.size(); ++i) {
      char c = s[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == '+' || c == '-')) {
        // unary +/- at term start or after an operator belongs to the term
        size_t j = i;
        while (j > 0 && std::isspace((unsigned char)s[j - 1])) --j;
        bool binary = j > 0 && (std::isalnum((unsigned char)s[j - 1]) ||
                                s[j - 1] == ')' || s[j - 1] == '.');
        if (binary) flush(i, c == '+' ? 1 : -1);
      }
    }
    flush(s.size(), 1);

    int deg = -1;
    Form result;
    bool haveDegree = false;
    for (auto& [sg, text] : termTexts) {
      auto [coeffText, basis] = splitFactors(text);
      ScalarField coeff =
          coeffText.empty() ? ScalarField(1L) : parseField(coeffText);
      if (sg < 0) coeff = -coeff;
      if (!haveDegree) {
        deg = (int)basis.size();
        result = Form(n, deg, chart);
        haveDegree = true;
      } else if ((int)basis.size() != deg) {
        throw ExcalcError("form parse: mixed degrees in \"" + s + "\"");
      }
      result.addTerm(std::move(coeff), std::move(basis));
    }
    if (!haveDegree) return Form(n, 0, chart);
    return result;
  }

  // Splits a term into scalar factor text (joined by '*') and covectors.
  std::pair<std::string, std::vector<Covector>> splitFactors(
      const std::string& term) {
    std::vector<std::string> parts;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < term.size(); ++i) {
      char c = term[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      bool split = depth == 0 && c == '*';
      if (depth == 0 && c == '^') {
        // '^' separates factors only when a covector token follows;
        // otherwise it is a scalar integer power (z1^3).
        size_t j = i + 1;
        while (j < term.size() && std::isspace((unsigned char)term[j])) ++j;
        split = term.compare(j, 2, "dz") == 0 ||
                term.compare(j, 6, "dsigma") == 0;
      }
      if (split) {
        parts.push_back(term.substr(start, i - start));
        start = i + 1;
      }
    }
    parts.push_back(term.substr(start));
    std::string coeff;
    std::vector<Covector> basis;
    for (auto& raw : parts) {
      std::string p = raw;
      // trim
      size_t a = p.find_first_not_of(" \t");
      size_t b = p.find_last_not_of(" \t");
      if (a == std::string::npos) continue;
      p = p.substr(a, b - a + 1);
      if (p == "dsigma") {
        basis.push_back({Covector::DSIGMA, 0});
      } else if (p.rfind("dzbar", 0) == 0 && p.size() > 5 &&
                 std::isdigit((unsigned char)p[5])) {
        basis.push_back({Covector::DZBAR, std::stoi(p.substr(5))});
      } else if (p.rfind("dz", 0) == 0 && p.size() > 2 &&
                 std::isdigit((unsigned char)p[2])) {
        basis.push_back({Covector::DZ, std::stoi(p.substr(2))});
      } else {
        if (!coeff.empty()) coeff += "*";
        // exponents split on '^' need rejoining: handled by keeping the
        // whole factor text; scalar '^' inside parens survives intact.
        coeff += "(" + p + ")";
      }
    }
    return {coeff, basis};
  }
};

}  // namespace

Form parseForm(const std::string& text, int n, std::string chartId) {
  // Scalar powers like z1^3 would be split by the factor splitter; protect
  // them by only splitting '^' when the right side is a covector token.
  // Simplest robust approach: if the text contains no covector token, parse
  // as a scalar.
  if (text.find("dz") == std::string::npos &&
      text.find("dsigma") == std::string::npos)
    return Form::scalar(n, parseField(text), std::move(chartId));
  FormParser p{text, n, chartId};
  return p.parse();
}

}  // namespace excalc
