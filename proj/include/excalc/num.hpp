#pragma once
// Exact complex-rational constants with a double-precision fallback.
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <stdexcept>
#include <string>

namespace excalc {

using BigRat = boost::multiprecision::cpp_rational;

struct ExcalcError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EvalError : ExcalcError {
  using ExcalcError::ExcalcError;
};
struct PoleError : EvalError {
  using EvalError::EvalError;
};

// Exact Gaussian rational a + b i.
struct CRat {
  BigRat re{0}, im{0};

  CRat() = default;
  CRat(long r) : re(r) {}
  CRat(BigRat r, BigRat i = 0) : re(std::move(r)), im(std::move(i)) {}

  bool isZero() const { return re == 0 && im == 0; }
  bool isOne() const { return re == 1 && im == 0; }
  bool isReal() const { return im == 0; }

  CRat operator+(const CRat& o) const { return {re + o.re, im + o.im}; }
  CRat operator-(const CRat& o) const { return {re - o.re, im - o.im}; }
  CRat operator-() const { return {-re, -im}; }
  CRat operator*(const CRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  CRat inv() const {
    BigRat n = re * re + im * im;
    if (n == 0) throw ExcalcError("division by exact zero constant");
    return {re / n, -im / n};
  }
  CRat operator/(const CRat& o) const { return *this * o.inv(); }
  CRat conj() const { return {re, -im}; }
  bool operator==(const CRat& o) const { return re == o.re && im == o.im; }

  CRat powi(long k) const {
    CRat base = k >= 0 ? *this : inv();
    unsigned long e = k >= 0 ? k : -k;
    CRat acc{1};
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  std::complex<double> value() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
  std::string str() const {
    return re.str() + (im == 0 ? "" : "+" + im.str() + "i");
  }
};

// Constant that is either an exact CRat or a double-precision complex.
struct CNum {
  bool exact = true;
  CRat r;
  std::complex<double> d{0.0, 0.0};

  CNum() = default;
  CNum(long v) : r(v) {}
  CNum(CRat v) : r(std::move(v)) {}
  static CNum approx(std::complex<double> v) {
    CNum c;
    c.exact = false;
    c.d = v;
    return c;
  }

  std::complex<double> value() const { return exact ? r.value() : d; }
  bool isZero() const { return exact ? r.isZero() : d == 0.0; }
  bool isOne() const { return exact ? r.isOne() : d == 1.0; }

  CNum operator+(const CNum& o) const {
    if (exact && o.exact) return CNum(r + o.r);
    return approx(value() + o.value());
  }
  CNum operator*(const CNum& o) const {
    if (exact && o.exact) return CNum(r * o.r);
    return approx(value() * o.value());
  }
  CNum operator-() const { return exact ? CNum(-r) : approx(-d); }
  CNum inv() const {
    if (exact) return CNum(r.inv());
    if (d == 0.0) throw ExcalcError("division by zero constant");
    return approx(1.0 / d);
  }
  CNum powi(long k) const {
    if (exact) return CNum(r.powi(k));
    return approx(std::pow(d, static_cast<double>(k)));
  }
  CNum conj() const {
    return exact ? CNum(r.conj()) : approx(std::conj(d));
  }
  bool operator==(const CNum& o) const {
    if (exact != o.exact) return false;
    return exact ? r == o.r : d == o.d;
  }

  std::string key() const;
};

}  // namespace excalc
