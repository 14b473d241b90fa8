// Scalar arithmetic for measures and function values. The default backend is
// exact rational (GMP); an approximate double backend exists for sampled and
// statistical paths, where equality means |a-b| <= eps.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubecoup {

using Rat = mpq_class;

enum class ScalarMode { exact, approx };

Rat rat_from_string(const std::string& s);  // "p/q", "p", or decimal like "0.25"
std::string rat_to_string(const Rat& r);
double rat_to_double(const Rat& r);

class Scalar {
 public:
  Scalar() : rat_(0), exact_(true) {}
  Scalar(int n) : rat_(n), exact_(true) {}
  Scalar(long n) : rat_(n), exact_(true) {}
  Scalar(long n, long d) : rat_(n, d), exact_(true) { rat_.canonicalize(); }
  Scalar(const Rat& r) : rat_(r), exact_(true) {}
  static Scalar approx(double v);

  bool is_exact() const { return exact_; }
  const Rat& rat() const;
  double value() const { return exact_ ? rat_to_double(rat_) : approx_; }

  // Equality tolerance used whenever an approx operand is involved.
  static double eps;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  bool operator<(const Scalar& o) const;
  bool operator<=(const Scalar& o) const;

  bool is_zero() const { return *this == Scalar(0); }
  int sign() const;

  std::string str() const;

 private:
  Rat rat_;
  double approx_ = 0.0;
  bool exact_;
};

// Complex value with Scalar parts.
struct CScalar {
  Scalar re, im;

  CScalar() = default;
  CScalar(Scalar r) : re(std::move(r)) {}
  CScalar(Scalar r, Scalar i) : re(std::move(r)), im(std::move(i)) {}

  CScalar operator+(const CScalar& o) const { return {re + o.re, im + o.im}; }
  CScalar operator-(const CScalar& o) const { return {re - o.re, im - o.im}; }
  CScalar operator*(const CScalar& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  CScalar& operator+=(const CScalar& o) { return *this = *this + o; }
  CScalar& operator*=(const CScalar& o) { return *this = *this * o; }
  CScalar conj() const { return {re, -im}; }
  Scalar norm2() const { return re * re + im * im; }  // |z|^2
  bool operator==(const CScalar& o) const { return re == o.re && im == o.im; }
  bool operator!=(const CScalar& o) const { return !(*this == o); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  std::string str() const;
};

// Exact integer power, n >= 0.
Scalar pow(const Scalar& b, unsigned n);

}  // namespace cubecoup
