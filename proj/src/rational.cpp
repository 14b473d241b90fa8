#include "cubecoup/rational.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cubecoup {

double Scalar::eps = 1e-9;

Rat rat_from_string(const std::string& s) {
  std::string t = s;
  // Decimal form: convert d.ddd to a fraction over a power of ten.
  auto dot = t.find('.');
  if (dot != std::string::npos && t.find('/') == std::string::npos) {
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    size_t frac_len = t.size() - dot - 1;
    mpz_class num(digits), den(1);
    for (size_t i = 0; i < frac_len; i++) den *= 10;
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  Rat r;
  if (r.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

double rat_to_double(const Rat& r) { return r.get_d(); }

Scalar Scalar::approx(double v) {
  Scalar s;
  s.exact_ = false;
  s.approx_ = v;
  s.rat_ = 0;
  return s;
}

const Rat& Scalar::rat() const {
  if (!exact_) throw std::logic_error("Scalar: rat() on approx value");
  return rat_;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (exact_ && o.exact_) return Scalar(Rat(rat_ + o.rat_));
  return approx(value() + o.value());
}
Scalar Scalar::operator-(const Scalar& o) const {
  if (exact_ && o.exact_) return Scalar(Rat(rat_ - o.rat_));
  return approx(value() - o.value());
}
Scalar Scalar::operator*(const Scalar& o) const {
  if (exact_ && o.exact_) return Scalar(Rat(rat_ * o.rat_));
  return approx(value() * o.value());
}
Scalar Scalar::operator/(const Scalar& o) const {
  if (exact_ && o.exact_) {
    if (o.rat_ == 0) throw std::domain_error("Scalar: division by zero");
    return Scalar(Rat(rat_ / o.rat_));
  }
  return approx(value() / o.value());
}
Scalar Scalar::operator-() const {
  if (exact_) return Scalar(Rat(-rat_));
  return approx(-approx_);
}

bool Scalar::operator==(const Scalar& o) const {
  if (exact_ && o.exact_) return rat_ == o.rat_;
  return std::fabs(value() - o.value()) <= eps;
}
bool Scalar::operator<(const Scalar& o) const {
  if (exact_ && o.exact_) return rat_ < o.rat_;
  return value() < o.value();
}
bool Scalar::operator<=(const Scalar& o) const {
  return *this < o || *this == o;
}

int Scalar::sign() const {
  if (exact_) return sgn(rat_);
  if (std::fabs(approx_) <= eps) return 0;
  return approx_ > 0 ? 1 : -1;
}

std::string Scalar::str() const {
  if (exact_) return rat_to_string(rat_);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", approx_);
  return buf;
}

std::string CScalar::str() const {
  if (im.is_zero()) return re.str();
  return re.str() + (im.sign() >= 0 ? "+" : "") + im.str() + "i";
}

Scalar pow(const Scalar& b, unsigned n) {
  Scalar r(1), x = b;
  while (n) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

}  // namespace cubecoup
