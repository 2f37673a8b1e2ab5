#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wpage {

// Exact rational arithmetic on 64-bit numerator/denominator.
// Intermediate products use __int128; results must reduce back into
// 64 bits or an overflow_error is thrown. All cost accounting and
// bound checks in this project go through this type so that no
// comparison ever depends on floating point.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d) { assign(n, d); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make((i128)a.num_ * b.den_ + (i128)b.num_ * a.den_,
                (i128)a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make((i128)a.num_ * b.den_ - (i128)b.num_ * a.den_,
                (i128)a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make((i128)a.num_ * b.num_, (i128)a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return make((i128)a.num_ * b.den_, (i128)a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (i128)a.num_ * b.den_ < (i128)b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  double to_double() const { return (double)num_ / (double)den_; }

  // Canonical text form: "7" or "7/2".
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Fixed-significance decimal rendering (round half up), no exponent
  // notation. Used for CSV emission; exact for the magnitudes that occur
  // at desk scale.
  std::string decimal(int sig = 12) const;

  // Accepts "n", "-n", "n/d" and plain decimals like "12.5" or ".25".
  static Rational parse(const std::string& s);

  static Rational pow(long long base, int exp) {
    Rational r(1);
    for (int i = 0; i < exp; i++) r *= Rational(base);
    return r;
  }

 private:
  using i128 = __int128;

  long long num_{0};
  long long den_{1};

  static long long fit(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw std::overflow_error("rational overflow");
    return (long long)v;
  }
  static i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  static Rational make(i128 n, i128 d) {
    Rational r;
    r.assign128(n, d);
    return r;
  }
  void assign(long long n, long long d) { assign128(n, d); }
  void assign128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = fit(n);
    den_ = fit(d);
  }
};

inline std::string Rational::decimal(int sig) const {
  if (num_ == 0) return "0";
  std::string out;
  if (num_ < 0) out += "-";
  i128 n = num_ < 0 ? -(i128)num_ : (i128)num_;
  i128 d = den_;

  // Position of the leading digit relative to the decimal point:
  // exp >= 0 means the value has exp+1 integer digits.
  int exp = 0;
  if (n >= d) {
    i128 q = n / d;
    while (q >= 10) {
      q /= 10;
      exp++;
    }
  } else {
    exp = -1;
    i128 scaled = n * 10;
    while (scaled < d) {
      scaled *= 10;
      exp--;
      if (exp < -60) break;  // tighter than any weight used here
    }
  }

  // digits = round(n * 10^(sig-1-exp) / d), half up.
  i128 numer = n;
  int shift = sig - 1 - exp;
  for (int i = 0; i < shift; i++) numer *= 10;
  if (shift < 0) {
    for (int i = 0; i < -shift; i++) d *= 10;
    numer = n;
  }
  i128 digits = (2 * numer + d) / (2 * d);

  std::string ds;
  {
    i128 v = digits;
    while (v > 0) {
      ds += char('0' + (int)(v % 10));
      v /= 10;
    }
    std::reverse(ds.begin(), ds.end());
  }
  if ((int)ds.size() > sig) {  // rounding carried into one more digit
    exp++;
    ds.pop_back();
  }

  if (exp >= 0) {
    if (exp + 1 >= (int)ds.size()) {
      ds.append(exp + 1 - ds.size(), '0');
      out += ds;
    } else {
      out += ds.substr(0, exp + 1) + "." + ds.substr(exp + 1);
    }
  } else {
    out += "0.";
    out.append(-exp - 1, '0');
    out += ds;
  }
  return out;
}

inline Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long n = std::stoll(s.substr(0, slash));
    long long d = std::stoll(s.substr(slash + 1));
    return Rational(n, d);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(std::stoll(s));
  bool neg = s[0] == '-';
  std::string ip = s.substr(neg ? 1 : 0, dot - (neg ? 1 : 0));
  std::string fp = s.substr(dot + 1);
  if (ip.empty() && fp.empty()) throw std::invalid_argument("bad rational literal: " + s);
  long long den = 1;
  for (size_t i = 0; i < fp.size(); i++) {
    if (!isdigit((unsigned char)fp[i])) throw std::invalid_argument("bad rational literal: " + s);
    if (den > INT64_MAX / 10) throw std::overflow_error("rational literal too precise");
    den *= 10;
  }
  long long ival = ip.empty() ? 0 : std::stoll(ip);
  long long fval = fp.empty() ? 0 : std::stoll(fp);
  Rational r = Rational(ival) + Rational(fval, den);
  return neg ? -r : r;
}

}  // namespace wpage
