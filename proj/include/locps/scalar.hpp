#pragma once

// Scalar types used by the library:
//   double    floating mode
//   Rational  exact rational mode (arbitrary precision, never overflows)
//   Surd      exact element a + b*sqrt(d) of a quadratic field Q(sqrt(d))

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace locps {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t p, std::int64_t q = 1) {
  if (q == 0) throw std::domain_error("rational with zero denominator");
  return Rational(BigInt(p), BigInt(q));
}

/// Formats as "p/q" with q > 0, always including the denominator ("-4/1").
inline std::string to_string(const Rational& x) {
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline BigInt parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  BigInt v{std::string(s)};
  return neg ? BigInt(-v) : v;
}

inline BigInt pow10(int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace detail

/// Parses "p/q" or an integer "p". Decimal literals are rejected.
inline Rational parse_fraction(std::string_view s) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(s));
  BigInt num = detail::parse_integer(s.substr(0, slash));
  auto den_text = s.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '+') den_text.remove_prefix(1);
  if (!detail::all_digits(den_text))
    throw std::invalid_argument("bad denominator in '" + std::string(s) + "'");
  BigInt den(std::string{den_text});
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
  return Rational(num, den);
}

/// Parses "p/q", an integer, or a decimal literal such as "-0.4" or "1e-6",
/// converting decimals exactly (0.4 -> 2/5).
inline Rational parse_rational(std::string_view s) {
  if (s.find('/') != std::string_view::npos) return parse_fraction(s);
  std::string_view mant = s;
  int exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mant = s.substr(0, e);
    exp10 = static_cast<int>(detail::parse_integer(s.substr(e + 1)).convert_to<long>());
  }
  bool neg = false;
  if (!mant.empty() && (mant.front() == '-' || mant.front() == '+')) {
    neg = mant.front() == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  if (auto dot = mant.find('.'); dot != std::string_view::npos) {
    digits = std::string(mant.substr(0, dot)) + std::string(mant.substr(dot + 1));
    exp10 -= static_cast<int>(mant.size() - dot - 1);
  } else {
    digits = std::string(mant);
  }
  if (!detail::all_digits(digits)) throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  Rational v{BigInt(digits)};
  if (exp10 > 0) v *= detail::pow10(exp10);
  if (exp10 < 0) v /= detail::pow10(-exp10);
  return neg ? Rational(-v) : v;
}

/// Exact square root when x is the square of a rational; throws otherwise.
inline Rational exact_sqrt(const Rational& x) {
  if (x < 0) throw std::domain_error("square root of negative rational");
  const BigInt p = boost::multiprecision::numerator(x);
  const BigInt q = boost::multiprecision::denominator(x);
  const BigInt sp = boost::multiprecision::sqrt(p);
  const BigInt sq = boost::multiprecision::sqrt(q);
  if (sp * sp != p || sq * sq != q)
    throw std::domain_error("square root of " + to_string(x) + " is irrational");
  return Rational(sp, sq);
}

inline bool is_rational_square(const Rational& x) {
  if (x < 0) return false;
  const BigInt p = boost::multiprecision::numerator(x);
  const BigInt q = boost::multiprecision::denominator(x);
  const BigInt sp = boost::multiprecision::sqrt(p);
  const BigInt sq = boost::multiprecision::sqrt(q);
  return sp * sp == p && sq * sq == q;
}

/// Exact element a + b*sqrt(d) with rational a, b and a fixed non-square
/// rational radicand d > 0. Values with b == 0 are plain rationals and mix
/// freely with any radicand.
class Surd {
 public:
  Surd() = default;
  Surd(int a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Surd(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)

  /// sqrt(d) itself. Collapses to a rational when d is a perfect square.
  static Surd sqrt_of(const Rational& d) {
    if (d < 0) throw std::domain_error("Surd radicand must be nonnegative");
    if (is_rational_square(d)) return Surd(exact_sqrt(d));
    Surd s;
    s.b_ = 1;
    s.d_ = d;
    return s;
  }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coefficient() const { return b_; }
  const Rational& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  double to_double() const {
    return a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(d_.convert_to<double>());
  }

  /// -1, 0 or +1, decided exactly.
  int sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with b^2 d
    const Rational lhs = a_ * a_;
    const Rational rhs = b_ * b_ * d_;
    if (lhs > rhs) return sa;
    if (lhs < rhs) return sb;
    return 0;
  }

  Surd operator-() const {
    Surd r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
  }

  Surd& operator+=(const Surd& o) {
    d_ = merged_radicand(o);
    a_ += o.a_;
    b_ += o.b_;
    normalize();
    return *this;
  }
  Surd& operator-=(const Surd& o) { return *this += -o; }
  Surd& operator*=(const Surd& o) {
    const Rational d = merged_radicand(o);
    Rational a = a_ * o.a_ + b_ * o.b_ * d;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = d;
    normalize();
    return *this;
  }
  Surd& operator/=(const Surd& o) {
    if (o.sign() == 0) throw std::domain_error("Surd division by zero");
    const Rational d = merged_radicand(o);
    // (a + b s) / (c + e s) = (a + b s)(c - e s) / (c^2 - e^2 d)
    const Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * d;
    Rational a = (a_ * o.a_ - b_ * o.b_ * d) / norm;
    Rational b = (b_ * o.a_ - a_ * o.b_) / norm;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = d;
    normalize();
    return *this;
  }

  friend Surd operator+(Surd x, const Surd& y) { return x += y; }
  friend Surd operator-(Surd x, const Surd& y) { return x -= y; }
  friend Surd operator*(Surd x, const Surd& y) { return x *= y; }
  friend Surd operator/(Surd x, const Surd& y) { return x /= y; }

  friend bool operator==(const Surd& x, const Surd& y) { return (x - y).sign() == 0; }
  friend bool operator<(const Surd& x, const Surd& y) { return (x - y).sign() < 0; }
  friend bool operator>(const Surd& x, const Surd& y) { return y < x; }
  friend bool operator<=(const Surd& x, const Surd& y) { return !(y < x); }
  friend bool operator>=(const Surd& x, const Surd& y) { return !(x < y); }

  std::string str() const {
    if (b_ == 0) return to_string(a_);
    return to_string(a_) + " + " + to_string(b_) + "*sqrt(" + to_string(d_) + ")";
  }

 private:
  Rational merged_radicand(const Surd& o) const {
    if (b_ == 0) return o.d_;
    if (o.b_ == 0) return d_;
    if (d_ != o.d_) throw std::domain_error("Surd values with different radicands");
    return d_;
  }
  void normalize() {
    if (b_ == 0) d_ = 0;
  }

  Rational a_{0};
  Rational b_{0};
  Rational d_{0};
};

inline std::string to_string(const Surd& x) { return x.str(); }

// ---------------------------------------------------------------------------
// scalar traits

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode = "float";
  static double to_double(double x) { return x; }
  static int sign(double x) { return (x > 0) - (x < 0); }
  static double sqrt(double x) {
    if (x < 0) throw std::domain_error("square root of negative value");
    return std::sqrt(x);
  }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode = "rational";
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static int sign(const Rational& x) { return x.sign(); }
  static Rational sqrt(const Rational& x) { return exact_sqrt(x); }
};

template <>
struct scalar_traits<Surd> {
  static constexpr bool exact = true;
  static constexpr const char* mode = "surd";
  static double to_double(const Surd& x) { return x.to_double(); }
  static int sign(const Surd& x) { return x.sign(); }
  static Surd sqrt(const Surd& x) {
    if (!x.is_rational()) throw std::domain_error("square root of a non-rational Surd");
    if (x.rational_part() < 0) throw std::domain_error("square root of negative value");
    return Surd::sqrt_of(x.rational_part());
  }
};

template <class T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

template <class T>
concept Scalar = requires { scalar_traits<T>::exact; };

template <Scalar T>
double to_double(const T& x) {
  return scalar_traits<T>::to_double(x);
}

template <Scalar T>
int sign_of(const T& x) {
  return scalar_traits<T>::sign(x);
}

template <Scalar T>
T abs_of(const T& x) {
  return sign_of(x) < 0 ? T(-x) : x;
}

template <Scalar T>
T pow_int(T base, unsigned e) {
  T r(1);
  while (e) {
    if (e & 1u) r = r * base;
    base = base * base;
    e >>= 1u;
  }
  return r;
}

inline std::string to_string(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Converts a (small integer or rational) value into T.
template <Scalar T>
T from_rational(const Rational& x) {
  if constexpr (std::is_same_v<T, double>) {
    return x.convert_to<double>();
  } else {
    return T(x);
  }
}

}  // namespace locps
