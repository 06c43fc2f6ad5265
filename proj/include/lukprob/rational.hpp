// Exact rational numbers backed by GMP.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

namespace lukprob {

/// Always-canonical rational. Thin value wrapper over mpq_class so the rest of
/// the code never touches GMP directly.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class v);

  /// Accepts "m/n" or "m" (optional leading '-'). Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  /// "m" for integers, "m/n" otherwise.
  std::string str() const;
  /// Always "m/n" with n > 0; the persisted form.
  std::string fraction_str() const;
  /// Decimal rendering with at most `digits` significant digits, trailing
  /// zeros removed. Display only.
  std::string decimal(int digits = 20) const;

  const mpq_class& gmp() const noexcept { return v_; }
  std::string numerator_str() const { return v_.get_num().get_str(); }
  std::string denominator_str() const { return v_.get_den().get_str(); }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }
  std::size_t hash() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Least common multiple of two positive denominators, as a Rational integer.
Rational lcm_denominator(const Rational& a, const Rational& b);

}  // namespace lukprob

template <>
struct std::hash<lukprob::Rational> {
  std::size_t operator()(const lukprob::Rational& r) const noexcept { return r.hash(); }
};
