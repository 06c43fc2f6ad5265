#include "lukprob/rational.hpp"

#include <algorithm>
#include <stdexcept>

#include "lukprob/errors.hpp"

namespace lukprob {

ParseError::ParseError(std::size_t position, std::vector<std::string> expected,
                       const std::string& found)
    : Error([&] {
        std::string msg = "parse error at position " + std::to_string(position) + ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
          if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
          msg += expected[i];
        }
        msg += ", found " + found;
        return msg;
      }()),
      position_(position),
      expected_(std::move(expected)) {}

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error([&] {
        std::string msg = "model validation failed:";
        for (const auto& v : violations) msg += "\n  " + v;
        return msg;
      }()),
      violations_(std::move(violations)) {}

BasisTooLarge::BasisTooLarge(std::size_t props, std::size_t cap)
    : Error("coherence basis has " + std::to_string(props) + " props, cap is " +
            std::to_string(cap)) {}

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  const mpz_class n{std::string(num)};
  const mpz_class d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_str();
}

std::string Rational::fraction_str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  mpz_class num = v_.get_num();
  const mpz_class den = v_.get_den();
  std::string out;
  if (num < 0) {
    out += '-';
    num = -num;
  }
  mpz_class ip = num / den;
  mpz_class rem = num % den;
  std::string int_part = ip.get_str();
  out += int_part;
  int significant = ip == 0 ? 0 : static_cast<int>(int_part.size());
  if (rem == 0) return out;
  std::string frac;
  while (rem != 0 && significant < digits) {
    rem *= 10;
    mpz_class dgt = rem / den;
    rem %= den;
    frac += static_cast<char>('0' + dgt.get_si());
    if (significant > 0 || dgt != 0) ++significant;
  }
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) out += "." + frac;
  return out;
}

std::size_t Rational::hash() const {
  const std::size_t h1 = std::hash<std::string>{}(v_.get_num().get_str(16));
  const std::size_t h2 = std::hash<std::string>{}(v_.get_den().get_str(16));
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational lcm_denominator(const Rational& a, const Rational& b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.gmp().get_den_mpz_t(), b.gmp().get_den_mpz_t());
  return Rational(mpq_class(l));
}

}  // namespace lukprob
