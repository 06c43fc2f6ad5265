#include <sstream>

#include "lukprob/solver.hpp"

namespace lukprob {
namespace {

std::string literal(const Rational& r) {
  const Rational a = abs(r);
  std::string s = a.is_integer() ? a.numerator_str()
                                 : "(/ " + a.numerator_str() + " " + a.denominator_str() + ")";
  return r.sign() < 0 ? "(- " + s + ")" : s;
}

std::string term(const ConstraintSystem& sys, const Poly::Monomial& m, const Rational& c) {
  if (m.empty()) return literal(c);
  std::vector<std::string> factors;
  if (c != Rational(1)) factors.push_back(literal(c));
  for (const VarId v : m) factors.push_back(sys.name(v));
  if (factors.size() == 1) return factors[0];
  std::string s = "(*";
  for (const auto& f : factors) s += " " + f;
  return s + ")";
}

std::string poly(const ConstraintSystem& sys, const Poly& p) {
  if (p.terms().empty()) return "0";
  std::vector<std::string> parts;
  // Variables first, constant last.
  for (const auto& [m, c] : p.terms())
    if (!m.empty()) parts.push_back(term(sys, m, c));
  if (p.constant().sign() != 0) parts.push_back(literal(p.constant()));
  if (parts.size() == 1) return parts[0];
  std::string s = "(+";
  for (const auto& x : parts) s += " " + x;
  return s + ")";
}

const char* op(Rel r) {
  switch (r) {
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
    case Rel::Eq: return "=";
  }
  return "=";
}

}  // namespace

std::string export_smtlib(const ConstraintSystem& sys) {
  std::ostringstream out;
  out << "(set-logic QF_NRA)\n";
  for (VarId v = 0; v < sys.num_vars(); ++v) out << "(declare-fun " << sys.name(v) << " () Real)\n";
  for (VarId v = 0; v < sys.num_vars(); ++v)
    out << "(assert (and (<= 0 " << sys.name(v) << ") (<= " << sys.name(v) << " 1)))\n";
  for (const auto& r : sys.all_rows())
    out << "(assert (" << op(r.rel) << " " << poly(sys, r.left) << " " << poly(sys, r.right) << "))\n";
  out << "(check-sat)\n";
  return out.str();
}

}  // namespace lukprob
