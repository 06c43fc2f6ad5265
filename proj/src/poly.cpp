#include <algorithm>

#include "lukprob/solver.hpp"

namespace lukprob {

Poly::Poly(const Rational& c) {
  if (c.sign() != 0) terms_[{}] = c;
}

Poly Poly::var(VarId v) {
  Poly p;
  p.terms_[{v}] = Rational(1);
  return p;
}

Rational Poly::constant() const { return coefficient({}); }

Rational Poly::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Rational() : it->second;
}

std::size_t Poly::degree() const {
  std::size_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.size());
  return d;
}

std::vector<VarId> Poly::variables() const {
  std::vector<VarId> out;
  for (const auto& [m, c] : terms_) out.insert(out.end(), m.begin(), m.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational Poly::eval(const std::vector<Rational>& x) const {
  Rational sum;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const VarId v : m) t *= x.at(v);
    sum += t;
  }
  return sum;
}

Poly Poly::substitute(const std::vector<std::optional<Rational>>& fixed) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Rational k = c;
    Monomial rest;
    for (const VarId v : m) {
      if (v < fixed.size() && fixed[v]) k *= *fixed[v];
      else rest.push_back(v);
    }
    out.add_term(rest, k);
  }
  return out;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.sign() == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.sign() == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c.sign() == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, k] : terms_) k *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Poly::Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::sort(m.begin(), m.end());
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

std::string to_string(Rel r) {
  switch (r) {
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
    case Rel::Eq: return "=";
  }
  return "?";
}

bool Row::holds(const std::vector<Rational>& x) const {
  const Rational v = normal().eval(x);
  switch (rel) {
    case Rel::Le: return v.sign() <= 0;
    case Rel::Lt: return v.sign() < 0;
    case Rel::Eq: return v.sign() == 0;
  }
  return false;
}

std::string to_string(Feasibility::Status s) {
  switch (s) {
    case Feasibility::Status::Feasible: return "FEASIBLE";
    case Feasibility::Status::Infeasible: return "INFEASIBLE";
    case Feasibility::Status::Unknown: return "UNKNOWN";
  }
  return "?";
}

}  // namespace lukprob
