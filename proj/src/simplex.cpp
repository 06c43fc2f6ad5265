#include <gmpxx.h>

#include <limits>

#include "lukprob/solver.hpp"

namespace lukprob {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr int kDegenerateLimit = 30;

// Dense tableau in equality form: T x = rhs, x ≥ 0, with basis[i] the
// basic column of row i.
struct Tableau {
  std::vector<std::vector<mpq_class>> t;  // last entry of each row is the rhs
  std::vector<std::size_t> basis;
  std::vector<bool> blocked;  // columns never allowed to enter
  std::size_t cols = 0;

  mpq_class& rhs(std::size_t i) { return t[i][cols]; }

  void pivot(std::size_t r, std::size_t q, std::vector<mpq_class>& obj) {
    auto& pr = t[r];
    const mpq_class inv = 1 / pr[q];
    for (auto& v : pr)
      if (sgn(v) != 0) v *= inv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r || sgn(t[i][q]) == 0) continue;
      const mpq_class f = t[i][q];
      auto& row = t[i];
      for (std::size_t k = 0; k <= cols; ++k)
        if (sgn(pr[k]) != 0) row[k] -= f * pr[k];
    }
    if (sgn(obj[q]) != 0) {
      const mpq_class f = obj[q];
      for (std::size_t k = 0; k <= cols; ++k)
        if (sgn(pr[k]) != 0) obj[k] -= f * pr[k];
    }
    basis[r] = q;
  }

  // Reduced-cost row for maximizing c: obj[j] = c_j − Σ c_B(i) t[i][j]; the
  // last entry holds −(objective value).
  std::vector<mpq_class> objective(const std::vector<mpq_class>& c) const {
    std::vector<mpq_class> obj(cols + 1);
    for (std::size_t j = 0; j < cols; ++j) obj[j] = c[j];
    for (std::size_t i = 0; i < t.size(); ++i) {
      const mpq_class& cb = c[basis[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t k = 0; k <= cols; ++k)
        if (sgn(t[i][k]) != 0) obj[k] -= cb * t[i][k];
    }
    return obj;
  }

  // Maximizes the objective encoded in obj. Returns false if unbounded.
  bool optimize(std::vector<mpq_class>& obj) {
    int degenerate = 0;
    for (;;) {
      std::size_t q = kNone;
      const bool bland = degenerate > kDegenerateLimit;
      for (std::size_t j = 0; j < cols; ++j) {
        if (blocked[j] || sgn(obj[j]) <= 0) continue;
        if (q == kNone || (!bland && obj[j] > obj[q])) q = j;
        if (bland) break;
      }
      if (q == kNone) return true;
      std::size_t r = kNone;
      mpq_class best;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (sgn(t[i][q]) <= 0) continue;
        mpq_class ratio = t[i][cols] / t[i][q];
        if (r == kNone || ratio < best || (ratio == best && basis[i] < basis[r])) {
          r = i;
          best = std::move(ratio);
        }
      }
      if (r == kNone) return false;
      degenerate = sgn(best) == 0 ? degenerate + 1 : 0;
      pivot(r, q, obj);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  bool strict = false;
  for (const auto& row : lp.rows) strict = strict || row.rel == Rel::Lt;
  const std::size_t n = lp.num_vars;
  const std::size_t eps = strict ? n : kNone;
  const std::size_t structural = n + (strict ? 1 : 0);

  struct Prepared {
    std::vector<std::pair<std::size_t, mpq_class>> coeffs;
    bool has_slack;
    mpq_class rhs;
  };
  std::vector<Prepared> rows;
  for (const auto& row : lp.rows) {
    Prepared p;
    for (const auto& [k, a] : row.coeffs)
      if (a.sign() != 0) p.coeffs.emplace_back(k, a.gmp());
    if (row.rel == Rel::Lt) p.coeffs.emplace_back(eps, mpq_class(1));
    p.has_slack = row.rel != Rel::Eq;
    p.rhs = row.rhs.gmp();
    rows.push_back(std::move(p));
  }
  if (strict) rows.push_back({{{eps, mpq_class(1)}}, true, mpq_class(1)});

  std::size_t slacks = 0;
  for (const auto& p : rows) slacks += p.has_slack ? 1 : 0;
  std::size_t artificials = 0;
  for (const auto& p : rows) artificials += (!p.has_slack || sgn(p.rhs) < 0) ? 1 : 0;

  Tableau tb;
  tb.cols = structural + slacks + artificials;
  tb.t.assign(rows.size(), std::vector<mpq_class>(tb.cols + 1));
  tb.basis.assign(rows.size(), kNone);
  tb.blocked.assign(tb.cols, false);
  std::vector<mpq_class> phase1(tb.cols);
  std::size_t next_slack = structural;
  std::size_t next_art = structural + slacks;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& p = rows[i];
    const bool flip = sgn(p.rhs) < 0;
    auto& tr = tb.t[i];
    for (const auto& [k, a] : p.coeffs) tr[k] += flip ? mpq_class(-a) : a;
    tr[tb.cols] = flip ? mpq_class(-p.rhs) : p.rhs;
    if (p.has_slack) {
      tr[next_slack] = flip ? -1 : 1;
      if (!flip) tb.basis[i] = next_slack;
      ++next_slack;
    }
    if (tb.basis[i] == kNone) {
      tr[next_art] = 1;
      tb.basis[i] = next_art;
      phase1[next_art] = -1;
      ++next_art;
    }
  }

  LpResult res;
  if (artificials > 0) {
    auto obj = tb.objective(phase1);
    tb.optimize(obj);
    if (sgn(obj[tb.cols]) != 0) return res;  // Σ artificials > 0 at the optimum
    const std::size_t first_art = structural + slacks;
    for (std::size_t j = first_art; j < tb.cols; ++j) tb.blocked[j] = true;
    for (std::size_t i = 0; i < tb.t.size();) {
      if (tb.basis[i] < first_art) {
        ++i;
        continue;
      }
      std::size_t q = kNone;
      for (std::size_t j = 0; j < first_art && q == kNone; ++j)
        if (sgn(tb.t[i][j]) != 0) q = j;
      if (q == kNone) {
        tb.t.erase(tb.t.begin() + static_cast<std::ptrdiff_t>(i));
        tb.basis.erase(tb.basis.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      tb.pivot(i, q, obj);
      ++i;
    }
  }
  if (strict) {
    std::vector<mpq_class> c(tb.cols);
    c[eps] = 1;
    auto obj = tb.objective(c);
    tb.optimize(obj);
  }
  std::vector<mpq_class> value(tb.cols);
  for (std::size_t i = 0; i < tb.t.size(); ++i) value[tb.basis[i]] = tb.t[i][tb.cols];
  res.x.reserve(n);
  for (std::size_t k = 0; k < n; ++k) res.x.emplace_back(value[k]);
  if (strict) res.slack = Rational(value[eps]);
  res.feasible = !strict || res.slack.sign() > 0;
  return res;
}

}  // namespace lukprob
