#include <algorithm>
#include <map>

#include "lukprob/errors.hpp"
#include "lukprob/solver.hpp"

namespace lukprob {
namespace {

// P ◁ 0.
struct NRow {
  Poly p;
  Rel rel;
};

struct Box {
  std::vector<Rational> lo, hi;
};

enum class Outcome { Feasible, Infeasible, Unknown };

bool holds(const Rational& v, Rel rel) {
  switch (rel) {
    case Rel::Le: return v.sign() <= 0;
    case Rel::Lt: return v.sign() < 0;
    case Rel::Eq: return v.sign() == 0;
  }
  return false;
}

class Search {
 public:
  Search(const ConstraintSystem& sys, const PolyOptions& opts) : sys_(sys), opts_(opts) {
    for (const auto& r : sys.all_rows()) rows_.push_back({r.normal(), r.rel});
    width_limit_ = Rational(1);
    for (unsigned i = 0; i < opts.precision; ++i) width_limit_ *= Rational(1, 2);
  }

  Feasibility run() {
    Box box{std::vector<Rational>(sys_.num_vars(), Rational(0)),
            std::vector<Rational>(sys_.num_vars(), Rational(1))};
    Feasibility out;
    switch (node(rows_, box)) {
      case Outcome::Feasible:
        out.status = Feasibility::Status::Feasible;
        out.witness = witness_;
        break;
      case Outcome::Infeasible: out.status = Feasibility::Status::Infeasible; break;
      case Outcome::Unknown:
        out.status = Feasibility::Status::Unknown;
        out.reason = nodes_ > opts_.max_nodes ? "node budget exhausted" : "precision limit reached";
        break;
    }
    return out;
  }

 private:
  // Fixes, bound propagation and complementarity. Returns false when the box
  // is empty. `split` receives a product x·y that must vanish, if any.
  bool presolve(std::vector<NRow>& rows, Box& box, std::optional<std::pair<VarId, VarId>>& split) {
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<std::optional<Rational>> fixed(box.lo.size());
      for (VarId v = 0; v < box.lo.size(); ++v) {
        if (box.lo[v] > box.hi[v]) return false;
        if (box.lo[v] == box.hi[v]) fixed[v] = box.lo[v];
      }
      std::vector<NRow> next;
      for (auto& r : rows) {
        Poly p = r.p.substitute(fixed);
        if (p.is_constant()) {
          if (!holds(p.constant(), r.rel)) return false;
          continue;
        }
        const auto vars = p.variables();
        if (vars.size() == 1 && p.is_linear()) {
          const VarId v = vars[0];
          const Rational a = p.coefficient({v});
          const Rational b = -p.constant() / a;  // a·v + c ◁ 0  ⇔  v ◁' b
          if (r.rel == Rel::Eq || a.sign() > 0) {
            if (b < box.hi[v]) {
              box.hi[v] = b;
              changed = true;
            }
          }
          if (r.rel == Rel::Eq || a.sign() < 0) {
            if (b > box.lo[v]) {
              box.lo[v] = b;
              changed = true;
            }
          }
          if (box.lo[v] > box.hi[v]) return false;
        }
        for (const int sign : {1, -1}) {
          if (sign == -1 && r.rel != Rel::Eq) break;
          Poly q = p * Rational(sign);
          bool nonneg = q.constant().sign() >= 0;
          for (const auto& [m, c] : q.terms())
            if (!m.empty() && c.sign() < 0) nonneg = false;
          if (!nonneg) continue;
          // q ≥ 0 on the box and must be ≤ 0 (or < 0).
          if (q.constant().sign() > 0 || r.rel == Rel::Lt) return false;
          for (const auto& [m, c] : q.terms()) {
            if (m.size() == 1 && box.hi[m[0]].sign() != 0) {
              box.hi[m[0]] = Rational(0);
              changed = true;
            } else if (m.size() == 2 && !split && box.lo[m[0]].sign() == 0 && box.lo[m[1]].sign() == 0) {
              split = std::make_pair(m[0], m[1]);
            } else if (m.size() == 2 && (box.lo[m[0]].sign() > 0 || box.lo[m[1]].sign() > 0)) {
              const VarId other = box.lo[m[0]].sign() > 0 ? m[1] : m[0];
              if (box.lo[other].sign() > 0) return false;
              if (box.hi[other].sign() != 0) {
                box.hi[other] = Rational(0);
                changed = true;
              }
            }
          }
        }
        next.push_back({std::move(p), r.rel});
      }
      rows = std::move(next);
      if (changed) split.reset();
    }
    return true;
  }

  // LP over rows that are linear after replacing each product monomial by
  // an envelope variable. Returns feasibility and the primal point.
  std::optional<std::vector<Rational>> relax(const std::vector<NRow>& rows, const Box& box,
                                             std::map<Poly::Monomial, std::size_t>& aux) {
    const std::size_t n = box.lo.size();
    aux.clear();
    for (const auto& r : rows)
      for (const auto& [m, c] : r.p.terms())
        if (m.size() == 2 && !aux.count(m)) aux.emplace(m, n + aux.size());
    LinearProgram lp;
    lp.num_vars = n + aux.size();
    for (VarId v = 0; v < n; ++v) {
      lp.rows.push_back({{{v, Rational(1)}}, Rel::Le, box.hi[v]});
      if (box.lo[v].sign() > 0) lp.rows.push_back({{{v, Rational(-1)}}, Rel::Le, -box.lo[v]});
    }
    for (const auto& r : rows) {
      LinearProgram::Constraint c;
      c.rel = r.rel;
      for (const auto& [m, k] : r.p.terms()) {
        if (m.empty()) c.rhs = -k;
        else if (m.size() == 1) c.coeffs.emplace_back(m[0], k);
        else c.coeffs.emplace_back(aux.at(m), k);
      }
      lp.rows.push_back(std::move(c));
    }
    for (const auto& [m, w] : aux) {
      const VarId x = m[0], y = m[1];
      const Rational &lx = box.lo[x], &ux = box.hi[x], &ly = box.lo[y], &uy = box.hi[y];
      const auto add = [&](Rational cx, Rational cy, Rational cw, Rational rhs) {
        std::map<std::size_t, Rational> acc;
        acc[x] += cx;
        acc[y] += cy;
        acc[w] += cw;
        LinearProgram::Constraint c;
        for (const auto& [k, a] : acc)
          if (a.sign() != 0) c.coeffs.emplace_back(k, a);
        c.rhs = std::move(rhs);
        lp.rows.push_back(std::move(c));
      };
      // w ≥ lx·y + x·ly − lx·ly and w ≥ ux·y + x·uy − ux·uy
      add(ly, lx, Rational(-1), lx * ly);
      add(uy, ux, Rational(-1), ux * uy);
      // w ≤ ux·y + x·ly − ux·ly and w ≤ lx·y + x·uy − lx·uy
      add(-ly, -ux, Rational(1), -ux * ly);
      add(-uy, -lx, Rational(1), -lx * uy);
    }
    const LpResult res = solve_lp(lp);
    if (!res.feasible) return std::nullopt;
    return res.x;
  }

  // Exact check of the original system at a full assignment.
  bool accept(std::vector<Rational> x) {
    for (const auto& b : sys_.blocks()) reduce_support(b, x);
    if (!sys_.satisfied_by(x)) return false;
    witness_ = std::move(x);
    return true;
  }

  bool try_fixing(const std::vector<NRow>& rows, const Box& box, const std::vector<VarId>& cover,
                  const std::vector<Rational>& values) {
    Box b = box;
    for (const VarId v : cover) {
      if (values[v] < b.lo[v] || values[v] > b.hi[v]) return false;
      b.lo[v] = b.hi[v] = values[v];
    }
    std::vector<std::optional<Rational>> fixed(box.lo.size());
    for (const VarId v : cover) fixed[v] = values[v];
    std::vector<NRow> lin;
    for (const auto& r : rows) {
      Poly p = r.p.substitute(fixed);
      if (!p.is_linear()) return false;
      lin.push_back({std::move(p), r.rel});
    }
    std::map<Poly::Monomial, std::size_t> aux;
    const auto x = relax(lin, b, aux);
    if (!x) return false;
    std::vector<Rational> full(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(box.lo.size()));
    return accept(std::move(full));
  }

  static std::vector<VarId> vertex_cover(const std::vector<NRow>& rows) {
    std::vector<std::pair<VarId, VarId>> edges;
    for (const auto& r : rows)
      for (const auto& [m, c] : r.p.terms())
        if (m.size() == 2) edges.emplace_back(m[0], m[1]);
    std::vector<VarId> cover;
    while (!edges.empty()) {
      std::map<VarId, std::size_t> degree;
      for (const auto& [a, b] : edges) {
        ++degree[a];
        if (b != a) ++degree[b];
      }
      VarId best = degree.begin()->first;
      for (const auto& [v, d] : degree)
        if (d > degree[best]) best = v;
      cover.push_back(best);
      std::erase_if(edges, [&](const auto& e) { return e.first == best || e.second == best; });
    }
    return cover;
  }

  Outcome node(std::vector<NRow> rows, Box box) {
    if (++nodes_ > opts_.max_nodes) return Outcome::Unknown;
    std::optional<std::pair<VarId, VarId>> comp;
    if (!presolve(rows, box, comp)) return Outcome::Infeasible;
    if (comp) {
      Outcome result = Outcome::Infeasible;
      for (const VarId v : {comp->first, comp->second}) {
        Box child = box;
        child.hi[v] = Rational(0);
        const Outcome o = node(rows, std::move(child));
        if (o == Outcome::Feasible) return o;
        if (o == Outcome::Unknown) result = Outcome::Unknown;
      }
      return result;
    }
    std::map<Poly::Monomial, std::size_t> aux;
    const auto rx = relax(rows, box, aux);
    if (!rx) return Outcome::Infeasible;
    const std::vector<Rational> point(rx->begin(), rx->begin() + static_cast<std::ptrdiff_t>(box.lo.size()));
    if (accept(point)) return Outcome::Feasible;
    if (aux.empty()) throw InternalInconsistency("linear relaxation point fails exact re-check");
    const auto cover = vertex_cover(rows);
    if (try_fixing(rows, box, cover, point)) return Outcome::Feasible;
    std::vector<Rational> mid(box.lo.size());
    for (VarId v = 0; v < box.lo.size(); ++v) mid[v] = (box.lo[v] + box.hi[v]) * Rational(1, 2);
    if (try_fixing(rows, box, cover, mid)) return Outcome::Feasible;

    // Split the widest factor of the worst-approximated product.
    std::optional<VarId> split;
    Rational worst(-1);
    for (const auto& [m, w] : aux) {
      const Rational gap = abs((*rx)[w] - point[m[0]] * point[m[1]]);
      for (const VarId v : m) {
        const Rational width = box.hi[v] - box.lo[v];
        if (width <= width_limit_) continue;
        const Rational score = gap * width;
        if (score > worst) {
          worst = score;
          split = v;
        }
      }
    }
    if (!split) return Outcome::Unknown;
    const Rational cut = (box.lo[*split] + box.hi[*split]) * Rational(1, 2);
    Outcome result = Outcome::Infeasible;
    for (int side = 0; side < 2; ++side) {
      Box child = box;
      (side == 0 ? child.hi : child.lo)[*split] = cut;
      const Outcome o = node(rows, std::move(child));
      if (o == Outcome::Feasible) return o;
      if (o == Outcome::Unknown) result = Outcome::Unknown;
    }
    return result;
  }

  const ConstraintSystem& sys_;
  PolyOptions opts_;
  std::vector<NRow> rows_;
  Rational width_limit_;
  std::size_t nodes_ = 0;
  std::vector<Rational> witness_;
};

}  // namespace

Feasibility poly_feasible(const ConstraintSystem& sys, const PolyOptions& opts) {
  Feasibility out = Search(sys, opts).run();
  if (out.feasible() && !sys.satisfied_by(out.witness))
    throw InternalInconsistency("branch-and-prune witness fails exact re-check");
  return out;
}

Feasibility solve(const ConstraintSystem& sys, const PolyOptions& opts) {
  return sys.linear() ? lp_feasible(sys) : poly_feasible(sys, opts);
}

}  // namespace lukprob
