#include "lukprob/tableau.hpp"

#include <algorithm>
#include <chrono>

#include "lukprob/errors.hpp"

namespace lukprob {

using K = Formula::Kind;

std::size_t Branch::label_index(const std::string& name) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i].name == name) return i;
  throw UnknownWorld("no label '" + name + "' on branch");
}

VarId VarRegistry::add(const std::string& name) {
  names_.push_back(name);
  return names_.size() - 1;
}

VarId VarRegistry::fresh_aux() { return add("j" + std::to_string(next_aux_++)); }

Poly BranchSystem::translate(const Poly& p) const {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Poly t(c);
    for (const VarId v : m) t = t * Poly::var(*registry_map.at(v));
    out += t;
  }
  return out;
}

Tableau::Tableau(EntailmentQuery q, DecideOptions opts) : query_(std::move(q)), opts_(std::move(opts)) {
  d_ = reg_.add("d");
}

std::size_t Tableau::add_label(Branch& b, std::size_t parent) {
  Label l;
  l.depth = b.labels[parent].depth + 1;
  l.parent_pos = b.labels[parent].pos;
  l.pos = 1;
  for (const auto& other : b.labels)
    if (other.depth == l.depth) ++l.pos;
  l.name = "w" + std::to_string(l.depth) + "_" + std::to_string(l.pos) + "_" + std::to_string(l.parent_pos);
  b.labels.push_back(std::move(l));
  return b.labels.size() - 1;
}

Branch Tableau::root() {
  Branch b;
  b.labels.push_back({"w0", 0, 1, 0});
  for (const auto& p : query_.premises) add_formulaic(b, 0, expand_derived(p), Dir::Ge, Rational(1));
  add_formulaic(b, 0, expand_derived(query_.conclusion), Dir::Le, Poly::var(d_));
  add_numeric(b, Poly::var(d_), Rel::Lt, Rational(1));
  return b;
}

void Tableau::add_numeric(Branch& b, Poly left, Rel rel, Poly right) {
  const Poly diff = left - right;
  if (diff.is_constant()) {
    const int s = diff.constant().sign();
    const bool ok = rel == Rel::Le ? s <= 0 : rel == Rel::Lt ? s < 0 : s == 0;
    if (!ok) b.closed = true;
    return;
  }
  b.numeric.push_back({std::move(left), rel, std::move(right)});
}

void Tableau::add_formulaic(Branch& b, std::size_t label, Formula f, Dir dir, Poly bound) {
  const auto leaf_value = [&]() -> std::optional<Rational> {
    switch (f.kind()) {
      case K::Half: return Rational(1, 2);
      case K::Constant: return f.value();
      case K::Top: return Rational(1);
      case K::Bottom: return Rational(0);
      default: return std::nullopt;
    }
  }();
  if (leaf_value) {
    if (dir == Dir::Le) add_numeric(b, *leaf_value, Rel::Le, std::move(bound));
    else add_numeric(b, std::move(bound), Rel::Le, *leaf_value);
    return;
  }
  if (f.kind() == K::ProbAtom && bound.is_constant()) {
    // Two constant bounds on the same atom that cross close the branch.
    for (const auto& c : b.formulaic) {
      if (c.label != label || c.dir == dir || !c.bound.is_constant() || !(c.formula == f)) continue;
      const Rational lo = dir == Dir::Ge ? bound.constant() : c.bound.constant();
      const Rational hi = dir == Dir::Ge ? c.bound.constant() : bound.constant();
      if (lo > hi) b.closed = true;
    }
  }
  const bool done = f.kind() == K::ProbAtom || (f.kind() == K::Box && dir == Dir::Ge);
  b.formulaic.push_back({label, std::move(f), dir, std::move(bound)});
  b.processed.push_back(done);
}

namespace {

bool branching_rule(const FormulaicConstraint& c) {
  return c.dir == Dir::Le && (c.formula.kind() == K::Impl || c.formula.kind() == K::ProdImpl);
}

bool propositional(const FormulaicConstraint& c) {
  switch (c.formula.kind()) {
    case K::Neg:
    case K::Impl:
    case K::Prod:
    case K::ProdImpl: return true;
    default: return false;
  }
}

}  // namespace

bool Tableau::early_closed(const Branch& b) const {
  const BranchSystem bs = branch_system(b, true);
  return lp_feasible(bs.system).infeasible();
}

std::optional<std::vector<Branch>> Tableau::step(Branch& b) {
  const std::size_t n = b.formulaic.size();
  // Non-branching propositional rules first, then branching ones.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t idx = 0; idx < n; ++idx) {
      if (b.processed[idx] || !propositional(b.formulaic[idx])) continue;
      if (branching_rule(b.formulaic[idx]) != (pass == 1)) continue;
      b.processed[idx] = true;
      const FormulaicConstraint c = b.formulaic[idx];
      const Formula& f = c.formula;
      const Poly& i = c.bound;
      const Rational one(1);
      switch (f.kind()) {
        case K::Neg:
          add_formulaic(b, c.label, f.arg(), c.dir == Dir::Le ? Dir::Ge : Dir::Le, Poly(one) - i);
          return std::vector<Branch>{};
        case K::Impl:
          if (c.dir == Dir::Ge) {
            const Poly j = Poly::var(reg_.fresh_aux());
            add_formulaic(b, c.label, f.left(), Dir::Le, Poly(one) - i + j);
            add_formulaic(b, c.label, f.right(), Dir::Ge, j);
            return std::vector<Branch>{};
          } else {
            Branch a = b;
            add_numeric(a, one, Rel::Le, i);
            const Poly j = Poly::var(reg_.fresh_aux());
            add_formulaic(b, c.label, f.left(), Dir::Ge, Poly(one) - i + j);
            add_formulaic(b, c.label, f.right(), Dir::Le, j);
            add_numeric(b, j, Rel::Le, i);
            std::vector<Branch> out;
            out.push_back(std::move(a));
            out.push_back(std::move(b));
            return out;
          }
        case K::Prod: {
          const Poly j1 = Poly::var(reg_.fresh_aux());
          const Poly j2 = Poly::var(reg_.fresh_aux());
          add_formulaic(b, c.label, f.left(), c.dir, j1);
          add_formulaic(b, c.label, f.right(), c.dir, j2);
          if (c.dir == Dir::Le) add_numeric(b, j1 * j2, Rel::Le, i);
          else add_numeric(b, i, Rel::Le, j1 * j2);
          return std::vector<Branch>{};
        }
        case K::ProdImpl:
          if (c.dir == Dir::Ge) {
            // φ →Π χ ≥ i  iff  i ≤ 1 and χ ≥ i·φ.
            const Poly j1 = Poly::var(reg_.fresh_aux());
            const Poly j2 = Poly::var(reg_.fresh_aux());
            const Poly k = Poly::var(reg_.fresh_aux());
            add_formulaic(b, c.label, f.left(), Dir::Le, j1);
            add_formulaic(b, c.label, f.right(), Dir::Ge, j2);
            add_numeric(b, k * j1, Rel::Le, j2);
            add_numeric(b, i, Rel::Le, k);
            return std::vector<Branch>{};
          } else {
            Branch a = b;
            add_numeric(a, one, Rel::Le, i);
            const Poly j1 = Poly::var(reg_.fresh_aux());
            const Poly j2 = Poly::var(reg_.fresh_aux());
            const Poly k = Poly::var(reg_.fresh_aux());
            add_formulaic(b, c.label, f.left(), Dir::Ge, j1);
            add_formulaic(b, c.label, f.right(), Dir::Le, j2);
            add_numeric(b, j2, Rel::Lt, j1);
            add_numeric(b, k, Rel::Le, i);
            add_numeric(b, j2, Rel::Le, k * j1);
            std::vector<Branch> out;
            out.push_back(std::move(a));
            out.push_back(std::move(b));
            return out;
          }
        default: break;
      }
    }
  }
  // □≥ propagation to every successor present on the branch.
  for (std::size_t idx = 0; idx < n; ++idx) {
    const auto& c = b.formulaic[idx];
    if (c.formula.kind() != K::Box || c.dir != Dir::Ge) continue;
    for (std::size_t r = 0; r < b.relations.size(); ++r) {
      const auto& rel = b.relations[r];
      if (rel.from != c.label || rel.agent != c.formula.agent()) continue;
      if (!b.propagated.insert({idx, r}).second) continue;
      const FormulaicConstraint copy = c;
      add_formulaic(b, rel.to, copy.formula.arg(), Dir::Ge, copy.bound);
      return std::vector<Branch>{};
    }
  }
  // One □≤ witness at a time. A bound of 1 is met with no successor at all,
  // so that case stays open as a branch of its own.
  for (std::size_t idx = 0; idx < n; ++idx) {
    const auto& c = b.formulaic[idx];
    if (b.processed[idx] || c.formula.kind() != K::Box || c.dir != Dir::Le) continue;
    b.processed[idx] = true;
    const FormulaicConstraint copy = c;
    Branch a = b;
    add_numeric(a, Poly(Rational(1)), Rel::Le, copy.bound);
    const std::size_t w = add_label(b, copy.label);
    b.relations.push_back({copy.label, copy.formula.agent(), w});
    add_formulaic(b, w, copy.formula.arg(), Dir::Le, copy.bound);
    std::vector<Branch> out;
    out.push_back(std::move(a));
    out.push_back(std::move(b));
    return out;
  }
  return std::nullopt;
}

void Tableau::saturate(const std::function<bool(Branch&)>& visit) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Branch> stack;
  stack.push_back(root());
  branches_ = 1;
  while (!stack.empty()) {
    Branch b = std::move(stack.back());
    stack.pop_back();
    while (!b.closed) {
      if (opts_.time_limit > 0) {
        const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
        if (el.count() > opts_.time_limit) throw BudgetExceeded("tableau time limit exceeded");
      }
      auto kids = step(b);
      if (!kids) {
        if (!visit(b)) return;
        break;
      }
      if (kids->empty()) continue;
      branches_ += kids->size() - 1;
      if (branches_ > opts_.max_branches) throw BudgetExceeded("tableau branch limit exceeded");
      for (auto it = kids->rbegin(); it != kids->rend(); ++it) {
        if (it->closed) continue;
        if (opts_.early_closure && early_closed(*it)) continue;
        stack.push_back(std::move(*it));
      }
      break;
    }
  }
}

BranchSystem Tableau::branch_system(const Branch& b, bool linear_only) const {
  BranchSystem bs;
  bs.registry_map.assign(reg_.size(), std::nullopt);
  std::vector<bool> used(reg_.size(), false);
  const auto mark = [&](const Poly& p) {
    for (const VarId v : p.variables()) used[v] = true;
  };
  used[d_] = true;
  for (const auto& c : b.formulaic)
    if (c.formula.kind() == K::ProbAtom) mark(c.bound);
  for (const auto& nc : b.numeric) {
    if (linear_only && !(nc.left.is_linear() && nc.right.is_linear())) continue;
    mark(nc.left);
    mark(nc.right);
  }
  for (VarId v = 0; v < reg_.size(); ++v)
    if (used[v]) bs.registry_map[v] = bs.system.add_var(reg_.name(v));

  // Atom value variables, grouped per label in order of first occurrence.
  std::vector<std::vector<BooleanTerm>> atoms(b.labels.size());
  std::vector<std::vector<VarId>> atom_ids(b.labels.size());
  for (const auto& c : b.formulaic) {
    if (c.formula.kind() != K::ProbAtom) continue;
    const auto key = std::make_pair(c.label, c.formula);
    VarId x;
    const auto it = std::find_if(bs.atom_vars.begin(), bs.atom_vars.end(),
                                 [&](const auto& e) { return e.first.first == c.label && e.first.second == c.formula; });
    if (it == bs.atom_vars.end()) {
      x = bs.system.add_var("x__" + b.labels[c.label].name + "__" + stable_hash(c.formula));
      bs.atom_vars.emplace_back(key, x);
      atoms[c.label].push_back(c.formula.term());
      atom_ids[c.label].push_back(x);
    } else {
      x = it->second;
    }
    if (c.dir == Dir::Le) bs.system.add_row(Poly::var(x), Rel::Le, bs.translate(c.bound));
    else bs.system.add_row(bs.translate(c.bound), Rel::Le, Poly::var(x));
  }
  for (const auto& nc : b.numeric) {
    if (linear_only && !(nc.left.is_linear() && nc.right.is_linear())) continue;
    bs.system.add_row(bs.translate(nc.left), nc.rel, bs.translate(nc.right));
  }
  if (!opts_.atoms_as_variables) {
    for (std::size_t l = 0; l < b.labels.size(); ++l)
      if (!atoms[l].empty()) build_coherence(bs.system, b.labels[l].name, atoms[l], atom_ids[l], opts_.basis_cap);
  }
  return bs;
}

}  // namespace lukprob
