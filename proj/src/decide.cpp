#include <algorithm>

#include "lukprob/errors.hpp"
#include "lukprob/modelcheck.hpp"
#include "lukprob/reductions.hpp"
#include "lukprob/tableau.hpp"

namespace lukprob {

std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Valid: return "VALID";
    case Verdict::Kind::NotValid: return "NOT_VALID";
    case Verdict::Kind::Unknown: return "UNKNOWN";
  }
  return "?";
}

namespace {

std::vector<std::string> query_props(const EntailmentQuery& q) {
  std::vector<Formula> all = q.premises;
  all.push_back(q.conclusion);
  return props_in_order(all);
}

CanonicalModel realise(const Tableau& t, const Branch& b, const BranchSystem& bs,
                       const std::vector<Rational>& sol, bool atoms_as_variables) {
  const auto props = query_props(t.query());
  if (atoms_as_variables) {
    ValueModel vm;
    vm.props = props;
    for (const auto& l : b.labels) vm.add_world(l.name);
    for (const auto& r : b.relations) vm.frame.add_edge(r.agent, r.from, r.to);
    for (const auto& [key, x] : bs.atom_vars) vm.values[key.first][key.second.term().name()] = sol[x];
    return lbox_bridge(vm);
  }
  CanonicalModel m;
  m.props = props;
  if (props.size() > 63) throw BasisTooLarge(props.size(), 63);
  for (const auto& l : b.labels) m.add_world(l.name);
  for (const auto& r : b.relations) m.frame.add_edge(r.agent, r.from, r.to);
  std::vector<bool> has_block(b.labels.size(), false);
  for (const auto& blk : bs.system.blocks()) {
    const std::size_t w = b.label_index(blk.label);
    has_block[w] = true;
    for (std::size_t c = 0; c < blk.weight_vars.size(); ++c) {
      const Rational& u = sol[blk.weight_vars[c]];
      if (u.sign() == 0) continue;
      const auto e = blk.assignment(c);
      AtomMask mask = 0;
      for (std::size_t i = 0; i < blk.basis.size(); ++i)
        if (e[i]) mask |= AtomMask{1} << *m.prop_index(blk.basis[i]);
      m.set_weight(w, mask, u);
    }
  }
  for (std::size_t w = 0; w < b.labels.size(); ++w)
    if (!has_block[w]) m.set_weight(w, 0, Rational(1));
  return m;
}

}  // namespace

Countermodel extract_countermodel(const Tableau& t, const Branch& b, const BranchSystem& bs,
                                  const std::vector<Rational>& sol, bool atoms_as_variables) {
  Countermodel cm;
  cm.model = realise(t, b, bs, sol, atoms_as_variables);
  if (const auto v = validate(cm.model); !v.empty())
    throw InternalInconsistency("realising model is not a probability model: " + to_string(v.front()));
  for (const auto& l : b.labels) cm.labels.emplace_back(l.name, l.name);
  for (VarId v = 0; v < bs.system.num_vars(); ++v) cm.solution.emplace_back(bs.system.name(v), sol[v]);

  // Every registry variable used on the branch has a value; unused ones are
  // unconstrained and default to 0.
  std::vector<Rational> reg_values(t.registry().size());
  for (VarId r = 0; r < reg_values.size(); ++r)
    if (bs.registry_map[r]) reg_values[r] = sol[*bs.registry_map[r]];

  Interpretation interp(cm.model);
  for (const auto& c : b.formulaic) {
    const Rational value = interp.value(c.label, c.formula);
    const Rational bound = c.bound.eval(reg_values);
    const bool ok = c.dir == Dir::Le ? value <= bound : value >= bound;
    if (!ok)
      throw InternalInconsistency("countermodel does not realise " + b.labels[c.label].name + ": " +
                                  print(c.formula) + (c.dir == Dir::Le ? " <= " : " >= ") + bound.str() +
                                  " (value " + value.str() + ")");
  }
  for (const auto& p : t.query().premises)
    if (interp.value(0, p) != Rational(1))
      throw InternalInconsistency("countermodel gives premise " + print(p) + " a value below 1");
  cm.conclusion_value = interp.value(0, t.query().conclusion);
  if (cm.conclusion_value >= Rational(1))
    throw InternalInconsistency("countermodel gives the conclusion value 1");
  return cm;
}

Verdict decide(const EntailmentQuery& q, const DecideOptions& opts) {
  std::vector<Formula> all = q.premises;
  all.push_back(q.conclusion);
  const FormulaStats stats = analyze(all);
  if (q.frame_mode == FrameMode::Any && !in_additive(stats.fragment))
    throw FragmentError("arbitrary-frame entailment needs the additive fragment (no * or ~>), got " +
                        to_string(stats.fragment));
  if (opts.atoms_as_variables && !in_box(stats.fragment))
    throw FragmentError("atoms can be treated as variables only when every Pr(.) wraps a variable");

  Tableau t(q, opts);
  Verdict verdict;
  verdict.kind = Verdict::Kind::Valid;
  t.saturate([&](Branch& b) {
    for (const auto& l : b.labels) verdict.max_label_depth = std::max(verdict.max_label_depth, l.depth);
    const BranchSystem bs = t.branch_system(b);
    Feasibility f;
    if (bs.system.linear()) {
      f = lp_feasible(bs.system);
    } else if (opts.backend == Backend::Interval) {
      f = poly_feasible(bs.system, opts.poly);
    } else {
      f.status = Feasibility::Status::Unknown;
      f.reason = "bilinear system without the interval backend";
    }
    if (opts.on_system) opts.on_system(bs.system, f);
    if (f.feasible()) {
      verdict.kind = Verdict::Kind::NotValid;
      verdict.countermodel = extract_countermodel(t, b, bs, f.witness, opts.atoms_as_variables);
      return false;
    }
    if (f.status == Feasibility::Status::Unknown) {
      ++verdict.unknown_branches;
      verdict.kind = Verdict::Kind::Unknown;
      verdict.reason = "nonlinear-incomplete: " + f.reason;
    }
    return true;
  });
  verdict.branches = t.branches_seen();
  if (verdict.kind == Verdict::Kind::NotValid) verdict.reason.clear();
  return verdict;
}

Verdict satisfiable(const std::vector<Formula>& gamma, const DecideOptions& opts) {
  EntailmentQuery q;
  q.premises = gamma;
  q.conclusion = Formula::bottom();
  return decide(q, opts);
}

}  // namespace lukprob
