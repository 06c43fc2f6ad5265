#include <algorithm>
#include <unordered_map>

#include "lukprob/errors.hpp"
#include "lukprob/syntax.hpp"

namespace lukprob {

using K = Formula::Kind;

Formula expand_derived(const Formula& f) {
  switch (f.kind()) {
    case K::ProbAtom:
    case K::Half:
    case K::Constant:
    case K::Top:
    case K::Bottom: return f;
    case K::Neg: return Formula::neg(expand_derived(f.arg()));
    case K::Box: return Formula::box(f.agent(), expand_derived(f.arg()));
    case K::Impl: return Formula::impl(expand_derived(f.left()), expand_derived(f.right()));
    case K::Prod: return Formula::prod(expand_derived(f.left()), expand_derived(f.right()));
    case K::ProdImpl:
      return Formula::prod_impl(expand_derived(f.left()), expand_derived(f.right()));
    case K::Delta:
      return Formula::prod_impl(Formula::neg(expand_derived(f.arg())), Formula::bottom());
    case K::Diamond:
      return Formula::neg(Formula::box(f.agent(), Formula::neg(expand_derived(f.arg()))));
    default: break;
  }
  const Formula a = expand_derived(f.left());
  const Formula b = expand_derived(f.right());
  const auto oplus = [](const Formula& x, const Formula& y) {
    return Formula::impl(Formula::neg(x), y);
  };
  const auto odot = [&](const Formula& x, const Formula& y) {
    return Formula::neg(oplus(Formula::neg(x), Formula::neg(y)));
  };
  const auto vee = [](const Formula& x, const Formula& y) {
    return Formula::impl(Formula::impl(x, y), y);
  };
  switch (f.kind()) {
    case K::OPlus: return oplus(a, b);
    case K::ODot: return odot(a, b);
    case K::Max: return vee(a, b);
    case K::Min: return Formula::neg(vee(Formula::neg(a), Formula::neg(b)));
    case K::Equiv: return odot(Formula::impl(a, b), Formula::impl(b, a));
    default: break;
  }
  return f;
}

bool is_primitive(const Formula& f) {
  if (!f.is_primitive_node()) return false;
  if (f.is_unary()) return is_primitive(f.arg());
  if (f.is_binary()) return is_primitive(f.left()) && is_primitive(f.right());
  return true;
}

std::string to_string(Fragment fr) {
  switch (fr) {
    case Fragment::Full: return "FULL";
    case Fragment::Add: return "L_ADD";
    case Fragment::Box: return "L_BOX";
    case Fragment::AddBox: return "L_ADD∩L_BOX";
  }
  return "?";
}

bool in_additive(Fragment fr) { return fr == Fragment::Add || fr == Fragment::AddBox; }
bool in_box(Fragment fr) { return fr == Fragment::Box || fr == Fragment::AddBox; }

namespace {

void walk(const Formula& f, std::size_t depth, FormulaStats& s, bool& additive, bool& boxed) {
  s.modal_depth = std::max(s.modal_depth, depth);
  ++s.length;
  switch (f.kind()) {
    case K::ProbAtom:
      f.term().collect_vars(s.variables);
      s.length += f.term().length();
      if (f.term().kind() != BooleanTerm::Kind::Var) boxed = false;
      return;
    case K::Prod:
    case K::ProdImpl:
    case K::Delta: additive = false; break;
    case K::Box:
    case K::Diamond:
      s.agents.insert(f.agent());
      walk(f.arg(), depth + 1, s, additive, boxed);
      return;
    default: break;
  }
  if (f.is_unary()) walk(f.arg(), depth, s, additive, boxed);
  if (f.is_binary()) {
    walk(f.left(), depth, s, additive, boxed);
    walk(f.right(), depth, s, additive, boxed);
  }
}

}  // namespace

FormulaStats analyze(std::span<const Formula> gamma) {
  FormulaStats s;
  bool additive = true;
  bool boxed = true;
  for (const auto& f : gamma) walk(f, 0, s, additive, boxed);
  if (additive && boxed) s.fragment = Fragment::AddBox;
  else if (additive) s.fragment = Fragment::Add;
  else if (boxed) s.fragment = Fragment::Box;
  else s.fragment = Fragment::Full;
  return s;
}

FormulaStats analyze(const Formula& f) { return analyze(std::span<const Formula>(&f, 1)); }

std::size_t modal_depth(const Formula& f) { return analyze(f).modal_depth; }
std::size_t length(const Formula& f) { return analyze(f).length; }

std::vector<std::string> props_in_order(std::span<const Formula> formulas) {
  std::vector<std::string> out;
  for (const auto& f : formulas)
    for (const auto& a : prob_atoms(f)) a.collect_vars_ordered(out);
  return out;
}

namespace {

void atoms_rec(const Formula& f, std::vector<BooleanTerm>& out) {
  if (f.kind() == K::ProbAtom) {
    if (std::find(out.begin(), out.end(), f.term()) == out.end()) out.push_back(f.term());
    return;
  }
  if (f.is_unary()) atoms_rec(f.arg(), out);
  if (f.is_binary()) {
    atoms_rec(f.left(), out);
    atoms_rec(f.right(), out);
  }
}

}  // namespace

std::vector<BooleanTerm> prob_atoms(const Formula& f) {
  std::vector<BooleanTerm> out;
  atoms_rec(f, out);
  return out;
}

// ── macros ──

bool is_macro_name(std::string_view name) {
  return name == "Cert" || name == "NoDec" || name == "NoInc" || name == "L" ||
         name == "CondPr" || name == "Path";
}

std::string state_prop(long state) { return "a" + std::to_string(state); }

namespace {

template <typename T>
const T& arg_as(std::string_view macro, const std::vector<MacroArg>& args, std::size_t i,
                const char* what) {
  if (const T* v = std::get_if<T>(&args[i])) return *v;
  throw ArityError(std::string(macro) + ": argument " + std::to_string(i + 1) + " must be " + what);
}

void need(std::string_view macro, const std::vector<MacroArg>& args, std::size_t n) {
  if (args.size() != n)
    throw ArityError(std::string(macro) + " takes " + std::to_string(n) + " arguments, got " +
                     std::to_string(args.size()));
}

}  // namespace

Formula macro_expand(std::string_view name, const std::vector<MacroArg>& args) {
  if (name == "Cert" || name == "NoDec" || name == "NoInc") {
    need(name, args, 2);
    const auto& agent = arg_as<std::string>(name, args, 0, "an agent");
    const Formula p = Formula::pr(arg_as<BooleanTerm>(name, args, 1, "a Boolean term"));
    if (name == "Cert") return Formula::equiv(Formula::box(agent, p), Formula::diamond(agent, p));
    if (name == "NoDec") return Formula::impl(p, Formula::box(agent, p));
    return Formula::impl(Formula::diamond(agent, p), p);
  }
  if (name == "L") {
    need(name, args, 2);
    const auto& q = arg_as<Rational>(name, args, 0, "a rational threshold");
    const Formula p = Formula::pr(arg_as<BooleanTerm>(name, args, 1, "a Boolean term"));
    const Formula c = q == Rational(1, 2) ? Formula::half() : Formula::constant(q);
    return Formula::delta(Formula::impl(c, p));
  }
  if (name == "CondPr") {
    need(name, args, 2);
    const auto& a = arg_as<BooleanTerm>(name, args, 0, "a Boolean term");
    const auto& b = arg_as<BooleanTerm>(name, args, 1, "a Boolean term");
    return Formula::prod_impl(Formula::pr(b), Formula::pr(BooleanTerm::meet(a, b)));
  }
  if (name == "Path") {
    if (args.empty()) throw ArityError("Path needs at least one state");
    std::vector<long> states;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const long s = arg_as<long>(name, args, i, "a state index");
      if (s < 1) throw ArityError("Path: state indices start at 1");
      states.push_back(s);
    }
    Formula f = Formula::pr(BooleanTerm::var(state_prop(states.back())));
    for (std::size_t j = states.size() - 1; j-- > 0;) {
      f = Formula::prod(Formula::pr(BooleanTerm::var(state_prop(states[j]))),
                        Formula::diamond(std::to_string(states[j]), f));
    }
    return f;
  }
  throw UnknownMacro("unknown macro '" + std::string(name) + "'");
}

}  // namespace lukprob
