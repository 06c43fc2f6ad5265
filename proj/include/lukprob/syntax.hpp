// Formulas of the modal probabilistic language: Boolean event terms, the
// formula AST with its derived connectives, parsing, printing and analysis.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lukprob/rational.hpp"

namespace lukprob {

// ── Boolean event terms ─────────────────────────────────────────────────────

class BooleanTerm {
 public:
  enum class Kind : std::uint8_t { Var, Complement, Meet, Join };

  static BooleanTerm var(std::string name);
  static BooleanTerm complement(BooleanTerm arg);
  static BooleanTerm meet(BooleanTerm left, BooleanTerm right);
  /// Sugar for ~(~left /\ ~right); removed by desugar().
  static BooleanTerm join(BooleanTerm left, BooleanTerm right);

  Kind kind() const noexcept;
  const std::string& name() const;  // Var only
  const BooleanTerm& arg() const;   // Complement only
  const BooleanTerm& left() const;  // Meet/Join
  const BooleanTerm& right() const;
  std::size_t hash() const noexcept;

  BooleanTerm desugar() const;
  void collect_vars(std::set<std::string>& out) const;
  /// Variables in order of first occurrence (left to right).
  void collect_vars_ordered(std::vector<std::string>& out) const;
  std::size_t length() const;

  /// Classical evaluation; `truth(name)` gives each variable's value.
  template <typename Lookup>
  bool holds(const Lookup& truth) const {
    switch (kind()) {
      case Kind::Var: return truth(name());
      case Kind::Complement: return !arg().holds(truth);
      case Kind::Meet: return left().holds(truth) && right().holds(truth);
      case Kind::Join: return left().holds(truth) || right().holds(truth);
    }
    return false;
  }

  friend bool operator==(const BooleanTerm& a, const BooleanTerm& b);

 private:
  struct Node;
  explicit BooleanTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// ── Formulas ────────────────────────────────────────────────────────────────

namespace detail {
struct FormulaFactory;
}

class Formula {
 public:
  enum class Kind : std::uint8_t {
    // primitives
    ProbAtom,
    Half,
    Constant,
    Top,
    Bottom,
    Neg,
    Impl,      // Łukasiewicz implication
    Prod,      // product conjunction
    ProdImpl,  // product (Goguen) implication
    Box,
    // derived
    Delta,
    Diamond,
    OPlus,  // strong disjunction
    ODot,   // strong conjunction
    Max,    // weak disjunction
    Min,    // weak conjunction
    Equiv,
  };

  static Formula pr(BooleanTerm term);
  static Formula half();
  /// Rational constant in [0,1]; throws RangeError otherwise.
  static Formula constant(Rational value);
  static Formula top();
  static Formula bottom();
  static Formula neg(Formula f);
  static Formula impl(Formula a, Formula b);
  static Formula prod(Formula a, Formula b);
  static Formula prod_impl(Formula a, Formula b);
  static Formula box(std::string agent, Formula f);
  static Formula delta(Formula f);
  static Formula diamond(std::string agent, Formula f);
  static Formula oplus(Formula a, Formula b);
  static Formula odot(Formula a, Formula b);
  static Formula max(Formula a, Formula b);
  static Formula min(Formula a, Formula b);
  static Formula equiv(Formula a, Formula b);

  Kind kind() const noexcept;
  const BooleanTerm& term() const;     // ProbAtom
  const Rational& value() const;       // Constant
  const std::string& agent() const;    // Box, Diamond
  const Formula& arg() const;          // unary nodes
  const Formula& left() const;         // binary nodes
  const Formula& right() const;
  std::size_t hash() const noexcept;

  bool is_unary() const noexcept;
  bool is_binary() const noexcept;
  bool is_primitive_node() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  friend struct detail::FormulaFactory;
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};
struct TermHash {
  std::size_t operator()(const BooleanTerm& t) const noexcept { return t.hash(); }
};

// ── Parsing and printing ────────────────────────────────────────────────────

Formula parse_formula(std::string_view text);
BooleanTerm parse_term(std::string_view text);

std::string print(const Formula& f);
std::string print(const BooleanTerm& t);

/// Stable 48-bit FNV-1a digest of the printed formula, as 12 hex digits.
std::string stable_hash(const Formula& f);

// ── Derived connectives and analysis ────────────────────────────────────────

/// Rewrites every derived node into primitives (table of definitions:
/// Δφ = ¬φ →Π ⊥, ◊φ = ¬□¬φ, φ⊕χ = ¬φ→χ, φ⊙χ = ¬(¬φ⊕¬χ),
/// φ∨χ = (φ→χ)→χ, φ∧χ = ¬(¬φ∨¬χ), φ↔χ = (φ→χ)⊙(χ→φ)).
Formula expand_derived(const Formula& f);
bool is_primitive(const Formula& f);

enum class Fragment : std::uint8_t { Full, Add, Box, AddBox };
std::string to_string(Fragment fr);
bool in_additive(Fragment fr);  // Add or AddBox
bool in_box(Fragment fr);       // Box or AddBox

struct FormulaStats {
  std::size_t modal_depth = 0;
  std::size_t length = 0;
  std::set<std::string> variables;
  std::set<std::string> agents;
  Fragment fragment = Fragment::AddBox;
};

FormulaStats analyze(const Formula& f);
FormulaStats analyze(std::span<const Formula> gamma);

std::size_t modal_depth(const Formula& f);
/// Symbol occurrences: one per connective, constant, Pr and Boolean node.
std::size_t length(const Formula& f);

/// Props in order of first occurrence across `formulas`.
std::vector<std::string> props_in_order(std::span<const Formula> formulas);
/// Distinct probabilistic atoms in order of first occurrence.
std::vector<BooleanTerm> prob_atoms(const Formula& f);

// ── Macro library ───────────────────────────────────────────────────────────

using MacroArg = std::variant<std::string, BooleanTerm, Rational, long>;

/// Cert(a, α), NoDec(a, α), NoInc(a, α), L(q, α), CondPr(α, β), Path(i0,…,im).
/// Path uses props a<i> for the state events and diamonds indexed by the
/// source state of each step.
Formula macro_expand(std::string_view name, const std::vector<MacroArg>& args);
bool is_macro_name(std::string_view name);
/// The event prop for Markov state i used by Path.
std::string state_prop(long state);

}  // namespace lukprob
