// Translations between models and formula sets: canonical models, the bridge
// from value assignments to measures, constant elimination, the Δ-embedding
// of classical modal logic, and Markov-chain frames.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lukprob/model.hpp"
#include "lukprob/syntax.hpp"

namespace lukprob {

// ── canonical models ──

/// Atom weight of Y ⊆ scope at w is μ_w of the literal meet selecting Y.
/// Throws UnknownProp when a scope prop is not declared in the source.
CanonicalModel canonicalize(const ProbModel& m, const std::vector<std::string>& scope);
/// Marginalizes a canonical model onto `scope`. Throws UndefinedMeasure when
/// a scope prop is not among the model's props.
CanonicalModel canonicalize(const CanonicalModel& m, const std::vector<std::string>& scope);

/// Product measure with independent marginals: Pr(p) at w equals v(p, w).
CanonicalModel lbox_bridge(const ValueModel& v);

// ── constant elimination ──

struct ConstantEliminationResult {
  std::vector<Formula> translated;
  /// q, then q_m for every numerator m that occurs (in order of m).
  std::string q;
  std::vector<std::pair<long, std::string>> numerators;
  long denominator = 1;
  std::size_t length_before = 0;
  std::size_t length_after = 0;
  std::vector<std::string> warnings;
  bool changed = false;
};

/// Replaces every rational constant m/n (and ½) by Pr(q_m) and adds the
/// defining side formulas under all □-prefixes up to the modal depth.
ConstantEliminationResult eliminate_constants(const std::vector<Formula>& gamma);

// ── classical modal formulas ──

class ClassicalFormula {
 public:
  enum class Kind { Var, Bottom, Not, Impl, Box };

  static ClassicalFormula var(std::string name);
  static ClassicalFormula bottom();
  static ClassicalFormula negation(ClassicalFormula f);
  static ClassicalFormula implies(ClassicalFormula a, ClassicalFormula b);
  static ClassicalFormula box(std::string agent, ClassicalFormula f);
  /// Sugar: a ∧ b = ¬(a → ¬b), a ∨ b = ¬a → b, ◊φ = ¬□¬φ.
  static ClassicalFormula conj(ClassicalFormula a, ClassicalFormula b);
  static ClassicalFormula disj(ClassicalFormula a, ClassicalFormula b);
  static ClassicalFormula diamond(std::string agent, ClassicalFormula f);

  Kind kind() const;
  const std::string& name() const;  // Var, and agent for Box
  const ClassicalFormula& arg() const;
  const ClassicalFormula& left() const;
  const ClassicalFormula& right() const;

  friend bool operator==(const ClassicalFormula& a, const ClassicalFormula& b);
  friend bool operator<(const ClassicalFormula& a, const ClassicalFormula& b);

 private:
  struct Node;
  explicit ClassicalFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Grammar: identifiers, F, `!`, `->` (right-assoc), `&`, `|`, `[a]`, `<a>`,
/// parentheses. Binding: prefix > & > | > ->.
ClassicalFormula parse_classical(std::string_view text);
std::string print(const ClassicalFormula& f);
std::size_t modal_depth(const ClassicalFormula& f);
std::vector<std::string> variables(const ClassicalFormula& f);

/// Finite Kripke model for classical modal formulas.
struct KModel {
  std::vector<std::string> worlds;
  std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> relations;
  std::vector<std::set<std::string>> valuation;
};

bool holds(const KModel& m, std::size_t w, const ClassicalFormula& f);

/// Replaces every variable p by ΔPr(p).
Formula delta_embed(const ClassicalFormula& f);

/// Reads a classical model off a model of the embedded formula: p holds at
/// w iff ΔPr(p) has value 1 there. Throws InternalInconsistency if some
/// ΔPr(p) value is not 0 or 1.
KModel project_delta(const CanonicalModel& m, const std::vector<std::string>& vars);

// ── Markov chains ──

struct MarkovChain {
  std::size_t states = 0;
  std::vector<Rational> start;                    // q(i), i = 1..n at index i−1
  std::vector<std::vector<Rational>> transition;  // p(i, j)
};

/// Throws ValidationError listing every violated invariant.
void validate(const MarkovChain& c);
/// JSON: {"states": n, "start": [...], "transition": [[...], ...]}.
MarkovChain load_chain(std::string_view json_text);
MarkovChain load_chain_file(const std::string& path);

/// Worlds "0".."n"; agent k relates every world to k; μ_i({j}) = p(i, j),
/// μ_0({i}) = q(i); props a1..an with E(a_i) = {i}.
ProbModel markov_to_frame(const MarkovChain& c);

/// q(i0)·Π p(i_{j−1}, i_j). Throws UnknownState.
Rational path_probability(const MarkovChain& c, const std::vector<long>& path);

/// The Path formula and its value at world 0 of markov_to_frame(c).
std::pair<Formula, Rational> path_value(const MarkovChain& c, const std::vector<long>& path);

}  // namespace lukprob
