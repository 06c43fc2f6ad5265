// Constraint tableaux for entailment over finitely branching frames: branch
// data, rule application, saturation, closure through the solver, and
// countermodel extraction.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lukprob/model.hpp"
#include "lukprob/solver.hpp"
#include "lukprob/syntax.hpp"

namespace lukprob {

enum class FrameMode { FB, Any };
/// Interval: bilinear systems go to poly_feasible. Lp: they stay UNKNOWN.
enum class Backend { Interval, Lp };

struct EntailmentQuery {
  std::vector<Formula> premises;
  Formula conclusion = Formula::bottom();
  FrameMode frame_mode = FrameMode::FB;
};

struct DecideOptions {
  /// Treat each Pr(p) as a free [0,1] variable without coherence blocks.
  /// Requires every atom to wrap a bare variable.
  bool atoms_as_variables = false;
  Backend backend = Backend::Interval;
  std::size_t basis_cap = 12;
  std::size_t max_branches = 100000;
  /// Wall-clock cap in seconds; 0 disables it.
  double time_limit = 0;
  /// Solve the linear part of a branch before each split.
  bool early_closure = true;
  PolyOptions poly;
  /// Called with every saturated branch system and its solver answer.
  std::function<void(const ConstraintSystem&, const Feasibility&)> on_system;
};

enum class Dir { Le, Ge };

struct Label {
  std::string name;
  std::size_t depth = 0;
  std::size_t pos = 1;
  std::size_t parent_pos = 0;
};

/// label : formula ∇ bound. Bounds use the tableau's variable registry.
struct FormulaicConstraint {
  std::size_t label;
  Formula formula;
  Dir dir;
  Poly bound;
};

struct NumericConstraint {
  Poly left;
  Rel rel;
  Poly right;
};

struct RelationalTerm {
  std::size_t from;
  std::string agent;
  std::size_t to;
};

struct Branch {
  std::vector<Label> labels;
  std::vector<FormulaicConstraint> formulaic;
  std::vector<bool> processed;
  std::vector<NumericConstraint> numeric;
  std::vector<RelationalTerm> relations;
  /// (□≥ constraint, relational term) pairs already propagated.
  std::set<std::pair<std::size_t, std::size_t>> propagated;
  bool closed = false;

  std::size_t label_index(const std::string& name) const;
};

/// Names of tableau variables (d and the auxiliaries j<k>), shared by all
/// branches of one tableau.
class VarRegistry {
 public:
  VarId fresh_aux();
  VarId add(const std::string& name);
  const std::string& name(VarId v) const { return names_.at(v); }
  std::size_t size() const noexcept { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::size_t next_aux_ = 1;
};

/// A branch's system together with the variable maps used to build it.
struct BranchSystem {
  ConstraintSystem system;
  /// Registry id → system id (absent when unused).
  std::vector<std::optional<VarId>> registry_map;
  /// (label, atom formula) → system id of its value variable.
  std::vector<std::pair<std::pair<std::size_t, Formula>, VarId>> atom_vars;

  Poly translate(const Poly& p) const;
};

class Tableau {
 public:
  Tableau(EntailmentQuery q, DecideOptions opts);

  const EntailmentQuery& query() const noexcept { return query_; }
  const VarRegistry& registry() const noexcept { return reg_; }
  VarId d() const noexcept { return d_; }

  Branch root();
  /// Applies one rule. Returns the child branches (one for a non-branching
  /// rule, two for a split) or nullopt when the branch is saturated.
  std::optional<std::vector<Branch>> step(Branch& b);
  /// Depth-first saturation; `visit` sees each saturated open branch and
  /// returns false to stop. Throws BudgetExceeded.
  void saturate(const std::function<bool(Branch&)>& visit);

  /// Rows for leaf constraints, numeric constraints and coherence blocks.
  /// With `linear_only`, bilinear rows are dropped (a relaxation).
  BranchSystem branch_system(const Branch& b, bool linear_only = false) const;

  std::size_t branches_seen() const noexcept { return branches_; }

 private:
  void add_formulaic(Branch& b, std::size_t label, Formula f, Dir dir, Poly bound);
  void add_numeric(Branch& b, Poly left, Rel rel, Poly right);
  std::size_t add_label(Branch& b, std::size_t parent);
  bool early_closed(const Branch& b) const;

  EntailmentQuery query_;
  DecideOptions opts_;
  VarRegistry reg_;
  VarId d_ = 0;
  std::size_t branches_ = 0;
};

struct Countermodel {
  CanonicalModel model;
  std::string root = "w0";
  /// Tableau label → world name.
  std::vector<std::pair<std::string, std::string>> labels;
  /// System variable → value.
  std::vector<std::pair<std::string, Rational>> solution;
  Rational conclusion_value;
};

struct Verdict {
  enum class Kind { Valid, NotValid, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<Countermodel> countermodel;
  std::string reason;
  std::size_t branches = 0;
  std::size_t unknown_branches = 0;
  std::size_t max_label_depth = 0;
};

std::string to_string(Verdict::Kind k);

/// Builds the realising model of a feasible branch and re-checks every
/// constraint on it. Throws InternalInconsistency if any check fails.
Countermodel extract_countermodel(const Tableau& t, const Branch& b, const BranchSystem& bs,
                                  const std::vector<Rational>& solution, bool atoms_as_variables);

/// Γ ⊨ χ over finitely branching frames (or arbitrary frames for the
/// additive fragment). Throws FragmentError, BasisTooLarge, BudgetExceeded.
Verdict decide(const EntailmentQuery& q, const DecideOptions& opts = {});

/// decide(Γ ⊨ ⊥): NOT_VALID exactly when Γ is satisfiable, and the
/// countermodel then gives every member of Γ value 1 at its root.
Verdict satisfiable(const std::vector<Formula>& gamma, const DecideOptions& opts = {});

}  // namespace lukprob
