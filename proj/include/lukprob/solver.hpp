// Feasibility of constraint systems over [0,1]: exact simplex for linear
// systems, probability-coherence blocks, a branch-and-prune backend for
// bilinear systems, and SMT-LIB export.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lukprob/rational.hpp"
#include "lukprob/syntax.hpp"

namespace lukprob {

using VarId = std::size_t;

/// Polynomial with rational coefficients. Monomials are sorted variable lists;
/// the empty monomial is the constant term.
class Poly {
 public:
  using Monomial = std::vector<VarId>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  static Poly var(VarId v);

  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  Rational constant() const;
  Rational coefficient(const Monomial& m) const;
  std::size_t degree() const;
  bool is_linear() const { return degree() <= 1; }
  bool is_constant() const { return degree() == 0; }
  std::vector<VarId> variables() const;

  Rational eval(const std::vector<Rational>& x) const;
  /// Replaces each fixed variable by its value.
  Poly substitute(const std::vector<std::optional<Rational>>& fixed) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

enum class Rel { Le, Lt, Eq };

std::string to_string(Rel r);

/// left ◁ right.
struct Row {
  Poly left;
  Rel rel = Rel::Le;
  Poly right;

  /// left − right, compared against 0.
  Poly normal() const { return left - right; }
  bool holds(const std::vector<Rational>& x) const;
};

/// Incidence a[i][c] = 1 iff column c (a classical assignment to `basis`)
/// satisfies atoms[i]. Columns run from all-true to all-false: column c is
/// the word e = 2^m−1−c and basis prop i is bit m−1−i of e.
struct CoherenceBlock {
  std::string label;
  std::vector<BooleanTerm> atoms;
  std::vector<VarId> value_vars;
  std::vector<std::string> basis;
  std::vector<VarId> weight_vars;
  std::vector<std::vector<bool>> incidence;

  /// The classical assignment of column c: bit i is basis[i]'s truth value.
  std::vector<bool> assignment(std::size_t column) const;
  /// e-word of column c as a bit string ("10" for p true, q false).
  std::string word(std::size_t column) const;
};

class ConstraintSystem {
 public:
  /// Declares a [0,1] variable; returns the existing id when the name is known.
  VarId add_var(const std::string& name);
  std::optional<VarId> find(const std::string& name) const;
  const std::string& name(VarId v) const { return names_.at(v); }
  std::size_t num_vars() const noexcept { return names_.size(); }

  void add_row(Row r) { rows_.push_back(std::move(r)); }
  void add_row(Poly left, Rel rel, Poly right) { rows_.push_back({std::move(left), rel, std::move(right)}); }
  const std::vector<Row>& rows() const noexcept { return rows_; }

  void add_block(CoherenceBlock b) { blocks_.push_back(std::move(b)); }
  const std::vector<CoherenceBlock>& blocks() const noexcept { return blocks_; }

  bool linear() const;
  /// Explicit rows followed by the rows of every coherence block.
  std::vector<Row> all_rows() const;
  /// Exact check of bounds and all rows. Describes failures when `why` is set.
  bool satisfied_by(const std::vector<Rational>& x, std::vector<std::string>* why = nullptr) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VarId> index_;
  std::vector<Row> rows_;
  std::vector<CoherenceBlock> blocks_;
};

/// Appends a coherence block for `atoms` (with value variables `value_vars`)
/// at `label`, creating weight variables u__<label>__<word>. Throws
/// BasisTooLarge when the atoms mention more than `cap` props.
const CoherenceBlock& build_coherence(ConstraintSystem& sys, const std::string& label,
                                      const std::vector<BooleanTerm>& atoms,
                                      const std::vector<VarId>& value_vars, std::size_t cap = 12);

/// Moves a block's weights to a basic solution with the same marginals, so at
/// most (atoms + 1) weights are nonzero. `x` is updated in place.
void reduce_support(const CoherenceBlock& b, std::vector<Rational>& x);

struct Feasibility {
  enum class Status { Feasible, Infeasible, Unknown };
  Status status = Status::Unknown;
  std::vector<Rational> witness;  // indexed by VarId when feasible
  std::string reason;             // when unknown

  bool feasible() const { return status == Status::Feasible; }
  bool infeasible() const { return status == Status::Infeasible; }
};

std::string to_string(Feasibility::Status s);

// ── linear programming ──

/// A linear program in inequality form over variables ≥ 0 (no implicit upper
/// bounds): rows Σ a_k x_k ◁ b. Strict rows are satisfied by maximizing a
/// shared slack ε ≤ 1.
struct LinearProgram {
  struct Constraint {
    std::vector<std::pair<std::size_t, Rational>> coeffs;
    Rel rel = Rel::Le;
    Rational rhs;
  };
  std::size_t num_vars = 0;
  std::vector<Constraint> rows;
};

struct LpResult {
  bool feasible = false;
  std::vector<Rational> x;
  Rational slack;  // optimum ε when strict rows exist
};

/// Exact two-phase simplex. Largest-coefficient pricing, falling back to
/// Bland's rule after a run of degenerate pivots.
LpResult solve_lp(const LinearProgram& lp);

/// Exact feasibility of a linear system. Throws std::invalid_argument on
/// bilinear rows. Witnesses are re-checked and support-reduced per block.
Feasibility lp_feasible(const ConstraintSystem& sys);

// ── bilinear systems ──

struct PolyOptions {
  /// Boxes narrower than 2^-precision are not split further.
  unsigned precision = 20;
  std::size_t max_nodes = 4000;
};

/// Branch-and-prune over [0,1]^n with McCormick relaxations. INFEASIBLE and
/// FEASIBLE answers are exact; UNKNOWN when the budget or precision runs out.
Feasibility poly_feasible(const ConstraintSystem& sys, const PolyOptions& opts = {});

/// lp_feasible for linear systems, poly_feasible otherwise.
Feasibility solve(const ConstraintSystem& sys, const PolyOptions& opts = {});

/// QF_NRA problem text: declarations in creation order, [0,1] bounds, one
/// assertion per row, coherence rows inlined.
std::string export_smtlib(const ConstraintSystem& sys);

}  // namespace lukprob
