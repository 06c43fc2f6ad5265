// Exact evaluation of formulas on finite models.
#pragma once

#include <functional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lukprob/model.hpp"
#include "lukprob/syntax.hpp"

namespace lukprob {

/// Memoized interpretation of formulas over one model. Values are computed
/// bottom-up for all worlds at once, so each subformula costs one pass over
/// the worlds and their successors.
class Interpretation {
 public:
  explicit Interpretation(const ProbModel& m);
  explicit Interpretation(const CanonicalModel& m);
  /// Atoms must wrap bare variables; throws FragmentError otherwise.
  explicit Interpretation(const ValueModel& m);
  explicit Interpretation(const AnyModel& m);

  /// Value of `f` at every world, indexed by WorldId.
  const std::vector<Rational>& values(const Formula& f);
  Rational value(WorldId w, const Formula& f);
  Rational value(std::string_view w, const Formula& f);

  const Frame& frame() const noexcept { return *frame_; }

 private:
  using AtomFn = std::function<std::vector<Rational>(const BooleanTerm&)>;
  Interpretation(const Frame& frame, AtomFn atoms);

  const Frame* frame_;
  AtomFn atoms_;
  std::unordered_map<Formula, std::vector<Rational>, FormulaHash> memo_;
};

Rational evaluate(const ProbModel& m, WorldId w, const Formula& f);
Rational evaluate(const ProbModel& m, std::string_view w, const Formula& f);
Rational evaluate(const CanonicalModel& m, WorldId w, const Formula& f);
Rational evaluate(const CanonicalModel& m, std::string_view w, const Formula& f);
Rational evaluate(const ValueModel& m, WorldId w, const Formula& f);
Rational evaluate(const AnyModel& m, std::string_view w, const Formula& f);

std::vector<Rational> evaluate_all(const ProbModel& m, const Formula& f);
std::vector<Rational> evaluate_all(const CanonicalModel& m, const Formula& f);
std::vector<Rational> evaluate_all(const AnyModel& m, const Formula& f);

}  // namespace lukprob
