#include <stdexcept>

#include "lukprob/errors.hpp"
#include "lukprob/solver.hpp"

namespace lukprob {

Feasibility lp_feasible(const ConstraintSystem& sys) {
  if (!sys.linear()) throw std::invalid_argument("lp_feasible: system has bilinear rows");
  LinearProgram lp;
  lp.num_vars = sys.num_vars();
  std::vector<bool> weight(sys.num_vars(), false);
  for (const auto& b : sys.blocks())
    for (const VarId u : b.weight_vars) weight[u] = true;
  for (VarId v = 0; v < sys.num_vars(); ++v)
    if (!weight[v]) lp.rows.push_back({{{v, Rational(1)}}, Rel::Le, Rational(1)});
  for (const auto& row : sys.all_rows()) {
    LinearProgram::Constraint c;
    c.rel = row.rel;
    const Poly normal = row.normal();
    for (const auto& [m, k] : normal.terms()) {
      if (m.empty()) c.rhs = -k;
      else c.coeffs.emplace_back(m[0], k);
    }
    lp.rows.push_back(std::move(c));
  }
  const LpResult r = solve_lp(lp);
  Feasibility out;
  if (!r.feasible) {
    out.status = Feasibility::Status::Infeasible;
    return out;
  }
  out.status = Feasibility::Status::Feasible;
  out.witness = r.x;
  for (const auto& b : sys.blocks()) reduce_support(b, out.witness);
  std::vector<std::string> why;
  if (!sys.satisfied_by(out.witness, &why))
    throw InternalInconsistency("simplex witness fails exact re-check: " + why.front());
  return out;
}

}  // namespace lukprob
