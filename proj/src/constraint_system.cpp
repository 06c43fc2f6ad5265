#include "lukprob/solver.hpp"

namespace lukprob {

VarId ConstraintSystem::add_var(const std::string& name) {
  if (const auto it = index_.find(name); it != index_.end()) return it->second;
  const VarId id = names_.size();
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

std::optional<VarId> ConstraintSystem::find(const std::string& name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool ConstraintSystem::linear() const {
  for (const auto& r : rows_)
    if (!r.left.is_linear() || !r.right.is_linear()) return false;
  return true;
}

std::vector<Row> ConstraintSystem::all_rows() const {
  std::vector<Row> out = rows_;
  for (const auto& b : blocks_) {
    Poly total;
    for (const VarId u : b.weight_vars) total += Poly::var(u);
    out.push_back({total, Rel::Eq, Rational(1)});
    for (std::size_t i = 0; i < b.atoms.size(); ++i) {
      Poly sum;
      for (std::size_t c = 0; c < b.weight_vars.size(); ++c)
        if (b.incidence[i][c]) sum += Poly::var(b.weight_vars[c]);
      out.push_back({sum, Rel::Eq, Poly::var(b.value_vars[i])});
    }
  }
  return out;
}

bool ConstraintSystem::satisfied_by(const std::vector<Rational>& x, std::vector<std::string>* why) const {
  bool ok = x.size() == names_.size();
  if (!ok) {
    if (why) why->push_back("witness has " + std::to_string(x.size()) + " values for " +
                            std::to_string(names_.size()) + " variables");
    return false;
  }
  for (VarId v = 0; v < x.size(); ++v) {
    if (x[v] < Rational(0) || x[v] > Rational(1)) {
      ok = false;
      if (why) why->push_back(names_[v] + " = " + x[v].str() + " outside [0,1]");
    }
  }
  const auto rows = all_rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].holds(x)) {
      ok = false;
      if (why) why->push_back("row " + std::to_string(i) + " violated");
    }
  }
  return ok;
}

}  // namespace lukprob
