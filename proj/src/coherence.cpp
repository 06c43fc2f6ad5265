#include <algorithm>

#include "lukprob/errors.hpp"
#include "lukprob/solver.hpp"

namespace lukprob {

std::vector<bool> CoherenceBlock::assignment(std::size_t column) const {
  const std::size_t m = basis.size();
  const std::size_t e = ((std::size_t{1} << m) - 1) - column;
  std::vector<bool> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = ((e >> (m - 1 - i)) & 1U) != 0;
  return out;
}

std::string CoherenceBlock::word(std::size_t column) const {
  std::string s;
  for (const bool b : assignment(column)) s += b ? '1' : '0';
  return s;
}

const CoherenceBlock& build_coherence(ConstraintSystem& sys, const std::string& label,
                                      const std::vector<BooleanTerm>& atoms,
                                      const std::vector<VarId>& value_vars, std::size_t cap) {
  CoherenceBlock b;
  b.label = label;
  b.atoms = atoms;
  b.value_vars = value_vars;
  for (const auto& a : atoms) a.collect_vars_ordered(b.basis);
  const std::size_t m = b.basis.size();
  if (m > cap) throw BasisTooLarge(m, cap);
  const std::size_t columns = std::size_t{1} << m;
  for (std::size_t c = 0; c < columns; ++c) b.weight_vars.push_back(sys.add_var("u__" + label + "__" + b.word(c)));
  b.incidence.assign(atoms.size(), std::vector<bool>(columns));
  for (std::size_t c = 0; c < columns; ++c) {
    const auto e = b.assignment(c);
    const auto truth = [&](const std::string& p) {
      return e[std::find(b.basis.begin(), b.basis.end(), p) - b.basis.begin()];
    };
    for (std::size_t i = 0; i < atoms.size(); ++i) b.incidence[i][c] = atoms[i].holds(truth);
  }
  sys.add_block(std::move(b));
  return sys.blocks().back();
}

namespace {

// A nonzero vector z with M z = 0 over the given columns, or empty when the
// columns are independent.
std::vector<Rational> null_vector(std::vector<std::vector<Rational>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].sign() == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = Rational(1) / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].sign() == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_col.push_back(c);
    is_pivot[c] = true;
    ++r;
  }
  std::size_t free = cols;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) {
      free = c;
      break;
    }
  }
  if (free == cols) return {};
  std::vector<Rational> z(cols);
  z[free] = Rational(1);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) z[pivot_col[i]] = -m[i][free];
  return z;
}

}  // namespace

void reduce_support(const CoherenceBlock& b, std::vector<Rational>& x) {
  for (;;) {
    std::vector<std::size_t> support;
    for (std::size_t c = 0; c < b.weight_vars.size(); ++c)
      if (x[b.weight_vars[c]].sign() != 0) support.push_back(c);
    if (support.size() <= 1) return;
    std::vector<std::vector<Rational>> m(b.atoms.size() + 1, std::vector<Rational>(support.size()));
    for (std::size_t k = 0; k < support.size(); ++k) {
      m[0][k] = Rational(1);
      for (std::size_t i = 0; i < b.atoms.size(); ++i)
        if (b.incidence[i][support[k]]) m[i + 1][k] = Rational(1);
    }
    const auto z = null_vector(std::move(m));
    if (z.empty()) return;
    // Σ z = 0 and z ≠ 0, so some entry is positive.
    std::optional<Rational> step;
    for (std::size_t k = 0; k < support.size(); ++k) {
      if (z[k].sign() <= 0) continue;
      const Rational t = x[b.weight_vars[support[k]]] / z[k];
      if (!step || t < *step) step = t;
    }
    for (std::size_t k = 0; k < support.size(); ++k) x[b.weight_vars[support[k]]] -= *step * z[k];
  }
}

}  // namespace lukprob
