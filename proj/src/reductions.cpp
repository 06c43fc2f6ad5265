#include "lukprob/reductions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "lukprob/errors.hpp"
#include "lukprob/modelcheck.hpp"

namespace lukprob {

using K = Formula::Kind;

// ── canonical models ──

namespace {

template <typename Source>
CanonicalModel copy_frame(const Source& m, const std::vector<std::string>& scope) {
  if (scope.size() > 63) throw BasisTooLarge(scope.size(), 63);
  CanonicalModel c;
  c.props = scope;
  for (const auto& w : m.frame.names()) c.add_world(w);
  for (const auto& agent : m.frame.agents())
    for (const auto& [a, b] : m.frame.pairs(agent)) c.frame.add_edge(agent, a, b);
  return c;
}

void accumulate(CanonicalModel& c, WorldId w, AtomMask mask, const Rational& x) {
  for (auto& [a, y] : c.atom_weights[w]) {
    if (a == mask) {
      y += x;
      return;
    }
  }
  c.atom_weights[w].emplace_back(mask, x);
}

void sort_weights(CanonicalModel& c) {
  for (auto& row : c.atom_weights)
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
}

}  // namespace

CanonicalModel canonicalize(const ProbModel& m, const std::vector<std::string>& scope) {
  CanonicalModel c = copy_frame(m, scope);
  std::vector<const WorldSet*> ext;
  for (const auto& p : scope) {
    const auto it = m.valuation.find(p);
    if (it == m.valuation.end()) throw UnknownProp("unknown prop '" + p + "'");
    ext.push_back(&it->second);
  }
  // Each source atom u falls into exactly one literal meet over the scope.
  for (WorldId w = 0; w < m.frame.size(); ++w) {
    for (const auto& [u, x] : m.weights[w]) {
      if (x.sign() == 0) continue;
      AtomMask mask = 0;
      for (std::size_t i = 0; i < scope.size(); ++i)
        if (u < ext[i]->size() && (*ext[i])[u]) mask |= AtomMask{1} << i;
      accumulate(c, w, mask, x);
    }
  }
  sort_weights(c);
  return c;
}

CanonicalModel canonicalize(const CanonicalModel& m, const std::vector<std::string>& scope) {
  CanonicalModel c = copy_frame(m, scope);
  std::vector<std::size_t> source;
  for (const auto& p : scope) {
    const auto idx = m.prop_index(p);
    if (!idx) throw UndefinedMeasure("prop '" + p + "' is not measurable in the source model");
    source.push_back(*idx);
  }
  for (WorldId w = 0; w < m.frame.size(); ++w) {
    for (const auto& [a, x] : m.atom_weights[w]) {
      if (x.sign() == 0) continue;
      AtomMask mask = 0;
      for (std::size_t i = 0; i < scope.size(); ++i)
        if ((a >> source[i]) & 1U) mask |= AtomMask{1} << i;
      accumulate(c, w, mask, x);
    }
  }
  sort_weights(c);
  return c;
}

CanonicalModel lbox_bridge(const ValueModel& v) {
  CanonicalModel c = copy_frame(v, v.props);
  const std::size_t m = v.props.size();
  if (m > 20) throw BasisTooLarge(m, 20);
  for (WorldId w = 0; w < v.frame.size(); ++w) {
    std::vector<Rational> p(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto it = v.values[w].find(v.props[i]);
      if (it != v.values[w].end()) p[i] = it->second;
    }
    // Enumerate only atoms of positive weight: props valued 0 or 1 are fixed.
    std::vector<std::size_t> free;
    AtomMask base = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (p[i] == Rational(1)) base |= AtomMask{1} << i;
      else if (p[i].sign() != 0) free.push_back(i);
    }
    for (AtomMask bits = 0; bits < (AtomMask{1} << free.size()); ++bits) {
      AtomMask mask = base;
      Rational x(1);
      for (std::size_t k = 0; k < free.size(); ++k) {
        const bool in = (bits >> k) & 1U;
        if (in) mask |= AtomMask{1} << free[k];
        x *= in ? p[free[k]] : Rational(1) - p[free[k]];
      }
      c.atom_weights[w].emplace_back(mask, x);
    }
  }
  sort_weights(c);
  return c;
}

// ── constant elimination ──

namespace {

void collect_constants(const Formula& f, std::vector<Rational>& out) {
  if (f.kind() == K::Constant) out.push_back(f.value());
  if (f.kind() == K::Half) out.push_back(Rational(1, 2));
  if (f.is_unary()) collect_constants(f.arg(), out);
  if (f.is_binary()) {
    collect_constants(f.left(), out);
    collect_constants(f.right(), out);
  }
}

Formula rebuild(const Formula& f, const std::function<std::optional<Formula>(const Formula&)>& leaf) {
  if (auto r = leaf(f)) return *r;
  switch (f.kind()) {
    case K::Neg: return Formula::neg(rebuild(f.arg(), leaf));
    case K::Delta: return Formula::delta(rebuild(f.arg(), leaf));
    case K::Box: return Formula::box(f.agent(), rebuild(f.arg(), leaf));
    case K::Diamond: return Formula::diamond(f.agent(), rebuild(f.arg(), leaf));
    case K::Impl: return Formula::impl(rebuild(f.left(), leaf), rebuild(f.right(), leaf));
    case K::Prod: return Formula::prod(rebuild(f.left(), leaf), rebuild(f.right(), leaf));
    case K::ProdImpl: return Formula::prod_impl(rebuild(f.left(), leaf), rebuild(f.right(), leaf));
    case K::OPlus: return Formula::oplus(rebuild(f.left(), leaf), rebuild(f.right(), leaf));
    case K::ODot: return Formula::odot(rebuild(f.left(), leaf), rebuild(f.right(), leaf));
    case K::Max: return Formula::max(rebuild(f.left(), leaf), rebuild(f.right(), leaf));
    case K::Min: return Formula::min(rebuild(f.left(), leaf), rebuild(f.right(), leaf));
    case K::Equiv: return Formula::equiv(rebuild(f.left(), leaf), rebuild(f.right(), leaf));
    default: return f;
  }
}

Formula repeated_oplus(const Formula& x, long times) {
  Formula out = x;
  for (long i = 1; i < times; ++i) out = Formula::oplus(out, x);
  return out;
}

}  // namespace

ConstantEliminationResult eliminate_constants(const std::vector<Formula>& gamma) {
  ConstantEliminationResult res;
  res.length_before = analyze(gamma).length;
  std::vector<Rational> constants;
  for (const auto& f : gamma) collect_constants(f, constants);
  if (constants.empty()) {
    res.translated = gamma;
    res.length_after = res.length_before;
    return res;
  }
  res.changed = true;
  mpz_class lcm = 1;
  for (const auto& c : constants) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.gmp().get_den_mpz_t());
  const Rational n{mpq_class(lcm)};
  res.denominator = std::stol(n.numerator_str());

  const auto stats = analyze(gamma);
  std::string base = "q";
  const auto clashes = [&](const std::string& b) {
    for (const auto& v : stats.variables)
      if (v == b || v.rfind(b + "_", 0) == 0) return true;
    return false;
  };
  while (clashes(base)) base += "q";
  res.q = base;
  const auto fresh = [&](long m) { return base + "_" + std::to_string(m); };

  std::set<long> numerators;
  const auto leaf = [&](const Formula& f) -> std::optional<Formula> {
    if (f.kind() != K::Constant && f.kind() != K::Half) return std::nullopt;
    const Rational v = f.kind() == K::Half ? Rational(1, 2) : f.value();
    if (v.sign() == 0) return Formula::bottom();
    if (v == Rational(1)) return Formula::top();
    const long m = std::stol((v * n).numerator_str());
    numerators.insert(m);
    return Formula::pr(BooleanTerm::var(fresh(m)));
  };
  for (const auto& f : gamma) res.translated.push_back(rebuild(f, leaf));

  std::vector<Formula> side;
  const Formula pq = Formula::pr(BooleanTerm::var(base));
  if (res.denominator > 1) {
    side.push_back(Formula::equiv(repeated_oplus(pq, res.denominator - 1), Formula::neg(pq)));
    for (const long m : numerators) {
      res.numerators.emplace_back(m, fresh(m));
      side.push_back(Formula::equiv(Formula::pr(BooleanTerm::var(fresh(m))), repeated_oplus(pq, m)));
    }
  }
  const std::vector<std::string> agents(stats.agents.begin(), stats.agents.end());
  if (agents.size() > 1)
    res.warnings.push_back("multi-modal input: side formulas are prefixed by all " +
                           std::to_string(agents.size()) + "^i agent sequences up to depth " +
                           std::to_string(stats.modal_depth));
  // Prefix sequences of length 0..depth over the agents.
  std::vector<std::vector<std::string>> level{{}};
  std::vector<std::vector<std::string>> prefixes{{}};
  for (std::size_t i = 0; i < stats.modal_depth && !agents.empty(); ++i) {
    std::vector<std::vector<std::string>> next;
    for (const auto& seq : level) {
      for (const auto& a : agents) {
        auto s = seq;
        s.push_back(a);
        next.push_back(std::move(s));
      }
    }
    prefixes.insert(prefixes.end(), next.begin(), next.end());
    level = std::move(next);
  }
  for (const auto& seq : prefixes) {
    for (const auto& s : side) {
      Formula f = s;
      for (auto it = seq.rbegin(); it != seq.rend(); ++it) f = Formula::box(*it, f);
      res.translated.push_back(f);
    }
  }
  res.length_after = analyze(res.translated).length;
  return res;
}

// ── Δ-embedding ──

Formula delta_embed(const ClassicalFormula& f) {
  using CK = ClassicalFormula::Kind;
  switch (f.kind()) {
    case CK::Var: return Formula::delta(Formula::pr(BooleanTerm::var(f.name())));
    case CK::Bottom: return Formula::bottom();
    case CK::Not: return Formula::neg(delta_embed(f.arg()));
    case CK::Impl: return Formula::impl(delta_embed(f.left()), delta_embed(f.right()));
    case CK::Box: return Formula::box(f.name(), delta_embed(f.arg()));
  }
  return Formula::bottom();
}

KModel project_delta(const CanonicalModel& m, const std::vector<std::string>& vars) {
  KModel k;
  k.worlds = m.frame.names();
  for (const auto& agent : m.frame.agents()) k.relations[agent] = m.frame.pairs(agent);
  k.valuation.resize(k.worlds.size());
  Interpretation interp(m);
  for (const auto& p : vars) {
    const auto& values = interp.values(Formula::delta(Formula::pr(BooleanTerm::var(p))));
    for (WorldId w = 0; w < values.size(); ++w) {
      if (values[w] == Rational(1)) k.valuation[w].insert(p);
      else if (values[w].sign() != 0)
        throw InternalInconsistency("D Pr(" + p + ") has value " + values[w].str() + " at " + k.worlds[w]);
    }
  }
  return k;
}

}  // namespace lukprob
