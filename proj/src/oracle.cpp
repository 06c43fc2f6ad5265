#include "lukprob/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "json.hpp"
#include "lukprob/errors.hpp"
#include "lukprob/modelcheck.hpp"

namespace lukprob {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ── grid models ──

struct GridModel {
  std::size_t worlds = 0;
  /// counts[w][atom], summing to D per world.
  std::vector<std::vector<int>> counts;
  /// succ[agent][w]
  std::vector<std::vector<std::vector<std::size_t>>> succ;
};

/// Formula compiled to a post-order node list for quick floating-point
/// screening of candidate models.
class Compiled {
 public:
  Compiled(const std::vector<Formula>& roots, const std::vector<std::string>& props,
           const std::vector<std::string>& agents)
      : props_(props), agents_(agents) {
    for (const auto& r : roots) roots_.push_back(add(expand_derived(r)));
  }

  /// Values at world 0 of every root.
  std::vector<double> eval(const GridModel& m, long D) const {
    const std::size_t k = m.worlds;
    std::vector<double> v(nodes_.size() * k);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      for (std::size_t w = 0; w < k; ++w) {
        double x = 0;
        switch (n.kind) {
          case Formula::Kind::ProbAtom: {
            long s = 0;
            const auto& sat = atom_sat_[n.atom];
            for (std::size_t a = 0; a < sat.size(); ++a)
              if (sat[a]) s += m.counts[w][a];
            x = static_cast<double>(s) / static_cast<double>(D);
            break;
          }
          case Formula::Kind::Half:
          case Formula::Kind::Constant:
          case Formula::Kind::Top:
          case Formula::Kind::Bottom: x = n.constant; break;
          case Formula::Kind::Neg: x = 1 - v[n.a * k + w]; break;
          case Formula::Kind::Impl: x = std::min(1.0, 1 - v[n.a * k + w] + v[n.b * k + w]); break;
          case Formula::Kind::Prod: x = v[n.a * k + w] * v[n.b * k + w]; break;
          case Formula::Kind::ProdImpl: {
            const double a = v[n.a * k + w], b = v[n.b * k + w];
            x = a <= b ? 1.0 : b / a;
            break;
          }
          case Formula::Kind::Box: {
            x = 1;
            for (std::size_t u : m.succ[n.agent][w]) x = std::min(x, v[n.a * k + u]);
            break;
          }
          default: throw InternalInconsistency("derived node survived expansion");
        }
        v[i * k + w] = x;
      }
    }
    std::vector<double> out;
    for (std::size_t r : roots_) out.push_back(v[r * k]);
    return out;
  }

 private:
  struct Node {
    Formula::Kind kind;
    std::size_t a = 0, b = 0, agent = 0, atom = 0;
    double constant = 0;
  };

  std::size_t add(const Formula& f) {
    if (auto it = index_.find(f); it != index_.end()) return it->second;
    Node n{f.kind()};
    switch (f.kind()) {
      case Formula::Kind::ProbAtom: {
        n.atom = atom_sat_.size();
        const std::size_t m = props_.size();
        std::vector<bool> sat(std::size_t{1} << m);
        for (std::size_t a = 0; a < sat.size(); ++a) sat[a] = atom_satisfies(props_, a, f.term());
        atom_sat_.push_back(std::move(sat));
        break;
      }
      case Formula::Kind::Half: n.constant = 0.5; break;
      case Formula::Kind::Constant: n.constant = f.value().gmp().get_d(); break;
      case Formula::Kind::Top: n.constant = 1; break;
      case Formula::Kind::Bottom: n.constant = 0; break;
      case Formula::Kind::Box:
        n.agent = static_cast<std::size_t>(std::find(agents_.begin(), agents_.end(), f.agent()) - agents_.begin());
        n.a = add(f.arg());
        break;
      case Formula::Kind::Neg: n.a = add(f.arg()); break;
      default:
        n.a = add(f.left());
        n.b = add(f.right());
    }
    nodes_.push_back(n);
    index_.emplace(f, nodes_.size() - 1);
    return nodes_.size() - 1;
  }

  std::vector<std::string> props_, agents_;
  std::vector<Node> nodes_;
  std::vector<std::vector<bool>> atom_sat_;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
  std::vector<std::size_t> roots_;
};

/// All ways to split D units over `bins` atoms, or empty if there are more
/// than `cap`.
std::vector<std::vector<int>> compositions(long D, std::size_t bins, double cap) {
  double count = 1;
  for (std::size_t i = 1; i < bins; ++i) count = count * static_cast<double>(D + static_cast<long>(i)) / static_cast<double>(i);
  if (count > cap) return {};
  std::vector<std::vector<int>> out;
  std::vector<int> cur(bins, 0);
  auto rec = [&](auto&& self, std::size_t i, long left) -> void {
    if (i + 1 == bins) {
      cur[i] = static_cast<int>(left);
      out.push_back(cur);
      return;
    }
    for (long c = left; c >= 0; --c) {
      cur[i] = static_cast<int>(c);
      self(self, i + 1, left - c);
    }
  };
  rec(rec, 0, D);
  return out;
}

double composition_count(long D, std::size_t bins) {
  double count = 1;
  for (std::size_t i = 1; i < bins; ++i) count = count * static_cast<double>(D + static_cast<long>(i)) / static_cast<double>(i);
  return count;
}

std::vector<int> random_composition(std::mt19937_64& rng, long D, std::size_t bins) {
  std::vector<int> c(bins, 0);
  const std::size_t support = 1 + rng() % std::min<std::size_t>(bins, static_cast<std::size_t>(D));
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < support; ++i) chosen.push_back(rng() % bins);
  for (long u = 0; u < D; ++u) ++c[chosen[rng() % chosen.size()]];
  return c;
}

CanonicalModel to_canonical(const GridModel& g, const std::vector<std::string>& props,
                            const std::vector<std::string>& agents, long D) {
  CanonicalModel m;
  m.props = props;
  for (std::size_t w = 0; w < g.worlds; ++w) m.add_world("v" + std::to_string(w));
  for (std::size_t a = 0; a < agents.size(); ++a)
    for (std::size_t w = 0; w < g.worlds; ++w)
      for (std::size_t u : g.succ[a][w]) m.frame.add_edge(agents[a], w, u);
  for (std::size_t w = 0; w < g.worlds; ++w)
    for (std::size_t atom = 0; atom < g.counts[w].size(); ++atom)
      if (g.counts[w][atom] != 0) m.set_weight(w, atom, Rational(g.counts[w][atom], D));
  return m;
}

bool verifies(const CanonicalModel& m, const EntailmentQuery& q) {
  Interpretation interp(m);
  for (const auto& p : q.premises)
    if (interp.value(0, p) != Rational(1)) return false;
  return interp.value(0, q.conclusion) < Rational(1);
}

void decode_relations(GridModel& g, std::size_t agents, std::uint64_t bits) {
  const std::size_t k = g.worlds;
  g.succ.assign(agents, std::vector<std::vector<std::size_t>>(k));
  std::size_t bit = 0;
  for (std::size_t a = 0; a < agents; ++a)
    for (std::size_t w = 0; w < k; ++w)
      for (std::size_t u = 0; u < k; ++u, ++bit)
        if (bits >> bit & 1) g.succ[a][w].push_back(u);
}

}  // namespace

std::optional<CanonicalModel> search_countermodel(const EntailmentQuery& q, const SearchSpace& s) {
  if (s.grid < 1) throw RangeError("grid denominator must be at least 1");
  std::vector<Formula> all = q.premises;
  all.push_back(q.conclusion);
  const auto props = props_in_order(all);
  const auto stats = analyze(all);
  const std::vector<std::string> agents(stats.agents.begin(), stats.agents.end());
  if (props.size() > 12) throw BudgetExceeded("oracle search supports at most 12 props");
  const std::size_t bins = std::size_t{1} << props.size();
  const long D = s.grid;

  Compiled compiled(all, props, agents);
  const std::size_t np = q.premises.size();
  auto screen = [&](const GridModel& g) {
    const auto v = compiled.eval(g, D);
    for (std::size_t i = 0; i < np; ++i)
      if (v[i] < 1 - 1e-9) return false;
    return v[np] < 1 - 1e-9;
  };
  auto confirm = [&](const GridModel& g) -> std::optional<CanonicalModel> {
    auto m = to_canonical(g, props, agents, D);
    if (verifies(m, q)) return m;
    return std::nullopt;
  };

  std::mt19937_64 rng(s.seed);
  std::size_t remaining = s.budget;
  const auto comps = compositions(D, bins, static_cast<double>(s.budget));
  for (std::size_t k = 1; k <= s.max_worlds && remaining > 0; ++k) {
    const std::size_t rel_bits = agents.size() * k * k;
    const double space = std::pow(2.0, static_cast<double>(rel_bits)) *
                         std::pow(composition_count(D, bins), static_cast<double>(k));
    GridModel g;
    g.worlds = k;
    g.counts.assign(k, {});
    if (space <= static_cast<double>(remaining) && !comps.empty() && rel_bits < 63) {
      // Exhaustive: relation patterns outermost, then weights world by world.
      const std::uint64_t patterns = std::uint64_t{1} << rel_bits;
      for (std::uint64_t bits = 0; bits < patterns; ++bits) {
        decode_relations(g, agents.size(), bits);
        std::vector<std::size_t> idx(k, 0);
        while (true) {
          for (std::size_t w = 0; w < k; ++w) g.counts[w] = comps[idx[w]];
          --remaining;
          if (screen(g))
            if (auto m = confirm(g)) return m;
          std::size_t w = 0;
          while (w < k && ++idx[w] == comps.size()) idx[w++] = 0;
          if (w == k) break;
        }
      }
      continue;
    }
    // Sampling: share what is left evenly with the larger sizes still to come.
    const std::size_t quota = remaining / (s.max_worlds - k + 1);
    for (std::size_t i = 0; i < quota; ++i) {
      std::uint64_t bits = 0;
      for (std::size_t b = 0; b < rel_bits; ++b)
        if (rng() & 1) bits |= std::uint64_t{1} << b;
      decode_relations(g, agents.size(), bits);
      for (std::size_t w = 0; w < k; ++w) g.counts[w] = random_composition(rng, D, bins);
      --remaining;
      if (screen(g))
        if (auto m = confirm(g)) return m;
    }
  }
  return std::nullopt;
}

// ── classical K ──

namespace {

using CF = ClassicalFormula;

struct KState {
  std::set<CF> seen;
  std::vector<CF> todo;
};

std::optional<KModel> k_expand(KState s) {
  while (!s.todo.empty()) {
    CF f = s.todo.back();
    s.todo.pop_back();
    if (!s.seen.insert(f).second) continue;
    switch (f.kind()) {
      case CF::Kind::Var:
        if (s.seen.count(CF::negation(f))) return std::nullopt;
        break;
      case CF::Kind::Bottom: return std::nullopt;
      case CF::Kind::Box: break;
      case CF::Kind::Impl: {
        KState left = s;
        left.todo.push_back(CF::negation(f.left()));
        if (auto m = k_expand(std::move(left))) return m;
        s.todo.push_back(f.right());
        break;
      }
      case CF::Kind::Not: {
        const CF& g = f.arg();
        switch (g.kind()) {
          case CF::Kind::Var:
            if (s.seen.count(g)) return std::nullopt;
            break;
          case CF::Kind::Bottom: break;
          case CF::Kind::Not: s.todo.push_back(g.arg()); break;
          case CF::Kind::Impl:
            s.todo.push_back(g.left());
            s.todo.push_back(CF::negation(g.right()));
            break;
          case CF::Kind::Box: break;
        }
        break;
      }
    }
  }

  KModel m;
  m.worlds.push_back("0");
  m.valuation.emplace_back();
  for (const auto& f : s.seen)
    if (f.kind() == CF::Kind::Var) m.valuation[0].insert(f.name());
  for (const auto& f : s.seen) {
    if (f.kind() != CF::Kind::Not || f.arg().kind() != CF::Kind::Box) continue;
    const std::string& agent = f.arg().name();
    KState child;
    child.todo.push_back(CF::negation(f.arg().arg()));
    for (const auto& g : s.seen)
      if (g.kind() == CF::Kind::Box && g.name() == agent) child.todo.push_back(g.arg());
    auto sub = k_expand(std::move(child));
    if (!sub) return std::nullopt;
    const std::size_t offset = m.worlds.size();
    for (std::size_t w = 0; w < sub->worlds.size(); ++w) {
      m.worlds.push_back(std::to_string(offset + w));
      m.valuation.push_back(sub->valuation[w]);
    }
    for (const auto& [ag, pairs] : sub->relations)
      for (const auto& [a, b] : pairs) m.relations[ag].emplace_back(a + offset, b + offset);
    m.relations[agent].emplace_back(0, offset);
  }
  return m;
}

}  // namespace

KResult classical_k_decide(const ClassicalFormula& f) {
  KState s;
  s.todo.push_back(CF::negation(f));
  KResult r;
  r.countermodel = k_expand(std::move(s));
  r.valid = !r.countermodel;
  return r;
}

// ── random corpora ──

namespace {

class Generator {
 public:
  explicit Generator(const CorpusSpec& spec) : spec_(spec), rng_(spec.seed) {
    for (std::size_t i = 0; i < spec.vars; ++i) vars_.push_back(std::string(1, static_cast<char>('p' + i)));
    for (std::size_t i = 0; i < spec.agents; ++i) agents_.push_back(std::string(1, static_cast<char>('a' + i)));
  }

  EntailmentQuery query() {
    EntailmentQuery q;
    const std::size_t np = pick(spec_.max_premises + 1);
    for (std::size_t i = 0; i < np; ++i) q.premises.push_back(formula(3, spec_.max_depth));
    const std::size_t shape = pick(8);
    if (shape == 0) {
      // A weakening of some formula: valid by construction.
      Formula a = formula(3, spec_.max_depth);
      q.conclusion = Formula::impl(a, pick(2) ? Formula::oplus(a, formula(2, spec_.max_depth)) : Formula::max(a, formula(2, spec_.max_depth)));
    } else if (shape == 1) {
      q.conclusion = Formula::impl(Formula::pr(BooleanTerm::meet(term(), term())), Formula::pr(term()));
    } else if (shape == 2 && !q.premises.empty()) {
      q.conclusion = Formula::max(q.premises.front(), formula(2, spec_.max_depth));
    } else {
      q.conclusion = formula(5, spec_.max_depth);
    }
    if (spec_.nonlinear) {
      Formula x = formula(2, std::min<std::size_t>(spec_.max_depth, 1));
      Formula y = formula(2, 0);
      Formula p = pick(2) ? Formula::prod(x, y) : Formula::prod_impl(x, y);
      switch (pick(3)) {
        case 0: q.conclusion = Formula::impl(p, q.conclusion); break;
        case 1: q.conclusion = Formula::impl(q.conclusion, p); break;
        default: q.conclusion = p;
      }
    }
    return q;
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  BooleanTerm term() {
    const auto v = [&] { return BooleanTerm::var(vars_[pick(vars_.size())]); };
    switch (pick(5)) {
      case 0: return BooleanTerm::complement(v());
      case 1: return BooleanTerm::meet(v(), v());
      case 2: return BooleanTerm::join(v(), v());
      default: return v();
    }
  }

  Formula leaf() {
    if (pick(10) < 7) return Formula::pr(term());
    if (pick(6) == 0) return Formula::half();
    const long n = 1 + static_cast<long>(pick(static_cast<std::size_t>(spec_.max_denominator)));
    const long m = static_cast<long>(pick(static_cast<std::size_t>(n) + 1));
    return Formula::constant(Rational(m, n));
  }

  Formula formula(std::size_t size, std::size_t depth) {
    if (size <= 1) return leaf();
    const std::size_t choices = depth > 0 && !agents_.empty() ? 9 : 7;
    const std::size_t c = pick(choices);
    const std::size_t l = 1 + pick(size - 1);
    switch (c) {
      case 0: return Formula::neg(formula(size - 1, depth));
      case 1: return Formula::impl(formula(l, depth), formula(size - l, depth));
      case 2: return Formula::oplus(formula(l, depth), formula(size - l, depth));
      case 3: return Formula::odot(formula(l, depth), formula(size - l, depth));
      case 4: return Formula::min(formula(l, depth), formula(size - l, depth));
      case 5: return Formula::max(formula(l, depth), formula(size - l, depth));
      case 6: return Formula::equiv(formula(l, depth), formula(size - l, depth));
      case 7: return Formula::box(agents_[pick(agents_.size())], formula(size - 1, depth - 1));
      default: return Formula::diamond(agents_[pick(agents_.size())], formula(size - 1, depth - 1));
    }
  }

  CorpusSpec spec_;
  std::mt19937_64 rng_;
  std::vector<std::string> vars_, agents_;
};

}  // namespace

std::vector<EntailmentQuery> random_corpus(const CorpusSpec& spec) {
  Generator gen(spec);
  std::vector<EntailmentQuery> out;
  for (std::size_t i = 0; i < spec.instances; ++i) out.push_back(gen.query());
  return out;
}

// ── differential harness ──

std::string DifferentialReport::to_json() const {
  nlohmann::ordered_json j;
  j["instances"] = instances;
  j["valid"] = valid;
  j["not_valid"] = not_valid;
  j["unknown"] = unknown;
  j["oracle_found"] = oracle_found;
  j["missed"] = missed;
  j["discrepancies"] = discrepancies;
  j["prover_seconds"] = prover_seconds;
  j["oracle_seconds"] = oracle_seconds;
  return j.dump(2);
}

namespace {

std::string describe(std::size_t i, const EntailmentQuery& q) {
  std::string s = "#" + std::to_string(i) + " ";
  for (std::size_t k = 0; k < q.premises.size(); ++k) s += (k ? ", " : "") + print(q.premises[k]);
  return s + " |= " + print(q.conclusion);
}

}  // namespace

DifferentialReport differential_run(const std::vector<EntailmentQuery>& corpus, const DecideOptions& prover,
                                    const SearchSpace& space) {
  DifferentialReport r;
  r.instances = corpus.size();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& q = corpus[i];
    std::optional<Verdict> v;
    auto t0 = Clock::now();
    try {
      v = decide(q, prover);
    } catch (const InternalInconsistency& e) {
      r.discrepancies.push_back(describe(i, q) + ": countermodel failed re-check: " + e.what());
    } catch (const Error& e) {
      r.discrepancies.push_back(describe(i, q) + ": prover error: " + e.what());
    }
    r.prover_seconds += seconds_since(t0);

    t0 = Clock::now();
    const auto found = search_countermodel(q, space);
    r.oracle_seconds += seconds_since(t0);
    if (found) ++r.oracle_found;

    if (!v) {
      ++r.unknown;
      continue;
    }
    switch (v->kind) {
      case Verdict::Kind::Valid:
        ++r.valid;
        if (found) r.discrepancies.push_back(describe(i, q) + ": VALID but the oracle found a countermodel");
        break;
      case Verdict::Kind::NotValid:
        ++r.not_valid;
        if (!v->countermodel || !verifies(v->countermodel->model, q))
          r.discrepancies.push_back(describe(i, q) + ": countermodel does not re-check");
        break;
      case Verdict::Kind::Unknown:
        ++r.unknown;
        if (found) ++r.missed;
        break;
    }
  }
  return r;
}

}  // namespace lukprob
