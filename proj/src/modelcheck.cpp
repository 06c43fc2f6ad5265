#include "lukprob/modelcheck.hpp"

#include "lukprob/errors.hpp"

namespace lukprob {

using K = Formula::Kind;

Interpretation::Interpretation(const Frame& frame, AtomFn atoms)
    : frame_(&frame), atoms_(std::move(atoms)) {}

Interpretation::Interpretation(const ProbModel& m)
    : Interpretation(m.frame, [&m](const BooleanTerm& t) {
        const WorldSet e = event_extension(m, t);
        std::vector<Rational> out(m.frame.size());
        for (WorldId w = 0; w < m.frame.size(); ++w)
          for (const auto& [u, x] : m.weights[w])
            if (e[u]) out[w] += x;
        return out;
      }) {}

Interpretation::Interpretation(const CanonicalModel& m)
    : Interpretation(m.frame, [&m](const BooleanTerm& t) {
        std::set<std::string> vars;
        t.collect_vars(vars);
        for (const auto& v : vars)
          if (!m.prop_index(v)) throw UnknownProp("unknown prop '" + v + "'");
        std::unordered_map<AtomMask, bool> sat;
        std::vector<Rational> out(m.frame.size());
        for (WorldId w = 0; w < m.frame.size(); ++w) {
          for (const auto& [a, x] : m.atom_weights[w]) {
            auto it = sat.find(a);
            if (it == sat.end()) it = sat.emplace(a, atom_satisfies(m.props, a, t)).first;
            if (it->second) out[w] += x;
          }
        }
        return out;
      }) {}

Interpretation::Interpretation(const ValueModel& m)
    : Interpretation(m.frame, [&m](const BooleanTerm& t) {
        if (t.kind() != BooleanTerm::Kind::Var)
          throw FragmentError("value models interpret only atoms Pr(p) with p a variable");
        std::vector<Rational> out(m.frame.size());
        for (WorldId w = 0; w < m.frame.size(); ++w) {
          const auto it = m.values[w].find(t.name());
          if (it != m.values[w].end()) out[w] = it->second;
        }
        return out;
      }) {}

Interpretation::Interpretation(const AnyModel& m)
    : Interpretation(std::visit([](const auto& x) { return Interpretation(x); }, m)) {}

const std::vector<Rational>& Interpretation::values(const Formula& f) {
  if (const auto it = memo_.find(f); it != memo_.end()) return it->second;
  const std::size_t n = frame_->size();
  std::vector<Rational> out(n);
  switch (f.kind()) {
    case K::ProbAtom: out = atoms_(f.term()); break;
    case K::Half: out.assign(n, Rational(1, 2)); break;
    case K::Constant: out.assign(n, f.value()); break;
    case K::Top: out.assign(n, Rational(1)); break;
    case K::Bottom: break;
    case K::Neg: {
      const auto& a = values(f.arg());
      for (std::size_t w = 0; w < n; ++w) out[w] = Rational(1) - a[w];
      break;
    }
    case K::Impl:
    case K::Prod:
    case K::ProdImpl: {
      const auto a = values(f.left());
      const auto& b = values(f.right());
      for (std::size_t w = 0; w < n; ++w) {
        if (f.kind() == K::Impl) out[w] = min(Rational(1), Rational(1) - a[w] + b[w]);
        else if (f.kind() == K::Prod) out[w] = a[w] * b[w];
        else out[w] = a[w] <= b[w] ? Rational(1) : b[w] / a[w];
      }
      break;
    }
    case K::Box: {
      const auto& a = values(f.arg());
      for (WorldId w = 0; w < n; ++w) {
        Rational v(1);
        for (const WorldId u : frame_->successors(f.agent(), w)) v = min(v, a[u]);
        out[w] = v;
      }
      break;
    }
    default: out = values(expand_derived(f)); break;
  }
  return memo_.emplace(f, std::move(out)).first->second;
}

Rational Interpretation::value(WorldId w, const Formula& f) {
  if (w >= frame_->size()) throw UnknownWorld("world index out of range");
  return values(f)[w];
}

Rational Interpretation::value(std::string_view w, const Formula& f) {
  return value(frame_->id(w), f);
}

Rational evaluate(const ProbModel& m, WorldId w, const Formula& f) {
  return Interpretation(m).value(w, f);
}
Rational evaluate(const ProbModel& m, std::string_view w, const Formula& f) {
  return Interpretation(m).value(w, f);
}
Rational evaluate(const CanonicalModel& m, WorldId w, const Formula& f) {
  return Interpretation(m).value(w, f);
}
Rational evaluate(const CanonicalModel& m, std::string_view w, const Formula& f) {
  return Interpretation(m).value(w, f);
}
Rational evaluate(const ValueModel& m, WorldId w, const Formula& f) {
  return Interpretation(m).value(w, f);
}
Rational evaluate(const AnyModel& m, std::string_view w, const Formula& f) {
  return Interpretation(m).value(w, f);
}

std::vector<Rational> evaluate_all(const ProbModel& m, const Formula& f) {
  return Interpretation(m).values(f);
}
std::vector<Rational> evaluate_all(const CanonicalModel& m, const Formula& f) {
  return Interpretation(m).values(f);
}
std::vector<Rational> evaluate_all(const AnyModel& m, const Formula& f) {
  return Interpretation(m).values(f);
}

}  // namespace lukprob
