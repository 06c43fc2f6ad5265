#include "lukprob/model.hpp"

#include <algorithm>
#include <stdexcept>

#include "lukprob/errors.hpp"

namespace lukprob {

WorldId Frame::add_world(std::string name) {
  if (index_.count(name)) throw std::invalid_argument("duplicate world '" + name + "'");
  const WorldId id = names_.size();
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  for (auto& [agent, adj] : succ_) adj.resize(names_.size());
  return id;
}

void Frame::add_edge(const std::string& agent, WorldId from, WorldId to) {
  if (from >= size() || to >= size()) throw std::out_of_range("edge references unknown world");
  auto& adj = succ_[agent];
  adj.resize(size());
  auto& s = adj[from];
  if (std::find(s.begin(), s.end(), to) == s.end()) s.push_back(to);
}

std::optional<WorldId> Frame::find(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WorldId Frame::id(std::string_view name) const {
  if (auto w = find(name)) return *w;
  throw UnknownWorld("unknown world '" + std::string(name) + "'");
}

std::span<const WorldId> Frame::successors(const std::string& agent, WorldId w) const {
  const auto it = succ_.find(agent);
  if (it == succ_.end() || w >= it->second.size()) return {};
  return it->second[w];
}

std::vector<std::string> Frame::agents() const {
  std::vector<std::string> out;
  for (const auto& [a, adj] : succ_) out.push_back(a);
  return out;
}

std::vector<std::pair<WorldId, WorldId>> Frame::pairs(const std::string& agent) const {
  std::vector<std::pair<WorldId, WorldId>> out;
  const auto it = succ_.find(agent);
  if (it == succ_.end()) return out;
  for (WorldId w = 0; w < it->second.size(); ++w)
    for (const WorldId u : it->second[w]) out.emplace_back(w, u);
  return out;
}

// ── ProbModel ──

WorldId ProbModel::add_world(std::string name) {
  const WorldId id = frame.add_world(std::move(name));
  weights.resize(frame.size());
  for (auto& [p, set] : valuation) set.resize(frame.size());
  return id;
}

void ProbModel::add_prop(std::string name) {
  if (std::find(props.begin(), props.end(), name) != props.end()) return;
  valuation.emplace(name, WorldSet(frame.size(), false));
  props.push_back(std::move(name));
}

void ProbModel::set_true(const std::string& prop, WorldId w) {
  add_prop(prop);
  valuation.at(prop).at(w) = true;
}

void ProbModel::set_weight(WorldId w, WorldId atom, Rational weight) {
  auto& row = weights.at(w);
  for (auto& [u, x] : row) {
    if (u == atom) {
      x = std::move(weight);
      return;
    }
  }
  row.emplace_back(atom, std::move(weight));
}

// ── CanonicalModel ──

WorldId CanonicalModel::add_world(std::string name) {
  const WorldId id = frame.add_world(std::move(name));
  atom_weights.resize(frame.size());
  return id;
}

void CanonicalModel::set_weight(WorldId w, AtomMask atom, Rational weight) {
  auto& row = atom_weights.at(w);
  for (auto& [a, x] : row) {
    if (a == atom) {
      x = std::move(weight);
      return;
    }
  }
  row.emplace_back(atom, std::move(weight));
}

std::optional<std::size_t> CanonicalModel::prop_index(std::string_view p) const {
  const auto it = std::find(props.begin(), props.end(), p);
  if (it == props.end()) return std::nullopt;
  return static_cast<std::size_t>(it - props.begin());
}

WorldId ValueModel::add_world(std::string name) {
  const WorldId id = frame.add_world(std::move(name));
  values.resize(frame.size());
  return id;
}

const Frame& frame_of(const AnyModel& m) {
  return std::visit([](const auto& x) -> const Frame& { return x.frame; }, m);
}

// ── events and measures ──

WorldSet event_extension(const ProbModel& m, const BooleanTerm& t) {
  const std::size_t n = m.frame.size();
  switch (t.kind()) {
    case BooleanTerm::Kind::Var: {
      const auto it = m.valuation.find(t.name());
      if (it == m.valuation.end()) throw UnknownProp("unknown prop '" + t.name() + "'");
      WorldSet s = it->second;
      s.resize(n, false);
      return s;
    }
    case BooleanTerm::Kind::Complement: {
      WorldSet s = event_extension(m, t.arg());
      s.flip();
      return s;
    }
    case BooleanTerm::Kind::Meet:
    case BooleanTerm::Kind::Join: {
      WorldSet a = event_extension(m, t.left());
      const WorldSet b = event_extension(m, t.right());
      const bool meet = t.kind() == BooleanTerm::Kind::Meet;
      for (std::size_t i = 0; i < n; ++i) a[i] = meet ? (a[i] && b[i]) : (a[i] || b[i]);
      return a;
    }
  }
  return {};
}

std::vector<std::string> world_names(const Frame& f, const WorldSet& s) {
  std::vector<std::string> out;
  for (WorldId w = 0; w < s.size(); ++w)
    if (s[w]) out.push_back(f.name(w));
  return out;
}

Rational measure_of(const ProbModel& m, WorldId w, const BooleanTerm& t) {
  if (w >= m.frame.size()) throw UnknownWorld("world index out of range");
  const WorldSet e = event_extension(m, t);
  Rational sum;
  for (const auto& [u, x] : m.weights[w])
    if (e[u]) sum += x;
  return sum;
}

Rational measure_of(const ProbModel& m, std::string_view w, const BooleanTerm& t) {
  return measure_of(m, m.frame.id(w), t);
}

bool atom_satisfies(std::span<const std::string> props, AtomMask atom, const BooleanTerm& t) {
  return t.holds([&](const std::string& name) {
    const auto it = std::find(props.begin(), props.end(), name);
    if (it == props.end()) throw UnknownProp("unknown prop '" + name + "'");
    return ((atom >> (it - props.begin())) & 1U) != 0;
  });
}

Rational measure_of(const CanonicalModel& m, WorldId w, const BooleanTerm& t) {
  if (w >= m.frame.size()) throw UnknownWorld("world index out of range");
  std::set<std::string> vars;
  t.collect_vars(vars);
  for (const auto& v : vars)
    if (!m.prop_index(v)) throw UnknownProp("unknown prop '" + v + "'");
  Rational sum;
  for (const auto& [atom, x] : m.atom_weights[w])
    if (x.sign() != 0 && atom_satisfies(m.props, atom, t)) sum += x;
  return sum;
}

Rational measure_of(const CanonicalModel& m, std::string_view w, const BooleanTerm& t) {
  return measure_of(m, m.frame.id(w), t);
}

// ── validation ──

std::string to_string(const Violation& v) {
  const char* kind = "";
  switch (v.kind) {
    case Violation::Kind::Range: kind = "range"; break;
    case Violation::Kind::Total: kind = "total"; break;
    case Violation::Kind::Reference: kind = "reference"; break;
    case Violation::Kind::Additivity: kind = "additivity"; break;
  }
  return std::string(kind) + " at " + v.path + ": " + v.message;
}

namespace {

template <typename Row, typename AtomName>
void check_distribution(const std::string& section, const std::string& world, const Row& row, const AtomName& atom_name,
                        std::vector<Violation>& out) {
  Rational total;
  for (const auto& [atom, x] : row) {
    if (x < Rational(0) || x > Rational(1)) {
      out.push_back({Violation::Kind::Range, section + "." + world + "." + atom_name(atom),
                     "weight " + x.str() + " outside [0,1]"});
    }
    total += x;
  }
  if (total != Rational(1)) {
    out.push_back({Violation::Kind::Total, section + "." + world,
                   "weights sum to " + total.str() + ", expected 1"});
  }
}

}  // namespace

std::vector<Violation> validate(const ProbModel& m) {
  std::vector<Violation> out;
  const std::size_t n = m.frame.size();
  if (n == 0) out.push_back({Violation::Kind::Reference, "worlds", "no worlds declared"});
  if (m.weights.size() != n)
    out.push_back({Violation::Kind::Reference, "measures", "measure table size mismatch"});
  for (WorldId w = 0; w < std::min(n, m.weights.size()); ++w) {
    for (const auto& [u, x] : m.weights[w]) {
      if (u >= n)
        out.push_back({Violation::Kind::Reference, "measures." + m.frame.name(w),
                       "atom references an undeclared world"});
    }
    check_distribution(
        "measures", m.frame.name(w), m.weights[w],
        [&](WorldId u) { return u < n ? m.frame.name(u) : std::string("?"); }, out);
  }
  for (const auto& [p, set] : m.valuation) {
    if (std::find(m.props.begin(), m.props.end(), p) == m.props.end())
      out.push_back({Violation::Kind::Reference, "valuation." + p, "undeclared prop"});
    if (set.size() > n)
      out.push_back({Violation::Kind::Reference, "valuation." + p, "references undeclared world"});
  }
  return out;
}

std::vector<Violation> validate(const CanonicalModel& m) {
  std::vector<Violation> out;
  const std::size_t n = m.frame.size();
  if (n == 0) out.push_back({Violation::Kind::Reference, "worlds", "no worlds declared"});
  if (m.props.size() > 63)
    out.push_back({Violation::Kind::Range, "props", "at most 63 props are supported"});
  const AtomMask limit = m.props.size() >= 64 ? ~AtomMask{0} : (AtomMask{1} << m.props.size());
  for (WorldId w = 0; w < std::min(n, m.atom_weights.size()); ++w) {
    for (const auto& [a, x] : m.atom_weights[w]) {
      if (a >= limit)
        out.push_back({Violation::Kind::Reference, "atomWeights." + m.frame.name(w),
                       "atom mentions an undeclared prop"});
    }
    check_distribution(
        "atomWeights", m.frame.name(w), m.atom_weights[w],
        [&](AtomMask a) {
          std::string s = "{";
          for (std::size_t i = 0; i < m.props.size(); ++i)
            if ((a >> i) & 1U) s += (s.size() > 1 ? "," : "") + m.props[i];
          return s + "}";
        },
        out);
  }
  return out;
}

std::vector<Violation> validate(const AnyModel& m) {
  return std::visit([](const auto& x) { return validate(x); }, m);
}

}  // namespace lukprob
