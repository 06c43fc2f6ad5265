// Finite probabilistic Kripke models.
//
// Two concrete representations share a Frame (worlds + labelled relations):
//   ProbModel       events are sets of worlds (S = 2^W); each world carries
//                   atom weights over worlds, μ_w(E) = Σ_{u∈E} weight_w(u).
//   CanonicalModel  sample-independent algebra 2^(2^P); atoms are subsets of
//                   the prop list P encoded as bitmasks (bit i ↔ props[i]).
// ValueModel assigns a value to each Pr(p) directly and is only meaningful for
// formulas whose atoms wrap bare variables.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "lukprob/rational.hpp"
#include "lukprob/syntax.hpp"

namespace lukprob {

using WorldId = std::size_t;
using WorldSet = std::vector<bool>;
using AtomMask = std::uint64_t;

class Frame {
 public:
  /// Throws std::invalid_argument on a duplicate name.
  WorldId add_world(std::string name);
  void add_edge(const std::string& agent, WorldId from, WorldId to);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(WorldId w) const { return names_.at(w); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<WorldId> find(std::string_view name) const;
  /// Throws UnknownWorld.
  WorldId id(std::string_view name) const;

  /// Empty when the agent has no relation (agents absent from the map denote
  /// empty relations).
  std::span<const WorldId> successors(const std::string& agent, WorldId w) const;
  std::vector<std::string> agents() const;
  std::vector<std::pair<WorldId, WorldId>> pairs(const std::string& agent) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, WorldId> index_;
  std::map<std::string, std::vector<std::vector<WorldId>>> succ_;
};

struct ProbModel {
  Frame frame;
  std::vector<std::string> props;
  std::map<std::string, WorldSet> valuation;
  /// Per world: sparse atom weights over worlds. Missing entries are 0.
  std::vector<std::vector<std::pair<WorldId, Rational>>> weights;

  WorldId add_world(std::string name);
  void add_prop(std::string name);
  void set_true(const std::string& prop, WorldId w);
  void set_weight(WorldId w, WorldId atom, Rational weight);
};

struct CanonicalModel {
  Frame frame;
  std::vector<std::string> props;
  /// Per world: sparse weights over subsets of `props`.
  std::vector<std::vector<std::pair<AtomMask, Rational>>> atom_weights;

  WorldId add_world(std::string name);
  void set_weight(WorldId w, AtomMask atom, Rational weight);
  /// Index of a prop or nullopt.
  std::optional<std::size_t> prop_index(std::string_view p) const;
};

struct ValueModel {
  Frame frame;
  std::vector<std::string> props;
  /// values[w][p] = v(p, w); missing entries are 0.
  std::vector<std::map<std::string, Rational>> values;

  WorldId add_world(std::string name);
};

using AnyModel = std::variant<ProbModel, CanonicalModel>;

const Frame& frame_of(const AnyModel& m);

// ── events and measures ──

/// E(t) as a world set. Throws UnknownProp.
WorldSet event_extension(const ProbModel& m, const BooleanTerm& t);
std::vector<std::string> world_names(const Frame& f, const WorldSet& s);

Rational measure_of(const ProbModel& m, WorldId w, const BooleanTerm& t);
Rational measure_of(const ProbModel& m, std::string_view w, const BooleanTerm& t);
Rational measure_of(const CanonicalModel& m, WorldId w, const BooleanTerm& t);
Rational measure_of(const CanonicalModel& m, std::string_view w, const BooleanTerm& t);

/// Does the atom (subset of `props`) satisfy t? Throws UnknownProp.
bool atom_satisfies(std::span<const std::string> props, AtomMask atom, const BooleanTerm& t);

// ── validation ──

struct Violation {
  enum class Kind { Range, Total, Reference, Additivity };
  Kind kind;
  std::string path;
  std::string message;
};

std::string to_string(const Violation& v);

std::vector<Violation> validate(const ProbModel& m);
std::vector<Violation> validate(const CanonicalModel& m);
std::vector<Violation> validate(const AnyModel& m);

// ── file I/O (JSON) ──

/// Parses and validates. Throws FormatError or ValidationError.
AnyModel load_model(std::string_view json_text);
AnyModel load_model_file(const std::string& path);
std::string dump_model(const AnyModel& m);
std::string to_dot(const AnyModel& m);

}  // namespace lukprob
