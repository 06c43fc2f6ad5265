#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lukprob/errors.hpp"
#include "lukprob/modelcheck.hpp"
#include "lukprob/reductions.hpp"

namespace lukprob {

void validate(const MarkovChain& c) {
  std::vector<std::string> problems;
  const auto check_row = [&](const std::string& path, const std::vector<Rational>& row) {
    if (row.size() != c.states) {
      problems.push_back(path + ": expected " + std::to_string(c.states) + " entries");
      return;
    }
    Rational total;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] < Rational(0) || row[j] > Rational(1))
        problems.push_back(path + "[" + std::to_string(j) + "]: " + row[j].str() + " outside [0,1]");
      total += row[j];
    }
    if (total != Rational(1)) problems.push_back(path + ": sums to " + total.str() + ", expected 1");
  };
  if (c.states == 0) problems.emplace_back("states: at least one state is required");
  check_row("start", c.start);
  if (c.transition.size() != c.states)
    problems.push_back("transition: expected " + std::to_string(c.states) + " rows");
  for (std::size_t i = 0; i < c.transition.size(); ++i)
    check_row("transition[" + std::to_string(i) + "]", c.transition[i]);
  if (!problems.empty()) throw ValidationError(problems);
}

MarkovChain load_chain(std::string_view json_text) {
  using json = nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("chain document must be a JSON object");
  const auto rational = [](const json& j, const std::string& path) {
    if (!j.is_string()) throw FormatError(path + ": expected a rational string \"m/n\"");
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw FormatError(path + ": malformed rational '" + j.get<std::string>() + "'");
    }
  };
  MarkovChain c;
  if (!doc.contains("states") || !doc["states"].is_number_integer() || doc["states"].get<long>() < 0)
    throw FormatError("field 'states' must be a non-negative integer");
  c.states = doc["states"].get<std::size_t>();
  if (!doc.contains("start") || !doc["start"].is_array()) throw FormatError("field 'start' must be an array");
  for (std::size_t i = 0; i < doc["start"].size(); ++i)
    c.start.push_back(rational(doc["start"][i], "start[" + std::to_string(i) + "]"));
  if (!doc.contains("transition") || !doc["transition"].is_array())
    throw FormatError("field 'transition' must be an array of rows");
  for (std::size_t i = 0; i < doc["transition"].size(); ++i) {
    const json& row = doc["transition"][i];
    const std::string path = "transition[" + std::to_string(i) + "]";
    if (!row.is_array()) throw FormatError(path + ": expected an array");
    std::vector<Rational> r;
    for (std::size_t j = 0; j < row.size(); ++j) r.push_back(rational(row[j], path + "[" + std::to_string(j) + "]"));
    c.transition.push_back(std::move(r));
  }
  validate(c);
  return c;
}

MarkovChain load_chain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open chain file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_chain(buf.str());
}

ProbModel markov_to_frame(const MarkovChain& c) {
  validate(c);
  ProbModel m;
  for (std::size_t i = 0; i <= c.states; ++i) m.add_world(std::to_string(i));
  for (std::size_t i = 1; i <= c.states; ++i) {
    m.add_prop(state_prop(static_cast<long>(i)));
    m.set_true(state_prop(static_cast<long>(i)), i);
  }
  for (std::size_t k = 1; k <= c.states; ++k)
    for (std::size_t i = 0; i <= c.states; ++i) m.frame.add_edge(std::to_string(k), i, k);
  for (std::size_t i = 1; i <= c.states; ++i) {
    if (c.start[i - 1].sign() != 0) m.set_weight(0, i, c.start[i - 1]);
    for (std::size_t j = 1; j <= c.states; ++j)
      if (c.transition[i - 1][j - 1].sign() != 0) m.set_weight(i, j, c.transition[i - 1][j - 1]);
  }
  return m;
}

namespace {

void check_path(const MarkovChain& c, const std::vector<long>& path) {
  if (path.empty()) throw UnknownState("empty path");
  for (const long s : path)
    if (s < 1 || static_cast<std::size_t>(s) > c.states)
      throw UnknownState("state " + std::to_string(s) + " is not in 1.." + std::to_string(c.states));
}

}  // namespace

Rational path_probability(const MarkovChain& c, const std::vector<long>& path) {
  check_path(c, path);
  Rational p = c.start[path[0] - 1];
  for (std::size_t j = 1; j < path.size(); ++j) p *= c.transition[path[j - 1] - 1][path[j] - 1];
  return p;
}

std::pair<Formula, Rational> path_value(const MarkovChain& c, const std::vector<long>& path) {
  check_path(c, path);
  std::vector<MacroArg> args(path.begin(), path.end());
  const Formula f = macro_expand("Path", args);
  return {f, evaluate(markov_to_frame(c), WorldId{0}, f)};
}

}  // namespace lukprob
