#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lukprob/errors.hpp"
#include "lukprob/model.hpp"

namespace lukprob {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const json& field(const json& doc, const char* key, json::value_t type, const char* type_name) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw FormatError(std::string("missing field '") + key + "'");
  if (it->type() != type &&
      !(type == json::value_t::number_unsigned && it->is_number_integer()))
    throw FormatError(std::string("field '") + key + "' must be " + type_name);
  return *it;
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw FormatError(path + ": expected a string");
  return j.get<std::string>();
}

Rational as_rational(const json& j, const std::string& path) {
  const std::string s = as_string(j, path);
  try {
    return Rational::parse(s);
  } catch (const std::invalid_argument&) {
    throw FormatError(path + ": malformed rational '" + s + "' (expected \"m/n\")");
  }
}

template <typename Model>
void load_frame(const json& doc, Model& m, std::vector<std::string>& problems) {
  const json& worlds = field(doc, "worlds", json::value_t::array, "an array of strings");
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    const std::string name = as_string(worlds[i], "worlds[" + std::to_string(i) + "]");
    if (m.frame.find(name)) throw FormatError("worlds: duplicate world '" + name + "'");
    m.add_world(name);
  }
  if (const auto it = doc.find("relations"); it != doc.end()) {
    if (!it->is_object()) throw FormatError("field 'relations' must be an object");
    for (const auto& [agent, pairs] : it->items()) {
      if (!pairs.is_array()) throw FormatError("relations." + agent + ": expected an array");
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string path = "relations." + agent + "[" + std::to_string(i) + "]";
        const json& pr = pairs[i];
        if (!pr.is_array() || pr.size() != 2) throw FormatError(path + ": expected [from, to]");
        const auto from = m.frame.find(as_string(pr[0], path));
        const auto to = m.frame.find(as_string(pr[1], path));
        if (!from || !to) {
          problems.push_back("reference at " + path + ": undeclared world");
          continue;
        }
        m.frame.add_edge(agent, *from, *to);
      }
    }
  }
}

std::vector<std::string> load_props(const json& doc) {
  std::vector<std::string> props;
  if (const auto it = doc.find("props"); it != doc.end()) {
    if (!it->is_array()) throw FormatError("field 'props' must be an array");
    for (std::size_t i = 0; i < it->size(); ++i)
      props.push_back(as_string((*it)[i], "props[" + std::to_string(i) + "]"));
  }
  return props;
}

ProbModel load_concrete(const json& doc) {
  ProbModel m;
  std::vector<std::string> problems;
  load_frame(doc, m, problems);
  for (auto& p : load_props(doc)) m.add_prop(std::move(p));
  if (const auto it = doc.find("valuation"); it != doc.end()) {
    if (!it->is_object()) throw FormatError("field 'valuation' must be an object");
    for (const auto& [prop, worlds] : it->items()) {
      if (std::find(m.props.begin(), m.props.end(), prop) == m.props.end()) {
        problems.push_back("reference at valuation." + prop + ": undeclared prop");
        continue;
      }
      if (!worlds.is_array()) throw FormatError("valuation." + prop + ": expected an array");
      for (std::size_t i = 0; i < worlds.size(); ++i) {
        const std::string path = "valuation." + prop + "[" + std::to_string(i) + "]";
        const auto w = m.frame.find(as_string(worlds[i], path));
        if (!w) {
          problems.push_back("reference at " + path + ": undeclared world");
          continue;
        }
        m.set_true(prop, *w);
      }
    }
  }
  const json& measures = field(doc, "measures", json::value_t::object, "an object");
  for (const auto& [world, row] : measures.items()) {
    const auto w = m.frame.find(world);
    if (!w) {
      problems.push_back("reference at measures." + world + ": undeclared world");
      continue;
    }
    if (!row.is_object()) throw FormatError("measures." + world + ": expected an object");
    for (const auto& [atom, weight] : row.items()) {
      const std::string path = "measures." + world + "." + atom;
      const auto u = m.frame.find(atom);
      if (!u) {
        problems.push_back("reference at " + path + ": undeclared world");
        continue;
      }
      m.set_weight(*w, *u, as_rational(weight, path));
    }
  }
  for (const auto& v : validate(m)) problems.push_back(to_string(v));
  if (!problems.empty()) throw ValidationError(problems);
  return m;
}

CanonicalModel load_canonical(const json& doc) {
  CanonicalModel m;
  std::vector<std::string> problems;
  load_frame(doc, m, problems);
  m.props = load_props(doc);
  if (m.props.size() > 63) throw FormatError("props: at most 63 props are supported");
  const json& atoms = field(doc, "atoms", json::value_t::array, "an array of prop subsets");
  std::vector<AtomMask> masks;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string path = "atoms[" + std::to_string(i) + "]";
    if (!atoms[i].is_array()) throw FormatError(path + ": expected an array of props");
    AtomMask mask = 0;
    for (const auto& p : atoms[i]) {
      const auto idx = m.prop_index(as_string(p, path));
      if (!idx) {
        problems.push_back("reference at " + path + ": undeclared prop");
        continue;
      }
      mask |= AtomMask{1} << *idx;
    }
    masks.push_back(mask);
  }
  const json& table = field(doc, "atomWeights", json::value_t::object, "an object");
  for (const auto& [world, row] : table.items()) {
    const auto w = m.frame.find(world);
    if (!w) {
      problems.push_back("reference at atomWeights." + world + ": undeclared world");
      continue;
    }
    if (!row.is_array()) throw FormatError("atomWeights." + world + ": expected an array");
    if (row.size() > masks.size())
      throw FormatError("atomWeights." + world + ": more weights than atoms");
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Rational x = as_rational(row[i], "atomWeights." + world + "[" + std::to_string(i) + "]");
      if (x.sign() != 0 || x < Rational(0)) m.set_weight(*w, masks[i], x);
    }
  }
  for (const auto& v : validate(m)) problems.push_back(to_string(v));
  if (!problems.empty()) throw ValidationError(problems);
  return m;
}

ordered_json relations_json(const Frame& f) {
  ordered_json rel = ordered_json::object();
  for (const auto& agent : f.agents()) {
    ordered_json arr = ordered_json::array();
    for (const auto& [a, b] : f.pairs(agent)) arr.push_back({f.name(a), f.name(b)});
    rel[agent] = arr;
  }
  return rel;
}

ordered_json dump_json(const ProbModel& m) {
  ordered_json doc;
  doc["worlds"] = m.frame.names();
  doc["props"] = m.props;
  doc["relations"] = relations_json(m.frame);
  ordered_json val = ordered_json::object();
  for (const auto& p : m.props) val[p] = world_names(m.frame, m.valuation.at(p));
  doc["valuation"] = val;
  ordered_json meas = ordered_json::object();
  for (WorldId w = 0; w < m.frame.size(); ++w) {
    auto row = m.weights[w];
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ordered_json r = ordered_json::object();
    for (const auto& [u, x] : row) r[m.frame.name(u)] = x.fraction_str();
    meas[m.frame.name(w)] = r;
  }
  doc["measures"] = meas;
  return doc;
}

ordered_json dump_json(const CanonicalModel& m) {
  ordered_json doc;
  doc["algebra"] = "canonical";
  doc["worlds"] = m.frame.names();
  doc["props"] = m.props;
  doc["relations"] = relations_json(m.frame);
  std::vector<AtomMask> masks;
  for (const auto& row : m.atom_weights)
    for (const auto& [a, x] : row)
      if (x.sign() != 0 && std::find(masks.begin(), masks.end(), a) == masks.end()) masks.push_back(a);
  std::sort(masks.begin(), masks.end());
  ordered_json atoms = ordered_json::array();
  for (const AtomMask a : masks) {
    ordered_json set = ordered_json::array();
    for (std::size_t i = 0; i < m.props.size(); ++i)
      if ((a >> i) & 1U) set.push_back(m.props[i]);
    atoms.push_back(set);
  }
  doc["atoms"] = atoms;
  ordered_json table = ordered_json::object();
  for (WorldId w = 0; w < m.frame.size(); ++w) {
    ordered_json row = ordered_json::array();
    for (const AtomMask a : masks) {
      Rational x;
      for (const auto& [b, y] : m.atom_weights[w])
        if (b == a) x = y;
      row.push_back(x.fraction_str());
    }
    table[m.frame.name(w)] = row;
  }
  doc["atomWeights"] = table;
  return doc;
}

}  // namespace

AnyModel load_model(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("model document must be a JSON object");
  if (const auto it = doc.find("algebra"); it != doc.end()) {
    if (!it->is_string() || *it != "canonical")
      throw FormatError("field 'algebra' must be \"canonical\" when present");
    return load_canonical(doc);
  }
  return load_concrete(doc);
}

AnyModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

std::string dump_model(const AnyModel& m) {
  return std::visit([](const auto& x) { return dump_json(x).dump(2); }, m);
}

std::string to_dot(const AnyModel& m) {
  const Frame& f = frame_of(m);
  std::ostringstream out;
  out << "digraph model {\n";
  for (WorldId w = 0; w < f.size(); ++w) {
    std::string label = f.name(w);
    if (const auto* c = std::get_if<CanonicalModel>(&m)) {
      for (const auto& [a, x] : c->atom_weights[w]) {
        if (x.sign() == 0) continue;
        std::string set = "{";
        for (std::size_t i = 0; i < c->props.size(); ++i)
          if ((a >> i) & 1U) set += (set.size() > 1 ? "," : "") + c->props[i];
        label += "\\n" + set + "}: " + x.str();
      }
    } else {
      const auto& p = std::get<ProbModel>(m);
      for (const auto& [u, x] : p.weights[w])
        if (x.sign() != 0) label += "\\n" + f.name(u) + ": " + x.str();
    }
    out << "  \"" << f.name(w) << "\" [label=\"" << label << "\"];\n";
  }
  for (const auto& agent : f.agents())
    for (const auto& [a, b] : f.pairs(agent))
      out << "  \"" << f.name(a) << "\" -> \"" << f.name(b) << "\" [label=\"" << agent << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace lukprob
