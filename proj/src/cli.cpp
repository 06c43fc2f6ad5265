#include "lukprob/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lukprob/errors.hpp"
#include "lukprob/modelcheck.hpp"
#include "lukprob/oracle.hpp"
#include "lukprob/reductions.hpp"
#include "lukprob/tableau.hpp"

namespace lukprob::cli {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

/// One formula per line; blank lines and lines starting with '#' are skipped.
std::vector<Formula> read_formulas(const std::string& path) {
  std::vector<Formula> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_formula(line));
  }
  return out;
}

template <typename T>
T env_or(const char* name, T fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  std::istringstream in(v);
  T x{};
  if (!(in >> x)) return fallback;
  return x;
}

std::string value_line(const Rational& r) { return r.str() + " (" + r.decimal() + ")"; }

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

struct ProveArgs {
  std::string premises_file;
  std::vector<std::string> premises;
  std::string conclusion = "F";
  std::string frame = "fb";
  std::string backend = "interval";
  std::string countermodel_out, dot_out, smtlib_out;
  bool atoms_as_variables = false;
  bool deterministic = false;
  std::size_t max_branches = 100000;
  double time_limit = 0;
  std::size_t basis_cap = 12;
  unsigned precision = 20;
};

std::string countermodel_json(const Countermodel& cm) {
  auto j = ordered_json::parse(dump_model(AnyModel{cm.model}));
  j["root"] = cm.root;
  ordered_json labels = ordered_json::object();
  for (const auto& [l, w] : cm.labels) labels[l] = w;
  j["labels"] = labels;
  ordered_json sol = ordered_json::object();
  for (const auto& [n, v] : cm.solution) sol[n] = v.fraction_str();
  j["solution"] = sol;
  j["conclusionValue"] = cm.conclusion_value.fraction_str();
  return j.dump(2) + "\n";
}

/// Reloads a written countermodel and checks it against the query.
void reverify(const std::string& text, const EntailmentQuery& q, const std::string& root) {
  const AnyModel m = load_model(text);
  for (const auto& p : q.premises)
    if (evaluate(m, root, p) != Rational(1))
      throw InternalInconsistency("written countermodel gives a premise a value below 1");
  if (evaluate(m, root, q.conclusion) >= Rational(1))
    throw InternalInconsistency("written countermodel gives the conclusion value 1");
}

int prove(const ProveArgs& a, std::ostream& out) {
  EntailmentQuery q;
  if (!a.premises_file.empty()) q.premises = read_formulas(a.premises_file);
  for (const auto& p : a.premises) q.premises.push_back(parse_formula(p));
  q.conclusion = parse_formula(a.conclusion);
  q.frame_mode = a.frame == "any" ? FrameMode::Any : FrameMode::FB;

  DecideOptions opts;
  opts.atoms_as_variables = a.atoms_as_variables;
  opts.backend = a.backend == "lp" ? Backend::Lp : Backend::Interval;
  opts.max_branches = a.max_branches;
  opts.time_limit = a.time_limit;
  opts.basis_cap = a.basis_cap;
  opts.poly.precision = a.precision;

  if (a.backend == "export-only") {
    // Validate the fragment the same way decide does before any work.
    std::vector<Formula> all = q.premises;
    all.push_back(q.conclusion);
    const auto stats = analyze(all);
    if (q.frame_mode == FrameMode::Any && !in_additive(stats.fragment))
      throw FragmentError("arbitrary-frame entailment needs the additive fragment (no * or ~>), got " +
                          to_string(stats.fragment));
    Tableau t(q, opts);
    std::string text;
    std::size_t open = 0;
    t.saturate([&](Branch& b) {
      text += "; branch " + std::to_string(open++) + "\n" + export_smtlib(t.branch_system(b).system);
      return true;
    });
    if (!a.smtlib_out.empty()) write_file(a.smtlib_out, text);
    else out << text;
    if (open == 0) {
      out << "VALID\n";
      return Ok;
    }
    out << "UNKNOWN\nreason: " << open << " open branch system(s) exported\n";
    return Unknown;
  }

  std::string last_system;
  if (!a.smtlib_out.empty())
    opts.on_system = [&](const ConstraintSystem& s, const Feasibility&) { last_system = export_smtlib(s); };

  const Verdict v = decide(q, opts);
  out << to_string(v.kind) << "\n";
  out << "branches: " << v.branches << "\n";
  if (!a.smtlib_out.empty() && !last_system.empty()) write_file(a.smtlib_out, last_system);
  switch (v.kind) {
    case Verdict::Kind::Valid: return Ok;
    case Verdict::Kind::Unknown:
      out << "reason: " << v.reason << "\n";
      return Unknown;
    case Verdict::Kind::NotValid: break;
  }
  const Countermodel& cm = *v.countermodel;
  out << "conclusion value: " << value_line(cm.conclusion_value) << "\n";
  const std::string text = countermodel_json(cm);
  reverify(text, q, cm.root);
  if (!a.countermodel_out.empty()) write_file(a.countermodel_out, text);
  else out << text;
  if (!a.dot_out.empty()) write_file(a.dot_out, to_dot(AnyModel{cm.model}));
  return NotValid;
}

std::vector<long> parse_path(const std::string& s) {
  std::vector<long> path;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      path.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw FormatError("bad path element '" + tok + "'");
    }
  }
  if (path.empty()) throw FormatError("empty path");
  return path;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modal probabilistic logic toolkit: model checking, proving, translations"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "parse formulas and print statistics");
  std::vector<std::string> check_formulas;
  std::string check_file;
  check->add_option("formula", check_formulas, "formula text");
  check->add_option("--file", check_file, "file with one formula per line");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a formula at a world");
  std::string eval_model, eval_world, eval_formula;
  eval->add_option("--model", eval_model, "model JSON")->required();
  eval->add_option("--world", eval_world, "world name")->required();
  eval->add_option("formula", eval_formula, "formula text")->required();

  // prove
  auto* pr = app.add_subcommand("prove", "decide an entailment");
  ProveArgs pa;
  pa.max_branches = env_or<std::size_t>("LUKPROB_MAX_BRANCHES", pa.max_branches);
  pa.time_limit = env_or<double>("LUKPROB_TIME_LIMIT", pa.time_limit);
  pa.basis_cap = env_or<std::size_t>("LUKPROB_BASIS_CAP", pa.basis_cap);
  pr->add_option("--premises", pa.premises_file, "file with one premise per line");
  pr->add_option("--premise", pa.premises, "a premise (repeatable)");
  pr->add_option("--conclusion", pa.conclusion, "conclusion (default F, i.e. satisfiability)");
  pr->add_option("--frame", pa.frame, "fb or any")->check(CLI::IsMember({"fb", "any"}));
  pr->add_option("--backend", pa.backend, "lp, interval or export-only")
      ->check(CLI::IsMember({"lp", "interval", "export-only"}));
  pr->add_option("--countermodel", pa.countermodel_out, "write the countermodel JSON here");
  pr->add_option("--dot", pa.dot_out, "write the countermodel as DOT here");
  pr->add_option("--smtlib", pa.smtlib_out, "write the last branch system as SMT-LIB here");
  pr->add_flag("--atoms-as-variables", pa.atoms_as_variables, "treat each Pr(p) as a free value");
  pr->add_flag("--deterministic", pa.deterministic, "fixed exploration order (always on)");
  pr->add_option("--max-branches", pa.max_branches, "branch budget");
  pr->add_option("--time-limit", pa.time_limit, "seconds, 0 for none");
  pr->add_option("--basis-cap", pa.basis_cap, "largest coherence basis");
  pr->add_option("--precision", pa.precision, "interval search precision in bits");

  // translate
  auto* tr = app.add_subcommand("translate", "eliminate-constants or delta-embed");
  std::string tr_mode;
  std::vector<std::string> tr_formulas;
  std::string tr_file;
  tr->add_option("mode", tr_mode, "eliminate-constants | delta-embed")
      ->required()
      ->check(CLI::IsMember({"eliminate-constants", "delta-embed"}));
  tr->add_option("formula", tr_formulas, "formula text");
  tr->add_option("--file", tr_file, "file with one formula per line (eliminate-constants)");

  // markov
  auto* mk = app.add_subcommand("markov", "path formula and probability");
  std::string mk_chain, mk_path;
  mk->add_option("--chain", mk_chain, "chain JSON")->required();
  mk->add_option("--path", mk_path, "comma-separated states, e.g. 1,2")->required();

  // oracle
  auto* orc = app.add_subcommand("oracle", "differential run against brute-force search");
  CorpusSpec cs;
  SearchSpace ss;
  orc->add_option("--instances", cs.instances);
  orc->add_option("--seed", cs.seed);
  orc->add_option("--depth", cs.max_depth);
  orc->add_option("--vars", cs.vars)->check(CLI::Range(1, 10));
  orc->add_option("--agents", cs.agents)->check(CLI::Range(0, 26));
  orc->add_option("--denominator", cs.max_denominator)->check(CLI::Range(1, 1000));
  orc->add_option("--premises", cs.max_premises);
  orc->add_flag("--nonlinear", cs.nonlinear, "one * or ~> per query");
  orc->add_option("--worlds", ss.max_worlds);
  orc->add_option("--grid", ss.grid)->check(CLI::Range(1, 1000));
  orc->add_option("--budget", ss.budget);

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : Usage;
  }

  try {
    if (check->parsed()) {
      std::vector<Formula> fs;
      if (!check_file.empty()) fs = read_formulas(check_file);
      for (const auto& s : check_formulas) fs.push_back(parse_formula(s));
      for (const auto& f : fs) {
        const auto st = analyze(f);
        out << print(f) << "\n";
        out << "  depth " << st.modal_depth << ", length " << st.length << ", fragment " << to_string(st.fragment)
            << "\n";
        out << "  variables: " << join({st.variables.begin(), st.variables.end()}, ", ") << "\n";
        out << "  agents: " << join({st.agents.begin(), st.agents.end()}, ", ") << "\n";
      }
      return Ok;
    }
    if (eval->parsed()) {
      const AnyModel m = load_model_file(eval_model);
      out << value_line(evaluate(m, eval_world, parse_formula(eval_formula))) << "\n";
      return Ok;
    }
    if (pr->parsed()) return prove(pa, out);
    if (tr->parsed()) {
      if (tr_mode == "delta-embed") {
        for (const auto& s : tr_formulas) out << print(delta_embed(parse_classical(s))) << "\n";
        return Ok;
      }
      std::vector<Formula> fs;
      if (!tr_file.empty()) fs = read_formulas(tr_file);
      for (const auto& s : tr_formulas) fs.push_back(parse_formula(s));
      const auto r = eliminate_constants(fs);
      for (const auto& w : r.warnings) err << "warning: " << w << "\n";
      for (const auto& f : r.translated) out << print(f) << "\n";
      out << "# length " << r.length_before << " -> " << r.length_after << "\n";
      return Ok;
    }
    if (mk->parsed()) {
      const auto chain = load_chain_file(mk_chain);
      const auto [f, v] = path_value(chain, parse_path(mk_path));
      out << print(f) << "\n" << value_line(v) << "\n";
      return Ok;
    }
    if (orc->parsed()) {
      const auto report = differential_run(random_corpus(cs), DecideOptions{}, ss);
      out << report.to_json() << "\n";
      return report.discrepancies.empty() ? Ok : NotValid;
    }
  } catch (const ParseError& e) {
    err << "parse error at " << e.position() << ": " << e.what() << "\n";
    return Usage;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    for (const auto& v : e.violations()) err << "  " << v << "\n";
    return Usage;
  } catch (const BudgetExceeded& e) {
    out << "UNKNOWN\nreason: " << e.what() << "\n";
    return Unknown;
  } catch (const BasisTooLarge& e) {
    out << "UNKNOWN\nreason: " << e.what() << "\n";
    return Unknown;
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return Unknown;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  }
  return Usage;
}

}  // namespace lukprob::cli
