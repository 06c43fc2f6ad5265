// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lukprob/errors.hpp"
#include "lukprob/modelcheck.hpp"
#include "lukprob/oracle.hpp"
#include "lukprob/reductions.hpp"
#include "lukprob/solver.hpp"
#include "lukprob/tableau.hpp"
#include "support/oracles.hpp"

#ifndef LUKPROB_TEST_DATA
#define LUKPROB_TEST_DATA "data"
#endif

using namespace lukprob;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> failures;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

std::string data(const std::string& file) { return std::string(LUKPROB_TEST_DATA) + "/" + file; }

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const Rational kOne(1);
const Rational kZero(0);

bool refutes(const CanonicalModel& m, const std::string& root, const EntailmentQuery& q) {
  Interpretation interp(m);
  for (const auto& p : q.premises)
    if (interp.value(std::string_view(root), p) != kOne) return false;
  return interp.value(std::string_view(root), q.conclusion) < kOne;
}

EntailmentQuery query(const std::string& conclusion) {
  EntailmentQuery q;
  q.conclusion = parse_formula(conclusion);
  return q;
}

// 1
Outcome example_values() {
  Outcome o;
  const ProbModel m = std::get<ProbModel>(load_model_file(data("example1.json")));
  const Formula atom = parse_formula("Pr(~S /\\ I)");
  const Formula down = parse_formula("Pr(~S /\\ I) -> [a]Pr(~S /\\ I)");
  const Formula same = parse_formula("Pr(~S /\\ I) <-> [a]Pr(~S /\\ I)");
  struct Row {
    const char* world;
    const Formula* f;
    Rational want;
  };
  const std::vector<Row> rows{{"s_L", &atom, Rational(4, 5)},  {"s_nL", &atom, Rational(1, 5)},
                              {"s_L", &down, Rational(2, 5)},  {"s_nL", &down, Rational(1)},
                              {"s_L", &same, Rational(2, 5)},  {"s_nL", &same, Rational(2, 5)}};
  std::ostringstream d;
  for (const auto& r : rows) {
    const Rational got = evaluate(m, r.world, *r.f);
    o.expect(got == r.want, std::string(r.world) + ": " + print(*r.f) + " = " + got.str());
    d << got.str() << ' ';
  }
  o.detail = "values " + d.str();
  return o;
}

// 2
Outcome identity_suite() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::size_t pairs = 0;
  const auto in_range = [](const Rational& v) { return kZero <= v && v <= kOne; };
  for (int i = 0; i < 1200; ++i) {
    const ProbModel m = testsupport::random_model(rng, 1 + rng() % 5, 3);
    const Formula f = testsupport::random_formula(rng, 3, 1 + static_cast<int>(rng() % 7));
    const Formula g = testsupport::random_formula(rng, 3, 1 + static_cast<int>(rng() % 7));
    Interpretation in(m);
    const auto& a = in.values(f);
    const auto& b = in.values(g);
    const std::string tag = print(f) + " ; " + print(g);
    for (WorldId w = 0; w < m.frame.size(); ++w) {
      const Rational x = a[w], y = b[w];
      o.expect(in_range(x) && in_range(y), "range " + tag);
      o.expect(in.value(w, Formula::neg(f)) == kOne - x, "neg " + tag);
      o.expect(in.value(w, Formula::neg(Formula::neg(f))) == x, "double negation " + tag);
      o.expect(in.value(w, Formula::impl(f, g)) == min(kOne, kOne - x + y), "impl " + tag);
      o.expect(in.value(w, Formula::prod(f, g)) == x * y, "prod " + tag);
      o.expect(in.value(w, Formula::prod_impl(f, g)) == (x <= y ? kOne : y / x), "prod impl " + tag);
      o.expect(in.value(w, Formula::oplus(f, g)) == min(kOne, x + y), "oplus " + tag);
      o.expect(in.value(w, Formula::oplus(f, g)) == in.value(w, Formula::impl(Formula::neg(f), g)), "oplus def " + tag);
      o.expect(in.value(w, Formula::odot(f, g)) == max(kZero, x + y - kOne), "odot " + tag);
      o.expect(in.value(w, Formula::max(f, g)) == max(x, y), "max " + tag);
      o.expect(in.value(w, Formula::max(f, g)) == in.value(w, Formula::impl(Formula::impl(f, g), g)), "max def " + tag);
      o.expect(in.value(w, Formula::min(f, g)) == min(x, y), "min " + tag);
      o.expect(in.value(w, Formula::equiv(f, g)) == kOne - abs(x - y), "equiv " + tag);
      const Rational dx = in.value(w, Formula::delta(f));
      o.expect(dx == (x == kOne ? kOne : kZero), "delta " + tag);
      o.expect(in.value(w, Formula::diamond("a", f)) == in.value(w, Formula::neg(Formula::box("a", Formula::neg(f)))),
               "diamond " + tag);
      Rational inf = kOne;
      const auto succ = m.frame.successors("a", w);
      for (WorldId u : succ) inf = min(inf, a[u]);
      o.expect(in.value(w, Formula::box("a", f)) == inf, "box " + tag);
      if (succ.empty()) {
        o.expect(in.value(w, Formula::box("a", Formula::bottom())) == kOne, "empty box " + tag);
        o.expect(in.value(w, Formula::diamond("a", Formula::top())) == kZero, "empty diamond " + tag);
      }
    }
    ++pairs;
  }
  o.detail = std::to_string(pairs) + " pairs";
  return o;
}

// 3
Outcome measure_validities() {
  Outcome o;
  for (const char* c : {"Pr(p /\\ q) -> Pr(p)", "Pr(p \\/ q) -> (Pr(p) (+) Pr(q))", "(Pr(p) (.) Pr(q)) -> Pr(p /\\ q)",
                        "Pr(~p) <-> !Pr(p)"}) {
    const Verdict v = decide(query(c));
    o.expect(v.kind == Verdict::Kind::Valid, std::string(c) + " is " + to_string(v.kind));
  }
  const EntailmentQuery bad = query("Pr(p) -> Pr(p /\\ q)");
  const Verdict v = decide(bad);
  o.expect(v.kind == Verdict::Kind::NotValid, "refutation verdict " + to_string(v.kind));
  if (v.countermodel) {
    o.expect(validate(v.countermodel->model).empty(), "countermodel does not validate");
    o.expect(refutes(v.countermodel->model, v.countermodel->root, bad), "countermodel does not refute");
    const AnyModel again = load_model(dump_model(AnyModel{v.countermodel->model}));
    o.expect(evaluate(again, v.countermodel->root, bad.conclusion) < kOne, "reloaded countermodel does not refute");
  }
  o.detail = "4 valid, 1 refuted";
  return o;
}

// 4
Outcome delta_embedding() {
  Outcome o;
  const std::vector<const char*> valid{"[a](p -> q) -> [a]p -> [a]q",
                                       "[a](p & q) -> [a]p",
                                       "[a]p & [a]q -> [a](p & q)",
                                       "<a>(p | q) -> <a>p | <a>q",
                                       "[a]p -> [a](q -> p)",
                                       "<a>F -> F",
                                       "[a](p -> p)",
                                       "[a]p & <a>q -> <a>(p & q)",
                                       "p -> p",
                                       "[a]p | <a>!p",
                                       "[a][b](p -> q) -> [a][b]p -> [a][b]q",
                                       "<a>[b]p & [a][b]q -> <a>[b](p & q)"};
  const std::vector<const char*> invalid{"p -> [a]p",       "[a]p -> p", "<a>p -> [a]p", "[a]p -> [b]p",
                                         "[a]<a>p -> <a>p", "<a>p & <a>q -> <a>(p & q)"};
  std::size_t agree = 0, projected = 0;
  const auto run = [&](const char* text, bool expect_valid) {
    const ClassicalFormula f = parse_classical(text);
    const KResult k = classical_k_decide(f);
    o.expect(k.valid == expect_valid, std::string("K tableau on ") + text);
    EntailmentQuery q;
    q.conclusion = delta_embed(f);
    const Verdict v = decide(q);
    const bool same = (v.kind == Verdict::Kind::Valid) == k.valid && v.kind != Verdict::Kind::Unknown;
    o.expect(same, std::string("disagreement on ") + text + ": " + to_string(v.kind));
    agree += same;
    if (v.kind != Verdict::Kind::NotValid || !v.countermodel) return;
    const CanonicalModel& m = v.countermodel->model;
    const auto vars = variables(f);
    Interpretation in(m);
    for (const auto& p : vars)
      for (const Rational& x : in.values(Formula::delta(Formula::pr(BooleanTerm::var(p)))))
        o.expect(x == kZero || x == kOne, std::string("non-crisp delta value in ") + text);
    const KModel km = project_delta(m, vars);
    const bool refuted = !holds(km, m.frame.id(v.countermodel->root), f);
    o.expect(refuted, std::string("projection does not refute ") + text);
    projected += refuted;
  };
  for (const char* t : valid) run(t, true);
  for (const char* t : invalid) run(t, false);
  o.detail = std::to_string(agree) + "/18 agree, " + std::to_string(projected) + "/6 projected";
  return o;
}

// 5
Outcome differential() {
  Outcome o;
  const auto corpus = random_corpus({.instances = 300, .max_depth = 2, .vars = 3, .agents = 2, .max_denominator = 4,
                                     .seed = 20240601});
  const SearchSpace space{};
  std::size_t valid = 0, refuted = 0, unknown = 0, witnessed = 0;
  for (const auto& q : corpus) {
    std::vector<Formula> all = q.premises;
    all.push_back(q.conclusion);
    const auto st = analyze(all);
    o.expect(in_additive(st.fragment) && st.modal_depth <= 2 && st.variables.size() <= 3 && st.agents.size() <= 2,
             "corpus shape " + print(q.conclusion));
    const Verdict v = decide(q);
    if (v.kind == Verdict::Kind::Unknown) {
      ++unknown;
      o.expect(false, "UNKNOWN on " + print(q.conclusion));
    } else if (v.kind == Verdict::Kind::NotValid) {
      ++refuted;
      o.expect(v.countermodel && refutes(v.countermodel->model, v.countermodel->root, q),
               "countermodel fails re-check on " + print(q.conclusion));
    } else {
      ++valid;
      const auto cm = search_countermodel(q, space);
      if (cm) {
        ++witnessed;
        o.expect(false, "VALID but oracle refutes " + print(q.conclusion));
      }
    }
  }
  o.detail = std::to_string(valid) + " valid, " + std::to_string(refuted) + " not valid, " + std::to_string(unknown) +
             " unknown, " + std::to_string(witnessed) + " oracle conflicts";
  return o;
}

// 6
std::size_t nonzero(const CoherenceBlock& b, const std::vector<Rational>& x) {
  return static_cast<std::size_t>(
      std::count_if(b.weight_vars.begin(), b.weight_vars.end(), [&](VarId u) { return x[u].sign() != 0; }));
}

Rational marginal(const std::vector<std::string>& names, const std::vector<Rational>& mu, const BooleanTerm& t) {
  Rational s;
  for (std::size_t k = 0; k < mu.size(); ++k)
    if (mu[k].sign() != 0 && t.holds([&](const std::string& n) {
          const auto i = static_cast<std::size_t>(std::find(names.begin(), names.end(), n) - names.begin());
          return ((k >> i) & 1U) != 0;
        }))
      s += mu[k];
  return s;
}

Outcome coherence() {
  Outcome o;
  std::mt19937_64 rng(606);
  std::size_t accepted = 0, rejected = 0, max_support = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = 1 + rng() % 10;
    const auto names = testsupport::prop_names(m);
    const std::size_t cols = std::size_t{1} << m;
    std::vector<Rational> mu(cols);
    const long den = 24;
    for (long k = 0; k < den; ++k) mu[rng() % cols] += Rational(1, den);
    ConstraintSystem sys;
    std::vector<BooleanTerm> atoms;
    std::vector<VarId> vars;
    const std::size_t r = 1 + rng() % 5;
    for (std::size_t a = 0; a < r; ++a) {
      BooleanTerm t = testsupport::random_term(rng, m, 4).desugar();
      if (a == 0) {
        // Make sure every prop is mentioned at least once.
        t = BooleanTerm::var(names[0]);
        for (std::size_t p = 1; p < m; ++p) t = BooleanTerm::meet(t, BooleanTerm::var(names[p]));
      }
      atoms.push_back(t);
      vars.push_back(sys.add_var("x" + std::to_string(a)));
      sys.add_row(Poly::var(vars.back()), Rel::Eq, Poly(marginal(names, mu, t)));
    }
    const auto& b = build_coherence(sys, "w", atoms, vars);
    const Feasibility f = lp_feasible(sys);
    o.expect(f.feasible(), "exact marginals rejected (m=" + std::to_string(m) + ")");
    if (!f.feasible()) continue;
    ++accepted;
    o.expect(sys.satisfied_by(f.witness), "witness fails re-check");
    const std::size_t rows = atoms.size() + 1;
    const std::size_t support = nonzero(b, f.witness);
    max_support = std::max(max_support, support);
    o.expect(support <= rows, "support " + std::to_string(support) + " > rows " + std::to_string(rows));
  }
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = 2 + rng() % 9;
    const BooleanTerm a = testsupport::random_term(rng, m, 3).desugar();
    const BooleanTerm c = testsupport::random_term(rng, m, 3).desugar();
    const Rational xa(static_cast<long>(rng() % 11), 10), xc(static_cast<long>(rng() % 11), 10);
    const Rational lo = max(kZero, xa + xc - kOne), hi = min(xa, xc);
    Rational xac;
    if (hi < kOne && (lo.sign() == 0 || rng() & 1))
      xac = hi + (kOne - hi) * Rational(1 + static_cast<long>(rng() % 4), 4);
    else
      xac = lo * Rational(static_cast<long>(rng() % 4), 4);
    ConstraintSystem sys;
    const VarId va = sys.add_var("xa"), vc = sys.add_var("xc"), vac = sys.add_var("xac");
    sys.add_row(Poly::var(va), Rel::Eq, Poly(xa));
    sys.add_row(Poly::var(vc), Rel::Eq, Poly(xc));
    sys.add_row(Poly::var(vac), Rel::Eq, Poly(xac));
    build_coherence(sys, "w", {a, c, BooleanTerm::meet(a, c)}, {va, vc, vac});
    const bool infeasible = lp_feasible(sys).infeasible();
    o.expect(infeasible, "Frechet violation accepted");
    rejected += infeasible;
  }
  o.detail = std::to_string(accepted) + "/100 accepted, " + std::to_string(rejected) +
             "/100 rejected, max support " + std::to_string(max_support);
  return o;
}

// 7
Outcome markov_paths() {
  Outcome o;
  const MarkovChain c = load_chain_file(data("chain3.json"));
  const ProbModel frame = markov_to_frame(c);
  std::size_t one = 0, two = 0;
  for (long i = 1; i <= 3; ++i)
    for (long j = 1; j <= 3; ++j) {
      const Rational step = c.start[i - 1] * c.transition[i - 1][j - 1];
      const auto [f, v] = path_value(c, {i, j});
      o.expect(v == step && evaluate(frame, "0", f) == step, "path " + std::to_string(i) + std::to_string(j));
      one += v == step;
      for (long k = 1; k <= 3; ++k) {
        const Rational want = step * c.transition[j - 1][k - 1];
        const auto [g, x] = path_value(c, {i, j, k});
        const bool ok = x == want && evaluate(frame, "0", g) == want;
        o.expect(ok, "path " + std::to_string(i) + std::to_string(j) + std::to_string(k));
        two += ok;
      }
    }
  o.detail = std::to_string(two) + "/27 length 2, " + std::to_string(one) + "/9 length 1";
  return o;
}

// 8
Outcome constant_elimination() {
  Outcome o;
  std::mt19937_64 rng(808);
  std::vector<double> xs, ys;
  std::size_t same = 0, tries = 0;
  while (xs.size() < 50 && tries < 5000) {
    ++tries;
    const auto corpus = random_corpus({.instances = 1, .max_depth = 1, .vars = 2, .agents = 1,
                                       .max_denominator = 1 + static_cast<long>(rng() % 4), .max_premises = 1,
                                       .seed = rng()});
    std::vector<Formula> gamma = corpus[0].premises;
    gamma.push_back(corpus[0].conclusion);
    const ConstantEliminationResult r = eliminate_constants(gamma);
    if (!r.changed) continue;
    const auto st = analyze(gamma);
    o.expect(st.agents.size() <= 1, "not mono-modal");
    const Verdict before = satisfiable(gamma), after = satisfiable(r.translated);
    const bool agree = before.kind == after.kind && before.kind != Verdict::Kind::Unknown;
    o.expect(agree, "verdicts differ on " + print(gamma.back()));
    same += agree;
    if (after.kind == Verdict::Kind::NotValid && after.countermodel) {
      Interpretation in(after.countermodel->model);
      for (const auto& f : r.translated)
        o.expect(in.value(std::string_view(after.countermodel->root), f) == kOne, "model misses " + print(f));
    }
    xs.push_back(static_cast<double>(std::max<std::size_t>(st.length, static_cast<std::size_t>(r.denominator))));
    ys.push_back(static_cast<double>(r.length_after));
  }
  o.expect(xs.size() == 50, "only " + std::to_string(xs.size()) + " constant-bearing instances");
  // Least-squares fit of log(size) = log(c) + k log(max(len, n)).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = (n * sxy - sx * sy) / std::max(1e-12, n * sxx - sx * sx);
  const double exponent = std::max(1.0, std::ceil(k * 2) / 2);
  double c = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) c = std::max(c, ys[i] / std::pow(xs[i], exponent));
  o.expect(exponent <= 3, "fitted degree " + std::to_string(exponent));
  for (std::size_t i = 0; i < xs.size(); ++i) o.expect(ys[i] <= c * std::pow(xs[i], exponent) + 1e-9, "size bound");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu/%zu agree, size <= %.2f * x^%.1f (slope %.2f, max size %.0f)", same, xs.size(), c,
                exponent, k, xs.empty() ? 0.0 : *std::max_element(ys.begin(), ys.end()));
  o.detail = buf;
  return o;
}

// 9
Outcome nonlinear() {
  Outcome o;
  const auto corpus =
      random_corpus({.instances = 30, .max_depth = 1, .vars = 2, .agents = 1, .nonlinear = true, .seed = 909});
  std::size_t unknown = 0, systems = 0, witnessed = 0;
  for (const auto& q : corpus) {
    DecideOptions opts;
    opts.on_system = [&](const ConstraintSystem& sys, const Feasibility& f) {
      ++systems;
      const std::string text = export_smtlib(sys);
      const testsupport::SmtProblem p = testsupport::read_smtlib(text);
      o.expect(p.logic == "QF_NRA" && p.check_sat, "SMT-LIB header");
      o.expect(p.vars.size() == sys.num_vars(), "SMT-LIB declarations");
      o.expect(p.asserts.size() >= sys.all_rows().size(), "SMT-LIB assertions");
      if (f.feasible()) o.expect(testsupport::smt_agrees(p, sys, f.witness), "SMT-LIB disagrees with witness");
    };
    const Verdict v = decide(q, opts);
    unknown += v.kind == Verdict::Kind::Unknown;
    if (v.kind == Verdict::Kind::NotValid)
      o.expect(v.countermodel && refutes(v.countermodel->model, v.countermodel->root, q),
               "countermodel fails re-check on " + print(q.conclusion));
    const auto cm = search_countermodel(q, SearchSpace{});
    if (cm) {
      ++witnessed;
      o.expect(v.kind != Verdict::Kind::Valid, "VALID but oracle refutes " + print(q.conclusion));
    }
  }
  const double rate = static_cast<double>(unknown) / static_cast<double>(corpus.size());
  o.expect(rate <= 0.2, "UNKNOWN rate too high");
  o.expect(systems > 0, "no systems seen");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu queries, UNKNOWN rate %.1f%%, %zu oracle witnesses, %zu systems re-parsed",
                corpus.size(), 100 * rate, witnessed, systems);
  o.detail = buf;
  return o;
}

// 10
ProbModel scaling_model(std::size_t worlds, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ProbModel m;
  for (std::size_t w = 0; w < worlds; ++w) m.add_world("w" + std::to_string(w));
  for (const auto& p : testsupport::prop_names(3)) {
    m.add_prop(p);
    for (std::size_t w = 0; w < worlds; ++w)
      if (rng() & 1) m.set_true(p, w);
  }
  for (std::size_t w = 0; w < worlds; ++w) {
    for (int e = 0; e < 3; ++e) m.frame.add_edge(e == 0 ? "a" : "b", w, rng() % worlds);
    const std::size_t base = rng() % worlds;
    for (std::size_t e = 0; e < 4; ++e) m.set_weight(w, (base + e) % worlds, Rational(1, 4));
  }
  return m;
}

double time_eval(const ProbModel& m, const Formula& f) {
  double best = 1e9;
  for (int rep = 0; rep < 3; ++rep) {
    const auto t0 = Clock::now();
    Interpretation in(m);
    const Rational v = in.value(WorldId{0}, f);
    best = std::min(best, seconds_since(t0));
    if (v < kZero) return -1;
  }
  return best;
}

Outcome scaling() {
  Outcome o;
  const Formula f = parse_formula(
      "[a](Pr(p /\\ ~q) -> <b>(Pr(q \\/ r) (+) [a]Pr(p))) & <b>[a](Pr(r) * 1/3 ~> <a>Pr(~p /\\ q))");
  o.expect(modal_depth(f) == 3, "formula depth " + std::to_string(modal_depth(f)));
  const ProbModel small = scaling_model(1000, 10), large = scaling_model(2000, 10);
  o.expect(validate(small).empty() && validate(large).empty(), "generated model invalid");
  const double t1 = time_eval(small, f), t2 = time_eval(large, f);
  o.expect(t1 >= 0 && t1 < 1.0, "1000 worlds took too long");
  const double ratio = t2 / std::max(t1, 1e-4);
  o.expect(ratio <= 4.0, "doubling ratio too high");
  char buf[128];
  std::snprintf(buf, sizeof buf, "1000 worlds %.4fs, 2000 worlds %.4fs, ratio %.2f", t1, t2, ratio);
  o.detail = buf;
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "example values", 1, example_values},
      {2, "identity suite", 30, identity_suite},
      {3, "measure validities", 10, measure_validities},
      {4, "delta embedding vs classical K", 60, delta_embedding},
      {5, "differential run on the additive fragment", 300, differential},
      {6, "coherence LP", 60, coherence},
      {7, "Markov paths", 10, markov_paths},
      {8, "constant elimination", 300, constant_elimination},
      {9, "nonlinear fragment", 300, nonlinear},
      {10, "model-checking scaling", 60, scaling},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    if (t > c.limit) {
      o.ok = false;
      o.failures.push_back("over the " + std::to_string(static_cast<int>(c.limit)) + " s limit");
    }
    failed += !o.ok;
    char head[160];
    std::snprintf(head, sizeof head, "%s [%d] %s (%.2fs, limit %gs)", o.ok ? "PASS" : "FAIL", c.id, c.name, t, c.limit);
    std::cout << head << ": " << o.detail << '\n';
    for (const auto& f : o.failures) std::cout << "    " << f << '\n';
    std::cout.flush();
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << '/' << criteria.size() << '\n';
  return failed ? 1 : 0;
}
