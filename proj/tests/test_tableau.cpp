#include <random>

#include "doctest.h"
#include "lukprob/errors.hpp"
#include "lukprob/modelcheck.hpp"
#include "lukprob/oracle.hpp"
#include "lukprob/tableau.hpp"
#include "support/oracles.hpp"

using namespace lukprob;

namespace {

Verdict prove(const std::string& conclusion, const std::vector<std::string>& premises = {},
              DecideOptions opts = {}) {
  EntailmentQuery q;
  for (const auto& p : premises) q.premises.push_back(parse_formula(p));
  q.conclusion = parse_formula(conclusion);
  return decide(q, opts);
}

// Independent re-check of a countermodel at its root.
bool refutes(const Countermodel& cm, const std::string& conclusion, const std::vector<std::string>& premises = {}) {
  for (const auto& p : premises)
    if (evaluate(cm.model, std::string_view(cm.root), parse_formula(p)) != Rational(1)) return false;
  return evaluate(cm.model, std::string_view(cm.root), parse_formula(conclusion)) < Rational(1);
}

std::size_t find_constraint(const Branch& b, const Formula& f, Dir d) {
  for (std::size_t i = 0; i < b.formulaic.size(); ++i)
    if (b.formulaic[i].formula == f && b.formulaic[i].dir == d) return i;
  return b.formulaic.size();
}

}  // namespace

TEST_CASE("measure validities") {
  for (const char* c : {"Pr(p /\\ q) -> Pr(p)", "Pr(p \\/ q) -> (Pr(p) (+) Pr(q))", "(Pr(p) (.) Pr(q)) -> Pr(p /\\ q)",
                        "Pr(~p) <-> !Pr(p)", "Pr(p) -> Pr(p)", "[a](Pr(p) -> Pr(q)) -> [a]Pr(p) -> [a]Pr(q)"}) {
    INFO(c);
    CHECK(prove(c).kind == Verdict::Kind::Valid);
  }
}

TEST_CASE("refutation ships a checked countermodel") {
  const Verdict v = prove("Pr(p) -> Pr(p /\\ q)");
  REQUIRE(v.kind == Verdict::Kind::NotValid);
  const Countermodel& cm = *v.countermodel;
  CHECK(cm.model.frame.size() == 1);
  CHECK(measure_of(cm.model, "w0", parse_term("p")) == Rational(1));
  CHECK(measure_of(cm.model, "w0", parse_term("p /\\ q")) == Rational(0));
  CHECK(refutes(cm, "Pr(p) -> Pr(p /\\ q)"));
  CHECK(cm.conclusion_value == Rational(0));
}

TEST_CASE("modal refutations") {
  {
    const Verdict v = prove("[a]Pr(p) -> Pr(p)");
    REQUIRE(v.kind == Verdict::Kind::NotValid);
    CHECK(refutes(*v.countermodel, "[a]Pr(p) -> Pr(p)"));
  }
  {
    const Verdict v = prove("D Pr(p) -> [a]D Pr(p)");
    REQUIRE(v.kind == Verdict::Kind::NotValid);
    const auto& m = v.countermodel->model;
    CHECK(m.frame.size() == 2);
    CHECK(m.frame.pairs("a").size() == 1);
    CHECK(evaluate(m, "w0", parse_formula("D Pr(p)")) == Rational(1));
    CHECK(evaluate(m, m.frame.name(1), parse_formula("D Pr(p)")) == Rational(0));
  }
  {
    // Needs a world with no successors.
    const Verdict v = prove("Pr(p) | <a>T");
    REQUIRE(v.kind == Verdict::Kind::NotValid);
    CHECK(refutes(*v.countermodel, "Pr(p) | <a>T"));
  }
}

TEST_CASE("premises and satisfiability") {
  CHECK(prove("Pr(q)", {"Pr(p)", "Pr(p) -> Pr(q)"}).kind == Verdict::Kind::Valid);
  const Verdict v = prove("Pr(q)", {"Pr(p) -> Pr(q)"});
  REQUIRE(v.kind == Verdict::Kind::NotValid);
  CHECK(refutes(*v.countermodel, "Pr(q)", {"Pr(p) -> Pr(q)"}));

  const Verdict s = satisfiable({parse_formula("Pr(p) <-> 1/3"), parse_formula("<a>Pr(p)")});
  REQUIRE(s.kind == Verdict::Kind::NotValid);
  CHECK(evaluate(s.countermodel->model, "w0", parse_formula("Pr(p)")) == Rational(1, 3));
  CHECK(satisfiable({parse_formula("Pr(p /\\ q)"), parse_formula("!Pr(p)")}).kind == Verdict::Kind::Valid);
}

TEST_CASE("rules fire as described") {
  EntailmentQuery q;
  q.conclusion = parse_formula("Pr(p) -> Pr(p)");
  Tableau t(q, {});
  Branch root = t.root();
  const std::size_t before = root.numeric.size();
  const auto kids = t.step(root);
  REQUIRE(kids);
  REQUIRE(kids->size() == 2);
  // First child: 1 <= d next to d < 1; second child: the two atom bounds.
  CHECK((*kids)[0].numeric.size() == before + 1);
  CHECK(find_constraint((*kids)[1], parse_formula("Pr(p)"), Dir::Ge) < (*kids)[1].formulaic.size());
  CHECK(find_constraint((*kids)[1], parse_formula("Pr(p)"), Dir::Le) < (*kids)[1].formulaic.size());

  // ¬≤: w: ¬Pr(p) ≤ i becomes w: Pr(p) ≥ 1 − i.
  EntailmentQuery q2;
  q2.conclusion = parse_formula("!Pr(p)");
  Tableau t2(q2, {});
  Branch b2 = t2.root();
  REQUIRE(t2.step(b2));
  const std::size_t at = find_constraint(b2, parse_formula("Pr(p)"), Dir::Ge);
  REQUIRE(at < b2.formulaic.size());
  CHECK(b2.formulaic[at].bound == Poly(Rational(1)) - Poly::var(t2.d()));

  // □≤ creates a fresh successor; □≥ reaches it.
  EntailmentQuery q3;
  q3.premises = {parse_formula("[a]Pr(q)")};
  q3.conclusion = parse_formula("[a]Pr(p)");
  Tableau t3(q3, {});
  std::size_t saturated = 0;
  t3.saturate([&](Branch& b) {
    if (b.labels.size() == 2) {
      ++saturated;
      CHECK(b.relations.size() == 1);
      CHECK(find_constraint(b, parse_formula("Pr(p)"), Dir::Le) < b.formulaic.size());
      CHECK(find_constraint(b, parse_formula("Pr(q)"), Dir::Ge) < b.formulaic.size());
    }
    return true;
  });
  CHECK(saturated >= 1);
}

TEST_CASE("branch systems") {
  EntailmentQuery q;
  q.premises = {parse_formula("Pr(p)")};
  q.conclusion = parse_formula("!Pr(p /\\ q) (+) 1/2");
  Tableau t(q, {});
  bool seen = false;
  t.saturate([&](Branch& b) {
    const BranchSystem bs = t.branch_system(b);
    CHECK(bs.system.linear());
    CHECK(bs.system.blocks().size() == 1);
    CHECK(bs.system.blocks()[0].basis == std::vector<std::string>{"p", "q"});
    for (const auto& [key, x] : bs.atom_vars) CHECK(bs.system.name(x).rfind("x__w0__", 0) == 0);
    seen = true;
    return true;
  });
  CHECK(seen);

  EntailmentQuery nl;
  nl.conclusion = parse_formula("Pr(p) * Pr(q)");
  Tableau tn(nl, {});
  bool bilinear = false;
  tn.saturate([&](Branch& b) {
    bilinear = bilinear || !tn.branch_system(b).system.linear();
    return true;
  });
  CHECK(bilinear);
}

TEST_CASE("fragment gates and budgets") {
  EntailmentQuery q;
  q.conclusion = parse_formula("Pr(p) * Pr(q) -> Pr(p)");
  q.frame_mode = FrameMode::Any;
  CHECK_THROWS_AS(decide(q), FragmentError);
  q.conclusion = parse_formula("Pr(p /\\ q) -> Pr(p)");
  CHECK(decide(q).kind == Verdict::Kind::Valid);

  DecideOptions vars;
  vars.atoms_as_variables = true;
  CHECK_THROWS_AS(prove("Pr(p /\\ q) -> Pr(p)", {}, vars), FragmentError);
  CHECK(prove("Pr(p) -> Pr(p)", {}, vars).kind == Verdict::Kind::Valid);
  const Verdict v = prove("Pr(p) -> Pr(q)", {}, vars);
  REQUIRE(v.kind == Verdict::Kind::NotValid);
  CHECK(refutes(*v.countermodel, "Pr(p) -> Pr(q)"));

  DecideOptions tiny;
  tiny.max_branches = 1;
  CHECK_THROWS_AS(prove("(Pr(p) -> Pr(q)) -> (Pr(q) -> Pr(r)) -> Pr(s)", {}, tiny), BudgetExceeded);

  DecideOptions lp;
  lp.backend = Backend::Lp;
  CHECK(prove("Pr(p) -> Pr(p) * Pr(p)", {}, lp).kind == Verdict::Kind::Unknown);
}

TEST_CASE("nonlinear decisions") {
  CHECK(prove("(Pr(p) * Pr(q)) -> Pr(p)").kind == Verdict::Kind::Valid);
  CHECK(prove("(Pr(p) ~> Pr(q)) -> (Pr(p) -> Pr(q))").kind == Verdict::Kind::Valid);
  CHECK(prove("Pr(p) ~> Pr(p)").kind == Verdict::Kind::Valid);
  const Verdict v = prove("Pr(p) -> (Pr(p) * Pr(p))");
  REQUIRE(v.kind == Verdict::Kind::NotValid);
  CHECK(refutes(*v.countermodel, "Pr(p) -> (Pr(p) * Pr(p))"));
}

TEST_CASE("label depth stays within modal depth plus one") {
  const auto corpus = random_corpus({.instances = 60, .max_depth = 2, .seed = 99});
  for (const auto& q : corpus) {
    std::vector<Formula> all = q.premises;
    all.push_back(q.conclusion);
    const Verdict v = decide(q);
    CHECK(v.max_label_depth <= analyze(all).modal_depth + 1);
  }
}

TEST_CASE("every refutation on a random corpus re-checks independently") {
  const auto corpus = random_corpus({.instances = 80, .max_depth = 2, .max_premises = 2, .seed = 5});
  for (const auto& q : corpus) {
    const Verdict v = decide(q);
    CHECK(v.kind != Verdict::Kind::Unknown);
    if (v.kind != Verdict::Kind::NotValid) continue;
    const auto& m = v.countermodel->model;
    Interpretation interp(m);
    for (const auto& p : q.premises) CHECK(interp.value(0, p) == Rational(1));
    CHECK(interp.value(0, q.conclusion) < Rational(1));
  }
}
