#include <random>

#include "doctest.h"
#include "lukprob/errors.hpp"
#include "lukprob/solver.hpp"
#include "support/oracles.hpp"

using namespace lukprob;

namespace {

Poly X(VarId v) { return Poly::var(v); }
Poly C(long n, long d = 1) { return Poly(Rational(n, d)); }

std::size_t nonzero_weights(const CoherenceBlock& b, const std::vector<Rational>& x) {
  std::size_t n = 0;
  for (VarId u : b.weight_vars) n += x[u].sign() != 0;
  return n;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const Poly p = X(0) * X(1) + X(0) * C(2) - C(1, 2);
  CHECK(p.degree() == 2);
  CHECK(!p.is_linear());
  CHECK(p.constant() == Rational(-1, 2));
  CHECK(p.coefficient({0, 1}) == Rational(1));
  CHECK(p.eval({Rational(1, 2), Rational(1, 3)}) == Rational(1, 6) + Rational(1) - Rational(1, 2));
  CHECK(X(1) * X(0) == X(0) * X(1));
  CHECK((X(0) - X(0)).terms().empty());
  const Poly s = p.substitute({std::nullopt, Rational(0)});
  CHECK(s == X(0) * C(2) - C(1, 2));
  CHECK(p.variables() == std::vector<VarId>{0, 1});
}

TEST_CASE("coherence incidence") {
  ConstraintSystem sys;
  const VarId xp = sys.add_var("xp"), xpq = sys.add_var("xpq");
  const auto& b = build_coherence(sys, "w", {parse_term("p"), parse_term("p /\\ q")}, {xp, xpq});
  REQUIRE(b.weight_vars.size() == 4);
  CHECK(b.basis == std::vector<std::string>{"p", "q"});
  CHECK(b.word(0) == "11");
  CHECK(b.word(3) == "00");
  CHECK(b.incidence[0] == std::vector<bool>{true, true, false, false});
  CHECK(b.incidence[1] == std::vector<bool>{true, false, false, false});
  CHECK(sys.name(b.weight_vars[1]) == "u__w__10");
}

TEST_CASE("tautologies and contradictions are forced") {
  for (const auto& [term, want] : {std::pair{"p \\/ ~p", 1L}, std::pair{"p /\\ ~p", 0L}}) {
    ConstraintSystem sys;
    const VarId x = sys.add_var("x");
    build_coherence(sys, "w", {parse_term(term).desugar()}, {x});
    CHECK(lp_feasible(sys).witness[x] == Rational(want));
    sys.add_row(X(x), Rel::Eq, C(1, 2));
    CHECK(lp_feasible(sys).infeasible());
  }
}

TEST_CASE("basis cap") {
  ConstraintSystem sys;
  std::vector<BooleanTerm> atoms;
  std::vector<VarId> vars;
  for (int i = 0; i < 4; ++i) {
    atoms.push_back(BooleanTerm::var("v" + std::to_string(i)));
    vars.push_back(sys.add_var("x" + std::to_string(i)));
  }
  CHECK_THROWS_AS(build_coherence(sys, "w", atoms, vars, 3), BasisTooLarge);
}

TEST_CASE("linear examples") {
  {
    ConstraintSystem sys;
    const VarId x = sys.add_var("x");
    sys.add_row(X(x), Rel::Le, C(1, 2));
    sys.add_row(C(1, 2), Rel::Le, X(x));
    const auto f = lp_feasible(sys);
    REQUIRE(f.feasible());
    CHECK(f.witness[x] == Rational(1, 2));
  }
  {
    ConstraintSystem sys;
    const VarId x = sys.add_var("x");
    sys.add_row(X(x), Rel::Lt, X(x));
    CHECK(lp_feasible(sys).infeasible());
  }
  {
    ConstraintSystem sys;
    const VarId x = sys.add_var("x");
    sys.add_row(X(x), Rel::Lt, C(1));
    sys.add_row(C(1), Rel::Le, X(x));
    CHECK(lp_feasible(sys).infeasible());
  }
  {
    ConstraintSystem sys;
    const VarId x = sys.add_var("x");
    sys.add_row(X(x), Rel::Lt, C(1));
    const auto f = lp_feasible(sys);
    REQUIRE(f.feasible());
    CHECK(f.witness[x] < Rational(1));
  }
  {
    ConstraintSystem sys;
    const VarId xp = sys.add_var("xp"), xq = sys.add_var("xq"), xpq = sys.add_var("xpq");
    build_coherence(sys, "w", {parse_term("p"), parse_term("q"), parse_term("p /\\ q")}, {xp, xq, xpq});
    sys.add_row(X(xp), Rel::Eq, C(1, 2));
    sys.add_row(X(xq), Rel::Eq, C(1, 2));
    sys.add_row(X(xpq), Rel::Eq, C(9, 10));
    CHECK(lp_feasible(sys).infeasible());
  }
  {
    ConstraintSystem sys;
    const VarId x = sys.add_var("x");
    sys.add_row(X(x) * X(x), Rel::Le, C(1));
    CHECK_THROWS_AS(lp_feasible(sys), std::invalid_argument);
  }
}

TEST_CASE("simplex on a small program") {
  // x + y <= 1, x - y = 1/2, y >= 1/8
  LinearProgram lp;
  lp.num_vars = 2;
  lp.rows.push_back({{{0, Rational(1)}, {1, Rational(1)}}, Rel::Le, Rational(1)});
  lp.rows.push_back({{{0, Rational(1)}, {1, Rational(-1)}}, Rel::Eq, Rational(1, 2)});
  lp.rows.push_back({{{1, Rational(-1)}}, Rel::Le, Rational(-1, 8)});
  const auto r = solve_lp(lp);
  REQUIRE(r.feasible);
  CHECK(r.x[0] + r.x[1] <= Rational(1));
  CHECK(r.x[0] - r.x[1] == Rational(1, 2));
  CHECK(r.x[1] >= Rational(1, 8));
}

TEST_CASE("coherent marginals are accepted with small support") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 60; ++i) {
    const std::size_t props = 1 + rng() % 4;
    const std::size_t cols = std::size_t{1} << props;
    // A random measure on assignments, then the exact marginals of random terms.
    std::vector<Rational> mu(cols);
    long total = 0;
    std::vector<long> c(cols);
    for (auto& v : c) total += (v = static_cast<long>(rng() % 5));
    if (total == 0) c[0] = total = 1;
    for (std::size_t k = 0; k < cols; ++k) mu[k] = Rational(c[k], total);
    const auto names = testsupport::prop_names(props);
    ConstraintSystem sys;
    std::vector<BooleanTerm> atoms;
    std::vector<VarId> vars;
    for (int a = 0; a < 3; ++a) {
      const BooleanTerm t = testsupport::random_term(rng, props).desugar();
      Rational marginal;
      for (std::size_t k = 0; k < cols; ++k)
        if (t.holds([&](const std::string& n) {
              const auto idx = static_cast<std::size_t>(std::find(names.begin(), names.end(), n) - names.begin());
              return ((k >> idx) & 1U) != 0;
            }))
          marginal += mu[k];
      atoms.push_back(t);
      vars.push_back(sys.add_var("x" + std::to_string(a)));
      sys.add_row(X(vars.back()), Rel::Eq, Poly(marginal));
    }
    const auto& b = build_coherence(sys, "w", atoms, vars);
    const auto f = lp_feasible(sys);
    REQUIRE(f.feasible());
    CHECK(sys.satisfied_by(f.witness));
    CHECK(nonzero_weights(b, f.witness) <= atoms.size() + 1);
  }
}

TEST_CASE("reduce_support keeps marginals") {
  ConstraintSystem sys;
  const VarId xp = sys.add_var("xp"), xq = sys.add_var("xq");
  const auto& b = build_coherence(sys, "w", {parse_term("p"), parse_term("q")}, {xp, xq});
  std::vector<Rational> x(sys.num_vars());
  x[xp] = Rational(1, 2);
  x[xq] = Rational(1, 2);
  for (VarId u : b.weight_vars) x[u] = Rational(1, 4);
  CHECK(sys.satisfied_by(x));
  reduce_support(b, x);
  CHECK(sys.satisfied_by(x));
  CHECK(nonzero_weights(b, x) <= 3);
}

TEST_CASE("bilinear examples") {
  {
    ConstraintSystem sys;
    const VarId x = sys.add_var("x");
    sys.add_row(X(x) * X(x), Rel::Eq, C(1, 4));
    const auto f = poly_feasible(sys);
    REQUIRE(f.feasible());
    CHECK(f.witness[x] == Rational(1, 2));
  }
  {
    ConstraintSystem sys;
    const VarId x = sys.add_var("x"), y = sys.add_var("y");
    sys.add_row(C(1, 2), Rel::Le, X(x) * X(y));
    sys.add_row(X(x), Rel::Le, C(7, 10));
    sys.add_row(X(y), Rel::Le, C(7, 10));
    CHECK(poly_feasible(sys).infeasible());
  }
  {
    ConstraintSystem sys;
    const VarId x = sys.add_var("x");
    sys.add_row(X(x) * X(x), Rel::Lt, C(0));
    CHECK(poly_feasible(sys).infeasible());
  }
  {
    // k·j1 ≤ j2 with j2 = 0 and k ≥ 1/2 forces j1 = 0.
    ConstraintSystem sys;
    const VarId k = sys.add_var("k"), j1 = sys.add_var("j1"), j2 = sys.add_var("j2");
    sys.add_row(X(k) * X(j1), Rel::Le, X(j2));
    sys.add_row(X(j2), Rel::Eq, C(0));
    sys.add_row(C(1, 2), Rel::Le, X(k));
    sys.add_row(C(1, 3), Rel::Le, X(j1));
    CHECK(poly_feasible(sys).infeasible());
  }
}

TEST_CASE("poly_feasible agrees with lp_feasible on linear systems") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 150; ++i) {
    ConstraintSystem sys;
    const std::size_t n = 1 + rng() % 3;
    for (std::size_t v = 0; v < n; ++v) sys.add_var("v" + std::to_string(v));
    const std::size_t rows = 1 + rng() % 4;
    for (std::size_t r = 0; r < rows; ++r) {
      Poly left;
      for (std::size_t v = 0; v < n; ++v) left += X(v) * Rational(static_cast<long>(rng() % 5) - 2, 2);
      const Rel rel = static_cast<Rel>(rng() % 3);
      sys.add_row(left, rel, C(static_cast<long>(rng() % 5) - 2, 3));
    }
    const auto a = lp_feasible(sys), b = poly_feasible(sys);
    CHECK(a.status == b.status);
    if (b.feasible()) CHECK(sys.satisfied_by(b.witness));
  }
}

TEST_CASE("smtlib export") {
  ConstraintSystem empty;
  const auto ep = testsupport::read_smtlib(export_smtlib(empty));
  CHECK(ep.logic == "QF_NRA");
  CHECK(ep.vars.empty());
  CHECK(ep.asserts.empty());
  CHECK(ep.check_sat);

  ConstraintSystem sys;
  const VarId x = sys.add_var("x");
  sys.add_row(X(x), Rel::Le, C(1, 2));
  const std::string text = export_smtlib(sys);
  CHECK(text.find("(assert (<= x (/ 1 2)))") != std::string::npos);
  CHECK(text == export_smtlib(sys));

  ConstraintSystem bil;
  const VarId j1 = bil.add_var("j1"), j2 = bil.add_var("j2"), d = bil.add_var("d");
  bil.add_row(X(j1) * X(j2), Rel::Le, X(d));
  CHECK(export_smtlib(bil).find("(assert (<= (* j1 j2) d))") != std::string::npos);
}

TEST_CASE("smtlib round trip agrees with the system at sample points") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 80; ++i) {
    ConstraintSystem sys;
    const std::size_t n = 2 + rng() % 2;
    for (std::size_t v = 0; v < n; ++v) sys.add_var("v" + std::to_string(v));
    for (int r = 0; r < 3; ++r) {
      Poly left = X(rng() % n) * X(rng() % n) * Rational(static_cast<long>(rng() % 3), 1);
      left += X(rng() % n) * Rational(static_cast<long>(rng() % 5) - 2, 3);
      sys.add_row(left, static_cast<Rel>(rng() % 3), C(static_cast<long>(rng() % 3), 4));
    }
    if (rng() & 1) build_coherence(sys, "w", {parse_term("p"), parse_term("p /\\ q")}, {0, 1});
    const auto p = testsupport::read_smtlib(export_smtlib(sys));
    std::vector<std::string> names;
    for (VarId v = 0; v < sys.num_vars(); ++v) names.push_back(sys.name(v));
    CHECK(p.vars == names);
    for (int s = 0; s < 10; ++s) {
      std::vector<Rational> pt(sys.num_vars());
      for (auto& v : pt) v = Rational(static_cast<long>(rng() % 5), 4);
      CHECK(testsupport::smt_agrees(p, sys, pt));
    }
    const auto f = solve(sys);
    if (f.feasible()) CHECK(testsupport::smt_agrees(p, sys, f.witness));
  }
}
