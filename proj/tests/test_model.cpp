#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "lukprob/errors.hpp"
#include "lukprob/model.hpp"
#include "lukprob/modelcheck.hpp"
#include "support/oracles.hpp"

using namespace lukprob;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProbModel example1() { return std::get<ProbModel>(load_model_file("data/example1.json")); }

BooleanTerm T(const char* s) { return parse_term(s); }

}  // namespace

TEST_CASE("example fixture loads and validates") {
  const ProbModel m = example1();
  CHECK(m.frame.size() == 6);
  CHECK(validate(m).empty());
  CHECK(world_names(m.frame, event_extension(m, T("~S /\\ I"))) == std::vector<std::string>{"e_LI", "e_nLI"});
  CHECK(measure_of(m, "s_L", T("~S /\\ I")) == Rational(4, 5));
  CHECK(measure_of(m, "s_nL", T("~S /\\ I")) == Rational(1, 5));
  CHECK(measure_of(m, "s_L", T("S \\/ ~S").desugar()) == Rational(1));
}

TEST_CASE("event extension edge cases") {
  const ProbModel m = example1();
  const auto empty = event_extension(m, T("S /\\ ~S"));
  CHECK(std::none_of(empty.begin(), empty.end(), [](bool b) { return b; }));
  const auto all = event_extension(m, T("~(S /\\ ~S)"));
  CHECK(std::all_of(all.begin(), all.end(), [](bool b) { return b; }));
  CHECK_THROWS_AS(event_extension(m, T("Z")), UnknownProp);
  CHECK_THROWS_AS(measure_of(m, "nowhere", T("S")), UnknownWorld);
}

TEST_CASE("smallest model and bad documents") {
  const char* ok = R"({"worlds":["w"],"props":[],"relations":{},"valuation":{},"measures":{"w":{"w":"1/1"}}})";
  CHECK(std::holds_alternative<ProbModel>(load_model(ok)));
  const char* short_total = R"({"worlds":["w","v"],"props":[],"relations":{},"valuation":{},
    "measures":{"w":{"w":"9/10"},"v":{"v":"1/1"}}})";
  CHECK_THROWS_AS(load_model(short_total), ValidationError);
  const char* negative = R"({"worlds":["w","v"],"props":[],"relations":{},"valuation":{},
    "measures":{"w":{"w":"3/2","v":"-1/2"},"v":{"v":"1/1"}}})";
  try {
    load_model(negative);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(!e.violations().empty());
  }
  const char* dangling = R"({"worlds":["w"],"props":[],"relations":{"a":[["w","x"]]},"valuation":{},
    "measures":{"w":{"w":"1/1"}}})";
  CHECK_THROWS_AS(load_model(dangling), ValidationError);
  CHECK_THROWS_AS(load_model("{not json"), FormatError);
  CHECK_THROWS_AS(load_model(R"({"worlds": 3})"), FormatError);
}

TEST_CASE("validate reports kinds") {
  ProbModel m;
  m.add_world("w");
  m.set_weight(0, 0, Rational(-1, 2));
  const auto v = validate(m);
  CHECK(std::any_of(v.begin(), v.end(), [](const Violation& x) { return x.kind == Violation::Kind::Range; }));
}

TEST_CASE("dump and reload preserve the model") {
  const AnyModel m = load_model_file("data/example1.json");
  const std::string text = dump_model(m);
  const AnyModel again = load_model(text);
  CHECK(dump_model(again) == text);
  CHECK(to_dot(m).find("digraph") != std::string::npos);

  CanonicalModel c;
  c.props = {"p", "q"};
  c.add_world("w");
  c.set_weight(0, 0b11, Rational(1, 4));
  c.set_weight(0, 0b01, Rational(3, 4));
  const std::string ct = dump_model(AnyModel{c});
  const AnyModel back = load_model(ct);
  REQUIRE(std::holds_alternative<CanonicalModel>(back));
  CHECK(measure_of(std::get<CanonicalModel>(back), "w", T("p")) == Rational(1));
  CHECK(measure_of(std::get<CanonicalModel>(back), "w", T("q")) == Rational(1, 4));
}

TEST_CASE("measure properties on random models") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const ProbModel m = testsupport::random_model(rng, 1 + rng() % 5, 3);
    const BooleanTerm a = testsupport::random_term(rng, 3), b = testsupport::random_term(rng, 3);
    const auto ea = event_extension(m, a), eb = event_extension(m, b);
    for (std::size_t w = 0; w < m.frame.size(); ++w) {
      const Rational ma = measure_of(m, w, a), mb = measure_of(m, w, b);
      const Rational mab = measure_of(m, w, BooleanTerm::meet(a, b));
      CHECK(measure_of(m, w, BooleanTerm::complement(a)) == Rational(1) - ma);
      CHECK(max(Rational(0), ma + mb - Rational(1)) <= mab);
      CHECK(mab <= min(ma, mb));
      bool disjoint = true, subset = true;
      for (std::size_t u = 0; u < ea.size(); ++u) {
        disjoint = disjoint && !(ea[u] && eb[u]);
        subset = subset && (!ea[u] || eb[u]);
      }
      if (disjoint) CHECK(measure_of(m, w, BooleanTerm::join(a, b)) == ma + mb);
      if (subset) CHECK(ma <= mb);
    }
  }
}

TEST_CASE("worked example values") {
  const ProbModel m = example1();
  const Formula atom = parse_formula("Pr(~S /\\ I)");
  const Formula down = parse_formula("Pr(~S /\\ I) -> [a]Pr(~S /\\ I)");
  const Formula same = parse_formula("Pr(~S /\\ I) <-> [a]Pr(~S /\\ I)");
  CHECK(evaluate(m, "s_L", down) == Rational(2, 5));
  CHECK(evaluate(m, "s_nL", down) == Rational(1));
  CHECK(evaluate(m, "s_L", same) == Rational(2, 5));
  CHECK(evaluate(m, "s_nL", same) == Rational(2, 5));
  const auto all = evaluate_all(m, atom);
  CHECK(all == std::vector<Rational>{Rational(4, 5), Rational(1, 5), 1, 0, 1, 0});
  for (const auto& v : evaluate_all(m, Formula::half())) CHECK(v == Rational(1, 2));
  for (const auto& v : evaluate_all(m, Formula::bottom())) CHECK(v == Rational(0));
  CHECK(evaluate(m, "e_LI", parse_formula("[a]F")) == Rational(1));
  CHECK(evaluate(m, "e_LI", parse_formula("<a>T")) == Rational(0));
  CHECK(evaluate(m, "s_L", parse_formula("[zz]F")) == Rational(1));
  CHECK_THROWS_AS(evaluate(m, "nowhere", atom), UnknownWorld);
  CHECK_THROWS_AS(evaluate(m, "s_L", parse_formula("Pr(Z)")), UnknownProp);
}

TEST_CASE("top and bottom agree with their probabilistic encodings") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const ProbModel m = testsupport::random_model(rng, 3, 2);
    for (std::size_t w = 0; w < 3; ++w) {
      CHECK(evaluate(m, w, parse_formula("Pr(p) -> Pr(p)")) == evaluate(m, w, Formula::top()));
      CHECK(evaluate(m, w, parse_formula("!(Pr(p) -> Pr(p))")) == evaluate(m, w, Formula::bottom()));
    }
  }
}

TEST_CASE("evaluation matches the direct reference on random inputs") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 400; ++i) {
    const ProbModel m = testsupport::random_model(rng, 1 + rng() % 4, 3);
    const Formula f = testsupport::random_formula(rng, 3, 1 + static_cast<int>(rng() % 9));
    Interpretation interp(m);
    for (std::size_t w = 0; w < m.frame.size(); ++w) {
      INFO(print(f));
      const Rational v = interp.value(w, f);
      CHECK(v == testsupport::naive_value(m, w, f));
      CHECK(Rational(0) <= v);
      CHECK(v <= Rational(1));
    }
  }
}
