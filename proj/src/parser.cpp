// Recursive-descent parser for formulas and Boolean terms.
//
// Formula precedence, tightest first:
//   prefix  !  D  [a]  <a>
//   *
//   (+) (.)
//   &  |
//   ->  ~>      (right-associative)
//   <->
// Every other binary level is left-associative.

#include <cctype>
#include <optional>

#include "lukprob/errors.hpp"
#include "lukprob/syntax.hpp"

namespace lukprob {
namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  Comma,
  Box,      // [agent]
  Diamond,  // <agent>
  Arrow,    // ->
  PArrow,   // ~>
  Equiv,    // <->
  Star,     // *
  OPlus,    // (+)
  ODot,     // (.)
  Bar,      // |
  Amp,      // &
  Bang,     // !
  Tilde,    // ~
  MeetOp,   // /\ .
  JoinOp,   // \/ .
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;  // 1-based
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
      const std::size_t pos = i_ + 1;
      if (i_ >= src_.size()) {
        out.push_back({Tok::End, "", pos});
        return out;
      }
      const char c = src_[i_];
      auto take = [&](Tok k, std::size_t n) {
        out.push_back({k, std::string(src_.substr(i_, n)), pos});
        i_ += n;
      };
      if (ident_start(c)) {
        std::size_t j = i_;
        while (j < src_.size() && ident_char(src_[j])) ++j;
        take(Tok::Ident, j - i_);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i_;
        while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
        if (j + 1 < src_.size() && src_[j] == '/' &&
            std::isdigit(static_cast<unsigned char>(src_[j + 1]))) {
          ++j;
          while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
        }
        take(Tok::Number, j - i_);
      } else if (starts("<->")) {
        take(Tok::Equiv, 3);
      } else if (starts("->")) {
        take(Tok::Arrow, 2);
      } else if (starts("~>")) {
        take(Tok::PArrow, 2);
      } else if (starts("(+)")) {
        take(Tok::OPlus, 3);
      } else if (starts("(.)")) {
        take(Tok::ODot, 3);
      } else if (starts("/\\")) {
        take(Tok::MeetOp, 2);
      } else if (starts("\\/")) {
        take(Tok::JoinOp, 2);
      } else if (c == '[' || c == '<') {
        const char close = c == '[' ? ']' : '>';
        std::size_t j = i_ + 1;
        while (j < src_.size() && ident_char(src_[j])) ++j;
        if (j == i_ + 1 || j >= src_.size() || src_[j] != close)
          throw ParseError(pos, {c == '[' ? "'[agent]'" : "'<agent>'"},
                           "'" + std::string(src_.substr(i_, j - i_ + 1)) + "'");
        out.push_back({c == '[' ? Tok::Box : Tok::Diamond,
                       std::string(src_.substr(i_ + 1, j - i_ - 1)), pos});
        i_ = j + 1;
      } else {
        switch (c) {
          case '(': take(Tok::LParen, 1); break;
          case ')': take(Tok::RParen, 1); break;
          case ',': take(Tok::Comma, 1); break;
          case '*': take(Tok::Star, 1); break;
          case '|': take(Tok::Bar, 1); break;
          case '&': take(Tok::Amp, 1); break;
          case '!': take(Tok::Bang, 1); break;
          case '~': take(Tok::Tilde, 1); break;
          default:
            throw ParseError(pos, {"a formula token"}, "'" + std::string(1, c) + "'");
        }
      }
    }
  }

 private:
  bool starts(std::string_view s) const { return src_.substr(i_, s.size()) == s; }

  std::string_view src_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  Formula formula_entry() {
    Formula f = equiv();
    expect_end({"'->'", "'<->'", "end of input"});
    return f;
  }

  BooleanTerm term_entry() {
    BooleanTerm t = bjoin();
    expect_end({"'/\\'", "'\\/'", "end of input"});
    return t;
  }

 private:
  const Token& peek() const { return toks_[k_]; }
  const Token& next() { return toks_[k_++]; }
  bool at(Tok t) const { return peek().kind == t; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().pos, std::move(expected), describe(peek()));
  }

  void expect(Tok t, const std::string& what, std::vector<std::string> alternatives = {}) {
    if (!at(t)) {
      alternatives.push_back(what);
      fail(std::move(alternatives));
    }
    ++k_;
  }

  void expect_end(std::vector<std::string> expected) {
    if (!at(Tok::End)) fail(std::move(expected));
  }

  // ── formulas ──

  Formula equiv() {
    Formula f = implication();
    while (at(Tok::Equiv)) {
      ++k_;
      f = Formula::equiv(f, implication());
    }
    return f;
  }

  Formula implication() {
    Formula f = lattice();
    if (at(Tok::Arrow)) {
      ++k_;
      return Formula::impl(f, implication());
    }
    if (at(Tok::PArrow)) {
      ++k_;
      return Formula::prod_impl(f, implication());
    }
    return f;
  }

  Formula lattice() {
    Formula f = strong();
    while (at(Tok::Amp) || at(Tok::Bar)) {
      const bool is_min = next().kind == Tok::Amp;
      Formula r = strong();
      f = is_min ? Formula::min(f, r) : Formula::max(f, r);
    }
    return f;
  }

  Formula strong() {
    Formula f = product();
    while (at(Tok::OPlus) || at(Tok::ODot)) {
      const bool plus = next().kind == Tok::OPlus;
      Formula r = product();
      f = plus ? Formula::oplus(f, r) : Formula::odot(f, r);
    }
    return f;
  }

  Formula product() {
    Formula f = prefix();
    while (at(Tok::Star)) {
      ++k_;
      f = Formula::prod(f, prefix());
    }
    return f;
  }

  Formula prefix() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Bang: ++k_; return Formula::neg(prefix());
      case Tok::Box: ++k_; return Formula::box(t.text, prefix());
      case Tok::Diamond: ++k_; return Formula::diamond(t.text, prefix());
      case Tok::Ident:
        if (t.text == "D") {
          ++k_;
          return Formula::delta(prefix());
        }
        break;
      default: break;
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        ++k_;
        Formula f = equiv();
        expect(Tok::RParen, "')'", {"'->'", "'<->'"});
        return f;
      }
      case Tok::Number: {
        ++k_;
        Rational v;
        try {
          v = Rational::parse(t.text);
        } catch (const std::invalid_argument&) {
          throw ParseError(t.pos, {"a rational m/n with n > 0"}, describe(t));
        }
        if (t.text == "1/2") return Formula::half();
        if (v > Rational(1)) throw RangeError("constant " + t.text + " outside [0,1]");
        return Formula::constant(v);
      }
      case Tok::Ident: {
        if (t.text == "Pr") {
          ++k_;
          expect(Tok::LParen, "'('");
          BooleanTerm b = bjoin();
          expect(Tok::RParen, "')'", {"'/\\'", "'\\/'"});
          return Formula::pr(b);
        }
        if (t.text == "T") {
          ++k_;
          return Formula::top();
        }
        if (t.text == "F") {
          ++k_;
          return Formula::bottom();
        }
        if (is_macro_name(t.text)) return macro();
        if (toks_[k_ + 1].kind == Tok::LParen) throw UnknownMacro("unknown macro '" + t.text + "'");
        break;
      }
      default: break;
    }
    fail({"'Pr('", "a constant", "'T'", "'F'", "'('", "a prefix operator", "a macro"});
  }

  Formula macro() {
    const Token name = next();
    expect(Tok::LParen, "'('");
    std::vector<MacroArg> args;
    const auto arg_at = [&](std::size_t index) -> MacroArg {
      const std::string& m = name.text;
      if (m == "Path") {
        const Token& t = peek();
        if (t.kind != Tok::Number || t.text.find('/') != std::string::npos) fail({"a state index"});
        ++k_;
        return std::stol(t.text);
      }
      if (index == 0 && (m == "Cert" || m == "NoDec" || m == "NoInc")) {
        const Token& t = peek();
        if (t.kind != Tok::Ident && t.kind != Tok::Number) fail({"an agent"});
        ++k_;
        return t.text;
      }
      if (index == 0 && m == "L") {
        const Token& t = peek();
        if (t.kind != Tok::Number) fail({"a rational threshold"});
        ++k_;
        try {
          return Rational::parse(t.text);
        } catch (const std::invalid_argument&) {
          throw ParseError(t.pos, {"a rational m/n with n > 0"}, describe(t));
        }
      }
      return bjoin();
    };
    if (!at(Tok::RParen)) {
      args.push_back(arg_at(0));
      while (at(Tok::Comma)) {
        ++k_;
        args.push_back(arg_at(args.size()));
      }
    }
    expect(Tok::RParen, "')'", {"','"});
    return macro_expand(name.text, args);
  }

  // ── Boolean terms ──

  BooleanTerm bjoin() {
    BooleanTerm t = bmeet();
    while (at(Tok::JoinOp)) {
      ++k_;
      t = BooleanTerm::join(t, bmeet());
    }
    return t;
  }

  BooleanTerm bmeet() {
    BooleanTerm t = bunary();
    while (at(Tok::MeetOp)) {
      ++k_;
      t = BooleanTerm::meet(t, bunary());
    }
    return t;
  }

  BooleanTerm bunary() {
    const Token& t = peek();
    if (t.kind == Tok::Tilde) {
      ++k_;
      return BooleanTerm::complement(bunary());
    }
    if (t.kind == Tok::Ident) {
      ++k_;
      return BooleanTerm::var(t.text);
    }
    if (t.kind == Tok::LParen) {
      ++k_;
      BooleanTerm b = bjoin();
      expect(Tok::RParen, "')'", {"'/\\'", "'\\/'"});
      return b;
    }
    fail({"a variable", "'~'", "'('"});
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).formula_entry(); }

BooleanTerm parse_term(std::string_view text) { return Parser(text).term_entry(); }

}  // namespace lukprob
