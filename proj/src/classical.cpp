// Classical modal formulas: AST, parser, printer and Kripke evaluation.

#include <algorithm>
#include <cctype>

#include "lukprob/errors.hpp"
#include "lukprob/reductions.hpp"

namespace lukprob {

using CK = ClassicalFormula::Kind;

struct ClassicalFormula::Node {
  Kind kind;
  std::string name;
  std::vector<ClassicalFormula> kids;
};

ClassicalFormula ClassicalFormula::var(std::string name) {
  return ClassicalFormula(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}}));
}
ClassicalFormula ClassicalFormula::bottom() {
  return ClassicalFormula(std::make_shared<const Node>(Node{Kind::Bottom, {}, {}}));
}
ClassicalFormula ClassicalFormula::negation(ClassicalFormula f) {
  return ClassicalFormula(std::make_shared<const Node>(Node{Kind::Not, {}, {std::move(f)}}));
}
ClassicalFormula ClassicalFormula::implies(ClassicalFormula a, ClassicalFormula b) {
  return ClassicalFormula(std::make_shared<const Node>(Node{Kind::Impl, {}, {std::move(a), std::move(b)}}));
}
ClassicalFormula ClassicalFormula::box(std::string agent, ClassicalFormula f) {
  return ClassicalFormula(std::make_shared<const Node>(Node{Kind::Box, std::move(agent), {std::move(f)}}));
}
ClassicalFormula ClassicalFormula::conj(ClassicalFormula a, ClassicalFormula b) {
  return negation(implies(std::move(a), negation(std::move(b))));
}
ClassicalFormula ClassicalFormula::disj(ClassicalFormula a, ClassicalFormula b) {
  return implies(negation(std::move(a)), std::move(b));
}
ClassicalFormula ClassicalFormula::diamond(std::string agent, ClassicalFormula f) {
  return negation(box(std::move(agent), negation(std::move(f))));
}

ClassicalFormula::Kind ClassicalFormula::kind() const { return node_->kind; }
const std::string& ClassicalFormula::name() const { return node_->name; }
const ClassicalFormula& ClassicalFormula::arg() const { return node_->kids.at(0); }
const ClassicalFormula& ClassicalFormula::left() const { return node_->kids.at(0); }
const ClassicalFormula& ClassicalFormula::right() const { return node_->kids.at(1); }

bool operator==(const ClassicalFormula& a, const ClassicalFormula& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.node_->name == b.node_->name && a.node_->kids == b.node_->kids;
}

bool operator<(const ClassicalFormula& a, const ClassicalFormula& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  if (a.node_->name != b.node_->name) return a.node_->name < b.node_->name;
  return std::lexicographical_compare(a.node_->kids.begin(), a.node_->kids.end(), b.node_->kids.begin(),
                                      b.node_->kids.end());
}

namespace {

class ClassicalParser {
 public:
  explicit ClassicalParser(std::string_view s) : s_(s) {}

  ClassicalFormula parse() {
    ClassicalFormula f = implication();
    skip();
    if (i_ < s_.size()) fail({"end of input"});
    return f;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) != tok) return false;
    i_ += tok.size();
    return true;
  }
  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip();
    const std::string found = i_ < s_.size() ? "'" + std::string(1, s_[i_]) + "'" : "end of input";
    throw ParseError(i_ + 1, std::move(expected), found);
  }
  std::string ident() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (start == i_ || std::isdigit(static_cast<unsigned char>(s_[start]))) {
      i_ = start;
      fail({"identifier"});
    }
    return std::string(s_.substr(start, i_ - start));
  }

  ClassicalFormula implication() {
    ClassicalFormula left = disjunction();
    if (eat("->")) return ClassicalFormula::implies(left, implication());
    return left;
  }
  ClassicalFormula disjunction() {
    ClassicalFormula f = conjunction();
    while (eat("|")) f = ClassicalFormula::disj(f, conjunction());
    return f;
  }
  ClassicalFormula conjunction() {
    ClassicalFormula f = prefix();
    while (eat("&")) f = ClassicalFormula::conj(f, prefix());
    return f;
  }
  ClassicalFormula prefix() {
    if (eat("!") || eat("~")) return ClassicalFormula::negation(prefix());
    if (eat("[")) {
      const std::string a = ident();
      if (!eat("]")) fail({"']'"});
      return ClassicalFormula::box(a, prefix());
    }
    skip();
    if (s_.substr(i_, 2) != "<-" && eat("<")) {
      const std::string a = ident();
      if (!eat(">")) fail({"'>'"});
      return ClassicalFormula::diamond(a, prefix());
    }
    if (eat("(")) {
      ClassicalFormula f = implication();
      if (!eat(")")) fail({"')'"});
      return f;
    }
    skip();
    if (i_ >= s_.size()) fail({"formula"});
    const std::string name = ident();
    if (name == "F") return ClassicalFormula::bottom();
    return ClassicalFormula::var(name);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

void emit(const ClassicalFormula& f, std::string& out, bool nested) {
  switch (f.kind()) {
    case CK::Var: out += f.name(); return;
    case CK::Bottom: out += "F"; return;
    case CK::Not:
      out += "!";
      emit(f.arg(), out, true);
      return;
    case CK::Box:
      out += "[" + f.name() + "]";
      emit(f.arg(), out, true);
      return;
    case CK::Impl:
      if (nested) out += "(";
      emit(f.left(), out, true);
      out += " -> ";
      emit(f.right(), out, false);
      if (nested) out += ")";
      return;
  }
}

void collect(const ClassicalFormula& f, std::vector<std::string>& out) {
  switch (f.kind()) {
    case CK::Var:
      if (std::find(out.begin(), out.end(), f.name()) == out.end()) out.push_back(f.name());
      return;
    case CK::Bottom: return;
    case CK::Not:
    case CK::Box: collect(f.arg(), out); return;
    case CK::Impl:
      collect(f.left(), out);
      collect(f.right(), out);
      return;
  }
}

}  // namespace

ClassicalFormula parse_classical(std::string_view text) { return ClassicalParser(text).parse(); }

std::string print(const ClassicalFormula& f) {
  std::string out;
  emit(f, out, false);
  return out;
}

std::size_t modal_depth(const ClassicalFormula& f) {
  switch (f.kind()) {
    case CK::Var:
    case CK::Bottom: return 0;
    case CK::Not: return modal_depth(f.arg());
    case CK::Box: return 1 + modal_depth(f.arg());
    case CK::Impl: return std::max(modal_depth(f.left()), modal_depth(f.right()));
  }
  return 0;
}

std::vector<std::string> variables(const ClassicalFormula& f) {
  std::vector<std::string> out;
  collect(f, out);
  return out;
}

bool holds(const KModel& m, std::size_t w, const ClassicalFormula& f) {
  switch (f.kind()) {
    case CK::Var: return m.valuation.at(w).count(f.name()) > 0;
    case CK::Bottom: return false;
    case CK::Not: return !holds(m, w, f.arg());
    case CK::Impl: return !holds(m, w, f.left()) || holds(m, w, f.right());
    case CK::Box: {
      const auto it = m.relations.find(f.name());
      if (it == m.relations.end()) return true;
      for (const auto& [a, b] : it->second)
        if (a == w && !holds(m, b, f.arg())) return false;
      return true;
    }
  }
  return false;
}

}  // namespace lukprob
