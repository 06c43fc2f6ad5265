#include <functional>
#include <stdexcept>

#include "lukprob/errors.hpp"
#include "lukprob/syntax.hpp"

namespace lukprob {

struct Formula::Node {
  Kind kind;
  std::vector<Formula> kids;
  std::string agent;
  Rational value;
  std::vector<BooleanTerm> term;  // empty unless ProbAtom
  std::size_t hash;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

namespace detail {

struct FormulaFactory {
  static Formula make(Formula::Kind kind, std::vector<Formula> kids, std::string agent = {},
                      Rational value = {}, std::vector<BooleanTerm> term = {}) {
    std::size_t h = mix(0x51ed27, static_cast<std::size_t>(kind));
    for (const auto& k : kids) h = mix(h, k.hash());
    if (!agent.empty()) h = mix(h, std::hash<std::string>{}(agent));
    if (kind == Formula::Kind::Constant) h = mix(h, value.hash());
    if (!term.empty()) h = mix(h, term[0].hash());
    return Formula(std::make_shared<const Formula::Node>(Formula::Node{
        kind, std::move(kids), std::move(agent), std::move(value), std::move(term), h}));
  }
};

}  // namespace detail

using detail::FormulaFactory;

Formula Formula::pr(BooleanTerm term) {
  return FormulaFactory::make(Kind::ProbAtom, {}, {}, {}, {std::move(term)});
}
Formula Formula::half() { return FormulaFactory::make(Kind::Half, {}); }
Formula Formula::constant(Rational value) {
  if (value < Rational(0) || value > Rational(1))
    throw RangeError("rational constant " + value.str() + " outside [0,1]");
  return FormulaFactory::make(Kind::Constant, {}, {}, std::move(value));
}
Formula Formula::top() { return FormulaFactory::make(Kind::Top, {}); }
Formula Formula::bottom() { return FormulaFactory::make(Kind::Bottom, {}); }
Formula Formula::neg(Formula f) { return FormulaFactory::make(Kind::Neg, {std::move(f)}); }
Formula Formula::impl(Formula a, Formula b) {
  return FormulaFactory::make(Kind::Impl, {std::move(a), std::move(b)});
}
Formula Formula::prod(Formula a, Formula b) {
  return FormulaFactory::make(Kind::Prod, {std::move(a), std::move(b)});
}
Formula Formula::prod_impl(Formula a, Formula b) {
  return FormulaFactory::make(Kind::ProdImpl, {std::move(a), std::move(b)});
}
Formula Formula::box(std::string agent, Formula f) {
  return FormulaFactory::make(Kind::Box, {std::move(f)}, std::move(agent));
}
Formula Formula::delta(Formula f) { return FormulaFactory::make(Kind::Delta, {std::move(f)}); }
Formula Formula::diamond(std::string agent, Formula f) {
  return FormulaFactory::make(Kind::Diamond, {std::move(f)}, std::move(agent));
}
Formula Formula::oplus(Formula a, Formula b) {
  return FormulaFactory::make(Kind::OPlus, {std::move(a), std::move(b)});
}
Formula Formula::odot(Formula a, Formula b) {
  return FormulaFactory::make(Kind::ODot, {std::move(a), std::move(b)});
}
Formula Formula::max(Formula a, Formula b) {
  return FormulaFactory::make(Kind::Max, {std::move(a), std::move(b)});
}
Formula Formula::min(Formula a, Formula b) {
  return FormulaFactory::make(Kind::Min, {std::move(a), std::move(b)});
}
Formula Formula::equiv(Formula a, Formula b) {
  return FormulaFactory::make(Kind::Equiv, {std::move(a), std::move(b)});
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

const BooleanTerm& Formula::term() const {
  if (node_->kind != Kind::ProbAtom) throw std::logic_error("Formula::term on non-atom");
  return node_->term[0];
}

const Rational& Formula::value() const {
  if (node_->kind != Kind::Constant) throw std::logic_error("Formula::value on non-constant");
  return node_->value;
}

const std::string& Formula::agent() const {
  if (node_->kind != Kind::Box && node_->kind != Kind::Diamond)
    throw std::logic_error("Formula::agent on non-modal node");
  return node_->agent;
}

const Formula& Formula::arg() const {
  if (node_->kids.size() != 1) throw std::logic_error("Formula::arg on non-unary node");
  return node_->kids[0];
}

const Formula& Formula::left() const {
  if (node_->kids.size() != 2) throw std::logic_error("Formula::left on non-binary node");
  return node_->kids[0];
}

const Formula& Formula::right() const {
  if (node_->kids.size() != 2) throw std::logic_error("Formula::right on non-binary node");
  return node_->kids[1];
}

std::size_t Formula::hash() const noexcept { return node_->hash; }

bool Formula::is_unary() const noexcept { return node_->kids.size() == 1; }
bool Formula::is_binary() const noexcept { return node_->kids.size() == 2; }

bool Formula::is_primitive_node() const noexcept {
  switch (node_->kind) {
    case Kind::ProbAtom:
    case Kind::Half:
    case Kind::Constant:
    case Kind::Top:
    case Kind::Bottom:
    case Kind::Neg:
    case Kind::Impl:
    case Kind::Prod:
    case Kind::ProdImpl:
    case Kind::Box: return true;
    default: return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind) return false;
  switch (x.kind) {
    case Formula::Kind::ProbAtom: return x.term[0] == y.term[0];
    case Formula::Kind::Constant: return x.value == y.value;
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: return x.agent == y.agent && x.kids == y.kids;
    default: return x.kids == y.kids;
  }
}

}  // namespace lukprob
