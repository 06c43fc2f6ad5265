#include <algorithm>
#include <functional>
#include <stdexcept>

#include "lukprob/syntax.hpp"

namespace lukprob {

struct BooleanTerm::Node {
  Kind kind;
  std::string name;
  std::vector<BooleanTerm> kids;
  std::size_t hash;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

BooleanTerm BooleanTerm::var(std::string name) {
  const std::size_t h = mix(11, std::hash<std::string>{}(name));
  return BooleanTerm(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, h}));
}

BooleanTerm BooleanTerm::complement(BooleanTerm arg) {
  const std::size_t h = mix(13, arg.hash());
  return BooleanTerm(std::make_shared<const Node>(Node{Kind::Complement, {}, {std::move(arg)}, h}));
}

BooleanTerm BooleanTerm::meet(BooleanTerm left, BooleanTerm right) {
  const std::size_t h = mix(mix(17, left.hash()), right.hash());
  return BooleanTerm(
      std::make_shared<const Node>(Node{Kind::Meet, {}, {std::move(left), std::move(right)}, h}));
}

BooleanTerm BooleanTerm::join(BooleanTerm left, BooleanTerm right) {
  const std::size_t h = mix(mix(19, left.hash()), right.hash());
  return BooleanTerm(
      std::make_shared<const Node>(Node{Kind::Join, {}, {std::move(left), std::move(right)}, h}));
}

BooleanTerm::Kind BooleanTerm::kind() const noexcept { return node_->kind; }

const std::string& BooleanTerm::name() const {
  if (node_->kind != Kind::Var) throw std::logic_error("BooleanTerm::name on non-variable");
  return node_->name;
}

const BooleanTerm& BooleanTerm::arg() const {
  if (node_->kind != Kind::Complement) throw std::logic_error("BooleanTerm::arg on non-complement");
  return node_->kids[0];
}

const BooleanTerm& BooleanTerm::left() const {
  if (node_->kids.size() != 2) throw std::logic_error("BooleanTerm::left on non-binary node");
  return node_->kids[0];
}

const BooleanTerm& BooleanTerm::right() const {
  if (node_->kids.size() != 2) throw std::logic_error("BooleanTerm::right on non-binary node");
  return node_->kids[1];
}

std::size_t BooleanTerm::hash() const noexcept { return node_->hash; }

BooleanTerm BooleanTerm::desugar() const {
  switch (kind()) {
    case Kind::Var: return *this;
    case Kind::Complement: return complement(arg().desugar());
    case Kind::Meet: return meet(left().desugar(), right().desugar());
    case Kind::Join:
      return complement(meet(complement(left().desugar()), complement(right().desugar())));
  }
  return *this;
}

void BooleanTerm::collect_vars(std::set<std::string>& out) const {
  if (kind() == Kind::Var) {
    out.insert(name());
    return;
  }
  for (const auto& k : node_->kids) k.collect_vars(out);
}

void BooleanTerm::collect_vars_ordered(std::vector<std::string>& out) const {
  if (kind() == Kind::Var) {
    if (std::find(out.begin(), out.end(), name()) == out.end()) out.push_back(name());
    return;
  }
  for (const auto& k : node_->kids) k.collect_vars_ordered(out);
}

std::size_t BooleanTerm::length() const {
  std::size_t n = 1;
  for (const auto& k : node_->kids) n += k.length();
  return n;
}

bool operator==(const BooleanTerm& a, const BooleanTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
  if (a.node_->kind == BooleanTerm::Kind::Var) return a.node_->name == b.node_->name;
  return a.node_->kids == b.node_->kids;
}

}  // namespace lukprob
