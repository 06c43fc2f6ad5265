#include <cstdint>
#include <cstdio>

#include "lukprob/syntax.hpp"

namespace lukprob {
namespace {

using K = Formula::Kind;

// Binding strength; higher binds tighter.
constexpr int kEquiv = 1;
constexpr int kImpl = 2;
constexpr int kLattice = 3;
constexpr int kStrong = 4;
constexpr int kProd = 5;
constexpr int kPrefix = 6;

int level(const Formula& f) {
  switch (f.kind()) {
    case K::Equiv: return kEquiv;
    case K::Impl:
    case K::ProdImpl: return kImpl;
    case K::Max:
    case K::Min: return kLattice;
    case K::OPlus:
    case K::ODot: return kStrong;
    case K::Prod: return kProd;
    default: return kPrefix;
  }
}

const char* infix(K k) {
  switch (k) {
    case K::Equiv: return " <-> ";
    case K::Impl: return " -> ";
    case K::ProdImpl: return " ~> ";
    case K::Max: return " | ";
    case K::Min: return " & ";
    case K::OPlus: return " (+) ";
    case K::ODot: return " (.) ";
    case K::Prod: return " * ";
    default: return "";
  }
}

void emit(const Formula& f, int min_level, std::string& out);

void emit_child(const Formula& f, int min_level, std::string& out) {
  if (level(f) < min_level) {
    out += '(';
    emit(f, 0, out);
    out += ')';
  } else {
    emit(f, min_level, out);
  }
}

std::string constant_text(const Rational& v) {
  if (v.is_integer()) return v.str();
  // "1/2" is reserved for the primitive ½ constant.
  if (v == Rational(1, 2)) return "2/4";
  return v.str();
}

void emit(const Formula& f, int /*min_level*/, std::string& out) {
  switch (f.kind()) {
    case K::ProbAtom:
      out += "Pr(" + print(f.term()) + ")";
      return;
    case K::Half: out += "1/2"; return;
    case K::Constant: out += constant_text(f.value()); return;
    case K::Top: out += "T"; return;
    case K::Bottom: out += "F"; return;
    case K::Neg:
      out += '!';
      emit_child(f.arg(), kPrefix, out);
      return;
    case K::Delta:
      out += "D ";
      emit_child(f.arg(), kPrefix, out);
      return;
    case K::Box:
      out += "[" + f.agent() + "]";
      emit_child(f.arg(), kPrefix, out);
      return;
    case K::Diamond:
      out += "<" + f.agent() + ">";
      emit_child(f.arg(), kPrefix, out);
      return;
    default: break;
  }
  const int lv = level(f);
  const bool right_assoc = lv == kImpl;
  emit_child(f.left(), right_assoc ? lv + 1 : lv, out);
  out += infix(f.kind());
  emit_child(f.right(), right_assoc ? lv : lv + 1, out);
}

// Boolean levels: 1 join, 2 meet, 3 complement/var.
void emit_term(const BooleanTerm& t, int min_level, std::string& out) {
  using BK = BooleanTerm::Kind;
  const int lv = t.kind() == BK::Join ? 1 : t.kind() == BK::Meet ? 2 : 3;
  const bool paren = lv < min_level;
  if (paren) out += '(';
  switch (t.kind()) {
    case BK::Var: out += t.name(); break;
    case BK::Complement:
      out += '~';
      emit_term(t.arg(), 3, out);
      break;
    case BK::Meet:
    case BK::Join:
      emit_term(t.left(), lv, out);
      out += t.kind() == BK::Meet ? " /\\ " : " \\/ ";
      emit_term(t.right(), lv + 1, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  emit(f, 0, out);
  return out;
}

std::string print(const BooleanTerm& t) {
  std::string out;
  emit_term(t, 0, out);
  return out;
}

std::string stable_hash(const Formula& f) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : print(f)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[13];
  std::snprintf(buf, sizeof buf, "%012llx", static_cast<unsigned long long>(h & 0xffffffffffffULL));
  return buf;
}

}  // namespace lukprob
