#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "moncomp/program.hpp"
#include "moncomp/tree.hpp"

namespace moncomp {

// ---------------------------------------------------------------------------
// Programs as data. The nil literal encodes as nil itself; every other
// syntactic form is a tagged pair with a small unary numeral tag (frequent
// forms get small tags, so trace codes stay compact). Lists are right-nested
// cons spines ending in nil. A program code wraps its statement list in
// cons(nil, -) so that nil itself is never a valid program.
//
//   expr:  NilLit       = nil             stmt:  Assign k e     = (0 . (k . e))
//          Var k        = (0 . k)                Split s d1 d2  = (1 . (s . (d1 . d2)))
//          Hd e         = (1 . e)                Join s1 s2 d   = (2 . (s1 . (s2 . d)))
//          Tl e         = (2 . e)                While e b      = (3 . (e . b))
//          ConsE a b    = (3 . (a . b))          If e b1 b2     = (4 . (e . (b1 . b2)))
//          EqAtom a b   = (4 . (a . b))
// ---------------------------------------------------------------------------

namespace tags {
inline constexpr std::uint64_t expr_var = 0;
inline constexpr std::uint64_t expr_hd = 1;
inline constexpr std::uint64_t expr_tl = 2;
inline constexpr std::uint64_t expr_cons = 3;
inline constexpr std::uint64_t expr_eq = 4;
inline constexpr std::uint64_t stmt_assign = 0;
inline constexpr std::uint64_t stmt_split = 1;
inline constexpr std::uint64_t stmt_join = 2;
inline constexpr std::uint64_t stmt_while = 3;
inline constexpr std::uint64_t stmt_if = 4;
}  // namespace tags

inline Tree encode_expr(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Var: return Tree::cons(tree_nat(tags::expr_var), tree_nat(e->var));
    case ExprKind::NilLit: return Tree::nil();
    case ExprKind::ConsE:
      return Tree::cons(tree_nat(tags::expr_cons),
                        Tree::cons(encode_expr(e->a), encode_expr(e->b)));
    case ExprKind::Hd: return Tree::cons(tree_nat(tags::expr_hd), encode_expr(e->a));
    case ExprKind::Tl: return Tree::cons(tree_nat(tags::expr_tl), encode_expr(e->a));
    case ExprKind::EqAtom:
      return Tree::cons(tree_nat(tags::expr_eq),
                        Tree::cons(encode_expr(e->a), encode_expr(e->b)));
  }
  throw std::logic_error("bad expr kind");
}

inline Tree encode_stmt(const StmtPtr& s);

inline Tree encode_stmt_list(const std::vector<StmtPtr>& body) {
  Tree t;
  for (auto it = body.rbegin(); it != body.rend(); ++it) t = Tree::cons(encode_stmt(*it), t);
  return t;
}

inline Tree encode_stmt(const StmtPtr& s) {
  switch (s->kind) {
    case StmtKind::Assign:
      return Tree::cons(tree_nat(tags::stmt_assign),
                        Tree::cons(tree_nat(s->var), encode_expr(s->expr)));
    case StmtKind::While:
      return Tree::cons(tree_nat(tags::stmt_while),
                        Tree::cons(encode_expr(s->expr), encode_stmt_list(s->body)));
    case StmtKind::If:
      return Tree::cons(
          tree_nat(tags::stmt_if),
          Tree::cons(encode_expr(s->expr),
                     Tree::cons(encode_stmt_list(s->body), encode_stmt_list(s->body2))));
    case StmtKind::SplitPair:
      return Tree::cons(tree_nat(tags::stmt_split),
                        Tree::cons(tree_nat(s->var),
                                   Tree::cons(tree_nat(s->var2), tree_nat(s->var3))));
    case StmtKind::JoinPair:
      return Tree::cons(tree_nat(tags::stmt_join),
                        Tree::cons(tree_nat(s->var2),
                                   Tree::cons(tree_nat(s->var3), tree_nat(s->var))));
  }
  throw std::logic_error("bad stmt kind");
}

inline Tree encode_program(const Program& p) {
  return Tree::cons(Tree::nil(), encode_stmt_list(p.body));
}

namespace detail {

inline std::uint64_t decode_nat(const Tree& t) {
  std::uint64_t n;
  if (!nat_of_tree(t, n)) throw decode_error("expected a unary numeral");
  return n;
}

inline std::uint32_t decode_var(const Tree& t) {
  std::uint64_t n = decode_nat(t);
  if (n > 0xffffff) throw decode_error("variable index out of range");
  return static_cast<std::uint32_t>(n);
}

}  // namespace detail

inline ExprPtr decode_expr(const Tree& t) {
  if (t.is_nil()) return e_nil();
  std::uint64_t tag = detail::decode_nat(t.left());
  Tree payload = t.right();
  switch (tag) {
    case tags::expr_var: return e_var(detail::decode_var(payload));
    case tags::expr_cons:
      if (!payload.is_cons()) throw decode_error("cons expression needs two operands");
      return e_cons(decode_expr(payload.left()), decode_expr(payload.right()));
    case tags::expr_hd: return e_hd(decode_expr(payload));
    case tags::expr_tl: return e_tl(decode_expr(payload));
    case tags::expr_eq:
      if (!payload.is_cons()) throw decode_error("eq? expression needs two operands");
      return e_eq(decode_expr(payload.left()), decode_expr(payload.right()));
    default: throw decode_error("unknown expression tag");
  }
}

inline StmtPtr decode_stmt(const Tree& t);

inline std::vector<StmtPtr> decode_stmt_list(const Tree& t) {
  std::vector<StmtPtr> out;
  Tree cur = t;
  while (cur.is_cons()) {
    out.push_back(decode_stmt(cur.left()));
    cur = cur.right();
  }
  return out;
}

inline StmtPtr decode_stmt(const Tree& t) {
  if (!t.is_cons()) throw decode_error("expected a statement code");
  std::uint64_t tag = detail::decode_nat(t.left());
  Tree payload = t.right();
  switch (tag) {
    case tags::stmt_assign:
      if (!payload.is_cons()) throw decode_error("assignment needs a target and an expression");
      return s_assign(detail::decode_var(payload.left()), decode_expr(payload.right()));
    case tags::stmt_while:
      if (!payload.is_cons()) throw decode_error("while needs a guard and a body");
      return s_while(decode_expr(payload.left()), decode_stmt_list(payload.right()));
    case tags::stmt_if: {
      if (!payload.is_cons() || !payload.right().is_cons())
        throw decode_error("if needs a guard and two branches");
      return s_if(decode_expr(payload.left()), decode_stmt_list(payload.right().left()),
                  decode_stmt_list(payload.right().right()));
    }
    case tags::stmt_split: {
      if (!payload.is_cons() || !payload.right().is_cons())
        throw decode_error("split needs three variables");
      return s_split(detail::decode_var(payload.left()),
                     detail::decode_var(payload.right().left()),
                     detail::decode_var(payload.right().right()));
    }
    case tags::stmt_join: {
      if (!payload.is_cons() || !payload.right().is_cons())
        throw decode_error("join needs three variables");
      return s_join(detail::decode_var(payload.left()),
                    detail::decode_var(payload.right().left()),
                    detail::decode_var(payload.right().right()));
    }
    default: throw decode_error("unknown statement tag");
  }
}

inline Program decode_program(const Tree& t) {
  if (!t.is_cons() || !t.left().is_nil()) throw decode_error("not a program code");
  Program p;
  p.body = decode_stmt_list(t.right());
  return p;
}

// ---------------------------------------------------------------------------
// Retractions into the tree universe. Booleans are nil / (nil . nil),
// naturals are unary spines, pairs are conses, traces and programs use their
// canonical encodings. Projection outside the image yields nil with a flag.
// ---------------------------------------------------------------------------

inline Tree tree_bool(bool b) {
  return b ? Tree::cons(Tree::nil(), Tree::nil()) : Tree::nil();
}

enum class RetractTag { Bool, Nat, Pair, TraceCode, ProgramCode };

struct RetractResult {
  Tree value;
  bool in_image;
};

struct Retraction {
  std::function<Tree(const Tree&)> embed;
  std::function<RetractResult(const Tree&)> project;
};

}  // namespace moncomp
