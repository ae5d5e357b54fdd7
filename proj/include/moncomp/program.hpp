#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "moncomp/tree.hpp"

namespace moncomp {

// ---------------------------------------------------------------------------
// AST. Expressions and statements are immutable and shared; a Program is a
// statement list with X0 as the sole input/output channel.
// ---------------------------------------------------------------------------

enum class ExprKind { Var, NilLit, ConsE, Hd, Tl, EqAtom };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  std::uint32_t var = 0;  // Var
  ExprPtr a, b;           // ConsE/EqAtom both, Hd/Tl use a
  std::uint32_t node_count = 1;
};

inline ExprPtr e_var(std::uint32_t k) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  e->var = k;
  return e;
}
inline ExprPtr e_nil() {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::NilLit;
  return e;
}
inline ExprPtr e_unary(ExprKind k, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(a);
  e->node_count = 1 + e->a->node_count;
  return e;
}
inline ExprPtr e_hd(ExprPtr a) { return e_unary(ExprKind::Hd, std::move(a)); }
inline ExprPtr e_tl(ExprPtr a) { return e_unary(ExprKind::Tl, std::move(a)); }
inline ExprPtr e_binary(ExprKind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(a);
  e->b = std::move(b);
  e->node_count = 1 + e->a->node_count + e->b->node_count;
  return e;
}
inline ExprPtr e_cons(ExprPtr a, ExprPtr b) {
  return e_binary(ExprKind::ConsE, std::move(a), std::move(b));
}
inline ExprPtr e_eq(ExprPtr a, ExprPtr b) {
  return e_binary(ExprKind::EqAtom, std::move(a), std::move(b));
}

enum class StmtKind { Assign, While, If, SplitPair, JoinPair };

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  StmtKind kind;
  std::uint32_t var = 0;        // Assign target / SplitPair source / JoinPair target
  std::uint32_t var2 = 0, var3 = 0;  // SplitPair targets / JoinPair sources
  ExprPtr expr;                 // Assign value, While/If guard
  std::vector<StmtPtr> body;    // While body / If then-branch
  std::vector<StmtPtr> body2;   // If else-branch
  std::uint64_t cost = 0;       // per execution; statement-list descent is free
};

inline StmtPtr s_assign(std::uint32_t var, ExprPtr e) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::Assign;
  s->var = var;
  s->expr = std::move(e);
  s->cost = 1 + s->expr->node_count;
  return s;
}
inline StmtPtr s_while(ExprPtr guard, std::vector<StmtPtr> body) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::While;
  s->expr = std::move(guard);
  s->body = std::move(body);
  s->cost = 1 + s->expr->node_count;
  return s;
}
inline StmtPtr s_if(ExprPtr guard, std::vector<StmtPtr> then_b, std::vector<StmtPtr> else_b) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::If;
  s->expr = std::move(guard);
  s->body = std::move(then_b);
  s->body2 = std::move(else_b);
  s->cost = 1 + s->expr->node_count;
  return s;
}
inline StmtPtr s_split(std::uint32_t src, std::uint32_t d1, std::uint32_t d2) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::SplitPair;
  s->var = src;
  s->var2 = d1;
  s->var3 = d2;
  s->cost = 0;
  return s;
}
inline StmtPtr s_join(std::uint32_t s1, std::uint32_t s2, std::uint32_t dst) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::JoinPair;
  s->var2 = s1;
  s->var3 = s2;
  s->var = dst;
  s->cost = 0;
  return s;
}

struct Program {
  std::vector<StmtPtr> body;

  friend bool operator==(const Program& a, const Program& b);
};

// ---------------------------------------------------------------------------
// Structural helpers.
// ---------------------------------------------------------------------------

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->node_count != b->node_count) return false;
  switch (a->kind) {
    case ExprKind::Var: return a->var == b->var;
    case ExprKind::NilLit: return true;
    case ExprKind::Hd:
    case ExprKind::Tl: return expr_equal(a->a, b->a);
    default: return expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
  }
}

inline bool stmt_equal(const StmtPtr& a, const StmtPtr& b);

inline bool stmts_equal(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!stmt_equal(a[i], b[i])) return false;
  return true;
}

inline bool stmt_equal(const StmtPtr& a, const StmtPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case StmtKind::Assign: return a->var == b->var && expr_equal(a->expr, b->expr);
    case StmtKind::While: return expr_equal(a->expr, b->expr) && stmts_equal(a->body, b->body);
    case StmtKind::If:
      return expr_equal(a->expr, b->expr) && stmts_equal(a->body, b->body) &&
             stmts_equal(a->body2, b->body2);
    default: return a->var == b->var && a->var2 == b->var2 && a->var3 == b->var3;
  }
}

inline bool operator==(const Program& a, const Program& b) { return stmts_equal(a.body, b.body); }
inline bool operator!=(const Program& a, const Program& b) { return !(a == b); }

inline std::uint64_t stmt_node_count(const StmtPtr& s) {
  std::uint64_t n = 1;
  switch (s->kind) {
    case StmtKind::Assign: return n + s->expr->node_count;
    case StmtKind::While: {
      n += s->expr->node_count;
      for (const auto& t : s->body) n += stmt_node_count(t);
      return n;
    }
    case StmtKind::If: {
      n += s->expr->node_count;
      for (const auto& t : s->body) n += stmt_node_count(t);
      for (const auto& t : s->body2) n += stmt_node_count(t);
      return n;
    }
    default: return n;
  }
}

inline std::uint64_t program_node_count(const Program& p) {
  std::uint64_t n = 0;
  for (const auto& s : p.body) n += stmt_node_count(s);
  return n;
}

inline std::uint32_t expr_max_var(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Var: return e->var;
    case ExprKind::NilLit: return 0;
    case ExprKind::Hd:
    case ExprKind::Tl: return expr_max_var(e->a);
    default: return std::max(expr_max_var(e->a), expr_max_var(e->b));
  }
}

inline std::uint32_t stmt_max_var(const StmtPtr& s) {
  std::uint32_t m = s->var;
  switch (s->kind) {
    case StmtKind::Assign: return std::max(m, expr_max_var(s->expr));
    case StmtKind::While: {
      m = std::max(m, expr_max_var(s->expr));
      for (const auto& t : s->body) m = std::max(m, stmt_max_var(t));
      return m;
    }
    case StmtKind::If: {
      m = std::max(m, expr_max_var(s->expr));
      for (const auto& t : s->body) m = std::max(m, stmt_max_var(t));
      for (const auto& t : s->body2) m = std::max(m, stmt_max_var(t));
      return m;
    }
    default: return std::max({m, s->var2, s->var3});
  }
}

inline std::uint32_t program_max_var(const Program& p) {
  std::uint32_t m = 0;
  for (const auto& s : p.body) m = std::max(m, stmt_max_var(s));
  return m;
}

/// Renames every variable except the I/O channel X0 by +delta. Used to give
/// composed program fragments disjoint scratch space.
inline ExprPtr expr_shift(const ExprPtr& e, std::uint32_t delta) {
  auto sh = [&](std::uint32_t v) { return v == 0 ? 0 : v + delta; };
  switch (e->kind) {
    case ExprKind::Var: return e_var(sh(e->var));
    case ExprKind::NilLit: return e;
    case ExprKind::Hd: return e_hd(expr_shift(e->a, delta));
    case ExprKind::Tl: return e_tl(expr_shift(e->a, delta));
    case ExprKind::ConsE: return e_cons(expr_shift(e->a, delta), expr_shift(e->b, delta));
    case ExprKind::EqAtom: return e_eq(expr_shift(e->a, delta), expr_shift(e->b, delta));
  }
  throw std::logic_error("bad expr kind");
}

inline StmtPtr stmt_shift(const StmtPtr& s, std::uint32_t delta) {
  auto sh = [&](std::uint32_t v) { return v == 0 ? 0u : v + delta; };
  switch (s->kind) {
    case StmtKind::Assign: return s_assign(sh(s->var), expr_shift(s->expr, delta));
    case StmtKind::While: {
      std::vector<StmtPtr> body;
      body.reserve(s->body.size());
      for (const auto& t : s->body) body.push_back(stmt_shift(t, delta));
      return s_while(expr_shift(s->expr, delta), std::move(body));
    }
    case StmtKind::If: {
      std::vector<StmtPtr> b1, b2;
      for (const auto& t : s->body) b1.push_back(stmt_shift(t, delta));
      for (const auto& t : s->body2) b2.push_back(stmt_shift(t, delta));
      return s_if(expr_shift(s->expr, delta), std::move(b1), std::move(b2));
    }
    case StmtKind::SplitPair: return s_split(sh(s->var), sh(s->var2), sh(s->var3));
    case StmtKind::JoinPair: return s_join(sh(s->var2), sh(s->var3), sh(s->var));
  }
  throw std::logic_error("bad stmt kind");
}

inline Program program_shift(const Program& p, std::uint32_t delta) {
  Program out;
  out.body.reserve(p.body.size());
  for (const auto& s : p.body) out.body.push_back(stmt_shift(s, delta));
  return out;
}

// ---------------------------------------------------------------------------
// Concrete syntax.
//
//   stmt  := Xk ':=' expr
//          | 'while' expr '{' stmts '}'
//          | 'if' expr '{' stmts '}' 'else' '{' stmts '}'
//          | 'split' Xk 'into' '(' Xi ',' Xj ')'
//          | 'join' '(' Xi ',' Xj ')' 'into' Xk
//   stmts := [stmt (';' stmt)*] [';']
//   expr  := 'nil' | Xk | 'cons' '(' expr ',' expr ')' | 'hd' expr
//          | 'tl' expr | 'eq?' '(' expr ',' expr ')'
// ---------------------------------------------------------------------------

namespace detail {

class ProgramParser {
 public:
  explicit ProgramParser(const std::string& text) : text_(text) {}

  Program parse() {
    Program p;
    p.body = parse_stmts(true);
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected input after program");
    return p;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, line_, col_); }

  void advance() {
    if (pos_ < text_.size() && text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '#') {  // line comment
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  bool peek_char(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect_char(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    advance();
  }

  static bool word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '?';
  }

  std::string peek_word() {
    skip_ws();
    std::size_t j = pos_;
    std::string w;
    while (j < text_.size() && word_char(text_[j])) w += text_[j++];
    return w;
  }

  void consume_word(const std::string& w) {
    skip_ws();
    for (char c : w) {
      if (pos_ >= text_.size() || text_[pos_] != c) fail("expected '" + w + "'");
      advance();
    }
  }

  std::uint32_t parse_var() {
    skip_ws();
    if (pos_ >= text_.size() || (text_[pos_] != 'X' && text_[pos_] != 'x'))
      fail("expected a variable like X0");
    advance();
    if (pos_ >= text_.size() || text_[pos_] < '0' || text_[pos_] > '9')
      fail("expected a variable index");
    std::uint64_t k = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      k = k * 10 + (text_[pos_] - '0');
      if (k > 0xffffff) fail("variable index too large");
      advance();
    }
    return static_cast<std::uint32_t>(k);
  }

  ExprPtr parse_expr() {
    std::string w = peek_word();
    if (w == "nil") {
      consume_word("nil");
      return e_nil();
    }
    if (w == "hd") {
      consume_word("hd");
      return e_hd(parse_expr());
    }
    if (w == "tl") {
      consume_word("tl");
      return e_tl(parse_expr());
    }
    if (w == "cons") {
      consume_word("cons");
      expect_char('(');
      ExprPtr a = parse_expr();
      expect_char(',');
      ExprPtr b = parse_expr();
      expect_char(')');
      return e_cons(std::move(a), std::move(b));
    }
    if (w == "eq?") {
      consume_word("eq?");
      expect_char('(');
      ExprPtr a = parse_expr();
      expect_char(',');
      ExprPtr b = parse_expr();
      expect_char(')');
      return e_eq(std::move(a), std::move(b));
    }
    if (!w.empty() && (w[0] == 'X' || w[0] == 'x')) return e_var(parse_var());
    fail("expected an expression");
  }

  std::vector<StmtPtr> parse_block() {
    expect_char('{');
    std::vector<StmtPtr> body = parse_stmts(false);
    expect_char('}');
    return body;
  }

  std::vector<StmtPtr> parse_stmts(bool top_level) {
    std::vector<StmtPtr> out;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      if (!top_level && text_[pos_] == '}') break;
      out.push_back(parse_stmt());
      skip_ws();
      if (peek_char(';')) {
        expect_char(';');
        continue;
      }
      break;
    }
    return out;
  }

  StmtPtr parse_stmt() {
    std::string w = peek_word();
    if (w == "while") {
      consume_word("while");
      ExprPtr g = parse_expr();
      return s_while(std::move(g), parse_block());
    }
    if (w == "if") {
      consume_word("if");
      ExprPtr g = parse_expr();
      std::vector<StmtPtr> then_b = parse_block();
      consume_word("else");
      std::vector<StmtPtr> else_b = parse_block();
      return s_if(std::move(g), std::move(then_b), std::move(else_b));
    }
    if (w == "split") {
      consume_word("split");
      std::uint32_t src = parse_var();
      consume_word("into");
      expect_char('(');
      std::uint32_t d1 = parse_var();
      expect_char(',');
      std::uint32_t d2 = parse_var();
      expect_char(')');
      return s_split(src, d1, d2);
    }
    if (w == "join") {
      consume_word("join");
      expect_char('(');
      std::uint32_t a = parse_var();
      expect_char(',');
      std::uint32_t b = parse_var();
      expect_char(')');
      consume_word("into");
      std::uint32_t dst = parse_var();
      return s_join(a, b, dst);
    }
    if (!w.empty() && (w[0] == 'X' || w[0] == 'x')) {
      std::uint32_t v = parse_var();
      skip_ws();
      consume_word(":");
      consume_word("=");
      return s_assign(v, parse_expr());
    }
    fail("expected a statement");
  }
};

}  // namespace detail

inline Program parse_program(const std::string& text) {
  return detail::ProgramParser(text).parse();
}

// Printer: round-trips with parse_program.

inline void print_expr(const ExprPtr& e, std::string& out) {
  switch (e->kind) {
    case ExprKind::Var: out += "X" + std::to_string(e->var); return;
    case ExprKind::NilLit: out += "nil"; return;
    case ExprKind::Hd:
      out += "hd ";
      print_expr(e->a, out);
      return;
    case ExprKind::Tl:
      out += "tl ";
      print_expr(e->a, out);
      return;
    case ExprKind::ConsE:
      out += "cons(";
      print_expr(e->a, out);
      out += ", ";
      print_expr(e->b, out);
      out += ")";
      return;
    case ExprKind::EqAtom:
      out += "eq?(";
      print_expr(e->a, out);
      out += ", ";
      print_expr(e->b, out);
      out += ")";
      return;
  }
}

inline void print_stmts(const std::vector<StmtPtr>& body, std::string& out, int indent);

inline void print_stmt(const StmtPtr& s, std::string& out, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  out += pad;
  switch (s->kind) {
    case StmtKind::Assign:
      out += "X" + std::to_string(s->var) + " := ";
      print_expr(s->expr, out);
      return;
    case StmtKind::While:
      out += "while ";
      print_expr(s->expr, out);
      out += " {\n";
      print_stmts(s->body, out, indent + 1);
      out += pad + "}";
      return;
    case StmtKind::If:
      out += "if ";
      print_expr(s->expr, out);
      out += " {\n";
      print_stmts(s->body, out, indent + 1);
      out += pad + "} else {\n";
      print_stmts(s->body2, out, indent + 1);
      out += pad + "}";
      return;
    case StmtKind::SplitPair:
      out += "split X" + std::to_string(s->var) + " into (X" + std::to_string(s->var2) + ", X" +
             std::to_string(s->var3) + ")";
      return;
    case StmtKind::JoinPair:
      out += "join (X" + std::to_string(s->var2) + ", X" + std::to_string(s->var3) +
             ") into X" + std::to_string(s->var);
      return;
  }
}

inline void print_stmts(const std::vector<StmtPtr>& body, std::string& out, int indent) {
  for (std::size_t i = 0; i < body.size(); ++i) {
    print_stmt(body[i], out, indent);
    if (i + 1 < body.size()) out += ";";
    out += "\n";
  }
}

inline std::string print_program(const Program& p) {
  std::string out;
  print_stmts(p.body, out, 0);
  return out;
}

}  // namespace moncomp
