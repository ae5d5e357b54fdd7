#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "moncomp/diagram.hpp"
#include "moncomp/grade.hpp"
#include "moncomp/machine.hpp"
#include "moncomp/program.hpp"
#include "moncomp/tree.hpp"

namespace moncomp {

using Rng = std::mt19937_64;

inline std::uint64_t rand_below(Rng& rng, std::uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

inline Tree random_tree(Rng& rng, std::uint64_t max_nodes) {
  if (max_nodes == 0 || rand_below(rng, 3) == 0) return Tree::nil();
  std::uint64_t left = rand_below(rng, max_nodes);
  return Tree::cons(random_tree(rng, left), random_tree(rng, max_nodes - 1 - left));
}

// ---------------------------------------------------------------------------
// Random programs. Biased toward terminating shapes (loop guards walk a list
// tail) but arbitrary constructs appear; callers that need a halting corpus
// filter by running with a cap.
// ---------------------------------------------------------------------------

inline ExprPtr random_expr(Rng& rng, std::uint32_t max_var, std::uint32_t depth) {
  if (depth == 0) {
    return rand_below(rng, 2) ? e_var(static_cast<std::uint32_t>(rand_below(rng, max_var + 1)))
                              : e_nil();
  }
  switch (rand_below(rng, 6)) {
    case 0: return e_var(static_cast<std::uint32_t>(rand_below(rng, max_var + 1)));
    case 1: return e_nil();
    case 2: return e_cons(random_expr(rng, max_var, depth - 1), random_expr(rng, max_var, depth - 1));
    case 3: return e_hd(random_expr(rng, max_var, depth - 1));
    case 4: return e_tl(random_expr(rng, max_var, depth - 1));
    default:
      return e_eq(random_expr(rng, max_var, depth - 1), random_expr(rng, max_var, depth - 1));
  }
}

inline std::vector<StmtPtr> random_stmts(Rng& rng, std::uint32_t max_var, std::uint64_t budget,
                                         std::uint32_t loop_depth);

inline StmtPtr random_stmt(Rng& rng, std::uint32_t max_var, std::uint64_t budget,
                           std::uint32_t loop_depth) {
  std::uint64_t pick = rand_below(rng, loop_depth < 2 && budget >= 6 ? 7 : 5);
  auto var = [&] { return static_cast<std::uint32_t>(rand_below(rng, max_var + 1)); };
  switch (pick) {
    case 0:
    case 1:
    case 2: return s_assign(var(), random_expr(rng, max_var, 2));
    case 3: return s_split(var(), var(), var());
    case 4: return s_join(var(), var(), var());
    case 5: {  // a while loop that walks a variable down, usually terminating
      std::uint32_t v = var();
      std::vector<StmtPtr> body = random_stmts(rng, max_var, budget / 2, loop_depth + 1);
      body.push_back(s_assign(v, e_tl(e_var(v))));
      return s_while(e_var(v), std::move(body));
    }
    default:
      return s_if(random_expr(rng, max_var, 1), random_stmts(rng, max_var, budget / 2, loop_depth + 1),
                  random_stmts(rng, max_var, budget / 2, loop_depth + 1));
  }
}

inline std::vector<StmtPtr> random_stmts(Rng& rng, std::uint32_t max_var, std::uint64_t budget,
                                         std::uint32_t loop_depth) {
  std::vector<StmtPtr> out;
  std::uint64_t count = 1 + rand_below(rng, 3);
  for (std::uint64_t i = 0; i < count && budget > 0; ++i) {
    StmtPtr s = random_stmt(rng, max_var, budget, loop_depth);
    std::uint64_t n = stmt_node_count(s);
    if (n > budget) break;
    budget -= n;
    out.push_back(std::move(s));
  }
  return out;
}

/// Random program of at most max_nodes AST nodes.
inline Program random_program(Rng& rng, std::uint64_t max_nodes = 40, std::uint32_t max_var = 3) {
  Program p;
  while (p.body.empty()) p.body = random_stmts(rng, max_var, max_nodes, 0);
  return p;
}

struct CorpusCase {
  Program program;
  Tree input;
};

/// Programs paired with inputs that halt within the cap.
inline std::vector<CorpusCase> random_halting_corpus(Rng& rng, std::size_t count,
                                                     std::uint64_t fuel_cap,
                                                     std::uint64_t max_nodes = 40) {
  std::vector<CorpusCase> out;
  while (out.size() < count) {
    CorpusCase c{random_program(rng, max_nodes), random_tree(rng, 8)};
    Outcome o = run(c.program, c.input, ExtNat::of(fuel_cap), false);
    if (o.halted) out.push_back(std::move(c));
  }
  return out;
}

/// Structurally divergent programs: a costed guard that never falsifies.
inline Program divergent_program(Rng& rng) {
  std::vector<StmtPtr> body;
  if (rand_below(rng, 2)) body.push_back(s_assign(1, random_expr(rng, 1, 1)));
  switch (rand_below(rng, 3)) {
    case 0: body.push_back(s_while(e_eq(e_nil(), e_nil()), {})); break;
    case 1: body.push_back(s_while(e_cons(e_nil(), e_nil()), {s_assign(0, e_tl(e_var(0)))})); break;
    default:
      // constant-space spin: the store stops changing after the first pass
      body.push_back(s_while(e_cons(e_nil(), e_nil()), {s_assign(2, e_nil())}));
      break;
  }
  return Program{std::move(body)};
}

/// A divergent program whose store grows forever (space-unbounded).
inline Program growing_divergent_program() {
  return Program{{s_while(e_cons(e_nil(), e_nil()), {s_assign(0, e_cons(e_nil(), e_var(0)))})}};
}

// ---------------------------------------------------------------------------
// Random grades.
// ---------------------------------------------------------------------------

inline Grade random_grade(Rng& rng, MonoidKind kind, bool allow_infinite = true) {
  if (allow_infinite && rand_below(rng, 10) == 0) return Grade::infinity(kind);
  switch (kind) {
    case MonoidKind::CompletedNat: return Grade::nat(rand_below(rng, 50));
    case MonoidKind::MultisetExpr: {
      static const std::vector<std::string> pool = {"n", "n^2", "log n", "2^n", "1"};
      std::vector<std::string> elems;
      std::uint64_t count = rand_below(rng, 5);
      for (std::uint64_t i = 0; i < count; ++i) elems.push_back(pool[rand_below(rng, pool.size())]);
      return Grade::multiset(elems);
    }
    default: {
      Grade::Coeffs c(rand_below(rng, 5), 0);
      for (auto& x : c) x = rand_below(rng, 6);
      return Grade::poly(kind, std::move(c));
    }
  }
}

// ---------------------------------------------------------------------------
// Random spider-fragment diagrams: a sequence of layers, each inserting one
// generator at a random position of the current wire bundle.
// ---------------------------------------------------------------------------

inline Diagram random_spider_diagram(Rng& rng, const std::string& base,
                                     std::size_t max_generators = 12) {
  std::size_t width = 1 + rand_below(rng, 3);
  Diagram d = d_id(TypeVector(width, base));
  std::size_t gens = rand_below(rng, max_generators + 1);
  for (std::size_t g = 0; g < gens && width > 0; ++g) {
    enum { COPY, DELETE, COMPARE, SWAP } kind;
    std::size_t pos;
    switch (rand_below(rng, 4)) {
      case 0: kind = COPY; break;
      case 1: kind = DELETE; break;
      case 2: kind = width >= 2 ? COMPARE : COPY; break;
      default: kind = width >= 2 ? SWAP : DELETE; break;
    }
    Diagram layer;
    switch (kind) {
      case COPY:
        pos = rand_below(rng, width);
        layer = d_copy(base);
        break;
      case DELETE:
        pos = rand_below(rng, width);
        layer = d_delete(base);
        break;
      case COMPARE:
        pos = rand_below(rng, width - 1);
        layer = d_compare(base);
        break;
      case SWAP:
        pos = rand_below(rng, width - 1);
        layer = d_swap(base, base);
        break;
    }
    std::size_t used = layer->dom.size();
    if (pos > 0) layer = d_par(d_id(TypeVector(pos, base)), layer);
    if (pos + used < width) layer = d_par(layer, d_id(TypeVector(width - pos - used, base)));
    d = d_seq(d, layer);
    width = d->cod.size();
  }
  return d;
}

}  // namespace moncomp
