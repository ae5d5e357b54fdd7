#include <catch2/catch_amalgamated.hpp>

#include "moncomp/program.hpp"
#include "moncomp/random.hpp"

using namespace moncomp;

TEST_CASE("parsing the basic forms") {
  Program id = parse_program("X0 := X0");
  REQUIRE(id.body.size() == 1);
  CHECK(id.body[0]->kind == StmtKind::Assign);
  CHECK(id.body[0]->cost == 2);  // one for the statement, one for the variable node

  Program loop = parse_program("while X0 { X0 := tl X0 }");
  REQUIRE(loop.body.size() == 1);
  CHECK(loop.body[0]->kind == StmtKind::While);
  REQUIRE(loop.body[0]->body.size() == 1);

  Program sj = parse_program("split X0 into (X1, X2);\njoin (X2, X1) into X0");
  REQUIRE(sj.body.size() == 2);
  CHECK(sj.body[0]->kind == StmtKind::SplitPair);
  CHECK(sj.body[0]->cost == 0);
  CHECK(sj.body[1]->kind == StmtKind::JoinPair);

  Program br = parse_program("if eq?(X0, nil) { X0 := cons(nil, nil) } else { X0 := hd X0 }");
  REQUIRE(br.body.size() == 1);
  CHECK(br.body[0]->kind == StmtKind::If);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_program("X0 := cons(nil, )");
    FAIL("expected a parse error");
  } catch (const parse_error& e) {
    CHECK(e.line == 1);
    CHECK(e.column >= 17);
  }
  CHECK_THROWS_AS(parse_program("while X0 { X0 := tl X0"), parse_error);
  CHECK_THROWS_AS(parse_program("X9999999999 := nil"), parse_error);
  CHECK_THROWS_AS(parse_program("bogus X0"), parse_error);
}

TEST_CASE("comments and whitespace") {
  Program p = parse_program("# setup\nX0 := nil  # reset\n;\nX1 := X0");
  CHECK(p.body.size() == 2);
}

TEST_CASE("printer round-trips") {
  const char* sources[] = {
      "X0 := X0",
      "while X0 { X0 := tl X0 }",
      "split X0 into (X1, X2);\njoin (X2, X1) into X0",
      "if eq?(X0, nil) { X0 := cons(nil, nil) } else { X0 := hd tl X0 }",
  };
  for (const char* src : sources) {
    Program p = parse_program(src);
    CHECK(parse_program(print_program(p)) == p);
  }
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    Program p = random_program(rng, 40);
    CHECK(parse_program(print_program(p)) == p);
  }
}

TEST_CASE("node counts and variable bounds") {
  Program p = parse_program("X2 := cons(X1, nil)");
  CHECK(program_node_count(p) == 1 + 3);  // statement + three expression nodes
  CHECK(program_max_var(p) == 2);

  Program s = program_shift(p, 10);
  CHECK(program_max_var(s) == 12);
  // X0 is pinned by shifting
  Program q = parse_program("X0 := X1");
  Program qs = program_shift(q, 5);
  CHECK(qs.body[0]->var == 0);
  CHECK(qs.body[0]->expr->var == 6);
}

TEST_CASE("statement costs follow the node rule") {
  Program p = parse_program("X0 := cons(hd X1, eq?(nil, X2))");
  // statement 1 + nodes: cons, hd, X1, eq?, nil, X2 = 6
  CHECK(p.body[0]->cost == 7);
  Program w = parse_program("while eq?(X0, nil) { }");
  CHECK(w.body[0]->cost == 1 + 3);
}
