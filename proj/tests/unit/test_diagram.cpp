#include <catch2/catch_amalgamated.hpp>

#include "moncomp/diagram.hpp"
#include "moncomp/random.hpp"

using namespace moncomp;

namespace {
const std::string A = "A";
}

TEST_CASE("boundaries compose") {
  Diagram copy = d_copy(A), del = d_delete(A);
  Diagram both = d_par(copy, del);
  CHECK(both->dom == TypeVector{A, A});
  CHECK(both->cod == TypeVector{A, A});
  CHECK_THROWS_AS(d_seq(d_copy(A), d_copy(A)), diagram_error);  // [A,A] vs [A]
  Diagram unit_par = d_par(d_id({}), d_compare(A));
  CHECK(unit_par->dom == TypeVector{A, A});
}

TEST_CASE("counit and special laws via sequencing") {
  Diagram lhs = d_seq(d_copy(A), d_par(d_delete(A), d_id({A})));
  CHECK(diagrams_equal(lhs, d_id({A})).equal);
  CHECK(diagrams_equal(d_seq(d_copy(A), d_compare(A)), d_id({A})).equal);
  CHECK(diagrams_equal(d_seq(d_id({A}), d_copy(A)), d_copy(A)).equal);
}

TEST_CASE("spider normal forms") {
  SpiderNF copy_nf = spider_normalize(d_copy(A));
  CHECK(copy_nf.inputs == 1);
  CHECK(copy_nf.outputs == 2);
  REQUIRE(copy_nf.blocks.size() == 1);
  CHECK(copy_nf.blocks[0] == std::vector<std::size_t>{0, 1, 2});

  // coassociativity: both nestings normalize identically
  Diagram l = d_seq(d_copy(A), d_par(d_id({A}), d_copy(A)));
  Diagram r = d_seq(d_copy(A), d_par(d_copy(A), d_id({A})));
  CHECK(spider_normalize(l) == spider_normalize(r));

  SpiderNF two_wires = spider_normalize(d_par(d_id({A}), d_id({A})));
  REQUIRE(two_wires.blocks.size() == 2);
  CHECK(two_wires.blocks[0] == std::vector<std::size_t>{0, 2});
  CHECK(two_wires.blocks[1] == std::vector<std::size_t>{1, 3});

  CHECK_THROWS_AS(spider_normalize(d_gen("f", {A}, {A})), diagram_error);
}

TEST_CASE("relational semantics of the generators") {
  FinRel cmp = finrel_eval(d_compare(A), 2);
  FinRel expected{2, 2, 1, {{{0, 0}, {0}}, {{1, 1}, {1}}}};
  CHECK(cmp == expected);

  CHECK(finrel_eval(d_id({A}), 3) == rel_identity(3, 1));
  CHECK(finrel_eval(d_seq(d_copy(A), d_compare(A)), 3) == rel_identity(3, 1));

  // parallel composition is the product of relations, checked by brute force
  FinRel prod = finrel_eval(d_par(d_copy(A), d_delete(A)), 2);
  CHECK(prod.dom_arity == 2);
  CHECK(prod.cod_arity == 2);
  FinRel expected_prod{2, 2, 2, {}};
  for (const auto& [a1, b1] : rel_copy(2).pairs)
    for (const auto& [a2, b2] : rel_delete(2).pairs) {
      std::vector<int> a = a1, b = b1;
      a.insert(a.end(), a2.begin(), a2.end());
      b.insert(b.end(), b2.begin(), b2.end());
      expected_prod.pairs.insert({a, b});
    }
  CHECK(prod == expected_prod);
  CHECK(prod.pairs.count({{1, 0}, {1, 1}}) == 1);
}

TEST_CASE("generator environments") {
  Diagram f = d_gen("f", {A}, {A});
  FinRelEnv env;
  env["f"] = rel_copy(2);  // wrong arity
  CHECK_THROWS_AS(finrel_eval(f, 2, env), diagram_error);
  CHECK_THROWS_AS(finrel_eval(f, 2, {}), diagram_error);
  env["f"] = rel_identity(2, 1);
  CHECK(finrel_eval(f, 2, env) == rel_identity(2, 1));
}

TEST_CASE("functions are the single-valued total relations") {
  CHECK(is_function(rel_identity(3, 1)));
  FinRel not_single{2, 1, 1, {{{0}, {0}}, {{0}, {1}}, {{1}, {0}}}};
  CHECK_FALSE(is_function(not_single));
  FinRel not_total{2, 1, 1, {{{0}, {0}}}};
  CHECK_FALSE(is_function(not_total));
  CHECK_FALSE(is_function(rel_compare(2)));  // undefined off the diagonal
  CHECK(is_function(rel_copy(2)));
  CHECK(is_function(rel_delete(2)));
}

TEST_CASE("cocommutativity holds in the spider fragment and the oracle") {
  Diagram lhs = d_seq(d_copy(A), d_swap(A, A));
  EqResult by_nf = diagrams_equal(lhs, d_copy(A));
  CHECK(by_nf.equal);
  CHECK(by_nf.exact);
  CHECK(finrel_eval(lhs, 3) == finrel_eval(d_copy(A), 3));
}

TEST_CASE("oracle equality flags itself") {
  Diagram f1 = d_gen("f", {A}, {A});
  Diagram wrapped = d_seq(f1, d_id({A}));
  EnvCandidates cands;
  cands["f"].push_back({[](int k) { return rel_identity(k, 1); }});
  cands["f"].push_back({[](int k) {
    FinRel r{k, 1, 1, {}};
    for (int x = 0; x < k; ++x) r.pairs.insert({{x}, {0}});
    return r;
  }});
  EqResult r = diagrams_equal(wrapped, f1, cands);
  CHECK(r.equal);
  CHECK_FALSE(r.exact);
  CHECK_THROWS_AS(diagrams_equal(f1, d_gen("g", {A}, {A})), diagram_error);
  // mismatched boundaries are rejected outright
  CHECK_THROWS_AS(diagrams_equal(d_copy(A), d_id({A})), diagram_error);
}

TEST_CASE("rebuilt normal forms are semantically identical") {
  Rng rng(53);
  for (int i = 0; i < 120; ++i) {
    Diagram d = random_spider_diagram(rng, A);
    SpiderNF nf = spider_normalize(d);
    for (const auto& block : nf.blocks) {
      REQUIRE(!block.empty());
      CHECK(block.front() < nf.inputs);  // every block touches an input
    }
    Diagram rb = spider_rebuild(nf, A);
    CHECK(finrel_eval(d, 2) == finrel_eval(rb, 2));
    CHECK(spider_normalize(rb) == nf);
  }
}
