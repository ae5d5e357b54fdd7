#include <catch2/catch_amalgamated.hpp>

#include "moncomp/serialize.hpp"
#include "moncomp/suite.hpp"

using namespace moncomp;

TEST_CASE("suites run clean at a small scale") {
  for (const auto& rep : run_suites("all", 7, 60)) {
    for (const auto& l : rep.laws) {
      INFO(rep.suite << "/" << l.law);
      CHECK(l.cases > 0);
      CHECK(l.failures == 0);
    }
  }
}

TEST_CASE("suites are deterministic for a fixed seed") {
  SuiteReport a = grading_suite(42, 50);
  SuiteReport b = grading_suite(42, 50);
  REQUIRE(a.laws.size() == b.laws.size());
  for (std::size_t i = 0; i < a.laws.size(); ++i) {
    CHECK(a.laws[i].law == b.laws[i].law);
    CHECK(a.laws[i].cases == b.laws[i].cases);
    CHECK(a.laws[i].failures == b.laws[i].failures);
  }
}

TEST_CASE("the outcome-agreement checker flags a broken specializer") {
  // a deliberately wrong specialization: quotes the pair the wrong way round
  Program f = parse_program("X0 := hd X0");
  Tree a = Tree::cons(Tree::nil(), Tree::nil());
  Tree b = Tree::nil();
  Program broken = decode_program(smn(encode_program(f), b));  // specialized on b, not a
  Outcome lhs = run(broken, b, ExtNat::inf(), false);
  Outcome rhs = run(f, Tree::cons(a, b), ExtNat::inf(), false);
  CHECK_FALSE(outcomes_agree(lhs, rhs));
}

TEST_CASE("grade JSON round-trips") {
  std::vector<Grade> grades = {
      Grade::nat(5),
      Grade::infinity(MonoidKind::CompletedNat),
      Grade::multiset({"e1", "e1", "e2"}),
      Grade::poly_plus({0, 2}),
      Grade::poly_o({0, 0, 1}),
      Grade::infinity(MonoidKind::PolyOClass),
  };
  for (const auto& g : grades) CHECK(grade_from_json(grade_to_json(g)) == g);
  CHECK(grade_to_json(Grade::nat(5)).dump() == "{\"monoid\":\"nat\",\"value\":5}");
  CHECK(grade_to_json(Grade::infinity(MonoidKind::CompletedNat)).dump() ==
        "{\"monoid\":\"nat\",\"value\":\"inf\"}");
}

TEST_CASE("outcome JSON shape") {
  Outcome o = run(parse_program("X0 := X0"), Tree::nil());
  json j = outcome_to_json(o);
  CHECK(j["halted"] == true);
  CHECK(j["value"] == "()");
  CHECK(j["time"] == 2);
  CHECK(j["trace"].is_array());
  CHECK(j["trace"].size() == 2);

  Outcome of = run(parse_program("while eq?(nil, nil) { }"), Tree::nil(), ExtNat::of(10));
  json jf = outcome_to_json(of, false);
  CHECK(jf["halted"] == false);
  CHECK(jf.contains("steps_done"));
  CHECK_FALSE(jf.contains("trace"));
}

TEST_CASE("diagram JSON loads the nested term form") {
  json j = {{"kind", "seq"},
            {"children",
             {{{"kind", "copy"}, {"base", "A"}}, {{"kind", "compare"}, {"base", "A"}}}}};
  Diagram d = diagram_from_json(j);
  CHECK(d->dom == TypeVector{"A"});
  CHECK(d->cod == TypeVector{"A"});
  CHECK(diagrams_equal(d, d_id({"A"})).equal);
  json nf = spider_nf_to_json(spider_normalize(d));
  CHECK(nf["blocks"].size() == 1);
}
