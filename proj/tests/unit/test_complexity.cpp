#include <catch2/catch_amalgamated.hpp>

#include "moncomp/complexity.hpp"
#include "moncomp/random.hpp"

using namespace moncomp;

namespace {
Tree nil() { return Tree::nil(); }
Tree c(const Tree& a, const Tree& b) { return Tree::cons(a, b); }
Tree code_of(const char* src) { return encode_program(parse_program(src)); }
}  // namespace

TEST_CASE("the trace predicate accepts exactly the genuine trace") {
  Tree id = code_of("X0 := X0");
  Tree t = c(nil(), nil());
  Outcome o = run(parse_program("X0 := X0"), t);
  Tree genuine = encode_trace(o.trace);
  CHECK(kleene_T(id, t, genuine));
  CHECK_FALSE(kleene_T(id, t, nil()));
  // trace of a different input: the initial configuration mismatches
  Outcome other = run(parse_program("X0 := X0"), nil());
  CHECK_FALSE(kleene_T(id, t, encode_trace(other.trace)));
  // incomplete traces are rejected
  Outcome partial = run(parse_program("X0 := X0;\nX0 := X0"), t, ExtNat::of(2));
  CHECK_FALSE(kleene_T(code_of("X0 := X0;\nX0 := X0"), t, encode_trace(partial.trace)));
  // ill-formed program codes never accept
  CHECK_FALSE(kleene_T(nil(), t, genuine));
}

TEST_CASE("naive search finds the identity trace within a million candidates") {
  Tree id = code_of("X0 := X0");
  TreeEnumerator en;
  auto found = mu_search_naive(id, nil(), 1000000, &en);
  REQUIRE(found.has_value());
  Outcome o = run(parse_program("X0 := X0"), nil());
  CHECK(*found == encode_trace(o.trace));
  CHECK(kleene_T(id, nil(), *found));
  CHECK_FALSE(mu_search_naive(id, nil(), 0, &en).has_value());
}

TEST_CASE("effective search produces the same trace as the machine") {
  Rng rng(61);
  for (int i = 0; i < 60; ++i) {
    Program p = random_program(rng, 25);
    Tree input = random_tree(rng, 4);
    Outcome o = run(p, input, ExtNat::of(2000));
    Tree code = encode_program(p);
    auto found = mu_search_effective(code, input, ExtNat::of(2000));
    if (o.halted) {
      REQUIRE(found.has_value());
      CHECK(*found == encode_trace(o.trace));
      CHECK(extract_output(*found) == o.value);
    } else {
      CHECK_FALSE(found.has_value());
    }
  }
  // the looping program is never found at a finite cap
  CHECK_FALSE(mu_search_effective(code_of("while eq?(nil, nil) { }"), nil(),
                                  ExtNat::of(5000)).has_value());
}

TEST_CASE("normal-form evaluation is graded evaluation") {
  Tree id = code_of("X0 := X0");
  auto v = normal_form_eval(id, c(nil(), nil()), ExtNat::inf());
  REQUIRE(v.has_value());
  CHECK(*v == c(nil(), nil()));
  CHECK_FALSE(normal_form_eval(id, nil(), ExtNat::of(1)).has_value());

  Rng rng(67);
  for (int i = 0; i < 80; ++i) {
    Program p = random_program(rng, 25);
    Tree input = random_tree(rng, 4);
    std::uint64_t fuel = rand_below(rng, 60);
    Outcome o = run(p, input, ExtNat::of(fuel), false);
    auto nf = normal_form_eval(encode_program(p), input, ExtNat::of(fuel));
    if (o.halted) {
      REQUIRE(nf.has_value());
      CHECK(*nf == o.value);
    } else {
      CHECK_FALSE(nf.has_value());
    }
  }
}

TEST_CASE("time and space measures") {
  Tree id = code_of("X0 := X0");
  auto t = measure(time_measure(), id, nil(), ExtNat::inf());
  REQUIRE(t.has_value());
  CHECK(*t == Grade::nat(2));

  Tree big = c(c(nil(), nil()), c(nil(), nil()));
  auto s = measure(space_measure(), id, big, ExtNat::inf());
  REQUIRE(s.has_value());
  CHECK(leq(Grade::nat(big.size()), *s));

  CHECK_FALSE(measure(time_measure(), code_of("while eq?(nil, nil) { }"), nil(),
                      ExtNat::of(500)).has_value());
}

TEST_CASE("grade embedding section law") {
  const Measure& m = time_measure();
  for (std::uint64_t v : {0ull, 1ull, 2ull, 17ull, 100000ull})
    CHECK(m.kappa_star(m.kappa_lower(Grade::nat(v))) == Grade::nat(v));
  Grade inf = Grade::infinity(MonoidKind::CompletedNat);
  CHECK(m.kappa_star(m.kappa_lower(inf)) == inf);
  // extraction on a genuine trace code
  Outcome o = run(parse_program("X0 := hd X0"), c(nil(), nil()));
  CHECK(m.kappa_star(encode_trace(o.trace)) == Grade::nat(o.time));
  CHECK(space_measure().kappa_star(encode_trace(o.trace)) == Grade::nat(o.space));
}

TEST_CASE("halting agreement") {
  CHECK(blum_halt_agree(code_of("X0 := X0"), nil(), ExtNat::of(100)));
  CHECK(blum_halt_agree(code_of("while eq?(nil, nil) { }"), nil(), ExtNat::of(10000)));
}

TEST_CASE("bound decision: identity costs two") {
  Tree id = code_of("X0 := X0");
  CHECK_FALSE(blum_decide_leq(time_measure(), id, nil(), ExtNat::of(1)));
  CHECK(blum_decide_leq(time_measure(), id, nil(), ExtNat::of(2)));
}

TEST_CASE("bound decision terminates on divergent programs") {
  Tree spin = code_of("while eq?(nil, nil) { }");
  for (std::uint64_t n : {0ull, 5ull, 50ull})
    CHECK_FALSE(blum_decide_leq(time_measure(), spin, nil(), ExtNat::of(n)));
  // constant-space divergence is caught by the repetition detector
  for (std::uint64_t n : {0ull, 4ull, 100ull})
    CHECK_FALSE(blum_decide_leq(space_measure(), spin, nil(), ExtNat::of(n)));
  // growing-space divergence exceeds any bound
  Tree grow = encode_program(growing_divergent_program());
  CHECK_FALSE(blum_decide_leq(space_measure(), grow, nil(), ExtNat::of(64)));
}

TEST_CASE("bound decision agrees with the brute oracle") {
  Rng rng(71);
  for (int i = 0; i < 40; ++i) {
    Program p = random_program(rng, 20);
    Tree input = random_tree(rng, 4);
    Tree code = encode_program(p);
    Outcome o = run(p, input, ExtNat::of(5000), true);
    for (std::uint64_t n : {0ull, 1ull, 3ull, 10ull, 50ull, 400ull}) {
      CHECK(blum_decide_leq(time_measure(), code, input, ExtNat::of(n)) ==
            (o.halted && o.time <= n));
      CHECK(blum_decide_leq(space_measure(), code, input, ExtNat::of(n)) ==
            (o.halted && o.space <= n));
    }
  }
}

TEST_CASE("blum reports check out") {
  BlumReport rep = blum_report(time_measure(), code_of("X0 := X0"), nil(), {0, 1, 2, 3},
                               ExtNat::of(100));
  CHECK(rep.halt_agreement);
  CHECK(rep.all_agree());
  REQUIRE(rep.bound_checks.size() == 4);
  CHECK_FALSE(rep.bound_checks[1].decided);
  CHECK(rep.bound_checks[2].decided);
}

TEST_CASE("measuring program emits the embedded grade") {
  const Program& cprog = measuring_program();
  Program id = parse_program("X0 := X0");
  Outcome o = run(cprog, c(encode_program(id), nil()), ExtNat::inf(), false);
  REQUIRE(o.halted);
  CHECK(o.value == tree_nat(2));
  CHECK(time_measure().kappa_star(o.value) == Grade::nat(2));
}

TEST_CASE("chi-bound certification on a split corpus") {
  Rng rng(73);
  std::vector<CorpusCase> cases = random_halting_corpus(rng, 40, 1500, 25);
  std::vector<std::pair<Tree, Tree>> corpus;
  for (const auto& cs : cases) corpus.emplace_back(encode_program(cs.program), cs.input);
  std::vector<std::pair<Tree, Tree>> calib(corpus.begin(), corpus.begin() + 20);
  std::vector<std::pair<Tree, Tree>> valid(corpus.begin() + 20, corpus.end());
  NormalityReport fit = normality_certify(time_measure(), calib, ChiBound{1, 0});
  NormalityReport val = normality_certify(time_measure(), valid, robust_chi(fit.entries));
  CHECK(val.all_ok());
  // empty corpus produces an empty report
  NormalityReport empty = normality_certify(time_measure(), {}, ChiBound{1, 0});
  CHECK(empty.entries.empty());
  CHECK(empty.all_ok());
  // non-halting entries are excluded and reported
  NormalityReport bad = normality_certify(
      time_measure(), {{encode_program(growing_divergent_program()), nil()}}, ChiBound{1, 0},
      ExtNat::of(500));
  CHECK(bad.entries.empty());
  REQUIRE(bad.excluded.size() == 1);
}

TEST_CASE("the measure order is the grading order") {
  CHECK(order_predicate(time_measure(), Grade::nat(3), Grade::nat(5)));
  CHECK_FALSE(order_predicate(time_measure(), Grade::nat(5), Grade::nat(3)));
  CHECK(order_predicate(time_measure(), Grade::nat(5),
                        Grade::infinity(MonoidKind::CompletedNat)));
  Rng rng(79);
  for (int i = 0; i < 200; ++i) {
    Grade a = Grade::nat(rand_below(rng, 100));
    Grade b = Grade::nat(rand_below(rng, 100));
    CHECK(order_predicate(space_measure(), a, b) == leq(a, b));
  }
}
