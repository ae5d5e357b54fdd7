#include <catch2/catch_amalgamated.hpp>

#include "moncomp/machine.hpp"
#include "moncomp/random.hpp"

using namespace moncomp;

namespace {
Tree nil() { return Tree::nil(); }
Tree c(const Tree& a, const Tree& b) { return Tree::cons(a, b); }
}  // namespace

TEST_CASE("step costs follow the statement-plus-nodes rule") {
  Config terminal{nullptr, {nil()}};
  StepResult r0 = step(terminal);
  CHECK(r0.terminal);
  CHECK(r0.cost == 0);

  Program id = parse_program("X0 := X0");
  StepResult r1 = step(initial_config(id, nil()));
  CHECK_FALSE(r1.terminal);
  CHECK(r1.cost == 2);
  CHECK(r1.next.terminal());
  CHECK(store_read(r1.next.store, 0) == nil());

  Program w = parse_program("while nil { X0 := X0 }");
  StepResult r2 = step(initial_config(w, nil()));
  CHECK(r2.cost == 2);
  CHECK(r2.next.terminal());  // guard false: the body is skipped

  Program sj = parse_program("split X0 into (X1, X2)");
  StepResult r3 = step(initial_config(sj, c(nil(), nil())));
  CHECK(r3.cost == 0);
}

TEST_CASE("hd and tl of nil are nil") {
  Program p = parse_program("X0 := hd X0;\nX0 := tl X0");
  Outcome o = run(p, nil());
  CHECK(o.halted);
  CHECK(o.value == nil());
}

TEST_CASE("running the identity program") {
  Program id = parse_program("X0 := X0");
  Tree t = c(c(nil(), nil()), nil());
  Outcome o = run(id, t);
  CHECK(o.halted);
  CHECK(o.value == t);
  CHECK(o.time == 2);
  CHECK(o.space == t.size());
  CHECK(o.trace.configs.size() == 2);
  CHECK(o.trace.complete);
}

TEST_CASE("fuel exhaustion") {
  Program id = parse_program("X0 := X0");
  Outcome o = run(id, nil(), ExtNat::of(0));
  CHECK_FALSE(o.halted);
  CHECK(o.steps_done == 0);
  CHECK_FALSE(o.trace.complete);

  Program loop = parse_program("while eq?(nil, nil) { }");
  Outcome lo = run(loop, nil(), ExtNat::of(1000));
  CHECK_FALSE(lo.halted);
  CHECK(lo.steps_done <= 1000);
}

TEST_CASE("fuel monotonicity around the halting grade") {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    Program p = random_program(rng, 30);
    Tree input = random_tree(rng, 5);
    Outcome full = run(p, input, ExtNat::of(3000));
    if (!full.halted) continue;
    CHECK(full.time <= 3000);  // a halted run never exceeds its budget
    CHECK(full.trace.complete);
    Outcome at = run(p, input, ExtNat::of(full.time));
    CHECK(at.halted);
    CHECK(at.value == full.value);
    CHECK(at.time == full.time);
    CHECK(trace_equal(at.trace, full.trace));
    if (full.time > 0) {
      Outcome below = run(p, input, ExtNat::of(full.time - 1));
      CHECK_FALSE(below.halted);
    }
  }
}

TEST_CASE("trace codes round-trip and replay") {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    Program p = random_program(rng, 30);
    Tree input = random_tree(rng, 5);
    Outcome o = run(p, input, ExtNat::of(3000));
    Trace tr = decode_trace(encode_trace(o.trace));
    CHECK(trace_equal(tr, o.trace));
    if (o.halted) {
      CHECK(tr.time() == o.time);
      CHECK(tr.space() == o.space);
    }
  }
  CHECK_THROWS_AS(decode_trace(Tree::nil()), decode_error);
}

TEST_CASE("decode_trace rejects non-step-related configuration lists") {
  Program id = parse_program("X0 := X0");
  Tree c0 = encode_config(initial_config(id, nil()));
  Tree c_bad = encode_config(initial_config(id, c(nil(), nil())));
  Tree fake = tree_list({c0, c_bad});
  CHECK_THROWS_AS(decode_trace(fake), decode_error);
}

TEST_CASE("partial evaluation specializes on the first component") {
  Program fst = parse_program("X0 := hd X0");
  Tree code = encode_program(fst);
  Tree a = c(nil(), c(nil(), nil()));
  Tree spec = smn(code, a);
  for (const Tree& b : {nil(), c(nil(), nil())}) {
    Outcome o = run(decode_program(spec), b);
    CHECK(o.halted);
    CHECK(o.value == a);
    Outcome direct = run(fst, c(a, b));
    CHECK(o.time == direct.time);
  }
  CHECK_THROWS_AS(smn(Tree::nil(), a), decode_error);
}

TEST_CASE("partial evaluation preserves outcomes at every fuel") {
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    Program f = random_program(rng, 25);
    Tree a = random_tree(rng, 4), b = random_tree(rng, 4);
    Tree spec = smn(encode_program(f), a);
    Program fs = decode_program(spec);
    for (std::uint64_t n : {0ull, 1ull, 5ull, 40ull, 2000ull}) {
      Outcome lhs = run(fs, b, ExtNat::of(n), false);
      Outcome rhs = run(f, c(a, b), ExtNat::of(n), false);
      CHECK(outcomes_agree(lhs, rhs));
    }
  }
}

TEST_CASE("suspension, trace evaluation, output extraction") {
  Program id = parse_program("X0 := X0");
  Tree code = encode_program(id);
  Tree t = c(nil(), nil());
  Tree susp = suspend(code, t);
  // the suspension is the initial configuration
  Config cfg = decode_config(susp);
  CHECK(config_equal(cfg, initial_config(id, t)));

  auto tc = trace_eval(susp, ExtNat::inf());
  REQUIRE(tc.has_value());
  CHECK(extract_output(*tc) == t);
  CHECK_FALSE(trace_eval(susp, ExtNat::of(0)).has_value());
  CHECK_THROWS_AS(suspend(Tree::nil(), t), decode_error);

  // extraction demands a complete trace
  Outcome part = run(parse_program("X0 := X0;\nX0 := X0"), t, ExtNat::of(2));
  CHECK_FALSE(part.halted);
  CHECK_THROWS_AS(extract_output(encode_trace(part.trace)), extraction_error);
}

TEST_CASE("sequential composition is exactly additive") {
  Program id = parse_program("X0 := X0");
  Tree t = c(nil(), nil());
  Outcome once = run(id, t);
  Outcome twice = run(seq_compose(id, id), t);
  CHECK(twice.halted);
  CHECK(twice.time == 2 * once.time);
  CHECK(twice.value == t);
}

TEST_CASE("the empty program is the grade-zero identity of composition") {
  Program empty;
  Tree t = c(c(nil(), nil()), nil());
  Outcome o = run(empty, t);
  CHECK(o.halted);
  CHECK(o.value == t);
  CHECK(o.time == 0);
  CHECK(o.trace.configs.size() == 1);

  Program p = parse_program("X0 := cons(X0, nil)");
  CHECK(seq_compose(p, empty) == p);
  Outcome left = run(seq_compose(empty, p), t);
  Outcome direct = run(p, t);
  CHECK(left.value == direct.value);
  CHECK(left.time == direct.time);
}

TEST_CASE("parallel composition pairs results with additive time") {
  Program p = parse_program("X0 := cons(X0, nil)");
  Program q = parse_program("X0 := hd X0");
  Tree a = nil(), b = c(nil(), nil());
  Outcome po = run(p, a), qo = run(q, b);
  Outcome both = run(par_compose(p, q), c(a, b));
  CHECK(both.halted);
  CHECK(both.value == c(po.value, qo.value));
  CHECK(both.time == po.time + qo.time);
}

TEST_CASE("restriction") {
  Morphism f{parse_program("X0 := X0"), ExtNat::of(10)};
  CHECK(restrict_morphism(restrict_morphism(f, ExtNat::of(7)), ExtNat::of(3)) ==
        restrict_morphism(f, ExtNat::of(3)));
  CHECK(restrict_morphism(f, ExtNat::inf()) == f);
  // the restricted run is the run at the meet of the budgets
  Outcome a = restrict_morphism(f, ExtNat::of(1)).apply(nil());
  Outcome b = run(f.program, nil(), ExtNat::of(1));
  CHECK(a.halted == b.halted);
  CHECK(a.steps_done == b.steps_done);
}

TEST_CASE("data services") {
  Tree t = c(c(nil(), nil()), nil());
  Morphism copy = data_service_morphism(DataServiceKind::Copy);
  Outcome oc = run(copy.program, t, ExtNat::of(0));
  CHECK(oc.halted);
  CHECK(oc.value == c(t, t));
  CHECK(oc.time == 0);

  Morphism del = data_service_morphism(DataServiceKind::Delete);
  Outcome od = run(del.program, t, ExtNat::of(0));
  CHECK(od.halted);
  CHECK(od.value == nil());
  CHECK(od.time == 0);

  Morphism cmp = data_service_morphism(DataServiceKind::Compare);
  Outcome eq = run(cmp.program, c(t, t));
  CHECK(eq.halted);
  CHECK(eq.value == t);
  Outcome ne = run(cmp.program, c(nil(), c(nil(), nil())), ExtNat::of(10000));
  CHECK_FALSE(ne.halted);
}

TEST_CASE("morphism equality uses programs and budgets") {
  Morphism a{parse_program("X0 := X0"), ExtNat::of(5)};
  Morphism b{parse_program("X0 := X0"), ExtNat::of(5)};
  Morphism d{parse_program("X0 := hd X0"), ExtNat::of(5)};
  CHECK(a == b);
  CHECK_FALSE(a == d);
  CHECK_FALSE(a == restrict_morphism(a, ExtNat::of(3)));
}
