#include <catch2/catch_amalgamated.hpp>

#include "moncomp/encoding.hpp"
#include "moncomp/machine.hpp"
#include "moncomp/random.hpp"

using namespace moncomp;

TEST_CASE("program codes round-trip") {
  Program id = parse_program("X0 := X0");
  CHECK(decode_program(encode_program(id)) == id);
  Tree code = encode_program(id);
  CHECK(encode_program(decode_program(code)) == code);

  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    Program p = random_program(rng, 40);
    CHECK(decode_program(encode_program(p)) == p);
  }
}

TEST_CASE("the identity program has a stable code") {
  // golden value, frozen once: (nil . ((assign-tag . (X0 . (var-tag . X0-index))) list))
  CHECK(print_tree(encode_program(parse_program("X0 := X0"))) ==
        "(() . ((() . (() . (() . ()))) . ()))");
}

TEST_CASE("decode rejects ill-formed codes") {
  CHECK_THROWS_AS(decode_program(Tree::nil()), decode_error);
  // missing the program wrapper
  CHECK_THROWS_AS(decode_program(tree_nat(3)), decode_error);
  // statement tag out of range: (5 . nil) as the only statement
  Tree bad_stmt = Tree::cons(tree_nat(5), Tree::nil());
  CHECK_THROWS_AS(decode_program(Tree::cons(Tree::nil(), Tree::cons(bad_stmt, Tree::nil()))),
                  decode_error);
  // a variable reference whose index is not a numeral
  Tree bad_var = Tree::cons(Tree::nil(), Tree::cons(Tree::cons(Tree::nil(), Tree::nil()),
                                                    Tree::nil()));
  Tree assign = Tree::cons(tree_nat(0), Tree::cons(tree_nat(0), bad_var));
  CHECK_THROWS_AS(decode_program(Tree::cons(Tree::nil(), Tree::cons(assign, Tree::nil()))),
                  decode_error);
  // tags must be unary numerals
  Tree junk_tag = Tree::cons(Tree::cons(Tree::cons(Tree::nil(), Tree::nil()), Tree::nil()),
                             Tree::nil());
  CHECK_THROWS_AS(decode_program(Tree::cons(Tree::nil(), Tree::cons(junk_tag, Tree::nil()))),
                  decode_error);
}

TEST_CASE("boolean and numeral retractions") {
  Retraction rb = retraction(RetractTag::Bool);
  CHECK(rb.project(tree_bool(true)).value == tree_bool(true));
  CHECK(rb.project(tree_bool(false)).value == tree_bool(false));
  auto out = rb.project(tree_nat(3));
  CHECK_FALSE(out.in_image);
  CHECK(out.value == Tree::nil());

  CHECK(print_tree(tree_nat(3)) == "(() . (() . (() . ())))");
  Retraction rn = retraction(RetractTag::Nat);
  CHECK(rn.project(tree_nat(17)).in_image);
  CHECK_FALSE(rn.project(Tree::cons(tree_nat(1), Tree::nil())).in_image);
}

TEST_CASE("trace and program retractions validate through the decoders") {
  Rng rng(31);
  Retraction rt = retraction(RetractTag::TraceCode);
  Retraction rp = retraction(RetractTag::ProgramCode);
  for (int i = 0; i < 50; ++i) {
    Program p = random_program(rng, 20);
    Tree input = random_tree(rng, 5);
    Outcome o = run(p, input, ExtNat::of(2000));
    if (!o.halted) continue;
    Tree tc = encode_trace(o.trace);
    CHECK(rt.project(rt.embed(tc)).value == tc);
    Tree pc = encode_program(p);
    CHECK(rp.project(rp.embed(pc)).value == pc);
  }
  CHECK_FALSE(rt.project(Tree::nil()).in_image);
  CHECK_FALSE(rp.project(Tree::nil()).in_image);
}
