#include <catch2/catch_amalgamated.hpp>

#include "moncomp/random.hpp"
#include "moncomp/tree.hpp"

using namespace moncomp;

TEST_CASE("tree basics") {
  Tree n = Tree::nil();
  Tree c = Tree::cons(n, n);
  CHECK(n.is_nil());
  CHECK(c.is_cons());
  CHECK(n.size() == 0);
  CHECK(c.size() == 1);
  CHECK(Tree::cons(c, c).size() == 3);
  CHECK(c == Tree::cons(Tree::nil(), Tree::nil()));
  CHECK(c != n);
  CHECK(c.hd() == n);
  CHECK(n.hd() == n);  // total projections
  CHECK(n.tl() == n);
}

TEST_CASE("tree print and parse") {
  CHECK(print_tree(Tree::nil()) == "()");
  CHECK(print_tree(Tree::cons(Tree::nil(), Tree::nil())) == "(() . ())");
  CHECK(parse_tree("()") == Tree::nil());
  CHECK(parse_tree(" ( ()  .  ( () . () ) ) ") ==
        Tree::cons(Tree::nil(), Tree::cons(Tree::nil(), Tree::nil())));
  CHECK_THROWS_AS(parse_tree("("), parse_error);
  CHECK_THROWS_AS(parse_tree("() ()"), parse_error);
  CHECK_THROWS_AS(parse_tree("(() ())"), parse_error);

  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Tree t = random_tree(rng, 40);
    CHECK(parse_tree(print_tree(t)) == t);
  }
}

TEST_CASE("deep trees survive destruction, printing and parsing") {
  Tree deep = tree_nat(200000);
  CHECK(deep.size() == 200000);
  std::string s = print_tree(deep);
  CHECK(parse_tree(s) == deep);
}

TEST_CASE("unary numerals") {
  CHECK(print_tree(tree_nat(3)) == "(() . (() . (() . ())))");
  std::uint64_t n = 99;
  CHECK(nat_of_tree(tree_nat(0), n));
  CHECK(n == 0);
  CHECK(nat_of_tree(tree_nat(7), n));
  CHECK(n == 7);
  CHECK_FALSE(nat_of_tree(Tree::cons(Tree::cons(Tree::nil(), Tree::nil()), Tree::nil()), n));
}

TEST_CASE("lexicographic order: nil below cons, left before right") {
  Tree n = Tree::nil();
  Tree c1 = Tree::cons(n, n);
  CHECK(lex_less(n, c1));
  CHECK_FALSE(lex_less(c1, n));
  CHECK_FALSE(lex_less(c1, c1));
  // equal left, compare right
  CHECK(lex_less(Tree::cons(n, n), Tree::cons(n, c1)));
  // left dominates even against a bigger right
  CHECK(lex_less(Tree::cons(n, Tree::cons(c1, c1)), Tree::cons(c1, n)));
}

TEST_CASE("canonical enumeration: size buckets in lexicographic order") {
  TreeEnumerator en;
  CHECK(en.bucket(0).size() == 1);
  CHECK(en.bucket(1).size() == 1);
  CHECK(en.bucket(2).size() == 2);
  CHECK(en.bucket(3).size() == 5);
  CHECK(en.bucket(4).size() == 14);
  CHECK(en.bucket(5).size() == 42);
  CHECK(en.bucket(6).size() == 132);

  CHECK(print_tree(en.at(0)) == "()");
  CHECK(print_tree(en.at(1)) == "(() . ())");
  CHECK(print_tree(en.at(2)) == "(() . (() . ()))");
  CHECK(print_tree(en.at(3)) == "((() . ()) . ())");

  // the five trees with three nodes, in order
  CHECK(print_tree(en.at(4)) == "(() . (() . (() . ())))");
  CHECK(print_tree(en.at(5)) == "(() . ((() . ()) . ()))");
  CHECK(print_tree(en.at(6)) == "((() . ()) . (() . ()))");
  CHECK(print_tree(en.at(7)) == "((() . (() . ())) . ())");
  CHECK(print_tree(en.at(8)) == "(((() . ()) . ()) . ())");

  for (std::size_t s = 0; s <= 6; ++s) {
    const auto& b = en.bucket(s);
    for (std::size_t i = 0; i + 1 < b.size(); ++i) CHECK(lex_less(b[i], b[i + 1]));
    for (const auto& t : b) CHECK(t.size() == s);
  }
}
