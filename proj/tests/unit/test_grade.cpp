#include <catch2/catch_amalgamated.hpp>

#include "moncomp/grade.hpp"
#include "moncomp/random.hpp"
#include "moncomp/suite.hpp"

using namespace moncomp;

namespace {

Grade pplus(std::initializer_list<std::uint64_t> c) { return Grade::poly_plus(Grade::Coeffs(c)); }
Grade po(std::initializer_list<std::uint64_t> c) { return Grade::poly_o(Grade::Coeffs(c)); }

/// Every poly+ grade with coefficients below the bound, degree below 3.
std::vector<Grade> small_poly_plus(std::uint64_t coeff_bound) {
  std::vector<Grade> out;
  for (std::uint64_t a = 0; a < coeff_bound; ++a)
    for (std::uint64_t b = 0; b < coeff_bound; ++b)
      for (std::uint64_t c = 0; c < coeff_bound; ++c) out.push_back(pplus({a, b, c}));
  return out;
}

}  // namespace

TEST_CASE("monoid sum") {
  CHECK(oplus(Grade::infinity(MonoidKind::CompletedNat), Grade::nat(5)) ==
        Grade::infinity(MonoidKind::CompletedNat));
  Grade m = Grade::multiset({"n", "n"});
  CHECK(oplus(grade_zero(MonoidKind::MultisetExpr), m) == m);
  CHECK(oplus(pplus({1, 2}), pplus({3, 0, 4})) == pplus({4, 2, 4}));
  CHECK(oplus(Grade::multiset({"n"}), Grade::multiset({"n", "1"})) ==
        Grade::multiset({"n", "n", "1"}));
  CHECK_THROWS_AS(oplus(Grade::nat(1), pplus({1})), monoid_error);
}

TEST_CASE("induced order") {
  CHECK(leq(Grade::nat(3), Grade::infinity(MonoidKind::CompletedNat)));
  CHECK_FALSE(leq(Grade::infinity(MonoidKind::CompletedNat), Grade::nat(3)));
  Grade m = Grade::multiset({"n", "n^2"});
  CHECK(leq(m, m));
  CHECK(leq(m, oplus(m, Grade::multiset({"n"}))));
  CHECK_FALSE(leq(oplus(m, Grade::multiset({"n"})), m));

  // no witness with non-negative coefficients turns [0,2] into [1,1]
  CHECK_FALSE(leq(pplus({0, 2}), pplus({1, 1})));
  bool witness_exists = false;
  for (std::uint64_t a = 0; a <= 2 && !witness_exists; ++a)
    for (std::uint64_t b = 0; b <= 2 && !witness_exists; ++b)
      witness_exists = oplus(pplus({a, b}), pplus({0, 2})) == pplus({1, 1});
  CHECK_FALSE(witness_exists);
}

TEST_CASE("meet") {
  CHECK(meet(Grade::nat(4), Grade::infinity(MonoidKind::CompletedNat)) == Grade::nat(4));
  Grade m = Grade::multiset({"n", "n", "1"});
  CHECK(meet(m, m) == m);
  CHECK(meet(pplus({2, 5}), pplus({3, 1})) == pplus({2, 1}));

  // greatest lower bound against exhaustive small candidates
  Grade a = pplus({2, 5}), b = pplus({3, 1});
  Grade mm = meet(a, b);
  CHECK(leq(mm, a));
  CHECK(leq(mm, b));
  for (const Grade& l : small_poly_plus(6))
    if (leq(l, a) && leq(l, b)) CHECK(leq(l, mm));

  // growth-order meet is degree minimum after canonicalization
  CHECK(meet(po({1, 7, 3}), po({0, 9})) == po({0, 1}));
}

TEST_CASE("additive growth order") {
  CHECK(leq_plus(pplus({7}), pplus({0})));
  CHECK(leq_plus(pplus({0, 1}), pplus({0, 0, 1})));
  CHECK_FALSE(leq_plus(pplus({0, 0, 1}), pplus({0, 1})));
  // bounded difference at equal degree, beyond coefficientwise comparison
  CHECK(leq_plus(pplus({0, 3, 1}), pplus({0, 1, 2})));
  CHECK_FALSE(leq_plus(pplus({0, 1, 2}), pplus({0, 3, 1})));
  CHECK_FALSE(leq_plus(pplus({0, 1}), pplus({})));
  CHECK_THROWS_AS(leq_plus(Grade::nat(0), pplus({})), monoid_error);

  CHECK(oracle_leq_plus({0, 1}, {0, 0, 1}));
  CHECK_FALSE(oracle_leq_plus({0, 0, 1}, {0, 1}));
  CHECK(oracle_leq_plus({7}, {0}));
}

TEST_CASE("multiplicative growth order") {
  CHECK(leq_O(po({0, 3}), po({0, 0, 1})));
  Grade f = po({2, 0, 5});
  CHECK(leq_O(f, f));
  CHECK_FALSE(leq_O(po({0, 0, 1}), po({0, 9})));
  CHECK(leq_O(po({}), po({})));
  CHECK_FALSE(leq_O(po({5}), po({})));
  CHECK(leq_O(po({5}), po({3})));

  CHECK(oracle_leq_O({0, 3}, {0, 0, 1}));
  CHECK_FALSE(oracle_leq_O({0, 0, 1}, {0, 9}));
  CHECK_FALSE(oracle_leq_O({5}, {}));
}

TEST_CASE("canonical representatives") {
  CHECK(canonicalize(Grade::nat(5)) == Grade::nat(5));
  CHECK(canonicalize(pplus({4, 2})) == pplus({0, 2}));
  CHECK(canonicalize(po({1, 7, 3})) == po({0, 0, 1}));

  // canonicalization stays in the equivalence class
  CHECK(leq_plus(pplus({4, 2}), canonicalize(pplus({4, 2}))));
  CHECK(leq_plus(canonicalize(pplus({4, 2})), pplus({4, 2})));
  CHECK(leq_O(po({1, 7, 3}), canonicalize(po({1, 7, 3}))));
  CHECK(leq_O(canonicalize(po({1, 7, 3})), po({1, 7, 3})));

  // constants collapse to zero
  CHECK(canonicalize(pplus({7})) == pplus({}));
}

TEST_CASE("trailing zeros never survive construction") {
  CHECK(pplus({1, 2, 0, 0}) == pplus({1, 2}));
  CHECK(po({0, 0}) == po({}));
}

TEST_CASE("space grades combine additively by default, by maximum behind the flag") {
  Grade a = Grade::nat(4), b = Grade::nat(9);
  CHECK(combine_space(a, b) == Grade::nat(13));
  CHECK(combine_space(a, b, SpaceComposition::Maximum) == Grade::nat(9));
  Grade inf = Grade::infinity(MonoidKind::CompletedNat);
  CHECK(combine_space(a, inf, SpaceComposition::Maximum) == inf);
}

TEST_CASE("grading law suite is clean") {
  SuiteReport rep = grading_suite(3, 300);
  for (const auto& l : rep.laws) {
    INFO(l.law);
    CHECK(l.failures == 0);
  }
}

TEST_CASE("rule and sampling oracle agree over the full small-polynomial space") {
  // smaller sweep here; the acceptance suite runs the full degree-4 space
  std::vector<Grade::Coeffs> polys;
  for (std::uint64_t a = 0; a <= 3; ++a)
    for (std::uint64_t b = 0; b <= 3; ++b)
      for (std::uint64_t c = 0; c <= 3; ++c) polys.push_back({a, b, c});
  for (const auto& f : polys)
    for (const auto& g : polys) {
      CHECK(leq_plus(Grade::poly_plus(f), Grade::poly_plus(g)) == oracle_leq_plus(f, g));
      CHECK(leq_O(Grade::poly_o(f), Grade::poly_o(g)) == oracle_leq_O(f, g));
    }
}
