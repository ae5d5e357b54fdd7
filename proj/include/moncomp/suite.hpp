#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "moncomp/complexity.hpp"
#include "moncomp/diagram.hpp"
#include "moncomp/grade.hpp"
#include "moncomp/interpreter.hpp"
#include "moncomp/machine.hpp"
#include "moncomp/random.hpp"
#include "moncomp/tree.hpp"

namespace moncomp {

struct LawResult {
  std::string law;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<LawResult> laws;

  bool pass() const {
    for (const auto& l : laws)
      if (l.failures) return false;
    return true;
  }
};

namespace detail {

class LawTally {
 public:
  LawTally(SuiteReport& rep, std::string law) : rep_(rep) {
    res_.law = std::move(law);
  }
  ~LawTally() { rep_.laws.push_back(res_); }
  void check(bool ok) {
    ++res_.cases;
    if (!ok) ++res_.failures;
  }

 private:
  SuiteReport& rep_;
  LawResult res_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Sampling oracles for the polynomial growth orders. For non-negative integer
// coefficients with degree <= 4 and coefficients <= 5 these are exact: the
// critical points of the differences sit below x = 22, so the sampled suprema
// coincide with the true ones, and the cross-degree ratios at x = 10^4 clear
// the constant cap by two orders of magnitude.
// ---------------------------------------------------------------------------

inline std::int64_t poly_eval(const Grade::Coeffs& c, std::int64_t x) {
  std::int64_t acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + static_cast<std::int64_t>(c[i]);
  return acc;
}

/// Exists c <= 10^6 with f(x) <= c + g(x) over x in 0..10^4: the needed
/// constant over the window [0,1000] must cover the full range too.
inline bool oracle_leq_plus(const Grade::Coeffs& f, const Grade::Coeffs& g) {
  std::int64_t c_small = 0, c_full = 0;
  auto feed = [&](std::int64_t x, bool small_window) {
    std::int64_t d = poly_eval(f, x) - poly_eval(g, x);
    if (small_window) c_small = std::max(c_small, d);
    c_full = std::max(c_full, d);
  };
  for (std::int64_t x = 0; x <= 22; ++x) feed(x, true);
  feed(1000, true);
  feed(10000, false);
  return c_full <= 1000000 && c_full == c_small;
}

/// Exists c <= 10^3 and a threshold d with f(x) <= c * g(x) for x >= d; the
/// sampled window starts at x = 100.
inline bool oracle_leq_O(const Grade::Coeffs& f, const Grade::Coeffs& g) {
  bool f_zero = true, g_zero = true;
  for (auto v : f) f_zero = f_zero && v == 0;
  for (auto v : g) g_zero = g_zero && v == 0;
  if (f_zero) return true;
  if (g_zero) return false;
  std::int64_t c_need = 0;
  auto feed = [&](std::int64_t x) {
    std::int64_t fv = poly_eval(f, x);
    std::int64_t gv = poly_eval(g, x);
    std::int64_t c = (fv + gv - 1) / gv;  // ceil(fv/gv); gv > 0 for x >= 1
    c_need = std::max(c_need, c);
  };
  for (std::int64_t x = 100; x <= 110; ++x) feed(x);
  feed(1000);
  feed(10000);
  return c_need <= 1000;
}

// ---------------------------------------------------------------------------
// Grading suite.
// ---------------------------------------------------------------------------

inline SuiteReport grading_suite(std::uint64_t seed, std::uint64_t cases) {
  SuiteReport rep{"grading", seed, {}};
  Rng rng(seed);
  const MonoidKind kinds[] = {MonoidKind::CompletedNat, MonoidKind::MultisetExpr,
                              MonoidKind::PolyPlusClass, MonoidKind::PolyOClass};
  auto pick_kind = [&] { return kinds[rand_below(rng, 4)]; };

  {
    detail::LawTally t(rep, "monoid-associativity");
    detail::LawTally u(rep, "monoid-commutativity");
    detail::LawTally v(rep, "monoid-unit");
    detail::LawTally w(rep, "monoid-absorbing-top");
    for (std::uint64_t i = 0; i < cases; ++i) {
      MonoidKind k = pick_kind();
      Grade a = random_grade(rng, k), b = random_grade(rng, k), c = random_grade(rng, k);
      t.check(oplus(a, oplus(b, c)) == oplus(oplus(a, b), c));
      u.check(oplus(a, b) == oplus(b, a));
      v.check(oplus(grade_zero(k), a) == a);
      w.check(oplus(Grade::infinity(k), a) == Grade::infinity(k));
    }
  }
  {
    detail::LawTally t(rep, "order-reflexive");
    detail::LawTally u(rep, "order-transitive");
    for (std::uint64_t i = 0; i < cases; ++i) {
      MonoidKind k = pick_kind();
      Grade a = random_grade(rng, k);
      Grade b = oplus(a, random_grade(rng, k));
      Grade c = oplus(b, random_grade(rng, k));
      t.check(leq(a, a));
      u.check(leq(a, b) && leq(b, c) && leq(a, c));
    }
  }
  {
    detail::LawTally t(rep, "order-antisymmetric-on-canonical");
    for (std::uint64_t i = 0; i < cases; ++i) {
      MonoidKind k = pick_kind();
      Grade a = canonicalize(random_grade(rng, k));
      Grade b = canonicalize(random_grade(rng, k));
      t.check(!(leq(a, b) && leq(b, a)) || a == b);
    }
  }
  {
    detail::LawTally t(rep, "leq-witness-soundness");
    for (std::uint64_t i = 0; i < cases; ++i) {
      MonoidKind k = pick_kind();
      Grade m = random_grade(rng, k);
      Grade n = oplus(m, random_grade(rng, k));
      auto w = leq_witness(m, n);
      t.check(w && oplus(*w, m) == n);
    }
  }
  {
    detail::LawTally t(rep, "meet-is-lower-bound");
    detail::LawTally u(rep, "meet-is-greatest");
    for (std::uint64_t i = 0; i < cases; ++i) {
      MonoidKind k = pick_kind();
      bool quotient = k == MonoidKind::PolyOClass;
      Grade m = quotient ? canonicalize(random_grade(rng, k)) : random_grade(rng, k);
      Grade n = quotient ? canonicalize(random_grade(rng, k)) : random_grade(rng, k);
      Grade mm = meet(m, n);
      auto below = [&](const Grade& x, const Grade& y) {
        return quotient ? leq_O(x, y) : leq(x, y);
      };
      t.check(below(mm, m) && below(mm, n));
      Grade l = quotient ? canonicalize(random_grade(rng, k)) : random_grade(rng, k);
      u.check(!(below(l, m) && below(l, n)) || below(l, mm));
    }
  }
  {
    detail::LawTally t(rep, "growth-order-oracle-additive");
    detail::LawTally u(rep, "growth-order-oracle-multiplicative");
    for (std::uint64_t i = 0; i < cases; ++i) {
      Grade::Coeffs f(rand_below(rng, 6), 0), g(rand_below(rng, 6), 0);
      for (auto& x : f) x = rand_below(rng, 6);
      for (auto& x : g) x = rand_below(rng, 6);
      Grade fp = Grade::poly_plus(f), gp = Grade::poly_plus(g);
      Grade fo = Grade::poly_o(f), go = Grade::poly_o(g);
      t.check(leq_plus(fp, gp) == oracle_leq_plus(fp.coeffs(), gp.coeffs()));
      u.check(leq_O(fo, go) == oracle_leq_O(fo.coeffs(), go.coeffs()));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Diagram suite.
// ---------------------------------------------------------------------------

namespace detail {

/// Random spider context around a diagram: tensor padding, a comparison layer
/// feeding every input, and a copy/delete layer draining every output, with
/// permutation layers mixed in. Applied identically to both sides of a law.
inline Diagram wrap_in_context(Rng& rng, const std::string& base, const Diagram& d) {
  std::size_t padl = rand_below(rng, 2), padr = rand_below(rng, 2);
  Diagram padded = d;
  if (padl) padded = d_par(d_id(TypeVector(padl, base)), padded);
  if (padr) padded = d_par(padded, d_id(TypeVector(padr, base)));

  std::size_t m = padded->dom.size(), n = padded->cod.size();
  Diagram pre;
  bool first = true;
  std::vector<std::size_t> fan(m);
  std::size_t total_in = 0;
  for (std::size_t i = 0; i < m; ++i) {
    fan[i] = 1 + rand_below(rng, 2);
    total_in += fan[i];
    Diagram col = rho_chain(base, fan[i]);
    pre = first ? col : d_par(pre, col);
    first = false;
  }
  if (first) pre = d_id({});
  if (total_in > 1) {
    std::vector<std::size_t> perm(total_in);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    pre = d_seq(permutation_diagram(base, perm), pre);
  }

  Diagram post;
  first = true;
  for (std::size_t j = 0; j < n; ++j) {
    Diagram col = delta_chain(base, rand_below(rng, 3));
    post = first ? col : d_par(post, col);
    first = false;
  }
  if (first) post = d_id({});

  return d_seq(d_seq(pre, padded), post);
}

}  // namespace detail

inline SuiteReport diagram_suite(std::uint64_t seed, std::uint64_t cases) {
  SuiteReport rep{"diagram", seed, {}};
  Rng rng(seed);
  const std::string A = "A";

  Diagram copy = d_copy(A), del = d_delete(A), cmp = d_compare(A), idA = d_id({A});

  // the two comonoid equations and the three data-distribution equations
  struct Law {
    const char* name;
    Diagram lhs, rhs;
  };
  std::vector<Law> laws = {
      {"comonoid-coassociativity", d_seq(copy, d_par(copy, idA)), d_seq(copy, d_par(idA, copy))},
      {"comonoid-counit", d_seq(copy, d_par(del, idA)), idA},
      {"comonoid-counit-right", d_seq(copy, d_par(idA, del)), idA},
      {"frobenius-left", d_seq(d_par(copy, idA), d_par(idA, cmp)), d_seq(cmp, copy)},
      {"frobenius-right", d_seq(d_par(idA, copy), d_par(cmp, idA)), d_seq(cmp, copy)},
      {"frobenius-special", d_seq(copy, cmp), idA},
      {"comparison-associativity", d_seq(d_par(cmp, idA), cmp), d_seq(d_par(idA, cmp), cmp)},
      {"copy-cocommutative", d_seq(copy, d_swap(A, A)), copy},
  };
  for (const auto& law : laws) {
    detail::LawTally t(rep, law.name);
    for (int carrier = 1; carrier <= 4; ++carrier)
      t.check(finrel_eval(law.lhs, carrier) == finrel_eval(law.rhs, carrier));
    t.check(spider_normalize(law.lhs) == spider_normalize(law.rhs));
    std::uint64_t wraps = std::max<std::uint64_t>(cases / 4, 8);
    for (std::uint64_t i = 0; i < wraps; ++i) {
      Rng ctx_rng(seed * 1315423911u + i);
      Rng ctx_rng2 = ctx_rng;
      Diagram wl = detail::wrap_in_context(ctx_rng, A, law.lhs);
      Diagram wr = detail::wrap_in_context(ctx_rng2, A, law.rhs);
      int carrier = 1 + static_cast<int>(i % 3);
      t.check(finrel_eval(wl, carrier) == finrel_eval(wr, carrier));
    }
  }

  {
    detail::LawTally t(rep, "spider-normalization-sound");
    for (std::uint64_t i = 0; i < cases; ++i) {
      Diagram d = random_spider_diagram(rng, A);
      SpiderNF nf = spider_normalize(d);
      Diagram rb = spider_rebuild(nf, A);
      bool ok = rb->dom.size() == d->dom.size() && rb->cod.size() == d->cod.size() &&
                finrel_eval(d, 2) == finrel_eval(rb, 2);
      t.check(ok);
    }
  }
  {
    detail::LawTally t(rep, "spider-normalization-complete-at-carrier-2");
    for (std::uint64_t i = 0; i < cases; ++i) {
      Diagram d1 = random_spider_diagram(rng, A);
      Diagram d2 = random_spider_diagram(rng, A);
      if (d1->dom.size() != d2->dom.size() || d1->cod.size() != d2->cod.size()) {
        --i;  // need comparable boundaries
        continue;
      }
      bool nf_eq = spider_normalize(d1) == spider_normalize(d2);
      bool rel_eq = finrel_eval(d1, 2) == finrel_eval(d2, 2);
      t.check(nf_eq == rel_eq);
    }
  }
  {
    detail::LawTally t(rep, "function-characterization");
    for (std::uint64_t i = 0; i < cases; ++i) {
      int carrier = 2 + static_cast<int>(rand_below(rng, 2));
      FinRel r{carrier, 1, 1, {}};
      for (int x = 0; x < carrier; ++x) {
        std::uint64_t fanout = rand_below(rng, 3);  // 0, 1 or 2 outputs per input
        std::vector<int> ys;
        for (std::uint64_t k = 0; k < fanout; ++k) ys.push_back(static_cast<int>(rand_below(rng, carrier)));
        std::sort(ys.begin(), ys.end());
        ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
        for (int y : ys) r.pairs.insert({{x}, {y}});
      }
      // comonoid-homomorphism equations, computed relationally
      bool single_and_total = rel_seq(r, rel_copy(carrier)) == rel_seq(rel_copy(carrier), rel_par(r, r)) &&
                              rel_seq(r, rel_delete(carrier)) == rel_delete(carrier);
      t.check(is_function(r) == single_and_total);
    }
  }
  {
    detail::LawTally t(rep, "composition-identities");
    for (std::uint64_t i = 0; i < std::max<std::uint64_t>(cases / 10, 10); ++i) {
      Diagram d = random_spider_diagram(rng, A);
      t.check(diagrams_equal(d_seq(d_id(d->dom), d), d).equal);
      t.check(diagrams_equal(d_seq(d, d_id(d->cod)), d).equal);
      t.check(diagrams_equal(d_par(d_id({}), d), d).equal);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Machine suite.
// ---------------------------------------------------------------------------

inline SuiteReport machine_suite(std::uint64_t seed, std::uint64_t cases) {
  SuiteReport rep{"machine", seed, {}};
  Rng rng(seed);
  std::vector<CorpusCase> corpus = random_halting_corpus(rng, cases, 4000);

  {
    detail::LawTally t(rep, "determinism");
    for (const auto& c : corpus) {
      Outcome a = run(c.program, c.input);
      Outcome b = run(c.program, c.input);
      t.check(a.halted == b.halted && a.value == b.value && a.time == b.time &&
              a.space == b.space && trace_equal(a.trace, b.trace));
    }
  }
  {
    detail::LawTally t(rep, "fuel-monotonicity");
    detail::LawTally u(rep, "graded-run-is-restriction");
    for (const auto& c : corpus) {
      Outcome full = run(c.program, c.input);
      std::uint64_t horizon = full.time;
      for (std::uint64_t n :
           {horizon, horizon + 1, horizon + 17, horizon ? horizon - 1 : 0, horizon / 2}) {
        Outcome o = run(c.program, c.input, ExtNat::of(n));
        if (n >= horizon) {
          t.check(o.halted && o.value == full.value && o.time == full.time &&
                  trace_equal(o.trace, full.trace));
        } else {
          bool prefix = !o.halted && o.trace.configs.size() <= full.trace.configs.size();
          if (prefix)
            for (std::size_t i = 0; i < o.trace.configs.size(); ++i)
              prefix = prefix && config_equal(o.trace.configs[i], full.trace.configs[i]);
          u.check(prefix);
        }
      }
    }
  }
  {
    detail::LawTally t(rep, "trace-replay");
    for (const auto& c : corpus) {
      Outcome o = run(c.program, c.input);
      Trace replayed = decode_trace(encode_trace(o.trace));
      t.check(trace_equal(replayed, o.trace) && replayed.time() == o.time &&
              replayed.space() == o.space);
    }
  }
  {
    detail::LawTally t(rep, "partial-evaluation-law");
    for (const auto& c : corpus) {
      Tree a = random_tree(rng, 6);
      Tree code = encode_program(c.program);
      Tree specialized = smn(code, a);
      for (std::uint64_t n : {std::uint64_t(0), std::uint64_t(3), std::uint64_t(50),
                              std::uint64_t(4000)}) {
        Outcome lhs = run(decode_program(specialized), c.input, ExtNat::of(n), false);
        Outcome rhs = run(c.program, Tree::cons(a, c.input), ExtNat::of(n), false);
        t.check(outcomes_agree(lhs, rhs));
      }
    }
  }
  {
    detail::LawTally t(rep, "sequential-composition-additive");
    detail::LawTally u(rep, "parallel-composition-additive");
    for (std::size_t i = 0; i + 1 < corpus.size(); i += 2) {
      const auto& pa = corpus[i];
      const auto& qb = corpus[i + 1];
      Outcome op = run(pa.program, pa.input, ExtNat::inf(), false);
      Outcome oq = run(qb.program, op.value, ExtNat::of(200000), false);
      if (oq.halted) {
        Outcome comp = run(seq_compose(pa.program, qb.program), pa.input, ExtNat::inf(), false);
        t.check(comp.halted && comp.time == op.time + oq.time && comp.value == oq.value);
      }
      Outcome oq2 = run(qb.program, qb.input, ExtNat::inf(), false);
      Outcome par = run(par_compose(pa.program, qb.program), Tree::cons(pa.input, qb.input),
                        ExtNat::inf(), false);
      u.check(par.halted && par.time == op.time + oq2.time &&
              par.value == Tree::cons(op.value, oq2.value));
    }
  }
  {
    detail::LawTally t(rep, "restriction-square");
    for (std::uint64_t i = 0; i < cases; ++i) {
      Morphism f{random_program(rng, 20), ExtNat::of(rand_below(rng, 100))};
      Morphism g{random_program(rng, 20), ExtNat::of(rand_below(rng, 100))};
      ExtNat m = ExtNat::of(rand_below(rng, 100));
      Morphism lhs = restrict_morphism(seq_morphism(f, g), ext_add(f.budget, m));
      Morphism rhs = seq_morphism(f, restrict_morphism(g, m));
      t.check(lhs == rhs);
    }
  }
  {
    detail::LawTally t(rep, "finite-grades-do-not-cover");
    Program loop = divergent_program(rng);
    for (std::uint64_t n : {0ull, 10ull, 100ull, 1000ull, 10000ull})
      t.check(!run(loop, Tree::nil(), ExtNat::of(n), false).halted);
  }
  {
    detail::LawTally t(rep, "retraction-identity");
    for (std::uint64_t i = 0; i < cases; ++i) {
      Retraction rb = retraction(RetractTag::Bool);
      Tree b = tree_bool(rand_below(rng, 2));
      auto pb = rb.project(rb.embed(b));
      t.check(pb.in_image && pb.value == b);

      Retraction rn = retraction(RetractTag::Nat);
      Tree nv = tree_nat(rand_below(rng, 40));
      auto pn = rn.project(rn.embed(nv));
      t.check(pn.in_image && pn.value == nv);

      Retraction rp = retraction(RetractTag::Pair);
      Tree pv = Tree::cons(random_tree(rng, 4), random_tree(rng, 4));
      auto pp = rp.project(rp.embed(pv));
      t.check(pp.in_image && pp.value == pv);

      Retraction rg = retraction(RetractTag::ProgramCode);
      Tree gv = encode_program(random_program(rng, 15));
      auto pg = rg.project(rg.embed(gv));
      t.check(pg.in_image && pg.value == gv);
    }
  }
  {
    detail::LawTally t(rep, "trace-codes-concatenate");
    for (std::size_t i = 0; i + 1 < corpus.size() && i < 40; i += 2) {
      const auto& pa = corpus[i];
      const auto& qb = corpus[i + 1];
      Program comp = seq_compose(pa.program, qb.program);
      // run from an explicit control chain so the q-phase entry is the exact
      // moment the control reaches the shared suffix cell
      CtrlPtr ctrl = ctrl_of(comp.body);
      CtrlPtr suffix = ctrl;
      for (std::size_t k = 0; k < pa.program.body.size(); ++k) suffix = suffix->next;
      Outcome whole = run_config(Config{ctrl, {pa.input}}, ExtNat::of(400000));
      if (!whole.halted) continue;
      std::size_t cut = whole.trace.configs.size();
      for (std::size_t k = 0; k < whole.trace.configs.size(); ++k) {
        if (whole.trace.configs[k].control == suffix) {
          cut = k;
          break;
        }
      }
      if (cut == whole.trace.configs.size() || cut == 0) continue;  // boundary not visible
      // concatenating the segments' codes is exactly the whole code
      std::vector<Tree> part_codes;
      for (std::size_t k = 0; k < cut; ++k)
        part_codes.push_back(encode_config(whole.trace.configs[k]));
      Tree first_code = tree_list(part_codes);
      part_codes.clear();
      for (std::size_t k = cut; k < whole.trace.configs.size(); ++k)
        part_codes.push_back(encode_config(whole.trace.configs[k]));
      Tree second_code = tree_list(part_codes);
      std::vector<Tree> glued = tree_unlist(first_code);
      std::vector<Tree> tail = tree_unlist(second_code);
      glued.insert(glued.end(), tail.begin(), tail.end());
      t.check(tree_list(glued) == encode_trace(whole.trace));
      // and the segment grades are the standalone grades of the parts
      std::uint64_t first_time = 0, second_time = 0;
      for (std::size_t k = 0; k < whole.trace.costs.size(); ++k)
        (k < cut ? first_time : second_time) += whole.trace.costs[k];
      Outcome p_alone = run(pa.program, pa.input, ExtNat::inf(), false);
      Outcome q_alone = run(qb.program, p_alone.value, ExtNat::of(400000), false);
      t.check(first_time == p_alone.time);
      t.check(q_alone.halted && second_time == q_alone.time);
    }
  }
  {
    detail::LawTally t(rep, "self-interpreter-agrees");
    const Program& u = universal_program();
    for (std::size_t i = 0; i < corpus.size() && i < std::max<std::uint64_t>(cases / 10, 20); ++i) {
      Outcome direct = run(corpus[i].program, corpus[i].input, ExtNat::inf(), false);
      Tree packed = Tree::cons(encode_program(corpus[i].program), corpus[i].input);
      Outcome sim = run(u, packed, ExtNat::inf(), false);
      t.check(sim.halted && sim.value == direct.value);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Complexity suite.
// ---------------------------------------------------------------------------

inline SuiteReport complexity_suite(std::uint64_t seed, std::uint64_t cases) {
  SuiteReport rep{"complexity", seed, {}};
  Rng rng(seed);
  std::vector<CorpusCase> corpus = random_halting_corpus(rng, std::max<std::uint64_t>(cases / 2, 30), 4000);

  {
    detail::LawTally t(rep, "trace-predicate-accepts-genuine");
    detail::LawTally u(rep, "trace-predicate-rejects-alien");
    for (const auto& c : corpus) {
      Tree code = encode_program(c.program);
      Outcome o = run(c.program, c.input);
      Tree tc = encode_trace(o.trace);
      t.check(kleene_T(code, c.input, tc));
      u.check(!kleene_T(code, Tree::cons(c.input, Tree::nil()), tc));
      u.check(!kleene_T(code, c.input, Tree::nil()));
    }
  }
  {
    detail::LawTally t(rep, "search-normal-form-identity");
    for (const auto& c : corpus) {
      Tree code = encode_program(c.program);
      auto found = mu_search_effective(code, c.input, ExtNat::of(8000));
      Outcome o = run(c.program, c.input, ExtNat::inf(), false);
      t.check(found && extract_output(*found) == o.value);
    }
  }
  {
    detail::LawTally t(rep, "normal-form-factorization");
    for (const auto& c : corpus) {
      Tree code = encode_program(c.program);
      Outcome full = run(c.program, c.input, ExtNat::inf(), false);
      for (std::uint64_t n : {full.time, full.time + 5, full.time / 2,
                              full.time ? full.time - 1 : 0}) {
        auto nf = normal_form_eval(code, c.input, ExtNat::of(n));
        Outcome o = run(c.program, c.input, ExtNat::of(n), false);
        t.check(o.halted ? (nf && *nf == o.value) : !nf);
      }
    }
  }
  {
    detail::LawTally t(rep, "abstraction-normal-form");
    for (std::uint64_t i = 0; i < std::max<std::uint64_t>(cases / 20, 10); ++i) {
      // h computes a constant program code via a quoting prelude
      Program target = random_program(rng, 12);
      Program h;
      h.body = quote_prelude(encode_program(target), 1);
      h.body.push_back(s_join(1, 0, 0));
      h.body.push_back(s_assign(0, e_hd(e_var(0))));
      Morphism m = gamma(encode_program(h));
      Tree x = random_tree(rng, 3), a = random_tree(rng, 4);
      Outcome direct = m.apply(Tree::cons(x, a), false);
      if (!direct.halted) {
        t.check(false);
        continue;
      }
      // the normal form of the morphism's own program agrees at every budget
      for (std::uint64_t n : {direct.time, direct.time + 7, direct.time / 2,
                              direct.time ? direct.time - 1 : 0}) {
        Outcome graded = run(m.program, Tree::cons(x, a), ExtNat::of(n), false);
        auto nf = normal_form_eval(program_of(m), Tree::cons(x, a), ExtNat::of(n));
        t.check(graded.halted ? (nf && *nf == graded.value) : !nf);
      }
      auto full = normal_form_eval(program_of(m), Tree::cons(x, a), ExtNat::inf());
      t.check(full && *full == direct.value);
    }
  }
  {
    detail::LawTally t(rep, "grade-section-law");
    for (std::uint64_t i = 0; i < cases; ++i) {
      Grade g = rand_below(rng, 20) ? Grade::nat(rand_below(rng, 100000))
                                    : Grade::infinity(MonoidKind::CompletedNat);
      const Measure& m = rand_below(rng, 2) ? time_measure() : space_measure();
      t.check(m.kappa_star(m.kappa_lower(g)) == g);
    }
  }
  {
    detail::LawTally t(rep, "internal-grading-restriction");
    for (const auto& c : corpus) {
      Tree susp = suspend(encode_program(c.program), c.input);
      auto full = trace_eval(susp, ExtNat::inf());
      Outcome o = run(c.program, c.input, ExtNat::inf(), false);
      for (std::uint64_t n : {o.time, o.time + 3, o.time ? o.time - 1 : 0, o.time / 3}) {
        auto part = trace_eval(susp, ExtNat::of(n));
        if (n >= o.time)
          t.check(part && full && *part == *full);
        else
          t.check(!part);
      }
    }
  }
  {
    detail::LawTally t(rep, "measure-halting-agreement");
    for (const auto& c : corpus)
      t.check(blum_halt_agree(encode_program(c.program), c.input, ExtNat::of(4000)));
    for (std::uint64_t i = 0; i < 10; ++i)
      t.check(blum_halt_agree(encode_program(divergent_program(rng)), Tree::nil(),
                              ExtNat::of(2000)));
  }
  {
    detail::LawTally t(rep, "bound-decision-agrees-with-brute");
    auto check_case = [&](const Tree& code, const Tree& input) {
      Outcome o = run(decode_program(code), input, ExtNat::of(20000), true);
      for (const Measure* m : {&time_measure(), &space_measure()}) {
        for (std::uint64_t n : {0ull, 1ull, 2ull, 5ull, 20ull, 100ull, 1000ull}) {
          bool decided = blum_decide_leq(*m, code, input, ExtNat::of(n));
          bool brute = o.halted && (m->kind == MeasureKind::Time ? o.time : o.space) <= n;
          t.check(decided == brute);
        }
      }
    };
    for (std::size_t i = 0; i < corpus.size() && i < 25; ++i)
      check_case(encode_program(corpus[i].program), corpus[i].input);
    for (std::uint64_t i = 0; i < 8; ++i)
      check_case(encode_program(divergent_program(rng)), random_tree(rng, 3));
    check_case(encode_program(growing_divergent_program()), Tree::nil());
  }
  {
    detail::LawTally t(rep, "measure-order-agrees-with-grading");
    for (std::uint64_t i = 0; i < cases; ++i) {
      Grade a = Grade::nat(rand_below(rng, 1000));
      Grade b = rand_below(rng, 10) ? Grade::nat(rand_below(rng, 1000))
                                    : Grade::infinity(MonoidKind::CompletedNat);
      t.check(order_predicate(time_measure(), a, b) == leq(a, b));
    }
  }
  {
    detail::LawTally t(rep, "addition-program-closed-form");
    Program add = parse_program(
        "split X0 into (X1, X2);\n"
        "while X1 { X1 := tl X1; X2 := cons(nil, X2) };\n"
        "X0 := X2");
    Tree code = encode_program(add);
    for (std::uint64_t j = 0; j <= 20; ++j) {
      for (std::uint64_t k = 0; k <= 20; k += 5) {
        auto g = measure(time_measure(), code, Tree::cons(tree_nat(j), tree_nat(k)),
                         ExtNat::inf());
        t.check(g && g->as_nat().value == 9 * j + 4);
        Outcome o = run(add, Tree::cons(tree_nat(j), tree_nat(k)), ExtNat::inf(), false);
        t.check(o.halted && o.value == tree_nat(j + k));
      }
    }
  }
  {
    detail::LawTally t(rep, "measuring-is-affinely-bounded");
    std::vector<std::pair<Tree, Tree>> pool;
    for (const auto& c : corpus) pool.emplace_back(encode_program(c.program), c.input);
    std::size_t half = pool.size() / 2;
    std::vector<std::pair<Tree, Tree>> calib(pool.begin(), pool.begin() + half);
    std::vector<std::pair<Tree, Tree>> valid(pool.begin() + half, pool.end());
    NormalityReport fit_rep = normality_certify(time_measure(), calib, ChiBound{1, 0});
    ChiBound chi = robust_chi(fit_rep.entries);
    NormalityReport val_rep = normality_certify(time_measure(), valid, chi);
    t.check(val_rep.all_ok());
  }
  return rep;
}

inline std::vector<SuiteReport> run_suites(const std::string& which, std::uint64_t seed,
                                           std::uint64_t cases) {
  std::vector<SuiteReport> out;
  if (which == "grading" || which == "all") out.push_back(grading_suite(seed, cases));
  if (which == "diagram" || which == "all") out.push_back(diagram_suite(seed, cases));
  if (which == "machine" || which == "all") out.push_back(machine_suite(seed, cases));
  if (which == "complexity" || which == "all") out.push_back(complexity_suite(seed, cases));
  return out;
}

}  // namespace moncomp
