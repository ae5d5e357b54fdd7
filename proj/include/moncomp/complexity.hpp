#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "moncomp/grade.hpp"
#include "moncomp/interpreter.hpp"
#include "moncomp/machine.hpp"
#include "moncomp/tree.hpp"

namespace moncomp {

// ---------------------------------------------------------------------------
// The trace-verification predicate: total, terminating, true exactly when x
// encodes the complete execution trace of F on a. Determinism of the step
// function makes that trace unique, so searching for it recovers evaluation.
// ---------------------------------------------------------------------------

inline bool kleene_T(const Tree& f_code, const Tree& a, const Tree& x) {
  Program f;
  try {
    f = decode_program(f_code);
  } catch (const decode_error&) {
    return false;
  }
  std::vector<Tree> items = tree_unlist(x);
  if (items.empty()) return false;
  if (items.front() != encode_config(initial_config(f, a))) return false;
  Config cur;
  try {
    cur = decode_config(items.front());
  } catch (const decode_error&) {
    return false;
  }
  for (std::size_t i = 0; i + 1 < items.size(); ++i) {
    StepResult r = step(cur);
    if (r.terminal) return false;
    if (encode_config(r.next) != items[i + 1]) return false;
    cur = std::move(r.next);
  }
  return cur.terminal();
}

/// Searches the tree universe in the canonical order (size, then
/// lexicographic) for a trace accepted by the predicate, giving up after
/// candidate_cap candidates. Candidates sharing the enumerator's buckets keep
/// this affordable up to about a million candidates.
inline std::optional<Tree> mu_search_naive(const Tree& f_code, const Tree& a,
                                           std::uint64_t candidate_cap,
                                           TreeEnumerator* shared_enum = nullptr) {
  Program f;
  try {
    f = decode_program(f_code);
  } catch (const decode_error&) {
    return std::nullopt;
  }
  Tree expected_first = encode_config(initial_config(f, a));
  TreeEnumerator local;
  TreeEnumerator& en = shared_enum ? *shared_enum : local;
  std::uint64_t seen = 0;
  for (std::size_t size = 0;; ++size) {
    const auto& bucket = en.bucket(size);
    for (const auto& cand : bucket) {
      if (seen++ >= candidate_cap) return std::nullopt;
      // cheap prefilter: the first list element must be the initial config
      if (!cand.is_cons()) continue;
      if (cand.left() != expected_first) continue;
      if (kleene_T(f_code, a, cand)) return cand;
    }
    if (seen >= candidate_cap) return std::nullopt;
  }
}

/// Produces the trace by running the machine, then checks it against the
/// predicate; undefined exactly when the run clocks out at the cap.
inline std::optional<Tree> mu_search_effective(const Tree& f_code, const Tree& a, ExtNat fuel_cap) {
  std::optional<Tree> code = trace_eval(suspend(f_code, a), fuel_cap);
  if (!code) return std::nullopt;
  if (!kleene_T(f_code, a, *code))
    throw std::logic_error("machine produced a trace the predicate rejects");
  return code;
}

/// The normal-form pipeline: suspend, trace-evaluate within the budget,
/// extract the output. Equals graded evaluation as a partial function.
inline std::optional<Tree> normal_form_eval(const Tree& f_code, const Tree& a, ExtNat budget) {
  std::optional<Tree> code = trace_eval(suspend(f_code, a), budget);
  if (!code) return std::nullopt;
  return extract_output(*code);
}

// ---------------------------------------------------------------------------
// Notions of complexity: a grade extraction on trace codes, a grade embedding
// back into the tree universe, and a decidable order. Grades embed as unary
// numerals (with a distinguished marker for the top element), which never
// collide with trace codes, so extraction after embedding is the identity.
// ---------------------------------------------------------------------------

enum class MeasureKind { Time, Space };

inline Tree infinite_grade_marker() {
  // ((((nil.nil).nil)) . nil): its head is not a valid statement list or numeral
  return Tree::cons(Tree::cons(Tree::cons(Tree::cons(Tree::nil(), Tree::nil()), Tree::nil()),
                               Tree::nil()),
                    Tree::nil());
}

struct Measure {
  MeasureKind kind;
  const char* name;
  std::function<Grade(const Tree& trace_code)> kappa_star;
  std::function<Tree(const Grade&)> kappa_lower;
  std::function<bool(const Grade&, const Grade&)> order;
};

inline Grade kappa_star_generic(MeasureKind kind, const Tree& t) {
  try {
    Trace tr = decode_trace(t);
    if (tr.complete) return Grade::nat(kind == MeasureKind::Time ? tr.time() : tr.space());
  } catch (const decode_error&) {
    // fall through to the embedded-grade readings
  }
  std::uint64_t n;
  if (nat_of_tree(t, n)) return Grade::nat(n);
  if (t == infinite_grade_marker()) return Grade::infinity(MonoidKind::CompletedNat);
  throw decode_error("neither a complete trace code nor an embedded grade");
}

inline Tree kappa_lower_generic(const Grade& g) {
  if (g.kind() != MonoidKind::CompletedNat) throw monoid_error("measure grades are completed naturals");
  if (g.is_infinite()) return infinite_grade_marker();
  return tree_nat(g.as_nat().value);
}

inline Measure make_measure(MeasureKind kind) {
  return Measure{
      kind,
      kind == MeasureKind::Time ? "time" : "space",
      [kind](const Tree& t) { return kappa_star_generic(kind, t); },
      [](const Grade& g) { return kappa_lower_generic(g); },
      [](const Grade& a, const Grade& b) { return leq(a, b); },
  };
}

inline const Measure& time_measure() {
  static const Measure m = make_measure(MeasureKind::Time);
  return m;
}
inline const Measure& space_measure() {
  static const Measure m = make_measure(MeasureKind::Space);
  return m;
}

/// The measure's decidable order, which on completed naturals is exactly the
/// grading order.
inline bool order_predicate(const Measure& m, const Grade& g1, const Grade& g2) {
  return m.order(g1, g2);
}

/// Grade of running F on a, through the normal form: extraction applied to
/// the trace evaluation of the suspension. Undefined past the cap.
inline std::optional<Grade> measure(const Measure& m, const Tree& f_code, const Tree& a,
                                    ExtNat cap) {
  std::optional<Tree> code = trace_eval(suspend(f_code, a), cap);
  if (!code) return std::nullopt;
  return m.kappa_star(*code);
}

/// First Blum condition, witnessed at a finite cap: the measure is defined
/// exactly where the evaluator halts.
inline bool blum_halt_agree(const Tree& f_code, const Tree& a, ExtNat cap) {
  if (cap.infinite) throw monoid_error("halting agreement is witnessed at a finite cap");
  std::optional<Grade> g = measure(time_measure(), f_code, a, cap);
  Outcome o = run(decode_program(f_code), a, cap, false);
  return g.has_value() == o.halted;
}

namespace detail {

struct ConfigKey {
  std::uint64_t hash;
  Config config;
};

struct ConfigKeyHash {
  std::size_t operator()(const ConfigKey& k) const { return static_cast<std::size_t>(k.hash); }
};
struct ConfigKeyEq {
  bool operator()(const ConfigKey& a, const ConfigKey& b) const {
    return a.hash == b.hash && config_equal(a.config, b.config);
  }
};

inline std::uint64_t config_fingerprint(const Config& c) {
  std::uint64_t h = 0x243f6a8885a308d3ull;
  for (const CtrlCell* cell = c.control.get(); cell; cell = cell->next.get())
    h = (h ^ reinterpret_cast<std::uintptr_t>(cell->stmt.get())) * 0x100000001b3ull;
  for (const auto& t : c.store) h = (h ^ t.hash()) * 0x100000001b3ull;
  return h;
}

}  // namespace detail

/// Second Blum condition: deciding whether the measure of F on a stays within
/// n, totally, even on divergent programs. Time runs under the fuel budget n.
/// Space aborts the first time the store exceeds n (exceeding is irrevocable
/// for a running maximum) and detects configuration repetition, which closes
/// the space-bounded non-termination gap: a repeated configuration loops
/// forever within the bound, so the run never halts and the bound check is
/// false.
inline bool blum_decide_leq(const Measure& m, const Tree& f_code, const Tree& a, ExtNat n) {
  if (n.infinite) throw monoid_error("bound decision needs a finite grade");
  Program f = decode_program(f_code);
  if (m.kind == MeasureKind::Time) {
    Outcome o = run(f, a, n, false);
    return o.halted;  // halted within fuel n means time <= n
  }
  Config c = initial_config(f, a);
  std::unordered_set<detail::ConfigKey, detail::ConfigKeyHash, detail::ConfigKeyEq> seen;
  if (store_nodes(c.store) > n.value) return false;
  while (true) {
    if (c.terminal()) return true;
    if (!seen.insert({detail::config_fingerprint(c), c}).second) return false;  // cycling forever
    StepResult r = step(c);
    c = std::move(r.next);
    if (store_nodes(c.store) > n.value) return false;
  }
}

// ---------------------------------------------------------------------------
// Reports for the Blum conditions and the chi-bound certification.
// ---------------------------------------------------------------------------

struct BlumBoundCheck {
  std::uint64_t bound;
  bool decided;
  bool brute;
};

struct BlumReport {
  std::string program_text;
  std::string input_text;
  std::uint64_t fuel_cap = 0;
  bool halt_agreement = false;
  std::vector<BlumBoundCheck> bound_checks;

  bool all_agree() const {
    if (!halt_agreement) return false;
    for (const auto& c : bound_checks)
      if (c.decided != c.brute) return false;
    return true;
  }
};

/// Brute oracle for the bound check: run to the cap and compare the measured
/// grade directly. Programs still running at the cap count as exceeding every
/// finite bound below it.
inline bool blum_brute_leq(const Measure& m, const Tree& f_code, const Tree& a, std::uint64_t n,
                           ExtNat cap) {
  Program f = decode_program(f_code);
  Outcome o = run(f, a, cap, true);
  if (!o.halted) return false;
  std::uint64_t c = m.kind == MeasureKind::Time ? o.time : o.space;
  return c <= n;
}

inline BlumReport blum_report(const Measure& m, const Tree& f_code, const Tree& a,
                              const std::vector<std::uint64_t>& bounds, ExtNat cap) {
  BlumReport rep;
  rep.program_text = print_program(decode_program(f_code));
  rep.input_text = print_tree(a);
  rep.fuel_cap = cap.infinite ? 0 : cap.value;
  rep.halt_agreement = blum_halt_agree(f_code, a, cap);
  for (std::uint64_t b : bounds) {
    bool decided = blum_decide_leq(m, f_code, a, ExtNat::of(b));
    bool brute = blum_brute_leq(m, f_code, a, b, cap);
    rep.bound_checks.push_back({b, decided, brute});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Chi-bound: measuring a program is not substantially harder than running
// it. The internal measuring program is the counting interpreter followed by
// the grade projection, so its output is the embedded measure; its own time
// grade must stay within an affine bound of the measured grade.
// ---------------------------------------------------------------------------

/// The internal measuring program C: input (code . a), output the embedded
/// time grade of running the code on a.
inline const Program& measuring_program() {
  static const Program c = [] {
    Program proj;
    proj.body = {s_assign(0, e_tl(e_var(0)))};
    return seq_compose(counting_universal_program(), proj);
  }();
  return c;
}

struct ChiBound {
  std::uint64_t alpha = 1;
  std::uint64_t beta = 0;
};

struct NormalityEntry {
  std::size_t index = 0;
  std::uint64_t measured = 0;   // c(F, a)
  std::uint64_t meta_cost = 0;  // time of the measuring program on (code . a)
  bool ok = false;
};

struct NormalityReport {
  ChiBound chi;
  std::vector<NormalityEntry> entries;
  std::vector<std::size_t> excluded;  // corpus entries that failed to halt at the cap
  std::vector<std::size_t> violations;
  ChiBound minimal_feasible;

  bool all_ok() const { return violations.empty(); }
};

/// Fits the least slope-then-intercept affine bound covering every point:
/// alpha covers the per-unit ratios, beta whatever remains (zero-grade
/// entries land entirely in beta).
inline ChiBound fit_chi(const std::vector<NormalityEntry>& entries) {
  std::uint64_t alpha = 1;
  for (const auto& e : entries)
    if (e.measured > 0) alpha = std::max(alpha, (e.meta_cost + e.measured - 1) / e.measured);
  std::uint64_t beta = 0;
  for (const auto& e : entries) {
    std::uint64_t bound = alpha * e.measured;
    if (e.meta_cost > bound) beta = std::max(beta, e.meta_cost - bound);
  }
  return ChiBound{alpha, beta};
}

/// Cross-split envelope: the interpreter's cost is startup (code validation,
/// bounded by program size) plus a per-unit margin, so a fit meant to hold on
/// unseen entries keeps the worst per-unit ratio as the slope and the worst
/// whole cost as the intercept rather than forcing the intercept to zero.
inline ChiBound robust_chi(const std::vector<NormalityEntry>& entries) {
  std::uint64_t alpha = 1, beta = 0;
  for (const auto& e : entries) {
    if (e.measured > 0)
      alpha = std::max(alpha, (e.meta_cost + e.measured - 1) / e.measured);
    beta = std::max(beta, e.meta_cost);
  }
  return ChiBound{alpha, beta};
}

/// Checks time(C on (F,a)) <= alpha * c(F,a) + beta over the corpus; entries
/// that do not halt within the cap are reported and excluded.
inline NormalityReport normality_certify(const Measure& m,
                                         const std::vector<std::pair<Tree, Tree>>& corpus,
                                         ChiBound chi, ExtNat cap = ExtNat::inf()) {
  NormalityReport rep;
  rep.chi = chi;
  const Program& c_prog = measuring_program();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [f_code, a] = corpus[i];
    std::optional<Grade> g = measure(m, f_code, a, cap);
    if (!g || g->is_infinite()) {
      rep.excluded.push_back(i);
      continue;
    }
    Outcome meta = run(c_prog, Tree::cons(f_code, a), ExtNat::inf(), false);
    NormalityEntry e;
    e.index = i;
    e.measured = g->as_nat().value;
    e.meta_cost = meta.time;
    e.ok = e.meta_cost <= chi.alpha * e.measured + chi.beta;
    if (!e.ok) rep.violations.push_back(i);
    rep.entries.push_back(e);
  }
  rep.minimal_feasible = fit_chi(rep.entries);
  return rep;
}

}  // namespace moncomp
