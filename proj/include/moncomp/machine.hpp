#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "moncomp/encoding.hpp"
#include "moncomp/grade.hpp"
#include "moncomp/program.hpp"
#include "moncomp/tree.hpp"

namespace moncomp {

struct extraction_error : std::runtime_error {
  explicit extraction_error(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Configurations. The control is a persistent statement list so that pushing
// a loop body shares the tail; the store is a dense variable table that
// extends on demand (reads past the end see nil).
// ---------------------------------------------------------------------------

struct CtrlCell;
using CtrlPtr = std::shared_ptr<const CtrlCell>;

struct CtrlCell {
  StmtPtr stmt;
  CtrlPtr next;
};

inline CtrlPtr ctrl_push(StmtPtr s, CtrlPtr next) {
  auto c = std::make_shared<CtrlCell>();
  c->stmt = std::move(s);
  c->next = std::move(next);
  return c;
}

inline CtrlPtr ctrl_of(const std::vector<StmtPtr>& body, CtrlPtr tail = nullptr) {
  CtrlPtr c = std::move(tail);
  for (auto it = body.rbegin(); it != body.rend(); ++it) c = ctrl_push(*it, c);
  return c;
}

struct Config {
  CtrlPtr control;
  std::vector<Tree> store;

  bool terminal() const { return control == nullptr; }
};

inline Tree store_read(const std::vector<Tree>& store, std::uint32_t k) {
  return k < store.size() ? store[k] : Tree::nil();
}

inline void store_write(std::vector<Tree>& store, std::uint32_t k, Tree v) {
  if (k >= store.size()) store.resize(k + 1);
  store[k] = std::move(v);
}

inline std::uint64_t store_nodes(const std::vector<Tree>& store) {
  std::uint64_t n = 0;
  for (const auto& t : store) n += t.size();
  return n;
}

/// Stores are finite-support functions from variables to trees, so equality
/// and encoding ignore trailing nil entries.
inline std::size_t store_support(const std::vector<Tree>& store) {
  std::size_t n = store.size();
  while (n > 0 && store[n - 1].is_nil()) --n;
  return n;
}

inline bool config_equal(const Config& a, const Config& b) {
  const CtrlCell* x = a.control.get();
  const CtrlCell* y = b.control.get();
  while (x && y) {
    if (x->stmt != y->stmt && !stmt_equal(x->stmt, y->stmt)) return false;
    x = x->next.get();
    y = y->next.get();
  }
  if (x || y) return false;
  std::size_t n = store_support(a.store);
  if (n != store_support(b.store)) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (a.store[i] != b.store[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Small-step semantics. Executing a statement costs 1 plus one unit per node
// of every expression it evaluates; split/join and statement-list descent are
// free. hd/tl of nil yield nil, so expression evaluation is total and
// partiality only ever appears as non-termination.
// ---------------------------------------------------------------------------

inline Tree eval_expr(const ExprPtr& e, const std::vector<Tree>& store) {
  switch (e->kind) {
    case ExprKind::Var: return store_read(store, e->var);
    case ExprKind::NilLit: return Tree::nil();
    case ExprKind::ConsE:
      return Tree::cons(eval_expr(e->a, store), eval_expr(e->b, store));
    case ExprKind::Hd: return eval_expr(e->a, store).hd();
    case ExprKind::Tl: return eval_expr(e->a, store).tl();
    case ExprKind::EqAtom:
      return tree_bool(eval_expr(e->a, store) == eval_expr(e->b, store));
  }
  throw std::logic_error("bad expr kind");
}

inline bool truthy(const Tree& t) { return t.is_cons(); }

struct StepResult {
  bool terminal;
  Config next;
  std::uint64_t cost;
};

inline StepResult step(const Config& c) {
  if (c.terminal()) return {true, c, 0};
  const StmtPtr& s = c.control->stmt;
  CtrlPtr rest = c.control->next;
  switch (s->kind) {
    case StmtKind::Assign: {
      Tree v = eval_expr(s->expr, c.store);
      Config n{rest, c.store};
      store_write(n.store, s->var, std::move(v));
      return {false, std::move(n), s->cost};
    }
    case StmtKind::While: {
      if (truthy(eval_expr(s->expr, c.store)))
        return {false, Config{ctrl_of(s->body, ctrl_push(s, rest)), c.store}, s->cost};
      return {false, Config{rest, c.store}, s->cost};
    }
    case StmtKind::If: {
      const auto& branch = truthy(eval_expr(s->expr, c.store)) ? s->body : s->body2;
      return {false, Config{ctrl_of(branch, rest), c.store}, s->cost};
    }
    case StmtKind::SplitPair: {
      Tree v = store_read(c.store, s->var);
      Config n{rest, c.store};
      store_write(n.store, s->var2, v.hd());
      store_write(n.store, s->var3, v.tl());
      return {false, std::move(n), 0};
    }
    case StmtKind::JoinPair: {
      Tree v = Tree::cons(store_read(c.store, s->var2), store_read(c.store, s->var3));
      Config n{rest, c.store};
      store_write(n.store, s->var, std::move(v));
      return {false, std::move(n), 0};
    }
  }
  throw std::logic_error("bad stmt kind");
}

// ---------------------------------------------------------------------------
// Traces and outcomes.
// ---------------------------------------------------------------------------

struct Trace {
  std::vector<Config> configs;          // non-empty
  std::vector<std::uint64_t> costs;     // one per transition
  bool complete = false;                // last config terminal

  std::uint64_t time() const {
    std::uint64_t t = 0;
    for (auto c : costs) t += c;
    return t;
  }
  std::uint64_t space() const {
    std::uint64_t s = 0;
    for (const auto& c : configs) s = std::max(s, store_nodes(c.store));
    return s;
  }
};

inline bool trace_equal(const Trace& a, const Trace& b) {
  if (a.complete != b.complete || a.costs != b.costs) return false;
  if (a.configs.size() != b.configs.size()) return false;
  for (std::size_t i = 0; i < a.configs.size(); ++i)
    if (!config_equal(a.configs[i], b.configs[i])) return false;
  return true;
}

struct Outcome {
  bool halted = false;
  Tree value;                    // halted only: final X0
  std::uint64_t time = 0;        // halted only: total cost
  std::uint64_t space = 0;       // halted only: max store node count
  std::uint64_t steps_done = 0;  // out of fuel only: cost spent before the clock ran out
  Trace trace;                   // complete run, or the partial prefix

  Grade time_grade() const { return Grade::nat(time); }
  Grade space_grade() const { return Grade::nat(space); }
};

/// Outcome agreement for the partial-evaluation law: kind, value, time grade
/// and fuel spent. Traces and space are excluded: the specialized program
/// carries its quoting prelude in the control and extra store slots, so those
/// fields differ syntactically by construction.
inline bool outcomes_agree(const Outcome& a, const Outcome& b) {
  if (a.halted != b.halted) return false;
  if (a.halted) return a.value == b.value && a.time == b.time;
  return a.steps_done == b.steps_done;
}

inline Config initial_config(const Program& p, const Tree& input) {
  return Config{ctrl_of(p.body), {input}};
}

/// Graded evaluation: iterates the step function within the fuel budget,
/// accumulating cost. A step whose cost would push the total past the budget
/// clocks the run out; zero-cost steps always land. Fuel of infinity is the
/// plain universal evaluation and diverges with the program.
inline Outcome run_config(Config config, ExtNat fuel, bool record_trace = true) {
  Outcome out;
  std::uint64_t spent = 0;
  std::uint64_t space_max = store_nodes(config.store);
  if (record_trace) out.trace.configs.push_back(config);
  while (true) {
    StepResult r = step(config);
    if (r.terminal) {
      out.halted = true;
      out.value = store_read(config.store, 0);
      out.time = spent;
      out.space = space_max;
      out.trace.complete = true;
      return out;
    }
    if (!fuel.infinite && spent + r.cost > fuel.value) {
      out.halted = false;
      out.steps_done = spent;
      out.trace.complete = false;
      return out;
    }
    spent += r.cost;
    config = std::move(r.next);
    space_max = std::max(space_max, store_nodes(config.store));
    if (record_trace) {
      out.trace.costs.push_back(r.cost);
      out.trace.configs.push_back(config);
    }
  }
}

inline Outcome run(const Program& p, const Tree& input, ExtNat fuel = ExtNat::inf(),
                   bool record_trace = true) {
  return run_config(initial_config(p, input), fuel, record_trace);
}

// ---------------------------------------------------------------------------
// Configuration and trace codes. A config is (control statement list . store
// value list); a trace is the list of its configuration codes, so the code of
// a concatenated run is the concatenation of the parts' codes, with the empty
// list as the unit. Decoding a trace re-checks that adjacent configurations
// are step-related, which also recovers the per-transition costs.
// ---------------------------------------------------------------------------

inline Tree encode_config(const Config& c) {
  std::vector<StmtPtr> ctrl;
  for (const CtrlCell* cell = c.control.get(); cell; cell = cell->next.get())
    ctrl.push_back(cell->stmt);
  std::vector<Tree> store(c.store.begin(), c.store.begin() + store_support(c.store));
  return Tree::cons(encode_stmt_list(ctrl), tree_list(store));
}

inline Config decode_config(const Tree& t) {
  if (!t.is_cons()) throw decode_error("not a configuration code");
  Config c;
  c.control = ctrl_of(decode_stmt_list(t.left()));
  c.store = tree_unlist(t.right());
  return c;
}

inline Tree encode_trace(const Trace& tr) {
  std::vector<Tree> items;
  items.reserve(tr.configs.size());
  for (const auto& c : tr.configs) items.push_back(encode_config(c));
  return tree_list(items);
}

inline Trace decode_trace(const Tree& t) {
  std::vector<Tree> items = tree_unlist(t);
  if (items.empty()) throw decode_error("a trace code is a non-empty list");
  Trace tr;
  tr.configs.reserve(items.size());
  for (const auto& it : items) tr.configs.push_back(decode_config(it));
  for (std::size_t i = 0; i + 1 < tr.configs.size(); ++i) {
    StepResult r = step(tr.configs[i]);
    if (r.terminal) throw decode_error("trace continues past a terminal configuration");
    if (encode_config(r.next) != items[i + 1])
      throw decode_error("adjacent configurations are not step-related");
    tr.costs.push_back(r.cost);
  }
  tr.complete = tr.configs.back().terminal();
  return tr;
}

// ---------------------------------------------------------------------------
// Partial evaluation. smn specializes a program code on the first half of a
// paired input. The specialized program opens with a quoting prelude made
// only of split/join statements (all cost 0): fresh variables above the
// program's range start out nil, join builds the quoted tree bottom-up, and a
// final join forms cons(a, X0). Run on b it therefore matches the original on
// cons(a, b) step for step, with exactly equal time grades.
// ---------------------------------------------------------------------------

namespace detail {

inline void emit_quote(const Tree& t, std::uint32_t nil_src, std::uint32_t junk,
                       std::uint32_t slot_base, std::uint32_t depth,
                       std::vector<StmtPtr>& out) {
  if (t.is_nil()) {
    out.push_back(s_split(nil_src, slot_base + depth, junk));
    return;
  }
  emit_quote(t.left(), nil_src, junk, slot_base, depth, out);
  emit_quote(t.right(), nil_src, junk, slot_base, depth + 1, out);
  out.push_back(s_join(slot_base + depth, slot_base + depth + 1, slot_base + depth));
}

}  // namespace detail

/// Cost-free statements loading literal `value` into variable `target`,
/// assuming every variable at `target` and above still holds nil.
inline std::vector<StmtPtr> quote_prelude(const Tree& value, std::uint32_t target) {
  std::vector<StmtPtr> out;
  std::uint32_t nil_src = target;      // never written: a permanent nil source
  std::uint32_t junk = target + 1;
  std::uint32_t slots = target + 2;
  detail::emit_quote(value, nil_src, junk, slots, 0, out);
  // move the built value down into `target`
  out.push_back(s_join(slots, nil_src, junk));    // junk := (value . nil)
  out.push_back(s_split(junk, target, junk));     // target := value
  return out;
}

inline Tree smn(const Tree& f_code, const Tree& a) {
  Program f = decode_program(f_code);
  std::uint32_t base = program_max_var(f) + 1;
  Program out;
  out.body = quote_prelude(a, base);
  out.body.push_back(s_join(base, 0, 0));  // X0 := cons(a, X0)
  out.body.insert(out.body.end(), f.body.begin(), f.body.end());
  return encode_program(out);
}

/// Packages the initial configuration of F on a as a tree: the model's
/// partial evaluation stage before the trace evaluator takes over. Cost-free.
inline Tree suspend(const Tree& f_code, const Tree& a) {
  Program f = decode_program(f_code);
  return encode_config(initial_config(f, a));
}

/// Steps a suspended configuration within the budget. Yields the code of the
/// complete trace if it terminates in time, and nothing otherwise, matching
/// the partiality of graded evaluation.
inline std::optional<Tree> trace_eval(const Tree& susp, ExtNat budget) {
  Config c = decode_config(susp);
  Outcome out = run_config(std::move(c), budget, true);
  if (!out.halted) return std::nullopt;
  return encode_trace(out.trace);
}

/// Final X0 of a complete trace code. Cost-free administrative extraction.
inline Tree extract_output(const Tree& trace_code) {
  Trace tr;
  try {
    tr = decode_trace(trace_code);
  } catch (const decode_error& e) {
    throw extraction_error(std::string("ill-formed trace code: ") + e.what());
  }
  if (!tr.complete) throw extraction_error("trace is not complete");
  return store_read(tr.configs.back().store, 0);
}

// ---------------------------------------------------------------------------
// Composition. Sequential composition concatenates bodies over the shared X0
// channel; parallel composition routes the two halves of a paired input
// through disjoint variable ranges with cost-free split/join glue. Both make
// the composite time grade exactly the sum of the parts'.
// ---------------------------------------------------------------------------

inline Program seq_compose(const Program& p, const Program& q) {
  Program qs = program_shift(q, program_max_var(p));
  Program out;
  out.body = p.body;
  out.body.insert(out.body.end(), qs.body.begin(), qs.body.end());
  return out;
}

inline Program par_compose(const Program& p, const Program& q) {
  Program qs = program_shift(q, program_max_var(p));
  std::uint32_t base = std::max(program_max_var(p), program_max_var(qs)) + 1;
  std::uint32_t nil_src = base, stash_b = base + 1, stash_r = base + 2, tmp = base + 3,
                junk = base + 4;
  Program out;
  out.body.push_back(s_split(0, 0, stash_b));  // X0 := a ; stash b
  out.body.insert(out.body.end(), p.body.begin(), p.body.end());
  out.body.push_back(s_join(0, nil_src, tmp));  // stash p(a)
  out.body.push_back(s_split(tmp, stash_r, junk));
  out.body.push_back(s_join(stash_b, nil_src, tmp));  // X0 := b
  out.body.push_back(s_split(tmp, 0, junk));
  out.body.insert(out.body.end(), qs.body.begin(), qs.body.end());
  out.body.push_back(s_join(stash_r, 0, 0));  // X0 := (p(a) . q(b))
  return out;
}

// ---------------------------------------------------------------------------
// Budgeted morphisms: a program together with a fuel budget. Restriction
// takes the meet of budgets; equality is program identity plus equal budgets.
// ---------------------------------------------------------------------------

struct Morphism {
  Program program;
  ExtNat budget = ExtNat::inf();

  Outcome apply(const Tree& input, bool record_trace = true) const {
    return run(program, input, budget, record_trace);
  }

  friend bool operator==(const Morphism& a, const Morphism& b) {
    return a.program == b.program && a.budget == b.budget;
  }
};

inline Morphism restrict_morphism(const Morphism& m, ExtNat n) {
  return Morphism{m.program, ext_min(m.budget, n)};
}

inline Morphism seq_morphism(const Morphism& f, const Morphism& g) {
  return Morphism{seq_compose(f.program, g.program), ext_add(f.budget, g.budget)};
}

// ---------------------------------------------------------------------------
// Data services. Copy and delete are single cost-free statements, so they
// are grade 0. Comparison projects the first component when the halves of
// the input pair are equal and spins forever otherwise: the model reads
// undefinedness as divergence, and its equality test is costed.
// ---------------------------------------------------------------------------

enum class DataServiceKind { Copy, Delete, Compare };

inline Morphism data_service_morphism(DataServiceKind kind) {
  Program p;
  switch (kind) {
    case DataServiceKind::Copy:
      p.body = {s_join(0, 0, 0)};
      break;
    case DataServiceKind::Delete:
      p.body = {s_split(1, 0, 2)};
      break;
    case DataServiceKind::Compare:
      p.body = {s_split(0, 1, 2),
                s_if(e_eq(e_var(1), e_var(2)), {s_assign(0, e_var(1))},
                     {s_while(e_eq(e_nil(), e_nil()), {})})};
      break;
  }
  return Morphism{std::move(p), ExtNat::inf()};
}

// ---------------------------------------------------------------------------
// Retractions into the program/tree universe.
// ---------------------------------------------------------------------------

inline Retraction retraction(RetractTag tag) {
  switch (tag) {
    case RetractTag::Bool:
      return {[](const Tree& t) { return t; },
              [](const Tree& t) -> RetractResult {
                if (t.is_nil() || t == tree_bool(true)) return {t, true};
                return {Tree::nil(), false};
              }};
    case RetractTag::Nat:
      return {[](const Tree& t) { return t; },
              [](const Tree& t) -> RetractResult {
                std::uint64_t n;
                if (nat_of_tree(t, n)) return {t, true};
                return {Tree::nil(), false};
              }};
    case RetractTag::Pair:
      return {[](const Tree& t) { return t; },
              [](const Tree& t) -> RetractResult {
                if (t.is_cons()) return {t, true};
                return {Tree::nil(), false};
              }};
    case RetractTag::TraceCode:
      return {[](const Tree& t) { return t; },
              [](const Tree& t) -> RetractResult {
                try {
                  decode_trace(t);
                  return {t, true};
                } catch (const decode_error&) {
                  return {Tree::nil(), false};
                }
              }};
    case RetractTag::ProgramCode:
      return {[](const Tree& t) { return t; },
              [](const Tree& t) -> RetractResult {
                try {
                  decode_program(t);
                  return {t, true};
                } catch (const decode_error&) {
                  return {Tree::nil(), false};
                }
              }};
  }
  throw std::logic_error("bad retract tag");
}

}  // namespace moncomp
