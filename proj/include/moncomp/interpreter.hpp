#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "moncomp/machine.hpp"
#include "moncomp/program.hpp"

namespace moncomp {

// ---------------------------------------------------------------------------
// The self-interpreter: a WHILE program U with
//
//   run(U, (code(F) . a)) = run(F, a)    on the final X0, for every F,
//
// and a counting variant that also returns the simulated step cost as a unary
// numeral, exactly equal to the meta-level time grade. The object-level
// program keeps the simulated control and store as lists, evaluates
// expressions with an explicit work/value stack pair, and validates the code
// up front so that ill-formed inputs yield nil instead of junk.
//
// Every scratch variable is zeroed at entry, so the interpreter body can be
// spliced after other program fragments (the gamma construction relies on
// this).
// ---------------------------------------------------------------------------

namespace selfint {

// Variable layout of the interpreter.
inline constexpr std::uint32_t IO = 0;     // input (code . arg); final output
inline constexpr std::uint32_t CODE = 1;   // program code
inline constexpr std::uint32_t ARG = 2;    // simulated input
inline constexpr std::uint32_t CTRL = 3;   // simulated control: list of stmt codes
inline constexpr std::uint32_t STORE = 4;  // simulated store: list of values
inline constexpr std::uint32_t OKF = 5;    // well-formedness flag
inline constexpr std::uint32_t CUR = 6;    // current statement
inline constexpr std::uint32_t TAG = 7;    // its tag
inline constexpr std::uint32_t PAY = 8;    // its payload
inline constexpr std::uint32_t WORK = 9;   // expression work stack
inline constexpr std::uint32_t VALS = 10;  // expression value stack
inline constexpr std::uint32_t ITM = 11;   // current work item
inline constexpr std::uint32_t ITG = 12;   // its tag
inline constexpr std::uint32_t IPL = 13;   // its payload
inline constexpr std::uint32_t ETG = 14;   // expression tag
inline constexpr std::uint32_t EBD = 15;   // expression payload
inline constexpr std::uint32_t RV1 = 16;   // value scratch
inline constexpr std::uint32_t RV2 = 17;   // value scratch
inline constexpr std::uint32_t CNT = 18;   // numeral walker
inline constexpr std::uint32_t LST = 19;   // list walker
inline constexpr std::uint32_t ACC = 20;   // list accumulator
inline constexpr std::uint32_t REV = 21;   // second accumulator
inline constexpr std::uint32_t EXP = 22;   // expression to evaluate
inline constexpr std::uint32_t TIM = 23;   // unary cost counter (counting variant)
inline constexpr std::uint32_t VST = 24;   // validation stack
inline constexpr std::uint32_t VPL = 25;   // validation payload
inline constexpr std::uint32_t VTG = 26;   // validation tag scratch
inline constexpr std::uint32_t VBD = 27;   // validation body scratch
inline constexpr std::uint32_t MAX_VAR = 27;

using Stmts = std::vector<StmtPtr>;

inline Stmts cat(std::initializer_list<Stmts> parts) {
  Stmts out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline ExprPtr lit_nat(std::uint64_t n) {
  ExprPtr e = e_nil();
  for (std::uint64_t i = 0; i < n; ++i) e = e_cons(e_nil(), e);
  return e;
}

inline StmtPtr if_nil(ExprPtr probe, Stmts when_nil, Stmts when_cons) {
  // eq?(probe, nil) is truthy exactly when probe is nil
  return s_if(e_eq(std::move(probe), e_nil()), std::move(when_nil), std::move(when_cons));
}

inline StmtPtr if_tag(std::uint32_t var, std::uint64_t tag, Stmts then_b, Stmts else_b) {
  return s_if(e_eq(e_var(var), lit_nat(tag)), std::move(then_b), std::move(else_b));
}

/// CNT := <numeral>; LST := STORE; walk; leaves the addressed cell at the head
/// of LST's remainder (hd LST, with nil past the end).
inline Stmts walk_to(ExprPtr index) {
  return {s_assign(CNT, std::move(index)), s_assign(LST, e_var(STORE)),
          s_while(e_var(CNT), {s_assign(CNT, e_tl(e_var(CNT))), s_assign(LST, e_tl(e_var(LST)))})};
}

/// dst := STORE[index]
inline Stmts lookup(ExprPtr index, std::uint32_t dst) {
  Stmts out = walk_to(std::move(index));
  out.push_back(s_assign(dst, e_hd(e_var(LST))));
  return out;
}

/// STORE[index] := value (functional rebuild; short stores pad with nil)
inline Stmts update(ExprPtr index, ExprPtr value) {
  Stmts out = {s_assign(CNT, std::move(index)), s_assign(LST, e_var(STORE)),
               s_assign(ACC, e_nil()),
               s_while(e_var(CNT), {s_assign(ACC, e_cons(e_hd(e_var(LST)), e_var(ACC))),
                                    s_assign(LST, e_tl(e_var(LST))),
                                    s_assign(CNT, e_tl(e_var(CNT)))}),
               s_assign(LST, e_cons(std::move(value), e_tl(e_var(LST)))),
               s_while(e_var(ACC), {s_assign(LST, e_cons(e_hd(e_var(ACC)), e_var(LST))),
                                    s_assign(ACC, e_tl(e_var(ACC)))}),
               s_assign(STORE, e_var(LST))};
  return out;
}

/// CTRL := <list> ++ CTRL
inline Stmts prepend_onto_ctrl(ExprPtr list) {
  return {s_assign(REV, e_nil()), s_assign(LST, std::move(list)),
          s_while(e_var(LST), {s_assign(REV, e_cons(e_hd(e_var(LST)), e_var(REV))),
                               s_assign(LST, e_tl(e_var(LST)))}),
          s_while(e_var(REV), {s_assign(CTRL, e_cons(e_hd(e_var(REV)), e_var(CTRL))),
                               s_assign(REV, e_tl(e_var(REV)))})};
}

inline Stmts push_check(std::uint64_t item_tag, ExprPtr payload) {
  return {s_assign(VST, e_cons(e_cons(lit_nat(item_tag), std::move(payload)), e_var(VST)))};
}

inline Stmts flag_bad() { return {s_assign(OKF, e_nil())}; }

// Validation item tags.
inline constexpr std::uint64_t CHK_STMTS = 0;
inline constexpr std::uint64_t CHK_STMT = 1;
inline constexpr std::uint64_t CHK_EXPR = 2;
inline constexpr std::uint64_t CHK_NAT = 3;

/// One pass over the code with an explicit stack, mirroring the strict
/// meta-level decoder: tags in range, payload shapes exact, numerals are
/// left-nil spines, nil literals carry nil payloads.
inline Stmts validator() {
  // three-numeral payload shape shared by split and join
  auto three_vars = [] {
    return Stmts{if_nil(e_var(VBD), flag_bad(),
                        {if_nil(e_tl(e_var(VBD)), flag_bad(),
                                cat({push_check(CHK_NAT, e_hd(e_var(VBD))),
                                     push_check(CHK_NAT, e_hd(e_tl(e_var(VBD)))),
                                     push_check(CHK_NAT, e_tl(e_tl(e_var(VBD))))}))})};
  };
  Stmts stmt_case = {
      s_assign(VTG, e_hd(e_var(VPL))),
      s_assign(VBD, e_tl(e_var(VPL))),
      if_tag(VTG, tags::stmt_assign,  // (k . e)
             {if_nil(e_var(VBD), flag_bad(),
                     cat({push_check(CHK_NAT, e_hd(e_var(VBD))),
                          push_check(CHK_EXPR, e_tl(e_var(VBD)))}))},
             {if_tag(VTG, tags::stmt_split, three_vars(),
                     {if_tag(VTG, tags::stmt_join, three_vars(),
                             {if_tag(VTG, tags::stmt_while,  // (e . body)
                                     {if_nil(e_var(VBD), flag_bad(),
                                             cat({push_check(CHK_EXPR, e_hd(e_var(VBD))),
                                                  push_check(CHK_STMTS, e_tl(e_var(VBD)))}))},
                                     {if_tag(VTG, tags::stmt_if,  // (e . (b1 . b2))
                                             {if_nil(e_var(VBD), flag_bad(),
                                                     {if_nil(e_tl(e_var(VBD)), flag_bad(),
                                                             cat({push_check(CHK_EXPR,
                                                                             e_hd(e_var(VBD))),
                                                                  push_check(
                                                                      CHK_STMTS,
                                                                      e_hd(e_tl(e_var(VBD)))),
                                                                  push_check(
                                                                      CHK_STMTS,
                                                                      e_tl(e_tl(e_var(VBD))))}))})},
                                             flag_bad())})})})})};

  auto two_exprs = [] {
    return Stmts{if_nil(e_var(VBD), flag_bad(),
                        cat({push_check(CHK_EXPR, e_hd(e_var(VBD))),
                             push_check(CHK_EXPR, e_tl(e_var(VBD)))}))};
  };
  Stmts expr_case = {
      s_assign(VTG, e_hd(e_var(VPL))),
      s_assign(VBD, e_tl(e_var(VPL))),
      if_tag(VTG, tags::expr_var, push_check(CHK_NAT, e_var(VBD)),
             {if_tag(VTG, tags::expr_hd, push_check(CHK_EXPR, e_var(VBD)),
                     {if_tag(VTG, tags::expr_tl, push_check(CHK_EXPR, e_var(VBD)),
                             {if_tag(VTG, tags::expr_cons, two_exprs(),
                                     {if_tag(VTG, tags::expr_eq, two_exprs(),
                                             flag_bad())})})})})};

  Stmts nat_case = {s_while(
      e_var(VPL),
      {if_nil(e_hd(e_var(VPL)), {s_assign(VPL, e_tl(e_var(VPL)))},
              cat({flag_bad(), {s_assign(VPL, e_nil())}}))})};

  Stmts body = {
      s_assign(ITM, e_hd(e_var(VST))),
      s_assign(VST, e_tl(e_var(VST))),
      s_assign(ITG, e_hd(e_var(ITM))),
      s_assign(VPL, e_tl(e_var(ITM))),
      if_tag(ITG, CHK_STMTS,
             {if_nil(e_var(VPL), {},
                     cat({push_check(CHK_STMT, e_hd(e_var(VPL))),
                          push_check(CHK_STMTS, e_tl(e_var(VPL)))}))},
             {if_tag(ITG, CHK_STMT, {if_nil(e_var(VPL), flag_bad(), stmt_case)},
                     {if_tag(ITG, CHK_EXPR,
                             {if_nil(e_var(VPL), {}, expr_case)},  // nil is the nil literal
                             nat_case)})})};

  return {s_assign(VST, e_cons(e_cons(lit_nat(CHK_STMTS), e_tl(e_var(CODE))), e_nil())),
          s_while(e_var(VST), std::move(body))};
}

/// Expression evaluation over the simulated store: a work stack of
/// (kind . payload) items against a value stack. Each expression node costs
/// one unit in the counting variant.
inline Stmts eval_block(bool counting) {
  constexpr std::uint64_t DO_EVAL = 0, AP_CONS = 1, AP_HD = 2, AP_TL = 3, AP_EQ = 4;

  auto push_work = [](std::uint64_t kind, ExprPtr payload) {
    return s_assign(WORK, e_cons(e_cons(lit_nat(kind), std::move(payload)), e_var(WORK)));
  };

  Stmts dispatch = {
      s_assign(ETG, e_hd(e_var(IPL))),
      s_assign(EBD, e_tl(e_var(IPL))),
      if_tag(ETG, tags::expr_var,  // look the value up
             cat({walk_to(e_var(EBD)),
                  {s_assign(VALS, e_cons(e_hd(e_var(LST)), e_var(VALS)))}}),
             {if_tag(ETG, tags::expr_hd,
                     {push_work(AP_HD, e_nil()), push_work(DO_EVAL, e_var(EBD))},
                     {if_tag(ETG, tags::expr_tl,
                             {push_work(AP_TL, e_nil()), push_work(DO_EVAL, e_var(EBD))},
                             {if_tag(ETG, tags::expr_cons,
                                     {push_work(AP_CONS, e_nil()),
                                      push_work(DO_EVAL, e_tl(e_var(EBD))),
                                      push_work(DO_EVAL, e_hd(e_var(EBD)))},
                                     {push_work(AP_EQ, e_nil()),
                                      push_work(DO_EVAL, e_tl(e_var(EBD))),
                                      push_work(DO_EVAL, e_hd(e_var(EBD)))})})})})};
  Stmts eval_item = {
      // a nil expression is the nil literal
      if_nil(e_var(IPL), {s_assign(VALS, e_cons(e_nil(), e_var(VALS)))}, dispatch)};
  if (counting) eval_item.insert(eval_item.begin(), s_assign(TIM, e_cons(e_nil(), e_var(TIM))));

  Stmts pop_two = {s_assign(RV2, e_hd(e_var(VALS))), s_assign(VALS, e_tl(e_var(VALS))),
                   s_assign(RV1, e_hd(e_var(VALS))), s_assign(VALS, e_tl(e_var(VALS)))};

  Stmts loop_body = {
      s_assign(ITM, e_hd(e_var(WORK))),
      s_assign(WORK, e_tl(e_var(WORK))),
      s_assign(ITG, e_hd(e_var(ITM))),
      s_assign(IPL, e_tl(e_var(ITM))),
      if_tag(ITG, DO_EVAL, eval_item,
             {if_tag(ITG, AP_CONS,
                     cat({pop_two,
                          {s_assign(VALS, e_cons(e_cons(e_var(RV1), e_var(RV2)), e_var(VALS)))}}),
                     {if_tag(ITG, AP_HD,
                             {s_assign(VALS, e_cons(e_hd(e_hd(e_var(VALS))), e_tl(e_var(VALS))))},
                             {if_tag(ITG, AP_TL,
                                     {s_assign(VALS,
                                               e_cons(e_tl(e_hd(e_var(VALS))), e_tl(e_var(VALS))))},
                                     cat({pop_two,
                                          {s_assign(VALS, e_cons(e_eq(e_var(RV1), e_var(RV2)),
                                                                 e_var(VALS)))}}))})})})};

  return {s_assign(WORK, e_cons(e_cons(e_nil(), e_var(EXP)), e_nil())),
          s_assign(VALS, e_nil()),
          s_while(e_var(WORK), std::move(loop_body)),
          s_assign(RV1, e_hd(e_var(VALS)))};
}

/// The statement dispatch loop.
inline Stmts interp_loop(bool counting) {
  Stmts split_case = cat({
      lookup(e_hd(e_var(PAY)), RV1),
      update(e_hd(e_tl(e_var(PAY))), e_hd(e_var(RV1))),
      update(e_tl(e_tl(e_var(PAY))), e_tl(e_var(RV1))),
  });

  Stmts join_case = cat({
      lookup(e_hd(e_var(PAY)), RV1),
      lookup(e_hd(e_tl(e_var(PAY))), RV2),
      update(e_tl(e_tl(e_var(PAY))), e_cons(e_var(RV1), e_var(RV2))),
  });

  Stmts costed_case = cat({
      counting ? Stmts{s_assign(TIM, e_cons(e_nil(), e_var(TIM)))} : Stmts{},
      {if_tag(TAG, tags::stmt_assign, {s_assign(EXP, e_tl(e_var(PAY)))},
              {s_assign(EXP, e_hd(e_var(PAY)))})},
      eval_block(counting),
      {if_tag(TAG, tags::stmt_assign, update(e_hd(e_var(PAY)), e_var(RV1)),
              {if_tag(TAG, tags::stmt_while,
                      {if_nil(e_var(RV1), {},
                              cat({{s_assign(CTRL, e_cons(e_var(CUR), e_var(CTRL)))},
                                   prepend_onto_ctrl(e_tl(e_var(PAY)))}))},
                      {if_nil(e_var(RV1), prepend_onto_ctrl(e_tl(e_tl(e_var(PAY)))),
                              prepend_onto_ctrl(e_hd(e_tl(e_var(PAY)))))})})},
  });

  Stmts body = {
      s_assign(CUR, e_hd(e_var(CTRL))),
      s_assign(CTRL, e_tl(e_var(CTRL))),
      s_assign(TAG, e_hd(e_var(CUR))),
      s_assign(PAY, e_tl(e_var(CUR))),
      if_tag(TAG, tags::stmt_split, split_case,
             {if_tag(TAG, tags::stmt_join, join_case, costed_case)}),
  };

  return {s_while(e_var(CTRL), std::move(body))};
}

inline Program build(bool counting) {
  Stmts body;
  for (std::uint32_t v = 1; v <= MAX_VAR; ++v) body.push_back(s_assign(v, e_nil()));

  // unpack and validate
  body = cat({body,
              {s_assign(OKF, e_cons(e_nil(), e_nil())),
               if_nil(e_var(IO), flag_bad(), {}),
               s_assign(CODE, e_hd(e_var(IO))),
               s_assign(ARG, e_tl(e_var(IO))),
               if_nil(e_var(CODE), flag_bad(), {if_nil(e_hd(e_var(CODE)), {}, flag_bad())})},
              validator()});

  Stmts result = counting ? Stmts{s_assign(IO, e_cons(e_hd(e_var(STORE)), e_var(TIM)))}
                          : Stmts{s_assign(IO, e_hd(e_var(STORE)))};

  Stmts interp = cat({{s_assign(CTRL, e_tl(e_var(CODE))),
                       s_assign(STORE, e_cons(e_var(ARG), e_nil())),
                       s_assign(TIM, e_nil())},
                      interp_loop(counting),
                      result});

  body.push_back(if_nil(e_var(OKF), {s_assign(IO, e_nil())}, interp));
  return Program{std::move(body)};
}

}  // namespace selfint

/// The universal program: simulates a program code on an input.
inline const Program& universal_program() {
  static const Program u = selfint::build(false);
  return u;
}

/// Like the universal program, but returns (result . unary step count), the
/// count agreeing exactly with the meta-level time grade of the simulated run.
inline const Program& counting_universal_program() {
  static const Program cu = selfint::build(true);
  return cu;
}

// ---------------------------------------------------------------------------
// Program abstraction: gamma turns a code-computing program h into the
// morphism that runs h on the first component of its input and dispatches the
// produced code on the second, through the self-interpreter. Both stages are
// costed normally. program_of returns the morphism's own program code, the
// intensional witness in the pairs-of-program-and-function reading.
// ---------------------------------------------------------------------------

inline Morphism gamma(const Tree& h_code) {
  Program h = decode_program(h_code);
  const Program& u = universal_program();
  Program us = program_shift(u, program_max_var(h));
  std::uint32_t stash = std::max(program_max_var(h), program_max_var(us)) + 1;
  Program out;
  out.body.push_back(s_split(0, 0, stash));  // X0 := x ; stash a
  out.body.insert(out.body.end(), h.body.begin(), h.body.end());
  out.body.push_back(s_join(0, stash, 0));  // X0 := (code . a)
  out.body.insert(out.body.end(), us.body.begin(), us.body.end());
  return Morphism{std::move(out), ExtNat::inf()};
}

inline Tree program_of(const Morphism& m) { return encode_program(m.program); }

/// Meta-level reading of the same pipeline: run h on x, decode the produced
/// code (a dispatch on a non-code fails here), then run it on a.
inline Outcome gamma_run(const Tree& h_code, const Tree& x, const Tree& a,
                         ExtNat fuel = ExtNat::inf()) {
  Program h = decode_program(h_code);
  Outcome stage1 = run(h, x, fuel, false);
  if (!stage1.halted) return stage1;
  Program f = decode_program(stage1.value);
  return run(f, a, fuel, false);
}

}  // namespace moncomp
