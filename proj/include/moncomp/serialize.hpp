#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "moncomp/complexity.hpp"
#include "moncomp/diagram.hpp"
#include "moncomp/grade.hpp"
#include "moncomp/machine.hpp"
#include "moncomp/suite.hpp"

namespace moncomp {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Grades: {"monoid":"nat","value":5}, {"monoid":"nat","value":"inf"},
// {"monoid":"multiset","value":["e1","e1"]}, {"monoid":"poly+","coeffs":[0,2]},
// {"monoid":"polyO","coeffs":[0,0,1]}.
// ---------------------------------------------------------------------------

inline json grade_to_json(const Grade& g) {
  json j;
  j["monoid"] = monoid_name(g.kind());
  if (g.is_infinite()) {
    j[g.kind() == MonoidKind::CompletedNat || g.kind() == MonoidKind::MultisetExpr ? "value"
                                                                                   : "coeffs"] =
        "inf";
    return j;
  }
  switch (g.kind()) {
    case MonoidKind::CompletedNat: j["value"] = g.as_nat().value; break;
    case MonoidKind::MultisetExpr: {
      std::vector<std::string> elems;
      for (const auto& [k, c] : g.as_multiset())
        for (std::uint64_t i = 0; i < c; ++i) elems.push_back(k);
      j["value"] = elems;
      break;
    }
    default: j["coeffs"] = g.coeffs(); break;
  }
  return j;
}

inline Grade grade_from_json(const json& j) {
  std::string monoid = j.at("monoid").get<std::string>();
  auto is_inf = [&](const char* field) {
    return j.contains(field) && j.at(field).is_string() &&
           j.at(field).get<std::string>() == "inf";
  };
  if (monoid == "nat") {
    if (is_inf("value")) return Grade::infinity(MonoidKind::CompletedNat);
    return Grade::nat(j.at("value").get<std::uint64_t>());
  }
  if (monoid == "multiset") {
    if (is_inf("value")) return Grade::infinity(MonoidKind::MultisetExpr);
    return Grade::multiset(j.at("value").get<std::vector<std::string>>());
  }
  MonoidKind kind;
  if (monoid == "poly+") kind = MonoidKind::PolyPlusClass;
  else if (monoid == "polyO") kind = MonoidKind::PolyOClass;
  else throw std::runtime_error("unknown monoid: " + monoid);
  if (is_inf("coeffs")) return Grade::infinity(kind);
  return Grade::poly(kind, j.at("coeffs").get<Grade::Coeffs>());
}

// ---------------------------------------------------------------------------
// Outcomes: {"halted":true,"value":"...","time":n,"space":n,"trace":[...]}
// or {"halted":false,"steps_done":n,"trace":[...]}. Each trace element lists
// the store and the number of pending statements.
// ---------------------------------------------------------------------------

inline json config_to_json(const Config& c) {
  json j;
  std::size_t pending = 0;
  for (const CtrlCell* cell = c.control.get(); cell; cell = cell->next.get()) ++pending;
  j["pending"] = pending;
  std::vector<std::string> store;
  for (const auto& t : c.store) store.push_back(print_tree(t));
  j["store"] = store;
  return j;
}

inline json outcome_to_json(const Outcome& o, bool include_trace = true) {
  json j;
  j["halted"] = o.halted;
  if (o.halted) {
    j["value"] = print_tree(o.value);
    j["time"] = o.time;
    j["space"] = o.space;
  } else {
    j["steps_done"] = o.steps_done;
  }
  if (include_trace) {
    json tr = json::array();
    for (std::size_t i = 0; i < o.trace.configs.size(); ++i) {
      json cj = config_to_json(o.trace.configs[i]);
      if (i < o.trace.costs.size()) cj["cost"] = o.trace.costs[i];
      tr.push_back(std::move(cj));
    }
    j["trace"] = std::move(tr);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Diagrams: nested term form.
//   {"kind":"copy","base":"A"}            {"kind":"id","wires":["A","A"]}
//   {"kind":"seq","children":[...]}       {"kind":"par","children":[...]}
//   {"kind":"gen","name":"f","dom":["A"],"cod":["A"]}
//   {"kind":"swap","first":"A","second":"B"}
// ---------------------------------------------------------------------------

inline Diagram diagram_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "id") return d_id(j.at("wires").get<TypeVector>());
  if (kind == "copy") return d_copy(j.at("base").get<std::string>());
  if (kind == "delete") return d_delete(j.at("base").get<std::string>());
  if (kind == "compare") return d_compare(j.at("base").get<std::string>());
  if (kind == "swap")
    return d_swap(j.at("first").get<std::string>(), j.at("second").get<std::string>());
  if (kind == "gen")
    return d_gen(j.at("name").get<std::string>(), j.at("dom").get<TypeVector>(),
                 j.at("cod").get<TypeVector>());
  if (kind == "seq" || kind == "par") {
    const json& kids = j.at("children");
    if (!kids.is_array() || kids.empty()) throw std::runtime_error("composition needs children");
    Diagram d = diagram_from_json(kids[0]);
    for (std::size_t i = 1; i < kids.size(); ++i) {
      Diagram next = diagram_from_json(kids[i]);
      d = kind == "seq" ? d_seq(d, next) : d_par(d, next);
    }
    return d;
  }
  throw std::runtime_error("unknown diagram kind: " + kind);
}

inline json spider_nf_to_json(const SpiderNF& nf) {
  json j;
  j["inputs"] = nf.inputs;
  j["outputs"] = nf.outputs;
  json blocks = json::array();
  for (const auto& b : nf.blocks) {
    json ports = json::array();
    for (std::size_t p : b) {
      if (p < nf.inputs)
        ports.push_back("in" + std::to_string(p));
      else
        ports.push_back("out" + std::to_string(p - nf.inputs));
    }
    blocks.push_back(std::move(ports));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

inline json finrel_to_json(const FinRel& r) {
  json j;
  j["carrier"] = r.carrier;
  j["dom_arity"] = r.dom_arity;
  j["cod_arity"] = r.cod_arity;
  json pairs = json::array();
  for (const auto& [a, b] : r.pairs) pairs.push_back(json::array({a, b}));
  j["pairs"] = std::move(pairs);
  return j;
}

// ---------------------------------------------------------------------------
// Corpus manifests: {"entries":[{"id":..., "program":"programs/x.while",
// "input":"()", "expected":"()", "fuel":100}]}. Paths are relative to the
// corpus directory; expected and fuel are optional.
// ---------------------------------------------------------------------------

struct CorpusEntry {
  std::string id;
  std::string program_path;
  Program program;
  Tree input;
  bool has_expected = false;
  Tree expected;
  ExtNat fuel = ExtNat::inf();
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  json manifest = json::parse(read_file(dir + "/manifest.json"));
  std::vector<CorpusEntry> out;
  for (const auto& e : manifest.at("entries")) {
    CorpusEntry ce;
    ce.id = e.at("id").get<std::string>();
    ce.program_path = e.at("program").get<std::string>();
    ce.program = parse_program(read_file(dir + "/" + ce.program_path));
    ce.input = parse_tree(e.at("input").get<std::string>());
    if (e.contains("expected")) {
      ce.has_expected = true;
      ce.expected = parse_tree(e.at("expected").get<std::string>());
    }
    if (e.contains("fuel")) ce.fuel = ExtNat::of(e.at("fuel").get<std::uint64_t>());
    out.push_back(std::move(ce));
  }
  return out;
}

inline json blum_report_to_json(const BlumReport& r) {
  json j;
  j["program"] = r.program_text;
  j["input"] = r.input_text;
  j["fuel_cap"] = r.fuel_cap;
  j["halt_agreement"] = r.halt_agreement;
  json checks = json::array();
  for (const auto& c : r.bound_checks)
    checks.push_back({{"bound", c.bound}, {"decided", c.decided}, {"brute", c.brute}});
  j["bound_checks"] = std::move(checks);
  j["all_agree"] = r.all_agree();
  return j;
}

inline json normality_report_to_json(const NormalityReport& r) {
  json j;
  j["alpha"] = r.chi.alpha;
  j["beta"] = r.chi.beta;
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"index", e.index},
                       {"measured", e.measured},
                       {"meta_cost", e.meta_cost},
                       {"ok", e.ok}});
  j["entries"] = std::move(entries);
  j["excluded"] = r.excluded;
  j["violations"] = r.violations;
  j["minimal_feasible"] = {{"alpha", r.minimal_feasible.alpha},
                           {"beta", r.minimal_feasible.beta}};
  return j;
}

inline json suite_report_to_json(const SuiteReport& r) {
  json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  json laws = json::array();
  for (const auto& l : r.laws)
    laws.push_back({{"law", l.law}, {"cases", l.cases}, {"failures", l.failures}});
  j["checks"] = std::move(laws);
  j["pass"] = r.pass();
  return j;
}

}  // namespace moncomp
