// moncomp: run fuel-graded WHILE programs over binary trees, trace and
// measure them, search for traces, check the equational law suites, and
// normalize data-service string diagrams.
//
// JSON goes to stdout; human-readable tables go to stderr. Exit codes:
// 0 success, 1 usage or parse failure, 2 out of fuel / measure undefined,
// 3 property violation.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moncomp/complexity.hpp"
#include "moncomp/interpreter.hpp"
#include "moncomp/machine.hpp"
#include "moncomp/random.hpp"
#include "moncomp/serialize.hpp"
#include "moncomp/suite.hpp"

using namespace moncomp;

namespace {

constexpr int EXIT_USAGE = 1;
constexpr int EXIT_OUT_OF_FUEL = 2;
constexpr int EXIT_VIOLATION = 3;

ExtNat fuel_of(std::int64_t flag) {
  return flag < 0 ? ExtNat::inf() : ExtNat::of(static_cast<std::uint64_t>(flag));
}

Program load_program(const std::string& path) { return parse_program(read_file(path)); }

std::string default_corpus() {
  const char* env = std::getenv("MONCOMP_CORPUS");
  return env ? env : "corpus";
}

int cmd_run(const std::string& prog_path, const std::string& input_text, std::int64_t fuel,
            bool with_trace) {
  Program p = load_program(prog_path);
  Tree input = parse_tree(input_text);
  Outcome o = run(p, input, fuel_of(fuel));
  std::cout << outcome_to_json(o, with_trace).dump(2) << "\n";
  return o.halted ? 0 : EXIT_OUT_OF_FUEL;
}

int cmd_measure(const std::string& kind, const std::string& prog_path,
                const std::string& input_text, std::int64_t cap) {
  const Measure& m = kind == "space" ? space_measure() : time_measure();
  Program p = load_program(prog_path);
  Tree input = parse_tree(input_text);
  auto g = measure(m, encode_program(p), input, fuel_of(cap));
  if (!g) {
    std::cout << "{\"defined\": false}\n";
    return EXIT_OUT_OF_FUEL;
  }
  json j = grade_to_json(*g);
  j["defined"] = true;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_mu(const std::string& prog_path, const std::string& input_text, std::int64_t naive_cap,
           std::int64_t fuel_cap) {
  Program p = load_program(prog_path);
  Tree input = parse_tree(input_text);
  Tree code = encode_program(p);
  std::optional<Tree> found;
  if (naive_cap >= 0)
    found = mu_search_naive(code, input, static_cast<std::uint64_t>(naive_cap));
  else
    found = mu_search_effective(code, input, fuel_of(fuel_cap));
  if (!found) {
    std::cout << "{\"found\": false}\n";
    return EXIT_OUT_OF_FUEL;
  }
  json j;
  j["found"] = true;
  j["trace_code"] = print_tree(*found);
  j["output"] = print_tree(extract_output(*found));
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_nf_check(const std::string& corpus_dir) {
  std::vector<CorpusEntry> entries = load_corpus(corpus_dir);
  json rows = json::array();
  bool all_ok = true;
  for (const auto& e : entries) {
    ExtNat fuel = e.fuel;
    Tree code = encode_program(e.program);
    Outcome o = run(e.program, e.input, fuel, false);
    auto nf = normal_form_eval(code, e.input, fuel);
    bool agree = o.halted ? (nf.has_value() && *nf == o.value) : !nf.has_value();
    bool expected_ok = !e.has_expected || (o.halted && o.value == e.expected);
    all_ok = all_ok && agree && expected_ok;
    rows.push_back({{"id", e.id},
                    {"halted", o.halted},
                    {"normal_form_agrees", agree},
                    {"expected_ok", expected_ok}});
    std::cerr << e.id << ": " << (agree && expected_ok ? "pass" : "FAIL") << "\n";
  }
  std::cout << json{{"entries", rows}, {"pass", all_ok}}.dump(2) << "\n";
  return all_ok ? 0 : EXIT_VIOLATION;
}

int cmd_blum(const std::string& corpus_dir, const std::string& kind, std::int64_t cap) {
  const Measure& m = kind == "space" ? space_measure() : time_measure();
  ExtNat finite_cap = cap < 0 ? ExtNat::of(10000) : ExtNat::of(static_cast<std::uint64_t>(cap));
  std::vector<CorpusEntry> entries = load_corpus(corpus_dir);
  json reports = json::array();
  bool all_ok = true;
  for (const auto& e : entries) {
    std::vector<std::uint64_t> bounds = {0, 1, 2, 4, 8, 16, 64, 256, 1024};
    BlumReport rep = blum_report(m, encode_program(e.program), e.input, bounds, finite_cap);
    all_ok = all_ok && rep.all_agree();
    json rj = blum_report_to_json(rep);
    rj["id"] = e.id;
    reports.push_back(std::move(rj));
    std::cerr << e.id << ": " << (rep.all_agree() ? "pass" : "FAIL") << "\n";
  }
  std::cout << json{{"reports", reports}, {"pass", all_ok}}.dump(2) << "\n";
  return all_ok ? 0 : EXIT_VIOLATION;
}

int cmd_diagram_normalize(const std::string& path) {
  Diagram d = diagram_from_json(json::parse(read_file(path)));
  SpiderNF nf = spider_normalize(d);
  std::cout << spider_nf_to_json(nf).dump(2) << "\n";
  return 0;
}

int cmd_diagram_eval(const std::string& path, int carrier) {
  Diagram d = diagram_from_json(json::parse(read_file(path)));
  FinRel r = finrel_eval(d, carrier);
  std::cout << finrel_to_json(r).dump(2) << "\n";
  return 0;
}

int cmd_suite(const std::string& which, std::uint64_t seed, std::uint64_t cases) {
  std::vector<SuiteReport> reports = run_suites(which, seed, cases);
  if (reports.empty()) {
    std::cerr << "unknown suite: " << which << "\n";
    return EXIT_USAGE;
  }
  bool pass = true;
  json out = json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass();
    out.push_back(suite_report_to_json(r));
    for (const auto& l : r.laws)
      std::cerr << r.suite << "/" << l.law << ": " << l.cases << " cases, " << l.failures
                << " failures\n";
  }
  std::cout << json{{"suites", out}, {"pass", pass}}.dump(2) << "\n";
  return pass ? 0 : EXIT_VIOLATION;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuel-graded universal machine over binary trees"};
  app.require_subcommand(1);
  bool json_out = true;
  app.add_flag("--json", json_out,
               "machine-readable output on stdout (the default; tables go to stderr)");

  std::string prog_path, input_text, corpus_dir = default_corpus(), kind = "time";
  std::string diagram_path, suite_name = "all";
  std::int64_t fuel = -1, cap = -1, naive_cap = -1;
  int carrier = 2;
  std::uint64_t seed = 7, cases = 200;
  bool no_trace = false;

  auto* c_run = app.add_subcommand("run", "run a program on a tree input");
  c_run->add_option("program", prog_path)->required();
  c_run->add_option("input", input_text)->required();
  c_run->add_option("--fuel", fuel, "fuel budget (default: unlimited)");
  c_run->add_flag("--no-trace", no_trace, "omit the trace from the output");

  auto* c_trace = app.add_subcommand("trace", "run and print the full trace");
  c_trace->add_option("program", prog_path)->required();
  c_trace->add_option("input", input_text)->required();
  c_trace->add_option("--fuel", fuel);

  auto* c_measure = app.add_subcommand("measure", "time or space grade of a run");
  c_measure->add_option("--kind", kind, "time|space")->check(CLI::IsMember({"time", "space"}));
  c_measure->add_option("program", prog_path)->required();
  c_measure->add_option("input", input_text)->required();
  c_measure->add_option("--cap", cap, "grade cap (default: unlimited)");

  auto* c_mu = app.add_subcommand("mu", "search for the execution trace");
  c_mu->add_option("program", prog_path)->required();
  c_mu->add_option("input", input_text)->required();
  c_mu->add_option("--naive-cap", naive_cap, "enumerate candidates up to this count");
  c_mu->add_option("--cap", fuel, "fuel cap for the effective search");

  auto* c_nf = app.add_subcommand("nf-check", "normal form vs direct run over a corpus");
  c_nf->add_option("--corpus", corpus_dir);

  auto* c_blum = app.add_subcommand("blum", "step-counting conditions over a corpus");
  c_blum->add_option("--corpus", corpus_dir);
  c_blum->add_option("--kind", kind)->check(CLI::IsMember({"time", "space"}));
  c_blum->add_option("--cap", cap);

  auto* c_diagram = app.add_subcommand("diagram", "string diagram operations");
  auto* c_dnorm = c_diagram->add_subcommand("normalize", "spider normal form of a diagram");
  c_dnorm->add_option("file", diagram_path)->required();
  auto* c_deval = c_diagram->add_subcommand("eval", "finite-relation semantics of a diagram");
  c_deval->add_option("file", diagram_path)->required();
  c_deval->add_option("--carrier", carrier)->check(CLI::PositiveNumber);
  c_diagram->require_subcommand(1);

  auto* c_suite = app.add_subcommand("suite", "run an equational law suite");
  c_suite->add_option("name", suite_name, "grading|diagram|machine|complexity|all");
  c_suite->add_option("--seed", seed);
  c_suite->add_option("--cases", cases);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : EXIT_USAGE;
  }

  try {
    if (c_run->parsed()) return cmd_run(prog_path, input_text, fuel, !no_trace);
    if (c_trace->parsed()) return cmd_run(prog_path, input_text, fuel, true);
    if (c_measure->parsed()) return cmd_measure(kind, prog_path, input_text, cap);
    if (c_mu->parsed()) return cmd_mu(prog_path, input_text, naive_cap, fuel);
    if (c_nf->parsed()) return cmd_nf_check(corpus_dir);
    if (c_blum->parsed()) return cmd_blum(corpus_dir, kind, cap);
    if (c_diagram->parsed()) {
      if (c_dnorm->parsed()) return cmd_diagram_normalize(diagram_path);
      if (c_deval->parsed()) return cmd_diagram_eval(diagram_path, carrier);
    }
    if (c_suite->parsed()) return cmd_suite(suite_name, seed, cases);
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return EXIT_USAGE;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_USAGE;
  }
  return EXIT_USAGE;
}
