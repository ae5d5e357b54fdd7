#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace moncomp {

struct diagram_error : std::runtime_error {
  explicit diagram_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Ordered list of base-type names; empty means the tensor unit.
using TypeVector = std::vector<std::string>;

enum class DiagKind { Id, Gen, Copy, Delete, Compare, Swap, Seq, Par };

struct DiagNode;
using Diagram = std::shared_ptr<const DiagNode>;

struct DiagNode {
  DiagKind kind;
  TypeVector dom, cod;
  std::string name;   // Gen
  std::string base;   // Copy/Delete/Compare, Swap first wire
  std::string base2;  // Swap second wire
  Diagram a, b;       // Seq/Par children
};

inline Diagram d_id(TypeVector tv) {
  auto n = std::make_shared<DiagNode>();
  n->kind = DiagKind::Id;
  n->dom = tv;
  n->cod = std::move(tv);
  return n;
}
inline Diagram d_gen(std::string name, TypeVector dom, TypeVector cod) {
  auto n = std::make_shared<DiagNode>();
  n->kind = DiagKind::Gen;
  n->name = std::move(name);
  n->dom = std::move(dom);
  n->cod = std::move(cod);
  return n;
}
inline Diagram d_copy(std::string base) {
  auto n = std::make_shared<DiagNode>();
  n->kind = DiagKind::Copy;
  n->dom = {base};
  n->cod = {base, base};
  n->base = std::move(base);
  return n;
}
inline Diagram d_delete(std::string base) {
  auto n = std::make_shared<DiagNode>();
  n->kind = DiagKind::Delete;
  n->dom = {base};
  n->base = std::move(base);
  return n;
}
inline Diagram d_compare(std::string base) {
  auto n = std::make_shared<DiagNode>();
  n->kind = DiagKind::Compare;
  n->dom = {base, base};
  n->cod = {base};
  n->base = std::move(base);
  return n;
}
inline Diagram d_swap(std::string a, std::string b) {
  auto n = std::make_shared<DiagNode>();
  n->kind = DiagKind::Swap;
  n->dom = {a, b};
  n->cod = {b, a};
  n->base = std::move(a);
  n->base2 = std::move(b);
  return n;
}

/// Sequential composition; boundaries must meet.
inline Diagram d_seq(Diagram d1, Diagram d2) {
  if (d1->cod != d2->dom) throw diagram_error("sequential composition boundary mismatch");
  auto n = std::make_shared<DiagNode>();
  n->kind = DiagKind::Seq;
  n->dom = d1->dom;
  n->cod = d2->cod;
  n->a = std::move(d1);
  n->b = std::move(d2);
  return n;
}

/// Parallel composition; boundaries concatenate.
inline Diagram d_par(Diagram d1, Diagram d2) {
  auto n = std::make_shared<DiagNode>();
  n->kind = DiagKind::Par;
  n->dom = d1->dom;
  n->dom.insert(n->dom.end(), d2->dom.begin(), d2->dom.end());
  n->cod = d1->cod;
  n->cod.insert(n->cod.end(), d2->cod.begin(), d2->cod.end());
  n->a = std::move(d1);
  n->b = std::move(d2);
  return n;
}

// ---------------------------------------------------------------------------
// Spider normal form: the copy/delete/compare/swap fragment over one base
// type is determined by the partition of its boundary ports into the
// connected components of the wiring graph. Inputs are numbered 0..m-1 and
// outputs m..m+n-1; every block contains an input port (comparison has no
// 0-ary form, while deletion is the 0-ary copy).
// ---------------------------------------------------------------------------

struct SpiderNF {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<std::vector<std::size_t>> blocks;  // each sorted; blocks sorted by first port

  friend bool operator==(const SpiderNF& a, const SpiderNF& b) {
    return a.inputs == b.inputs && a.outputs == b.outputs && a.blocks == b.blocks;
  }
  friend bool operator!=(const SpiderNF& a, const SpiderNF& b) { return !(a == b); }
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t fresh() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct Boundary {
  std::vector<std::size_t> ins, outs;
};

inline Boundary spider_eval(const Diagram& d, UnionFind& uf) {
  switch (d->kind) {
    case DiagKind::Id: {
      Boundary b;
      for (std::size_t i = 0; i < d->dom.size(); ++i) {
        std::size_t x = uf.fresh();
        b.ins.push_back(x);
        b.outs.push_back(x);
      }
      return b;
    }
    case DiagKind::Copy: {
      std::size_t x = uf.fresh();
      return {{x}, {x, x}};
    }
    case DiagKind::Delete: {
      std::size_t x = uf.fresh();
      return {{x}, {}};
    }
    case DiagKind::Compare: {
      std::size_t x = uf.fresh();
      return {{x, x}, {x}};
    }
    case DiagKind::Swap: {
      std::size_t x = uf.fresh(), y = uf.fresh();
      return {{x, y}, {y, x}};
    }
    case DiagKind::Seq: {
      Boundary b1 = spider_eval(d->a, uf);
      Boundary b2 = spider_eval(d->b, uf);
      for (std::size_t i = 0; i < b1.outs.size(); ++i) uf.unite(b1.outs[i], b2.ins[i]);
      return {std::move(b1.ins), std::move(b2.outs)};
    }
    case DiagKind::Par: {
      Boundary b1 = spider_eval(d->a, uf);
      Boundary b2 = spider_eval(d->b, uf);
      b1.ins.insert(b1.ins.end(), b2.ins.begin(), b2.ins.end());
      b1.outs.insert(b1.outs.end(), b2.outs.begin(), b2.outs.end());
      return b1;
    }
    case DiagKind::Gen:
      throw diagram_error("generator boxes are outside the spider fragment");
  }
  throw std::logic_error("bad diagram kind");
}

inline void collect_bases(const Diagram& d, std::set<std::string>& bases, bool& has_gen) {
  for (const auto& t : d->dom) bases.insert(t);
  for (const auto& t : d->cod) bases.insert(t);
  if (d->kind == DiagKind::Gen) has_gen = true;
  if (d->a) collect_bases(d->a, bases, has_gen);
  if (d->b) collect_bases(d->b, bases, has_gen);
}

}  // namespace detail

inline bool in_spider_fragment(const Diagram& d) {
  std::set<std::string> bases;
  bool has_gen = false;
  detail::collect_bases(d, bases, has_gen);
  return !has_gen && bases.size() <= 1;
}

inline SpiderNF spider_normalize(const Diagram& d) {
  if (!in_spider_fragment(d))
    throw diagram_error("spider normalization needs a copy/delete/compare/swap diagram "
                        "over a single base type");
  detail::UnionFind uf;
  detail::Boundary b = detail::spider_eval(d, uf);
  SpiderNF nf;
  nf.inputs = b.ins.size();
  nf.outputs = b.outs.size();
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < b.ins.size(); ++i) groups[uf.find(b.ins[i])].push_back(i);
  for (std::size_t j = 0; j < b.outs.size(); ++j)
    groups[uf.find(b.outs[j])].push_back(nf.inputs + j);
  for (auto& [root, ports] : groups) {
    if (ports.front() >= nf.inputs)
      throw diagram_error("spider block without an input port");  // unreachable by construction
    nf.blocks.push_back(std::move(ports));
  }
  std::sort(nf.blocks.begin(), nf.blocks.end());
  return nf;
}

// ---------------------------------------------------------------------------
// Canonical rebuild: a permutation layer grouping each block's inputs,
// one comparison-then-copy spider per block, and a permutation layer
// scattering the outputs back. Used by the soundness tests and the CLI.
// ---------------------------------------------------------------------------

namespace detail {

inline Diagram rho_chain(const std::string& base, std::size_t k) {
  Diagram d = d_id({base});
  for (std::size_t i = 1; i < k; ++i) d = d_seq(d_par(d, d_id({base})), d_compare(base));
  return d;
}

inline Diagram delta_chain(const std::string& base, std::size_t j) {
  if (j == 0) return d_delete(base);
  Diagram d = d_id({base});
  for (std::size_t i = 1; i < j; ++i) d = d_seq(d_copy(base), d_par(d, d_id({base})));
  return d;
}

/// Diagram sending wire at position i to position perm[i], built from
/// adjacent swaps.
inline Diagram permutation_diagram(const std::string& base, std::vector<std::size_t> perm) {
  std::size_t n = perm.size();
  // desired[p] = which original wire ends at position p
  std::vector<std::size_t> desired(n);
  for (std::size_t i = 0; i < n; ++i) desired[perm[i]] = i;
  std::vector<std::size_t> current(n);
  std::iota(current.begin(), current.end(), 0);
  Diagram d = d_id(TypeVector(n, base));
  auto swap_layer = [&](std::size_t j) {
    Diagram layer = d_swap(base, base);
    if (j > 0) layer = d_par(d_id(TypeVector(j, base)), layer);
    if (j + 2 < n) layer = d_par(layer, d_id(TypeVector(n - j - 2, base)));
    d = d_seq(d, layer);
    std::swap(current[j], current[j + 1]);
  };
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t q = p;
    while (current[q] != desired[p]) ++q;
    while (q > p) {
      swap_layer(q - 1);
      --q;
    }
  }
  return d;
}

}  // namespace detail

inline Diagram spider_rebuild(const SpiderNF& nf, const std::string& base) {
  std::vector<std::size_t> in_perm(nf.inputs);
  // the grouped output slot p must travel back to its original position, so
  // the slot-to-original map is itself the outgoing permutation
  std::vector<std::size_t> out_perm;
  std::size_t in_pos = 0;
  Diagram spiders;
  bool first = true;
  for (const auto& block : nf.blocks) {
    std::size_t k = 0, j = 0;
    for (std::size_t port : block) {
      if (port < nf.inputs) {
        in_perm[port] = in_pos++;
        ++k;
      } else {
        out_perm.push_back(port - nf.inputs);
        ++j;
      }
    }
    Diagram sp = d_seq(detail::rho_chain(base, k), detail::delta_chain(base, j));
    spiders = first ? sp : d_par(spiders, sp);
    first = false;
  }
  if (first) spiders = d_id({});
  Diagram d = detail::permutation_diagram(base, in_perm);
  d = d_seq(d, spiders);
  d = d_seq(d, detail::permutation_diagram(base, out_perm));
  return d;
}

// ---------------------------------------------------------------------------
// Finite-relation semantics: the standard data service in the category of
// relations. Copy relates x to (x, x), delete to the empty tuple, comparison
// relates (x, x) to x and is undefined off the diagonal.
// ---------------------------------------------------------------------------

struct FinRel {
  int carrier = 1;
  std::size_t dom_arity = 0;
  std::size_t cod_arity = 0;
  std::set<std::pair<std::vector<int>, std::vector<int>>> pairs;

  friend bool operator==(const FinRel& a, const FinRel& b) {
    return a.carrier == b.carrier && a.dom_arity == b.dom_arity && a.cod_arity == b.cod_arity &&
           a.pairs == b.pairs;
  }
  friend bool operator!=(const FinRel& a, const FinRel& b) { return !(a == b); }
};

inline FinRel rel_identity(int carrier, std::size_t arity) {
  FinRel r{carrier, arity, arity, {}};
  std::vector<int> t(arity, 0);
  while (true) {
    r.pairs.insert({t, t});
    std::size_t i = 0;
    while (i < arity && ++t[i] == carrier) t[i++] = 0;
    if (i == arity) break;
  }
  return r;
}

inline FinRel rel_copy(int carrier) {
  FinRel r{carrier, 1, 2, {}};
  for (int x = 0; x < carrier; ++x) r.pairs.insert({{x}, {x, x}});
  return r;
}
inline FinRel rel_delete(int carrier) {
  FinRel r{carrier, 1, 0, {}};
  for (int x = 0; x < carrier; ++x) r.pairs.insert({{x}, {}});
  return r;
}
inline FinRel rel_compare(int carrier) {
  FinRel r{carrier, 2, 1, {}};
  for (int x = 0; x < carrier; ++x) r.pairs.insert({{x, x}, {x}});
  return r;
}
inline FinRel rel_swap(int carrier) {
  FinRel r{carrier, 2, 2, {}};
  for (int x = 0; x < carrier; ++x)
    for (int y = 0; y < carrier; ++y) r.pairs.insert({{x, y}, {y, x}});
  return r;
}

inline FinRel rel_seq(const FinRel& f, const FinRel& g) {
  if (f.carrier != g.carrier || f.cod_arity != g.dom_arity)
    throw diagram_error("relation composition arity mismatch");
  FinRel r{f.carrier, f.dom_arity, g.cod_arity, {}};
  std::map<std::vector<int>, std::vector<const std::vector<int>*>> by_in;
  for (const auto& [a, b] : g.pairs) by_in[a].push_back(&b);
  for (const auto& [a, b] : f.pairs) {
    auto it = by_in.find(b);
    if (it == by_in.end()) continue;
    for (const auto* c : it->second) r.pairs.insert({a, *c});
  }
  return r;
}

inline FinRel rel_par(const FinRel& f, const FinRel& g) {
  if (f.carrier != g.carrier) throw diagram_error("relation product carrier mismatch");
  FinRel r{f.carrier, f.dom_arity + g.dom_arity, f.cod_arity + g.cod_arity, {}};
  for (const auto& [a1, b1] : f.pairs)
    for (const auto& [a2, b2] : g.pairs) {
      std::vector<int> a = a1, b = b1;
      a.insert(a.end(), a2.begin(), a2.end());
      b.insert(b.end(), b2.begin(), b2.end());
      r.pairs.insert({std::move(a), std::move(b)});
    }
  return r;
}

using FinRelEnv = std::map<std::string, FinRel>;

inline FinRel finrel_eval(const Diagram& d, int carrier, const FinRelEnv& env = {}) {
  switch (d->kind) {
    case DiagKind::Id: return rel_identity(carrier, d->dom.size());
    case DiagKind::Copy: return rel_copy(carrier);
    case DiagKind::Delete: return rel_delete(carrier);
    case DiagKind::Compare: return rel_compare(carrier);
    case DiagKind::Swap: return rel_swap(carrier);
    case DiagKind::Gen: {
      auto it = env.find(d->name);
      if (it == env.end()) throw diagram_error("unbound generator: " + d->name);
      const FinRel& r = it->second;
      if (r.carrier != carrier || r.dom_arity != d->dom.size() || r.cod_arity != d->cod.size())
        throw diagram_error("generator semantics arity mismatch: " + d->name);
      return r;
    }
    case DiagKind::Seq: return rel_seq(finrel_eval(d->a, carrier, env), finrel_eval(d->b, carrier, env));
    case DiagKind::Par: return rel_par(finrel_eval(d->a, carrier, env), finrel_eval(d->b, carrier, env));
  }
  throw std::logic_error("bad diagram kind");
}

/// Single-valued and total on its carrier: exactly the comonoid-homomorphism
/// characterization, read relationally.
inline bool is_function(const FinRel& r) {
  std::set<std::vector<int>> inputs;
  for (const auto& [a, b] : r.pairs) {
    if (!inputs.insert(a).second) return false;  // two outputs for one input
  }
  std::uint64_t want = 1;
  for (std::size_t i = 0; i < r.dom_arity; ++i) {
    want *= static_cast<std::uint64_t>(r.carrier);
    if (want > (1ull << 40)) throw diagram_error("carrier too large for totality check");
  }
  return inputs.size() == want;
}

// ---------------------------------------------------------------------------
// Equality: complete in the spider fragment via normal forms; otherwise a
// finite-relation check at carriers 1..3 under every supplied interpretation
// of the generator boxes. The oracle verdict is flagged as such.
// ---------------------------------------------------------------------------

struct GenSemantics {
  std::function<FinRel(int carrier)> make;
};
using EnvCandidates = std::map<std::string, std::vector<GenSemantics>>;

struct EqResult {
  bool equal = false;
  bool exact = false;  // false means the finite-relation oracle decided

  explicit operator bool() const { return equal; }
};

namespace detail {

inline void collect_gens(const Diagram& d, std::set<std::string>& names) {
  if (d->kind == DiagKind::Gen) names.insert(d->name);
  if (d->a) collect_gens(d->a, names);
  if (d->b) collect_gens(d->b, names);
}

}  // namespace detail

inline EqResult diagrams_equal(const Diagram& d1, const Diagram& d2,
                               const EnvCandidates& candidates = {}) {
  if (d1->dom != d2->dom || d1->cod != d2->cod)
    throw diagram_error("diagram equality needs matching boundaries");
  if (in_spider_fragment(d1) && in_spider_fragment(d2)) {
    std::set<std::string> bases;
    bool has_gen = false;
    detail::collect_bases(d1, bases, has_gen);
    detail::collect_bases(d2, bases, has_gen);
    if (bases.size() <= 1) return {spider_normalize(d1) == spider_normalize(d2), true};
  }
  std::set<std::string> names;
  detail::collect_gens(d1, names);
  detail::collect_gens(d2, names);
  std::vector<std::string> gen_names(names.begin(), names.end());
  for (const auto& g : gen_names)
    if (candidates.find(g) == candidates.end() || candidates.at(g).empty())
      throw diagram_error("no candidate semantics for generator: " + g);
  for (int carrier = 1; carrier <= 3; ++carrier) {
    std::vector<std::size_t> idx(gen_names.size(), 0);
    bool more = true;
    while (more) {
      FinRelEnv env;
      for (std::size_t i = 0; i < gen_names.size(); ++i)
        env[gen_names[i]] = candidates.at(gen_names[i])[idx[i]].make(carrier);
      if (finrel_eval(d1, carrier, env) != finrel_eval(d2, carrier, env)) return {false, false};
      more = false;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        if (++idx[i] < candidates.at(gen_names[i]).size()) {
          more = true;
          break;
        }
        idx[i] = 0;
      }
    }
  }
  return {true, false};
}

}  // namespace moncomp
