#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace moncomp {

struct parse_error : std::runtime_error {
  int line;
  int column;
  parse_error(std::string msg, int ln, int col)
      : std::runtime_error(msg + " at " + std::to_string(ln) + ":" + std::to_string(col)),
        line(ln),
        column(col) {}
};

struct decode_error : std::runtime_error {
  explicit decode_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Immutable binary tree over the single atom nil. The value universe for the
/// whole machine: data, programs, configurations, traces and grades are all
/// encoded as trees. Structure is shared; nodes carry cached size and hash so
/// equality and space accounting stay cheap.
class Tree {
 public:
  Tree() noexcept : n_(nullptr) {}

  Tree(const Tree& o) noexcept : n_(o.n_) { retain(n_); }
  Tree(Tree&& o) noexcept : n_(o.n_) { o.n_ = nullptr; }
  Tree& operator=(const Tree& o) noexcept {
    if (this != &o) {
      Node* old = n_;
      n_ = o.n_;
      retain(n_);
      release(old);
    }
    return *this;
  }
  Tree& operator=(Tree&& o) noexcept {
    if (this != &o) {
      Node* old = n_;
      n_ = o.n_;
      o.n_ = nullptr;
      release(old);
    }
    return *this;
  }
  ~Tree() { release(n_); }

  static Tree nil() noexcept { return Tree(); }

  static Tree cons(const Tree& l, const Tree& r) {
    Node* n = new Node;
    n->l = l.n_;
    n->r = r.n_;
    retain(n->l);
    retain(n->r);
    n->size = 1 + size_of(l.n_) + size_of(r.n_);
    n->hash = mix(hash_of(l.n_), hash_of(r.n_));
    n->rc.store(1, std::memory_order_relaxed);
    Tree t;
    t.n_ = n;
    return t;
  }

  bool is_nil() const noexcept { return n_ == nullptr; }
  bool is_cons() const noexcept { return n_ != nullptr; }

  Tree left() const {
    if (!n_) throw decode_error("left() on nil tree");
    return from_node(n_->l);
  }
  Tree right() const {
    if (!n_) throw decode_error("right() on nil tree");
    return from_node(n_->r);
  }

  /// Total projections: hd/tl of nil is nil, matching the machine semantics.
  Tree hd() const noexcept { return n_ ? from_node(n_->l) : Tree(); }
  Tree tl() const noexcept { return n_ ? from_node(n_->r) : Tree(); }

  /// Number of cons nodes.
  std::uint64_t size() const noexcept { return size_of(n_); }
  std::uint64_t hash() const noexcept { return hash_of(n_); }

  friend bool operator==(const Tree& a, const Tree& b) noexcept {
    if (a.n_ == b.n_) return true;
    if (a.hash() != b.hash() || a.size() != b.size()) return false;
    return structural_equal(a.n_, b.n_);
  }
  friend bool operator!=(const Tree& a, const Tree& b) noexcept { return !(a == b); }

 private:
  struct Node {
    Node* l;
    Node* r;
    std::uint64_t size;
    std::uint64_t hash;
    std::atomic<std::uint64_t> rc;
  };

  Node* n_;

  static Tree from_node(Node* n) noexcept {
    Tree t;
    t.n_ = n;
    retain(n);
    return t;
  }

  static std::uint64_t size_of(const Node* n) noexcept { return n ? n->size : 0; }
  static std::uint64_t hash_of(const Node* n) noexcept {
    return n ? n->hash : 0x9e3779b97f4a7c15ull;
  }

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t x = a * 0xff51afd7ed558ccdull ^ (b + 0x2545f4914f6cdd1dull);
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ull;
    x ^= x >> 29;
    return x;
  }

  static void retain(Node* n) noexcept {
    if (n) n->rc.fetch_add(1, std::memory_order_relaxed);
  }

  // Iterative release: deep right spines (unary numerals) must not recurse.
  static void release(Node* n) noexcept {
    if (!n) return;
    std::vector<Node*> work;
    work.push_back(n);
    while (!work.empty()) {
      Node* m = work.back();
      work.pop_back();
      if (m->rc.fetch_sub(1, std::memory_order_acq_rel) == 1) {
        if (m->l) work.push_back(m->l);
        if (m->r) work.push_back(m->r);
        delete m;
      }
    }
  }

  static bool structural_equal(const Node* a, const Node* b) noexcept {
    std::vector<std::pair<const Node*, const Node*>> work;
    work.emplace_back(a, b);
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      if (x == y) continue;
      if (!x || !y) return false;
      if (x->size != y->size || x->hash != y->hash) return false;
      work.emplace_back(x->l, y->l);
      work.emplace_back(x->r, y->r);
    }
    return true;
  }

  friend int lex_compare(const Tree& a, const Tree& b) noexcept;
};

/// Lexicographic order with nil < cons, recursing on left then right.
inline int lex_compare(const Tree& a, const Tree& b) noexcept {
  std::vector<std::pair<const Tree::Node*, const Tree::Node*>> work;
  work.emplace_back(a.n_, b.n_);
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (x == y) continue;
    if (!x) return -1;
    if (!y) return 1;
    // compare right after left: push right first so left is examined first
    work.emplace_back(x->r, y->r);
    work.emplace_back(x->l, y->l);
  }
  return 0;
}

inline bool lex_less(const Tree& a, const Tree& b) noexcept { return lex_compare(a, b) < 0; }

/// Prints in the concrete syntax: `()` for nil, `(l . r)` for cons.
inline std::string print_tree(const Tree& t) {
  std::string out;
  // Work items: a tree to print, or a literal chunk. Iterative to cope with
  // deep numerals.
  struct Item {
    Tree t;
    const char* lit;
  };
  std::vector<Item> work;
  work.push_back({t, nullptr});
  while (!work.empty()) {
    Item it = work.back();
    work.pop_back();
    if (it.lit) {
      out += it.lit;
      continue;
    }
    if (it.t.is_nil()) {
      out += "()";
    } else {
      out += '(';
      work.push_back({Tree(), ")"});
      work.push_back({it.t.right(), nullptr});
      work.push_back({Tree(), " . "});
      work.push_back({it.t.left(), nullptr});
    }
  }
  return out;
}

/// Parses the `()` / `(t . t)` syntax; whitespace-insensitive.
inline Tree parse_tree(const std::string& text) {
  enum class Stage { NeedLeft, NeedRight, NeedClose };
  struct Frame {
    Stage stage;
    Tree left;
  };
  std::size_t i = 0;
  int line = 1, col = 1;
  auto fail = [&](const std::string& msg) -> void { throw parse_error(msg, line, col); };
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i < text.size() && text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r'))
      advance(1);
  };

  std::vector<Frame> stack;
  Tree done;
  bool have_done = false;

  auto deliver = [&](Tree v) {
    while (true) {
      if (stack.empty()) {
        done = v;
        have_done = true;
        return;
      }
      Frame& f = stack.back();
      if (f.stage == Stage::NeedLeft) {
        f.left = v;
        f.stage = Stage::NeedRight;
        skip_ws();
        if (i >= text.size() || text[i] != '.') fail("expected '.'");
        advance(1);
        return;
      }
      // NeedRight completed: expect ')' now.
      Tree full = Tree::cons(f.left, v);
      stack.pop_back();
      skip_ws();
      if (i >= text.size() || text[i] != ')') fail("expected ')'");
      advance(1);
      v = full;
    }
  };

  skip_ws();
  while (true) {
    if (have_done) break;
    skip_ws();
    if (i >= text.size()) fail("unexpected end of input");
    if (text[i] != '(') fail("expected '('");
    advance(1);
    skip_ws();
    if (i < text.size() && text[i] == ')') {
      advance(1);
      deliver(Tree::nil());
      continue;
    }
    // left subtree next; '.' is consumed when the left completes
    stack.push_back({Stage::NeedLeft, Tree()});
    continue;
  }
  skip_ws();
  if (i < text.size()) fail("trailing input after tree");
  return done;
}

/// Unary numeral: 0 = nil, n = cons(nil, n-1).
inline Tree tree_nat(std::uint64_t n) {
  Tree t;
  for (std::uint64_t i = 0; i < n; ++i) t = Tree::cons(Tree::nil(), t);
  return t;
}

/// Recovers n from a unary numeral; fails if some left child is not nil.
inline bool nat_of_tree(const Tree& t, std::uint64_t& out) {
  std::uint64_t n = 0;
  Tree cur = t;
  while (cur.is_cons()) {
    if (!cur.left().is_nil()) return false;
    ++n;
    cur = cur.right();
  }
  out = n;
  return true;
}

inline Tree tree_list(const std::vector<Tree>& xs) {
  Tree t;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) t = Tree::cons(*it, t);
  return t;
}

inline std::vector<Tree> tree_unlist(const Tree& t) {
  std::vector<Tree> out;
  Tree cur = t;
  while (cur.is_cons()) {
    out.push_back(cur.left());
    cur = cur.right();
  }
  return out;
}

/// Enumerates all trees in the canonical order: by size (cons count), then
/// lexicographic with nil < cons. Buckets are memoized, so streaming through
/// the first million candidates stays cheap and maximally shares structure.
class TreeEnumerator {
 public:
  const std::vector<Tree>& bucket(std::size_t size) {
    while (buckets_.size() <= size) grow();
    return buckets_[size];
  }

  /// k-th tree (0-based) in the canonical order.
  Tree at(std::uint64_t k) {
    std::size_t s = 0;
    while (true) {
      const auto& b = bucket(s);
      if (k < b.size()) return b[k];
      k -= b.size();
      ++s;
    }
  }

 private:
  std::vector<std::vector<Tree>> buckets_;

  void grow() {
    std::size_t n = buckets_.size();
    std::vector<Tree> b;
    if (n == 0) {
      b.push_back(Tree::nil());
    } else {
      for (std::size_t i = 0; i + 1 <= n; ++i) {
        const auto& ls = buckets_[i];
        const auto& rs = buckets_[n - 1 - i];
        for (const auto& l : ls)
          for (const auto& r : rs) b.push_back(Tree::cons(l, r));
      }
      std::sort(b.begin(), b.end(), [](const Tree& a, const Tree& c) { return lex_less(a, c); });
    }
    buckets_.push_back(std::move(b));
  }
};

}  // namespace moncomp
