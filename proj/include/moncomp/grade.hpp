#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace moncomp {

struct monoid_error : std::runtime_error {
  explicit monoid_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Natural number completed with an absorbing top element.
struct ExtNat {
  bool infinite = false;
  std::uint64_t value = 0;

  static ExtNat inf() { return {true, 0}; }
  static ExtNat of(std::uint64_t v) { return {false, v}; }

  friend bool operator==(const ExtNat& a, const ExtNat& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  friend bool operator!=(const ExtNat& a, const ExtNat& b) { return !(a == b); }
};

inline ExtNat ext_add(ExtNat a, ExtNat b) {
  if (a.infinite || b.infinite) return ExtNat::inf();
  std::uint64_t s = a.value + b.value;
  return ExtNat::of(s < a.value ? ~0ull : s);
}
inline ExtNat ext_min(ExtNat a, ExtNat b) {
  if (a.infinite) return b;
  if (b.infinite) return a;
  return ExtNat::of(a.value < b.value ? a.value : b.value);
}
inline bool ext_leq(ExtNat a, ExtNat b) {
  if (b.infinite) return true;
  if (a.infinite) return false;
  return a.value <= b.value;
}

enum class MonoidKind { CompletedNat, MultisetExpr, PolyPlusClass, PolyOClass };

inline const char* monoid_name(MonoidKind k) {
  switch (k) {
    case MonoidKind::CompletedNat: return "nat";
    case MonoidKind::MultisetExpr: return "multiset";
    case MonoidKind::PolyPlusClass: return "poly+";
    case MonoidKind::PolyOClass: return "polyO";
  }
  return "?";
}

/// Element of one of the four grading monoids. Payloads are finite
/// representations; the absorbing top is an explicit marker. Polynomial
/// payloads always have their trailing zero coefficients stripped.
class Grade {
 public:
  using Multiset = std::map<std::string, std::uint64_t>;
  using Coeffs = std::vector<std::uint64_t>;

  static Grade nat(std::uint64_t v) { return Grade(MonoidKind::CompletedNat, ExtNat::of(v)); }
  static Grade nat(ExtNat v) { return Grade(MonoidKind::CompletedNat, v); }
  static Grade infinity(MonoidKind k) {
    Grade g(k, ExtNat::inf());
    g.infinite_ = true;
    return g;
  }
  static Grade multiset_counts(Multiset m) {
    Grade g(MonoidKind::MultisetExpr, ExtNat::of(0));
    g.infinite_ = false;
    g.multiset_ = std::move(m);
    return g;
  }
  static Grade multiset(const std::vector<std::string>& elems) {
    Multiset m;
    for (const auto& e : elems) ++m[e];
    return multiset_counts(std::move(m));
  }
  static Grade poly_plus(Coeffs c) { return poly(MonoidKind::PolyPlusClass, std::move(c)); }
  static Grade poly_o(Coeffs c) { return poly(MonoidKind::PolyOClass, std::move(c)); }
  static Grade poly(MonoidKind k, Coeffs c) {
    if (k != MonoidKind::PolyPlusClass && k != MonoidKind::PolyOClass)
      throw monoid_error("poly grade needs a polynomial monoid kind");
    while (!c.empty() && c.back() == 0) c.pop_back();
    Grade g(k, ExtNat::of(0));
    g.coeffs_ = std::move(c);
    return g;
  }

  MonoidKind kind() const { return kind_; }
  bool is_infinite() const {
    return kind_ == MonoidKind::CompletedNat ? nat_.infinite : infinite_;
  }
  ExtNat as_nat() const {
    require(MonoidKind::CompletedNat);
    return nat_;
  }
  const Multiset& as_multiset() const {
    require(MonoidKind::MultisetExpr);
    return multiset_;
  }
  const Coeffs& coeffs() const {
    if (kind_ != MonoidKind::PolyPlusClass && kind_ != MonoidKind::PolyOClass)
      throw monoid_error("not a polynomial grade");
    return coeffs_;
  }

  friend bool operator==(const Grade& a, const Grade& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
    switch (a.kind_) {
      case MonoidKind::CompletedNat: return a.nat_ == b.nat_;
      case MonoidKind::MultisetExpr: return a.multiset_ == b.multiset_;
      default: return a.coeffs_ == b.coeffs_;
    }
  }
  friend bool operator!=(const Grade& a, const Grade& b) { return !(a == b); }

 private:
  Grade(MonoidKind k, ExtNat n) : kind_(k), nat_(n) {}

  void require(MonoidKind k) const {
    if (kind_ != k) throw monoid_error("grade kind mismatch");
  }

  MonoidKind kind_;
  ExtNat nat_;             // CompletedNat payload (carries its own inf flag)
  bool infinite_ = false;  // inf marker for the other kinds
  Multiset multiset_;
  Coeffs coeffs_;
};

inline Grade grade_zero(MonoidKind k) {
  switch (k) {
    case MonoidKind::CompletedNat: return Grade::nat(0);
    case MonoidKind::MultisetExpr: return Grade::multiset_counts(Grade::Multiset{});
    case MonoidKind::PolyPlusClass: return Grade::poly_plus({});
    case MonoidKind::PolyOClass: return Grade::poly_o({});
  }
  throw monoid_error("bad kind");
}

inline void require_same_monoid(const Grade& m, const Grade& n) {
  if (m.kind() != n.kind()) throw monoid_error("mixed-monoid arguments");
}

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? ~0ull : s;
}

/// Monoid sum. Addition / multiset union / coefficientwise addition; the
/// absorbing element swallows everything.
inline Grade oplus(const Grade& m, const Grade& n) {
  require_same_monoid(m, n);
  if (m.is_infinite() || n.is_infinite()) return Grade::infinity(m.kind());
  switch (m.kind()) {
    case MonoidKind::CompletedNat:
      return Grade::nat(ext_add(m.as_nat(), n.as_nat()));
    case MonoidKind::MultisetExpr: {
      Grade::Multiset out = m.as_multiset();
      for (const auto& [k, c] : n.as_multiset()) out[k] += c;
      return Grade::multiset_counts(std::move(out));
    }
    default: {
      const auto& a = m.coeffs();
      const auto& b = n.coeffs();
      Grade::Coeffs out(std::max(a.size(), b.size()), 0);
      for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = sat_add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
      return Grade::poly(m.kind(), std::move(out));
    }
  }
}

/// Order induced by the monoid: m <= n iff some l satisfies l (+) m = n.
/// Per kind: numeric order with the top element above everything, multiset
/// inclusion, and coefficientwise order (the witness must itself have
/// non-negative coefficients).
inline bool leq(const Grade& m, const Grade& n) {
  require_same_monoid(m, n);
  if (n.is_infinite()) return true;
  if (m.is_infinite()) return false;
  switch (m.kind()) {
    case MonoidKind::CompletedNat:
      return ext_leq(m.as_nat(), n.as_nat());
    case MonoidKind::MultisetExpr: {
      const auto& big = n.as_multiset();
      for (const auto& [k, c] : m.as_multiset()) {
        auto it = big.find(k);
        if (it == big.end() || it->second < c) return false;
      }
      return true;
    }
    default: {
      const auto& a = m.coeffs();
      const auto& b = n.coeffs();
      if (a.size() > b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
      return true;
    }
  }
}

/// Diagnostic witness: an l with oplus(l, m) = n, whenever leq(m, n) holds.
inline std::optional<Grade> leq_witness(const Grade& m, const Grade& n) {
  require_same_monoid(m, n);
  if (!leq(m, n)) return std::nullopt;
  if (n.is_infinite()) return Grade::infinity(m.kind());
  switch (m.kind()) {
    case MonoidKind::CompletedNat:
      return Grade::nat(n.as_nat().value - m.as_nat().value);
    case MonoidKind::MultisetExpr: {
      Grade::Multiset out = n.as_multiset();
      for (const auto& [k, c] : m.as_multiset()) {
        auto it = out.find(k);
        it->second -= c;
        if (it->second == 0) out.erase(it);
      }
      return Grade::multiset_counts(std::move(out));
    }
    default: {
      const auto& a = m.coeffs();
      const auto& b = n.coeffs();
      Grade::Coeffs out(b.size(), 0);
      for (std::size_t i = 0; i < b.size(); ++i) out[i] = b[i] - (i < a.size() ? a[i] : 0);
      return Grade::poly(m.kind(), std::move(out));
    }
  }
}

inline std::uint64_t poly_degree_plus_one(const Grade::Coeffs& c) { return c.size(); }

/// Canonical representative of the equivalence class m ~ n (leq both ways).
/// CompletedNat and multisets are already canonical. The additive-shift
/// polynomial classes zero the constant term; the growth-order classes keep
/// only the degree.
inline Grade canonicalize(const Grade& m) {
  if (m.is_infinite()) return m;
  switch (m.kind()) {
    case MonoidKind::CompletedNat:
    case MonoidKind::MultisetExpr:
      return m;
    case MonoidKind::PolyPlusClass: {
      Grade::Coeffs c = m.coeffs();
      if (!c.empty()) c[0] = 0;
      return Grade::poly_plus(std::move(c));
    }
    case MonoidKind::PolyOClass: {
      const auto& c = m.coeffs();
      if (c.empty()) return Grade::poly_o({});
      Grade::Coeffs out(c.size(), 0);
      out.back() = 1;
      return Grade::poly_o(std::move(out));
    }
  }
  throw monoid_error("bad kind");
}

/// Greatest lower bound. Numeric min, multiset intersection, coefficientwise
/// min; the growth-order classes are totally ordered by degree, so their meet
/// is the smaller-degree canonical representative.
inline Grade meet(const Grade& m, const Grade& n) {
  require_same_monoid(m, n);
  if (m.is_infinite()) return n;
  if (n.is_infinite()) return m;
  switch (m.kind()) {
    case MonoidKind::CompletedNat:
      return Grade::nat(ext_min(m.as_nat(), n.as_nat()));
    case MonoidKind::MultisetExpr: {
      Grade::Multiset out;
      const auto& b = n.as_multiset();
      for (const auto& [k, c] : m.as_multiset()) {
        auto it = b.find(k);
        if (it != b.end()) out[k] = std::min(c, it->second);
      }
      return Grade::multiset_counts(std::move(out));
    }
    case MonoidKind::PolyPlusClass: {
      const auto& a = m.coeffs();
      const auto& b = n.coeffs();
      Grade::Coeffs out(std::min(a.size(), b.size()), 0);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(a[i], b[i]);
      return Grade::poly_plus(std::move(out));
    }
    case MonoidKind::PolyOClass: {
      Grade ca = canonicalize(m), cb = canonicalize(n);
      return ca.coeffs().size() <= cb.coeffs().size() ? ca : cb;
    }
  }
  throw monoid_error("bad kind");
}

/// f <=+ g: some constant c has f(x) <= c + g(x) for all x. Exact for
/// non-negative integer coefficients: the difference f - g must be bounded
/// above, i.e. the highest differing coefficient is the constant term or
/// favors g.
inline bool leq_plus(const Grade& f, const Grade& g) {
  if (f.kind() != MonoidKind::PolyPlusClass || g.kind() != MonoidKind::PolyPlusClass)
    throw monoid_error("leq_plus needs poly+ grades");
  if (g.is_infinite()) return true;
  if (f.is_infinite()) return false;
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t idx = n; idx-- > 0;) {
    std::uint64_t fa = idx < a.size() ? a[idx] : 0;
    std::uint64_t gb = idx < b.size() ? b[idx] : 0;
    if (fa == gb) continue;
    return idx == 0 || fa < gb;
  }
  return true;  // identical
}

/// f <=O g: some c, d have f(x) <= c * g(x) for x >= d. For non-negative
/// integer coefficients this is degree comparison, except nothing nonzero
/// fits below the zero polynomial.
inline bool leq_O(const Grade& f, const Grade& g) {
  if (f.kind() != MonoidKind::PolyOClass || g.kind() != MonoidKind::PolyOClass)
    throw monoid_error("leq_O needs polyO grades");
  if (g.is_infinite()) return true;
  if (f.is_infinite()) return false;
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  if (a.empty()) return true;
  if (b.empty()) return false;
  return a.size() <= b.size();
}

/// Composition rule for the secondary space grading: additive by default, a
/// max-combining variant behind the flag.
enum class SpaceComposition { Additive, Maximum };

inline Grade combine_space(const Grade& a, const Grade& b,
                           SpaceComposition mode = SpaceComposition::Additive) {
  if (a.kind() != MonoidKind::CompletedNat || b.kind() != MonoidKind::CompletedNat)
    throw monoid_error("space grades are completed naturals");
  if (mode == SpaceComposition::Additive) return oplus(a, b);
  if (a.is_infinite() || b.is_infinite()) return Grade::infinity(MonoidKind::CompletedNat);
  return Grade::nat(std::max(a.as_nat().value, b.as_nat().value));
}

}  // namespace moncomp
