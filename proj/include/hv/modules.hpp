#ifndef HV_MODULES_HPP
#define HV_MODULES_HPP

#include <array>
#include <compare>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include "hv/algebra.hpp"
#include "hv/errors.hpp"
#include "hv/partitions.hpp"
#include "hv/rational.hpp"
#include "hv/uea.hpp"

namespace hv {

/// Values of psi on L_1, L_2, I_1. psi vanishes on L_i (i >= 3) and I_j (j >= 2)
/// because those lie in [n+, n+].
struct WhittakerMap {
  Rational l1;
  Rational l2;
  Rational i1;

  bool nonsingular() const { return !l1.is_zero() && !l2.is_zero() && !i1.is_zero(); }
  bool identically_zero() const { return l1.is_zero() && l2.is_zero() && i1.is_zero(); }

  /// psi(g) for g in n+, zero for every other generator.
  Rational operator()(Generator g) const {
    if (g.kind() == Kind::L && g.index() == 1) return l1;
    if (g.kind() == Kind::L && g.index() == 2) return l2;
    if (g.kind() == Kind::I && g.index() == 1) return i1;
    return Rational(0);
  }

  friend bool operator==(const WhittakerMap&, const WhittakerMap&) = default;
};

inline WhittakerMap make_psi(const Rational& l1, const Rational& l2, const Rational& i1) {
  return {l1, l2, i1};
}

/// Builds psi from explicit values on positive generators. Values on L_i (i >= 3)
/// and I_j (j >= 2) must be zero.
inline WhittakerMap make_psi(const std::map<Generator, Rational>& values) {
  WhittakerMap psi;
  for (const auto& [g, c] : values) {
    if (classify(g) != SubalgebraId::nPlus)
      throw UsageError("psi is only defined on positive generators, got " + g.str());
    if (g.kind() == Kind::L && g.index() == 1) {
      psi.l1 = c;
    } else if (g.kind() == Kind::L && g.index() == 2) {
      psi.l2 = c;
    } else if (g.kind() == Kind::I && g.index() == 1) {
      psi.i1 = c;
    } else if (!c.is_zero()) {
      throw InvalidPsiError("psi must vanish on " + g.str() + " (it lies in [n+, n+])");
    }
  }
  return psi;
}

/// Scalars by which z_0 = I_0, z_1, z_2, z_3 act.
struct CentralCharacter {
  std::array<Rational, 4> xi{};

  const Rational& operator[](int i) const { return xi[static_cast<std::size_t>(i)]; }
  friend bool operator==(const CentralCharacter&, const CentralCharacter&) = default;
};

enum class ModuleKind { Universal, Reduced };

/// Universal(psi) is M_psi; Reduced(psi, xi) is M_psi with z_i acting by xi_i.
struct ModuleSpec {
  ModuleKind kind = ModuleKind::Reduced;
  WhittakerMap psi;
  CentralCharacter xi;

  static ModuleSpec universal(const WhittakerMap& psi) {
    if (!psi.nonsingular())
      throw InvalidPsiError("the universal module requires psi(L1), psi(L2), psi(I1) all nonzero");
    return {ModuleKind::Universal, psi, {}};
  }
  static ModuleSpec reduced(const WhittakerMap& psi, const CentralCharacter& xi) {
    if (psi.identically_zero()) throw InvalidPsiError("psi must not be identically zero");
    return {ModuleKind::Reduced, psi, xi};
  }

  bool is_universal() const noexcept { return kind == ModuleKind::Universal; }
  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;
};

/// Index of the basis vector z^t L_{-lambda} I_{-mu} w. t is zero in reduced modules.
struct BasisIndex {
  std::array<int, 4> t{0, 0, 0, 0};
  Pseudopartition lambda;
  Partition mu;

  long degree() const noexcept { return lambda.size() + mu.size(); }
  int l0() const { return lambda(0); }
  int zdegree() const noexcept { return t[0] + t[1] + t[2] + t[3]; }

  /// Enumeration order: |lambda+mu|, lambda(0), lambda, mu, then |t| and t descending.
  friend std::strong_ordering operator<=>(const BasisIndex& a, const BasisIndex& b) {
    const long da = a.degree(), db = b.degree();
    const int za = a.l0(), zb = b.l0();
    const int ta = a.zdegree(), tb = b.zdegree();
    if (auto c = std::tie(da, za) <=> std::tie(db, zb); c != 0) return c;
    if (auto c = a.lambda <=> b.lambda; c != 0) return c;
    if (auto c = a.mu <=> b.mu; c != 0) return c;
    if (auto c = ta <=> tb; c != 0) return c;
    return b.t <=> a.t;  // z0 before z3
  }
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

using VectorTerms = std::map<BasisIndex, Rational>;

inline void add_term(VectorTerms& terms, const BasisIndex& idx, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.emplace(idx, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

inline void add_terms(VectorTerms& terms, const VectorTerms& other, const Rational& s) {
  if (s.is_zero()) return;
  for (const auto& [idx, c] : other) add_term(terms, idx, c * s);
}

class ModuleVector {
public:
  explicit ModuleVector(ModuleSpec spec) : spec_(std::move(spec)) {}
  ModuleVector(ModuleSpec spec, VectorTerms terms) : spec_(std::move(spec)) {
    for (auto& [idx, c] : terms) add(idx, c);
  }

  /// The cyclic Whittaker vector w (or its image in a reduced module).
  static ModuleVector cyclic(const ModuleSpec& spec) {
    ModuleVector v(spec);
    v.add(BasisIndex{}, Rational(1));
    return v;
  }
  static ModuleVector basis(const ModuleSpec& spec, const BasisIndex& idx,
                            const Rational& c = Rational(1)) {
    ModuleVector v(spec);
    v.add(idx, c);
    return v;
  }

  const ModuleSpec& spec() const noexcept { return spec_; }
  const VectorTerms& terms() const& noexcept { return terms_; }
  VectorTerms terms() && { return std::move(terms_); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const BasisIndex& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const BasisIndex& idx, const Rational& c) {
    if (!spec_.is_universal() && idx.zdegree() != 0)
      throw UsageError("reduced module vectors carry no central exponents");
    add_term(terms_, idx, c);
  }

  ModuleVector& operator+=(const ModuleVector& o) {
    require_same(o);
    add_terms(terms_, o.terms_, Rational(1));
    return *this;
  }
  ModuleVector& operator-=(const ModuleVector& o) {
    require_same(o);
    add_terms(terms_, o.terms_, Rational(-1));
    return *this;
  }
  ModuleVector& operator*=(const Rational& s) {
    if (s.is_zero()) terms_.clear();
    for (auto& [idx, c] : terms_) c *= s;
    return *this;
  }
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  friend ModuleVector operator*(const Rational& s, ModuleVector a) { return a *= s; }

  friend bool operator==(const ModuleVector&, const ModuleVector&) = default;

private:
  void require_same(const ModuleVector& o) const {
    if (!(spec_ == o.spec_)) throw UsageError("module vectors belong to different modules");
  }

  ModuleSpec spec_;
  VectorTerms terms_;
};

inline constexpr long kMinusInfinity = std::numeric_limits<long>::min();

/// Largest |lambda+mu| over the terms; kMinusInfinity for the zero vector.
inline long maxdeg(const VectorTerms& terms) {
  long d = kMinusInfinity;
  for (const auto& [idx, c] : terms) d = std::max(d, idx.degree());
  return d;
}
inline long maxdeg(const ModuleVector& v) { return maxdeg(v.terms()); }

/// Largest lambda(0) over the terms; kMinusInfinity for the zero vector.
inline long max_l0(const VectorTerms& terms) {
  long d = kMinusInfinity;
  for (const auto& [idx, c] : terms) d = std::max<long>(d, idx.l0());
  return d;
}
inline long max_l0(const ModuleVector& v) { return max_l0(v.terms()); }

/// Truncation of the infinite-dimensional search spaces.
struct Bounds {
  int degree = 3;     // cap on |lambda+mu|
  int l0 = 3;         // cap on lambda(0)
  int zdeg = 2;       // cap on |t|, universal modules only
  int gen_index = 6;  // cap on operator index for probes

  void validate() const {
    if (degree < 0 || l0 < 0 || zdeg < 0 || gen_index < 0)
      throw UsageError("bounds must be non-negative");
  }
};

/// Central exponent vectors t in N^4 with |t| <= max_total, graded, then z0-heavy first.
inline std::vector<std::array<int, 4>> central_monomials(int max_total) {
  std::vector<std::array<int, 4>> out;
  for (int total = 0; total <= max_total; ++total)
    for (int a = 0; a <= total; ++a)
      for (int b = 0; a + b <= total; ++b)
        for (int c = 0; a + b + c <= total; ++c) out.push_back({a, b, c, total - a - b - c});
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    int sx = x[0] + x[1] + x[2] + x[3], sy = y[0] + y[1] + y[2] + y[3];
    return std::tie(sx, y) < std::tie(sy, x);
  });
  return out;
}

/// Basis indices within the bounds, in BasisIndex order.
inline std::vector<BasisIndex> basis_enumerate(const ModuleSpec& spec, const Bounds& b) {
  b.validate();
  std::vector<std::array<int, 4>> ts =
      spec.is_universal() ? central_monomials(b.zdeg) : std::vector<std::array<int, 4>>{{0, 0, 0, 0}};
  std::vector<BasisIndex> out;
  for (const auto& [lambda, mu] : enumerate_pairs(b.degree, b.l0))
    for (const auto& t : ts) out.push_back(BasisIndex{t, lambda, mu});
  std::sort(out.begin(), out.end());
  return out;
}

/// Action of U(V) on a universal or reduced Whittaker module.
///
/// Results are kept in the basis z^t L_{-lambda} I_{-mu} w. A generator is pushed
/// right past the non-positive factors with g f = f g + [g, f] until it either sits
/// in canonical position or reaches w, where positive generators act by psi.
/// Central generators shift t (universal) or multiply by xi (reduced).
class WhittakerModule {
public:
  explicit WhittakerModule(ModuleSpec spec) : spec_(std::move(spec)) {}

  const ModuleSpec& spec() const noexcept { return spec_; }

  ModuleVector cyclic() const { return ModuleVector::cyclic(spec_); }
  ModuleVector vector(const BasisIndex& idx, const Rational& c = Rational(1)) const {
    return ModuleVector::basis(spec_, idx, c);
  }

  ModuleVector act(Generator g, const ModuleVector& v) const {
    check(v);
    return ModuleVector(spec_, act_terms(g, v.terms()));
  }

  ModuleVector act(const LieElement& x, const ModuleVector& v) const {
    check(v);
    VectorTerms out;
    for (const auto& [g, c] : x.terms()) add_terms(out, act_terms(g, v.terms()), c);
    return ModuleVector(spec_, std::move(out));
  }

  /// u.v, applying each monomial's factors right to left.
  ModuleVector act_uea(const UEAElement& u, const ModuleVector& v) const {
    check(v);
    VectorTerms out;
    for (const auto& [m, c] : u.terms()) {
      VectorTerms cur = v.terms();
      Word w = m.reading_order();
      for (auto it = w.rbegin(); it != w.rend() && !cur.empty(); ++it) cur = act_terms(*it, cur);
      add_terms(out, cur, c);
    }
    return ModuleVector(spec_, std::move(out));
  }

  /// g.v - psi(g) v; the dot action for g in n+.
  ModuleVector defect(Generator g, const ModuleVector& v) const {
    check(v);
    VectorTerms out = act_terms(g, v.terms());
    add_terms(out, v.terms(), -spec_.psi(g));
    return ModuleVector(spec_, std::move(out));
  }

  VectorTerms act_terms(Generator g, const VectorTerms& terms) const {
    VectorTerms out;
    for (const auto& [idx, c] : terms) {
      auto base = act_shape(g, idx.lambda, idx.mu);
      if (idx.zdegree() == 0) {
        add_terms(out, *base, c);
        continue;
      }
      for (const auto& [r, rc] : *base) {
        BasisIndex shifted = r;
        for (std::size_t s = 0; s < 4; ++s) shifted.t[s] += idx.t[s];
        add_term(out, shifted, rc * c);
      }
    }
    return out;
  }

private:
  using ShapeKey = std::tuple<Generator, Pseudopartition, Partition>;
  using Shared = std::shared_ptr<const VectorTerms>;

  void check(const ModuleVector& v) const {
    if (!(v.spec() == spec_)) throw UsageError("vector does not belong to this module");
  }

  /// g . L_{-lambda} I_{-mu} w with t = 0.
  Shared act_shape(Generator g, const Pseudopartition& lambda, const Partition& mu) const {
    ShapeKey key{g, lambda, mu};
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    auto result = std::make_shared<const VectorTerms>(compute_shape(g, lambda, mu));
    std::lock_guard lock(mutex_);
    return cache_.emplace(std::move(key), std::move(result)).first->second;
  }

  VectorTerms compute_shape(Generator g, const Pseudopartition& lambda, const Partition& mu) const {
    VectorTerms out;
    if (int slot = g.central_slot(); slot >= 0) {
      BasisIndex idx{{0, 0, 0, 0}, lambda, mu};
      if (spec_.is_universal()) {
        idx.t[static_cast<std::size_t>(slot)] = 1;
        add_term(out, idx, Rational(1));
      } else {
        add_term(out, idx, spec_.xi[slot]);
      }
      return out;
    }

    std::optional<Generator> first;
    if (!lambda.empty()) {
      first = Generator::L(-lambda.largest());
    } else if (!mu.empty()) {
      first = Generator::I(-mu.largest());
    }

    const bool positive = g.index() > 0;
    if (!first && positive) {
      add_term(out, BasisIndex{{0, 0, 0, 0}, lambda, mu}, spec_.psi(g));
      return out;
    }
    if (!positive && (!first || g <= *first)) {
      BasisIndex idx{{0, 0, 0, 0}, lambda, mu};
      if (g.kind() == Kind::L) {
        idx.lambda.add(-g.index());
      } else {
        idx.mu.add(-g.index());
      }
      add_term(out, idx, Rational(1));
      return out;
    }

    // g f rest.w = f (g rest.w) + [g, f] rest.w
    Pseudopartition rest_lambda = lambda;
    Partition rest_mu = mu;
    if (first->kind() == Kind::L) {
      rest_lambda.remove_one(-first->index());
    } else {
      rest_mu.remove_one(-first->index());
    }
    VectorTerms moved = *act_shape(g, rest_lambda, rest_mu);
    out = act_terms(*first, moved);
    const LieElement comm = bracket(g, *first);
    for (const auto& [h, c] : comm.terms()) add_terms(out, *act_shape(h, rest_lambda, rest_mu), c);
    return out;
  }

  ModuleSpec spec_;
  mutable std::mutex mutex_;
  mutable std::map<ShapeKey, Shared> cache_;
};

/// Image of a universal-module vector under M_psi -> L_{psi,xi}.
inline ModuleVector evaluate_central(const ModuleVector& v, const CentralCharacter& xi) {
  if (!v.spec().is_universal()) throw UsageError("evaluate_central expects a universal-module vector");
  ModuleVector out(ModuleSpec::reduced(v.spec().psi, xi));
  for (const auto& [idx, c] : v.terms()) {
    Rational s = c;
    for (int i = 0; i < 4; ++i)
      for (int r = 0; r < idx.t[static_cast<std::size_t>(i)]; ++r) s *= xi[i];
    out.add(BasisIndex{{0, 0, 0, 0}, idx.lambda, idx.mu}, s);
  }
  return out;
}

}  // namespace hv

#endif  // HV_MODULES_HPP
