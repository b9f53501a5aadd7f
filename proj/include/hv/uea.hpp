#ifndef HV_UEA_HPP
#define HV_UEA_HPP

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hv/algebra.hpp"
#include "hv/partitions.hpp"
#include "hv/rational.hpp"

namespace hv {

/// Unordered product of generators, before straightening.
using Word = std::vector<Generator>;

/// Ordered PBW monomial z^t * prod L_k^{e_k} * prod I_k^{f_k}, with the L block
/// and the I block each read in ascending index. z_0 is I_0.
struct PBWMonomial {
  std::array<int, 4> t{0, 0, 0, 0};
  std::map<int, int> l_exp;
  std::map<int, int> i_exp;  // never holds key 0

  friend auto operator<=>(const PBWMonomial&, const PBWMonomial&) = default;
  friend bool operator==(const PBWMonomial&, const PBWMonomial&) = default;

  bool is_identity() const noexcept {
    return l_exp.empty() && i_exp.empty() && t == std::array<int, 4>{0, 0, 0, 0};
  }

  /// Multiplies in one more copy of g at its canonical position.
  void absorb(Generator g, int times = 1) {
    if (int slot = g.central_slot(); slot >= 0) {
      t[slot] += times;
    } else if (g.kind() == Kind::L) {
      l_exp[g.index()] += times;
    } else {
      i_exp[g.index()] += times;
    }
  }

  /// Removes one copy of the (non-central) generator g.
  void drop(Generator g) {
    auto& m = g.kind() == Kind::L ? l_exp : i_exp;
    auto it = m.find(g.index());
    if (--it->second == 0) m.erase(it);
  }

  /// First non-central factor in reading order.
  std::optional<Generator> leading_factor() const {
    if (!l_exp.empty()) return Generator::L(l_exp.begin()->first);
    if (!i_exp.empty()) return Generator::I(i_exp.begin()->first);
    return std::nullopt;
  }

  /// Factors in reading order: z_0..z_3, then L ascending, then I ascending.
  Word reading_order() const {
    Word w;
    for (int s = 0; s < 4; ++s)
      for (int r = 0; r < t[s]; ++r) w.push_back(s == 0 ? Generator::z0() : Generator::Z(s));
    for (const auto& [k, e] : l_exp)
      for (int r = 0; r < e; ++r) w.push_back(Generator::L(k));
    for (const auto& [k, e] : i_exp)
      for (int r = 0; r < e; ++r) w.push_back(Generator::I(k));
    return w;
  }

  long degree() const noexcept {
    long d = t[0] + t[1] + t[2] + t[3];
    for (const auto& [k, e] : l_exp) d += e;
    for (const auto& [k, e] : i_exp) d += e;
    return d;
  }
};

inline long weight(const PBWMonomial& m) noexcept {
  long w = 0;
  for (const auto& [k, e] : m.l_exp) w += static_cast<long>(k) * e;
  for (const auto& [k, e] : m.i_exp) w += static_cast<long>(k) * e;
  return w;
}

/// The b^- monomial L_{-lambda} I_{-mu}.
inline PBWMonomial to_word(const Pseudopartition& lambda, const Partition& mu) {
  PBWMonomial m;
  for (const auto& [k, e] : lambda.mult()) m.l_exp[-k] = e;
  for (const auto& [k, e] : mu.mult()) m.i_exp[-k] = e;
  return m;
}

/// Element of U(V): sparse combination of PBW monomials.
class UEAElement {
public:
  using Terms = std::map<PBWMonomial, Rational>;

  UEAElement() = default;
  UEAElement(const PBWMonomial& m, const Rational& c = Rational(1)) { add(m, c); }  // NOLINT
  static UEAElement one() { return UEAElement(PBWMonomial{}); }
  static UEAElement from_lie(const LieElement& x) {
    UEAElement e;
    for (const auto& [g, c] : x.terms()) {
      PBWMonomial m;
      m.absorb(g);
      e.add(m, c);
    }
    return e;
  }

  const Terms& terms() const& noexcept { return terms_; }
  Terms terms() && { return std::move(terms_); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const PBWMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const PBWMonomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  void add(const UEAElement& o, const Rational& s) {
    if (s.is_zero()) return;
    for (const auto& [m, c] : o.terms_) add(m, c * s);
  }

  UEAElement& operator+=(const UEAElement& o) { add(o, Rational(1)); return *this; }
  UEAElement& operator-=(const UEAElement& o) { add(o, Rational(-1)); return *this; }
  friend UEAElement operator+(UEAElement a, const UEAElement& b) { return a += b; }
  friend UEAElement operator-(UEAElement a, const UEAElement& b) { return a -= b; }
  friend UEAElement operator*(const Rational& s, const UEAElement& a) {
    UEAElement out;
    out.add(a, s);
    return out;
  }

  friend bool operator==(const UEAElement&, const UEAElement&) = default;

private:
  Terms terms_;
};

inline bool is_in_b_minus(const UEAElement& e) {
  for (const auto& [m, c] : e.terms()) {
    if (!m.l_exp.empty() && m.l_exp.rbegin()->first > 0) return false;
    if (!m.i_exp.empty() && m.i_exp.rbegin()->first > 0) return false;
  }
  return true;
}

namespace detail {

inline UEAElement left_mul(Generator g, const UEAElement& e);

/// g * m for a PBW monomial m, straightened. Memoized per thread.
inline const UEAElement& left_mul(Generator g, const PBWMonomial& m) {
  thread_local std::map<std::pair<Generator, PBWMonomial>, UEAElement> cache;
  auto key = std::make_pair(g, m);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  UEAElement out;
  auto first = m.leading_factor();
  if (g.is_central() || !first || g <= *first) {
    PBWMonomial p = m;
    p.absorb(g);
    out.add(p, Rational(1));
  } else {
    // g f rest = f (g rest) + [g, f] rest
    PBWMonomial rest = m;
    rest.drop(*first);
    out = left_mul(*first, left_mul(g, UEAElement(rest)));
    const LieElement comm = bracket(g, *first);
    for (const auto& [h, c] : comm.terms()) out.add(left_mul(h, rest), c);
  }
  return cache.emplace(std::move(key), std::move(out)).first->second;
}

inline UEAElement left_mul(Generator g, const UEAElement& e) {
  UEAElement out;
  for (const auto& [m, c] : e.terms()) out.add(left_mul(g, m), c);
  return out;
}

inline UEAElement sorted_word_monomial(const Word& w) {
  PBWMonomial m;
  for (Generator g : w) m.absorb(g);
  return UEAElement(m);
}

}  // namespace detail

enum class Strategy {
  /// Insert factors right to left into an already ordered product.
  Insertion,
  /// Rewrite the leftmost out-of-order adjacent pair of a raw word.
  LeftmostSwap,
  /// Rewrite the rightmost out-of-order adjacent pair of a raw word.
  RightmostSwap,
};

/// Straightens a word into the PBW basis.
inline UEAElement normal_form(const Word& word, Strategy strategy = Strategy::Insertion) {
  if (strategy == Strategy::Insertion) {
    UEAElement e = UEAElement::one();
    for (auto it = word.rbegin(); it != word.rend(); ++it) e = detail::left_mul(*it, e);
    return e;
  }

  UEAElement out;
  std::map<Word, Rational> pending;
  pending.emplace(word, Rational(1));
  auto push = [&pending](Word w, const Rational& c) {
    auto [it, inserted] = pending.emplace(std::move(w), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) pending.erase(it);
    }
  };
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& w = node.key();
    const Rational& c = node.mapped();
    std::optional<std::size_t> pos;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      // centrals commute freely; only their relative order needs fixing
      if (w[i + 1] < w[i]) {
        pos = i;
        if (strategy == Strategy::LeftmostSwap) break;
      }
    }
    if (!pos) {
      out.add(detail::sorted_word_monomial(w), c);
      continue;
    }
    const std::size_t i = *pos;
    Word swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    push(std::move(swapped), c);
    const LieElement comm = bracket(w[i], w[i + 1]);
    for (const auto& [h, b] : comm.terms()) {
      Word shorter(w.begin(), w.begin() + static_cast<long>(i));
      shorter.push_back(h);
      shorter.insert(shorter.end(), w.begin() + static_cast<long>(i) + 2, w.end());
      push(std::move(shorter), c * b);
    }
  }
  return out;
}

inline UEAElement multiply(const UEAElement& a, const UEAElement& b) {
  UEAElement out;
  for (const auto& [m, c] : a.terms()) {
    UEAElement e = b;
    Word w = m.reading_order();
    for (auto it = w.rbegin(); it != w.rend(); ++it) e = detail::left_mul(*it, e);
    out.add(e, c);
  }
  return out;
}

}  // namespace hv

#endif  // HV_UEA_HPP
