#ifndef HV_ALGEBRA_HPP
#define HV_ALGEBRA_HPP

#include <compare>
#include <map>
#include <string>
#include <utility>

#include "hv/errors.hpp"
#include "hv/rational.hpp"

namespace hv {

enum class Kind { L, I, Z };

/// Basis symbol of the twisted Heisenberg-Virasoro algebra: L_k, I_k or z_1..z_3.
///
/// I_0 is kept as an I-kind generator; it is central and is identified with z_0
/// once products are written in PBW form.
class Generator {
public:
  static Generator L(int k) { return Generator(Kind::L, k); }
  static Generator I(int k) { return Generator(Kind::I, k); }
  static Generator Z(int i) {
    if (i < 1 || i > 3) throw UsageError("central generator index must be 1, 2 or 3");
    return Generator(Kind::Z, i);
  }
  /// z_0, which is I_0.
  static Generator z0() { return I(0); }

  Kind kind() const noexcept { return kind_; }
  int index() const noexcept { return index_; }

  bool is_central() const noexcept { return kind_ == Kind::Z || (kind_ == Kind::I && index_ == 0); }
  /// Position in z_0..z_3 for central generators, -1 otherwise.
  int central_slot() const noexcept {
    if (kind_ == Kind::Z) return index_;
    if (kind_ == Kind::I && index_ == 0) return 0;
    return -1;
  }

  /// Canonical order: z1 < z2 < z3 < I0 < L (ascending index) < I (ascending index).
  friend std::strong_ordering operator<=>(const Generator& a, const Generator& b) {
    return a.order_key() <=> b.order_key();
  }
  friend bool operator==(const Generator& a, const Generator& b) = default;

  std::string str() const {
    switch (kind_) {
      case Kind::L: return "L[" + std::to_string(index_) + "]";
      case Kind::I: return "I[" + std::to_string(index_) + "]";
      case Kind::Z: return "z" + std::to_string(index_);
    }
    return {};
  }

private:
  Generator(Kind kind, int index) : kind_(kind), index_(index) {}

  std::pair<int, int> order_key() const noexcept {
    if (kind_ == Kind::Z) return {0, index_};
    if (kind_ == Kind::I && index_ == 0) return {0, 4};
    return {kind_ == Kind::L ? 1 : 2, index_};
  }

  Kind kind_;
  int index_;
};

/// Finite linear combination of generators with exact coefficients.
class LieElement {
public:
  using Terms = std::map<Generator, Rational>;

  LieElement() = default;
  LieElement(Generator g) { terms_.emplace(g, Rational(1)); }  // NOLINT

  static LieElement term(const Rational& c, Generator g) {
    LieElement e;
    e.add(g, c);
    return e;
  }

  const Terms& terms() const& noexcept { return terms_; }
  Terms terms() && { return std::move(terms_); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(Generator g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(Generator g, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(g, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  LieElement& operator+=(const LieElement& o) {
    for (const auto& [g, c] : o.terms_) add(g, c);
    return *this;
  }
  LieElement& operator-=(const LieElement& o) {
    for (const auto& [g, c] : o.terms_) add(g, -c);
    return *this;
  }
  LieElement& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [g, c] : terms_) c *= s;
    return *this;
  }

  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const Rational& s, LieElement a) { return a *= s; }
  LieElement operator-() const { return Rational(-1) * *this; }

  friend bool operator==(const LieElement&, const LieElement&) = default;

private:
  Terms terms_;
};

enum class SubalgebraId { nPlus, nMinus, cartan };

/// Eigenvalue of ad L_0 on the generator.
inline int ad_weight(Generator g) noexcept { return g.kind() == Kind::Z ? 0 : g.index(); }

inline SubalgebraId classify(Generator g) noexcept {
  if (g.kind() == Kind::Z || g.index() == 0) return SubalgebraId::cartan;
  return g.index() > 0 ? SubalgebraId::nPlus : SubalgebraId::nMinus;
}

inline LieElement bracket(Generator x, Generator y) {
  LieElement out;
  if (x.kind() == Kind::Z || y.kind() == Kind::Z) return out;
  const int k = x.index();
  const int j = y.index();
  const bool opposite = (j == -k);
  if (x.kind() == Kind::L && y.kind() == Kind::L) {
    out.add(Generator::L(k + j), Rational(j - k));
    if (opposite) out.add(Generator::Z(1), Rational(static_cast<long>(k) * k * k - k, 12));
  } else if (x.kind() == Kind::L && y.kind() == Kind::I) {
    out.add(Generator::I(k + j), Rational(j));
    if (opposite) out.add(Generator::Z(2), Rational(static_cast<long>(k) * k - k));
  } else if (x.kind() == Kind::I && y.kind() == Kind::L) {
    // [I_k, L_j] = -[L_j, I_k]
    out.add(Generator::I(k + j), Rational(-k));
    if (opposite) out.add(Generator::Z(2), Rational(-(static_cast<long>(j) * j - j)));
  } else {
    if (opposite) out.add(Generator::Z(3), Rational(k));
  }
  return out;
}

inline LieElement bracket(const LieElement& x, const LieElement& y) {
  LieElement out;
  for (const auto& [g, a] : x.terms())
    for (const auto& [h, b] : y.terms()) out += (a * b) * bracket(g, h);
  return out;
}

/// Projection onto the centreless quotient: drops z_1, z_2, z_3 (I_0 stays).
inline LieElement reduce_central(const LieElement& x) {
  LieElement out;
  for (const auto& [g, c] : x.terms())
    if (g.kind() != Kind::Z) out.add(g, c);
  return out;
}

/// Bracket of the centreless quotient algebra.
inline LieElement bracket_reduced(const LieElement& x, const LieElement& y) {
  return reduce_central(bracket(x, y));
}

}  // namespace hv

#endif  // HV_ALGEBRA_HPP
