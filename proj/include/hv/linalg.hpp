#ifndef HV_LINALG_HPP
#define HV_LINALG_HPP

#include <gmpxx.h>

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hv/rational.hpp"

namespace hv {

/// Incremental fraction-free row echelon form over sparse integer vectors.
///
/// Every stored row carries a tag recording it as an integer combination of the
/// inserted vectors, so dependencies come out as explicit relations. Rows are kept
/// primitive (content divided out) to bound coefficient growth.
template <class Key>
class SparseEliminator {
public:
  using Vector = std::map<Key, Rational>;
  using Relation = std::map<std::size_t, Rational>;

  /// Inserts vector number `id`. Returns nullopt when it is independent of the
  /// vectors inserted so far; otherwise a relation sum_j c_j v_j = 0 with c_id = 1.
  std::optional<Relation> insert(const Vector& v, std::size_t id) {
    Row row = to_row(v, id);
    reduce(row);
    if (!row.vec.empty()) {
      const Key lead = row.vec.begin()->first;
      pivots_.emplace(lead, std::move(row));
      return std::nullopt;
    }
    Relation rel;
    const mpz_class own = row.tag.at(id);
    for (const auto& [j, c] : row.tag) rel.emplace(j, Rational(mpq_class(c, own)));
    return rel;
  }

  /// Coefficients c_j with v = sum_j c_j v_j when v lies in the span, else nullopt.
  std::optional<Relation> express(const Vector& v) const {
    Row row = to_row(v, kTarget);
    reduce(row);
    if (!row.vec.empty()) return std::nullopt;
    const mpz_class own = row.tag.at(kTarget);
    Relation rel;
    for (const auto& [j, c] : row.tag)
      if (j != kTarget) rel.emplace(j, Rational(mpq_class(-c, own)));
    return rel;
  }

  std::size_t rank() const noexcept { return pivots_.size(); }

private:
  static constexpr std::size_t kTarget = std::numeric_limits<std::size_t>::max();

  struct Row {
    std::map<Key, mpz_class> vec;
    std::map<std::size_t, mpz_class> tag;
  };

  static Row to_row(const Vector& v, std::size_t id) {
    mpz_class scale = 1;
    for (const auto& [k, c] : v) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.denominator().get_mpz_t());
    Row row;
    for (const auto& [k, c] : v) row.vec.emplace(k, c.numerator() * (scale / c.denominator()));
    row.tag.emplace(id, scale);
    return row;
  }

  template <class K>
  static void axpy(std::map<K, mpz_class>& x, const mpz_class& p, const std::map<K, mpz_class>& y,
                   const mpz_class& a) {
    // x <- p*x - a*y
    if (p != 1)
      for (auto& [k, c] : x) c *= p;
    for (const auto& [k, c] : y) {
      auto [it, inserted] = x.emplace(k, -a * c);
      if (!inserted) {
        it->second -= a * c;
        if (it->second == 0) x.erase(it);
      }
    }
  }

  static void make_primitive(Row& row) {
    mpz_class g = 0;
    for (const auto& [k, c] : row.vec) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    for (const auto& [k, c] : row.tag) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g <= 1) return;
    for (auto& [k, c] : row.vec) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    for (auto& [k, c] : row.tag) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }

  void reduce(Row& row) const {
    while (!row.vec.empty()) {
      auto lead = row.vec.begin();
      auto piv = pivots_.find(lead->first);
      if (piv == pivots_.end()) return;
      const mpz_class p = piv->second.vec.begin()->second;
      const mpz_class a = lead->second;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), a.get_mpz_t());
      const mpz_class ps = p / g, as = a / g;
      axpy(row.vec, ps, piv->second.vec, as);
      axpy(row.tag, ps, piv->second.tag, as);
      make_primitive(row);
    }
  }

  std::map<Key, Row> pivots_;
};

/// Rewrites kernel relations so each is zero at every other relation's own id.
/// `own[i]` is the id at which relation i was found (its coefficient there is 1).
inline void canonicalize_relations(std::vector<std::map<std::size_t, Rational>>& rels,
                                   const std::vector<std::size_t>& own) {
  for (std::size_t j = 0; j < rels.size(); ++j) {
    for (std::size_t i = 0; i < rels.size(); ++i) {
      if (i == j) continue;
      auto it = rels[i].find(own[j]);
      if (it == rels[i].end()) continue;
      const Rational c = it->second;
      for (const auto& [k, v] : rels[j]) {
        auto [e, inserted] = rels[i].emplace(k, -c * v);
        if (!inserted) {
          e->second -= c * v;
          if (e->second.is_zero()) rels[i].erase(e);
        }
      }
    }
  }
}

}  // namespace hv

#endif  // HV_LINALG_HPP
