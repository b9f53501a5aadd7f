#ifndef HV_SOLVER_HPP
#define HV_SOLVER_HPP

#include <algorithm>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hv/algebra.hpp"
#include "hv/errors.hpp"
#include "hv/linalg.hpp"
#include "hv/modules.hpp"
#include "hv/syntax.hpp"

namespace hv {

/// A computation contradicted a statement it was checking (e.g. descent hit a
/// nonzero Whittaker vector that is not a multiple of w).
class TheoremViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The generators whose defects decide the Whittaker property; they generate n+.
inline std::vector<Generator> whittaker_test_generators() {
  return {Generator::L(1), Generator::L(2), Generator::I(1)};
}

/// Basis of {v in span(basis within b) : defect(g, v) = 0 for g = L1, L2, I1}.
/// Defects are computed exactly; only the search space is truncated.
inline std::vector<ModuleVector> whittaker_solve(const ModuleSpec& spec, const Bounds& b) {
  b.validate();
  WhittakerModule module(spec);
  const std::vector<BasisIndex> columns = basis_enumerate(spec, b);
  const std::vector<Generator> gens = whittaker_test_generators();

  using RowKey = std::pair<int, BasisIndex>;
  SparseEliminator<RowKey> elim;
  std::vector<std::map<std::size_t, Rational>> relations;
  std::vector<std::size_t> own;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    std::map<RowKey, Rational> col;
    const ModuleVector v = module.vector(columns[j]);
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const ModuleVector d = module.defect(gens[g], v);
      for (const auto& [idx, c] : d.terms()) col.emplace(RowKey{static_cast<int>(g), idx}, c);
    }
    if (auto rel = elim.insert(col, j)) {
      relations.push_back(std::move(*rel));
      own.push_back(j);
    }
  }
  canonicalize_relations(relations, own);

  std::vector<ModuleVector> out;
  for (const auto& rel : relations) {
    ModuleVector v(spec);
    for (const auto& [j, c] : rel) v.add(columns[j], c);
    out.push_back(std::move(v));
  }
  return out;
}

struct DescentResult {
  std::vector<Generator> trace;  // defect operators, in application order
  Rational coefficient;          // the final vector is coefficient * w
};

namespace detail {

using Measure = std::tuple<long, long, std::size_t>;

/// (maxdeg, largest L_0 exponent among top-degree terms, #terms). Lower-degree
/// terms may gain L_0 powers when a top-degree term is reduced.
inline Measure descent_measure(const ModuleVector& v) {
  const long top = maxdeg(v);
  long l0 = kMinusInfinity;
  for (const auto& [idx, c] : v.terms())
    if (idx.degree() == top) l0 = std::max<long>(l0, idx.l0());
  return {top, l0, v.terms().size()};
}

inline bool is_multiple_of_cyclic(const ModuleVector& v) {
  return v.terms().size() == 1 && v.terms().begin()->first == BasisIndex{};
}

/// Operator suggested by the case analysis on the top-degree terms.
inline Generator recipe_operator(const ModuleVector& v) {
  const long top = maxdeg(v);
  if (top == 0) return Generator::I(1);
  int k = std::numeric_limits<int>::max();
  for (const auto& [idx, c] : v.terms()) {
    if (idx.degree() != top) continue;
    for (const auto& [part, m] : idx.lambda.mult())
      if (part > 0) k = std::min(k, part);
    if (!idx.mu.empty()) k = std::min(k, idx.mu.smallest());
  }
  for (const auto& [idx, c] : v.terms())
    if (idx.degree() == top && idx.lambda(k) != 0) return Generator::I(k + 1);
  return Generator::L(k + 1);
}

}  // namespace detail

/// Drives a nonzero vector of a reduced module down to a nonzero multiple of w by
/// dot-action operators. Each step must strictly lower detail::descent_measure.
inline DescentResult descend(const WhittakerModule& module, const ModuleVector& start) {
  const ModuleSpec& spec = module.spec();
  if (spec.is_universal()) throw UsageError("descend works in a reduced module");
  if (spec.psi.i1.is_zero()) throw InvalidPsiError("descend requires psi(I1) != 0");
  if (start.is_zero()) throw UsageError("descend needs a nonzero vector");

  DescentResult result;
  ModuleVector v = start;
  while (!detail::is_multiple_of_cyclic(v)) {
    const auto measure = detail::descent_measure(v);
    const long top = maxdeg(v);

    std::vector<Generator> candidates{detail::recipe_operator(v)};
    for (int n = 1; n <= top + 2; ++n) {
      candidates.push_back(Generator::I(n));
      candidates.push_back(Generator::L(n));
    }

    bool stepped = false;
    bool all_zero = true;
    for (Generator g : candidates) {
      ModuleVector next = module.defect(g, v);
      if (next.is_zero()) continue;
      all_zero = false;
      if (detail::descent_measure(next) < measure) {
        result.trace.push_back(g);
        v = std::move(next);
        stepped = true;
        break;
      }
    }
    if (stepped) continue;
    if (all_zero)
      throw TheoremViolation("reached a Whittaker vector that is not a multiple of w: " +
                             format_element(v));
    throw BoundExhausted("descent stuck at " + format_element(v));
  }
  result.coefficient = v.terms().begin()->second;
  return result;
}

/// Smallest K <= cap with (g.)^K v = 0 under the dot action.
inline int nilpotency_index(const WhittakerModule& module, Generator g, const ModuleVector& v,
                            int cap) {
  if (classify(g) != SubalgebraId::nPlus) throw UsageError("nilpotency needs a positive generator");
  if (cap < 1) throw UsageError("nilpotency cap must be at least 1");
  ModuleVector cur = v;
  for (int k = 0; k <= cap; ++k) {
    if (cur.is_zero()) return k;
    if (k == cap) break;
    cur = module.defect(g, cur);
  }
  throw BoundExhausted("nilpotency cap " + std::to_string(cap) + " exhausted for " + g.str());
}

/// Non-central generators with |index| <= max_index.
inline std::vector<Generator> probe_generators(int max_index) {
  std::vector<Generator> out;
  for (int n = -max_index; n <= max_index; ++n) {
    out.push_back(Generator::L(n));
    if (n != 0) out.push_back(Generator::I(n));
  }
  return out;
}

struct MembershipResult {
  bool member = false;
  /// target = sum c_i * span_vector_i when member.
  std::vector<std::pair<Rational, ModuleVector>> witness;
  std::size_t span_dimension = 0;
};

/// Bounded probe: saturates span(gens) under every generator with |index| <=
/// b.gen_index. A product that leaves the degree or L_0 cap ends its branch.
inline MembershipResult submodule_membership(const WhittakerModule& module, const ModuleVector& target,
                                             const std::vector<ModuleVector>& gens, const Bounds& b) {
  b.validate();
  if (gens.empty()) throw UsageError("submodule_membership needs at least one generator");
  SparseEliminator<BasisIndex> elim;
  std::vector<ModuleVector> span;
  std::deque<std::size_t> queue;

  auto offer = [&](const ModuleVector& v) {
    if (v.is_zero()) return;
    if (!elim.insert(v.terms(), span.size())) {
      queue.push_back(span.size());
      span.push_back(v);
    }
  };
  for (const auto& g : gens) offer(g);
  const std::vector<Generator> ops = probe_generators(b.gen_index);
  while (!queue.empty()) {
    const ModuleVector u = span[queue.front()];
    queue.pop_front();
    for (Generator g : ops) {
      ModuleVector r = module.act(g, u);
      if (r.is_zero() || maxdeg(r) > b.degree || max_l0(r) > b.l0) continue;
      offer(r);
    }
  }

  MembershipResult out;
  out.span_dimension = span.size();
  if (auto rel = elim.express(target.terms())) {
    out.member = true;
    for (const auto& [j, c] : *rel) out.witness.emplace_back(c, span[j]);
  }
  return out;
}

/// Dimension of U(n+) . v under the dot action, computed by closing span{v} under
/// the defects of L_n, I_n for 1 <= n <= max_n. Throws if the closure leaves the
/// confinement bound max(|lambda+mu| + lambda(0)) of v.
inline std::size_t dot_orbit_dimension(const WhittakerModule& module, const ModuleVector& v,
                                       int max_n) {
  auto confinement = [](const ModuleVector& x) {
    long m = kMinusInfinity;
    for (const auto& [idx, c] : x.terms()) m = std::max<long>(m, idx.degree() + idx.l0());
    return m;
  };
  const long bound = confinement(v);
  SparseEliminator<BasisIndex> elim;
  std::vector<ModuleVector> span;
  std::deque<std::size_t> queue;
  auto offer = [&](const ModuleVector& x) {
    if (x.is_zero()) return;
    if (confinement(x) > bound) throw TheoremViolation("dot action left the confinement bound");
    if (!elim.insert(x.terms(), span.size())) {
      queue.push_back(span.size());
      span.push_back(x);
    }
  };
  offer(v);
  while (!queue.empty()) {
    const ModuleVector u = span[queue.front()];
    queue.pop_front();
    for (int n = 1; n <= max_n; ++n) {
      offer(module.defect(Generator::L(n), u));
      offer(module.defect(Generator::I(n), u));
    }
  }
  return span.size();
}

struct Failure {
  std::string parameters;
  std::string expected;
  std::string got;
};

struct Report {
  std::string lemma_id;
  std::size_t instances = 0;
  std::vector<Failure> failures;

  bool passed() const noexcept { return failures.empty(); }
};

/// Parameter ranges for verify_lemma.
struct LemmaRanges {
  int a_max = 3;   // exponent a in L_{-k}^a
  int k_max = 3;   // index k
  int m_max = 6;   // operator index m (or n)
  int degree = 4;  // cap on |lambda+mu|
  int l0 = 2;      // cap on lambda(0)
};

inline const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids{"3.1",   "3.2i",   "3.2ii", "3.2iii", "3.3i",
                                            "3.3ii", "3.3iii", "4.2i",  "4.2ii"};
  return ids;
}

namespace detail {

inline std::string describe(const BasisIndex& idx) {
  return "lambda=" + idx.lambda.str() + " mu=" + idx.mu.str();
}

inline std::string bound_text(long d) {
  return d == kMinusInfinity ? std::string("-inf") : std::to_string(d);
}

class LemmaChecker {
public:
  LemmaChecker(const WhittakerMap& psi, const LemmaRanges& r)
      : module_(ModuleSpec::universal(psi)), psi_(psi), r_(r) {}

  Report run(const std::string& id) {
    report_.lemma_id = id;
    if (id == "3.1") lemma_3_1();
    else if (id == "3.2i") degree_bound(Kind::I, 1);
    else if (id == "3.2ii") lemma_3_2_ii();
    else if (id == "3.2iii") lemma_3_2_iii();
    else if (id == "3.3i") degree_bound(Kind::L, 2);
    else if (id == "3.3ii") lemma_3_3_ii();
    else if (id == "3.3iii") lemma_3_3_iii();
    else if (id == "4.2i") lemma_4_2_i();
    else if (id == "4.2ii") lemma_4_2_ii();
    else throw UsageError("unknown lemma id '" + id + "'");
    return report_;
  }

private:
  ModuleVector lhs(Generator g, const BasisIndex& idx) const {
    return module_.defect(g, module_.vector(idx));
  }

  void fail(std::string params, std::string expected, std::string got) {
    report_.failures.push_back({std::move(params), std::move(expected), std::move(got)});
  }

  /// Checks the leading coefficient and returns the residual (lhs minus leading term).
  ModuleVector split_leading(const std::string& params, const ModuleVector& v,
                             const BasisIndex& lead, const Rational& expected) {
    const Rational got = v.coefficient(lead);
    if (got != expected)
      fail(params, "coefficient " + expected.str() + " at " + format_index(lead),
           "coefficient " + got.str() + " in " + format_element(v));
    ModuleVector residual = v;
    residual.add(lead, -got);
    return residual;
  }

  /// Every residual term has degree < deg_bound, or (with l0_bound set) lambda(0) < l0_bound.
  void check_residual(const std::string& params, const ModuleVector& residual, long deg_bound,
                      std::optional<long> l0_bound) {
    for (const auto& [idx, c] : residual.terms()) {
      if (idx.degree() < deg_bound) continue;
      if (l0_bound && idx.l0() < *l0_bound) continue;
      std::string expected = "residual degree < " + std::to_string(deg_bound);
      if (l0_bound) expected += " or lambda(0) < " + std::to_string(*l0_bound);
      fail(params, expected, "term " + format_index(idx) + " in " + format_element(residual));
      return;
    }
  }

  void lemma_3_1() {
    for (int a = 1; a <= r_.a_max; ++a) {
      for (int k = 0; k <= r_.k_max; ++k) {
        ++report_.instances;
        BasisIndex idx;
        idx.lambda.add(k, a);
        BasisIndex lead;
        lead.lambda.add(k, a - 1);
        const std::string params = "a=" + std::to_string(a) + " k=" + std::to_string(k);
        const ModuleVector v = lhs(Generator::L(k + 2), idx);
        const ModuleVector res =
            split_leading(params, v, lead, Rational(-a * (2 * k + 2)) * psi_.l2);
        if (k > 0) {
          if (!(maxdeg(res) < static_cast<long>(k) * (a - 1)))
            fail(params, "maxdeg(v) < " + std::to_string(k * (a - 1)), bound_text(maxdeg(res)));
        } else if (!(max_l0(res) < a - 1)) {
          fail(params, "max_l0(v) < " + std::to_string(a - 1), bound_text(max_l0(res)));
        }
      }
    }
  }

  /// maxdeg([E_m, L_{-lambda} I_{-mu}] w) <= |lambda+mu| - m + slack.
  void degree_bound(Kind kind, int slack) {
    for (const auto& [lambda, mu] : enumerate_pairs(r_.degree, r_.l0)) {
      const BasisIndex idx{{0, 0, 0, 0}, lambda, mu};
      for (int m = 1; m <= r_.m_max; ++m) {
        ++report_.instances;
        const Generator g = kind == Kind::L ? Generator::L(m) : Generator::I(m);
        const long got = maxdeg(lhs(g, idx));
        const long bound = idx.degree() - m + slack;
        if (got > bound)
          fail(describe(idx) + " m=" + std::to_string(m), "maxdeg <= " + std::to_string(bound),
               bound_text(got));
      }
    }
  }

  void lemma_3_2_ii() {
    for (const auto& [lambda, mu] : enumerate_pairs(r_.degree, r_.l0)) {
      if (lambda.mult().size() != 1) continue;
      const int k = lambda.smallest();
      const int a = lambda(k);
      if (k > r_.k_max || a > r_.a_max) continue;
      ++report_.instances;
      const BasisIndex idx{{0, 0, 0, 0}, lambda, mu};
      const BasisIndex lead{{0, 0, 0, 0}, lambda.without_one(k), mu};
      const std::string params = describe(idx) + " k=" + std::to_string(k) + " a=" + std::to_string(a);
      const ModuleVector res = split_leading(params, lhs(Generator::I(k + 1), idx), lead,
                                             Rational(-a * (k + 1)) * psi_.i1);
      if (k > 0) {
        check_residual(params, res, mu.size() + static_cast<long>(k) * (a - 1), std::nullopt);
      } else {
        check_residual(params, res, mu.size(), a - 1);
      }
    }
  }

  void lemma_3_2_iii() {
    for (const auto& [lambda, mu] : enumerate_pairs(r_.degree, r_.l0)) {
      if (lambda.empty()) continue;
      const int k = lambda.smallest();
      ++report_.instances;
      const BasisIndex idx{{0, 0, 0, 0}, lambda, mu};
      const BasisIndex lead{{0, 0, 0, 0}, lambda.without_one(k), mu};
      const std::string params = describe(idx) + " k=" + std::to_string(k);
      const ModuleVector res = split_leading(params, lhs(Generator::I(k + 1), idx), lead,
                                             Rational(-(k + 1) * lambda(k)) * psi_.i1);
      if (k > 0) {
        check_residual(params, res, idx.degree() - k, std::nullopt);
      } else {
        check_residual(params, res, idx.degree(), lambda(0) - 1);
      }
    }
  }

  void lemma_3_3_ii() {
    for (const auto& [lambda, mu] : enumerate_pairs(r_.degree, r_.l0)) {
      const BasisIndex idx{{0, 0, 0, 0}, lambda, mu};
      for (int k = 0; k < r_.m_max; ++k) {
        bool hyp = true;
        for (int i = 0; i <= k; ++i) hyp = hyp && lambda(i) == 0 && mu(i) == 0;
        if (!hyp) continue;
        ++report_.instances;
        const long got = maxdeg(lhs(Generator::L(k + 1), idx));
        const long bound = idx.degree() - k - 1;
        if (got > bound)
          fail(describe(idx) + " k=" + std::to_string(k), "maxdeg <= " + std::to_string(bound),
               bound_text(got));
      }
    }
  }

  void lemma_3_3_iii() {
    for (const auto& [lambda, mu] : enumerate_pairs(r_.degree, r_.l0)) {
      if (mu.empty()) continue;
      const int k = mu.smallest();
      if (k > r_.m_max) continue;
      if (!lambda.empty() && lambda.smallest() <= k) continue;
      ++report_.instances;
      const BasisIndex idx{{0, 0, 0, 0}, lambda, mu};
      const BasisIndex lead{{0, 0, 0, 0}, lambda, mu.without_one(k)};
      const std::string params = describe(idx) + " k=" + std::to_string(k);
      const ModuleVector res = split_leading(params, lhs(Generator::L(k + 1), idx), lead,
                                             Rational(-k * mu(k)) * psi_.i1);
      check_residual(params, res, idx.degree() - k, std::nullopt);
    }
  }

  void lemma_4_2_i() {
    for (const auto& [lambda, mu] : enumerate_pairs(r_.degree, r_.l0)) {
      const BasisIndex idx{{0, 0, 0, 0}, lambda, mu};
      const long bound = idx.degree() + idx.l0();
      for (int n = 1; n <= r_.m_max; ++n) {
        for (Generator g : {Generator::L(n), Generator::I(n)}) {
          ++report_.instances;
          const ModuleVector v = lhs(g, idx);
          for (const auto& [r, c] : v.terms()) {
            if (r.degree() + r.l0() <= bound) continue;
            fail(describe(idx) + " E=" + g.str(), "|lambda'+mu'| + lambda'(0) <= " + std::to_string(bound),
                 format_index(r));
            break;
          }
        }
      }
    }
  }

  void lemma_4_2_ii() {
    for (const auto& [lambda, mu] : enumerate_pairs(r_.degree, r_.l0)) {
      const BasisIndex idx{{0, 0, 0, 0}, lambda, mu};
      for (int n = static_cast<int>(idx.degree()) + 3; n <= r_.m_max; ++n) {
        for (Generator g : {Generator::L(n), Generator::I(n)}) {
          ++report_.instances;
          const ModuleVector v = lhs(g, idx);
          if (!v.is_zero()) fail(describe(idx) + " E=" + g.str(), "0", format_element(v));
        }
      }
    }
  }

  WhittakerModule module_;
  WhittakerMap psi_;
  LemmaRanges r_;
  Report report_;
};

}  // namespace detail

/// Checks one of the leading-term / degree lemmas over a parameter range in M_psi.
inline Report verify_lemma(const std::string& id, const LemmaRanges& ranges, const WhittakerMap& psi) {
  if (ranges.a_max < 0 || ranges.k_max < 0 || ranges.m_max < 0 || ranges.degree < 0 || ranges.l0 < 0)
    throw UsageError("lemma ranges must be non-negative");
  if (std::find(lemma_ids().begin(), lemma_ids().end(), id) == lemma_ids().end())
    throw UsageError("unknown lemma id '" + id + "'");
  return detail::LemmaChecker(psi, ranges).run(id);
}

/// In a reduced module with psi(I_1) = 0 and xi_0 = xi_2 = xi_3 = 0, acting by any
/// generator keeps every term with at least one I-factor. Checks this for
/// generators with |index| <= max_index on basis vectors with #(mu) >= 1.
inline Report check_i_support_invariant(const WhittakerModule& module, int max_index, int max_degree,
                                        int max_l0) {
  Report report;
  report.lemma_id = "i-support";
  std::vector<Generator> gens = probe_generators(max_index);
  gens.push_back(Generator::z0());
  for (int i = 1; i <= 3; ++i) gens.push_back(Generator::Z(i));
  for (const auto& [lambda, mu] : enumerate_pairs(max_degree, max_l0)) {
    if (mu.empty()) continue;
    const ModuleVector v = module.vector(BasisIndex{{0, 0, 0, 0}, lambda, mu});
    for (Generator g : gens) {
      ++report.instances;
      const ModuleVector image = module.act(g, v);
      for (const auto& [r, c] : image.terms()) {
        if (!r.mu.empty()) continue;
        report.failures.push_back({g.str() + " on " + format_element(v), "every term with #(mu) >= 1",
                                   format_index(r)});
        break;
      }
    }
  }
  return report;
}

}  // namespace hv

#endif  // HV_SOLVER_HPP
