#include <gtest/gtest.h>

#include <set>

#include "hv/solver.hpp"
#include "hv/syntax.hpp"
#include "random.hpp"

using namespace hv;

namespace {

const WhittakerMap kPsi = make_psi(2, 3, 5);

ModuleVector parse_in(const WhittakerModule& m, const std::string& text) {
  return to_module_vector(parse_element(text), m);
}

ModuleVector replay(const WhittakerModule& m, ModuleVector v, const std::vector<Generator>& trace) {
  for (Generator g : trace) v = m.defect(g, v);
  return v;
}

}  // namespace

TEST(Solver, UniversalSolutionsAreCentralMultiples) {
  const ModuleSpec spec = ModuleSpec::universal(kPsi);
  const auto sol = whittaker_solve(spec, {3, 3, 2, 6});
  ASSERT_EQ(sol.size(), 15U);
  std::set<BasisIndex> seen;
  for (const auto& v : sol) {
    ASSERT_EQ(v.terms().size(), 1U) << format_element(v);
    const auto& [idx, c] = *v.terms().begin();
    EXPECT_EQ(idx.degree(), 0);
    EXPECT_EQ(idx.l0(), 0);
    EXPECT_LE(idx.zdegree(), 2);
    seen.insert(idx);
  }
  EXPECT_EQ(seen.size(), 15U);

  const auto trivial = whittaker_solve(spec, {0, 0, 0, 6});
  ASSERT_EQ(trivial.size(), 1U);
  EXPECT_EQ(format_element(trivial[0]), "w");
}

TEST(Solver, ReducedSolutionIsCyclicLine) {
  const auto sol = whittaker_solve(ModuleSpec::reduced(kPsi, {{1, 1, 1, 1}}), {4, 4, 0, 6});
  ASSERT_EQ(sol.size(), 1U);
  EXPECT_EQ(format_element(sol[0]), "w");
}

TEST(Solver, SolutionsAreWhittakerForEveryPositiveGenerator) {
  for (const ModuleSpec& spec : {ModuleSpec::universal(kPsi), ModuleSpec::reduced(kPsi, {{1, 2, 3, 4}})}) {
    WhittakerModule m(spec);
    for (const auto& v : whittaker_solve(spec, {3, 2, 1, 6}))
      for (int n = 1; n <= 8; ++n) {
        EXPECT_TRUE(m.defect(Generator::L(n), v).is_zero());
        EXPECT_TRUE(m.defect(Generator::I(n), v).is_zero());
      }
  }
}

TEST(Solver, DescentExamples) {
  WhittakerModule r(ModuleSpec::reduced(kPsi, {{1, 1, 1, 1}}));
  const DescentResult trivial = descend(r, r.cyclic());
  EXPECT_TRUE(trivial.trace.empty());
  EXPECT_EQ(trivial.coefficient, Rational(1));

  const DescentResult a = descend(r, parse_in(r, "L[-1]*w"));
  EXPECT_EQ(a.trace, std::vector<Generator>{Generator::I(2)});
  EXPECT_EQ(a.coefficient, Rational(-10));

  const DescentResult b = descend(r, parse_in(r, "I[-1]*w"));
  EXPECT_EQ(b.trace, std::vector<Generator>{Generator::L(2)});
  EXPECT_EQ(b.coefficient, Rational(-5));

  EXPECT_THROW(descend(WhittakerModule(ModuleSpec::universal(kPsi)), ModuleVector::cyclic(ModuleSpec::universal(kPsi))),
               UsageError);
  EXPECT_THROW(descend(r, ModuleVector(r.spec())), UsageError);
  WhittakerModule s(ModuleSpec::reduced(make_psi(2, 3, 0), {}));
  EXPECT_THROW(descend(s, s.cyclic()), InvalidPsiError);
}

TEST(Solver, DescentIsSoundAndReplayable) {
  test_support::Random rnd(41);
  for (const auto& [psi, xi] : {std::pair{kPsi, CentralCharacter{{1, 1, 1, 1}}},
                                std::pair{make_psi(0, 0, 5), CentralCharacter{{0, 1, 0, 0}}},
                                std::pair{make_psi(1, 0, -2), CentralCharacter{{3, 0, 2, -1}}}}) {
    WhittakerModule r(ModuleSpec::reduced(psi, xi));
    const auto basis = basis_enumerate(r.spec(), {3, 2, 0, 6});
    for (int trial = 0; trial < 30; ++trial) {
      const ModuleVector v = rnd.vector(r.spec(), basis, 4);
      const DescentResult d = descend(r, v);
      EXPECT_FALSE(d.coefficient.is_zero());
      EXPECT_EQ(replay(r, v, d.trace), d.coefficient * r.cyclic()) << format_element(v);
    }
  }
}

TEST(Solver, NilpotencyExamples) {
  WhittakerModule m(ModuleSpec::universal(kPsi));
  EXPECT_EQ(nilpotency_index(m, Generator::L(1), m.cyclic(), 10), 1);
  EXPECT_EQ(nilpotency_index(m, Generator::L(1), parse_in(m, "L[-1]*w"), 10), 3);
  EXPECT_EQ(nilpotency_index(m, Generator::I(2), parse_in(m, "L[-1]*w"), 10), 2);
  EXPECT_EQ(nilpotency_index(m, Generator::L(1), ModuleVector(m.spec()), 10), 0);
  EXPECT_THROW(nilpotency_index(m, Generator::L(1), parse_in(m, "L[-1]*w"), 2), BoundExhausted);
  EXPECT_THROW(nilpotency_index(m, Generator::L(-1), m.cyclic(), 5), UsageError);
  EXPECT_THROW(nilpotency_index(m, Generator::L(1), m.cyclic(), 0), UsageError);
}

TEST(Solver, MembershipExamples) {
  WhittakerModule r(ModuleSpec::reduced(kPsi, {}));
  const MembershipResult a = submodule_membership(r, r.cyclic(), {parse_in(r, "I[-1]*w")}, {3, 3, 0, 2});
  ASSERT_TRUE(a.member);
  ModuleVector sum(r.spec());
  for (const auto& [c, v] : a.witness) sum += c * v;
  EXPECT_EQ(sum, r.cyclic());

  const ModuleVector l = parse_in(r, "L[-1]*w");
  EXPECT_TRUE(submodule_membership(r, l, {l}, {3, 3, 0, 2}).member);

  WhittakerModule s(ModuleSpec::reduced(make_psi(2, 3, 0), {{0, 1, 0, 0}}));
  const MembershipResult b =
      submodule_membership(s, s.cyclic(), {parse_in(s, "I[-1]*w"), parse_in(s, "I[-2]*w")}, {5, 3, 0, 3});
  EXPECT_FALSE(b.member);
  EXPECT_GT(b.span_dimension, 2U);
  EXPECT_THROW(submodule_membership(s, s.cyclic(), {}, {}), UsageError);
}

TEST(Solver, NonzeroCentralScalarReachesCyclicVector) {
  // with psi(I1) = 0 but xi0 != 0, L1 sends I_{-1}w to -xi0 w
  WhittakerModule s(ModuleSpec::reduced(make_psi(2, 3, 0), {{3, 1, 0, 0}}));
  EXPECT_EQ(format_element(s.defect(Generator::L(1), parse_in(s, "I[-1]*w"))), "-3*w");
  WhittakerModule t(ModuleSpec::reduced(make_psi(2, 3, 0), {{0, 0, 1, 0}}));
  EXPECT_TRUE(t.defect(Generator::L(1), parse_in(t, "I[-1]*w")).is_zero());
}

TEST(Solver, ISupportInvariant) {
  WhittakerModule s(ModuleSpec::reduced(make_psi(2, 3, 0), {{0, 1, 0, 0}}));
  const Report r = check_i_support_invariant(s, 4, 3, 2);
  EXPECT_TRUE(r.passed()) << r.failures.front().parameters;
  EXPECT_GT(r.instances, 0U);
  WhittakerModule bad(ModuleSpec::reduced(make_psi(2, 3, 0), {{1, 0, 0, 0}}));
  EXPECT_FALSE(check_i_support_invariant(bad, 2, 2, 1).passed());
}

TEST(Solver, DotOrbitIsFinite) {
  WhittakerModule m(ModuleSpec::universal(kPsi));
  test_support::Random rnd(43);
  const auto basis = basis_enumerate(m.spec(), {3, 2, 0, 6});
  EXPECT_EQ(dot_orbit_dimension(m, m.cyclic(), 2), 1U);
  // L[-1]w, L[0]w, w and (z0 + 2 z2)w
  EXPECT_EQ(dot_orbit_dimension(m, parse_in(m, "L[-1]*w"), 3), 4U);
  for (int trial = 0; trial < 20; ++trial) {
    const ModuleVector v = rnd.vector(m.spec(), basis, 3);
    const std::size_t dim = dot_orbit_dimension(m, v, static_cast<int>(maxdeg(v)) + 2);
    EXPECT_GE(dim, 1U);
    EXPECT_LE(dim, basis_enumerate(m.spec(), {5, 5, 0, 6}).size());
  }
}

TEST(Solver, VerifyReportsPass) {
  for (const auto& id : lemma_ids()) {
    const Report r = verify_lemma(id, {}, kPsi);
    EXPECT_TRUE(r.passed()) << id << ": " << r.failures.front().parameters;
    EXPECT_GT(r.instances, 0U) << id;
  }
  EXPECT_EQ(verify_lemma("3.1", {}, kPsi).instances, 12U);
  EXPECT_THROW(verify_lemma("9.9", {}, kPsi), UsageError);
}

TEST(Solver, CommutatorWithSquareWorkedInstance) {
  WhittakerModule m(ModuleSpec::universal(kPsi));
  const ModuleVector v = parse_in(m, "L[-1]^2*w");
  const ModuleVector lhs = m.act(Generator::L(3), v) - m.act(Generator::L(-1), m.act(Generator::L(-1), m.act(Generator::L(3), m.cyclic())));
  EXPECT_EQ(format_element(lhs), "24*w - 24*L[-1]*w");
}
