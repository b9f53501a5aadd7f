#include <gtest/gtest.h>

#include "hv/algebra.hpp"
#include "hv/syntax.hpp"
#include "random.hpp"

using namespace hv;

namespace {

std::vector<Generator> all_generators(int n) {
  std::vector<Generator> out;
  for (int k = -n; k <= n; ++k) {
    out.push_back(Generator::L(k));
    out.push_back(Generator::I(k));
  }
  for (int i = 1; i <= 3; ++i) out.push_back(Generator::Z(i));
  return out;
}

LieElement gen(Generator g) { return LieElement::term(Rational(1), g); }

}  // namespace

TEST(Algebra, BracketExamples) {
  EXPECT_EQ(format_element(bracket(Generator::L(2), Generator::L(-2))), "-4*L[0] + 1/2*z1");
  EXPECT_EQ(format_element(bracket(Generator::L(1), Generator::I(-1))), "-I[0]");
  EXPECT_EQ(format_element(bracket(Generator::I(2), Generator::I(-2))), "2*z3");
  EXPECT_EQ(format_element(bracket(Generator::L(-1), Generator::I(1))), "I[0] + 2*z2");
  EXPECT_EQ(format_element(bracket(Generator::L(3), Generator::L(-3))), "-6*L[0] + 2*z1");
  EXPECT_EQ(format_element(bracket(Generator::L(1), Generator::L(2))), "L[3]");
  EXPECT_EQ(format_element(bracket(Generator::L(3), Generator::I(1))), "I[4]");
}

TEST(Algebra, CentralElementsCommute) {
  for (Generator g : all_generators(5)) {
    EXPECT_TRUE(bracket(g, Generator::z0()).is_zero()) << g.str();
    for (int i = 1; i <= 3; ++i) EXPECT_TRUE(bracket(Generator::Z(i), g).is_zero());
  }
}

TEST(Algebra, Antisymmetry) {
  const auto gens = all_generators(6);
  for (Generator x : gens)
    for (Generator y : gens) {
      LieElement s = bracket(x, y);
      s += bracket(y, x);
      EXPECT_TRUE(s.is_zero()) << x.str() << " " << y.str();
    }
}

TEST(Algebra, Jacobi) {
  const auto gens = all_generators(5);
  for (Generator x : gens)
    for (Generator y : gens)
      for (Generator z : gens) {
        LieElement s = bracket(gen(x), bracket(y, z));
        s += bracket(gen(y), bracket(z, x));
        s += bracket(gen(z), bracket(x, y));
        ASSERT_TRUE(s.is_zero()) << x.str() << " " << y.str() << " " << z.str();
      }
}

TEST(Algebra, Grading) {
  const auto gens = all_generators(5);
  for (Generator x : gens)
    for (Generator y : gens)
      for (const auto& [g, c] : bracket(x, y).terms())
        EXPECT_EQ(ad_weight(g), ad_weight(x) + ad_weight(y)) << x.str() << " " << y.str();
}

TEST(Algebra, Classify) {
  EXPECT_EQ(classify(Generator::L(2)), SubalgebraId::nPlus);
  EXPECT_EQ(classify(Generator::I(-1)), SubalgebraId::nMinus);
  EXPECT_EQ(classify(Generator::L(0)), SubalgebraId::cartan);
  EXPECT_EQ(classify(Generator::z0()), SubalgebraId::cartan);
  EXPECT_EQ(classify(Generator::Z(2)), SubalgebraId::cartan);
  EXPECT_THROW(Generator::Z(0), UsageError);
}

TEST(Algebra, ReducedBracketIsHomomorphic) {
  test_support::Random rnd(7);
  for (int trial = 0; trial < 200; ++trial) {
    LieElement x, y;
    for (int i = 0; i < 3; ++i) {
      x.add(rnd.generator(4), rnd.rational());
      y.add(rnd.generator(4), rnd.rational());
    }
    EXPECT_EQ(reduce_central(bracket(x, y)), bracket_reduced(reduce_central(x), reduce_central(y)));
    for (const auto& [g, c] : bracket_reduced(x, y).terms()) EXPECT_NE(g.kind(), Kind::Z);
  }
}

TEST(Algebra, BilinearBracket) {
  test_support::Random rnd(11);
  for (int trial = 0; trial < 100; ++trial) {
    LieElement x, y, z;
    x.add(rnd.generator(4), rnd.rational());
    y.add(rnd.generator(4), rnd.rational());
    z.add(rnd.generator(4), rnd.rational());
    const Rational a = rnd.rational();
    LieElement lhs_arg = x;
    lhs_arg += a * y;
    LieElement rhs = bracket(x, z);
    rhs += a * bracket(y, z);
    EXPECT_EQ(bracket(lhs_arg, z), rhs);
  }
}
