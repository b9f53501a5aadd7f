#include <gtest/gtest.h>

#include <set>

#include "hv/partitions.hpp"
#include "hv/uea.hpp"

using namespace hv;

namespace {

// every multiplicity vector (m_1..m_n) with sum i*m_i == n
std::set<Partition> brute_partitions(int n) {
  std::set<Partition> out;
  std::vector<int> m(static_cast<std::size_t>(n) + 1, 0);
  auto rec = [&](auto&& self, int part, int rest) -> void {
    if (part > n) {
      if (rest != 0) return;
      Partition p;
      for (int i = 1; i <= n; ++i) p.add(i, m[static_cast<std::size_t>(i)]);
      out.insert(p);
      return;
    }
    for (int k = 0; k * part <= rest; ++k) {
      m[static_cast<std::size_t>(part)] = k;
      self(self, part + 1, rest - k * part);
    }
    m[static_cast<std::size_t>(part)] = 0;
  };
  rec(rec, 1, n);
  return out;
}

}  // namespace

TEST(Partitions, StatsAndFormatting) {
  const auto lambda = Pseudopartition::from_parts({0, 0, 1, 3});
  EXPECT_EQ(lambda.size(), 4);
  EXPECT_EQ(lambda.parts(), 4);
  EXPECT_EQ(lambda(0), 2);
  EXPECT_EQ(lambda(2), 0);
  EXPECT_EQ(lambda.smallest(), 0);
  EXPECT_EQ(lambda.largest(), 3);
  EXPECT_EQ(lambda.str(), "(0^2,1,3)");
  EXPECT_EQ((stats(lambda) == PartitionStats{4, 4}), true);
  EXPECT_EQ(Partition().str(), "()");
  EXPECT_THROW(Partition::from_parts({0}), UsageError);
}

TEST(Partitions, RemoveAndAdd) {
  auto lambda = Pseudopartition::from_parts({1, 1, 2});
  const auto fewer = lambda.without_one(1);
  EXPECT_EQ(fewer, Pseudopartition::from_parts({1, 2}));
  EXPECT_EQ(lambda(1), 2);
  lambda.remove_one(2);
  EXPECT_EQ(lambda, Pseudopartition::from_parts({1, 1}));
  EXPECT_THROW(lambda.remove_one(5), UsageError);
}

TEST(Partitions, AdditivityOfSum) {
  const auto a = Pseudopartition::from_parts({0, 2, 2});
  const auto b = Pseudopartition::from_parts({0, 1, 2});
  const auto c = a + b;
  EXPECT_EQ(c.size(), a.size() + b.size());
  EXPECT_EQ(c.parts(), a.parts() + b.parts());
  EXPECT_EQ(c(2), 3);
  EXPECT_EQ(c(0), 2);
}

TEST(Partitions, CountsMatchBruteForce) {
  const std::vector<std::size_t> known{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int n = 0; n <= 10; ++n) {
    const auto ps = partitions_of(n);
    EXPECT_EQ(ps.size(), known[static_cast<std::size_t>(n)]) << n;
    const std::set<Partition> fast(ps.begin(), ps.end());
    EXPECT_EQ(fast.size(), ps.size()) << "duplicates at " << n;
    EXPECT_EQ(fast, brute_partitions(n)) << n;
  }
  EXPECT_TRUE(partitions_of(-1).empty());
}

TEST(Partitions, PairEnumeration) {
  for (int d = 0; d <= 5; ++d)
    for (int z = 0; z <= 3; ++z) {
      std::size_t expected = 0;
      for (int n = 0; n <= d; ++n)
        for (int a = 0; a <= n; ++a) expected += brute_partitions(a).size() * brute_partitions(n - a).size();
      expected *= static_cast<std::size_t>(z + 1);

      const auto pairs = enumerate_pairs(d, z);
      ASSERT_EQ(pairs.size(), expected) << d << " " << z;
      std::set<PartitionPair> seen(pairs.begin(), pairs.end());
      EXPECT_EQ(seen.size(), pairs.size());
      for (std::size_t i = 1; i < pairs.size(); ++i)
        EXPECT_TRUE(pair_order_less(pairs[i - 1].first, pairs[i - 1].second, pairs[i].first, pairs[i].second));
      for (const auto& [lambda, mu] : pairs) {
        EXPECT_LE(lambda.size() + mu.size(), d);
        EXPECT_LE(lambda(0), z);
      }
    }
  EXPECT_EQ(enumerate_pairs(2, 1).size(), 16U);
  EXPECT_EQ(enumerate_pairs(3, 3).size(), 72U);
  EXPECT_THROW(enumerate_pairs(-1, 0), UsageError);
}

TEST(Partitions, WordWeight) {
  for (const auto& [lambda, mu] : enumerate_pairs(4, 2)) {
    const PBWMonomial m = to_word(lambda, mu);
    EXPECT_EQ(weight(m), -(lambda.size() + mu.size()));
    EXPECT_EQ(m.degree(), lambda.parts() + mu.parts());
  }
}
