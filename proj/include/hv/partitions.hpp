#ifndef HV_PARTITIONS_HPP
#define HV_PARTITIONS_HPP

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hv/errors.hpp"

namespace hv {

/// Multiset of integers >= MinPart stored as part -> multiplicity.
/// MinPart = 0 gives pseudopartitions, MinPart = 1 gives partitions.
template <int MinPart>
class MultiplicityMap {
public:
  using Map = std::map<int, int>;

  MultiplicityMap() = default;
  explicit MultiplicityMap(const Map& mult) {
    for (const auto& [k, m] : mult) add(k, m);
  }
  /// From a list of parts in any order.
  static MultiplicityMap from_parts(const std::vector<int>& parts) {
    MultiplicityMap out;
    for (int p : parts) out.add(p, 1);
    return out;
  }

  const Map& mult() const noexcept { return mult_; }
  int operator()(int k) const {
    auto it = mult_.find(k);
    return it == mult_.end() ? 0 : it->second;
  }
  bool empty() const noexcept { return mult_.empty(); }

  void add(int k, int m = 1) {
    if (k < MinPart) throw UsageError("part " + std::to_string(k) + " below minimum part");
    if (m < 0) throw UsageError("negative multiplicity");
    if (m == 0) return;
    mult_[k] += m;
  }
  /// Removes one copy of k; k must be present.
  void remove_one(int k) {
    auto it = mult_.find(k);
    if (it == mult_.end()) throw UsageError("part not present");
    if (--it->second == 0) mult_.erase(it);
  }
  MultiplicityMap without_one(int k) const {
    MultiplicityMap c = *this;
    c.remove_one(k);
    return c;
  }

  /// Sum of parts.
  long size() const noexcept {
    long s = 0;
    for (const auto& [k, m] : mult_) s += static_cast<long>(k) * m;
    return s;
  }
  /// Number of parts, zeros included.
  long parts() const noexcept {
    long s = 0;
    for (const auto& [k, m] : mult_) s += m;
    return s;
  }
  int smallest() const { return mult_.begin()->first; }
  int largest() const { return mult_.rbegin()->first; }

  friend MultiplicityMap operator+(MultiplicityMap a, const MultiplicityMap& b) {
    for (const auto& [k, m] : b.mult_) a.add(k, m);
    return a;
  }

  friend auto operator<=>(const MultiplicityMap&, const MultiplicityMap&) = default;
  friend bool operator==(const MultiplicityMap&, const MultiplicityMap&) = default;

  /// "(0^2,1,3)" style; the empty map prints as "()".
  std::string str() const {
    std::string s = "(";
    bool first = true;
    for (const auto& [k, m] : mult_) {
      if (!first) s += ',';
      first = false;
      s += std::to_string(k);
      if (m != 1) s += "^" + std::to_string(m);
    }
    return s + ")";
  }

private:
  Map mult_;
};

using Pseudopartition = MultiplicityMap<0>;
using Partition = MultiplicityMap<1>;

struct PartitionStats {
  long size = 0;
  long parts = 0;
  friend bool operator==(const PartitionStats&, const PartitionStats&) = default;
};

template <int MinPart>
PartitionStats stats(const MultiplicityMap<MinPart>& lambda) {
  return {lambda.size(), lambda.parts()};
}

/// All partitions of n into positive parts, as multiplicity maps.
inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> parts;
  // parts are generated non-increasing, each at most `cap`
  auto rec = [&](auto&& self, int rest, int cap) -> void {
    if (rest == 0) {
      out.push_back(Partition::from_parts(parts));
      return;
    }
    for (int p = std::min(rest, cap); p >= 1; --p) {
      parts.push_back(p);
      self(self, rest - p, p);
      parts.pop_back();
    }
  };
  if (n >= 0) rec(rec, n, n);
  return out;
}

using PartitionPair = std::pair<Pseudopartition, Partition>;

/// Enumeration order of basis pairs: |lambda+mu|, then lambda(0), then
/// lexicographic on the multiplicity maps of lambda and mu.
inline bool pair_order_less(const Pseudopartition& la, const Partition& ma,
                            const Pseudopartition& lb, const Partition& mb) {
  const long da = la.size() + ma.size();
  const long db = lb.size() + mb.size();
  const int za = la(0);
  const int zb = lb(0);
  return std::tie(da, za, la, ma) < std::tie(db, zb, lb, mb);
}

/// Every (lambda, mu) with |lambda+mu| <= max_degree and lambda(0) <= max_l0,
/// each exactly once, in pair_order_less order.
inline std::vector<PartitionPair> enumerate_pairs(int max_degree, int max_l0) {
  if (max_degree < 0 || max_l0 < 0) throw UsageError("enumeration bounds must be non-negative");
  std::vector<std::vector<Partition>> by_size;
  for (int n = 0; n <= max_degree; ++n) by_size.push_back(partitions_of(n));

  std::vector<PartitionPair> out;
  for (int d = 0; d <= max_degree; ++d) {
    for (int a = 0; a <= d; ++a) {
      for (const auto& lpos : by_size[a]) {
        for (const auto& mu : by_size[d - a]) {
          for (int z = 0; z <= max_l0; ++z) {
            Pseudopartition lambda(lpos.mult());
            lambda.add(0, z);
            out.emplace_back(std::move(lambda), mu);
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const PartitionPair& x, const PartitionPair& y) {
    return pair_order_less(x.first, x.second, y.first, y.second);
  });
  return out;
}

}  // namespace hv

#endif  // HV_PARTITIONS_HPP
