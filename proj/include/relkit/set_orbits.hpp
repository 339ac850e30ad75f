#ifndef RELKIT_SET_ORBITS_HPP
#define RELKIT_SET_ORBITS_HPP

// The action of a group on the power set of its points: subset orbits,
// the full orbit partition of the 2^n mask space, and regular sets
// (subsets whose setwise stabilizer is trivial, equivalently whose orbit
// is as long as the group).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "relkit/budget.hpp"
#include "relkit/perm.hpp"
#include "relkit/perm_group.hpp"

namespace relkit {

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Orbit of one subset, ascending by mask value.
inline std::vector<std::uint32_t> subset_orbit(const PermGroup& g,
                                               std::uint32_t mask) {
  std::unordered_set<std::uint32_t> seen{mask};
  std::vector<std::uint32_t> queue{mask};
  for (std::size_t qi = 0; qi < queue.size(); ++qi)
    for (const Perm& p : g.generators()) {
      std::uint32_t im = p.image_mask(queue[qi]);
      if (seen.insert(im).second) queue.push_back(im);
    }
  std::sort(queue.begin(), queue.end());
  return queue;
}

// True iff the setwise stabilizer of mask is trivial. Decided by orbit
// length: the orbit is as long as the group exactly when nothing but the
// identity fixes the set. A counting bound goes first: the orbit lives
// among the C(n,k) sets of the same cardinality, so C(n,k) < |G| settles
// the question without any search.
inline bool is_regular_set(const PermGroup& g, std::uint32_t mask) {
  const std::uint64_t order = g.order();
  if (order == 1) return true;
  const int n = g.degree();
  const int k = std::popcount(mask);
  if (binomial(n, k) < order) return false;
  std::uint64_t count = 1;
  std::vector<std::uint32_t> queue{mask};
  if (n <= 22) {
    std::vector<bool> seen(std::size_t{1} << n, false);
    seen[mask] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (const Perm& p : g.generators()) {
        std::uint32_t im = p.image_mask(queue[qi]);
        if (!seen[im]) {
          seen[im] = true;
          if (++count == order) return true;  // orbits never exceed |G|
          queue.push_back(im);
        }
      }
  } else {
    std::unordered_set<std::uint32_t> seen{mask};
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (const Perm& p : g.generators()) {
        std::uint32_t im = p.image_mask(queue[qi]);
        if (seen.insert(im).second) {
          if (++count == order) return true;
          queue.push_back(im);
        }
      }
  }
  return false;
}

struct SetOrbit {
  std::uint32_t rep;        // numerically smallest member
  std::uint64_t size;       // orbit length; divides the group order
  int cardinality;          // |x|, constant across the orbit
};

// Partition of the whole 2^n mask space into orbits, with a lookup from
// mask to orbit index. Orbits are numbered by ascending representative,
// which is also discovery order for an ascending scan.
class PowerOrbits {
public:
  static PowerOrbits build(const PermGroup& g,
                           std::uint64_t scan_budget = 1u << 24) {
    const int n = g.degree();
    const std::uint64_t total = std::uint64_t{1} << n;
    if (total > scan_budget)
      throw BudgetError("power set scan over budget (2^" + std::to_string(n) +
                            " masks)",
                        total);
    PowerOrbits po;
    po.degree_ = n;
    po.id_.assign(total, -1);
    std::vector<std::uint32_t> queue;
    for (std::uint64_t start = 0; start < total; ++start) {
      if (po.id_[start] >= 0) continue;
      const int id = static_cast<int>(po.orbits_.size());
      std::uint64_t count = 1;
      po.id_[start] = id;
      queue.assign(1, static_cast<std::uint32_t>(start));
      for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (const Perm& p : g.generators()) {
          std::uint32_t im = p.image_mask(queue[qi]);
          if (po.id_[im] < 0) {
            po.id_[im] = id;
            ++count;
            queue.push_back(im);
          }
        }
      po.orbits_.push_back({static_cast<std::uint32_t>(start), count,
                            std::popcount(static_cast<std::uint32_t>(start))});
    }
    return po;
  }

  int degree() const { return degree_; }
  const std::vector<SetOrbit>& orbits() const { return orbits_; }
  int orbit_of(std::uint32_t mask) const { return id_[mask]; }

private:
  int degree_ = 0;
  std::vector<std::int32_t> id_;
  std::vector<SetOrbit> orbits_;
};

inline std::vector<SetOrbit> all_set_orbits(const PermGroup& g,
                                            std::uint64_t scan_budget = 1u
                                                                        << 24) {
  return PowerOrbits::build(g, scan_budget).orbits();
}

// n orbits on nonempty subsets is the least a transitive group can have
// (one per cardinality); set-transitive means exactly that many.
inline bool is_set_transitive(const PermGroup& g,
                              std::uint64_t scan_budget = 1u << 24) {
  auto orbits = all_set_orbits(g, scan_budget);
  std::size_t nonempty = orbits.size() - 1;  // drop the orbit of the empty set
  return nonempty == static_cast<std::size_t>(g.degree());
}

// Deterministic search for one regular set of the given cardinality:
// seeded random subsets, then hill climbing on stabilizer order over
// single in/out swaps. Only ever used above the exhaustive-scan budget,
// where a miss is inconclusive.
inline std::optional<std::uint32_t> find_regular_set(const PermGroup& g, int k,
                                                     int tries = 2000) {
  const int n = g.degree();
  if (k < 0 || k > n) return std::nullopt;
  if (binomial(n, k) < g.order()) return std::nullopt;
  std::mt19937 rng(0x5e7u ^ (static_cast<std::uint32_t>(n) << 16) ^
                   static_cast<std::uint32_t>(k));
  std::vector<int> points(n);
  for (int i = 0; i < n; ++i) points[i] = i;
  auto random_mask = [&]() {
    for (int i = 0; i < k; ++i) {
      std::uniform_int_distribution<int> d(i, n - 1);
      std::swap(points[i], points[d(rng)]);
    }
    std::uint32_t m = 0;
    for (int i = 0; i < k; ++i) m |= 1u << points[i];
    return m;
  };
  auto stab_order = [&](std::uint32_t m) {
    return g.setwise_stabilizer(m).order();
  };

  std::uint32_t best = 0;
  std::uint64_t best_stab = ~std::uint64_t{0};
  for (int t = 0; t < tries; ++t) {
    std::uint32_t m = random_mask();
    if (is_regular_set(g, m)) return m;
    std::uint64_t s = stab_order(m);
    if (s < best_stab) {
      best_stab = s;
      best = m;
    }
  }
  // climb from the least-stabilized candidate
  for (bool improved = true; improved;) {
    improved = false;
    for (int out = 0; out < n && !improved; ++out) {
      if (!(best & (1u << out))) continue;
      for (int in = 0; in < n && !improved; ++in) {
        if (best & (1u << in)) continue;
        std::uint32_t m = (best & ~(1u << out)) | (1u << in);
        std::uint64_t s = stab_order(m);
        if (s == 1) return m;
        if (s < best_stab) {
          best_stab = s;
          best = m;
          improved = true;
        }
      }
    }
  }
  return std::nullopt;
}

struct RegularSizes {
  std::set<int> sizes;
  bool exhaustive;
};

// All cardinalities that admit a regular set. Exhaustive (one scan of the
// whole mask space with a shared visited map) when 2^n fits the budget or
// the counting bound kills every cardinality at once; heuristic and
// possibly incomplete otherwise.
inline RegularSizes regular_set_sizes(const PermGroup& g,
                                      std::uint64_t scan_budget = 1u << 17) {
  const int n = g.degree();
  const std::uint64_t order = g.order();
  if (binomial(n, n / 2) < order) return {{}, true};
  const std::uint64_t total = std::uint64_t{1} << n;
  if (total <= scan_budget) {
    RegularSizes out{{}, true};
    std::vector<bool> seen(total, false);
    std::vector<std::uint32_t> queue;
    for (std::uint64_t start = 0; start < total; ++start) {
      if (seen[start]) continue;
      int k = std::popcount(static_cast<std::uint32_t>(start));
      if (out.sizes.count(k)) continue;  // cardinality already witnessed;
                                         // skip the orbit walk, later starts
                                         // in it are skipped by the same test
      std::uint64_t count = 1;
      seen[start] = true;
      queue.assign(1, static_cast<std::uint32_t>(start));
      for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (const Perm& p : g.generators()) {
          std::uint32_t im = p.image_mask(queue[qi]);
          if (!seen[im]) {
            seen[im] = true;
            ++count;
            queue.push_back(im);
          }
        }
      if (count == order) out.sizes.insert(k);
    }
    return out;
  }
  RegularSizes out{{}, false};
  for (int k = 0; k <= n; ++k)
    if (find_regular_set(g, k)) out.sizes.insert(k);
  return out;
}

}  // namespace relkit

#endif
