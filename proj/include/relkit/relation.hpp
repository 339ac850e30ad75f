#ifndef RELKIT_RELATION_HPP
#define RELKIT_RELATION_HPP

// Unordered relations (families of subsets of the point set) and their
// invariance groups inside S_n. Two exact engines compute the invariance
// group: a full S_n scan for n <= 9, and a stabilizer-tower backtrack for
// larger degrees. Both work over edge lists carrying an integer color; a
// plain relation is the single-color case, and the orbit-closure machinery
// reuses the engines by coloring every mask with its orbit.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "relkit/budget.hpp"
#include "relkit/perm.hpp"
#include "relkit/perm_group.hpp"
#include "relkit/set_orbits.hpp"

namespace relkit {

namespace detail {
inline bool edge_less(std::uint32_t a, std::uint32_t b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  return pa != pb ? pa < pb : a < b;
}
}  // namespace detail

class Relation {
public:
  static Relation from_edges(int degree, std::vector<std::uint32_t> edges) {
    if (degree < 1 || degree > max_degree)
      throw std::invalid_argument("degree must be in 1..32");
    const std::uint64_t limit = std::uint64_t{1} << degree;
    for (std::uint32_t e : edges)
      if (e >= limit) throw std::invalid_argument("edge exceeds degree");
    std::sort(edges.begin(), edges.end(), detail::edge_less);
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Relation r;
    r.degree_ = degree;
    r.edges_ = std::move(edges);
    return r;
  }

  static Relation empty(int degree) { return from_edges(degree, {}); }

  int degree() const { return degree_; }
  const std::vector<std::uint32_t>& edges() const { return edges_; }
  bool has_edges() const { return !edges_.empty(); }

  bool contains(std::uint32_t mask) const {
    return std::binary_search(edges_.begin(), edges_.end(), mask,
                              detail::edge_less);
  }

  std::set<int> arity() const {
    std::set<int> out;
    for (std::uint32_t e : edges_) out.insert(std::popcount(e));
    return out;
  }

  Relation union_with(const Relation& other) const {
    if (other.degree_ != degree_)
      throw std::invalid_argument("degree mismatch");
    std::vector<std::uint32_t> all = edges_;
    all.insert(all.end(), other.edges_.begin(), other.edges_.end());
    return from_edges(degree_, std::move(all));
  }

  bool operator==(const Relation&) const = default;

private:
  int degree_ = 1;
  std::vector<std::uint32_t> edges_;
};

// Union of the set-orbits of the seeds: the least G-invariant relation
// containing them. G is always a subgroup of its invariance group.
inline Relation orbit_relation(const PermGroup& g,
                               const std::vector<std::uint32_t>& seeds) {
  std::vector<std::uint32_t> all;
  for (std::uint32_t s : seeds) {
    auto orb = subset_orbit(g, s);
    all.insert(all.end(), orb.begin(), orb.end());
  }
  return Relation::from_edges(g.degree(), std::move(all));
}

enum class AutEngine { Auto, Scan, Backtrack };

namespace detail {

struct ColoredEdge {
  std::uint32_t mask;
  std::int32_t color;
};

// Exhaustive S_n sweep; candidates failing on an early edge cost almost
// nothing. color_of must answer for every mask (use -1 for non-edges of a
// plain relation; images falling off the edge list then fail the compare).
template <typename ColorOf, typename Sink>
void scan_color_preservers(int degree, const std::vector<ColoredEdge>& edges,
                           ColorOf&& color_of, Sink&& sink) {
  std::vector<int> img(degree);
  for (int i = 0; i < degree; ++i) img[i] = i;
  do {
    bool ok = true;
    for (const ColoredEdge& e : edges) {
      std::uint32_t im = 0;
      for (std::uint32_t m = e.mask; m; m &= m - 1)
        im |= 1u << img[std::countr_zero(m)];
      if (color_of(im) != e.color) {
        ok = false;
        break;
      }
    }
    if (ok) sink(Perm::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
}

// Stabilizer-tower backtrack. Level m asks which images the point m can
// take under color-preserving permutations fixing 0..m-1 pointwise; each
// achievable image contributes one coset representative, found by a
// single-completion search. The group order is the product of the level
// orbit sizes, so the engine never enumerates the group itself.
class ColorAutSearch {
public:
  ColorAutSearch(int degree, std::vector<ColoredEdge> edges,
                 const Budget& budget)
      : n_(degree), edges_(std::move(edges)), budget_(budget) {
    edges_at_.assign(n_, {});
    for (std::size_t i = 0; i < edges_.size(); ++i)
      for (std::uint32_t m = edges_[i].mask; m; m &= m - 1)
        edges_at_[std::countr_zero(m)].push_back(static_cast<int>(i));
    compute_invariants();
  }

  // Full automorphism group of the coloring.
  PermGroup automorphisms() {
    PermGroup::GroupAccum acc(n_);
    for (int m = n_ - 1; m >= 0; --m) {
      std::uint32_t orbit = accum_orbit(acc, m);
      for (int c = m + 1; c < n_; ++c) {
        if (orbit & (1u << c)) continue;
        if (inv_[c] != inv_[m]) continue;
        Perm found;
        if (complete(m, c, found)) {
          acc.add(found);
          orbit = accum_orbit(acc, m);
        }
      }
    }
    return acc.take();
  }

  std::uint64_t nodes_used() const { return nodes_; }

private:
  // orbit of point p under the generators collected so far, as a mask
  static std::uint32_t accum_orbit(const PermGroup::GroupAccum& acc, int p) {
    std::uint32_t seen = 1u << p;
    std::vector<int> queue{p};
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (const Perm& g : acc.generators()) {
        int q = g[queue[qi]];
        if (!(seen & (1u << q))) {
          seen |= 1u << q;
          queue.push_back(q);
        }
      }
    return seen;
  }

  // Iterated point invariants: start from the per-(size,color) edge counts
  // at each point and refine by the neighbours' classes until stable. Any
  // color-preserving permutation respects these classes.
  void compute_invariants() {
    inv_.assign(n_, 0);
    int classes = 1;
    for (int round = 0; round < n_; ++round) {
      std::vector<std::vector<std::uint64_t>> key(n_);
      for (int p = 0; p < n_; ++p) {
        std::vector<std::uint64_t> parts;
        parts.push_back(static_cast<std::uint64_t>(inv_[p]));
        for (int ei : edges_at_[p]) {
          const ColoredEdge& e = edges_[ei];
          std::uint64_t h = 0x9e3779b97f4a7c15ull * (e.color + 1);
          h ^= static_cast<std::uint64_t>(std::popcount(e.mask)) << 48;
          std::uint64_t sum = 0, xr = 0;
          for (std::uint32_t m = e.mask; m; m &= m - 1) {
            std::uint64_t q = 1 + inv_[std::countr_zero(m)];
            sum += q * 0x100000001b3ull;
            xr ^= q * q;
          }
          parts.push_back(h ^ (sum + xr));
        }
        std::sort(parts.begin() + 1, parts.end());
        key[p] = std::move(parts);
      }
      std::map<std::vector<std::uint64_t>, int> ids;
      for (int p = 0; p < n_; ++p) ids.emplace(key[p], 0);
      int next = 0;
      for (auto& [k, id] : ids) id = next++;
      for (int p = 0; p < n_; ++p) inv_[p] = ids[key[p]];
      if (next == classes) return;
      classes = next;
    }
  }

  std::uint64_t bucket_key(int ei) const {
    const ColoredEdge& e = edges_[ei];
    return (static_cast<std::uint64_t>(std::popcount(e.mask)) << 45) ^
           (static_cast<std::uint64_t>(e.color) << 26) ^ proj_a_[ei];
  }
  std::uint64_t bucket_key_b(int ei) const {
    const ColoredEdge& e = edges_[ei];
    return (static_cast<std::uint64_t>(std::popcount(e.mask)) << 45) ^
           (static_cast<std::uint64_t>(e.color) << 26) ^ proj_b_[ei];
  }

  void bump(std::uint64_t key, int delta) {
    int& d = diff_[key];
    if (d == 0) ++mismatch_;
    d += delta;
    if (d == 0) --mismatch_;
  }

  // extend the partial map by p -> q, maintaining the projection multisets
  void assign(int p, int q) {
    img_[p] = q;
    pre_[q] = p;
    for (int ei : edges_at_[p]) {
      bump(bucket_key(ei), -1);
      proj_a_[ei] |= 1u << q;
      bump(bucket_key(ei), +1);
    }
    for (int ei : edges_at_[q]) {
      bump(bucket_key_b(ei), +1);
      proj_b_[ei] |= 1u << q;
      bump(bucket_key_b(ei), -1);
    }
  }

  void unassign(int p, int q) {
    for (int ei : edges_at_[p]) {
      bump(bucket_key(ei), -1);
      proj_a_[ei] &= ~(1u << q);
      bump(bucket_key(ei), +1);
    }
    for (int ei : edges_at_[q]) {
      bump(bucket_key_b(ei), +1);
      proj_b_[ei] &= ~(1u << q);
      bump(bucket_key_b(ei), -1);
    }
    img_[p] = -1;
    pre_[q] = -1;
  }

  // one color-preserving completion with 0..m-1 fixed and m -> c
  bool complete(int m, int c, Perm& out) {
    img_.assign(n_, -1);
    pre_.assign(n_, -1);
    proj_a_.assign(edges_.size(), 0);
    proj_b_.assign(edges_.size(), 0);
    diff_.clear();
    mismatch_ = 0;
    for (int p = 0; p < m; ++p) {
      assign(p, p);
      if (mismatch_ > 0) return false;
    }
    assign(m, c);
    if (mismatch_ > 0) return false;
    if (!extend(m + 1)) return false;
    std::vector<int> img(n_);
    for (int p = 0; p < n_; ++p) img[p] = img_[p];
    out = Perm::from_images(img);
    return true;
  }

  bool extend(int p) {
    if (++nodes_ > budget_.search_nodes)
      throw BudgetError("relation automorphism search over node budget",
                        nodes_);
    if (p == n_) return true;  // mismatch == 0 at full depth is exactness
    for (int q = 0; q < n_; ++q) {
      if (pre_[q] >= 0 || inv_[q] != inv_[p]) continue;
      assign(p, q);
      if (mismatch_ == 0 && extend(p + 1)) return true;
      unassign(p, q);
    }
    return false;
  }

  int n_;
  std::vector<ColoredEdge> edges_;
  Budget budget_;
  std::vector<std::vector<int>> edges_at_;
  std::vector<int> inv_;

  std::vector<int> img_, pre_;
  std::vector<std::uint32_t> proj_a_, proj_b_;
  std::unordered_map<std::uint64_t, int> diff_;
  int mismatch_ = 0;
  std::uint64_t nodes_ = 0;
};

// Dispatch on degree: exhaustive scan where n! is small, tower backtrack up
// to the exact-degree budget, refusal beyond.
inline PermGroup colored_aut(int degree, const std::vector<ColoredEdge>& edges,
                             const std::vector<std::int32_t>& color_table,
                             const Budget& budget, AutEngine engine) {
  if (engine == AutEngine::Auto)
    engine = degree <= 9 ? AutEngine::Scan : AutEngine::Backtrack;
  if (engine == AutEngine::Scan) {
    if (degree > 12)
      throw BudgetError("exhaustive S_n scan refused beyond degree 12",
                        static_cast<std::uint64_t>(degree));
    PermGroup::GroupAccum acc(degree);
    scan_color_preservers(
        degree, edges, [&](std::uint32_t m) { return color_table[m]; },
        [&](const Perm& g) { acc.add(g); });
    return acc.take();
  }
  if (degree > budget.max_degree_exact)
    throw BudgetError("exact invariance group beyond degree budget "
                      "(raise max_degree_exact)",
                      static_cast<std::uint64_t>(degree));
  ColorAutSearch search(degree, edges, budget);
  return search.automorphisms();
}

}  // namespace detail

// The invariance group of R: all permutations of the points mapping every
// edge of R onto an edge of R. Exact; throws BudgetError rather than
// guessing when the degree is out of range.
inline PermGroup invariance_group(const Relation& r, const Budget& budget = {},
                                  AutEngine engine = AutEngine::Auto) {
  const int n = r.degree();
  std::vector<detail::ColoredEdge> edges;
  edges.reserve(r.edges().size());
  for (std::uint32_t e : r.edges()) edges.push_back({e, 0});
  if (engine == AutEngine::Auto)
    engine = n <= 9 ? AutEngine::Scan : AutEngine::Backtrack;
  if (engine == AutEngine::Scan) {
    std::vector<std::int32_t> table(std::size_t{1} << n, -1);
    for (std::uint32_t e : r.edges()) table[e] = 0;
    return detail::colored_aut(n, edges, table, budget, engine);
  }
  return detail::colored_aut(n, edges, {}, budget, engine);
}

// Does the orbit relation of the seeds, together with the context relation,
// pin the group exactly? Robust against a context the group does not even
// preserve: equality needs matching orders plus containment.
inline bool is_defined_by(const PermGroup& g,
                          const std::vector<std::uint32_t>& seeds,
                          const Relation& context, const Budget& budget = {},
                          AutEngine engine = AutEngine::Auto) {
  Relation r = orbit_relation(g, seeds).union_with(context);
  PermGroup aut = invariance_group(r, budget, engine);
  if (aut.order() != g.order()) return false;
  for (const Perm& gen : g.generators())
    if (!aut.contains(gen)) return false;
  return true;
}

}  // namespace relkit

#endif
