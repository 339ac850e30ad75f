#ifndef RELKIT_PERM_GROUP_HPP
#define RELKIT_PERM_GROUP_HPP

// Permutation groups behind a base and strong generating set. The base is
// always 0,1,2,... restricted to points that actually move; the strong
// generating table is the classic Sims scheme: entry (i, j) is an element
// fixing 0..i-1 pointwise and mapping i to j, and the table is closed under
// sifted pairwise products. Everything is deterministic: same generators in
// the same order give the same table, the same element stream, the same
// everything.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relkit/budget.hpp"
#include "relkit/perm.hpp"

namespace relkit {

namespace detail {

class SimsTable {
public:
  void init(int degree) {
    degree_ = degree;
    levels_.assign(degree, Level{});
  }

  int degree() const { return degree_; }

  // Adds g and re-closes the table. Returns true if the group grew.
  bool add(const Perm& g) {
    std::vector<Perm> queue{g};
    bool grew = false;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Perm h = queue[qi];
      for (;;) {
        if (h.is_identity()) break;
        int i = h.first_moved();
        int j = h[i];
        Level& lvl = levels_[i];
        if (lvl.idx[j] < 0) {
          lvl.idx[j] = static_cast<std::int16_t>(lvl.trans.size());
          lvl.trans.push_back(h);
          lvl.inv.push_back(h.inverse());
          grew = true;
          // Close under products with every existing entry; pairs with
          // entries inserted later are enqueued when those arrive.
          for (const Level& l2 : levels_) {
            for (const Perm& t : l2.trans) {
              queue.push_back(h * t);
              queue.push_back(t * h);
            }
          }
          break;
        }
        h = h * lvl.inv[lvl.idx[j]];
      }
    }
    return grew;
  }

  bool contains(const Perm& g) const {
    if (g.degree() != degree_) return false;
    Perm h = g;
    for (;;) {
      if (h.is_identity()) return true;
      int i = h.first_moved();
      const Level& lvl = levels_[i];
      std::int16_t k = lvl.idx[h[i]];
      if (k < 0) return false;
      h = h * lvl.inv[k];
    }
  }

  std::uint64_t order() const {
    unsigned __int128 n = 1;
    for (const Level& lvl : levels_) {
      n *= static_cast<unsigned>(lvl.trans.size() + 1);
      if (n > ~std::uint64_t{0})
        throw std::overflow_error("group order exceeds 2^64-1");
    }
    return static_cast<std::uint64_t>(n);
  }

  // Per-level sorted transversals: (image point, entry index or -1 for the
  // identity). Levels with a trivial orbit are dropped.
  struct Chain {
    int point;
    std::vector<std::pair<int, int>> images;
  };

  std::vector<Chain> chain() const {
    std::vector<Chain> out;
    for (int i = 0; i < degree_; ++i) {
      const Level& lvl = levels_[i];
      if (lvl.trans.empty()) continue;
      Chain c;
      c.point = i;
      c.images.push_back({i, -1});
      for (int j = 0; j < degree_; ++j)
        if (lvl.idx[j] >= 0) c.images.push_back({j, lvl.idx[j]});
      // idx scan is already ascending in j except for the base point slot.
      std::sort(c.images.begin(), c.images.end());
      out.push_back(std::move(c));
    }
    return out;
  }

  const Perm& entry(int level_point, int idx) const {
    return levels_[level_point].trans[idx];
  }

private:
  struct Level {
    Level() { idx.fill(-1); }
    std::array<std::int16_t, max_degree> idx;
    std::vector<Perm> trans;
    std::vector<Perm> inv;
  };

  int degree_ = 0;
  std::vector<Level> levels_;
};

}  // namespace detail

class PermGroup {
public:
  // Builds the group generated by gens (all of the given degree; the list
  // must be nonempty, identity generators are fine).
  static PermGroup build(int degree, const std::vector<Perm>& gens) {
    if (degree < 1 || degree > max_degree)
      throw std::invalid_argument("degree must be in 1..32");
    if (gens.empty()) throw std::invalid_argument("generator list is empty");
    for (const Perm& g : gens)
      if (g.degree() != degree) throw std::invalid_argument("degree mismatch");
    PermGroup grp;
    grp.degree_ = degree;
    grp.gens_ = gens;
    grp.table_.init(degree);
    for (const Perm& g : gens) grp.table_.add(g);
    grp.order_ = grp.table_.order();
    grp.chain_ = grp.table_.chain();
    return grp;
  }

  static PermGroup trivial(int degree) {
    return build(degree, {Perm::identity(degree)});
  }

  static PermGroup symmetric(int degree) {
    std::vector<Perm> gens;
    std::vector<int> img(degree);
    for (int i = 0; i < degree; ++i) img[i] = (i + 1) % degree;
    gens.push_back(Perm::from_images(img));
    if (degree >= 2) {
      for (int i = 0; i < degree; ++i) img[i] = i;
      img[0] = 1;
      img[1] = 0;
      gens.push_back(Perm::from_images(img));
    }
    return build(degree, gens);
  }

  int degree() const { return degree_; }
  std::uint64_t order() const { return order_; }
  const std::vector<Perm>& generators() const { return gens_; }
  bool is_trivial() const { return order_ == 1; }

  bool contains(const Perm& g) const {
    if (g.degree() != degree_)
      throw std::invalid_argument("degree mismatch");
    return table_.contains(g);
  }

  // Streams every element exactly once; order is fixed by the transversal
  // chain (shallowest level varying slowest, images ascending at each level).
  // The identity comes first.
  template <typename Fn>
  void for_each_element(Fn&& fn) const {
    Perm id = Perm::identity(degree_);
    if (chain_.empty()) {
      fn(id);
      return;
    }
    walk(0, id, fn);
  }

  std::vector<Perm> elements(std::uint64_t budget = 10'000'000) const {
    if (order_ > budget)
      throw BudgetError("element enumeration over budget (order " +
                            std::to_string(order_) + ")",
                        order_);
    std::vector<Perm> out;
    out.reserve(order_);
    for_each_element([&](const Perm& g) { out.push_back(g); });
    return out;
  }

  // Pointwise orbit of a point, ascending.
  std::vector<int> point_orbit(int p) const {
    std::uint32_t seen = 1u << p;
    std::vector<int> queue{p};
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (const Perm& g : gens_) {
        int q = g[queue[qi]];
        if (!(seen & (1u << q))) {
          seen |= 1u << q;
          queue.push_back(q);
        }
      }
    std::sort(queue.begin(), queue.end());
    return queue;
  }

  // Setwise stabilizer of the subset given as a mask. Small groups are
  // filtered element by element; larger ones go through a backtrack over the
  // transversal chain that fixes point images shallow-first and prunes on
  // membership of the image in the set.
  PermGroup setwise_stabilizer(std::uint32_t mask,
                               std::uint64_t brute_limit = 1'000'000) const {
    GroupAccum acc(degree_);
    if (order_ <= brute_limit) {
      for_each_element([&](const Perm& g) {
        if (g.image_mask(mask) == mask) acc.add(g);
      });
    } else {
      stab_search(0, Perm::identity(degree_), mask, acc);
    }
    return acc.take();
  }

  // Incrementally grown group; add() reports whether the element was new.
  class GroupAccum {
  public:
    explicit GroupAccum(int degree) : degree_(degree) {
      table_.init(degree);
    }

    bool add(const Perm& g) {
      if (table_.contains(g)) return false;
      gens_.push_back(g);
      table_.add(g);
      return true;
    }

    bool contains(const Perm& g) const { return table_.contains(g); }
    std::uint64_t order() const { return table_.order(); }
    const std::vector<Perm>& generators() const { return gens_; }

    PermGroup take() {
      if (gens_.empty()) gens_.push_back(Perm::identity(degree_));
      PermGroup grp;
      grp.degree_ = degree_;
      grp.gens_ = std::move(gens_);
      grp.table_ = std::move(table_);
      grp.order_ = grp.table_.order();
      grp.chain_ = grp.table_.chain();
      return grp;
    }

  private:
    int degree_;
    detail::SimsTable table_;
    std::vector<Perm> gens_;
  };

private:
  PermGroup() = default;

  template <typename Fn>
  void walk(std::size_t depth, const Perm& suffix, Fn&& fn) const {
    if (depth == chain_.size()) {
      fn(suffix);
      return;
    }
    const auto& lvl = chain_[depth];
    for (const auto& [j, idx] : lvl.images) {
      if (idx < 0)
        walk(depth + 1, suffix, fn);
      else
        walk(depth + 1, table_.entry(lvl.point, idx) * suffix, fn);
    }
  }

  // suffix maps the already-processed points; every point p < depth-th base
  // point has its final image fixed, and that image is in mask iff p is.
  void stab_search(std::size_t depth, const Perm& suffix, std::uint32_t mask,
                   GroupAccum& acc) const {
    if (depth == chain_.size()) {
      // Points below every remaining base level are forced through suffix.
      Perm g = suffix;
      if (g.image_mask(mask) == mask) acc.add(g);
      return;
    }
    const auto& lvl = chain_[depth];
    int p = lvl.point;
    // Points between the previous base point and this one have exactly one
    // possible image; check them before branching.
    int prev = depth == 0 ? 0 : chain_[depth - 1].point + 1;
    for (int q = prev; q < p; ++q) {
      bool in = (mask >> q) & 1;
      bool img_in = (mask >> suffix[q]) & 1;
      if (in != img_in) return;
    }
    for (const auto& [j, idx] : lvl.images) {
      // the level entry maps p to j, then suffix finishes the job
      int image = suffix[j];
      bool in = (mask >> p) & 1;
      bool img_in = (mask >> image) & 1;
      if (in != img_in) continue;
      if (idx < 0)
        stab_search(depth + 1, suffix, mask, acc);
      else
        stab_search(depth + 1, table_.entry(p, idx) * suffix, mask, acc);
    }
  }

  int degree_ = 0;
  std::uint64_t order_ = 1;
  std::vector<Perm> gens_;
  detail::SimsTable table_;
  std::vector<detail::SimsTable::Chain> chain_;
};

}  // namespace relkit

#endif
