#ifndef RELKIT_CERTIFY_HPP
#define RELKIT_CERTIFY_HPP

// Decision procedures built on the invariance-group engines: whether a
// group is the invariance group of some relation at all, orbit closure,
// the basic-lemma premise check, subgroup enumeration for the small
// exceptional cases, and conjugacy of groups inside S_n.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "relkit/budget.hpp"
#include "relkit/perm.hpp"
#include "relkit/perm_group.hpp"
#include "relkit/relation.hpp"
#include "relkit/set_orbits.hpp"

namespace relkit {

// The overgroup preserving every set-orbit of g (mapping each orbit onto
// itself). Always contains g; equality means g is orbit closed, and any
// extra element witnesses that no union of set-orbits pins g exactly.
inline PermGroup orbit_closure(const PermGroup& g, const Budget& budget = {}) {
  const int n = g.degree();
  if (n > budget.max_degree_exact)
    throw BudgetError("orbit closure beyond degree budget",
                      static_cast<std::uint64_t>(n));
  PowerOrbits po = PowerOrbits::build(g);
  const std::uint32_t full =
      static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  if (n <= 9) {
    std::vector<std::int32_t> table(std::size_t{1} << n);
    for (std::uint32_t m = 0; m <= full; ++m) table[m] = po.orbit_of(m);
    // masks whose whole cardinality class is one orbit discriminate
    // nothing: every permutation keeps a k-set a k-set
    std::vector<detail::ColoredEdge> edges;
    for (std::uint32_t m = 1; m < full; ++m)
      if (po.orbits()[table[m]].size != binomial(n, std::popcount(m)))
        edges.push_back({m, table[m]});
    std::sort(edges.begin(), edges.end(),
              [](const detail::ColoredEdge& a, const detail::ColoredEdge& b) {
                return detail::edge_less(a.mask, b.mask);
              });
    PermGroup::GroupAccum acc(n);
    detail::scan_color_preservers(
        n, edges, [&](std::uint32_t m) { return table[m]; },
        [&](const Perm& p) { acc.add(p); });
    return acc.take();
  }
  // Larger degrees: color the smallest orbit of each cardinality whose
  // class is not complete. Anything preserving every orbit preserves these,
  // so their colored invariance group bounds the closure from above; its
  // elements are then filtered against the full orbit table.
  std::map<int, const SetOrbit*> pick;
  for (const SetOrbit& o : po.orbits()) {
    if (o.rep == 0 || o.rep == full) continue;
    if (o.size == binomial(n, o.cardinality)) continue;
    auto [it, fresh] = pick.emplace(o.cardinality, &o);
    if (!fresh && (o.size < it->second->size ||
                   (o.size == it->second->size && o.rep < it->second->rep)))
      it->second = &o;
  }
  if (pick.empty()) return PermGroup::symmetric(n);  // set-transitive
  std::vector<detail::ColoredEdge> edges;
  for (std::uint32_t m = 1; m < full; ++m) {
    auto it = pick.find(std::popcount(m));
    if (it != pick.end() && po.orbit_of(m) == po.orbit_of(it->second->rep))
      edges.push_back({m, static_cast<std::int32_t>(it->first)});
  }
  PermGroup aut =
      detail::colored_aut(n, edges, {}, budget, AutEngine::Backtrack);
  std::vector<Perm> elems = aut.elements(budget.enum_budget);
  PermGroup::GroupAccum acc(n);
  std::vector<std::uint32_t> img(std::size_t{1} << n);
  for (const Perm& p : elems) {
    img[0] = 0;
    bool ok = true;
    for (std::uint32_t m = 1; m <= full; ++m) {
      img[m] = img[m & (m - 1)] | (1u << p[std::countr_zero(m)]);
      if (po.orbit_of(img[m]) != po.orbit_of(m)) {
        ok = false;
        break;
      }
    }
    if (ok) acc.add(p);
  }
  return acc.take();
}

enum class RgStatus { RelationGroup, NotRelationGroup, Unknown };

struct RgVerdict {
  RgStatus status = RgStatus::Unknown;
  bool orbit_closed_known = false;
  bool orbit_closed = false;
  // RelationGroup: orbit representatives whose orbit union has invariance
  // group exactly g (replayable through is_defined_by).
  std::vector<std::uint32_t> witness_seeds;
  // NotRelationGroup: permutations outside g that between them rule out
  // every union of nontrivial orbits. Bit i of `preserves` says the i-th
  // orbit (in (cardinality, representative) order) is mapped onto itself;
  // a union all of whose orbits are preserved is ruled out by the mask
  // alone. `direct_ctrs` lists unions (as bitsets over that orbit order)
  // the permutation is known to fix as a whole even though it shuffles
  // their orbits. A universal entry preserves every orbit.
  struct Counterexample {
    Perm extra;
    std::uint64_t preserves = 0;
    bool universal = false;
    std::vector<std::uint64_t> direct_ctrs;
  };
  std::vector<Counterexample> certificate;
  std::uint64_t unions_tried = 0;
  std::string note;
};

namespace detail {

// Nontrivial orbits (neither the empty set nor the whole point set) in
// (cardinality, representative) order -- the union enumeration order.
struct OrbitTable {
  std::vector<std::uint32_t> reps;
  std::vector<std::vector<std::uint32_t>> members;
};

inline OrbitTable nontrivial_orbits(const PowerOrbits& po, int degree) {
  const std::uint32_t full =
      static_cast<std::uint32_t>((std::uint64_t{1} << degree) - 1);
  std::vector<const SetOrbit*> sorted;
  for (const SetOrbit& o : po.orbits())
    if (o.rep != 0 && o.rep != full) sorted.push_back(&o);
  std::sort(sorted.begin(), sorted.end(),
            [](const SetOrbit* a, const SetOrbit* b) {
              return a->cardinality != b->cardinality
                         ? a->cardinality < b->cardinality
                         : a->rep < b->rep;
            });
  OrbitTable t;
  std::map<int, int> slot;
  for (const SetOrbit* o : sorted) {
    slot[po.orbit_of(o->rep)] = static_cast<int>(t.reps.size());
    t.reps.push_back(o->rep);
  }
  t.members.assign(t.reps.size(), {});
  for (std::uint32_t m = 1; m < full; ++m)
    t.members[slot.at(po.orbit_of(m))].push_back(m);
  return t;
}

// Which of the first 64 orbits does p map onto themselves?
inline std::uint64_t preserved_orbits(const Perm& p, const PowerOrbits& po,
                                      const OrbitTable& t) {
  std::uint64_t out = 0;
  const std::size_t cap = std::min<std::size_t>(t.reps.size(), 64);
  for (std::size_t i = 0; i < cap; ++i) {
    bool ok = true;
    for (std::uint32_t m : t.members[i])
      if (po.orbit_of(p.image_mask(m)) != po.orbit_of(m)) {
        ok = false;
        break;
      }
    if (ok) out |= std::uint64_t{1} << i;
  }
  return out;
}

inline bool fixes_every_orbit(const Perm& p, const PowerOrbits& po) {
  const std::uint32_t full =
      static_cast<std::uint32_t>((std::uint64_t{1} << p.degree()) - 1);
  for (std::uint32_t m = 1; m < full; ++m)
    if (po.orbit_of(p.image_mask(m)) != po.orbit_of(m)) return false;
  return true;
}

}  // namespace detail

// Is g the invariance group of some relation on its points? Every
// g-invariant relation is a union of set-orbits, so those unions are the
// whole search space. An element beyond g preserving every orbit settles
// the question for all unions at once; otherwise unions are enumerated in
// binary-counter order over the sorted orbit list, each failure adding a
// counterexample that prunes the unions it covers. enum_budget caps the
// number of invariance groups computed; a smaller internal cap bounds the
// cheap skip tests. Unknown means a budget ran out, never a wrong answer.
inline RgVerdict decide_relation_group(const PermGroup& g,
                                       const Budget& budget = {}) {
  RgVerdict v;
  const int n = g.degree();
  if (n > budget.max_degree_exact) {
    v.note = "degree beyond exact budget";
    return v;
  }
  if (n <= 1) {  // every relation on one point is invariant under S_1 = g
    v.status = RgStatus::RelationGroup;
    v.orbit_closed_known = true;
    v.orbit_closed = true;
    return v;
  }
  PowerOrbits po = PowerOrbits::build(g);
  try {
    PermGroup closure = orbit_closure(g, budget);
    v.orbit_closed_known = true;
    v.orbit_closed = closure.order() == g.order();
    if (!v.orbit_closed) {
      for (const Perm& p : closure.generators())
        if (!g.contains(p)) {
          v.status = RgStatus::NotRelationGroup;
          v.certificate.push_back({p, ~std::uint64_t{0}, true, {}});
          return v;
        }
      throw std::logic_error("closure exceeds group but no generator escapes");
    }
  } catch (const BudgetError&) {
    v.note = "orbit closure out of budget";
    return v;
  }

  detail::OrbitTable t = detail::nontrivial_orbits(po, n);
  const std::size_t k = t.reps.size();
  const std::uint64_t max_ctr =
      k >= 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  std::vector<RgVerdict::Counterexample> pool;
  std::uint64_t ctr = 0, skip_ops = 0;
  bool out_of_budget = false;
  while (ctr < max_ctr) {
    if (v.unions_tried >= budget.enum_budget ||
        skip_ops > (std::uint64_t{1} << 24)) {
      out_of_budget = true;
      break;
    }
    ++ctr;
    bool covered = false;
    for (const auto& c : pool) {
      ++skip_ops;
      if ((ctr & ~c.preserves) == 0) {
        covered = true;
        break;
      }
    }
    ++skip_ops;
    if (covered) continue;
    ++v.unions_tried;
    std::vector<std::uint32_t> edges;
    for (std::uint64_t bits = ctr; bits; bits &= bits - 1) {
      const auto& mem = t.members[std::countr_zero(bits)];
      edges.insert(edges.end(), mem.begin(), mem.end());
    }
    PermGroup aut =
        invariance_group(Relation::from_edges(n, std::move(edges)), budget);
    // g preserves each of its own orbits, so g <= aut always; order
    // equality is group equality here.
    if (aut.order() == g.order()) {
      v.status = RgStatus::RelationGroup;
      for (std::uint64_t bits = ctr; bits; bits &= bits - 1)
        v.witness_seeds.push_back(t.reps[std::countr_zero(bits)]);
      return v;
    }
    for (const Perm& p : aut.generators())
      if (!g.contains(p)) {
        RgVerdict::Counterexample c{
            p, detail::preserved_orbits(p, po, t), false, {}};
        if ((ctr & ~c.preserves) != 0) c.direct_ctrs.push_back(ctr);
        pool.push_back(std::move(c));
        break;
      }
  }
  if (!out_of_budget) {
    v.status = RgStatus::NotRelationGroup;
    v.certificate = std::move(pool);
    return v;
  }
  v.note = "union enumeration budget exhausted";
  return v;
}

// Replays a NotRelationGroup certificate from scratch: every listed
// permutation must lie outside g yet preserve what it claims to preserve,
// and together the claims must cover every union of nontrivial orbits.
// Refuses (false) when the union space is too large to sweep.
inline bool replay_not_rg_certificate(const PermGroup& g, const RgVerdict& v) {
  if (v.status != RgStatus::NotRelationGroup || v.certificate.empty())
    return false;
  PowerOrbits po = PowerOrbits::build(g);
  for (const auto& c : v.certificate)
    if (g.contains(c.extra)) return false;
  for (const auto& c : v.certificate)
    if (c.universal) return detail::fixes_every_orbit(c.extra, po);
  detail::OrbitTable t = detail::nontrivial_orbits(po, g.degree());
  const std::size_t k = t.reps.size();
  if (k >= 26) return false;  // union sweep would not terminate reasonably
  std::set<std::uint64_t> direct;
  for (const auto& c : v.certificate) {
    std::uint64_t actual = detail::preserved_orbits(c.extra, po, t);
    if ((c.preserves & ~actual) != 0) return false;
    for (std::uint64_t ctr : c.direct_ctrs) {
      // the union must be mapped onto itself as a plain edge set
      std::vector<std::uint32_t> edges;
      for (std::uint64_t bits = ctr; bits; bits &= bits - 1) {
        const auto& mem = t.members[std::countr_zero(bits)];
        edges.insert(edges.end(), mem.begin(), mem.end());
      }
      std::sort(edges.begin(), edges.end());
      for (std::uint32_t e : edges)
        if (!std::binary_search(edges.begin(), edges.end(),
                                c.extra.image_mask(e)))
          return false;
      direct.insert(ctr);
    }
  }
  const std::uint64_t max_ctr = (std::uint64_t{1} << k) - 1;
  for (std::uint64_t ctr = 1; ctr <= max_ctr; ++ctr) {
    bool covered = direct.count(ctr) != 0;
    for (std::size_t i = 0; !covered && i < v.certificate.size(); ++i)
      covered = (ctr & ~v.certificate[i].preserves) == 0;
    if (!covered) return false;
  }
  return true;
}

// Premise of the subgroup lemma: y is a regular set of h, the seeds
// (with context) define h, and the cardinality of y avoids the arity of
// the defining relation. When this holds, every subgroup of h is itself
// the invariance group of a relation.
inline bool check_lemma31_i(const PermGroup& h,
                            const std::vector<std::uint32_t>& seeds,
                            const Relation& context, std::uint32_t y,
                            const Budget& budget = {}) {
  if (!is_regular_set(h, y)) return false;
  Relation r = orbit_relation(h, seeds).union_with(context);
  if (r.arity().count(std::popcount(y))) return false;
  return is_defined_by(h, seeds, context, budget);
}

// All subgroups (by equality, not conjugacy) of a small group: cyclic
// subgroups closed under pairwise join, via an index multiplication table.
// Deterministic order: by order, then by sorted element index lists.
inline std::vector<PermGroup> enumerate_subgroups(const PermGroup& g,
                                                  std::uint64_t max_order =
                                                      2000) {
  if (g.order() > max_order)
    throw BudgetError("subgroup enumeration bound exceeded", g.order());
  const int n = g.degree();
  std::vector<Perm> elems = g.elements();
  std::sort(elems.begin(), elems.end());
  const int m = static_cast<int>(elems.size());
  auto index_of = [&](const Perm& p) {
    return static_cast<std::uint16_t>(
        std::lower_bound(elems.begin(), elems.end(), p) - elems.begin());
  };
  std::vector<std::vector<std::uint16_t>> mult(m);
  for (int i = 0; i < m; ++i) {
    mult[i].resize(m);
    for (int j = 0; j < m; ++j) mult[i][j] = index_of(elems[i] * elems[j]);
  }
  const std::uint16_t id = index_of(Perm::identity(n));

  auto close = [&](const std::vector<std::uint16_t>& seed) {
    std::vector<bool> in(m, false);
    std::vector<std::uint16_t> out{id};
    in[id] = true;
    for (std::uint16_t s : seed)
      if (!in[s]) {
        in[s] = true;
        out.push_back(s);
      }
    for (std::size_t a = 0; a < out.size(); ++a)
      for (std::size_t b = 0; b < out.size(); ++b) {
        std::uint16_t p = mult[out[a]][out[b]];
        if (!in[p]) {
          in[p] = true;
          out.push_back(p);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::set<std::vector<std::uint16_t>> subs;
  subs.insert(close({}));
  for (int i = 0; i < m; ++i)
    subs.insert(close({static_cast<std::uint16_t>(i)}));
  std::vector<std::vector<std::uint16_t>> work(subs.begin(), subs.end());
  for (std::size_t a = 0; a < work.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) {
      std::vector<std::uint16_t> seed = work[a];
      seed.insert(seed.end(), work[b].begin(), work[b].end());
      auto joined = close(seed);
      if (subs.insert(joined).second) work.push_back(std::move(joined));
    }

  std::vector<std::vector<std::uint16_t>> ordered(subs.begin(), subs.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<PermGroup> out;
  out.reserve(ordered.size());
  for (const auto& sub : ordered) {
    std::vector<Perm> gens;
    for (std::uint16_t i : sub) gens.push_back(elems[i]);
    out.push_back(PermGroup::build(n, gens));
  }
  return out;
}

enum class ConjStatus { Found, None, Unknown };

struct ConjResult {
  ConjStatus status = ConjStatus::Unknown;
  Perm witness;
};

namespace detail {

inline std::vector<int> cycle_type(const Perm& p) {
  std::vector<int> lens;
  std::uint32_t seen = 0;
  for (int i = 0; i < p.degree(); ++i) {
    if (seen & (1u << i)) continue;
    int len = 0, j = i;
    do {
      seen |= 1u << j;
      j = p[j];
      ++len;
    } while (j != i);
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

// Backtrack on the images of points under the conjugator c. For g^c = h it
// is enough that every generator of g conjugates into h, so each generator
// keeps the list of elements of h still consistent with the partial point
// map; an empty list prunes the branch.
class ConjSearch {
public:
  ConjSearch(const PermGroup& g, const PermGroup& h, std::uint64_t node_cap)
      : n_(g.degree()), h_(h), cap_(node_cap) {
    for (const Perm& gen : g.generators()) {
      gens_.push_back(gen);
      gen_inv_.push_back(gen.inverse());
    }
    helems_ = h.elements();
  }

  ConjStatus run(Perm& out) {
    base_.assign(gens_.size(), {});
    for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
      auto tg = cycle_type(gens_[gi]);
      for (std::size_t hi = 0; hi < helems_.size(); ++hi)
        if (cycle_type(helems_[hi]) == tg)
          base_[gi].push_back(static_cast<int>(hi));
      if (base_[gi].empty()) return ConjStatus::None;
    }
    img_.assign(n_, -1);
    used_ = 0;
    cands_ = base_;
    // right translation by h leaves the conjugation condition alone, so
    // the image of point 0 only matters up to the orbits of h
    std::uint32_t seen = 0;
    std::vector<int> first;
    for (int q = 0; q < n_; ++q) {
      if (seen & (1u << q)) continue;
      for (int r : h_.point_orbit(q)) seen |= 1u << r;
      first.push_back(q);
    }
    try {
      for (int q : first) {
        if (place(0, q) && extend(1)) {
          out = Perm::from_images(std::vector<int>(img_.begin(), img_.end()));
          return ConjStatus::Found;
        }
        unplace(0, q);
      }
    } catch (const BudgetError&) {
      return ConjStatus::Unknown;
    }
    return ConjStatus::None;
  }

private:
  // Assign img_[p] = q and filter each generator's candidates by the newly
  // completed pairs: h must map img[i] -> img[gen[i]] once both are known.
  bool place(int p, int q) {
    img_[p] = q;
    used_ |= 1u << q;
    bool alive = true;
    for (std::size_t gi = 0; gi < gens_.size() && alive; ++gi) {
      const Perm& gen = gens_[gi];
      const int ends[2] = {p, gen_inv_[gi][p]};
      auto& list = cands_[gi];
      list.erase(std::remove_if(list.begin(), list.end(),
                                [&](int hi) {
                                  const Perm& h = helems_[hi];
                                  for (int i : ends) {
                                    int j = gen[i];
                                    if (img_[i] >= 0 && img_[j] >= 0 &&
                                        h[img_[i]] != img_[j])
                                      return true;
                                  }
                                  return false;
                                }),
                 list.end());
      alive = !list.empty();
    }
    return alive;
  }

  // Candidate lists shrink monotonically along a branch, so backtracking
  // refilters from the cycle-type base lists; cheap at these group sizes.
  void unplace(int p, int q) {
    img_[p] = -1;
    used_ &= ~(1u << q);
    for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
      const Perm& gen = gens_[gi];
      auto& list = cands_[gi];
      list.clear();
      for (int hi : base_[gi]) {
        const Perm& h = helems_[hi];
        bool ok = true;
        for (int i = 0; i < n_ && ok; ++i) {
          int j = gen[i];
          if (img_[i] >= 0 && img_[j] >= 0 && h[img_[i]] != img_[j])
            ok = false;
        }
        if (ok) list.push_back(hi);
      }
    }
  }

  bool extend(int p) {
    if (++nodes_ > cap_)
      throw BudgetError("conjugacy search over node budget", nodes_);
    if (p == n_) return verify();
    for (int q = 0; q < n_; ++q) {
      if (used_ & (1u << q)) continue;
      if (place(p, q) && extend(p + 1)) return true;
      unplace(p, q);
    }
    return false;
  }

  bool verify() {
    Perm c = Perm::from_images(std::vector<int>(img_.begin(), img_.end()));
    Perm ci = c.inverse();
    for (const Perm& gen : gens_)
      if (!h_.contains(ci * gen * c)) return false;
    return true;
  }

  int n_;
  std::vector<Perm> gens_, gen_inv_;
  const PermGroup& h_;
  std::uint64_t cap_;
  std::vector<Perm> helems_;
  std::vector<int> img_;
  std::uint32_t used_ = 0;
  std::vector<std::vector<int>> base_, cands_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

// Searches for c in S_n with g^c = h. Exhaustive scan at small degree, a
// pruned backtrack up to degree 12 and moderate order, Unknown beyond
// (never a wrong answer). Found comes with the witness conjugator.
inline ConjResult conjugate_in_sym(const PermGroup& g, const PermGroup& h,
                                   const Budget& budget = {}) {
  if (g.degree() != h.degree())
    throw std::invalid_argument("conjugacy needs equal degrees");
  ConjResult r;
  if (g.order() != h.order()) {
    r.status = ConjStatus::None;
    return r;
  }
  const int n = g.degree();
  if (n <= 9) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    do {
      Perm c = Perm::from_images(img);
      Perm ci = c.inverse();
      bool ok = true;
      for (const Perm& gen : g.generators())
        if (!h.contains(ci * gen * c)) {
          ok = false;
          break;
        }
      if (ok) {
        r.status = ConjStatus::Found;
        r.witness = c;
        return r;
      }
    } while (std::next_permutation(img.begin(), img.end()));
    r.status = ConjStatus::None;
    return r;
  }
  if (n > 12 || g.order() > 20000) return r;  // Unknown
  detail::ConjSearch search(g, h, budget.search_nodes);
  r.status = search.run(r.witness);
  return r;
}

}  // namespace relkit

#endif
