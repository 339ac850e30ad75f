#ifndef RELKIT_TESTS_SUPPORT_HPP
#define RELKIT_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "relkit/perm.hpp"
#include "relkit/perm_group.hpp"

namespace testutil {

inline relkit::PermGroup group(int degree,
                               std::initializer_list<const char*> gens) {
  std::vector<relkit::Perm> v;
  for (const char* s : gens) v.push_back(relkit::parse_cycles(s, degree));
  return relkit::PermGroup::build(degree, v);
}

// Plain breadth-first closure, the oracle for everything the Sims table
// claims. Returns an empty set if the closure exceeds cap.
inline std::set<relkit::Perm> naive_closure(int degree,
                                            const std::vector<relkit::Perm>& gens,
                                            std::size_t cap) {
  std::set<relkit::Perm> all{relkit::Perm::identity(degree)};
  std::vector<relkit::Perm> queue{relkit::Perm::identity(degree)};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const relkit::Perm& g : gens) {
      relkit::Perm h = queue[qi] * g;
      if (all.insert(h).second) {
        if (all.size() > cap) return {};
        queue.push_back(h);
      }
    }
  }
  return all;
}

inline relkit::Perm random_perm(int degree, std::mt19937& rng) {
  std::vector<int> img(degree);
  for (int i = 0; i < degree; ++i) img[i] = i;
  for (int i = degree - 1; i > 0; --i) {
    std::uniform_int_distribution<int> d(0, i);
    std::swap(img[i], img[d(rng)]);
  }
  return relkit::Perm::from_images(img);
}

inline std::vector<relkit::Perm> random_gens(int degree, int count,
                                             std::mt19937& rng) {
  std::vector<relkit::Perm> out;
  for (int i = 0; i < count; ++i) out.push_back(random_perm(degree, rng));
  return out;
}

}  // namespace testutil

#endif
