// Command line front end. Subcommands are thin wrappers over the library;
// anything interesting happens in the headers.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relkit/perm.hpp"
#include "relkit/perm_group.hpp"

namespace {

relkit::PermGroup group_from_args(int degree,
                                  const std::vector<std::string>& gens) {
  std::vector<relkit::Perm> v;
  for (const std::string& s : gens)
    v.push_back(relkit::parse_cycles(s, degree));
  return relkit::PermGroup::build(degree, v);
}

int run_orbits(int degree, const std::vector<std::string>& gens) {
  relkit::PermGroup g = group_from_args(degree, gens);
  std::printf("order %llu\n", static_cast<unsigned long long>(g.order()));
  std::uint32_t seen = 0;
  for (int p = 0; p < degree; ++p) {
    if (seen & (1u << p)) continue;
    auto orbit = g.point_orbit(p);
    std::string line;
    for (int q : orbit) {
      seen |= 1u << q;
      line += (line.empty() ? "" : ",") + std::to_string(q + 1);
    }
    std::printf("orbit {%s}\n", line.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permutation group relation toolkit"};
  app.require_subcommand(1);

  int degree = 0;
  std::vector<std::string> gens;

  CLI::App* orbits = app.add_subcommand("orbits", "point orbits and order");
  orbits->add_option("-n,--degree", degree, "number of points")->required();
  orbits->add_option("-g,--gen", gens, "generator in cycle notation")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (orbits->parsed()) return run_orbits(degree, gens);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
