#ifndef RELKIT_CATALOG_HPP
#define RELKIT_CATALOG_HPP

// Plain-text catalog of permutation groups and the properties recorded for
// them.  A catalog is a sequence of stanzas:
//
//   [entry]
//   id = G_6_1
//   degree = 6
//   parent = PSL_2_5            (optional: the recorded overgroup)
//   gen = (1,2,3)(4,5,6)        (zero or more; entries without generators
//                                carry claims that cannot be machine-checked)
//   claim = regular-set [3,4,5,6]
//   suspect = order 34          (a recorded claim believed to be a misprint)
//   note = free text
//
// '#' starts a full-line comment; blank lines are ignored; `degree` must
// precede generators and claims.  SIZES below is one of `K`, `a..b`,
// `{a,b,..}`, `any` (every feasible size), `some` (at least one size).
//
//   order N
//   rg | not-rg | no-regular-set | has-regular-set | all-subgroups-rg
//   regular-set [..]                 explicit set with trivial set stabilizer
//   regular-set size K               some regular set of this size exists
//   regular-set-sizes SIZES          exact profile of sizes admitting one
//   defined-by [..];[..]             union of the orbits of the seeds defines
//   defined-by size SIZES [orbit M]  seed of the given size(s), orbit length M
//   defined-in ID [..];[..]          seed orbits joined with a relation that
//   defined-in ID size SIZES           defines the named entry
//   defined-union ID:[..] ID:[..]    explicit orbit union; `self` = this entry
//   conjugate ID                     conjugate inside the symmetric group
//   subgroup-classes N               conjugacy classes of proper nontrivial
//                                      subgroups
//   orbit-closure-order N            order of the largest group with the same
//                                      set orbits

#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relkit/perm.hpp"

namespace relkit {

class CatalogError : public std::runtime_error {
public:
  CatalogError(const std::string& msg, int line)
      : std::runtime_error("catalog line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

// Which set sizes a claim quantifies over.
struct SizeSpec {
  enum class Kind { Single, List, Range, Any, Some };
  Kind kind = Kind::Some;
  int lo = 0, hi = 0;      // Single (lo == hi) and Range
  std::vector<int> items;  // List, ascending

  friend bool operator==(const SizeSpec&, const SizeSpec&) = default;
};

struct Claim {
  enum class Kind {
    Order,
    Rg,
    NotRg,
    NoRegularSet,
    HasRegularSet,
    RegularSetWitness,
    RegularSetOfSize,
    RegularSetSizes,
    DefinedBy,
    DefinedIn,
    DefinedUnion,
    ConjugateTo,
    AllSubgroupsRg,
    SubgroupClasses,
    OrbitClosureOrder,
  };

  Kind kind = Kind::Order;
  std::uint64_t value = 0;           // Order / SubgroupClasses / OrbitClosureOrder
  std::uint32_t witness = 0;         // RegularSetWitness
  int size = 0;                      // RegularSetOfSize
  std::uint64_t orbit_size = 0;      // DefinedBy, 0 = unconstrained
  SizeSpec sizes;                    // DefinedBy / DefinedIn / RegularSetSizes
  bool has_sizes = false;            // DefinedBy / DefinedIn: sizes vs. seeds
  std::string context;               // DefinedIn / ConjugateTo
  std::vector<std::uint32_t> seeds;  // DefinedBy / DefinedIn
  std::vector<std::pair<std::string, std::uint32_t>> parts;  // DefinedUnion
  bool suspect = false;
  int line = 0;

  friend bool operator==(const Claim& a, const Claim& b) {
    return a.kind == b.kind && a.value == b.value && a.witness == b.witness &&
           a.size == b.size && a.orbit_size == b.orbit_size &&
           a.sizes == b.sizes && a.has_sizes == b.has_sizes &&
           a.context == b.context && a.seeds == b.seeds && a.parts == b.parts &&
           a.suspect == b.suspect;
  }
};

struct CatalogEntry {
  std::string id;
  int degree = 0;
  std::string parent;            // empty = none recorded
  std::vector<Perm> generators;  // may be empty
  std::vector<Claim> claims;
  std::vector<std::string> notes;
  int line = 0;  // line of the [entry] header

  bool has_generators() const { return !generators.empty(); }
};

class Catalog {
public:
  explicit Catalog(std::vector<CatalogEntry> entries)
      : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      index_.emplace(entries_[i].id, i);
  }

  const std::vector<CatalogEntry>& entries() const { return entries_; }

  const CatalogEntry* find(std::string_view id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &entries_[it->second];
  }

  const CatalogEntry& at(std::string_view id) const {
    const CatalogEntry* e = find(id);
    if (!e) throw std::out_of_range("no catalog entry " + std::string(id));
    return *e;
  }

private:
  std::vector<CatalogEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::uint64_t parse_number(std::string_view tok, int line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw CatalogError("expected a number, got '" + std::string(tok) + "'", line);
  return v;
}

// Pops the next whitespace-delimited token; empty when exhausted.
inline std::string_view next_token(std::string_view& rest) {
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  std::size_t cut = rest.find(' ');
  std::string_view tok = rest.substr(0, cut);
  rest = cut == std::string_view::npos ? std::string_view{} : rest.substr(cut + 1);
  return tok;
}

inline SizeSpec parse_size_spec(std::string_view tok, int degree, int line) {
  SizeSpec spec;
  auto checked = [&](std::uint64_t v) {
    if (v < 1 || v > static_cast<std::uint64_t>(degree))
      throw CatalogError("size " + std::to_string(v) + " out of range for degree " +
                             std::to_string(degree),
                         line);
    return static_cast<int>(v);
  };
  if (tok == "any") {
    spec.kind = SizeSpec::Kind::Any;
  } else if (tok == "some") {
    spec.kind = SizeSpec::Kind::Some;
  } else if (!tok.empty() && tok.front() == '{') {
    if (tok.back() != '}') throw CatalogError("unterminated size list", line);
    spec.kind = SizeSpec::Kind::List;
    std::string_view body = tok.substr(1, tok.size() - 2);
    while (!body.empty()) {
      std::size_t cut = body.find(',');
      spec.items.push_back(checked(parse_number(trim(body.substr(0, cut)), line)));
      if (cut == std::string_view::npos) break;
      body = body.substr(cut + 1);
    }
    if (spec.items.empty()) throw CatalogError("empty size list", line);
    for (std::size_t i = 1; i < spec.items.size(); ++i)
      if (spec.items[i - 1] >= spec.items[i])
        throw CatalogError("size list must be strictly ascending", line);
  } else if (std::size_t dots = tok.find(".."); dots != std::string_view::npos) {
    spec.kind = SizeSpec::Kind::Range;
    spec.lo = checked(parse_number(tok.substr(0, dots), line));
    spec.hi = checked(parse_number(tok.substr(dots + 2), line));
    if (spec.lo > spec.hi) throw CatalogError("size range is reversed", line);
  } else {
    spec.kind = SizeSpec::Kind::Single;
    spec.lo = spec.hi = checked(parse_number(tok, line));
  }
  return spec;
}

inline std::string print_size_spec(const SizeSpec& spec) {
  switch (spec.kind) {
    case SizeSpec::Kind::Single: return std::to_string(spec.lo);
    case SizeSpec::Kind::Range:
      return std::to_string(spec.lo) + ".." + std::to_string(spec.hi);
    case SizeSpec::Kind::List: {
      std::string out = "{";
      for (std::size_t i = 0; i < spec.items.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(spec.items[i]);
      }
      return out + "}";
    }
    case SizeSpec::Kind::Any: return "any";
    case SizeSpec::Kind::Some: return "some";
  }
  return "";
}

// `[1,2];[1,2,3]` -> masks.  Spaces around ';' are tolerated.
inline std::vector<std::uint32_t> parse_seed_list(std::string_view text, int degree,
                                                  int line) {
  std::vector<std::uint32_t> seeds;
  while (true) {
    std::size_t cut = text.find(';');
    std::string_view part = trim(text.substr(0, cut));
    try {
      seeds.push_back(parse_set(part, degree));
    } catch (const ParseError& e) {
      throw CatalogError(std::string(e.what()) + " in '" + std::string(part) + "'",
                         line);
    }
    if (cut == std::string_view::npos) break;
    text = text.substr(cut + 1);
  }
  return seeds;
}

inline std::string print_seed_list(const std::vector<std::uint32_t>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) out += ';';
    out += format_set(seeds[i]);
  }
  return out;
}

inline bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

inline Claim parse_claim(std::string_view text, int degree, int line) {
  Claim c;
  c.line = line;
  std::string_view rest = text;
  std::string_view head = next_token(rest);
  rest = trim(rest);

  auto want_empty = [&] {
    if (!rest.empty())
      throw CatalogError("unexpected trailing text '" + std::string(rest) + "'", line);
  };
  auto want_set = [&](std::string_view tok) {
    try {
      return parse_set(tok, degree);
    } catch (const ParseError& e) {
      throw CatalogError(std::string(e.what()) + " in '" + std::string(tok) + "'",
                         line);
    }
  };
  auto want_id = [&](std::string_view tok) {
    if (!valid_id(tok))
      throw CatalogError("expected an entry id, got '" + std::string(tok) + "'", line);
    return std::string(tok);
  };

  if (head == "order") {
    c.kind = Claim::Kind::Order;
    c.value = parse_number(next_token(rest), line);
    want_empty();
  } else if (head == "rg") {
    c.kind = Claim::Kind::Rg;
    want_empty();
  } else if (head == "not-rg") {
    c.kind = Claim::Kind::NotRg;
    want_empty();
  } else if (head == "no-regular-set") {
    c.kind = Claim::Kind::NoRegularSet;
    want_empty();
  } else if (head == "has-regular-set") {
    c.kind = Claim::Kind::HasRegularSet;
    want_empty();
  } else if (head == "all-subgroups-rg") {
    c.kind = Claim::Kind::AllSubgroupsRg;
    want_empty();
  } else if (head == "regular-set") {
    std::string_view tok = next_token(rest);
    if (tok == "size") {
      c.kind = Claim::Kind::RegularSetOfSize;
      SizeSpec spec = parse_size_spec(next_token(rest), degree, line);
      if (spec.kind != SizeSpec::Kind::Single)
        throw CatalogError("regular-set size takes a single size", line);
      c.size = spec.lo;
    } else {
      c.kind = Claim::Kind::RegularSetWitness;
      c.witness = want_set(tok);
      if (c.witness == 0) throw CatalogError("regular-set witness is empty", line);
    }
    want_empty();
  } else if (head == "regular-set-sizes") {
    c.kind = Claim::Kind::RegularSetSizes;
    c.sizes = parse_size_spec(next_token(rest), degree, line);
    if (c.sizes.kind == SizeSpec::Kind::Some)
      throw CatalogError("regular-set-sizes needs a concrete profile or 'any'", line);
    want_empty();
  } else if (head == "defined-by") {
    c.kind = Claim::Kind::DefinedBy;
    std::string_view tok = next_token(rest);
    if (tok == "size") {
      c.has_sizes = true;
      c.sizes = parse_size_spec(next_token(rest), degree, line);
      std::string_view more = next_token(rest);
      if (more == "orbit") {
        if (c.sizes.kind != SizeSpec::Kind::Single)
          throw CatalogError("orbit length requires a single size", line);
        c.orbit_size = parse_number(next_token(rest), line);
      } else if (!more.empty()) {
        throw CatalogError("unexpected token '" + std::string(more) + "'", line);
      }
    } else {
      c.seeds = parse_seed_list(tok.empty() ? rest : text.substr(tok.data() - text.data()),
                                degree, line);
      rest = {};
    }
    want_empty();
  } else if (head == "defined-in") {
    c.kind = Claim::Kind::DefinedIn;
    c.context = want_id(next_token(rest));
    rest = trim(rest);
    if (rest.empty()) {
      c.has_sizes = true;
      c.sizes.kind = SizeSpec::Kind::Some;
    } else if (rest.substr(0, 4) == "size") {
      next_token(rest);
      c.has_sizes = true;
      c.sizes = parse_size_spec(next_token(rest), degree, line);
      want_empty();
    } else {
      c.seeds = parse_seed_list(rest, degree, line);
    }
  } else if (head == "defined-union") {
    c.kind = Claim::Kind::DefinedUnion;
    while (true) {
      std::string_view tok = next_token(rest);
      if (tok.empty()) break;
      std::size_t colon = tok.find(':');
      if (colon == std::string_view::npos)
        throw CatalogError("defined-union parts look like ID:[..]", line);
      std::string gid = want_id(tok.substr(0, colon));
      c.parts.emplace_back(std::move(gid), want_set(tok.substr(colon + 1)));
    }
    if (c.parts.empty()) throw CatalogError("defined-union needs at least one part", line);
  } else if (head == "conjugate") {
    c.kind = Claim::Kind::ConjugateTo;
    c.context = want_id(next_token(rest));
    want_empty();
  } else if (head == "subgroup-classes") {
    c.kind = Claim::Kind::SubgroupClasses;
    c.value = parse_number(next_token(rest), line);
    want_empty();
  } else if (head == "orbit-closure-order") {
    c.kind = Claim::Kind::OrbitClosureOrder;
    c.value = parse_number(next_token(rest), line);
    want_empty();
  } else {
    throw CatalogError("unknown claim '" + std::string(head) + "'", line);
  }
  return c;
}

inline std::string print_claim(const Claim& c) {
  switch (c.kind) {
    case Claim::Kind::Order: return "order " + std::to_string(c.value);
    case Claim::Kind::Rg: return "rg";
    case Claim::Kind::NotRg: return "not-rg";
    case Claim::Kind::NoRegularSet: return "no-regular-set";
    case Claim::Kind::HasRegularSet: return "has-regular-set";
    case Claim::Kind::AllSubgroupsRg: return "all-subgroups-rg";
    case Claim::Kind::RegularSetWitness: return "regular-set " + format_set(c.witness);
    case Claim::Kind::RegularSetOfSize:
      return "regular-set size " + std::to_string(c.size);
    case Claim::Kind::RegularSetSizes:
      return "regular-set-sizes " + print_size_spec(c.sizes);
    case Claim::Kind::DefinedBy:
      if (!c.has_sizes) return "defined-by " + print_seed_list(c.seeds);
      return "defined-by size " + print_size_spec(c.sizes) +
             (c.orbit_size ? " orbit " + std::to_string(c.orbit_size) : "");
    case Claim::Kind::DefinedIn:
      if (!c.has_sizes) return "defined-in " + c.context + " " + print_seed_list(c.seeds);
      return "defined-in " + c.context + " size " + print_size_spec(c.sizes);
    case Claim::Kind::DefinedUnion: {
      std::string out = "defined-union";
      for (const auto& [gid, mask] : c.parts) out += " " + gid + ":" + format_set(mask);
      return out;
    }
    case Claim::Kind::ConjugateTo: return "conjugate " + c.context;
    case Claim::Kind::SubgroupClasses:
      return "subgroup-classes " + std::to_string(c.value);
    case Claim::Kind::OrbitClosureOrder:
      return "orbit-closure-order " + std::to_string(c.value);
  }
  return "";
}

}  // namespace detail

inline Catalog parse_catalog(std::string_view text) {
  using detail::trim;
  std::vector<CatalogEntry> entries;
  CatalogEntry* cur = nullptr;
  bool saw_id = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos
                                                ? std::string_view::npos
                                                : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (line == "[entry]") {
      if (cur && !saw_id) throw CatalogError("entry without an id", cur->line);
      entries.emplace_back();
      cur = &entries.back();
      cur->line = line_no;
      saw_id = false;
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw CatalogError("expected 'key = value'", line_no);
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (!cur) throw CatalogError("'" + std::string(key) + "' before [entry]", line_no);

    if (key == "id") {
      if (saw_id) throw CatalogError("duplicate id line", line_no);
      if (!detail::valid_id(value))
        throw CatalogError("invalid id '" + std::string(value) + "'", line_no);
      cur->id = value;
      saw_id = true;
    } else if (key == "degree") {
      if (cur->degree) throw CatalogError("duplicate degree line", line_no);
      std::uint64_t d = detail::parse_number(value, line_no);
      if (d < 1 || d > static_cast<std::uint64_t>(max_degree))
        throw CatalogError("degree out of range", line_no);
      cur->degree = static_cast<int>(d);
    } else if (key == "parent") {
      if (!detail::valid_id(value))
        throw CatalogError("invalid parent id '" + std::string(value) + "'", line_no);
      cur->parent = value;
    } else if (key == "gen") {
      if (!cur->degree) throw CatalogError("gen before degree", line_no);
      try {
        cur->generators.push_back(parse_cycles(value, cur->degree));
      } catch (const ParseError& e) {
        throw CatalogError(std::string(e.what()) + " in '" + std::string(value) + "'",
                           line_no);
      }
    } else if (key == "claim" || key == "suspect") {
      if (!cur->degree) throw CatalogError("claim before degree", line_no);
      Claim c = detail::parse_claim(value, cur->degree, line_no);
      c.suspect = (key == "suspect");
      cur->claims.push_back(std::move(c));
    } else if (key == "note") {
      cur->notes.emplace_back(value);
    } else {
      throw CatalogError("unknown key '" + std::string(key) + "'", line_no);
    }
  }
  if (cur && !saw_id) throw CatalogError("entry without an id", cur->line);

  Catalog catalog(std::move(entries));

  // Cross-reference pass: ids are unique, and every reference names an
  // existing entry of the same degree.
  std::map<std::string_view, int> seen;
  for (const CatalogEntry& e : catalog.entries()) {
    if (!seen.emplace(e.id, e.line).second)
      throw CatalogError("duplicate entry id '" + e.id + "'", e.line);
  }
  auto check_ref = [&](const std::string& id, int degree, int line) {
    const CatalogEntry* t = catalog.find(id);
    if (!t) throw CatalogError("reference to unknown entry '" + id + "'", line);
    if (t->degree != degree)
      throw CatalogError("reference to '" + id + "' crosses degrees", line);
  };
  for (const CatalogEntry& e : catalog.entries()) {
    if (!e.parent.empty()) check_ref(e.parent, e.degree, e.line);
    for (const Claim& c : e.claims) {
      if (c.kind == Claim::Kind::DefinedIn || c.kind == Claim::Kind::ConjugateTo)
        check_ref(c.context, e.degree, c.line);
      if (c.kind == Claim::Kind::DefinedUnion)
        for (const auto& [gid, mask] : c.parts)
          if (gid != "self") check_ref(gid, e.degree, c.line);
    }
  }
  return catalog;
}

inline std::string print_catalog(const Catalog& catalog) {
  std::string out;
  bool first = true;
  for (const CatalogEntry& e : catalog.entries()) {
    if (!first) out += '\n';
    first = false;
    out += "[entry]\n";
    out += "id = " + e.id + '\n';
    out += "degree = " + std::to_string(e.degree) + '\n';
    if (!e.parent.empty()) out += "parent = " + e.parent + '\n';
    for (const Perm& g : e.generators) out += "gen = " + print_cycles(g) + '\n';
    for (const Claim& c : e.claims)
      out += (c.suspect ? "suspect = " : "claim = ") + detail::print_claim(c) + '\n';
    for (const std::string& n : e.notes) out += "note = " + n + '\n';
  }
  return out;
}

}  // namespace relkit

#endif  // RELKIT_CATALOG_HPP
