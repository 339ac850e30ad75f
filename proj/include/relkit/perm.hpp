#ifndef RELKIT_PERM_HPP
#define RELKIT_PERM_HPP

// Permutations on at most 32 points. Points are 0-based internally; all text
// forms (cycle strings, set literals) are 1-based. Composition is a right
// action: (g*h) applies g first, so i^(g*h) = (i^g)^h.

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace relkit {

inline constexpr int max_degree = 32;

// Error from a text parser; offset is the 0-based character position in the
// input that triggered it.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string msg, std::size_t offset)
      : std::runtime_error(std::move(msg)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

class Perm {
public:
  Perm() : deg_(0) { img_.fill(0); }

  static Perm identity(int degree) {
    check_degree(degree);
    Perm p;
    p.deg_ = static_cast<std::uint8_t>(degree);
    for (int i = 0; i < degree; ++i) p.img_[i] = static_cast<std::uint8_t>(i);
    return p;
  }

  // images[i] is the 0-based image of point i.
  static Perm from_images(const std::vector<int>& images) {
    check_degree(static_cast<int>(images.size()));
    Perm p;
    p.deg_ = static_cast<std::uint8_t>(images.size());
    std::uint32_t seen = 0;
    for (std::size_t i = 0; i < images.size(); ++i) {
      int v = images[i];
      if (v < 0 || v >= static_cast<int>(images.size()))
        throw std::invalid_argument("image out of range");
      if (seen & (1u << v)) throw std::invalid_argument("repeated image");
      seen |= 1u << v;
      p.img_[i] = static_cast<std::uint8_t>(v);
    }
    return p;
  }

  int degree() const { return deg_; }

  int operator[](int point) const { return img_[point]; }

  bool is_identity() const {
    for (int i = 0; i < deg_; ++i)
      if (img_[i] != i) return false;
    return true;
  }

  // Smallest moved point, or -1 for the identity.
  int first_moved() const {
    for (int i = 0; i < deg_; ++i)
      if (img_[i] != i) return i;
    return -1;
  }

  std::uint32_t moved_mask() const {
    std::uint32_t m = 0;
    for (int i = 0; i < deg_; ++i)
      if (img_[i] != i) m |= 1u << i;
    return m;
  }

  Perm inverse() const {
    Perm p;
    p.deg_ = deg_;
    for (int i = 0; i < deg_; ++i) p.img_[img_[i]] = static_cast<std::uint8_t>(i);
    return p;
  }

  // Pointwise image of a subset given as a bit mask.
  std::uint32_t image_mask(std::uint32_t mask) const {
    std::uint32_t out = 0;
    while (mask) {
      int i = std::countr_zero(mask);
      mask &= mask - 1;
      out |= 1u << img_[i];
    }
    return out;
  }

  friend Perm operator*(const Perm& g, const Perm& h) {
    if (g.deg_ != h.deg_) throw std::invalid_argument("degree mismatch");
    Perm p;
    p.deg_ = g.deg_;
    for (int i = 0; i < g.deg_; ++i) p.img_[i] = h.img_[g.img_[i]];
    return p;
  }

  friend bool operator==(const Perm& a, const Perm& b) {
    if (a.deg_ != b.deg_) return false;
    for (int i = 0; i < a.deg_; ++i)
      if (a.img_[i] != b.img_[i]) return false;
    return true;
  }

  friend bool operator<(const Perm& a, const Perm& b) {
    if (a.deg_ != b.deg_) return a.deg_ < b.deg_;
    for (int i = 0; i < a.deg_; ++i)
      if (a.img_[i] != b.img_[i]) return a.img_[i] < b.img_[i];
    return false;
  }

private:
  static void check_degree(int degree) {
    if (degree < 1 || degree > max_degree)
      throw std::invalid_argument("degree must be in 1..32");
  }

  std::uint8_t deg_;
  std::array<std::uint8_t, max_degree> img_;
};

// "(1,2,5)(3,4,6)"; "()" or an all-blank string is the identity. Fixed points
// may be written as singleton cycles. Throws ParseError with the offending
// character offset.
inline Perm parse_cycles(std::string_view text, int degree) {
  if (degree < 1 || degree > max_degree)
    throw std::invalid_argument("degree must be in 1..32");
  std::vector<int> img(degree);
  for (int i = 0; i < degree; ++i) img[i] = i;
  std::uint32_t used = 0;

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '('", i);
    ++i;
    std::vector<int> cycle;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      std::size_t start = i;
      int v = 0;
      bool any = false;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + (text[i] - '0');
        if (v > max_degree) throw ParseError("point out of range", start);
        any = true;
        ++i;
      }
      if (!any) throw ParseError("expected a point", i);
      if (v < 1 || v > degree) throw ParseError("point out of range", start);
      if (used & (1u << (v - 1))) throw ParseError("repeated point", start);
      used |= 1u << (v - 1);
      cycle.push_back(v - 1);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip_ws();
        if (i >= text.size() || text[i] == ')')
          throw ParseError("expected a point", i);
      }
    }
    if (i >= text.size()) throw ParseError("unterminated cycle", text.size());
    ++i;  // ')'
    for (std::size_t k = 0; k < cycle.size(); ++k)
      img[cycle[k]] = cycle[(k + 1) % cycle.size()];
    skip_ws();
  }
  return Perm::from_images(img);
}

// Canonical form: cycles ordered by smallest moved point, each cycle starting
// at its smallest point, fixed points omitted, identity printed as "()".
inline std::string print_cycles(const Perm& g) {
  std::string out;
  std::uint32_t done = 0;
  for (int i = 0; i < g.degree(); ++i) {
    if ((done & (1u << i)) || g[i] == i) continue;
    out += '(';
    int p = i;
    bool first = true;
    do {
      if (!first) out += ',';
      out += std::to_string(p + 1);
      done |= 1u << p;
      p = g[p];
      first = false;
    } while (p != i);
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

// "[1,2,5]" -> bit mask; "[]" is the empty set. Points are 1-based, must be
// strictly within the degree, and may not repeat.
inline std::uint32_t parse_set(std::string_view text, int degree) {
  if (degree < 1 || degree > max_degree)
    throw std::invalid_argument("degree must be in 1..32");
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  if (i >= text.size() || text[i] != '[') throw ParseError("expected '['", i);
  ++i;
  std::uint32_t mask = 0;
  skip_ws();
  while (i < text.size() && text[i] != ']') {
    std::size_t start = i;
    int v = 0;
    bool any = false;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      v = v * 10 + (text[i] - '0');
      if (v > max_degree) throw ParseError("point out of range", start);
      any = true;
      ++i;
    }
    if (!any) throw ParseError("expected a point", i);
    if (v < 1 || v > degree) throw ParseError("point out of range", start);
    if (mask & (1u << (v - 1))) throw ParseError("repeated point", start);
    mask |= 1u << (v - 1);
    skip_ws();
    if (i < text.size() && text[i] == ',') {
      ++i;
      skip_ws();
      if (i >= text.size() || text[i] == ']')
        throw ParseError("expected a point", i);
    }
  }
  if (i >= text.size()) throw ParseError("unterminated set", text.size());
  ++i;  // ']'
  skip_ws();
  if (i != text.size()) throw ParseError("trailing characters", i);
  return mask;
}

inline std::string format_set(std::uint32_t mask) {
  std::string out = "[";
  bool first = true;
  while (mask) {
    int i = std::countr_zero(mask);
    mask &= mask - 1;
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  }
  out += ']';
  return out;
}

}  // namespace relkit

#endif
