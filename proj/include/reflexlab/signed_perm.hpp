#pragma once

// Signed permutations (f, sigma) in (Z/2)^N x| S_N, exhaustive group closure,
// cosets, double cosets and conjugacy classes.
//
// Conventions used throughout the library:
//   * positions are 0-based internally (position j stands for phi_{j+1} H_0);
//   * a bit vector f is a Bits word with bit j holding f(j+1);
//   * (f, s)(f', s') = (f + s.f', s s') with (s.f')(j) = f'(s^{-1} j);
//   * permutations compose as functions: (s s')(j) = s(s'(j)).

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reflexlab/errors.hpp"

namespace reflexlab {

inline constexpr std::size_t kMaxDegree = 20;
inline constexpr std::size_t kDefaultMaxOrder = 100000;

using Bits = std::uint32_t;

inline Bits all_ones(std::size_t n) { return n >= 32 ? ~Bits{0} : ((Bits{1} << n) - 1); }
inline bool test_bit(Bits b, std::size_t pos) { return ((b >> pos) & 1u) != 0; }
inline int parity(Bits b) { return std::popcount(b) & 1; }

/// Character k of the result is f(k+1).
inline std::string bits_to_string(Bits b, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t k = 0; k < n; ++k)
    if (test_bit(b, k)) s[k] = '1';
  return s;
}

inline Bits bits_from_string(std::string_view s) {
  if (s.size() > kMaxDegree) throw InputError("bit string longer than the degree cap");
  Bits b = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '1')
      b |= Bits{1} << k;
    else if (s[k] != '0')
      throw InputError("bit string may only contain 0 and 1: '" + std::string(s) + "'");
  }
  return b;
}

class SignedPerm {
 public:
  SignedPerm() = default;

  /// The identity (0, id) of degree n.
  explicit SignedPerm(std::size_t degree) : degree_(checked_degree(degree)) {
    for (std::size_t j = 0; j < degree; ++j) perm_[j] = static_cast<std::uint8_t>(j);
  }

  /// `images` holds the 0-based one-line notation of sigma.
  SignedPerm(Bits signs, std::span<const std::size_t> images)
      : degree_(checked_degree(images.size())), signs_(signs) {
    Bits seen = 0;
    for (std::size_t j = 0; j < images.size(); ++j) {
      if (images[j] >= images.size() || test_bit(seen, images[j]))
        throw InputError("permutation images do not form a bijection");
      seen |= Bits{1} << images[j];
      perm_[j] = static_cast<std::uint8_t>(images[j]);
    }
    if ((signs & ~all_ones(images.size())) != 0)
      throw InputError("sign vector has bits beyond the degree");
  }

  static SignedPerm from_one_line(Bits signs, std::span<const int> images_1based) {
    std::vector<std::size_t> images;
    images.reserve(images_1based.size());
    for (int v : images_1based) {
      if (v < 1) throw InputError("permutation images must be positive");
      images.push_back(static_cast<std::size_t>(v - 1));
    }
    return SignedPerm(signs, images);
  }

  /// iota = (1, id).
  static SignedPerm iota(std::size_t degree) {
    SignedPerm p(degree);
    p.signs_ = all_ones(degree);
    return p;
  }

  std::size_t degree() const { return degree_; }
  Bits signs() const { return signs_; }
  std::size_t image(std::size_t pos) const { return perm_[pos]; }

  bool perm_is_identity() const {
    for (std::size_t j = 0; j < degree_; ++j)
      if (perm_[j] != j) return false;
    return true;
  }
  bool is_identity() const { return signs_ == 0 && perm_is_identity(); }

  /// (sigma . f)(j) = f(sigma^{-1} j), i.e. bit sigma(i) of the result is bit i of f.
  Bits act(Bits f) const {
    Bits out = 0;
    for (std::size_t i = 0; i < degree_; ++i)
      if (test_bit(f, i)) out |= Bits{1} << perm_[i];
    return out;
  }

  /// (0, sigma).
  SignedPerm perm_part() const {
    SignedPerm p = *this;
    p.signs_ = 0;
    return p;
  }

  SignedPerm with_signs(Bits signs) const {
    SignedPerm p = *this;
    p.signs_ = signs & all_ones(degree_);
    return p;
  }

  friend SignedPerm compose(const SignedPerm& a, const SignedPerm& b) {
    if (a.degree_ != b.degree_) throw InputError("compose: degree mismatch");
    SignedPerm out;
    out.degree_ = a.degree_;
    out.signs_ = a.signs_ ^ a.act(b.signs_);
    for (std::size_t j = 0; j < a.degree_; ++j) out.perm_[j] = a.perm_[b.perm_[j]];
    return out;
  }

  friend SignedPerm inverse(const SignedPerm& a) {
    SignedPerm out;
    out.degree_ = a.degree_;
    for (std::size_t j = 0; j < a.degree_; ++j) out.perm_[a.perm_[j]] = static_cast<std::uint8_t>(j);
    out.signs_ = out.act(a.signs_);
    return out;
  }

  friend bool operator==(const SignedPerm& a, const SignedPerm& b) {
    return a.degree_ == b.degree_ && a.signs_ == b.signs_ && a.perm_ == b.perm_;
  }

  /// Canonical order: one-line permutation first, then the sign string f(1) f(2) ...
  friend std::strong_ordering operator<=>(const SignedPerm& a, const SignedPerm& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    for (std::size_t j = 0; j < a.degree_; ++j)
      if (auto c = a.perm_[j] <=> b.perm_[j]; c != 0) return c;
    Bits diff = a.signs_ ^ b.signs_;
    if (diff == 0) return std::strong_ordering::equal;
    std::size_t first = static_cast<std::size_t>(std::countr_zero(diff));
    return test_bit(a.signs_, first) ? std::strong_ordering::greater : std::strong_ordering::less;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull ^ signs_;
    for (std::size_t j = 0; j < degree_; ++j) {
      h ^= perm_[j];
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

 private:
  static std::uint8_t checked_degree(std::size_t n) {
    if (n > kMaxDegree)
      throw ResourceError("degree " + std::to_string(n) + " exceeds the cap of " +
                          std::to_string(kMaxDegree));
    return static_cast<std::uint8_t>(n);
  }

  std::array<std::uint8_t, kMaxDegree> perm_{};
  std::uint8_t degree_ = 0;
  Bits signs_ = 0;
};

SignedPerm compose(const SignedPerm& a, const SignedPerm& b);
SignedPerm inverse(const SignedPerm& a);

struct SignedPermHash {
  std::size_t operator()(const SignedPerm& p) const { return p.hash(); }
};

/// "signs=0101 perm=2 1 3 4"
inline std::string to_string(const SignedPerm& p) {
  std::string s = "signs=" + bits_to_string(p.signs(), p.degree()) + " perm=";
  for (std::size_t j = 0; j < p.degree(); ++j) {
    if (j) s += ' ';
    s += std::to_string(p.image(j) + 1);
  }
  return s;
}

/// Sorted positions of a subset of a parent Group.
using ElementSet = std::vector<std::size_t>;

class Group {
 public:
  static constexpr std::size_t kTableLimit = 1024;

  /// `elements` must be duplicate-free and closed; they are sorted here.
  Group(std::size_t degree, std::vector<SignedPerm> generators, std::vector<SignedPerm> elements)
      : degree_(degree), generators_(std::move(generators)), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    index_.reserve(elements_.size() * 2);
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
    if (index_.size() != elements_.size()) throw ModelError("group elements are not distinct");
    inverse_.resize(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) inverse_[i] = index_of(reflexlab::inverse(elements_[i]));
    if (elements_.size() <= kTableLimit) {
      const std::size_t n = elements_.size();
      table_.resize(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          table_[i * n + j] = static_cast<std::uint32_t>(index_of(compose(elements_[i], elements_[j])));
    }
  }

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const SignedPerm& element(std::size_t i) const { return elements_[i]; }
  const std::vector<SignedPerm>& elements() const { return elements_; }
  const std::vector<SignedPerm>& generators() const { return generators_; }
  std::size_t identity() const { return 0; }

  std::optional<std::size_t> find(const SignedPerm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const SignedPerm& p) const { return index_.count(p) != 0; }

  std::size_t index_of(const SignedPerm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw InputError("element " + to_string(p) + " is not in the group");
    return it->second;
  }

  std::size_t multiply(std::size_t i, std::size_t j) const {
    if (!table_.empty()) return table_[i * elements_.size() + j];
    return index_of(compose(elements_[i], elements_[j]));
  }
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  std::size_t conjugate(std::size_t g, std::size_t x) const { return multiply(multiply(g, x), inverse_[g]); }

  ElementSet all() const {
    ElementSet s(order());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
    return s;
  }

  template <class Pred>
  ElementSet select(Pred&& pred) const {
    ElementSet s;
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (pred(elements_[i])) s.push_back(i);
    return s;
  }

 private:
  std::size_t degree_;
  std::vector<SignedPerm> generators_;
  std::vector<SignedPerm> elements_;
  std::unordered_map<SignedPerm, std::size_t, SignedPermHash> index_;
  std::vector<std::size_t> inverse_;
  std::vector<std::uint32_t> table_;
};

/// Breadth-first closure of `generators` inside (Z/2)^N x| S_N.
inline Group close(std::size_t degree, const std::vector<SignedPerm>& generators,
                   std::size_t max_order = kDefaultMaxOrder) {
  if (degree > kMaxDegree)
    throw ResourceError("degree " + std::to_string(degree) + " exceeds the cap of " +
                        std::to_string(kMaxDegree));
  for (const auto& g : generators)
    if (g.degree() != degree) throw InputError("generator degree differs from the group degree");

  std::vector<SignedPerm> elements{SignedPerm(degree)};
  std::unordered_map<SignedPerm, std::size_t, SignedPermHash> seen{{elements[0], 0}};
  for (std::size_t next = 0; next < elements.size(); ++next) {
    for (const auto& g : generators) {
      SignedPerm y = compose(g, elements[next]);
      if (seen.emplace(y, elements.size()).second) {
        elements.push_back(y);
        if (elements.size() > max_order)
          throw ResourceError("group closure exceeds the order cap of " + std::to_string(max_order));
      }
    }
  }
  return Group(degree, generators, std::move(elements));
}

/// Subgroup test in O(|S| log^2 |S|): grow a closure from greedily chosen
/// generators and require it to stay inside S and end equal to S.
inline bool is_subgroup(const Group& g, const ElementSet& s) {
  if (s.empty() || !std::is_sorted(s.begin(), s.end())) return false;
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
  std::vector<char> in_s(g.order(), 0);
  for (std::size_t x : s) {
    if (x >= g.order()) return false;
    in_s[x] = 1;
  }
  if (!in_s[g.identity()]) return false;

  std::vector<char> in_h(g.order(), 0);
  std::vector<std::size_t> h{g.identity()};
  in_h[g.identity()] = 1;
  std::vector<std::size_t> gens;
  for (std::size_t x : s) {
    if (in_h[x]) continue;
    gens.push_back(x);
    // Closure of the enlarged generating set, starting from what we have.
    std::vector<std::size_t> frontier = h;
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      for (std::size_t gen : gens) {
        std::size_t y = g.multiply(gen, frontier[k]);
        if (in_h[y]) continue;
        if (!in_s[y]) return false;
        in_h[y] = 1;
        h.push_back(y);
        frontier.push_back(y);
      }
    }
  }
  return h.size() == s.size();
}

inline void require_subgroup(const Group& g, const ElementSet& s, const char* what) {
  if (!is_subgroup(g, s)) throw InputError(std::string(what) + " is not a subgroup");
}

/// Subgroup generated by the given elements.
inline ElementSet generated_subgroup(const Group& g, const ElementSet& gens) {
  std::vector<char> in_h(g.order(), 0);
  std::vector<std::size_t> h{g.identity()};
  in_h[g.identity()] = 1;
  for (std::size_t k = 0; k < h.size(); ++k)
    for (std::size_t gen : gens) {
      std::size_t y = g.multiply(gen, h[k]);
      if (!in_h[y]) {
        in_h[y] = 1;
        h.push_back(y);
      }
    }
  std::sort(h.begin(), h.end());
  return h;
}

inline ElementSet intersect(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_subset(const ElementSet& a, const ElementSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// A partition of G into cosets (or double cosets), with the canonically
/// least element of each block as its representative.
struct CosetDecomposition {
  ElementSet subgroup;        // S for gS / Sg; A for A g B
  ElementSet right_subgroup;  // B for A g B, empty otherwise
  std::vector<std::size_t> reps;
  std::vector<std::size_t> membership;  // element -> block id
  std::vector<ElementSet> cosets;

  std::size_t count() const { return reps.size(); }
  std::size_t block_of(std::size_t element) const { return membership[element]; }
};

namespace detail {

template <class BlockOf>
CosetDecomposition partition_by(const Group& g, BlockOf&& block_of) {
  CosetDecomposition d;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  d.membership.assign(g.order(), kUnset);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (d.membership[x] != kUnset) continue;
    const std::size_t id = d.reps.size();
    ElementSet block = block_of(x);
    std::sort(block.begin(), block.end());
    block.erase(std::unique(block.begin(), block.end()), block.end());
    for (std::size_t y : block) {
      if (d.membership[y] != kUnset) throw ModelError("cosets overlap");
      d.membership[y] = id;
    }
    d.reps.push_back(x);
    d.cosets.push_back(std::move(block));
  }
  return d;
}

}  // namespace detail

/// Left cosets xS.
inline CosetDecomposition left_cosets(const Group& g, const ElementSet& s) {
  require_subgroup(g, s, "left_cosets: S");
  auto d = detail::partition_by(g, [&](std::size_t x) {
    ElementSet block;
    block.reserve(s.size());
    for (std::size_t h : s) block.push_back(g.multiply(x, h));
    return block;
  });
  d.subgroup = s;
  return d;
}

/// Right cosets Sx.
inline CosetDecomposition right_cosets(const Group& g, const ElementSet& s) {
  require_subgroup(g, s, "right_cosets: S");
  auto d = detail::partition_by(g, [&](std::size_t x) {
    ElementSet block;
    block.reserve(s.size());
    for (std::size_t h : s) block.push_back(g.multiply(h, x));
    return block;
  });
  d.subgroup = s;
  return d;
}

/// Double cosets A x B.
inline CosetDecomposition double_cosets(const Group& g, const ElementSet& a, const ElementSet& b) {
  require_subgroup(g, a, "double_cosets: A");
  require_subgroup(g, b, "double_cosets: B");
  auto d = detail::partition_by(g, [&](std::size_t x) {
    ElementSet xb;
    xb.reserve(b.size());
    for (std::size_t h : b) xb.push_back(g.multiply(x, h));
    ElementSet block;
    block.reserve(a.size() * b.size());
    for (std::size_t k : a)
      for (std::size_t y : xb) block.push_back(g.multiply(k, y));
    return block;
  });
  d.subgroup = a;
  d.right_subgroup = b;
  return d;
}

struct ClassPartition {
  std::vector<ElementSet> classes;      // ordered by least member
  std::vector<std::size_t> class_of;    // element -> class id
};

inline ClassPartition conjugacy_classes(const Group& g) {
  // Orbits under conjugation by the generators are the full classes.
  ElementSet gens;
  for (const auto& p : g.generators()) gens.push_back(g.index_of(p));
  ClassPartition out;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  out.class_of.assign(g.order(), kUnset);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (out.class_of[x] != kUnset) continue;
    const std::size_t id = out.classes.size();
    ElementSet cls{x};
    out.class_of[x] = id;
    for (std::size_t k = 0; k < cls.size(); ++k)
      for (std::size_t gen : gens) {
        std::size_t y = g.conjugate(gen, cls[k]);
        if (out.class_of[y] == kUnset) {
          out.class_of[y] = id;
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

/// Parsed generator file.
struct GeneratorFile {
  std::size_t degree = 0;
  std::vector<SignedPerm> generators;
};

/// Grammar (one directive per line, '#' starts a comment, blank lines ignored):
///
///     degree <N>
///     signs=<N characters 0/1> perm=<images of 1..N separated by spaces>
///
/// The degree line must come first. Errors cite the 1-based line number.
inline GeneratorFile parse_generator_file(std::istream& in) {
  GeneratorFile out;
  bool have_degree = false;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) -> InputError {
    return InputError("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string head;
    if (!(tokens >> head)) continue;
    if (head == "degree") {
      if (have_degree) throw fail("duplicate degree line");
      long n = -1;
      std::string extra;
      if (!(tokens >> n) || n < 1 || (tokens >> extra)) throw fail("expected 'degree <positive integer>'");
      if (static_cast<std::size_t>(n) > kMaxDegree)
        throw fail("degree " + std::to_string(n) + " exceeds the cap of " + std::to_string(kMaxDegree));
      out.degree = static_cast<std::size_t>(n);
      have_degree = true;
      continue;
    }
    if (head.rfind("signs=", 0) != 0) throw fail("expected 'degree' or 'signs=...'");
    if (!have_degree) throw fail("generator before the degree line");
    std::string sign_str = head.substr(6);
    if (sign_str.size() != out.degree)
      throw fail("sign vector has " + std::to_string(sign_str.size()) + " bits, expected " +
                 std::to_string(out.degree));
    Bits signs = 0;
    try {
      signs = bits_from_string(sign_str);
    } catch (const InputError& e) {
      throw fail(e.what());
    }
    std::string perm_head;
    if (!(tokens >> perm_head) || perm_head.rfind("perm=", 0) != 0) throw fail("expected 'perm=' after the signs");
    std::vector<int> images;
    std::string first = perm_head.substr(5);
    std::string tok;
    auto push = [&](const std::string& t) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(t, &used);
      } catch (const std::exception&) {
        throw fail("bad permutation image '" + t + "'");
      }
      if (used != t.size()) throw fail("bad permutation image '" + t + "'");
      images.push_back(v);
    };
    if (!first.empty()) push(first);
    while (tokens >> tok) push(tok);
    if (images.size() != out.degree)
      throw fail("permutation has " + std::to_string(images.size()) + " images, expected " +
                 std::to_string(out.degree));
    try {
      out.generators.push_back(SignedPerm::from_one_line(signs, images));
    } catch (const InputError& e) {
      throw fail(e.what());
    }
  }
  if (!have_degree) throw InputError("line " + std::to_string(line_no) + ": missing 'degree' line");
  return out;
}

inline std::string format_generator_file(const GeneratorFile& file) {
  std::string s = "degree " + std::to_string(file.degree) + "\n";
  for (const auto& g : file.generators) s += to_string(g) + "\n";
  return s;
}

}  // namespace reflexlab
