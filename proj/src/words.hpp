#pragma once

/*
 * Curves on punctured surfaces as cyclic words in a free fundamental group.
 *
 * The surface S_{g,n} (n >= 1) deformation retracts onto a ribbon graph
 * with one vertex and rank r = 2g + n - 1 loops. Each generator contributes
 * two ports on the boundary of the vertex disk (one where the loop leaves,
 * one where it returns); their counterclockwise order is
 *
 *     a1 b1 a1' b1'  ...  ag bg ag' bg'  c1 c1'  ...  c(n-1) c(n-1)'
 *
 * with handle generators first and one generator per puncture after.
 * Generators are named a, b, c, ... in that order. A letter l is traversed
 * by leaving the vertex through port l and entering through port l'.
 *
 * Intersection numbers count linked pairs of occurrences: two bi-infinite
 * lines that share a maximal common segment cross there exactly when they
 * arrive on one side of each other and leave on the other.
 */

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "common.hpp"
#include "farey.hpp"

namespace curvebound::words {

/// 2 * generator + (1 if inverse).
using Letter = std::uint16_t;
inline Letter inverse(Letter l) { return static_cast<Letter>(l ^ 1u); }

class CyclicWord;

class PuncturedSurface {
 public:
  PuncturedSurface(unsigned genus, unsigned punctures);
  /// Parses "g,n".
  static PuncturedSurface parse(std::string_view text);

  unsigned genus() const { return genus_; }
  unsigned punctures() const { return punctures_; }
  unsigned rank() const { return rank_; }
  int complexity() const { return 3 * static_cast<int>(genus_) + static_cast<int>(punctures_) - 3; }
  std::string str() const;

  unsigned port_count() const { return 2 * rank_; }
  /// Steps counterclockwise from port `from` to port `to`, in [0, 2r).
  unsigned rank_from(Letter from, Letter to) const {
    return (position_[to] + port_count() - position_[from]) % port_count();
  }

  std::string letter_name(Letter l) const;
  /// Letter of a generator name such as "b"; raises parse on unknown names.
  Letter letter_of(std::string_view name, bool inverted) const;

  /// One primitive word per puncture, read around the vertex ports.
  const std::vector<std::vector<Letter>>& boundary_words() const { return boundary_; }
  bool is_peripheral(const CyclicWord& w) const;

  friend bool operator==(const PuncturedSurface& a, const PuncturedSurface& b) {
    return a.genus_ == b.genus_ && a.punctures_ == b.punctures_;
  }

 private:
  unsigned genus_;
  unsigned punctures_;
  unsigned rank_;
  std::vector<unsigned> position_;
  std::vector<std::vector<Letter>> boundary_;
};

/// Freely and cyclically reduced word, stored in the lexicographically
/// least rotation among the word and its inverse (so it names an
/// unoriented free homotopy class).
class CyclicWord {
 public:
  CyclicWord() = default;
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend bool operator<(const CyclicWord& a, const CyclicWord& b) { return a.letters_ < b.letters_; }

 private:
  friend CyclicWord reduce(std::span<const Letter> letters);
  std::vector<Letter> letters_;
};

std::vector<Letter> freely_reduce(std::span<const Letter> letters);
std::vector<Letter> invert(std::span<const Letter> letters);
CyclicWord reduce(std::span<const Letter> letters);

/// Whitespace-optional letters, each optionally followed by ', ⁻¹ or ^-1.
CyclicWord parse_word(const PuncturedSurface& s, std::string_view text);
std::vector<Letter> parse_letters(const PuncturedSurface& s, std::string_view text);
std::string to_string(const PuncturedSurface& s, std::span<const Letter> letters);
std::string to_string(const PuncturedSurface& s, const CyclicWord& w);

struct Root {
  CyclicWord root;
  unsigned power;
};
Root primitive_root(const CyclicWord& w);

u64 geometric_intersection(const PuncturedSurface& s, const CyclicWord& u, const CyclicWord& w);
u64 self_intersection(const PuncturedSurface& s, const CyclicWord& w);

/// A primitive word certified to have no self-intersections.
class SimpleCurve {
 public:
  static SimpleCurve certify(const PuncturedSurface& s, const CyclicWord& w);
  const CyclicWord& word() const { return word_; }
  friend bool operator==(const SimpleCurve&, const SimpleCurve&) = default;

 private:
  explicit SimpleCurve(CyclicWord w) : word_(std::move(w)) {}
  CyclicWord word_;
};

/// Representative of T_a^n applied to the class of w.
CyclicWord dehn_twist(const PuncturedSurface& s, const SimpleCurve& a, i64 n, const CyclicWord& w);

/// Simple representative of a slope on S_{1,1} or S_{0,4}. On S_{1,1} the
/// word has q letters a and |p| letters b (or b'); on S_{0,4} the slopes
/// 0/1 and 1/0 are "a b" and "b c".
SimpleCurve slope_to_word(const PuncturedSurface& s, const farey::Slope& slope);
/// Factor relating word intersections to the Farey determinant (1 or 2).
u64 bridge_factor(const PuncturedSurface& s);
/// Twist power on slopes that realises one Dehn twist of the word model.
i64 bridge_twist_multiplier(const PuncturedSurface& s);

/// Simple, primitive, non-peripheral classes of word length <= max_length.
std::vector<SimpleCurve> short_simple_curves(const PuncturedSurface& s, unsigned max_length);

}  // namespace curvebound::words
