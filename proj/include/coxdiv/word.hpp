#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "coxdiv/presentation.hpp"

namespace coxdiv {

// Letters of a word packed one generator index per char.
using Letters = std::string;

// A word in the generators, not necessarily reduced.
struct Word {
  std::vector<Gen> letters;

  // whitespace- or comma-separated generator names; "" parses to the identity
  static Word parse(const PresentationGraph& g, const std::string& text);
};

namespace detail {

// Appends s to a reduced word, keeping it reduced: scanning right to left, s
// deletes the first equal letter it can commute past, blocks on the first
// non-commuting letter, and is appended otherwise. One pass, O(length).
inline void push_letter(Letters& w, Gen s, const PresentationGraph& g) {
  for (std::size_t i = w.size(); i-- > 0;) {
    const Gen x = static_cast<Gen>(w[i]);
    if (x == s) {
      w.erase(i, 1);
      return;
    }
    if (!g.commute(x, s)) break;
  }
  w.push_back(static_cast<char>(s));
}

// Rewrites a reduced word to the ShortLex-least member of its commutation
// class: repeatedly emit the smallest letter whose occurrence commutes with
// everything still ahead of it (lex-least topological order of the
// dependence order). Adjacent-swap local search is not enough here.
inline void canonicalize(Letters& w, const PresentationGraph& g) {
  const std::size_t n = w.size();
  if (n < 2) return;
  Letters rest = w;
  w.clear();
  while (!rest.empty()) {
    std::uint64_t blocked = 0;
    std::size_t pick = rest.size();
    Gen best = kMaxRank;
    for (std::size_t p = 0; p < rest.size(); ++p) {
      const Gen x = static_cast<Gen>(rest[p]);
      if (!((blocked >> x) & 1u) && x < best) {
        best = x;
        pick = p;
        if (best == 0) break;
      }
      blocked |= ~g.commute_mask(x);
    }
    w.push_back(static_cast<char>(best));
    rest.erase(pick, 1);
  }
}

// Bit s set iff ws is shorter than w (right descent), for reduced w.
inline std::uint64_t right_descents(const Letters& w, const PresentationGraph& g) {
  std::uint64_t blocked = 0, desc = 0;
  for (std::size_t i = w.size(); i-- > 0;) {
    const Gen x = static_cast<Gen>(w[i]);
    if (!((blocked >> x) & 1u)) desc |= std::uint64_t{1} << x;
    blocked |= ~g.commute_mask(x);
  }
  return desc;
}

// Reduces an arbitrary letter sequence in place (result not canonicalized).
inline void reduce(Letters& w, const PresentationGraph& g) {
  Letters out;
  out.reserve(w.size());
  for (char c : w) push_letter(out, static_cast<Gen>(c), g);
  w.swap(out);
}

}  // namespace detail

// Canonical (reduced, ShortLex-least) representative of a group element.
// Instances are only produced by the factory functions below, so equality of
// elements is equality of letter strings.
class NormalForm {
 public:
  NormalForm() = default;  // identity

  const Letters& letters() const { return s_; }
  std::size_t length() const { return s_.size(); }
  bool empty() const { return s_.empty(); }
  Gen at(std::size_t i) const { return static_cast<Gen>(s_[i]); }

  bool operator==(const NormalForm& o) const { return s_ == o.s_; }
  bool operator!=(const NormalForm& o) const { return s_ != o.s_; }

  // display form, generator names space-separated; identity prints as "e"
  std::string str(const PresentationGraph& g) const;

  // Wraps a string that is already canonical (reduced + ShortLex-least).
  // Callers outside the factory functions should have a proof in hand.
  static NormalForm adopt_canonical(Letters canonical) { return NormalForm(std::move(canonical)); }

 private:
  explicit NormalForm(Letters s) : s_(std::move(s)) {}
  Letters s_;
};

// ShortLex order: length first, then lexicographic on generator indices.
inline bool shortlex_less(const NormalForm& a, const NormalForm& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.letters() < b.letters();
}

// Subset of generators as a bitmask.
class GenSet {
 public:
  GenSet() = default;
  GenSet(const PresentationGraph& g, const std::vector<std::string>& names);
  static GenSet all(const PresentationGraph& g);

  bool contains(Gen s) const { return (bits_ >> s) & 1u; }
  std::uint64_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  int size() const;
  std::vector<Gen> members() const;
  void add(Gen s) { bits_ |= std::uint64_t{1} << s; }

  bool operator==(const GenSet& o) const { return bits_ == o.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

// --- element arithmetic -----------------------------------------------------

// Canonical form of an arbitrary word; letters are validated against g.
NormalForm normal_form(const Word& w, const PresentationGraph& g);

// True iff no letter cancels during reduction (geodesic spelling).
bool is_reduced(const Word& w, const PresentationGraph& g);

NormalForm right_mul(const NormalForm& x, Gen s, const PresentationGraph& g);
NormalForm mul(const NormalForm& x, const NormalForm& y, const PresentationGraph& g);
NormalForm inverse(const NormalForm& x, const PresentationGraph& g);

// d(u, v) in the word metric, no canonicalization pass needed.
std::int64_t word_distance(const NormalForm& u, const NormalForm& v, const PresentationGraph& g);

// True iff x lies in the special subgroup generated by sub.
bool subgroup_membership(const NormalForm& x, const GenSet& sub, const PresentationGraph& g);

// ShortLex-least element of the left coset x * <sub>; its length is
// d(x, x<sub>) and it is the unique element with no right descent in sub.
NormalForm coset_min_rep(const NormalForm& x, const GenSet& sub, const PresentationGraph& g);

}  // namespace coxdiv
