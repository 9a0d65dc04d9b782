#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coxdiv/errors.hpp"

namespace coxdiv {

using Gen = std::uint8_t;  // generator index, < rank

constexpr int kMaxRank = 64;  // generator subsets fit in one word of bits

// Finite simplicial graph defining a right-angled Coxeter group: one
// involutive generator per vertex, st = ts exactly for edges {s,t}.
class PresentationGraph {
 public:
  PresentationGraph(std::vector<std::string> names, std::vector<std::pair<Gen, Gen>> edges);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::string& name(Gen s) const { return names_[s]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::pair<Gen, Gen>>& edges() const { return edges_; }

  bool commute(Gen s, Gen t) const { return (commute_[s] >> t) & 1u; }
  // bit t set iff t commutes with s (never includes s itself)
  std::uint64_t commute_mask(Gen s) const { return commute_[s]; }

  // index of a named generator, or throws invalid_parameter
  Gen gen(const std::string& name) const;

  // stable textual identity: sorted-invariant serialization used as a cache key
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::pair<Gen, Gen>> edges_;
  std::vector<std::uint64_t> commute_;
  std::string fingerprint_;
};

enum class FamilyKind { gamma, omega };

struct GroupFamily {
  FamilyKind kind;
  int d;
};

// Builtin family graphs. gamma:d has vertices a0..ad, b0..bd; omega:d appends
// c1, c2 on a path from b1 to ad. Requires d >= 1.
PresentationGraph build_family(GroupFamily family);

// Parses "gamma:2" / "omega:1" style family names.
GroupFamily parse_family(const std::string& text);

// Reads the {"generators": [...], "edges": [[..], ..]} JSON form. Errors carry
// the offending field; out-of-range or repeated edges are rejected.
PresentationGraph read_graph_json(std::istream& in, const std::string& origin);
PresentationGraph read_graph_file(const std::string& path);

}  // namespace coxdiv
