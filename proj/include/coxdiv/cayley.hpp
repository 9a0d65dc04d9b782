#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coxdiv/word.hpp"

namespace coxdiv {

inline constexpr std::uint32_t kNoVertex = 0xffffffffu;

struct BuildBudget {
  std::uint64_t max_vertices = 20'000'000;
  double max_seconds = 0;  // 0 = no wall-clock cap
};

// Exact ball of the Cayley graph around a basepoint. Vertices are stored as
// canonical offset words (basepoint^{-1} * element), sorted ShortLex within
// each sphere, so vertex ids are deterministic regardless of thread count.
// When the vertex budget stops growth early the completed spheres survive and
// complete() reports false.
class CayleyBall {
 public:
  const PresentationGraph& graph() const { return graph_; }
  const NormalForm& basepoint() const { return base_; }
  int radius() const { return radius_; }              // requested
  int completed_radius() const { return completed_; }  // last fully built sphere
  bool complete() const { return completed_ == radius_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(words_.size()); }

  std::uint32_t sphere_size(int r) const;
  std::uint32_t ball_size(int r) const;
  // ids of sphere r are the contiguous range [first, second)
  std::pair<std::uint32_t, std::uint32_t> sphere_range(int r) const;

  int dist_from_base(std::uint32_t id) const;
  std::uint32_t neighbor(std::uint32_t id, Gen s) const {
    return adj_[static_cast<std::size_t>(id) * graph_.rank() + s];
  }

  // canonical offset word of a vertex (basepoint-relative)
  const std::string& offset_letters(std::uint32_t id) const { return words_[id]; }
  NormalForm offset(std::uint32_t id) const { return NormalForm::adopt_canonical(words_[id]); }
  // absolute element
  NormalForm element(std::uint32_t id) const;

  std::optional<std::uint32_t> find(const NormalForm& g) const;
  std::uint32_t id_of(const NormalForm& g) const;  // not_found when absent

 private:
  friend CayleyBall build_ball(const PresentationGraph&, const NormalForm&, int,
                               const BuildBudget&, int);
  PresentationGraph graph_{{"_"}, {}};
  NormalForm base_;
  int radius_ = 0;
  int completed_ = 0;
  std::vector<std::string> words_;          // id -> offset word, sphere-major
  std::vector<std::uint32_t> level_off_;    // sphere r occupies [off[r], off[r+1])
  std::vector<std::uint32_t> adj_;          // size() * rank, kNoVertex outside
};

CayleyBall build_ball(const PresentationGraph& g, const NormalForm& base, int radius,
                      const BuildBudget& budget = {}, int threads = 1);

// Exact word metric between two ball members; computed from normal forms, so
// the value is immune to truncation. Throws not_found if either is absent.
std::int64_t distance(const CayleyBall& ball, const NormalForm& u, const NormalForm& v);

enum class PathStatus { finite, no_path_within_truncation };

struct PathQueryResult {
  PathStatus status = PathStatus::no_path_within_truncation;
  std::int64_t length = -1;  // valid when finite
  int truncation_radius = 0;
  std::vector<NormalForm> witness;  // filled on request for finite results

  bool finite() const { return status == PathStatus::finite; }
};

struct AvoidOptions {
  bool want_witness = false;
};

// Shortest u->v path through vertices at distance >= r from center, inside
// the ball. NoPathWithinTruncation does not distinguish "disconnected in the
// full graph" from "every path leaves the ball"; Finite values are upper
// bounds for the untruncated infimum.
PathQueryResult avoidant_distance(const CayleyBall& ball, const NormalForm& u,
                                  const NormalForm& v, const NormalForm& center, int r,
                                  const AvoidOptions& opt = {});

// Same with center = basepoint (the induced metric on the ball-complement of
// the open r-ball about the basepoint).
PathQueryResult annulus_distance(const CayleyBall& ball, const NormalForm& u,
                                 const NormalForm& v, int r, const AvoidOptions& opt = {});

// Shared immutable balls keyed by (graph, center, radius); divergence probes
// at matched truncation reuse them instead of rebuilding.
class BallCache {
 public:
  std::shared_ptr<const CayleyBall> get(const PresentationGraph& g, const NormalForm& center,
                                        int radius, const BuildBudget& budget, int threads);

 private:
  std::map<std::string, std::shared_ptr<const CayleyBall>> store_;
};

}  // namespace coxdiv
