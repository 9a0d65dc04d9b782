#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coxdiv/cayley.hpp"

namespace coxdiv {

// Collection of special subgroups acting as peripherals.
struct PeripheralStructure {
  std::vector<GenSet> subgroups;

  // the declared structure for omega graphs: one subgroup on every generator
  // except c1, c2
  static PeripheralStructure gamma_inside_omega(const PresentationGraph& omega_graph);
};

struct PeripheralCoset {
  NormalForm min_rep;
  int subgroup_index = 0;

  bool operator==(const PeripheralCoset& o) const {
    return subgroup_index == o.subgroup_index && min_rep == o.min_rep;
  }
  bool operator<(const PeripheralCoset& o) const {
    if (subgroup_index != o.subgroup_index) return subgroup_index < o.subgroup_index;
    return shortlex_less(min_rep, o.min_rep);
  }
};

// Every ball vertex assigned to its coset per subgroup, plus the
// deduplicated coset list (sorted by subgroup then ShortLex rep, so ids are
// deterministic).
struct CosetEnumeration {
  std::vector<PeripheralCoset> cosets;
  std::vector<std::uint32_t> member_count;    // parallel to cosets
  std::vector<std::uint32_t> coset_of_vertex; // [vertex * subgroup_count + s_idx]
  std::uint32_t subgroup_count = 0;

  std::uint32_t coset_at(std::uint32_t vertex, std::uint32_t s_idx) const {
    return coset_of_vertex[std::size_t(vertex) * subgroup_count + s_idx];
  }
};

CosetEnumeration enumerate_cosets(const CayleyBall& ball, const PeripheralStructure& P);

// Cayley ball plus one cone vertex per peripheral coset met by the ball;
// cone edges (member, cone) have length 1/2, group edges length 1. Vertex
// handles: [0, base.size()) are group vertices, base.size() + k is cone k.
// Holds a pointer to the base ball, which must outlive the coned ball.
class ConedOffBall {
 public:
  const CayleyBall& base() const { return *base_; }
  const CosetEnumeration& cosets() const { return cosets_; }

  std::uint32_t group_vertex_count() const { return base_->size(); }
  std::uint32_t cone_count() const { return static_cast<std::uint32_t>(cosets_.cosets.size()); }
  std::uint32_t vertex_count() const { return group_vertex_count() + cone_count(); }

  bool is_cone(std::uint32_t v) const { return v >= group_vertex_count(); }
  std::uint32_t cone_vertex(std::uint32_t coset_idx) const {
    return group_vertex_count() + coset_idx;
  }
  const PeripheralCoset& coset_of_cone(std::uint32_t v) const {
    return cosets_.cosets[v - group_vertex_count()];
  }
  // ball members of cone k
  std::pair<const std::uint32_t*, const std::uint32_t*> cone_members(std::uint32_t k) const;

  // edge weight in half-units between two vertices, or 0 if not adjacent
  int edge_halves(std::uint32_t u, std::uint32_t v) const;

 private:
  friend ConedOffBall build_coned_off(const CayleyBall&, const PeripheralStructure&);
  const CayleyBall* base_ = nullptr;
  PeripheralStructure P_;
  CosetEnumeration cosets_;
  std::vector<std::uint32_t> member_off_;  // CSR over cones
  std::vector<std::uint32_t> members_;
};

ConedOffBall build_coned_off(const CayleyBall& ball, const PeripheralStructure& P);

// Weighted shortest path; all values are exact multiples of 1/2 and carried
// in half-units. Finite answers are upper bounds exactly as in the flat ball.
struct ConedDistance {
  PathStatus status = PathStatus::no_path_within_truncation;
  std::int64_t half_units = -1;
  int truncation_radius = 0;

  bool finite() const { return status == PathStatus::finite; }
  double value() const { return half_units / 2.0; }
};

ConedDistance coned_distance(const ConedOffBall& cb, std::uint32_t u, std::uint32_t v);

// shortest coned path as a vertex sequence (group and cone handles)
std::vector<std::uint32_t> coned_shortest_path(const ConedOffBall& cb, std::uint32_t u,
                                               std::uint32_t v);

enum class VertexClass { deep, transition };

struct TransitionEntry {
  VertexClass cls = VertexClass::transition;
  PeripheralCoset coset;                  // first passing coset when deep
  std::vector<PeripheralCoset> all_deep;  // every passing coset (>1 is a warning)
};

struct TransitionAnnotation {
  int epsilon = 0;
  int R = 0;
  std::vector<TransitionEntry> classes;  // one per segment vertex

  int deep_count() const;
  bool multi_coset_hit() const;  // some vertex deep in more than one coset
};

// (epsilon,R)-deep / transition classification along a geodesic segment.
// Vertex i is eligible when both endpoints are more than R away (along the
// segment, which is geodesic); it is deep in gP when every segment vertex
// within distance R lies strictly within epsilon of gP. Coset distances are
// exact (normal-form arithmetic); the ball argument supplies the
// presentation and is never used to truncate.
TransitionAnnotation classify_transitions(const std::vector<NormalForm>& segment,
                                          const PeripheralStructure& P, int epsilon, int R,
                                          const CayleyBall& ball);

// How far a comparison path p strays from a coned geodesic q with the same
// endpoints: per group-vertex of q, the Cayley distance to the nearest group
// vertex of p; the max against log2 of p's length gives an empirical
// constant. Exploratory, nothing asserted.
struct PenetrationReport {
  std::int64_t max_min_dist = 0;
  std::vector<std::int64_t> per_vertex;  // aligned with q's group vertices
  std::int64_t p_length_halves = 0;
  std::size_t p_edge_count = 0;
  double k_estimate = 0;
};

PenetrationReport penetration_check(const ConedOffBall& cb, const std::vector<std::uint32_t>& p,
                                    const std::vector<std::uint32_t>& q);

}  // namespace coxdiv
