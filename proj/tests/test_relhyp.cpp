#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "coxdiv/geodesic.hpp"
#include "coxdiv/relhyp.hpp"
#include "support/oracle.hpp"

using namespace coxdiv;

namespace {

NormalForm nf(const PresentationGraph& g, const std::string& text) {
  return normal_form(Word::parse(g, text), g);
}

}  // namespace

TEST_CASE("the declared peripheral structure strips the cone letters") {
  const auto g = build_family({FamilyKind::omega, 2});
  const auto P = PeripheralStructure::gamma_inside_omega(g);
  REQUIRE(P.subgroups.size() == 1);
  CHECK(P.subgroups[0].size() == 6);
  CHECK_FALSE(P.subgroups[0].contains(g.gen("c1")));
  CHECK_FALSE(P.subgroups[0].contains(g.gen("c2")));
  CHECK(P.subgroups[0].contains(g.gen("a0")));
  CHECK(P.subgroups[0].contains(g.gen("b2")));

  const auto plain = build_family({FamilyKind::gamma, 2});
  CHECK_THROWS_AS((void)PeripheralStructure::gamma_inside_omega(plain), Error);
}

TEST_CASE("coset enumeration over the small omega balls") {
  SUBCASE("omega:1 at radius 1") {
    const auto g = build_family({FamilyKind::omega, 1});
    const auto ball = build_ball(g, {}, 1);
    const auto P = PeripheralStructure::gamma_inside_omega(g);
    const auto enumed = enumerate_cosets(ball, P);
    REQUIRE(enumed.cosets.size() == 3);
    CHECK(enumed.subgroup_count == 1);
    CHECK(enumed.cosets[0].min_rep == NormalForm{});
    CHECK(enumed.cosets[1].min_rep == nf(g, "c1"));
    CHECK(enumed.cosets[2].min_rep == nf(g, "c2"));
    CHECK(enumed.member_count == std::vector<std::uint32_t>{5, 1, 1});
  }
  SUBCASE("omega:2 at radius 2") {
    const auto g = build_family({FamilyKind::omega, 2});
    const auto ball = build_ball(g, {}, 2);
    const auto P = PeripheralStructure::gamma_inside_omega(g);
    const auto enumed = enumerate_cosets(ball, P);
    REQUIRE(enumed.cosets.size() == 14);
    auto counts = enumed.member_count;
    std::sort(counts.rbegin(), counts.rend());
    CHECK(counts[0] == 29);
    CHECK(counts[1] == 7);
    CHECK(counts[2] == 7);
    for (std::size_t i = 3; i < counts.size(); ++i) CHECK(counts[i] == 1);
  }
}

TEST_CASE("coset assignment is a partition refined by right multiplication") {
  const auto g = build_family({FamilyKind::omega, 1});
  const auto ball = build_ball(g, {}, 4);
  const auto P = PeripheralStructure::gamma_inside_omega(g);
  const auto enumed = enumerate_cosets(ball, P);

  std::uint64_t total = 0;
  for (auto c : enumed.member_count) total += c;
  CHECK(total == ball.size());

  CHECK(std::is_sorted(enumed.cosets.begin(), enumed.cosets.end()));

  for (std::uint32_t v = 0; v < ball.size(); ++v) {
    const auto elem = ball.element(v);
    const auto& assigned = enumed.cosets[enumed.coset_at(v, 0)];
    // the stored representative is the library's minimal coset element
    CHECK(assigned.min_rep == coset_min_rep(elem, P.subgroups[0], g));
    // moving within the subgroup never changes the coset
    for (Gen s : P.subgroups[0].members()) {
      const auto moved = right_mul(elem, s, g);
      const auto mid = ball.find(moved);
      if (mid) CHECK(enumed.coset_at(*mid, 0) == enumed.coset_at(v, 0));
    }
  }
}

TEST_CASE("coning glues each coset to one apex of weight one half") {
  const auto g = build_family({FamilyKind::omega, 1});
  const auto ball = build_ball(g, {}, 1);
  const auto P = PeripheralStructure::gamma_inside_omega(g);
  const auto cb = build_coned_off(ball, P);

  CHECK(cb.group_vertex_count() == 7);
  CHECK(cb.cone_count() == 3);
  CHECK(cb.vertex_count() == 10);

  const auto e_id = ball.id_of(NormalForm{});
  const auto a0_id = ball.id_of(nf(g, "a0"));
  const auto b1_id = ball.id_of(nf(g, "b1"));
  const auto c1_id = ball.id_of(nf(g, "c1"));
  const auto c2_id = ball.id_of(nf(g, "c2"));

  // group-group edges keep weight 1 (two halves)
  CHECK(cb.edge_halves(e_id, a0_id) == 2);
  CHECK(cb.edge_halves(a0_id, e_id) == 2);
  CHECK(cb.edge_halves(a0_id, b1_id) == 0);

  // each member sees its own apex at one half
  const std::uint32_t apex_e = cb.cone_vertex(0);
  CHECK(cb.coset_of_cone(apex_e).min_rep == NormalForm{});
  CHECK(cb.edge_halves(e_id, apex_e) == 1);
  CHECK(cb.edge_halves(a0_id, apex_e) == 1);
  CHECK(cb.edge_halves(c1_id, apex_e) == 0);

  const auto [lo, hi] = cb.cone_members(0);
  CHECK(hi - lo == 5);

  // distances: two vertices of one coset are one apart through the apex
  CHECK(coned_distance(cb, a0_id, b1_id).half_units == 2);
  // a direct generator edge is not shortened
  CHECK(coned_distance(cb, e_id, c1_id).half_units == 2);
  // apex to apex of disjoint cosets costs at least a full group edge
  CHECK(coned_distance(cb, apex_e, cb.cone_vertex(1)).half_units == 4);
  CHECK(coned_distance(cb, c2_id, c2_id).half_units == 0);
}

TEST_CASE("an empty peripheral structure leaves the graph metric alone") {
  const auto g = build_family({FamilyKind::omega, 1});
  const auto ball = build_ball(g, {}, 3);
  const auto cb = build_coned_off(ball, PeripheralStructure{});
  CHECK(cb.cone_count() == 0);
  const auto u = ball.id_of(nf(g, "a1 b1 a1"));
  const auto res = coned_distance(cb, ball.id_of(NormalForm{}), u);
  CHECK(res.half_units == 6);
  CHECK(res.value() == 3.0);
}

TEST_CASE("coning every generator collapses the ball to diameter one") {
  const auto g = build_family({FamilyKind::gamma, 1});
  const auto ball = build_ball(g, {}, 3);
  PeripheralStructure everything;
  everything.subgroups.push_back(GenSet::all(g));
  const auto cb = build_coned_off(ball, everything);
  REQUIRE(cb.cone_count() == 1);
  const auto far_id = ball.id_of(nf(g, "a0 b0 a0"));
  CHECK(coned_distance(cb, ball.id_of(NormalForm{}), far_id).half_units == 2);
  CHECK(coned_distance(cb, ball.id_of(nf(g, "a0")), far_id).half_units == 2);
}

TEST_CASE("coned shortest paths are edge-valid and add up") {
  const auto g = build_family({FamilyKind::omega, 1});
  const auto ball = build_ball(g, {}, 3);
  const auto P = PeripheralStructure::gamma_inside_omega(g);
  const auto cb = build_coned_off(ball, P);
  const auto u = ball.id_of(nf(g, "a1 b1 a1"));
  const auto v = ball.id_of(nf(g, "c1 c2 a1"));
  const auto res = coned_distance(cb, u, v);
  REQUIRE(res.finite());
  const auto path = coned_shortest_path(cb, u, v);
  REQUIRE(path.size() >= 2);
  CHECK(path.front() == u);
  CHECK(path.back() == v);
  std::int64_t total = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const int w = cb.edge_halves(path[i], path[i + 1]);
    REQUIRE(w > 0);
    total += w;
  }
  CHECK(total == res.half_units);
  // the deep endpoint reaches the peripheral apex quickly
  CHECK(res.half_units <= 2 * word_distance(ball.element(u), ball.element(v), g));
  CHECK_THROWS_AS((void)coned_distance(cb, u, cb.vertex_count()), Error);
}

TEST_CASE("segments inside one coset are deep away from their endpoints") {
  const auto g = build_family({FamilyKind::omega, 1});
  const auto ball = build_ball(g, {}, 0);
  const auto P = PeripheralStructure::gamma_inside_omega(g);
  const auto axis = alpha_geodesic(g, 1);

  std::vector<NormalForm> segment;
  for (int t = 0; t < 7; ++t) segment.push_back(axis.point(t, g));  // 2R+3 vertices

  const auto ann = classify_transitions(segment, P, 1, 2, ball);
  REQUIRE(ann.classes.size() == 7);
  CHECK(ann.epsilon == 1);
  CHECK(ann.R == 2);
  CHECK(ann.deep_count() == 1);
  CHECK_FALSE(ann.multi_coset_hit());
  CHECK(ann.classes[3].cls == VertexClass::deep);
  CHECK(ann.classes[3].coset.min_rep == NormalForm{});
  CHECK(ann.classes[3].coset.subgroup_index == 0);
  for (int i : {0, 1, 2, 4, 5, 6}) CHECK(ann.classes[i].cls == VertexClass::transition);

  // translating the segment moves the deep coset with it
  std::vector<NormalForm> moved;
  const auto c1 = nf(g, "c1");
  for (const auto& x : segment) moved.push_back(mul(c1, x, g));
  const auto ann2 = classify_transitions(moved, P, 1, 2, ball);
  CHECK(ann2.classes[3].cls == VertexClass::deep);
  CHECK(ann2.classes[3].coset.min_rep == c1);
}

TEST_CASE("short segments have no room for deep vertices") {
  const auto g = build_family({FamilyKind::omega, 1});
  const auto ball = build_ball(g, {}, 0);
  const auto P = PeripheralStructure::gamma_inside_omega(g);
  const auto axis = alpha_geodesic(g, 1);
  std::vector<NormalForm> segment;
  for (int t = 0; t < 6; ++t) segment.push_back(axis.point(t, g));  // 2R+2 vertices
  const auto ann = classify_transitions(segment, P, 1, 2, ball);
  CHECK(ann.deep_count() == 0);
}

TEST_CASE("the cone-exterior ray stays in transition") {
  const auto g = build_family({FamilyKind::omega, 1});
  const auto ball = build_ball(g, {}, 0);
  const auto P = PeripheralStructure::gamma_inside_omega(g);
  const auto h = h_geodesic(g);
  std::vector<NormalForm> segment;
  for (int t = 0; t <= 8; ++t) segment.push_back(h.point(t, g));  // (c1 b0)^4
  const auto ann = classify_transitions(segment, P, 1, 2, ball);
  REQUIRE(ann.classes.size() == 9);
  CHECK(ann.deep_count() == 0);
  for (const auto& e : ann.classes) CHECK(e.cls == VertexClass::transition);
}

TEST_CASE("a product axis is deep in both factors once epsilon covers the window") {
  // grid = two commuting infinite dihedrals; take both factors as peripherals
  const auto g = build_family({FamilyKind::gamma, 1});
  const auto ball = build_ball(g, {}, 0);
  PeripheralStructure P;
  P.subgroups.push_back(GenSet(g, {"a0", "b0"}));
  P.subgroups.push_back(GenSet(g, {"a1", "b1"}));
  Word period;
  period.letters = {g.gen("a0"), g.gen("b0")};
  const GeodesicSpec axis(g, period);
  std::vector<NormalForm> segment;
  for (int t = 0; t < 9; ++t) segment.push_back(axis.point(t, g));

  // the segment runs inside the first factor, so with a tight epsilon only
  // that coset is deep
  const auto tight = classify_transitions(segment, P, 1, 2, ball);
  REQUIRE(tight.classes.size() == 9);
  CHECK(tight.deep_count() == 3);  // positions 3, 4, 5
  CHECK_FALSE(tight.multi_coset_hit());
  for (int i : {3, 4, 5}) {
    CHECK(tight.classes[i].cls == VertexClass::deep);
    REQUIRE(tight.classes[i].all_deep.size() == 1);
    CHECK(tight.classes[i].coset.subgroup_index == 0);
    CHECK(tight.classes[i].coset.min_rep == NormalForm{});
  }

  // epsilon 3 exceeds the window radius: the orthogonal factor coset through
  // the vertex turns deep, as do the parallel copies of the axis factor
  // within sideways distance 2
  const auto wide = classify_transitions(segment, P, 3, 2, ball);
  CHECK(wide.deep_count() >= tight.deep_count());
  CHECK(wide.multi_coset_hit());
  REQUIRE(wide.classes[4].cls == VertexClass::deep);
  REQUIRE(wide.classes[4].all_deep.size() == 6);
  CHECK(wide.classes[4].all_deep.front().subgroup_index == 0);
  CHECK(wide.classes[4].all_deep.front().min_rep == NormalForm{});
  CHECK(wide.classes[4].all_deep.back().subgroup_index == 1);
  CHECK(wide.classes[4].all_deep.back().min_rep == segment[4]);
}

TEST_CASE("degenerate segments are rejected") {
  const auto g = build_family({FamilyKind::omega, 1});
  const auto ball = build_ball(g, {}, 0);
  const auto P = PeripheralStructure::gamma_inside_omega(g);
  CHECK_THROWS_AS((void)classify_transitions({}, P, 1, 2, ball), Error);
  const std::vector<NormalForm> gap = {NormalForm{}, nf(g, "a0 c1")};
  CHECK_THROWS_AS((void)classify_transitions(gap, P, 1, 2, ball), Error);
  // distance-1 steps that backtrack are caught by the endpoint check
  const std::vector<NormalForm> backtrack = {nf(g, "a0"), NormalForm{}, nf(g, "a0")};
  CHECK_THROWS_AS((void)classify_transitions(backtrack, P, 1, 2, ball), Error);
  const std::vector<NormalForm> fine = {nf(g, "a0"), NormalForm{}, nf(g, "b0")};
  CHECK_THROWS_AS((void)classify_transitions(fine, P, 1, 0, ball), Error);
  CHECK_THROWS_AS((void)classify_transitions(fine, P, -1, 2, ball), Error);
  CHECK(classify_transitions(fine, P, 1, 2, ball).deep_count() == 0);
}

TEST_CASE("membership behind the classifier agrees with the matrix search") {
  // deep-at-distance-0 vertices must actually lie in the coset, checked
  // against subgroup membership computed from the representation
  const auto g = build_family({FamilyKind::omega, 1});
  const auto ball = build_ball(g, {}, 0);
  const auto P = PeripheralStructure::gamma_inside_omega(g);
  const oracle::Rep rep(g);
  std::vector<Gen> sub_letters;
  for (Gen s : P.subgroups[0].members()) sub_letters.push_back(s);
  const auto keys = oracle::subgroup_keys(rep, sub_letters, 7);

  const auto axis = alpha_geodesic(g, 1);
  std::vector<NormalForm> segment;
  for (int t = 0; t < 7; ++t) segment.push_back(axis.point(t, g));
  const auto ann = classify_transitions(segment, P, 1, 2, ball);
  for (std::size_t i = 0; i < segment.size(); ++i) {
    if (ann.classes[i].cls != VertexClass::deep) continue;
    // epsilon = 1 deepness pins the vertex inside the coset itself
    const auto offset = mul(inverse(ann.classes[i].coset.min_rep, g), segment[i], g);
    std::vector<Gen> w(offset.letters().begin(), offset.letters().end());
    CHECK(keys.count(rep.key(rep.of_word(w))) == 1);
  }
}

TEST_CASE("penetration of a comparison path against a coned geodesic") {
  const auto g = build_family({FamilyKind::omega, 1});
  const auto ball = build_ball(g, {}, 3);
  const auto P = PeripheralStructure::gamma_inside_omega(g);
  const auto cb = build_coned_off(ball, P);
  const auto u = ball.id_of(nf(g, "a1 b1 a1"));
  const auto v = ball.id_of(nf(g, "b1 a1 b1"));
  const auto q = coned_shortest_path(cb, u, v);

  // the geodesic against itself has no penetration at all
  const auto self = penetration_check(cb, q, q);
  CHECK(self.max_min_dist == 0);
  CHECK(self.k_estimate == 0);
  CHECK(self.p_length_halves == coned_distance(cb, u, v).half_units);

  // a plain Cayley path between the same endpoints stays near the geodesic
  std::vector<std::uint32_t> p;
  const auto steps = nf(g, "a1 b1 a1");  // walk down to e, then up to v
  for (std::size_t i = steps.length(); i-- > 0;) {
    p.push_back(ball.id_of(NormalForm::adopt_canonical(steps.letters().substr(0, i + 1))));
  }
  p.push_back(ball.id_of(NormalForm{}));
  const auto tail = nf(g, "b1 a1 b1");
  for (std::size_t i = 1; i <= tail.length(); ++i)
    p.push_back(ball.id_of(NormalForm::adopt_canonical(tail.letters().substr(0, i))));
  REQUIRE(p.front() == u);
  REQUIRE(p.back() == v);
  const auto probe = penetration_check(cb, p, q);
  CHECK(probe.p_edge_count == 6);
  CHECK(probe.p_length_halves == 12);
  CHECK(probe.max_min_dist >= 0);
  CHECK(probe.per_vertex.size() >= 2);
  CHECK(probe.k_estimate >= 0);

  CHECK_THROWS_AS((void)penetration_check(cb, {}, q), Error);
  std::vector<std::uint32_t> wrong_end = {u, ball.id_of(nf(g, "a1 b1"))};
  CHECK_THROWS_AS((void)penetration_check(cb, wrong_end, q), Error);
}
