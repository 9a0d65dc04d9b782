#include "coxdiv/relhyp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace coxdiv {

PeripheralStructure PeripheralStructure::gamma_inside_omega(const PresentationGraph& g) {
  GenSet T;
  bool saw_cone_letter = false;
  for (int i = 0; i < g.rank(); ++i) {
    const std::string& name = g.name(static_cast<Gen>(i));
    if (name == "c1" || name == "c2") {
      saw_cone_letter = true;
      continue;
    }
    T.add(static_cast<Gen>(i));
  }
  if (!saw_cone_letter || T.empty())
    fail(Errc::invalid_parameter, "graph does not carry the omega-family c1/c2 markers");
  return PeripheralStructure{{T}};
}

CosetEnumeration enumerate_cosets(const CayleyBall& ball, const PeripheralStructure& P) {
  const auto& g = ball.graph();
  for (const auto& T : P.subgroups)
    for (Gen s : T.members())
      if (s >= g.rank()) fail(Errc::invalid_parameter, "peripheral subgroup letter out of range");

  CosetEnumeration out;
  out.subgroup_count = static_cast<std::uint32_t>(P.subgroups.size());
  out.coset_of_vertex.assign(std::size_t(ball.size()) * out.subgroup_count, 0);

  // collect (rep, subgroup) keys per vertex, dedup via ordered map for
  // deterministic ids
  std::map<PeripheralCoset, std::uint32_t> ids;
  std::vector<PeripheralCoset> per_vertex(std::size_t(ball.size()) * out.subgroup_count);
  for (std::uint32_t v = 0; v < ball.size(); ++v) {
    const NormalForm elt = ball.element(v);
    for (std::uint32_t si = 0; si < out.subgroup_count; ++si) {
      PeripheralCoset c{coset_min_rep(elt, P.subgroups[si], g), static_cast<int>(si)};
      ids.emplace(c, 0);
      per_vertex[std::size_t(v) * out.subgroup_count + si] = std::move(c);
    }
  }
  std::uint32_t next = 0;
  for (auto& [coset, id] : ids) {
    id = next++;
    out.cosets.push_back(coset);
  }
  out.member_count.assign(out.cosets.size(), 0);
  for (std::uint32_t v = 0; v < ball.size(); ++v)
    for (std::uint32_t si = 0; si < out.subgroup_count; ++si) {
      const auto& c = per_vertex[std::size_t(v) * out.subgroup_count + si];
      const std::uint32_t id = ids.find(c)->second;
      out.coset_of_vertex[std::size_t(v) * out.subgroup_count + si] = id;
      ++out.member_count[id];
    }
  return out;
}

std::pair<const std::uint32_t*, const std::uint32_t*> ConedOffBall::cone_members(
    std::uint32_t k) const {
  return {members_.data() + member_off_[k], members_.data() + member_off_[k + 1]};
}

int ConedOffBall::edge_halves(std::uint32_t u, std::uint32_t v) const {
  if (u == v) return 0;
  if (!is_cone(u) && !is_cone(v)) {
    const auto& g = base_->graph();
    for (int s = 0; s < g.rank(); ++s)
      if (base_->neighbor(u, static_cast<Gen>(s)) == v) return 2;
    return 0;
  }
  if (is_cone(u) && is_cone(v)) return 0;
  const std::uint32_t cone = is_cone(u) ? u : v;
  const std::uint32_t grp = is_cone(u) ? v : u;
  const std::uint32_t k = cone - group_vertex_count();
  const std::uint32_t si = static_cast<std::uint32_t>(cosets_.cosets[k].subgroup_index);
  return cosets_.coset_at(grp, si) == k ? 1 : 0;
}

ConedOffBall build_coned_off(const CayleyBall& ball, const PeripheralStructure& P) {
  ConedOffBall cb;
  cb.base_ = &ball;
  cb.P_ = P;
  cb.cosets_ = enumerate_cosets(ball, P);
  const std::uint32_t nc = static_cast<std::uint32_t>(cb.cosets_.cosets.size());
  cb.member_off_.assign(nc + 1, 0);
  for (std::uint32_t v = 0; v < ball.size(); ++v)
    for (std::uint32_t si = 0; si < cb.cosets_.subgroup_count; ++si)
      ++cb.member_off_[cb.cosets_.coset_at(v, si) + 1];
  for (std::uint32_t k = 0; k < nc; ++k) cb.member_off_[k + 1] += cb.member_off_[k];
  cb.members_.resize(cb.member_off_[nc]);
  std::vector<std::uint32_t> cursor(cb.member_off_.begin(), cb.member_off_.end() - 1);
  for (std::uint32_t v = 0; v < ball.size(); ++v)
    for (std::uint32_t si = 0; si < cb.cosets_.subgroup_count; ++si)
      cb.members_[cursor[cb.cosets_.coset_at(v, si)]++] = v;
  return cb;
}

namespace {

// Dijkstra in half-units over group + cone vertices; early exit at dst
// (pass kNoVertex to relax everything). Returns (dist, parent).
std::pair<std::vector<std::int64_t>, std::vector<std::uint32_t>> coned_dijkstra(
    const ConedOffBall& cb, std::uint32_t src, std::uint32_t dst) {
  const auto& ball = cb.base();
  const int n = ball.graph().rank();
  const std::uint32_t V = cb.vertex_count();
  std::vector<std::int64_t> dist(V, -1);
  std::vector<std::uint32_t> parent(V, kNoVertex);
  using Item = std::pair<std::int64_t, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[src] = 0;
  heap.push({0, src});
  while (!heap.empty()) {
    const auto [d, x] = heap.top();
    heap.pop();
    if (d != dist[x]) continue;
    if (x == dst) break;
    auto relax = [&](std::uint32_t y, std::int64_t w) {
      if (dist[y] >= 0 && dist[y] <= d + w) return;
      dist[y] = d + w;
      parent[y] = x;
      heap.push({dist[y], y});
    };
    if (!cb.is_cone(x)) {
      for (int s = 0; s < n; ++s) {
        const std::uint32_t y = ball.neighbor(x, static_cast<Gen>(s));
        if (y != kNoVertex) relax(y, 2);
      }
      for (std::uint32_t si = 0; si < cb.cosets().subgroup_count; ++si)
        relax(cb.cone_vertex(cb.cosets().coset_at(x, si)), 1);
    } else {
      const auto [lo, hi] = cb.cone_members(x - cb.group_vertex_count());
      for (const std::uint32_t* p = lo; p != hi; ++p) relax(*p, 1);
    }
  }
  return {std::move(dist), std::move(parent)};
}

void check_vertex(const ConedOffBall& cb, std::uint32_t v) {
  if (v >= cb.vertex_count()) fail(Errc::not_found, "vertex handle outside the coned ball");
}

}  // namespace

ConedDistance coned_distance(const ConedOffBall& cb, std::uint32_t u, std::uint32_t v) {
  check_vertex(cb, u);
  check_vertex(cb, v);
  ConedDistance out;
  out.truncation_radius = cb.base().completed_radius();
  const auto [dist, parent] = coned_dijkstra(cb, u, v);
  if (dist[v] >= 0) {
    out.status = PathStatus::finite;
    out.half_units = dist[v];
  }
  return out;
}

std::vector<std::uint32_t> coned_shortest_path(const ConedOffBall& cb, std::uint32_t u,
                                               std::uint32_t v) {
  check_vertex(cb, u);
  check_vertex(cb, v);
  const auto [dist, parent] = coned_dijkstra(cb, u, v);
  if (dist[v] < 0) fail(Errc::not_found, "endpoints are not connected in the coned ball");
  std::vector<std::uint32_t> path{v};
  while (path.back() != u) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

int TransitionAnnotation::deep_count() const {
  int c = 0;
  for (const auto& e : classes) c += (e.cls == VertexClass::deep);
  return c;
}

bool TransitionAnnotation::multi_coset_hit() const {
  for (const auto& e : classes)
    if (e.all_deep.size() > 1) return true;
  return false;
}

TransitionAnnotation classify_transitions(const std::vector<NormalForm>& segment,
                                          const PeripheralStructure& P, int epsilon, int R,
                                          const CayleyBall& ball) {
  const auto& g = ball.graph();
  if (epsilon < 0) fail(Errc::invalid_parameter, "epsilon must be >= 0");
  if (R < 1) fail(Errc::invalid_parameter, "R must be >= 1");
  const int m = static_cast<int>(segment.size());
  if (m == 0) fail(Errc::invalid_query, "empty segment");
  for (int i = 0; i + 1 < m; ++i)
    if (word_distance(segment[i], segment[i + 1], g) != 1)
      fail(Errc::invalid_query, "segment steps must have distance 1");
  if (word_distance(segment.front(), segment.back(), g) != m - 1)
    fail(Errc::invalid_query, "segment is not geodesic");

  TransitionAnnotation out;
  out.epsilon = epsilon;
  out.R = R;
  out.classes.resize(m);

  // candidate cosets near x: every coset meeting B(x, epsilon-1)
  auto candidates = [&](const NormalForm& x) {
    std::vector<PeripheralCoset> cands;
    std::set<Letters> ballset{x.letters()};
    std::vector<NormalForm> frontier{x};
    for (int step = 0; step < epsilon - 1; ++step) {
      std::vector<NormalForm> next;
      for (const auto& y : frontier)
        for (int s = 0; s < g.rank(); ++s) {
          NormalForm z = right_mul(y, static_cast<Gen>(s), g);
          if (ballset.insert(z.letters()).second) next.push_back(std::move(z));
        }
      frontier = std::move(next);
    }
    std::set<PeripheralCoset> seen;
    for (const auto& letters : ballset) {
      const NormalForm y = NormalForm::adopt_canonical(letters);
      for (std::size_t si = 0; si < P.subgroups.size(); ++si) {
        PeripheralCoset c{coset_min_rep(y, P.subgroups[si], g), static_cast<int>(si)};
        if (seen.insert(c).second) cands.push_back(c);
      }
    }
    std::sort(cands.begin(), cands.end());
    return cands;
  };

  for (int i = 0; i < m; ++i) {
    if (i <= R || (m - 1 - i) <= R) continue;  // within R of an endpoint: never deep
    for (const auto& cand : candidates(segment[i])) {
      const auto& T = P.subgroups[cand.subgroup_index];
      bool deep = true;
      for (int j = std::max(0, i - R); j <= std::min(m - 1, i + R) && deep; ++j) {
        // d(segment[j], gP) = |coset_min_rep(segment[j]^{-1} g, T)|, exact
        const NormalForm shifted = mul(inverse(segment[j], g), cand.min_rep, g);
        if (static_cast<int>(coset_min_rep(shifted, T, g).length()) >= epsilon) deep = false;
      }
      if (deep) out.classes[i].all_deep.push_back(cand);
    }
    if (!out.classes[i].all_deep.empty()) {
      out.classes[i].cls = VertexClass::deep;
      out.classes[i].coset = out.classes[i].all_deep.front();
    }
  }
  return out;
}

PenetrationReport penetration_check(const ConedOffBall& cb, const std::vector<std::uint32_t>& p,
                                    const std::vector<std::uint32_t>& q) {
  const auto& ball = cb.base();
  const auto& g = ball.graph();
  if (p.empty() || q.empty()) fail(Errc::invalid_query, "paths must be nonempty");
  if (p.front() != q.front() || p.back() != q.back())
    fail(Errc::invalid_query, "paths must share endpoints");
  auto path_halves = [&](const std::vector<std::uint32_t>& path) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const int w = cb.edge_halves(path[i], path[i + 1]);
      if (w == 0) fail(Errc::invalid_query, "path steps must follow edges of the coned ball");
      total += w;
    }
    return total;
  };
  const std::int64_t p_halves = path_halves(p);
  const std::int64_t q_halves = path_halves(q);
  const auto d = coned_distance(cb, q.front(), q.back());
  if (!d.finite() || d.half_units != q_halves)
    fail(Errc::invalid_query, "q is not geodesic in the coned ball");

  PenetrationReport out;
  out.p_length_halves = p_halves;
  out.p_edge_count = p.size() - 1;
  for (std::uint32_t v : q) {
    if (cb.is_cone(v)) continue;
    const NormalForm ve = ball.element(v);
    std::int64_t best = -1;
    for (std::uint32_t w : p) {
      if (cb.is_cone(w)) continue;
      const std::int64_t dw = word_distance(ve, ball.element(w), g);
      if (best < 0 || dw < best) best = dw;
    }
    if (best < 0) best = 0;  // p has no group vertices; vacuous
    out.per_vertex.push_back(best);
    if (best > out.max_min_dist) out.max_min_dist = best;
  }
  const double len = std::max(2.0, double(out.p_length_halves) / 2.0);
  out.k_estimate = double(out.max_min_dist) / std::log2(len);
  return out;
}

}  // namespace coxdiv
