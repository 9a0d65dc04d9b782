#include "coxdiv/cayley.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <thread>

namespace coxdiv {

namespace {

struct Candidate {
  std::string word;
  std::uint32_t parent;
  Gen s;
  bool operator<(const Candidate& o) const {
    if (word != o.word) return word < o.word;
    if (parent != o.parent) return parent < o.parent;
    return s < o.s;
  }
};

}  // namespace

std::uint32_t CayleyBall::sphere_size(int r) const {
  if (r < 0 || r > completed_) fail(Errc::invalid_query, "sphere radius outside completed range");
  return level_off_[r + 1] - level_off_[r];
}

std::uint32_t CayleyBall::ball_size(int r) const {
  if (r < 0 || r > completed_) fail(Errc::invalid_query, "ball radius outside completed range");
  return level_off_[r + 1];
}

std::pair<std::uint32_t, std::uint32_t> CayleyBall::sphere_range(int r) const {
  if (r < 0 || r > completed_) fail(Errc::invalid_query, "sphere radius outside completed range");
  return {level_off_[r], level_off_[r + 1]};
}

int CayleyBall::dist_from_base(std::uint32_t id) const {
  auto it = std::upper_bound(level_off_.begin(), level_off_.end(), id);
  return static_cast<int>(it - level_off_.begin()) - 1;
}

NormalForm CayleyBall::element(std::uint32_t id) const {
  if (base_.empty()) return offset(id);
  return mul(base_, offset(id), graph_);
}

std::optional<std::uint32_t> CayleyBall::find(const NormalForm& g) const {
  Letters w(base_.letters().rbegin(), base_.letters().rend());
  for (char c : g.letters()) detail::push_letter(w, static_cast<Gen>(c), graph_);
  detail::canonicalize(w, graph_);
  const int len = static_cast<int>(w.size());
  if (len > completed_) return std::nullopt;
  const auto lo = words_.begin() + level_off_[len];
  const auto hi = words_.begin() + level_off_[len + 1];
  auto it = std::lower_bound(lo, hi, w);
  if (it == hi || *it != w) return std::nullopt;  // cannot happen for true elements
  return static_cast<std::uint32_t>(it - words_.begin());
}

std::uint32_t CayleyBall::id_of(const NormalForm& g) const {
  auto id = find(g);
  if (!id) fail(Errc::not_found, "element '" + g.str(graph_) + "' is outside the ball");
  return *id;
}

CayleyBall build_ball(const PresentationGraph& g, const NormalForm& base, int radius,
                      const BuildBudget& budget, int threads) {
  if (radius < 0) fail(Errc::invalid_parameter, "ball radius must be >= 0");
  if (threads < 1) threads = 1;
  const auto start = std::chrono::steady_clock::now();
  const int n = g.rank();

  CayleyBall ball;
  ball.graph_ = g;
  ball.base_ = base;
  ball.radius_ = radius;
  ball.words_ = {std::string()};
  ball.level_off_ = {0, 1};
  ball.adj_.assign(n, kNoVertex);
  ball.completed_ = 0;

  auto out_of_time = [&] {
    if (budget.max_seconds <= 0) return false;
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    return dt.count() > budget.max_seconds;
  };

  for (int k = 0; k < radius; ++k) {
    if (out_of_time()) return ball;  // partial: completed_ stays at k
    const std::uint32_t lo = ball.level_off_[k], hi = ball.level_off_[k + 1];

    auto expand = [&](std::uint32_t from, std::uint32_t to, std::vector<Candidate>& out) {
      for (std::uint32_t id = from; id < to; ++id) {
        const std::string& w = ball.words_[id];
        for (int s = 0; s < n; ++s) {
          std::string child = w;
          detail::push_letter(child, static_cast<Gen>(s), g);
          if (child.size() == w.size() + 1) {
            detail::canonicalize(child, g);
            out.push_back({std::move(child), id, static_cast<Gen>(s)});
          }
        }
      }
    };

    std::vector<Candidate> cand;
    if (threads == 1 || hi - lo < 4096) {
      expand(lo, hi, cand);
    } else {
      const std::uint32_t span = hi - lo;
      const int nw = std::min<int>(threads, 16);
      std::vector<std::vector<Candidate>> parts(nw);
      std::vector<std::thread> pool;
      for (int w = 0; w < nw; ++w) {
        const std::uint32_t a = lo + std::uint64_t(span) * w / nw;
        const std::uint32_t b = lo + std::uint64_t(span) * (w + 1) / nw;
        pool.emplace_back([&, a, b, w] { expand(a, b, parts[w]); });
      }
      for (auto& t : pool) t.join();
      std::size_t total = 0;
      for (auto& p : parts) total += p.size();
      cand.reserve(total);
      for (auto& p : parts)
        for (auto& c : p) cand.push_back(std::move(c));
    }

    std::sort(cand.begin(), cand.end());

    std::size_t uniq = 0;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (i == 0 || cand[i].word != cand[i - 1].word) ++uniq;

    if (uniq == 0) {
      // the group ran out of new elements; every further sphere is empty
      for (int j = k + 1; j <= radius; ++j) ball.level_off_.push_back(ball.size());
      ball.completed_ = radius;
      return ball;
    }
    if (std::uint64_t(ball.size()) + uniq > budget.max_vertices) return ball;  // partial

    const std::uint32_t base_id = ball.size();
    ball.words_.reserve(ball.words_.size() + uniq);
    ball.adj_.resize((std::size_t(base_id) + uniq) * n, kNoVertex);
    std::uint32_t next = base_id;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (i == 0 || cand[i].word != cand[i - 1].word) {
        ball.words_.push_back(cand[i].word);
        ++next;
      }
      const std::uint32_t child = next - 1;
      ball.adj_[std::size_t(cand[i].parent) * n + cand[i].s] = child;
      ball.adj_[std::size_t(child) * n + cand[i].s] = cand[i].parent;
    }
    ball.level_off_.push_back(ball.size());
    ball.completed_ = k + 1;
  }
  return ball;
}

std::int64_t distance(const CayleyBall& ball, const NormalForm& u, const NormalForm& v) {
  ball.id_of(u);
  ball.id_of(v);
  return word_distance(u, v, ball.graph());
}

namespace {

PathQueryResult avoidant_impl(const CayleyBall& ball, const NormalForm& u, const NormalForm& v,
                              const NormalForm& center, int r, const AvoidOptions& opt) {
  if (r < 0) fail(Errc::invalid_query, "avoidance radius must be >= 0");
  const auto& g = ball.graph();
  const std::uint32_t iu = ball.id_of(u), iv = ball.id_of(v);
  const bool center_is_base = (center == ball.basepoint());
  if (!center_is_base) ball.id_of(center);  // same membership contract as u, v

  auto center_dist = [&](std::uint32_t id) -> std::int64_t {
    if (center_is_base) return ball.dist_from_base(id);
    return word_distance(ball.element(id), center, g);
  };
  auto allowed = [&](std::uint32_t id) { return center_dist(id) >= r; };

  if (!allowed(iu) || !allowed(iv))
    fail(Errc::invalid_query, "query endpoint lies inside the excluded ball");

  PathQueryResult out;
  out.truncation_radius = ball.completed_radius();

  auto emit_witness = [&](const std::vector<std::uint32_t>& parent, std::uint32_t tail) {
    std::vector<std::uint32_t> ids{tail};
    while (ids.back() != iu) ids.push_back(parent[ids.back()]);
    std::reverse(ids.begin(), ids.end());
    for (std::uint32_t id : ids) out.witness.push_back(ball.element(id));
  };

  if (iu == iv) {
    out.status = PathStatus::finite;
    out.length = 0;
    if (opt.want_witness) out.witness.push_back(ball.element(iu));
    return out;
  }

  const int n = g.rank();
  std::vector<std::int32_t> depth(ball.size(), -1);
  std::vector<std::uint32_t> parent;
  if (opt.want_witness) parent.assign(ball.size(), kNoVertex);
  depth[iu] = 0;
  std::deque<std::uint32_t> queue{iu};
  while (!queue.empty()) {
    const std::uint32_t x = queue.front();
    queue.pop_front();
    for (int s = 0; s < n; ++s) {
      const std::uint32_t y = ball.neighbor(x, static_cast<Gen>(s));
      if (y == kNoVertex || depth[y] >= 0 || !allowed(y)) continue;
      depth[y] = depth[x] + 1;
      if (opt.want_witness) parent[y] = x;
      if (y == iv) {
        out.status = PathStatus::finite;
        out.length = depth[y];
        if (opt.want_witness) emit_witness(parent, y);
        return out;
      }
      queue.push_back(y);
    }
  }
  return out;  // no path within truncation
}

}  // namespace

PathQueryResult avoidant_distance(const CayleyBall& ball, const NormalForm& u,
                                  const NormalForm& v, const NormalForm& center, int r,
                                  const AvoidOptions& opt) {
  return avoidant_impl(ball, u, v, center, r, opt);
}

PathQueryResult annulus_distance(const CayleyBall& ball, const NormalForm& u,
                                 const NormalForm& v, int r, const AvoidOptions& opt) {
  return avoidant_impl(ball, u, v, ball.basepoint(), r, opt);
}

std::shared_ptr<const CayleyBall> BallCache::get(const PresentationGraph& g,
                                                 const NormalForm& center, int radius,
                                                 const BuildBudget& budget, int threads) {
  std::string key = g.fingerprint() + '\x1f' + center.letters() + '\x1f' +
                    std::to_string(radius) + '\x1f' + std::to_string(budget.max_vertices);
  auto it = store_.find(key);
  if (it != store_.end()) return it->second;
  auto ball = std::make_shared<const CayleyBall>(build_ball(g, center, radius, budget, threads));
  store_.emplace(std::move(key), ball);
  return ball;
}

}  // namespace coxdiv
