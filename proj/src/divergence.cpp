#include "coxdiv/divergence.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>

namespace coxdiv {

const char* to_string(SampleStatus s) {
  switch (s) {
    case SampleStatus::finite: return "finite";
    case SampleStatus::no_path_within_truncation: return "no_path_within_truncation";
    case SampleStatus::mixed: return "mixed";
  }
  return "?";
}

const char* to_string(GrowthFit::Model m) {
  switch (m) {
    case GrowthFit::Model::polynomial: return "polynomial";
    case GrowthFit::Model::exponential: return "exponential";
    case GrowthFit::Model::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

std::int64_t ms_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               t0)
      .count();
}

std::shared_ptr<const CayleyBall> truncation_ball(const PresentationGraph& g,
                                                  const NormalForm& center, int truncation,
                                                  const ProbeContext& ctx) {
  std::shared_ptr<const CayleyBall> ball;
  if (ctx.cache) {
    ball = ctx.cache->get(g, center, truncation, ctx.budget, ctx.threads);
  } else {
    ball = std::make_shared<const CayleyBall>(
        build_ball(g, center, truncation, ctx.budget, ctx.threads));
  }
  if (!ball->complete())
    fail(Errc::budget_exceeded,
         "truncation ball stopped at radius " + std::to_string(ball->completed_radius()) +
             " of " + std::to_string(truncation) + " (" + std::to_string(ball->size()) +
             " vertices)");
  return ball;
}

}  // namespace

DivergenceSample rho(const GeodesicSpec& spec, const PresentationGraph& g, int r, long long t,
                     int truncation, const ProbeContext& ctx) {
  if (r < 1) fail(Errc::invalid_parameter, "rho needs r >= 1");
  if (truncation < 2 * r)
    fail(Errc::invalid_parameter, "truncation must be at least 2r to hold both endpoints");
  const auto t0 = std::chrono::steady_clock::now();
  spec.ensure_window(2 * r, g);  // the probed stretch alpha[t-r .. t+r]
  const NormalForm center = spec.point(t, g);
  const NormalForm u = spec.point(t - r, g);
  const NormalForm v = spec.point(t + r, g);
  auto ball = truncation_ball(g, center, truncation, ctx);
  const PathQueryResult q = avoidant_distance(*ball, u, v, center, r);

  DivergenceSample out;
  out.r = r;
  out.status = q.finite() ? SampleStatus::finite : SampleStatus::no_path_within_truncation;
  out.value = q.length;
  out.truncation_radius = truncation;
  out.provenance = "t=" + std::to_string(t);
  out.wall_ms = ms_since(t0);
  return out;
}

DivergenceSample ldiv(const GeodesicSpec& spec, const PresentationGraph& g, int r,
                      int truncation, const ProbeContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const int k = spec.period_length();
  DivergenceSample out;
  out.r = r;
  out.truncation_radius = truncation;
  out.provenance = "t=0.." + std::to_string(k - 1);
  int finite = 0;
  for (int t = 0; t < k; ++t) {
    DivergenceSample probe = rho(spec, g, r, t, truncation, ctx);
    if (probe.finite()) {
      ++finite;
      if (out.value < 0 || probe.value < out.value) out.value = probe.value;
    }
  }
  out.status = finite == 0   ? SampleStatus::no_path_within_truncation
               : finite == k ? SampleStatus::finite
                             : SampleStatus::mixed;
  out.wall_ms = ms_since(t0);
  return out;
}

DivergenceSample pair_divergence(const GeodesicSpec& ray_a, const GeodesicSpec& ray_b,
                                 const PresentationGraph& g, int r, int truncation,
                                 const ProbeContext& ctx) {
  if (!(ray_a.anchor() == ray_b.anchor()))
    fail(Errc::invalid_query, "ray pair must share the initial point");
  if (r < 1) fail(Errc::invalid_parameter, "pair divergence needs r >= 1");
  if (truncation < r) fail(Errc::invalid_parameter, "truncation must be at least r");
  const auto t0 = std::chrono::steady_clock::now();
  const NormalForm center = ray_a.anchor();
  const NormalForm u = ray_a.point(r, g);
  const NormalForm v = ray_b.point(r, g);
  auto ball = truncation_ball(g, center, truncation, ctx);
  const PathQueryResult q = avoidant_distance(*ball, u, v, center, r);

  DivergenceSample out;
  out.r = r;
  out.status = q.finite() ? SampleStatus::finite : SampleStatus::no_path_within_truncation;
  out.value = q.length;
  out.truncation_radius = truncation;
  out.provenance = "rays";
  out.wall_ms = ms_since(t0);
  return out;
}

namespace {

// BFS from src through ball vertices at distance >= keep_out from the
// basepoint; returns depths (-1 unreached)
std::vector<std::int32_t> annulus_bfs(const CayleyBall& ball, std::uint32_t src, int keep_out) {
  const int n = ball.graph().rank();
  std::vector<std::int32_t> depth(ball.size(), -1);
  if (ball.dist_from_base(src) < keep_out) return depth;
  depth[src] = 0;
  std::deque<std::uint32_t> queue{src};
  while (!queue.empty()) {
    const std::uint32_t x = queue.front();
    queue.pop_front();
    for (int s = 0; s < n; ++s) {
      const std::uint32_t y = ball.neighbor(x, static_cast<Gen>(s));
      if (y == kNoVertex || depth[y] >= 0 || ball.dist_from_base(y) < keep_out) continue;
      depth[y] = depth[x] + 1;
      queue.push_back(y);
    }
  }
  return depth;
}

}  // namespace

DivergenceSample gersten_delta(const CayleyBall& ball, double rho_frac, int r,
                               const GerstenOptions& opt) {
  if (!(rho_frac > 0.0 && rho_frac <= 1.0))
    fail(Errc::invalid_parameter, "rho fraction must lie in (0, 1]");
  if (r < 1) fail(Errc::invalid_parameter, "gersten delta needs r >= 1");
  if (r > ball.completed_radius())
    fail(Errc::invalid_query, "sphere radius exceeds the completed ball");
  const auto t0 = std::chrono::steady_clock::now();
  const auto [lo, hi] = ball.sphere_range(r);
  const std::uint32_t m = hi - lo;
  if (m == 0) fail(Errc::invalid_query, "empty sphere");
  const int keep_out = static_cast<int>(std::ceil(rho_frac * r - 1e-9));

  DivergenceSample out;
  out.r = r;
  out.truncation_radius = ball.completed_radius();
  out.provenance = "pairs";
  out.sphere_size = m;

  if (m == 1) {
    out.status = SampleStatus::finite;
    out.value = 0;
    out.finite_pairs = 1;  // the single pair (x, x)
    out.pair_mode = "exhaustive";
    out.wall_ms = ms_since(t0);
    return out;
  }

  const bool exhaustive = opt.mode == PairMode::exhaustive ||
                          (opt.mode == PairMode::automatic && m <= 512);
  out.pair_mode = exhaustive ? "exhaustive" : "sampled";

  // pairs to evaluate, grouped by first endpoint: one annulus BFS per source
  std::map<std::uint32_t, std::vector<std::uint32_t>> by_src;
  if (exhaustive) {
    for (std::uint32_t i = 0; i + 1 < m; ++i) {
      auto& js = by_src[lo + i];
      for (std::uint32_t j = i + 1; j < m; ++j) js.push_back(lo + j);
    }
  } else {
    const std::uint64_t total = std::uint64_t(m) * (m - 1) / 2;
    const std::uint64_t want = std::min<std::uint64_t>(opt.pair_cap, total);
    std::mt19937_64 rng(opt.seed);
    std::set<std::uint64_t> chosen;  // Floyd's sampling, then deterministic order
    for (std::uint64_t j = total - want; j < total; ++j) {
      std::uniform_int_distribution<std::uint64_t> dist(0, j);
      const std::uint64_t pick = dist(rng);
      if (!chosen.insert(pick).second) chosen.insert(j);
    }
    for (std::uint64_t idx : chosen) {
      // decode the lexicographic pair index: pairs (i, j), i < j
      std::uint64_t i = 0, skip = idx;
      while (skip >= m - 1 - i) {
        skip -= m - 1 - i;
        ++i;
      }
      const std::uint64_t j = i + 1 + skip;
      by_src[lo + static_cast<std::uint32_t>(i)].push_back(lo + static_cast<std::uint32_t>(j));
    }
  }

  for (const auto& [src, targets] : by_src) {
    const auto depth = annulus_bfs(ball, src, keep_out);
    for (std::uint32_t dst : targets) {
      if (depth[dst] < 0) {
        ++out.excluded_pairs;
      } else {
        ++out.finite_pairs;
        if (depth[dst] > out.value) out.value = depth[dst];
      }
    }
  }
  out.status =
      out.finite_pairs > 0 ? SampleStatus::finite : SampleStatus::no_path_within_truncation;
  out.wall_ms = ms_since(t0);
  return out;
}

namespace {

struct LineFit {
  double slope = 0;
  double r2 = 0;
  bool ok = false;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit fit;
  const std::size_t n = x.size();
  if (n < 2) return fit;
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) return fit;
  fit.slope = sxy / sxx;
  const double ss_res = syy - fit.slope * sxy;
  fit.r2 = syy == 0 ? (std::abs(ss_res) < 1e-12 ? 1.0 : 0.0) : 1.0 - ss_res / syy;
  fit.ok = true;
  return fit;
}

constexpr double kFitThreshold = 0.98;

}  // namespace

GrowthFit fit_growth(const std::vector<DivergenceSample>& samples) {
  GrowthFit out;
  std::vector<double> r, logr, logv;
  std::set<int> distinct;
  for (const auto& s : samples) {
    if (!s.finite() || s.value <= 0 || s.r < 1) continue;
    r.push_back(s.r);
    logr.push_back(std::log(double(s.r)));
    logv.push_back(std::log(double(s.value)));
    distinct.insert(s.r);
    if (out.r_lo == 0 || s.r < out.r_lo) out.r_lo = s.r;
    if (s.r > out.r_hi) out.r_hi = s.r;
  }
  out.finite_samples = static_cast<int>(r.size());
  if (distinct.size() < 3) return out;  // inconclusive, not an error

  const LineFit poly = least_squares(logr, logv);
  const LineFit expo = least_squares(r, logv);
  if (poly.ok) {
    out.poly_exponent = poly.slope;
    out.poly_r2 = poly.r2;
  }
  if (expo.ok) {
    out.exp_rate = expo.slope;
    out.exp_r2 = expo.r2;
  }
  if (poly.ok && poly.r2 >= kFitThreshold && poly.slope > 0) {
    out.model = GrowthFit::Model::polynomial;
    out.exponent = poly.slope;
    out.residual = poly.r2;
  } else if (expo.ok && expo.r2 >= kFitThreshold && expo.slope > 0) {
    out.model = GrowthFit::Model::exponential;
    out.rate = expo.slope;
    out.residual = expo.r2;
  }
  return out;
}

}  // namespace coxdiv
