#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coxdiv/cayley.hpp"
#include "coxdiv/geodesic.hpp"

namespace coxdiv {

enum class SampleStatus { finite, no_path_within_truncation, mixed };

const char* to_string(SampleStatus s);

// One measured divergence quantity at scale r. "mixed" only appears for
// ldiv-style aggregates where some probes were Finite and some were not; the
// value then reports the min over the Finite probes but the status keeps the
// truncation honesty.
struct DivergenceSample {
  int r = 0;
  SampleStatus status = SampleStatus::no_path_within_truncation;
  std::int64_t value = -1;  // valid unless every probe was NoPath
  int truncation_radius = 0;
  std::string provenance;  // "t=2", "t=0..1", "rays", "pairs"
  std::int64_t wall_ms = 0;

  // pair-sup bookkeeping, only filled by gersten_delta
  std::uint32_t sphere_size = 0;
  std::uint32_t finite_pairs = 0;
  std::uint32_t excluded_pairs = 0;  // NoPathWithinTruncation pairs
  std::string pair_mode;             // "exhaustive" or "sampled"

  bool finite() const { return status == SampleStatus::finite; }
};

// Shared context for probes: budget, worker count, optional ball reuse.
struct ProbeContext {
  BuildBudget budget{};
  int threads = 1;
  BallCache* cache = nullptr;
};

// rho(r, t): length of a shortest path from alpha(t-r) to alpha(t+r) staying
// outside the open r-ball about alpha(t), inside a truncation ball centered
// at alpha(t). Throws budget_exceeded if the truncation ball cannot be
// completed within budget.
DivergenceSample rho(const GeodesicSpec& spec, const PresentationGraph& g, int r, long long t,
                     int truncation, const ProbeContext& ctx = {});

// min over t across one period (exact over all integer t by periodicity)
DivergenceSample ldiv(const GeodesicSpec& spec, const PresentationGraph& g, int r,
                      int truncation, const ProbeContext& ctx = {});

// divergence of a ray pair sharing anchor x0: shortest path from A(r) to B(r)
// outside the open r-ball about x0
DivergenceSample pair_divergence(const GeodesicSpec& ray_a, const GeodesicSpec& ray_b,
                                 const PresentationGraph& g, int r, int truncation,
                                 const ProbeContext& ctx = {});

enum class PairMode { automatic, exhaustive, sampled };

struct GerstenOptions {
  PairMode mode = PairMode::automatic;  // exhaustive when |S_r| <= 512
  std::uint32_t pair_cap = 512;         // sampled-pair budget
  std::uint64_t seed = 1;
};

// Gersten-style small divergence: sup over sphere-pair annulus distances at
// keep-out radius ceil(rho_frac * r), Finite pairs only; NoPath pairs are
// counted in excluded_pairs.
DivergenceSample gersten_delta(const CayleyBall& ball, double rho_frac, int r,
                               const GerstenOptions& opt = {});

struct GrowthFit {
  enum class Model { polynomial, exponential, inconclusive };
  Model model = Model::inconclusive;
  double exponent = 0;  // slope of log v over log r (polynomial)
  double rate = 0;      // slope of log v over r (exponential)
  int r_lo = 0, r_hi = 0;
  double residual = 0;  // R^2 of the accepted transform
  int finite_samples = 0;

  // both candidates are always reported so a failed threshold hides nothing
  double poly_exponent = 0, poly_r2 = 0;
  double exp_rate = 0, exp_r2 = 0;
};

const char* to_string(GrowthFit::Model m);

// Selection rule: polynomial when the log-log R^2 >= 0.98 with positive
// slope, else exponential when the semilog R^2 >= 0.98 with positive rate,
// else inconclusive. Needs Finite samples at >= 3 distinct r.
GrowthFit fit_growth(const std::vector<DivergenceSample>& samples);

}  // namespace coxdiv
