#pragma once

#include <atomic>
#include <string>
#include <vector>

#include "coxdiv/word.hpp"

namespace coxdiv {

// Periodic bi-infinite geodesic: t=0 sits at the anchor, positive times walk
// through period^inf, negative times walk backwards (letters are
// involutions). Construction verifies the period is reduced and that its
// powers stay reduced up to check_power; point() extends the verification on
// demand so every value handed out is certified geodesic.
class GeodesicSpec {
 public:
  GeodesicSpec(const PresentationGraph& g, const Word& period, NormalForm anchor = {},
               int check_power = 6);
  GeodesicSpec(const GeodesicSpec& o)
      : period_(o.period_), anchor_(o.anchor_), checked_(o.checked_.load()) {}
  GeodesicSpec& operator=(const GeodesicSpec& o);

  const std::vector<Gen>& period() const { return period_; }
  int period_length() const { return static_cast<int>(period_.size()); }
  const NormalForm& anchor() const { return anchor_; }

  // display name of the period, e.g. "a2 b2"
  std::string label(const PresentationGraph& g) const;

  NormalForm point(long long t, const PresentationGraph& g) const;

  // certify that every window of window_len consecutive letters of the
  // bi-infinite word is reduced (raises the checked power if needed)
  void ensure_window(int window_len, const PresentationGraph& g) const;

 private:
  std::vector<Gen> period_;
  NormalForm anchor_;
  mutable std::atomic<int> checked_;  // highest verified power of the period
};

// alpha_d inside gamma:d / omega:d, the (a_d b_d)^inf axis
GeodesicSpec alpha_geodesic(const PresentationGraph& g, int d);
// the cone-exterior candidate (c1 b0)^inf in omega:d
GeodesicSpec h_geodesic(const PresentationGraph& g);

NormalForm geodesic_point(const GeodesicSpec& spec, long long t, const PresentationGraph& g);

}  // namespace coxdiv
