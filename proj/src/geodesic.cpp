#include "coxdiv/geodesic.hpp"

#include <sstream>

namespace coxdiv {

namespace {

// verify period^power is reduced; n*k letters pushed, every prefix must keep
// its full length
void check_powers(const std::vector<Gen>& period, int power, const PresentationGraph& g) {
  Letters acc;
  acc.reserve(period.size() * power);
  std::size_t expect = 0;
  for (int rep = 0; rep < power; ++rep)
    for (Gen s : period) {
      detail::push_letter(acc, s, g);
      if (acc.size() != ++expect)
        fail(Errc::invalid_parameter,
             "period power " + std::to_string(rep + 1) + " is not reduced; not a geodesic");
    }
}

}  // namespace

GeodesicSpec::GeodesicSpec(const PresentationGraph& g, const Word& period, NormalForm anchor,
                           int check_power)
    : period_(period.letters), anchor_(std::move(anchor)), checked_(0) {
  if (period_.empty()) fail(Errc::invalid_parameter, "geodesic period is empty");
  for (Gen s : period_)
    if (s >= g.rank()) fail(Errc::invalid_word, "period letter out of range");
  if (!is_reduced(period, g)) fail(Errc::invalid_parameter, "period not reduced");
  if (check_power < 2) check_power = 2;
  check_powers(period_, check_power, g);
  checked_.store(check_power);
}

GeodesicSpec& GeodesicSpec::operator=(const GeodesicSpec& o) {
  period_ = o.period_;
  anchor_ = o.anchor_;
  checked_.store(o.checked_.load());
  return *this;
}

std::string GeodesicSpec::label(const PresentationGraph& g) const {
  std::ostringstream out;
  for (std::size_t i = 0; i < period_.size(); ++i) {
    if (i) out << ' ';
    out << g.name(period_[i]);
  }
  return out.str();
}

void GeodesicSpec::ensure_window(int window_len, const PresentationGraph& g) const {
  const int k = period_length();
  // a window of L consecutive letters of the bi-infinite word lies inside
  // period^n once n >= L/k + 2, whatever the window's phase
  const int needed = (window_len + k - 1) / k + 2;
  if (checked_.load() >= needed) return;
  check_powers(period_, needed, g);
  int prev = checked_.load();
  while (prev < needed && !checked_.compare_exchange_weak(prev, needed)) {
  }
}

NormalForm GeodesicSpec::point(long long t, const PresentationGraph& g) const {
  const long long k = period_length();
  const long long len = t >= 0 ? t : -t;
  if (len > 0) ensure_window(static_cast<int>(len), g);
  Letters w;
  w.reserve(static_cast<std::size_t>(len));
  if (t >= 0) {
    for (long long i = 0; i < t; ++i) w.push_back(static_cast<char>(period_[i % k]));
  } else {
    for (long long j = 0; j < -t; ++j) {
      const long long idx = ((k - 1 - j) % k + k) % k;
      w.push_back(static_cast<char>(period_[idx]));
    }
  }
  detail::canonicalize(w, g);
  auto nf = NormalForm::adopt_canonical(std::move(w));
  if (anchor_.empty()) return nf;
  return mul(anchor_, nf, g);
}

NormalForm geodesic_point(const GeodesicSpec& spec, long long t, const PresentationGraph& g) {
  return spec.point(t, g);
}

GeodesicSpec alpha_geodesic(const PresentationGraph& g, int d) {
  Word p;
  p.letters = {g.gen("a" + std::to_string(d)), g.gen("b" + std::to_string(d))};
  return GeodesicSpec(g, p);
}

GeodesicSpec h_geodesic(const PresentationGraph& g) {
  Word p;
  p.letters = {g.gen("c1"), g.gen("b0")};
  return GeodesicSpec(g, p);
}

}  // namespace coxdiv
