#include "coxdiv/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coxdiv/version.hpp"

namespace coxdiv {

const char* to_string(MorseClass c) {
  switch (c) {
    case MorseClass::morse_consistent: return "morse-consistent";
    case MorseClass::non_morse_consistent: return "non-morse-consistent";
    case MorseClass::inconclusive: return "inconclusive";
  }
  return "?";
}

MorseClass morse_heuristic(const GrowthFit& fit) {
  if (fit.model == GrowthFit::Model::exponential) return MorseClass::morse_consistent;
  if (fit.model == GrowthFit::Model::polynomial) {
    if (fit.exponent >= 1.5) return MorseClass::morse_consistent;
    if (fit.exponent <= 1.2) return MorseClass::non_morse_consistent;
  }
  return MorseClass::inconclusive;
}

namespace {

void check_scan_params(int r_max, int truncation_factor) {
  if (r_max < 1) fail(Errc::invalid_parameter, "r_max must be >= 1");
  // ldiv needs truncation >= 2r, so the factor must cover that at every r
  if (truncation_factor < 2) fail(Errc::invalid_parameter, "truncation factor must be >= 2");
}

std::string budget_note(const std::string& where, int r, const Error& e) {
  std::ostringstream out;
  out << where << " at r=" << r << ": " << e.what() << "; keeping completed samples";
  return out.str();
}

// weakly nondecreasing over the finite entries, in r order
bool finite_nondecreasing(const std::vector<DivergenceSample>& samples) {
  std::int64_t prev = -1;
  for (const auto& s : samples) {
    if (s.value < 0) continue;
    if (prev >= 0 && s.value < prev) return false;
    prev = s.value;
  }
  return true;
}

}  // namespace

SpectrumReport run_gamma_spectrum(const std::vector<int>& d_list, int r_max,
                                  int truncation_factor, const ProbeContext& ctx,
                                  std::uint64_t seed) {
  if (d_list.empty()) fail(Errc::invalid_parameter, "spectrum needs at least one d");
  for (int d : d_list)
    if (d < 1) fail(Errc::invalid_parameter, "family parameter d must be >= 1");
  check_scan_params(r_max, truncation_factor);

  SpectrumReport rep;
  rep.d_list = d_list;
  rep.r_max = r_max;
  rep.truncation_factor = truncation_factor;
  rep.seed = seed;

  BallCache local_cache;
  ProbeContext probe = ctx;
  if (!probe.cache) probe.cache = &local_cache;

  for (int d : d_list) {
    const PresentationGraph g = build_family({FamilyKind::gamma, d});
    const GeodesicSpec axis = alpha_geodesic(g, d);
    std::vector<DivergenceSample> here;
    for (int r = 1; r <= r_max; ++r) {
      try {
        here.push_back(ldiv(axis, g, r, truncation_factor * r, probe));
      } catch (const Error& e) {
        if (e.code() != Errc::budget_exceeded) throw;
        rep.notes.push_back(budget_note("gamma:" + std::to_string(d), r, e));
        rep.complete = false;
        break;
      }
    }
    for (const auto& s : here) rep.cells.push_back({d, s});
    rep.fits[d] = fit_growth(here);
    rep.morse[d] = morse_heuristic(rep.fits[d]);
  }
  return rep;
}

GapReport run_omega_gap(int d, int r_max, int truncation_factor, int epsilon, int R,
                        int segment_len, const ProbeContext& ctx, std::uint64_t seed) {
  if (d < 1) fail(Errc::invalid_parameter, "family parameter d must be >= 1");
  check_scan_params(r_max, truncation_factor);
  if (epsilon < 1) fail(Errc::invalid_parameter, "epsilon must be >= 1");
  if (R < 1) fail(Errc::invalid_parameter, "window radius R must be >= 1");
  if (segment_len < 1) fail(Errc::invalid_parameter, "segment length must be >= 1");

  GapReport rep;
  rep.d = d;
  rep.r_max = r_max;
  rep.truncation_factor = truncation_factor;
  rep.epsilon = epsilon;
  rep.R = R;
  rep.segment_len = segment_len;
  rep.seed = seed;

  const PresentationGraph g = build_family({FamilyKind::omega, d});
  const GeodesicSpec axis = alpha_geodesic(g, d);
  const GeodesicSpec cand = h_geodesic(g);

  // both rays share the identity anchor, so the t=0 truncation balls coincide
  BallCache local_cache;
  ProbeContext probe = ctx;
  if (!probe.cache) probe.cache = &local_cache;

  for (int r = 1; r <= r_max; ++r) {
    DivergenceSample a, h;
    try {
      a = ldiv(axis, g, r, truncation_factor * r, probe);
      h = ldiv(cand, g, r, truncation_factor * r, probe);
    } catch (const Error& e) {
      if (e.code() != Errc::budget_exceeded) throw;
      // drop the half-finished r so alpha and h stay sampled at the same scales
      rep.notes.push_back(budget_note("omega:" + std::to_string(d), r, e));
      rep.complete = false;
      break;
    }
    rep.alpha_samples.push_back(a);
    rep.h_samples.push_back(h);
    GapReport::Ratio ratio;
    ratio.r = r;
    if (a.finite() && h.finite() && a.value > 0) {
      ratio.defined = true;
      ratio.value = double(h.value) / double(a.value);
    }
    rep.ratios.push_back(ratio);
  }

  rep.alpha_fit = fit_growth(rep.alpha_samples);
  rep.h_fit = fit_growth(rep.h_samples);
  rep.alpha_morse = morse_heuristic(rep.alpha_fit);
  rep.h_morse = morse_heuristic(rep.h_fit);

  for (int t = 0; t < segment_len; ++t) {
    rep.alpha_segment.push_back(axis.point(t, g));
    rep.h_segment.push_back(cand.point(t, g));
  }
  const PeripheralStructure P = PeripheralStructure::gamma_inside_omega(g);
  // classification distances are exact; a radius-0 ball just carries the graph
  const CayleyBall anchor_ball = build_ball(g, NormalForm{}, 0);
  rep.alpha_classes = classify_transitions(rep.alpha_segment, P, epsilon, R, anchor_ball);
  rep.h_classes = classify_transitions(rep.h_segment, P, epsilon, R, anchor_ball);
  return rep;
}

namespace {

Json tool_json() { return Json{{"name", kToolName}, {"version", kToolVersion}}; }

Json classes_json(const TransitionAnnotation& ann, const PresentationGraph& g) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < ann.classes.size(); ++i) {
    const auto& e = ann.classes[i];
    Json row;
    row["position"] = i;
    row["class"] = e.cls == VertexClass::deep ? "deep" : "transition";
    if (e.cls == VertexClass::deep) {
      row["coset_min_rep"] = e.coset.min_rep.str(g);
      row["coset_subgroup"] = e.coset.subgroup_index;
    }
    arr.push_back(std::move(row));
  }
  return arr;
}

Json ray_json(const std::string& label, const std::vector<DivergenceSample>& samples,
              const GrowthFit& fit, MorseClass morse, const std::vector<NormalForm>& segment,
              const TransitionAnnotation& ann, const PresentationGraph& g) {
  Json j;
  j["geodesic"] = label;
  Json arr = Json::array();
  for (const auto& s : samples) arr.push_back(sample_json(s));
  j["samples"] = std::move(arr);
  j["fit"] = fit_json(fit);
  j["morse"] = to_string(morse);
  Json seg = Json::array();
  for (const auto& v : segment) seg.push_back(v.str(g));
  j["segment"] = std::move(seg);
  j["classes"] = classes_json(ann, g);
  j["deep_count"] = ann.deep_count();
  j["multi_coset_hit"] = ann.multi_coset_hit();
  return j;
}

std::string fit_line(const GrowthFit& fit, MorseClass morse) {
  std::ostringstream out;
  out << to_string(fit.model);
  char buf[64];
  if (fit.model == GrowthFit::Model::polynomial) {
    std::snprintf(buf, sizeof buf, ", exponent %.3f", fit.exponent);
    out << buf;
  }
  if (fit.model == GrowthFit::Model::exponential) {
    std::snprintf(buf, sizeof buf, ", rate %.3f", fit.rate);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, " (R2 %.4f, %d finite samples", fit.residual,
                fit.finite_samples);
  out << buf << ", r in [" << fit.r_lo << ", " << fit.r_hi << "]); reading: "
      << to_string(morse);
  return out.str();
}

std::string sample_cell(const DivergenceSample& s) {
  if (s.value < 0) return "-";
  std::string cell = std::to_string(s.value);
  if (s.status != SampleStatus::finite) cell += " (" + std::string(to_string(s.status)) + ")";
  return cell;
}

std::string join_ints(const std::vector<int>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace

Json spectrum_json(const SpectrumReport& report, const Json& config) {
  Json j;
  j["tool"] = tool_json();
  j["config"] = config;
  j["kind"] = "gamma-spectrum";
  j["parameters"] = {{"d_list", report.d_list},
                     {"r_max", report.r_max},
                     {"truncation_factor", report.truncation_factor},
                     {"seed", report.seed}};
  j["complete"] = report.complete;
  j["notes"] = report.notes;

  Json per_d = Json::array();
  for (int d : report.d_list) {
    Json block;
    block["d"] = d;
    Json arr = Json::array();
    std::vector<DivergenceSample> mine;
    for (const auto& c : report.cells)
      if (c.d == d) {
        arr.push_back(sample_json(c.sample));
        mine.push_back(c.sample);
      }
    block["samples"] = std::move(arr);
    block["fit"] = fit_json(report.fits.at(d));
    block["morse"] = to_string(report.morse.at(d));
    block["nondecreasing_in_r"] = finite_nondecreasing(mine);
    per_d.push_back(std::move(block));
  }
  j["per_d"] = std::move(per_d);

  // rows where every family produced a finite value, for cross-d reading
  Json matched = Json::array();
  for (int r = 1; r <= report.r_max; ++r) {
    std::vector<std::int64_t> row;
    for (int d : report.d_list)
      for (const auto& c : report.cells)
        if (c.d == d && c.sample.r == r && c.sample.value >= 0) row.push_back(c.sample.value);
    if (row.size() != report.d_list.size()) continue;
    Json entry;
    entry["r"] = r;
    entry["values"] = row;
    entry["nondecreasing_in_d"] = std::is_sorted(row.begin(), row.end());
    matched.push_back(std::move(entry));
  }
  j["matched_r"] = std::move(matched);
  return j;
}

std::string spectrum_markdown(const SpectrumReport& report) {
  std::ostringstream out;
  out << "# Lower divergence across the right-angled family\n\n";
  out << "- d: " << join_ints(report.d_list, ", ") << "\n";
  out << "- r: 1.." << report.r_max << ", truncation " << report.truncation_factor
      << "*r, seed " << report.seed << "\n";
  out << "- complete: " << (report.complete ? "yes" : "no") << "\n\n";

  for (int d : report.d_list) {
    out << "## d = " << d << "\n\n";
    out << "| r | status | value | truncation |\n|---|---|---|---|\n";
    for (const auto& c : report.cells)
      if (c.d == d)
        out << "| " << c.sample.r << " | " << to_string(c.sample.status) << " | "
            << sample_cell(c.sample) << " | " << c.sample.truncation_radius << " |\n";
    out << "\nfit: " << fit_line(report.fits.at(d), report.morse.at(d)) << "\n\n";
  }

  out << "## Matched radii\n\n| r |";
  for (int d : report.d_list) out << " d=" << d << " |";
  out << " nondecreasing in d |\n|---|";
  for (std::size_t i = 0; i < report.d_list.size(); ++i) out << "---|";
  out << "---|\n";
  for (int r = 1; r <= report.r_max; ++r) {
    std::vector<std::int64_t> row;
    for (int d : report.d_list)
      for (const auto& c : report.cells)
        if (c.d == d && c.sample.r == r && c.sample.value >= 0) row.push_back(c.sample.value);
    if (row.size() != report.d_list.size()) continue;
    out << "| " << r << " |";
    for (auto v : row) out << ' ' << v << " |";
    out << ' ' << (std::is_sorted(row.begin(), row.end()) ? "yes" : "no") << " |\n";
  }

  if (!report.notes.empty()) {
    out << "\n## Notes\n\n";
    for (const auto& n : report.notes) out << "- " << n << "\n";
  }
  return out.str();
}

std::string spectrum_stem(const SpectrumReport& report) {
  std::ostringstream out;
  out << "gamma-spectrum-d" << join_ints(report.d_list, "+") << "-r" << report.r_max << "-tf"
      << report.truncation_factor;
  return out.str();
}

Json gap_json(const GapReport& report, const Json& config, const PresentationGraph& g) {
  Json j;
  j["tool"] = tool_json();
  j["config"] = config;
  j["kind"] = "omega-gap";
  j["parameters"] = {{"d", report.d},
                     {"r_max", report.r_max},
                     {"truncation_factor", report.truncation_factor},
                     {"epsilon", report.epsilon},
                     {"R", report.R},
                     {"segment_len", report.segment_len},
                     {"seed", report.seed}};
  j["complete"] = report.complete;
  j["notes"] = report.notes;
  j["alpha"] = ray_json("a" + std::to_string(report.d) + " b" + std::to_string(report.d),
                        report.alpha_samples, report.alpha_fit, report.alpha_morse,
                        report.alpha_segment, report.alpha_classes, g);
  j["h"] = ray_json("c1 b0", report.h_samples, report.h_fit, report.h_morse, report.h_segment,
                    report.h_classes, g);
  Json ratios = Json::array();
  for (const auto& rt : report.ratios) {
    Json row;
    row["r"] = rt.r;
    if (rt.defined)
      row["h_over_alpha"] = rt.value;
    else
      row["h_over_alpha"] = nullptr;
    ratios.push_back(std::move(row));
  }
  j["ratios"] = std::move(ratios);
  std::string contrast = "inconclusive";
  if (report.alpha_morse == MorseClass::non_morse_consistent &&
      report.h_morse == MorseClass::morse_consistent)
    contrast = "candidate ray diverges strictly faster than the peripheral axis";
  else if (report.alpha_morse == report.h_morse &&
           report.alpha_morse != MorseClass::inconclusive)
    contrast = "no separation at these scales";
  j["classification"] = {{"alpha", to_string(report.alpha_morse)},
                         {"h", to_string(report.h_morse)},
                         {"contrast", contrast}};
  return j;
}

std::string gap_markdown(const GapReport& report, const PresentationGraph& g) {
  std::ostringstream out;
  out << "# Peripheral axis vs cone-exterior ray (omega:" << report.d << ")\n\n";
  out << "- r: 1.." << report.r_max << ", truncation " << report.truncation_factor
      << "*r, seed " << report.seed << "\n";
  out << "- deep/transition window: epsilon " << report.epsilon << ", R " << report.R << "\n";
  out << "- complete: " << (report.complete ? "yes" : "no") << "\n\n";

  out << "## Lower divergence\n\n";
  out << "| r | alpha | h | h/alpha |\n|---|---|---|---|\n";
  for (std::size_t i = 0; i < report.alpha_samples.size(); ++i) {
    out << "| " << report.alpha_samples[i].r << " | " << sample_cell(report.alpha_samples[i])
        << " | " << sample_cell(report.h_samples[i]) << " | ";
    if (report.ratios[i].defined) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", report.ratios[i].value);
      out << buf;
    } else {
      out << '-';
    }
    out << " |\n";
  }
  out << "\nalpha fit: " << fit_line(report.alpha_fit, report.alpha_morse) << "\n";
  out << "h fit: " << fit_line(report.h_fit, report.h_morse) << "\n\n";

  out << "## Deep/transition classes on initial segments\n\n";
  out << "| t | alpha point | alpha class | h point | h class |\n|---|---|---|---|---|\n";
  for (std::size_t i = 0; i < report.alpha_segment.size(); ++i) {
    const auto& ac = report.alpha_classes.classes[i];
    const auto& hc = report.h_classes.classes[i];
    auto cls = [&](const TransitionEntry& e) {
      if (e.cls != VertexClass::deep) return std::string("transition");
      return "deep in " + e.coset.min_rep.str(g) + "*P" +
             std::to_string(e.coset.subgroup_index);
    };
    out << "| " << i << " | " << report.alpha_segment[i].str(g) << " | " << cls(ac) << " | "
        << report.h_segment[i].str(g) << " | " << cls(hc) << " |\n";
  }

  if (!report.notes.empty()) {
    out << "\n## Notes\n\n";
    for (const auto& n : report.notes) out << "- " << n << "\n";
  }
  return out.str();
}

std::string gap_stem(const GapReport& report) {
  std::ostringstream out;
  out << "omega-gap-d" << report.d << "-r" << report.r_max << "-tf" << report.truncation_factor
      << "-eps" << report.epsilon << "-R" << report.R;
  return out.str();
}

}  // namespace coxdiv
