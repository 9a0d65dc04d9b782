#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coxdiv/divergence.hpp"
#include "coxdiv/io.hpp"
#include "coxdiv/relhyp.hpp"

namespace coxdiv {

enum class MorseClass { morse_consistent, non_morse_consistent, inconclusive };
const char* to_string(MorseClass c);

// Threshold rule of thumb, never an assertion: polynomial exponent >= 1.5 or
// an exponential fit reads morse-consistent, exponent <= 1.2 reads
// non-morse-consistent, anything else (including a failed fit) inconclusive.
MorseClass morse_heuristic(const GrowthFit& fit);

struct SpectrumCell {
  int d = 0;
  DivergenceSample sample;
};

struct SpectrumReport {
  std::vector<int> d_list;
  int r_max = 0;
  int truncation_factor = 0;
  std::uint64_t seed = 0;
  bool complete = true;
  std::vector<SpectrumCell> cells;     // ldiv per (d, r), d-major
  std::map<int, GrowthFit> fits;       // per d
  std::map<int, MorseClass> morse;     // per d
  std::vector<std::string> notes;      // budget events and the like
};

// ldiv of the axis geodesic alpha_d across the gamma family, truncation =
// truncation_factor * r; budget overruns close the affected d with a note
// and leave the completed prefix in place.
SpectrumReport run_gamma_spectrum(const std::vector<int>& d_list, int r_max,
                                  int truncation_factor, const ProbeContext& ctx = {},
                                  std::uint64_t seed = 1);

struct GapReport {
  int d = 0;
  int r_max = 0;
  int truncation_factor = 0;
  int epsilon = 1;
  int R = 2;
  int segment_len = 11;
  std::uint64_t seed = 0;
  bool complete = true;
  std::vector<DivergenceSample> alpha_samples, h_samples;  // matched (r, truncation)
  GrowthFit alpha_fit, h_fit;
  MorseClass alpha_morse = MorseClass::inconclusive, h_morse = MorseClass::inconclusive;
  std::vector<NormalForm> alpha_segment, h_segment;
  TransitionAnnotation alpha_classes, h_classes;
  struct Ratio {
    int r = 0;
    bool defined = false;  // both samples Finite and alpha > 0
    double value = 0;
  };
  std::vector<Ratio> ratios;  // h / alpha per completed r
  std::vector<std::string> notes;
};

// Peripheral axis alpha_d against the cone-exterior candidate (c1 b0)^inf in
// omega:d: matched ldiv samples, growth fits, deep/transition classification
// of length segment_len initial segments, and the ratio table.
GapReport run_omega_gap(int d, int r_max, int truncation_factor, int epsilon = 1, int R = 2,
                        int segment_len = 11, const ProbeContext& ctx = {},
                        std::uint64_t seed = 1);

// deterministic report rendering (no wall-clock content)
Json spectrum_json(const SpectrumReport& report, const Json& config);
std::string spectrum_markdown(const SpectrumReport& report);
std::string spectrum_stem(const SpectrumReport& report);

Json gap_json(const GapReport& report, const Json& config, const PresentationGraph& g);
std::string gap_markdown(const GapReport& report, const PresentationGraph& g);
std::string gap_stem(const GapReport& report);

}  // namespace coxdiv
