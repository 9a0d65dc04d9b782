#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "coxdiv/divergence.hpp"
#include "coxdiv/relhyp.hpp"

namespace coxdiv {

using Json = nlohmann::ordered_json;  // insertion-ordered keys: reproducible bytes

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

void write_text_file(const std::string& path, const std::string& content);

// header comment lines shared by the CSV emitters: config + tool version
std::string csv_preamble(const Json& config);

// r,sphere_size,ball_size rows for every completed sphere (r = 0 included)
std::string ball_stats_csv(const CayleyBall& ball, const Json& config);

// family,geodesic,r,t,status,value,truncation,wall_ms
std::string samples_csv(const std::string& family, const std::string& geodesic,
                        const std::vector<DivergenceSample>& samples, const Json& config);

// position,status,coset_min_rep,epsilon,R
std::string transitions_csv(const TransitionAnnotation& ann, const PresentationGraph& g,
                            const Json& config);

Json fit_json(const GrowthFit& fit);
Json sample_json(const DivergenceSample& s);  // no wall times: reports stay byte-stable
Json witness_json(const std::vector<NormalForm>& path, const PresentationGraph& g);
Json coned_ball_json(const ConedOffBall& cb, const Json& config);

struct ReportPaths {
  std::string json_path;
  std::string md_path;
};

// writes <dir>/<stem>-<hash>.json and .md where hash fingerprints the JSON
// payload; returns both paths
ReportPaths write_report(const std::string& dir, const std::string& stem, const Json& doc,
                         const std::string& markdown);

}  // namespace coxdiv
