#include "coxdiv/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "coxdiv/version.hpp"

namespace coxdiv {

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) fail(Errc::io_error, "short write to '" + path + "'");
}

std::string csv_preamble(const Json& config) {
  std::ostringstream out;
  out << "# tool: " << kToolName << ' ' << kToolVersion << '\n';
  out << "# config: " << config.dump() << '\n';
  return out.str();
}

std::string ball_stats_csv(const CayleyBall& ball, const Json& config) {
  std::ostringstream out;
  out << csv_preamble(config);
  out << "r,sphere_size,ball_size\n";
  for (int r = 0; r <= ball.completed_radius(); ++r)
    out << r << ',' << ball.sphere_size(r) << ',' << ball.ball_size(r) << '\n';
  return out.str();
}

namespace {

std::string value_cell(const DivergenceSample& s) {
  return s.value >= 0 ? std::to_string(s.value) : std::string();
}

}  // namespace

std::string samples_csv(const std::string& family, const std::string& geodesic,
                        const std::vector<DivergenceSample>& samples, const Json& config) {
  std::ostringstream out;
  out << csv_preamble(config);
  out << "family,geodesic,r,t,status,value,truncation,wall_ms\n";
  for (const auto& s : samples)
    out << family << ',' << geodesic << ',' << s.r << ',' << s.provenance << ','
        << to_string(s.status) << ',' << value_cell(s) << ',' << s.truncation_radius << ','
        << s.wall_ms << '\n';
  return out.str();
}

std::string transitions_csv(const TransitionAnnotation& ann, const PresentationGraph& g,
                            const Json& config) {
  std::ostringstream out;
  out << csv_preamble(config);
  out << "position,status,coset_min_rep,epsilon,R\n";
  for (std::size_t i = 0; i < ann.classes.size(); ++i) {
    const auto& e = ann.classes[i];
    out << i << ',' << (e.cls == VertexClass::deep ? "deep" : "transition") << ','
        << (e.cls == VertexClass::deep ? e.coset.min_rep.str(g) : std::string()) << ','
        << ann.epsilon << ',' << ann.R << '\n';
  }
  return out.str();
}

Json fit_json(const GrowthFit& fit) {
  Json j;
  j["model"] = to_string(fit.model);
  if (fit.model == GrowthFit::Model::polynomial) j["exponent"] = fit.exponent;
  if (fit.model == GrowthFit::Model::exponential) j["rate"] = fit.rate;
  j["residual"] = fit.residual;
  j["r_window"] = {fit.r_lo, fit.r_hi};
  j["finite_samples"] = fit.finite_samples;
  j["candidates"] = {
      {"polynomial", {{"exponent", fit.poly_exponent}, {"r2", fit.poly_r2}}},
      {"exponential", {{"rate", fit.exp_rate}, {"r2", fit.exp_r2}}},
  };
  return j;
}

Json sample_json(const DivergenceSample& s) {
  Json j;
  j["r"] = s.r;
  j["status"] = to_string(s.status);
  if (s.value >= 0)
    j["value"] = s.value;
  else
    j["value"] = nullptr;
  j["truncation"] = s.truncation_radius;
  j["provenance"] = s.provenance;
  if (!s.pair_mode.empty()) {
    j["sphere_size"] = s.sphere_size;
    j["finite_pairs"] = s.finite_pairs;
    j["excluded_pairs"] = s.excluded_pairs;
    j["pair_mode"] = s.pair_mode;
  }
  return j;
}

Json witness_json(const std::vector<NormalForm>& path, const PresentationGraph& g) {
  Json arr = Json::array();
  for (const auto& v : path) arr.push_back(v.str(g));
  return arr;
}

Json coned_ball_json(const ConedOffBall& cb, const Json& config) {
  const auto& ball = cb.base();
  const auto& g = ball.graph();
  Json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["config"] = config;
  j["basepoint"] = ball.basepoint().str(g);
  j["radius"] = ball.completed_radius();
  j["complete"] = ball.complete();
  Json groups = Json::array();
  for (std::uint32_t v = 0; v < ball.size(); ++v) groups.push_back(ball.element(v).str(g));
  j["group_vertices"] = std::move(groups);
  Json cones = Json::array();
  for (const auto& c : cb.cosets().cosets)
    cones.push_back({{"min_rep", c.min_rep.str(g)}, {"subgroup", c.subgroup_index}});
  j["cone_vertices"] = std::move(cones);
  Json edges = Json::array();
  const int n = g.rank();
  for (std::uint32_t v = 0; v < ball.size(); ++v)
    for (int s = 0; s < n; ++s) {
      const std::uint32_t w = ball.neighbor(v, static_cast<Gen>(s));
      if (w != kNoVertex && v < w) edges.push_back({v, w, 2});
    }
  for (std::uint32_t k = 0; k < cb.cone_count(); ++k) {
    const auto [lo, hi] = cb.cone_members(k);
    for (const std::uint32_t* p = lo; p != hi; ++p)
      edges.push_back({*p, cb.cone_vertex(k), 1});
  }
  j["edge_weight_unit"] = "half";
  j["edges"] = std::move(edges);
  return j;
}

ReportPaths write_report(const std::string& dir, const std::string& stem, const Json& doc,
                         const std::string& markdown) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(Errc::io_error, "cannot create output directory '" + dir + "'");
  const std::string payload = doc.dump(2) + "\n";
  const std::string name = stem + "-" + hex64(fnv1a64(payload));
  ReportPaths paths;
  paths.json_path = (std::filesystem::path(dir) / (name + ".json")).string();
  paths.md_path = (std::filesystem::path(dir) / (name + ".md")).string();
  write_text_file(paths.json_path, payload);
  write_text_file(paths.md_path, markdown);
  return paths;
}

}  // namespace coxdiv
