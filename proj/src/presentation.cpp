#include "coxdiv/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace coxdiv {

PresentationGraph::PresentationGraph(std::vector<std::string> names,
                                     std::vector<std::pair<Gen, Gen>> edges)
    : names_(std::move(names)), edges_(std::move(edges)) {
  const std::size_t n = names_.size();
  if (n == 0) fail(Errc::invalid_parameter, "presentation graph needs at least one generator");
  if (n > kMaxRank)
    fail(Errc::invalid_parameter,
         "rank " + std::to_string(n) + " exceeds supported maximum " + std::to_string(kMaxRank));
  {
    std::set<std::string> uniq(names_.begin(), names_.end());
    if (uniq.size() != n) fail(Errc::invalid_parameter, "duplicate generator name");
    for (const auto& name : names_)
      if (name.empty() || name.find_first_of(" \t\n,") != std::string::npos)
        fail(Errc::invalid_parameter, "bad generator name '" + name + "'");
  }
  commute_.assign(n, 0);
  std::set<std::pair<Gen, Gen>> seen;
  for (auto& [u, v] : edges_) {
    if (u >= n || v >= n)
      fail(Errc::invalid_parameter, "edge endpoint out of range: {" + std::to_string(u) + "," +
                                        std::to_string(v) + "}");
    if (u == v) fail(Errc::invalid_parameter, "self-loop on generator " + names_[u]);
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second)
      fail(Errc::invalid_parameter, "repeated edge {" + names_[u] + "," + names_[v] + "}");
    commute_[u] |= std::uint64_t{1} << v;
    commute_[v] |= std::uint64_t{1} << u;
  }
  std::sort(edges_.begin(), edges_.end());

  std::ostringstream fp;
  for (const auto& name : names_) fp << name << ';';
  fp << '|';
  for (const auto& [u, v] : edges_) fp << int(u) << '-' << int(v) << ';';
  fingerprint_ = fp.str();
}

Gen PresentationGraph::gen(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Gen>(i);
  fail(Errc::invalid_parameter, "unknown generator '" + name + "'");
}

GroupFamily parse_family(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    fail(Errc::invalid_parameter, "family must look like gamma:<d> or omega:<d>, got '" + text + "'");
  std::string head = text.substr(0, colon);
  std::string tail = text.substr(colon + 1);
  GroupFamily f{};
  if (head == "gamma")
    f.kind = FamilyKind::gamma;
  else if (head == "omega")
    f.kind = FamilyKind::omega;
  else
    fail(Errc::invalid_parameter, "unknown family '" + head + "'");
  try {
    std::size_t used = 0;
    f.d = std::stoi(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(tail);
  } catch (const std::exception&) {
    fail(Errc::invalid_parameter, "bad family parameter '" + tail + "'");
  }
  if (f.d < 1) fail(Errc::invalid_parameter, "family parameter d must be >= 1");
  return f;
}

PresentationGraph build_family(GroupFamily family) {
  const int d = family.d;
  if (d < 1) fail(Errc::invalid_parameter, "family parameter d must be >= 1");
  std::vector<std::string> names;
  for (int i = 0; i <= d; ++i) names.push_back("a" + std::to_string(i));
  for (int i = 0; i <= d; ++i) names.push_back("b" + std::to_string(i));
  auto a = [](int i) { return static_cast<Gen>(i); };
  auto b = [d](int i) { return static_cast<Gen>(d + 1 + i); };
  std::vector<std::pair<Gen, Gen>> edges;
  for (int i = 1; i <= d; ++i) {
    edges.push_back({a(0), a(i)});
    edges.push_back({b(0), a(i)});
  }
  edges.push_back({a(0), b(1)});
  edges.push_back({b(0), b(1)});
  for (int i = 1; i <= d - 1; ++i) {
    edges.push_back({b(i), b(i + 1)});
    edges.push_back({a(i), b(i + 1)});
  }
  if (family.kind == FamilyKind::omega) {
    Gen c1 = static_cast<Gen>(2 * d + 2), c2 = static_cast<Gen>(2 * d + 3);
    names.push_back("c1");
    names.push_back("c2");
    edges.push_back({b(1), c1});
    edges.push_back({c1, c2});
    edges.push_back({c2, a(d)});
  }
  return PresentationGraph(std::move(names), std::move(edges));
}

PresentationGraph read_graph_json(std::istream& in, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::io_error, origin + ": JSON parse failure: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("generators") || !doc.contains("edges"))
    fail(Errc::invalid_parameter, origin + ": expected object with 'generators' and 'edges'");
  if (!doc["generators"].is_array())
    fail(Errc::invalid_parameter, origin + ": 'generators' must be an array of names");
  std::vector<std::string> names;
  for (const auto& g : doc["generators"]) {
    if (!g.is_string()) fail(Errc::invalid_parameter, origin + ": generator names must be strings");
    names.push_back(g.get<std::string>());
  }
  if (!doc["edges"].is_array())
    fail(Errc::invalid_parameter, origin + ": 'edges' must be an array of pairs");
  std::vector<std::pair<Gen, Gen>> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2)
      fail(Errc::invalid_parameter, origin + ": each edge must be a two-element array");
    auto end_of = [&](const nlohmann::json& v) -> Gen {
      if (v.is_number_unsigned() || v.is_number_integer()) {
        auto idx = v.get<std::int64_t>();
        if (idx < 0 || idx >= static_cast<std::int64_t>(names.size()))
          fail(Errc::invalid_parameter,
               origin + ": edge endpoint " + std::to_string(idx) + " out of range");
        return static_cast<Gen>(idx);
      }
      if (v.is_string()) {
        const std::string s = v.get<std::string>();
        for (std::size_t i = 0; i < names.size(); ++i)
          if (names[i] == s) return static_cast<Gen>(i);
        fail(Errc::invalid_parameter, origin + ": edge endpoint '" + s + "' is not a generator");
      }
      fail(Errc::invalid_parameter, origin + ": edge endpoints must be indices or names");
    };
    edges.push_back({end_of(e[0]), end_of(e[1])});
  }
  return PresentationGraph(std::move(names), std::move(edges));
}

PresentationGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open graph file '" + path + "'");
  return read_graph_json(in, path);
}

}  // namespace coxdiv
