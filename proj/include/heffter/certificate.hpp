#pragma once

// JSON certificates for difference matrices and spaces, scan records, and
// the line-oriented cycle-system export.  Loaders parse and rebuild the
// field context; callers are expected to re-verify loaded objects.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "heffter/errors.hpp"
#include "heffter/field.hpp"
#include "heffter/halfset.hpp"
#include "heffter/hdm.hpp"
#include "heffter/space.hpp"
#include "heffter/cycles.hpp"

namespace heffter {

using json = nlohmann::json;

struct parse_error : error {
  explicit parse_error(const std::string& what) : error(what) {}
};

struct search_metadata {
  std::string strategy;  // "exhaustive" or "random"
  std::optional<std::uint64_t> seed;
  std::int64_t nodes = 0;
  bool exhaustive = false;

  json to_json() const {
    json j;
    j["strategy"] = strategy;
    if (seed)
      j["seed"] = *seed;
    else
      j["seed"] = nullptr;
    j["nodes"] = nodes;
    j["exhaustive"] = exhaustive;
    return j;
  }
};

inline json hdm_to_json(const heffter_difference_matrix& B,
                        const std::optional<search_metadata>& meta =
                            std::nullopt) {
  json j;
  j["type"] = "hdm";
  j["q"] = B.field().q();
  j["k"] = B.k();
  j["r"] = B.r();
  j["primitive_root"] = B.field().g();
  j["signs"] = B.halfset.signs();
  j["rows"] = B.rows;
  if (meta) j["search"] = meta->to_json();
  return j;
}

inline json space_to_json(const heffter_space& S) {
  json j;
  j["type"] = "space";
  j["q"] = S.field().q();
  j["k"] = S.k();
  j["r"] = S.r();
  j["primitive_root"] = S.field().g();
  j["signs"] = S.halfset.signs();
  j["classes"] = S.classes;
  return j;
}

namespace detail {

inline half_set halfset_from_json(const json& j) {
  if (!j.contains("q") || !j.contains("k"))
    throw parse_error("certificate lacks q or k");
  std::int64_t q = j.at("q").get<std::int64_t>();
  std::int64_t k = j.at("k").get<std::int64_t>();
  std::optional<std::int64_t> g;
  if (j.contains("primitive_root") && !j.at("primitive_root").is_null())
    g = j.at("primitive_root").get<std::int64_t>();
  std::vector<int> signs(k, 0);
  if (j.contains("signs")) signs = j.at("signs").get<std::vector<int>>();
  return build_halfset(make_field(q, k, g), std::move(signs));
}

}  // namespace detail

inline std::string certificate_kind(const json& j) {
  if (j.contains("type")) return j.at("type").get<std::string>();
  if (j.contains("rows")) return "hdm";
  if (j.contains("classes")) return "space";
  throw parse_error("cannot tell certificate type (no type/rows/classes)");
}

inline heffter_difference_matrix hdm_from_json(const json& j) {
  half_set hs = detail::halfset_from_json(j);
  if (!j.contains("rows")) throw parse_error("hdm certificate lacks rows");
  auto rows = j.at("rows").get<std::vector<row_t>>();
  const std::int64_t k = hs.k();
  for (row_t& r : rows) {
    if (static_cast<std::int64_t>(r.size()) != k)
      throw parse_error("row of wrong length");
    for (elem& x : r) x = hs.field().reduce(x);  // canonical residues
  }
  return heffter_difference_matrix{std::move(hs), std::move(rows)};
}

inline heffter_space space_from_json(const json& j) {
  half_set hs = detail::halfset_from_json(j);
  if (!j.contains("classes"))
    throw parse_error("space certificate lacks classes");
  auto classes = j.at("classes").get<std::vector<std::vector<block_t>>>();
  for (auto& cls : classes)
    for (block_t& blk : cls)
      for (elem& x : blk) x = hs.field().reduce(x);
  return heffter_space{std::move(hs), std::move(classes)};
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what());
  }
  return j;
}

inline void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw error("cannot write " + path);
  out << j.dump(2) << "\n";
}

// one cycle per line as comma-separated vertices under a q/k/system header
inline std::string cycle_system_to_text(const cycle_system& cs,
                                        std::int64_t system_index) {
  std::ostringstream out;
  out << "q=" << cs.q << " k=" << cs.k << " system=" << system_index << "\n";
  for (const cycle_t& c : cs.cycles) {
    for (std::size_t i = 0; i < c.size(); ++i)
      out << (i ? "," : "") << c[i];
    out << "\n";
  }
  return out.str();
}

struct scan_record {
  std::int64_t q = 0;
  std::int64_t k = 0;
  std::int64_t r_target = 0;
  std::int64_t r_achieved = 0;
  std::vector<int> signs;
  std::string strategy;
  std::optional<std::uint64_t> seed;
  std::int64_t nodes = 0;
  double wall_ms = 0.0;
  bool found = false;
  json certificate;  // embedded HDM certificate when found

  json to_json() const {
    json j;
    j["q"] = q;
    j["k"] = k;
    j["r_target"] = r_target;
    j["r_achieved"] = r_achieved;
    j["signs"] = signs;
    j["strategy"] = strategy;
    if (seed)
      j["seed"] = *seed;
    else
      j["seed"] = nullptr;
    j["nodes"] = nodes;
    j["wall_ms"] = wall_ms;
    j["found"] = found;
    if (found) j["certificate"] = certificate;
    return j;
  }
};

}  // namespace heffter
