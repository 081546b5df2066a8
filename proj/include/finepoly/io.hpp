#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "finepoly/error.hpp"
#include "finepoly/fine.hpp"
#include "finepoly/milp.hpp"
#include "finepoly/polytope.hpp"
#include "finepoly/rational.hpp"

namespace finepoly::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars

/// Accepts "p/q" strings and JSON integers.
inline Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      throw Error(Errc::Parse, where + ": " + e.what());
    }
  }
  throw Error(Errc::Parse, where + ": expected \"p/q\" string or integer, got " + j.dump());
}

inline json to_json(const Rational& r) { return r.str(); }

inline json to_json(const QVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline json to_json(const std::vector<QVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline QVector vector_from_json(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array()) throw Error(Errc::Parse, where + ": expected an array");
  if (j.size() != dim)
    throw Error(Errc::Parse, where + ": expected " + std::to_string(dim) + " coordinates, got " + std::to_string(j.size()));
  QVector v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(rational_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  return v;
}

// ---------------------------------------------------------------------------
// Documents

/// Parses JSON text; syntax errors carry the line and column.
inline json parse_document(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based; count lines up to it.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::Parse, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Parse, path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A single object is treated as a one-element list.
inline std::vector<json> entries_of(const json& doc, const std::string& source) {
  if (doc.is_object()) return {doc};
  if (doc.is_array()) return std::vector<json>(doc.begin(), doc.end());
  throw Error(Errc::Parse, source + ": expected an object or a list of objects");
}

inline std::size_t dim_of(const json& e, const std::string& where) {
  if (!e.contains("dim") || !e["dim"].is_number_integer() || e["dim"].get<long long>() < 1)
    throw Error(Errc::Parse, where + ": missing or invalid \"dim\"");
  return static_cast<std::size_t>(e["dim"].get<long long>());
}

inline std::string id_of(const json& e, const std::string& fallback) {
  if (e.contains("id") && e["id"].is_string()) return e["id"].get<std::string>();
  return fallback;
}

// ---------------------------------------------------------------------------
// Polytopes: {"dim": d, "vertices": [["p/q", ...], ...]}

struct NamedPolytope {
  std::string id;
  Polytope polytope;
  std::string source;
};

inline std::vector<NamedPolytope> polytopes_from_json(const json& doc, const std::string& source) {
  std::vector<NamedPolytope> out;
  const auto entries = entries_of(doc, source);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const json& e = entries[i];
    const std::string where = source + " entry " + std::to_string(i);
    if (!e.is_object()) throw Error(Errc::Parse, where + ": expected an object");
    const std::size_t d = dim_of(e, where);
    if (!e.contains("vertices") || !e["vertices"].is_array() || e["vertices"].empty())
      throw Error(Errc::Parse, where + ": missing or empty \"vertices\"");
    std::vector<QVector> pts;
    for (std::size_t k = 0; k < e["vertices"].size(); ++k)
      pts.push_back(vector_from_json(e["vertices"][k], d, where + " vertex " + std::to_string(k)));
    std::string stem = std::filesystem::path(source).stem().string();
    out.push_back({id_of(e, stem + "#" + std::to_string(i)), Polytope::from_points(std::move(pts)), source});
  }
  return out;
}

inline std::vector<NamedPolytope> parse_polytopes(const std::string& text, const std::string& source = "<input>") {
  return polytopes_from_json(parse_document(text, source), source);
}

/// A file, or every *.json file of a directory in name order.
inline std::vector<NamedPolytope> load_polytopes(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& f : std::filesystem::directory_iterator(path))
      if (f.is_regular_file() && f.path().extension() == ".json") files.push_back(f.path());
    std::sort(files.begin(), files.end());
    std::vector<NamedPolytope> out;
    for (const auto& f : files) {
      auto part = load_polytopes(f);
      std::move(part.begin(), part.end(), std::back_inserter(out));
    }
    return out;
  }
  return parse_polytopes(read_file(path), path.string());
}

inline json polytope_to_json(const Polytope& p, const std::string& id = {}) {
  json j;
  if (!id.empty()) j["id"] = id;
  j["dim"] = p.ambient_dim();
  j["vertices"] = to_json(p.vertices());
  return j;
}

// ---------------------------------------------------------------------------
// Configurations: {"dim": d, "normals": [[ints], ...]}

/// Configuration as written in a file; spanning is not checked here.
struct ConfigRecord {
  std::string id;
  std::size_t dim = 0;
  std::vector<QVector> normals;
  std::optional<Integer> stated_eta;  ///< optional "eta" field of the file

  NormalConfiguration validated() const { return NormalConfiguration::make(dim, normals); }
};

inline std::vector<ConfigRecord> configs_from_json(const json& doc, const std::string& source) {
  std::vector<ConfigRecord> out;
  const auto entries = entries_of(doc, source);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const json& e = entries[i];
    const std::string where = source + " entry " + std::to_string(i);
    if (!e.is_object()) throw Error(Errc::Parse, where + ": expected an object");
    ConfigRecord c;
    c.dim = dim_of(e, where);
    c.id = id_of(e, "config#" + std::to_string(i));
    if (!e.contains("normals") || !e["normals"].is_array() || e["normals"].empty())
      throw Error(Errc::Parse, where + ": missing or empty \"normals\"");
    for (std::size_t k = 0; k < e["normals"].size(); ++k) {
      QVector v = vector_from_json(e["normals"][k], c.dim, where + " normal " + std::to_string(k));
      if (!is_integral(v)) throw Error(Errc::Parse, where + " normal " + std::to_string(k) + ": not an integer vector");
      c.normals.push_back(std::move(v));
    }
    if (e.contains("eta")) {
      Rational v = rational_from_json(e["eta"], where + " eta");
      if (!v.is_integer()) throw Error(Errc::Parse, where + ": \"eta\" must be an integer");
      c.stated_eta = v.num();
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<ConfigRecord> parse_configs(const std::string& text, const std::string& source = "<input>") {
  return configs_from_json(parse_document(text, source), source);
}

inline std::vector<ConfigRecord> load_configs(const std::filesystem::path& path) {
  return parse_configs(read_file(path), path.string());
}

inline json config_to_json(const NormalConfiguration& c, const std::string& id = {}) {
  json j;
  if (!id.empty()) j["id"] = id;
  j["dim"] = c.dim;
  json ns = json::array();
  for (const auto& a : c.normals) {
    json row = json::array();
    for (const auto& x : a) row.push_back(x.num().get_si());
    ns.push_back(std::move(row));
  }
  j["normals"] = std::move(ns);
  return j;
}

// ---------------------------------------------------------------------------
// Profiles and result rows

inline json profile_to_json(const FineProfile& prof) {
  return json{{"nF", to_json(prof.fine_number)},
              {"muF", to_json(prof.mu_f)},
              {"core_dim", prof.core_dim},
              {"core_vertices", to_json(prof.core_vertices)},
              {"core_normals", to_json(prof.core_normals)}};
}

struct ResultRow {
  std::string id;
  std::size_t dim = 0;
  Rational nF;
  Rational muF;
  int core_dim = 0;
  std::size_t core_normal_count = 0;
  std::string source_file;
};

inline ResultRow make_row(const NamedPolytope& np, const FineProfile& prof) {
  return {np.id, np.polytope.ambient_dim(), prof.fine_number, prof.mu_f, prof.core_dim, prof.core_normals.size(), np.source};
}

inline json row_to_json(const ResultRow& r) {
  return json{{"id", r.id},     {"dim", r.dim},           {"nF", r.nF.str()},
              {"muF", r.muF.str()}, {"core_dim", r.core_dim}, {"core_normal_count", r.core_normal_count},
              {"source_file", r.source_file}};
}

inline json rows_to_json(const std::vector<ResultRow>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(row_to_json(r));
  return a;
}

inline const char* csv_header() { return "id,dim,nF,muF,core_dim,core_normal_count,source_file"; }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string row_to_csv(const ResultRow& r) {
  std::ostringstream os;
  os << csv_field(r.id) << ',' << r.dim << ',' << r.nF.str() << ',' << r.muF.str() << ',' << r.core_dim << ','
     << r.core_normal_count << ',' << csv_field(r.source_file);
  return os.str();
}

inline std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::string out = std::string(csv_header()) + "\n";
  for (const auto& r : rows) out += row_to_csv(r) + "\n";
  return out;
}

/// Witness polytope of a MILP solution, with the solution data alongside.
inline json witness_to_json(const MilpResult& r, const std::string& id) {
  json j;
  j["id"] = id;
  j["dim"] = r.core_point.size();
  j["vertices"] = to_json(r.witness_vertices);
  j["nF"] = to_json(r.fine_number);
  j["core_point"] = to_json(r.core_point);
  j["at_box_boundary"] = r.at_box_boundary;
  return j;
}

}  // namespace finepoly::io
