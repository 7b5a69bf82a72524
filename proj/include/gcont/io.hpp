#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gcont/bezier.hpp"
#include "gcont/continuity.hpp"
#include "gcont/error.hpp"

namespace gcont {

using Json = nlohmann::ordered_json;

struct PatchRecord {
  std::string name;
  BezierPatch patch;
};

struct EdgeRecord {
  EdgeCorrespondence corr;
  std::optional<double> lambda;
};

struct SurfaceDocument {
  int version = 1;
  std::vector<PatchRecord> patches;
  std::vector<EdgeRecord> edges;

  std::optional<size_t> find(const std::string& name) const {
    for (size_t k = 0; k < patches.size(); ++k)
      if (patches[k].name == name) return k;
    return std::nullopt;
  }
  const BezierPatch& patch(const std::string& name) const {
    const auto k = find(name);
    if (!k) throw ArgumentError("no patch named '" + name + "'");
    return patches[*k].patch;
  }
  void add(std::string name, BezierPatch p) { patches.push_back({std::move(name), std::move(p)}); }
};

// Edges between grid-adjacent patches, lower/left patch first.
inline std::vector<EdgeRecord> grid_edges(const std::vector<std::pair<std::string, std::pair<int, int>>>& cells) {
  std::vector<EdgeRecord> out;
  for (const auto& [a, pa] : cells)
    for (const auto& [b, pb] : cells) {
      const bool right = pb.first == pa.first + 1 && pb.second == pa.second;
      const bool above = pb.second == pa.second + 1 && pb.first == pa.first;
      if (right || above) out.push_back({grid_edge(pa.first, pa.second, pb.first, pb.second, a, b), std::nullopt});
    }
  return out;
}

inline std::optional<Side> parse_side(const std::string& s) {
  if (s == "u0") return Side::u0;
  if (s == "u1") return Side::u1;
  if (s == "v0") return Side::v0;
  if (s == "v1") return Side::v1;
  return std::nullopt;
}

namespace detail {

inline const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key + ": missing field");
  return *it;
}

inline std::string get_string(const Json& obj, const char* key, const std::string& path) {
  const Json& v = field(obj, key, path);
  if (!v.is_string()) throw ParseError(path + "." + key + ": expected a string");
  return v.get<std::string>();
}

inline int get_int(const Json& obj, const char* key, const std::string& path, int lo = 0) {
  const Json& v = field(obj, key, path);
  if (!v.is_number_integer()) throw ParseError(path + "." + key + ": expected an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > 64) throw ParseError(path + "." + key + ": out of range");
  return static_cast<int>(x);
}

inline double get_number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(path + ": not finite");
  return x;
}

inline Side get_side(const Json& obj, const char* key, const std::string& path) {
  const std::string s = get_string(obj, key, path);
  const auto side = parse_side(s);
  if (!side) throw ParseError(path + "." + key + ": expected one of u0, u1, v0, v1, got '" + s + "'");
  return *side;
}

}  // namespace detail

inline SurfaceDocument parse_surface(const Json& j) {
  SurfaceDocument doc;
  const int version = detail::get_int(j, "version", "$");
  if (version != 1) throw ParseError("$.version: unsupported version " + std::to_string(version));
  const Json& patches = detail::field(j, "patches", "$");
  if (!patches.is_array()) throw ParseError("$.patches: expected an array");
  for (size_t k = 0; k < patches.size(); ++k) {
    const std::string path = "$.patches[" + std::to_string(k) + "]";
    const Json& p = patches[k];
    const std::string name = detail::get_string(p, "name", path);
    if (doc.find(name)) throw ParseError(path + ".name: duplicate patch name '" + name + "'");
    const int du = detail::get_int(p, "degree_u", path, 1), dv = detail::get_int(p, "degree_v", path, 1);
    const Json& net = detail::field(p, "net", path);
    if (!net.is_array()) throw ParseError(path + ".net: expected an array (patch '" + name + "')");
    const size_t want = static_cast<size_t>((du + 1) * (dv + 1));
    if (net.size() != want) {
      std::ostringstream os;
      os << path << ".net: patch '" << name << "' of degree (" << du << ',' << dv << ") needs " << want
         << " points, got " << net.size();
      throw ParseError(os.str());
    }
    std::vector<Point3> pts;
    pts.reserve(want);
    for (size_t i = 0; i < net.size(); ++i) {
      const std::string pp = path + ".net[" + std::to_string(i) + "]";
      if (!net[i].is_array() || net[i].size() != 3) throw ParseError(pp + ": expected [x,y,z] (patch '" + name + "')");
      pts.emplace_back(detail::get_number(net[i][0], pp + "[0]"), detail::get_number(net[i][1], pp + "[1]"),
                       detail::get_number(net[i][2], pp + "[2]"));
    }
    doc.add(name, BezierPatch(du, dv, std::move(pts)));
  }
  if (j.contains("edges")) {
    const Json& edges = j["edges"];
    if (!edges.is_array()) throw ParseError("$.edges: expected an array");
    for (size_t k = 0; k < edges.size(); ++k) {
      const std::string path = "$.edges[" + std::to_string(k) + "]";
      const Json& e = edges[k];
      EdgeRecord r;
      r.corr.a = detail::get_string(e, "a", path);
      r.corr.b = detail::get_string(e, "b", path);
      for (const auto* n : {&r.corr.a, &r.corr.b})
        if (!doc.find(*n)) throw ParseError(path + ": unknown patch '" + *n + "'");
      r.corr.a_side = detail::get_side(e, "a_side", path);
      r.corr.b_side = detail::get_side(e, "b_side", path);
      if (e.contains("reversed")) {
        if (!e["reversed"].is_boolean()) throw ParseError(path + ".reversed: expected a boolean");
        r.corr.reversed = e["reversed"].get<bool>();
      }
      if (e.contains("lambda")) r.lambda = detail::get_number(e["lambda"], path + ".lambda");
      doc.edges.push_back(std::move(r));
    }
  }
  return doc;
}

inline SurfaceDocument parse_surface(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_surface(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ArgumentError("write to '" + path + "' failed");
}

inline SurfaceDocument load_surface(const std::string& path) { return parse_surface(read_file(path)); }

inline Json to_json(const SurfaceDocument& doc) {
  Json j;
  j["version"] = doc.version;
  j["patches"] = Json::array();
  for (const auto& p : doc.patches) {
    Json jp;
    jp["name"] = p.name;
    jp["degree_u"] = p.patch.degree_u();
    jp["degree_v"] = p.patch.degree_v();
    jp["net"] = Json::array();
    for (const auto& x : p.patch.net()) jp["net"].push_back({x.x(), x.y(), x.z()});
    j["patches"].push_back(std::move(jp));
  }
  j["edges"] = Json::array();
  for (const auto& e : doc.edges) {
    Json je;
    je["a"] = e.corr.a;
    je["a_side"] = to_string(e.corr.a_side);
    je["b"] = e.corr.b;
    je["b_side"] = to_string(e.corr.b_side);
    je["reversed"] = e.corr.reversed;
    if (e.lambda) je["lambda"] = *e.lambda;
    j["edges"].push_back(std::move(je));
  }
  return j;
}

inline std::string dump_surface(const SurfaceDocument& doc) { return to_json(doc).dump(1) + "\n"; }

inline void save_surface(const SurfaceDocument& doc, const std::string& path) { write_file(path, dump_surface(doc)); }

// Wavefront OBJ: one object per patch, (nu+1)(nv+1) sampled vertices, two triangles per cell.
inline void write_obj(const SurfaceDocument& doc, int nu, int nv, std::ostream& out) {
  if (nu < 1 || nv < 1) throw ArgumentError("export: samples must be >= 1");
  char buf[128];
  size_t base = 1;
  for (const auto& p : doc.patches) {
    const TriangleMesh m = tessellate(p.patch, nu, nv);
    out << "o " << p.name << '\n';
    for (const auto& v : m.vertices) {
      std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
      out << buf;
    }
    for (const auto& t : m.triangles)
      out << "f " << base + t[0] << ' ' << base + t[1] << ' ' << base + t[2] << '\n';
    base += m.vertices.size();
  }
}

inline void export_obj(const SurfaceDocument& doc, int nu, int nv, const std::string& path) {
  std::ostringstream os;
  write_obj(doc, nu, nv, os);
  write_file(path, os.str());
}

}  // namespace gcont
