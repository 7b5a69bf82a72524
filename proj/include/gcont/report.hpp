#pragma once

#include <array>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gcont/continuity.hpp"
#include "gcont/io.hpp"

namespace gcont {

struct EdgeResult {
  EdgeCorrespondence corr;
  std::optional<EdgeReport> report;
  std::string error;
  bool pass() const { return report && report->pass; }
};

// canonical corner: r1 lower-left, r2 right of r1, r3 diagonal, r4 above r1
struct VertexResult {
  std::array<std::string, 4> patches;
  std::optional<CompatReport> report;
  std::string error;
  bool pass() const { return report && report->pass; }
};

struct ReportDocument {
  std::string command;
  bool g2 = false;
  Tolerances tol;
  std::vector<EdgeResult> edges;
  std::vector<VertexResult> vertices;
  std::vector<std::string> warnings;
  bool pass = false;

  void finalize() {
    pass = true;
    for (const auto& e : edges) pass = pass && e.pass();
    for (const auto& v : vertices) pass = pass && v.pass();
  }
};

namespace detail {

inline bool boundaries_match(const BezierPatch& a, Side sa, const BezierPatch& b, Side sb, bool reversed,
                             const Tolerances& tol) {
  const double L = edge_scale(a, b);
  for (double t : sample_params(tol.solve_samples)) {
    const auto [ua, va] = side_param(sa, t);
    const auto [ub, vb] = side_param(sb, reversed ? 1.0 - t : t);
    if ((patch_eval(a, ua, va) - patch_eval(b, ub, vb)).norm() / L > tol.g0) return false;
  }
  return true;
}

}  // namespace detail

// Shared boundaries found by sampling; min side of one patch against max side of the other is
// stored with the max side as `a`.
inline std::vector<EdgeRecord> detect_edges(const SurfaceDocument& doc, const Tolerances& tol = {}) {
  std::vector<EdgeRecord> out;
  const std::array<Side, 4> sides{Side::u0, Side::u1, Side::v0, Side::v1};
  for (size_t i = 0; i < doc.patches.size(); ++i)
    for (size_t j = i + 1; j < doc.patches.size(); ++j)
      for (Side si : sides)
        for (Side sj : sides)
          for (bool rev : {false, true}) {
            const auto& a = doc.patches[i];
            const auto& b = doc.patches[j];
            if (!detail::boundaries_match(a.patch, si, b.patch, sj, rev, tol)) continue;
            EdgeRecord r;
            if (!is_max_side(si) && is_max_side(sj))
              r.corr = {b.name, sj, a.name, si, rev};
            else
              r.corr = {a.name, si, b.name, sj, rev};
            out.push_back(r);
          }
  return out;
}

namespace detail {

inline bool has_edge(const std::vector<EdgeRecord>& es, const std::string& a, Side sa, const std::string& b, Side sb) {
  for (const auto& e : es)
    if (!e.corr.reversed && e.corr.a == a && e.corr.a_side == sa && e.corr.b == b && e.corr.b_side == sb) return true;
  return false;
}

}  // namespace detail

// Interior vertices whose four edges are listed in canonical orientation.
inline std::vector<std::array<std::string, 4>> detect_corners(const std::vector<EdgeRecord>& es) {
  std::vector<std::array<std::string, 4>> out;
  for (const auto& e12 : es) {
    if (e12.corr.reversed || e12.corr.a_side != Side::u1 || e12.corr.b_side != Side::u0) continue;
    for (const auto& e14 : es) {
      if (e14.corr.reversed || e14.corr.a != e12.corr.a || e14.corr.a_side != Side::v1 ||
          e14.corr.b_side != Side::v0)
        continue;
      for (const auto& e23 : es) {
        if (e23.corr.reversed || e23.corr.a != e12.corr.b || e23.corr.a_side != Side::v1 ||
            e23.corr.b_side != Side::v0)
          continue;
        const std::string& r3 = e23.corr.b;
        if (detail::has_edge(es, e14.corr.b, Side::u1, r3, Side::u0))
          out.push_back({e12.corr.a, e12.corr.b, r3, e14.corr.b});
      }
    }
  }
  return out;
}

struct CheckOptions {
  Tolerances tol;
  FitDegrees g1_fit;
  FitDegrees g2_fit;
  bool g2 = false;
};

inline ReportDocument check_surface(const SurfaceDocument& doc, const CheckOptions& opt, std::string command) {
  ReportDocument rep;
  rep.command = std::move(command);
  rep.g2 = opt.g2;
  rep.tol = opt.tol;
  std::vector<EdgeRecord> edges = doc.edges;
  if (edges.empty()) {
    edges = detect_edges(doc, opt.tol);
    rep.warnings.push_back("no edges listed; " + std::to_string(edges.size()) + " shared boundaries detected");
  }
  for (const auto& e : edges) {
    EdgeResult r;
    r.corr = e.corr;
    try {
      const BezierPatch& a = doc.patch(e.corr.a);
      const BezierPatch& b = doc.patch(e.corr.b);
      r.report = opt.g2 ? check_g2_edge(a, b, e.corr, opt.tol, opt.g1_fit, opt.g2_fit)
                        : check_g1_edge(a, b, e.corr, opt.tol, opt.g1_fit);
      if (r.report->negative_lambda) rep.warnings.push_back("edge " + describe(e.corr) + ": lambda < 0 (cusp-like)");
      if (e.lambda) {
        double gap = 0.0;
        for (const auto& s : r.report->link.samples) gap = std::max(gap, std::abs(s.lambda - *e.lambda));
        if (gap > opt.tol.g1)
          rep.warnings.push_back("edge " + describe(e.corr) + ": declared lambda differs from the solved one");
      }
    } catch (const Error& ex) {
      r.error = ex.what();
    }
    rep.edges.push_back(std::move(r));
  }
  for (const auto& c : detect_corners(edges)) {
    VertexResult v;
    v.patches = c;
    try {
      CornerOptions co{opt.tol, opt.g1_fit, opt.g2_fit, opt.g2};
      const auto corner = make_corner(doc.patch(c[0]), doc.patch(c[1]), doc.patch(c[2]), doc.patch(c[3]), co);
      v.report = opt.g2 ? check_vertex_g2(corner, opt.tol) : check_vertex_g1(corner, opt.tol);
      if (v.report->negative_lambda)
        rep.warnings.push_back("vertex " + c[0] + "/" + c[1] + "/" + c[2] + "/" + c[3] + ": lambda < 0 at V");
    } catch (const Error& ex) {
      v.error = ex.what();
    }
    rep.vertices.push_back(std::move(v));
  }
  rep.finalize();
  return rep;
}

inline Json to_json(const Tolerances& t) {
  Json j;
  j["g0"] = t.g0;
  j["g1"] = t.g1;
  j["angle"] = t.angle;
  j["g2"] = t.g2;
  j["lambda_min"] = t.lambda_min;
  j["rank"] = t.rank;
  j["solve_samples"] = t.solve_samples;
  j["verify_samples"] = t.verify_samples;
  return j;
}

inline Json to_json(const ReportDocument& r) {
  Json j;
  j["command"] = r.command;
  j["order"] = r.g2 ? "G2" : "G1";
  j["tolerances"] = to_json(r.tol);
  j["edges"] = Json::array();
  for (const auto& e : r.edges) {
    Json je;
    je["a"] = e.corr.a;
    je["a_side"] = to_string(e.corr.a_side);
    je["b"] = e.corr.b;
    je["b_side"] = to_string(e.corr.b_side);
    je["reversed"] = e.corr.reversed;
    je["pass"] = e.pass();
    if (e.report) {
      const EdgeReport& x = *e.report;
      je["g1_link_residual"] = x.max_link_residual;
      je["normal_angle"] = x.max_normal_angle;
      je["link_fit_residual"] = x.link.fit_residual;
      je["link_pass"] = x.link_pass;
      je["normal_pass"] = x.normal_pass;
      je["negative_lambda"] = x.negative_lambda;
      if (x.g2_checked) {
        je["g2_link_residual"] = x.max_g2_link_residual;
        je["curvature_gap"] = x.max_curvature_gap;
        je["g2_link_pass"] = x.g2_link_pass;
        je["curvature_pass"] = x.curvature_pass;
      }
    } else {
      je["error"] = e.error;
    }
    j["edges"].push_back(std::move(je));
  }
  j["vertices"] = Json::array();
  for (const auto& v : r.vertices) {
    Json jv;
    jv["patches"] = v.patches;
    jv["pass"] = v.pass();
    if (v.report) {
      const CompatReport& x = *v.report;
      jv["g1_residuals"] = x.g1_residuals;
      jv["lambda_product_residual"] = x.lambda_product_residual;
      if (x.g2_residuals) jv["g2_residuals"] = *x.g2_residuals;
      jv["negative_lambda"] = x.negative_lambda;
    } else {
      jv["error"] = v.error;
    }
    j["vertices"].push_back(std::move(jv));
  }
  j["warnings"] = r.warnings;
  j["pass"] = r.pass;
  return j;
}

inline std::string dump_report(const ReportDocument& r) { return to_json(r).dump(1) + "\n"; }

// Plain-text residual table.
inline std::string report_table(const ReportDocument& r) {
  std::ostringstream os;
  char buf[256];
  os << r.command << " (" << (r.g2 ? "G2" : "G1") << ")\n";
  os << "edges\n";
  for (const auto& e : r.edges) {
    os << "  " << (e.pass() ? "PASS " : "FAIL ") << describe(e.corr);
    if (e.report) {
      std::snprintf(buf, sizeof buf, "  link %.3e  angle %.3e", e.report->max_link_residual,
                    e.report->max_normal_angle);
      os << buf;
      if (e.report->g2_checked) {
        std::snprintf(buf, sizeof buf, "  g2 %.3e  curv %.3e", e.report->max_g2_link_residual,
                      e.report->max_curvature_gap);
        os << buf;
      }
    } else {
      os << "  error: " << e.error;
    }
    os << '\n';
  }
  os << "vertices\n";
  for (const auto& v : r.vertices) {
    os << "  " << (v.pass() ? "PASS " : "FAIL ") << v.patches[0] << '/' << v.patches[1] << '/' << v.patches[2] << '/'
       << v.patches[3];
    if (v.report) {
      double g1 = 0.0;
      for (double x : v.report->g1_residuals) g1 = std::max(g1, x);
      std::snprintf(buf, sizeof buf, "  g1-relations %.3e  lambda-product %.3e", g1, v.report->lambda_product_residual);
      os << buf;
      if (v.report->g2_residuals) {
        double g2 = 0.0;
        for (double x : *v.report->g2_residuals) g2 = std::max(g2, x);
        std::snprintf(buf, sizeof buf, "  g2-relations %.3e", g2);
        os << buf;
      }
    } else {
      os << "  error: " << v.error;
    }
    os << '\n';
  }
  for (const auto& w : r.warnings) os << "warning: " << w << '\n';
  os << "verdict: " << (r.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace gcont
