#pragma once

#include <array>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "gcont/construct.hpp"
#include "gcont/io.hpp"
#include "gcont/report.hpp"

namespace gcont {

enum ExitCode : int { kExitPass = 0, kExitInput = 1, kExitContinuity = 2 };

// Patches matched to role names: by name if every role is present, otherwise by order.
inline std::map<std::string, BezierPatch> assign_roles(const SurfaceDocument& doc,
                                                       const std::vector<std::string>& roles, const char* what) {
  std::map<std::string, BezierPatch> out;
  bool by_name = true;
  for (const auto& r : roles) by_name = by_name && doc.find(r).has_value();
  if (by_name) {
    for (const auto& r : roles) out[r] = doc.patch(r);
    return out;
  }
  if (doc.patches.size() != roles.size()) {
    std::ostringstream os;
    os << what << " needs " << roles.size() << " patches (named";
    for (const auto& r : roles) os << ' ' << r;
    os << ", or listed in that order), got " << doc.patches.size();
    throw ArgumentError(os.str());
  }
  for (size_t k = 0; k < roles.size(); ++k) out[roles[k]] = doc.patches[k].patch;
  return out;
}

namespace detail {

struct CliState {
  std::string input;
  std::string input_b;
  std::string out_path;
  std::string report_path;
  std::string obj_path;
  std::vector<int> samples{16, 16};
  std::vector<double> alphas;
  bool deg6 = false;
  bool deg4 = false;
  int n = 0;
  double lambda_a = 1.0, lambda_b = 1.0;
  std::map<std::string, double> free;
};

inline int finish(const CliState& s, const SurfaceDocument* doc, const ReportDocument& rep, std::ostream& out) {
  if (doc && !s.out_path.empty()) save_surface(*doc, s.out_path);
  if (!s.report_path.empty()) write_file(s.report_path, dump_report(rep));
  out << report_table(rep);
  return rep.pass ? kExitPass : kExitContinuity;
}

inline int run_check(const CliState& s, bool g2, std::ostream& out) {
  const SurfaceDocument doc = load_surface(s.input);
  CheckOptions opt;
  opt.g2 = g2;
  return finish(s, nullptr, check_surface(doc, opt, g2 ? "check-g2" : "check-g1"), out);
}

inline int run_complete(const CliState& s, std::ostream& out) {
  const SurfaceDocument in = load_surface(s.input);
  const bool named = in.find("1") && in.find("2") && in.find("4");
  const auto roles = assign_roles(in, {"1", "2", "4"}, "complete-4patch");
  FourthPatchFree f;
  auto get = [&](const char* k) -> std::optional<double> {
    const auto it = s.free.find(k);
    if (it == s.free.end()) return std::nullopt;
    return it->second;
  };
  f.alpha23 = get("alpha23");
  f.alpha43 = get("alpha43");
  f.lambda23_1 = get("lambda23");
  f.lambda43_1 = get("lambda43");
  f.kappa23_1 = get("kappa23");
  f.kappa43_1 = get("kappa43");
  f.beta2_23 = get("beta2-23");
  f.beta2_43 = get("beta2-43");
  FourthPatchOptions opt;
  opt.mode = s.deg4 ? FourthPatchMode::deg4 : FourthPatchMode::deg5;
  const FourthPatchResult res = complete_fourth_patch(roles.at("1"), roles.at("2"), roles.at("4"), f, opt);
  SurfaceDocument doc;
  const std::string n1 = named ? "1" : in.patches[0].name, n2 = named ? "2" : in.patches[1].name,
                    n4 = named ? "4" : in.patches[2].name;
  const std::string n3 = in.find("3") ? n1 + "_3" : "3";
  doc.add(n1, roles.at("1"));
  doc.add(n2, roles.at("2"));
  doc.add(n3, res.patch);
  doc.add(n4, roles.at("4"));
  doc.edges = grid_edges({{n1, {0, 0}}, {n2, {1, 0}}, {n3, {1, 1}}, {n4, {0, 1}}});
  return finish(s, &doc, check_surface(doc, {}, "complete-4patch"), out);
}

inline int run_fill(const CliState& s, std::ostream& out) {
  const SurfaceDocument in = load_surface(s.input);
  const bool open = in.patches.size() == 5 && !(in.find("7") && in.find("8") && in.find("9"));
  const std::vector<std::string> names =
      open ? std::vector<std::string>{"1", "2", "3", "4", "6"}
           : std::vector<std::string>{"1", "2", "3", "4", "6", "7", "8", "9"};
  const auto roles = assign_roles(in, names, "fill-hole");
  std::array<std::optional<BezierPatch>, 9> ring;
  for (const auto& [k, p] : roles) ring[static_cast<size_t>(std::stoi(k) - 1)] = p;
  const NinePatchRing r = make_ring(std::move(ring));
  HoleFillResult h;
  if (s.deg6) {
    if (!s.alphas.empty()) throw ArgumentError("--alpha does not apply to --deg6");
    h = fill_hole_deg6(r);
  } else {
    std::optional<std::array<double, 4>> a;
    if (!s.alphas.empty()) {
      if (s.alphas.size() != 4) throw ArgumentError("--alpha needs four values: a45,a25,a65,a85");
      a = std::array<double, 4>{s.alphas[0], s.alphas[1], s.alphas[2], s.alphas[3]};
    }
    h = fill_hole(r, solve_hole_params(r, a));
  }
  SurfaceDocument doc;
  std::vector<std::pair<std::string, std::pair<int, int>>> cells;
  for (int k = 1; k <= 9; ++k) {
    if (k == 5) {
      doc.add("5", h.patch);
    } else if (r.patches[static_cast<size_t>(k - 1)]) {
      doc.add(std::to_string(k), r.at(k));
    } else {
      continue;
    }
    cells.push_back({std::to_string(k), ring_position(k)});
  }
  doc.edges = grid_edges(cells);
  return finish(s, &doc, check_surface(doc, {}, s.deg6 ? "fill-hole --deg6" : "fill-hole"), out);
}

inline int run_fillet(const CliState& s, std::ostream& out) {
  const SurfaceDocument a = load_surface(s.input), b = load_surface(s.input_b);
  std::vector<BezierPatch> sa, sb;
  for (const auto& p : a.patches) sa.push_back(p.patch);
  for (const auto& p : b.patches) sb.push_back(p.patch);
  FilletOptions opt;
  opt.lambda_a = s.lambda_a;
  opt.lambda_b = s.lambda_b;
  const FilletResult f = build_fillet(sa, sb, s.n, opt);
  SurfaceDocument doc;
  std::vector<std::pair<std::string, std::pair<int, int>>> cells;
  for (int k = 0; k < s.n; ++k) {
    const std::string ka = "a" + std::to_string(k), km = "f" + std::to_string(k), kb = "b" + std::to_string(k);
    doc.add(ka, sa[static_cast<size_t>(k)]);
    doc.add(km, f.middle[static_cast<size_t>(k)]);
    doc.add(kb, sb[static_cast<size_t>(k)]);
    cells.push_back({ka, {k, 0}});
    cells.push_back({km, {k, 1}});
    cells.push_back({kb, {k, 2}});
  }
  doc.edges = grid_edges(cells);
  return finish(s, &doc, check_surface(doc, {}, "fillet"), out);
}

inline int run_export(const CliState& s, std::ostream& out) {
  const SurfaceDocument doc = load_surface(s.input);
  if (s.samples.size() != 2) throw ArgumentError("--samples needs two values: nu,nv");
  export_obj(doc, s.samples[0], s.samples[1], s.obj_path);
  out << "wrote " << doc.patches.size() << " object(s) to " << s.obj_path << '\n';
  return kExitPass;
}

}  // namespace detail

// Runs the command line; args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric continuity checks and smooth constructions for Bezier patch surfaces", "gcont"};
  app.require_subcommand(1);
  detail::CliState s;

  auto add_outputs = [&](CLI::App* c, bool surface) {
    c->add_option("--report", s.report_path, "write the JSON report to this file");
    if (surface) c->add_option("--out", s.out_path, "write the resulting surface document to this file");
  };

  auto* g1 = app.add_subcommand("check-g1", "check G1 continuity of every edge and vertex");
  g1->add_option("surface", s.input, "surface document")->required();
  add_outputs(g1, false);

  auto* g2 = app.add_subcommand("check-g2", "check G2 continuity of every edge and vertex");
  g2->add_option("surface", s.input, "surface document")->required();
  add_outputs(g2, false);

  auto* cp = app.add_subcommand("complete-4patch", "build the fourth (5,5) patch at a G1 corner");
  cp->add_option("surface", s.input, "patches 1, 2, 4 of the corner")->required();
  for (const char* k : {"alpha23", "alpha43", "lambda23", "lambda43", "kappa23", "kappa43", "beta2-23", "beta2-43"})
    cp->add_option_function<double>(std::string("--") + k, [&s, k](const double& x) { s.free[k] = x; });
  cp->add_flag("--deg4", s.deg4, "build a (4,4) patch with linear lambda");
  add_outputs(cp, true);

  auto* fh = app.add_subcommand("fill-hole", "fill the hole of a 3x3 ring");
  fh->add_option("surface", s.input, "ring patches 1,2,3,4,6,7,8,9 (or 1,2,3,4,6)")->required();
  fh->add_flag("--deg6", s.deg6, "fill with a (6,6) patch");
  fh->add_option("--alpha", s.alphas, "a45,a25,a65,a85")->delimiter(',');
  add_outputs(fh, true);

  auto* fl = app.add_subcommand("fillet", "join two strips with a fillet");
  fl->add_option("a", s.input, "lower strip")->required();
  fl->add_option("b", s.input_b, "upper strip")->required();
  fl->add_option("-n", s.n, "patches per strip")->required()->check(CLI::PositiveNumber);
  fl->add_option("--lambda-a", s.lambda_a, "bridge lambda towards strip a");
  fl->add_option("--lambda-b", s.lambda_b, "bridge lambda towards strip b");
  add_outputs(fl, true);

  auto* ex = app.add_subcommand("export", "tessellate to Wavefront OBJ");
  ex->add_option("surface", s.input, "surface document")->required();
  ex->add_option("--obj", s.obj_path, "output file")->required();
  ex->add_option("--samples", s.samples, "nu,nv")->delimiter(',')->expected(2);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (g1->parsed()) return detail::run_check(s, false, out);
    if (g2->parsed()) return detail::run_check(s, true, out);
    if (cp->parsed()) return detail::run_complete(s, out);
    if (fh->parsed()) return detail::run_fill(s, out);
    if (fl->parsed()) return detail::run_fillet(s, out);
    if (ex->parsed()) return detail::run_export(s, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace gcont
