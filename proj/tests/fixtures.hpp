#pragma once

// Deterministic surfaces shared by the unit tests, the acceptance run and the data/ files.

#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gcont/gcont.hpp"

namespace fixture {

using gcont::BezierPatch;
using gcont::Side;
using gcont::SurfaceDocument;
using gcont::Vec3;

// smooth bi-cubic over [0,1]^2 with a slightly uneven xy grid
inline BezierPatch global_bicubic() {
  static const double z[4][4] = {
      {0.00, 0.10, 0.05, -0.10}, {0.12, 0.30, 0.20, 0.00}, {0.05, 0.25, 0.35, 0.10}, {-0.05, 0.10, 0.15, 0.20}};
  static const double x[4] = {0.0, 0.31, 0.68, 1.0};
  static const double y[4] = {0.0, 0.35, 0.64, 1.0};
  BezierPatch p(3, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) p(i, j) = Vec3(x[i] + 0.03 * j, y[j] - 0.02 * i, z[i][j]);
  return p;
}

// 2x2 split of the global bi-cubic; 1 lower-left, 2 right, 3 diagonal, 4 above
inline SurfaceDocument split_surface() {
  const BezierPatch g = global_bicubic();
  SurfaceDocument d;
  d.add("1", gcont::subpatch(g, 0.0, 0.5, 0.0, 0.5));
  d.add("2", gcont::subpatch(g, 0.5, 1.0, 0.0, 0.5));
  d.add("3", gcont::subpatch(g, 0.5, 1.0, 0.5, 1.0));
  d.add("4", gcont::subpatch(g, 0.0, 0.5, 0.5, 1.0));
  d.edges = gcont::grid_edges({{"1", {0, 0}}, {"2", {1, 0}}, {"3", {1, 1}}, {"4", {0, 1}}});
  return d;
}

// affine image of (s,t) over [0,1]^2 at bi-degree (3,3)
inline BezierPatch affine_patch(const Vec3& o, const Vec3& du, const Vec3& dv) {
  BezierPatch p(3, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) p(i, j) = o + du * (i / 3.0) + dv * (j / 3.0);
  return p;
}

// two flat patches meeting along x=1 with a fold of `degrees`
inline SurfaceDocument crease(double degrees = 30.0) {
  const double a = degrees * M_PI / 180.0;
  SurfaceDocument d;
  d.add("left", affine_patch(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)));
  d.add("right", affine_patch(Vec3(1, 0, 0), Vec3(std::cos(a), 0, std::sin(a)), Vec3(0, 1, 0)));
  d.edges.push_back({{"left", Side::u1, "right", Side::u0, false}, std::nullopt});
  return d;
}

// 3x3 split of a bi-cubic; patch k covers cell ring_position(k)
inline std::array<std::optional<BezierPatch>, 9> split_ring(const BezierPatch& g, bool with_center = false) {
  std::array<std::optional<BezierPatch>, 9> r;
  for (int k = 1; k <= 9; ++k) {
    if (k == 5 && !with_center) continue;
    const auto [i, j] = gcont::ring_position(k);
    r[static_cast<size_t>(k - 1)] = gcont::subpatch(g, i / 3.0, (i + 1) / 3.0, j / 3.0, (j + 1) / 3.0);
  }
  return r;
}

inline SurfaceDocument ring_document(const std::array<std::optional<BezierPatch>, 9>& r) {
  SurfaceDocument d;
  std::vector<std::pair<std::string, std::pair<int, int>>> cells;
  for (int k = 1; k <= 9; ++k)
    if (r[static_cast<size_t>(k - 1)]) {
      d.add(std::to_string(k), *r[static_cast<size_t>(k - 1)]);
      cells.push_back({std::to_string(k), gcont::ring_position(k)});
    }
  d.edges = gcont::grid_edges(cells);
  return d;
}

inline SurfaceDocument ring() { return ring_document(split_ring(global_bicubic())); }

inline SurfaceDocument corner() {
  SurfaceDocument s = split_surface(), d;
  for (const char* k : {"1", "2", "4"}) d.add(k, s.patch(k));
  d.edges = gcont::grid_edges({{"1", {0, 0}}, {"2", {1, 0}}, {"4", {0, 1}}});
  return d;
}

// rows v in [0,1/3] and [2/3,1] of the global surface, cut into n columns
inline std::pair<std::vector<BezierPatch>, std::vector<BezierPatch>> strips(int n) {
  const BezierPatch g = global_bicubic();
  std::vector<BezierPatch> a, b;
  for (int k = 0; k < n; ++k) {
    a.push_back(gcont::subpatch(g, double(k) / n, double(k + 1) / n, 0.0, 1.0 / 3.0));
    b.push_back(gcont::subpatch(g, double(k) / n, double(k + 1) / n, 2.0 / 3.0, 1.0));
  }
  return {a, b};
}

inline SurfaceDocument strip_document(const std::vector<BezierPatch>& s, const std::string& prefix) {
  SurfaceDocument d;
  std::vector<std::pair<std::string, std::pair<int, int>>> cells;
  for (size_t k = 0; k < s.size(); ++k) {
    d.add(prefix + std::to_string(k), s[k]);
    cells.push_back({prefix + std::to_string(k), {static_cast<int>(k), 0}});
  }
  d.edges = gcont::grid_edges(cells);
  return d;
}

// Ring whose corner patches come from a 3x3 split and whose edge patches are bridges with
// the given lambdas (order: l12, l32, l14, l74, l36, l96, l78, l98).
inline std::array<std::optional<BezierPatch>, 9> bridged_ring(const BezierPatch& g, const std::array<double, 8>& l) {
  auto r = split_ring(g);
  auto at = [&](int k) -> const BezierPatch& { return *r[static_cast<size_t>(k - 1)]; };
  using gcont::bridge_patch;
  using gcont::transpose;
  r[1] = bridge_patch(at(1), at(3), l[0], l[1]);
  r[3] = transpose(bridge_patch(transpose(at(1)), transpose(at(7)), l[2], l[3]));
  r[5] = transpose(bridge_patch(transpose(at(3)), transpose(at(9)), l[4], l[5]));
  r[7] = bridge_patch(at(7), at(9), l[6], l[7]);
  return r;
}

// b across a's u=1 side with b_u = lambda a_u + k0 (1-v) a_v, outer rows arbitrary
inline BezierPatch linked_neighbour(const BezierPatch& a, double lambda, double k0, std::mt19937& rng) {
  std::uniform_real_distribution<double> U(-0.05, 0.05);
  BezierPatch b(3, 3);
  std::array<Vec3, 3> d;
  for (int j = 0; j < 3; ++j) d[j] = 3.0 * (a(3, j + 1) - a(3, j));
  // (k0, 0) times (d0, d1, d2), degree 3
  const std::array<Vec3, 4> kt{k0 * d[0], 2.0 * k0 * d[1] / 3.0, k0 * d[2] / 3.0, Vec3::Zero()};
  const Vec3 step = a(3, 0) - a(2, 0);
  for (int j = 0; j <= 3; ++j) {
    b(0, j) = a(3, j);
    b(1, j) = b(0, j) + (lambda * 3.0 * (a(3, j) - a(2, j)) + kt[j]) / 3.0;
    b(2, j) = b(1, j) + step + Vec3(U(rng), U(rng), U(rng));
    b(3, j) = b(2, j) + step + Vec3(U(rng), U(rng), U(rng));
  }
  return b;
}

inline std::array<double, 8> random_lambdas(std::mt19937& rng, double lo = 0.5, double hi = 2.0) {
  std::uniform_real_distribution<double> U(lo, hi);
  std::array<double, 8> l{};
  for (double& x : l) x = U(rng);
  return l;
}

}  // namespace fixture
