#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gcont/bezier.hpp"
#include "gcont/continuity.hpp"

namespace gcont {

// Quadratic lambda and cubic kappa along an edge, in Bernstein ordinates.
struct LinkCoefficients {
  double lambda0 = 1.0;
  double alpha = 1.0;
  double lambda1 = 1.0;
  double kappa0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double kappa1 = 0.0;

  BernsteinPoly lambda() const { return BernsteinPoly({lambda0, alpha, lambda1}); }
  BernsteinPoly kappa() const { return BernsteinPoly({kappa0, beta1, beta2, kappa1}); }
};

// The six vectors m (qbar_{i,1} - qbar_{i,0}) of a quintic band built on a cubic
// neighbour; boundary = q_{i,3}, inner = q_{i,2}. Independent of m.
inline std::array<Vec3, 6> g1_row_from_link(const ControlRow& boundary, const ControlRow& inner,
                                            const LinkCoefficients& c, int m) {
  if (boundary.points.size() != 4 || inner.points.size() != 4)
    throw ArgumentError("g1_row_from_link: rows must have 4 points");
  if (m < 4 || m > 6) throw ArgumentError("g1_row_from_link: m must be 4, 5 or 6");
  const auto& q = boundary.points;
  std::array<Vec3, 4> d;
  for (int k = 0; k < 4; ++k) d[k] = q[k] - inner.points[k];
  const Vec3 t0 = q[1] - q[0], t1 = q[2] - q[1], t2 = q[3] - q[2];
  const double l0 = c.lambda0, a = c.alpha, l1 = c.lambda1;
  const double k0 = c.kappa0, b1 = c.beta1, b2 = c.beta2, k1 = c.kappa1;
  return {
      3.0 * (l0 * d[0] + k0 * t0),
      3.0 * (3.0 * l0 / 5.0 * d[1] + 2.0 * a / 5.0 * d[0] + 2.0 * k0 / 5.0 * t1 + 3.0 * b1 / 5.0 * t0),
      3.0 * (3.0 * l0 / 10.0 * d[2] + 6.0 * a / 10.0 * d[1] + l1 / 10.0 * d[0] + k0 / 10.0 * t2 + 6.0 * b1 / 10.0 * t1 +
             3.0 * b2 / 10.0 * t0),
      3.0 * (l0 / 10.0 * d[3] + 6.0 * a / 10.0 * d[2] + 3.0 * l1 / 10.0 * d[1] + 3.0 * b1 / 10.0 * t2 +
             6.0 * b2 / 10.0 * t1 + k1 / 10.0 * t0),
      3.0 * (2.0 * a / 5.0 * d[3] + 3.0 * l1 / 5.0 * d[2] + 3.0 * b2 / 5.0 * t2 + 2.0 * k1 / 5.0 * t1),
      3.0 * (l1 * d[3] + k1 * t2),
  };
}

// Two control rows of a new patch along a shared edge: row0 on the edge, row1 one step inward.
struct Band {
  std::vector<Point3> row0;
  std::vector<Point3> row1;
};

// Quintic band from a cubic neighbour via the explicit coefficient table.
inline Band quintic_band(const ControlRow& boundary, const ControlRow& inner, const LinkCoefficients& c) {
  const auto off = g1_row_from_link(boundary, inner, c, 5);
  Band b;
  b.row0 = elevate_cubic_row_to_quintic(boundary).points;
  for (int i = 0; i < 6; ++i) b.row1.push_back(b.row0[i] + off[i] / 5.0);
  return b;
}

// Band of edge degree n and transverse degree m for a neighbour of transverse degree p:
// m (row1 - row0) = elevate_n(lambda * p (boundary - inner) + kappa * d/dt boundary).
inline Band g1_band(const ControlRow& boundary, const ControlRow& inner, int p, const BernsteinPoly& lambda,
                    const BernsteinPoly& kappa, int n, int m) {
  if (boundary.points.size() != inner.points.size() || boundary.points.size() < 2)
    throw ArgumentError("g1_band: boundary and inner rows must match");
  std::vector<Vec3> d;
  for (size_t k = 0; k < boundary.points.size(); ++k) d.push_back(p * (boundary.points[k] - inner.points[k]));
  const BezierCurve cross(std::move(d));
  const BezierCurve along = boundary.curve().derivative();
  const BezierCurve s = multiply(lambda, cross) + multiply(kappa, along);
  if (s.degree() > n || boundary.degree() > n)
    throw ArgumentError("g1_band: link degrees exceed the target edge degree");
  const BezierCurve e = s.elevated(n);
  Band b;
  b.row0 = boundary.curve().elevated(n).coeffs;
  for (int i = 0; i <= n; ++i) b.row1.push_back(b.row0[i] + e.coeffs[i] / m);
  return b;
}

struct TwistCheck {
  Vec3 q23 = Vec3::Zero();
  Vec3 q43 = Vec3::Zero();
  double difference = 0.0;
};

// Control-point mask of a net under construction.
struct Mask {
  int nu = 0;
  int nv = 0;
  std::vector<char> bits;

  Mask() = default;
  Mask(int nu_, int nv_) : nu(nu_), nv(nv_), bits(static_cast<size_t>((nu_ + 1) * (nv_ + 1)), 0) {}
  bool operator()(int i, int j) const { return bits[static_cast<size_t>(i * (nv + 1) + j)] != 0; }
  void set(int i, int j) { bits[static_cast<size_t>(i * (nv + 1) + j)] = 1; }
};

// Fills every control point not in `determined`.
using InteriorRule = std::function<void(BezierPatch& net, const Mask& determined)>;

namespace detail {

// Assembles a net from bands; a point written twice must agree.
class NetBuilder {
 public:
  NetBuilder(int nu, int nv, double scale, double tol) : net_(nu, nv), mask_(nu, nv), scale_(scale), tol_(tol) {}

  void put(int i, int j, const Vec3& x, const char* what) {
    if (mask_(i, j)) {
      const double gap = (net_(i, j) - x).norm() / scale_;
      max_gap_ = std::max(max_gap_, gap);
      if (gap > tol_) {
        std::ostringstream os;
        os << what << ": control point (" << i << ',' << j << ") defined inconsistently (relative gap " << gap << ")";
        throw ConsistencyError(os.str());
      }
      return;
    }
    net_(i, j) = x;
    mask_.set(i, j);
  }

  // row0 at j=0 (or j=nv when flipped), row1 next to it
  void put_u_band(const Band& b, bool flipped, const char* what) {
    const int j0 = flipped ? net_.degree_v() : 0, j1 = flipped ? j0 - 1 : 1;
    for (int i = 0; i <= net_.degree_u(); ++i) {
      put(i, j0, b.row0[i], what);
      put(i, j1, b.row1[i], what);
    }
  }
  void put_v_band(const Band& b, bool flipped, const char* what) {
    const int i0 = flipped ? net_.degree_u() : 0, i1 = flipped ? i0 - 1 : 1;
    for (int j = 0; j <= net_.degree_v(); ++j) {
      put(i0, j, b.row0[j], what);
      put(i1, j, b.row1[j], what);
    }
  }

  BezierPatch& net() { return net_; }
  Mask& mask() { return mask_; }
  double max_gap() const { return max_gap_; }

 private:
  BezierPatch net_;
  Mask mask_;
  double scale_;
  double tol_;
  double max_gap_ = 0.0;
};

struct PlacedBand {
  const Band* band;
  bool along_u;
  bool flipped;
  int n;

  Vec3 at(int i, int j) const {
    const int cross = along_u ? j : i, along = along_u ? i : j;
    const int k = flipped ? n - cross : cross;
    if (k == 0) return band->row0[along];
    if (k == 1) return band->row1[along];
    throw ArgumentError("band lookup outside its two rows");
  }
};

// mixed difference at corner (ci,cj) computed from each band separately, scaled by n*m
inline TwistCheck corner_twist(const PlacedBand& x, const PlacedBand& y, int ci, int cj, int n) {
  const int di = ci == 0 ? 1 : -1, dj = cj == 0 ? 1 : -1;
  auto twist = [&](const PlacedBand& b) -> Vec3 {
    return double(n * n) * (b.at(ci + di, cj + dj) - b.at(ci + di, cj) - b.at(ci, cj + dj) + b.at(ci, cj));
  };
  TwistCheck t;
  t.q23 = twist(x);
  t.q43 = twist(y);
  t.difference = (t.q23 - t.q43).norm();
  return t;
}

inline double ring_scale(const std::vector<const BezierPatch*>& ps) {
  Box b;
  for (const auto* p : ps) b.add(bounding_box(*p));
  const double L = b.diagonal();
  if (!(L > 0.0)) throw ArgumentError("degenerate (zero-size) input patches");
  return L;
}

inline void require_bicubic(const BezierPatch& p, const char* who) {
  if (p.degree_u() != 3 || p.degree_v() != 3) {
    std::ostringstream os;
    os << who << " must be bi-cubic, got (" << p.degree_u() << ',' << p.degree_v() << ")";
    throw PreconditionError(os.str());
  }
}

}  // namespace detail

// q_{i,j} = q_{i-1,j} + q_{i,j-1} - q_{i-1,j-1} for every undetermined point, swept from the (1,1) corner
inline void parallelogram_sweep(BezierPatch& q, const Mask& determined) {
  for (int i = 1; i <= q.degree_u(); ++i)
    for (int j = 1; j <= q.degree_v(); ++j)
      if (!determined(i, j)) q(i, j) = q(i - 1, j) + q(i, j - 1) - q(i - 1, j - 1);
}

// Interior of a hole patch whose four border bands are known (degree 5: i,j in {2,3}; degree 6: {2,3,4}).
inline BezierPatch default_interior(BezierPatch q, int degree) {
  if (q.degree_u() != degree || q.degree_v() != degree) throw ArgumentError("default_interior: degree mismatch");
  if (degree == 5) {
    q(2, 2) = q(2, 1) + q(1, 2) - q(1, 1);
    q(3, 2) = q(3, 1) + q(4, 2) - q(4, 1);
    q(2, 3) = q(2, 4) + q(1, 3) - q(1, 4);
    q(3, 3) = q(3, 4) + q(4, 3) - q(4, 4);
    return q;
  }
  if (degree != 6) throw ArgumentError("default_interior: degree must be 5 or 6");
  q(2, 2) = q(2, 1) + q(1, 2) - q(1, 1);
  q(4, 2) = q(4, 1) + q(5, 2) - q(5, 1);
  q(2, 4) = q(2, 5) + q(1, 4) - q(1, 5);
  q(4, 4) = q(4, 5) + q(5, 4) - q(5, 5);
  struct Mid {
    Vec3 value, alt;
  };
  auto mid = [](const Vec3& base, const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Vec3& a2,
                const Vec3& b2, const Vec3& c2, const Vec3& d2) {
    return Mid{base + 0.5 * (a + b) - 0.5 * (c + d), base + 0.5 * (a2 + b2) - 0.5 * (c2 + d2)};
  };
  const Mid m23 = mid(q(1, 3), q(2, 2), q(2, 4), q(1, 2), q(1, 4), q(2, 1), q(2, 5), q(1, 1), q(1, 5));
  const Mid m32 = mid(q(3, 1), q(2, 2), q(4, 2), q(2, 1), q(4, 1), q(1, 2), q(5, 2), q(1, 1), q(5, 1));
  const Mid m34 = mid(q(3, 5), q(2, 4), q(4, 4), q(2, 5), q(4, 5), q(1, 4), q(5, 4), q(1, 5), q(5, 5));
  const Mid m43 = mid(q(5, 3), q(4, 2), q(4, 4), q(5, 2), q(5, 4), q(4, 1), q(4, 5), q(5, 1), q(5, 5));
  Box box = bounding_box(q);
  const double L = std::max(box.diagonal(), 1e-300);
  for (const Mid* m : {&m23, &m32, &m34, &m43})
    if ((m->value - m->alt).norm() / L > 1e-10)
      throw ConsistencyError("default_interior: the two mid-edge forms disagree");
  q(2, 3) = m23.value;
  q(3, 2) = m32.value;
  q(3, 4) = m34.value;
  q(4, 3) = m43.value;
  // q(4,2) appears twice in the second group
  q(3, 3) = 0.5 * (q(2, 3) + q(4, 3) + q(3, 2) + q(3, 4)) - 0.25 * (q(2, 2) + q(4, 2) + q(2, 4) + q(4, 2));
  return q;
}

// ---- fourth patch at a corner ----

enum class FourthPatchMode { deg5, deg4 };

struct FourthPatchFree {
  std::optional<double> lambda23_1, lambda43_1;
  std::optional<double> kappa23_1, kappa43_1;
  std::optional<double> beta2_23, beta2_43;
  std::optional<double> alpha23, alpha43;
  // determined by the corner; if given they are checked, not used
  std::optional<double> beta1_23, beta1_43;
};

struct FourthPatchOptions {
  FourthPatchMode mode = FourthPatchMode::deg5;
  Tolerances tol;
  InteriorRule interior;  // default: parallelogram_sweep
};

struct CornerLinks {
  double lambda12 = 1.0;
  double lambda14 = 1.0;
  double kappa12_0 = 0.0;  // kappa12(v) = kappa12_0 (1 - v)
  double kappa14_0 = 0.0;  // kappa14(u) = kappa14_0 (1 - u)
};

struct FourthPatchResult {
  BezierPatch patch;
  CornerLinks corner;
  // links of the new edges: (2,3) along u, (4,3) along v
  BernsteinPoly lambda23, kappa23, lambda43, kappa43;
  TwistCheck twist;
  double q11_gap = 0.0;
};

// Reads lambda12, lambda14 and the linear kappas off a corner {r1, r2, r4}.
inline CornerLinks corner_links(const BezierPatch& r1, const BezierPatch& r2, const BezierPatch& r4,
                                const Tolerances& tol = {}) {
  const EdgeLink e12 = solve_edge_link(r1, r2, corner_edge_12(), tol.solve_samples, {0, 1}, tol);
  const EdgeLink e14 = solve_edge_link(r1, r4, corner_edge_14(), tol.solve_samples, {0, 1}, tol);
  for (const auto* e : {&e12, &e14}) {
    const char* name = e == &e12 ? "edge (1,2)" : "edge (1,4)";
    std::ostringstream os;
    if (e->max_g1_residual() >= tol.g1) {
      os << name << " is not G1 (residual " << e->max_g1_residual() << ")";
      throw PreconditionError(os.str());
    }
    if (e->fit_residual >= tol.g1) {
      os << name << ": lambda is not constant or kappa not linear (fit residual " << e->fit_residual << ")";
      throw PreconditionError(os.str());
    }
    if (std::abs(e->kappa(1.0)) >= tol.g1) {
      os << name << ": kappa does not vanish at the corner";
      throw PreconditionError(os.str());
    }
  }
  return {e12.lambda.coeffs[0], e14.lambda.coeffs[0], e12.kappa.coeffs[0], e14.kappa.coeffs[0]};
}

struct FourthPatchLinks {
  BernsteinPoly lambda23, kappa23, lambda43, kappa43;
};

// Link functions of the two new edges with the twist-compatible first kappa ordinate.
inline FourthPatchLinks fourth_patch_links(const CornerLinks& c, const FourthPatchFree& f, FourthPatchMode mode) {
  const double l12 = c.lambda12, l14 = c.lambda14;
  const double l23_1 = f.lambda23_1.value_or(l14), l43_1 = f.lambda43_1.value_or(l12);
  const double k23_1 = f.kappa23_1.value_or(0.0), k43_1 = f.kappa43_1.value_or(0.0);
  FourthPatchLinks out;
  // lambda12 kappa23'(0) = lambda43'(0) - lambda12 kappa14(0), and the mirror
  auto check = [](const std::optional<double>& given, double value, const char* name) {
    if (given && std::abs(*given - value) > 1e-12 * std::max(1.0, std::abs(value))) {
      std::ostringstream os;
      os << name << " = " << *given << " violates the corner twist compatibility (required " << value << ")";
      throw PreconditionError(os.str());
    }
  };
  if (mode == FourthPatchMode::deg5) {
    const double a23 = f.alpha23.value_or(0.5 * (l14 + l23_1));
    const double a43 = f.alpha43.value_or(0.5 * (l12 + l43_1));
    const double b23 = (2.0 * (a43 - l12) - l12 * c.kappa14_0) / (3.0 * l12);
    const double b43 = (2.0 * (a23 - l14) - l14 * c.kappa12_0) / (3.0 * l14);
    check(f.beta1_23, b23, "beta1_23");
    check(f.beta1_43, b43, "beta1_43");
    out.lambda23 = BernsteinPoly({l14, a23, l23_1});
    out.lambda43 = BernsteinPoly({l12, a43, l43_1});
    out.kappa23 = BernsteinPoly({0.0, b23, f.beta2_23.value_or(0.0), k23_1});
    out.kappa43 = BernsteinPoly({0.0, b43, f.beta2_43.value_or(0.0), k43_1});
  } else {
    const double b23 = (l43_1 - l12 - l12 * c.kappa14_0) / (2.0 * l12);
    const double b43 = (l23_1 - l14 - l14 * c.kappa12_0) / (2.0 * l14);
    check(f.beta1_23, b23, "beta_23");
    check(f.beta1_43, b43, "beta_43");
    out.lambda23 = BernsteinPoly({l14, l23_1});
    out.lambda43 = BernsteinPoly({l12, l43_1});
    out.kappa23 = BernsteinPoly({0.0, b23, k23_1});
    out.kappa43 = BernsteinPoly({0.0, b43, k43_1});
  }
  return out;
}

struct CornerBands {
  Band bottom;  // from r2, rows j=0,1 of r3
  Band left;    // from r4, columns i=0,1 of r3
  int degree = 5;
};

inline CornerBands corner_bands(const BezierPatch& r2, const BezierPatch& r4, const BernsteinPoly& lambda23,
                                const BernsteinPoly& kappa23, const BernsteinPoly& lambda43,
                                const BernsteinPoly& kappa43, int degree) {
  CornerBands b;
  b.degree = degree;
  const ControlRow b2 = boundary_row(r2, Side::v1, 0), i2 = boundary_row(r2, Side::v1, 1);
  const ControlRow b4 = boundary_row(r4, Side::u1, 0), i4 = boundary_row(r4, Side::u1, 1);
  if (degree == 5 && lambda23.degree() == 2 && kappa23.degree() == 3 && lambda43.degree() == 2 &&
      kappa43.degree() == 3) {
    auto coeffs = [](const BernsteinPoly& l, const BernsteinPoly& k) {
      return LinkCoefficients{l.coeffs[0], l.coeffs[1], l.coeffs[2], k.coeffs[0], k.coeffs[1], k.coeffs[2],
                              k.coeffs[3]};
    };
    b.bottom = quintic_band(b2, i2, coeffs(lambda23, kappa23));
    b.left = quintic_band(b4, i4, coeffs(lambda43, kappa43));
  } else {
    b.bottom = g1_band(b2, i2, r2.degree_v(), lambda23, kappa23, degree, degree);
    b.left = g1_band(b4, i4, r4.degree_u(), lambda43, kappa43, degree, degree);
  }
  return b;
}

// Q23 from the band over edge (2,3), Q43 from the band over edge (4,3)
inline TwistCheck corner_twist(const CornerBands& b) {
  const detail::PlacedBand x{&b.bottom, true, false, b.degree}, y{&b.left, false, false, b.degree};
  return detail::corner_twist(x, y, 0, 0, b.degree);
}

inline FourthPatchResult complete_fourth_patch(const BezierPatch& r1, const BezierPatch& r2, const BezierPatch& r4,
                                               const FourthPatchFree& free = {}, const FourthPatchOptions& opt = {}) {
  detail::require_bicubic(r1, "r1");
  detail::require_bicubic(r2, "r2");
  detail::require_bicubic(r4, "r4");
  FourthPatchResult res;
  res.corner = corner_links(r1, r2, r4, opt.tol);
  const FourthPatchLinks links = fourth_patch_links(res.corner, free, opt.mode);
  res.lambda23 = links.lambda23;
  res.kappa23 = links.kappa23;
  res.lambda43 = links.lambda43;
  res.kappa43 = links.kappa43;
  const int n = opt.mode == FourthPatchMode::deg5 ? 5 : 4;
  const CornerBands bands = corner_bands(r2, r4, links.lambda23, links.kappa23, links.lambda43, links.kappa43, n);
  res.twist = corner_twist(bands);
  const double L = detail::ring_scale({&r1, &r2, &r4});
  res.q11_gap = (bands.bottom.row1[1] - bands.left.row1[1]).norm() / L;
  detail::NetBuilder nb(n, n, L, 1e-9);
  nb.put_u_band(bands.bottom, false, "fourth patch");
  nb.put_v_band(bands.left, false, "fourth patch");
  res.patch = nb.net();
  (opt.interior ? opt.interior : InteriorRule(parallelogram_sweep))(res.patch, nb.mask());
  return res;
}

// ---- 3x3 ring and hole filling ----

// Grid position of ring patch k (1..9): column (k-1)/3 along u, row (k-1)%3 along v.
inline std::pair<int, int> ring_position(int k) { return {(k - 1) / 3, (k - 1) % 3}; }

// Eight bi-cubic patches around the hole at position 5. The right column (7,8,9) may be absent.
struct NinePatchRing {
  std::array<std::optional<BezierPatch>, 9> patches;
  double l12 = 1, l14 = 1, l32 = 1, l36 = 1, l74 = 1, l78 = 1, l96 = 1, l98 = 1;

  bool open_right() const { return !patches[6].has_value(); }
  const BezierPatch& at(int k) const { return *patches[static_cast<size_t>(k - 1)]; }
};

// lambda of the ring join from corner patch c to edge patch e (kappa must vanish)
inline double ring_lambda(const BezierPatch& pc, int c, const BezierPatch& pe, int e, const Tolerances& tol) {
  const auto [ci, cj] = ring_position(c);
  const auto [ei, ej] = ring_position(e);
  const EdgeCorrespondence corr = grid_edge(ci, cj, ei, ej, std::to_string(c), std::to_string(e));
  const EdgeLink l = solve_edge_link(pc, pe, corr, tol.solve_samples, {0, 0}, tol);
  double kmax = 0.0;
  for (const auto& s : l.samples) kmax = std::max(kmax, std::abs(s.kappa));
  std::ostringstream os;
  if (l.max_g1_residual() >= tol.g1) {
    os << "ring join " << c << "-" << e << " is not G1 (residual " << l.max_g1_residual() << ")";
    throw PreconditionError(os.str());
  }
  if (l.fit_residual >= tol.g1 - 0.0 && kmax >= tol.g1) {
    os << "ring join " << c << "-" << e << ": kappa does not vanish";
    throw PreconditionError(os.str());
  }
  if (l.fit_residual >= tol.g1) {
    os << "ring join " << c << "-" << e << ": lambda is not constant";
    throw PreconditionError(os.str());
  }
  return l.lambda.coeffs[0];
}

inline NinePatchRing make_ring(std::array<std::optional<BezierPatch>, 9> patches, const Tolerances& tol = {}) {
  NinePatchRing r;
  patches[4].reset();
  for (int k : {1, 2, 3, 4, 6})
    if (!patches[static_cast<size_t>(k - 1)]) {
      std::ostringstream os;
      os << "ring patch " << k << " is missing";
      throw PreconditionError(os.str());
    }
  const int right = (patches[6] ? 1 : 0) + (patches[7] ? 1 : 0) + (patches[8] ? 1 : 0);
  if (right != 0 && right != 3) throw PreconditionError("ring: patches 7, 8, 9 must be all present or all absent");
  for (size_t k = 0; k < 9; ++k)
    if (patches[k]) detail::require_bicubic(*patches[k], ("ring patch " + std::to_string(k + 1)).c_str());
  r.patches = std::move(patches);
  r.l12 = ring_lambda(r.at(1), 1, r.at(2), 2, tol);
  r.l14 = ring_lambda(r.at(1), 1, r.at(4), 4, tol);
  r.l32 = ring_lambda(r.at(3), 3, r.at(2), 2, tol);
  r.l36 = ring_lambda(r.at(3), 3, r.at(6), 6, tol);
  if (!r.open_right()) {
    r.l74 = ring_lambda(r.at(7), 7, r.at(4), 4, tol);
    r.l78 = ring_lambda(r.at(7), 7, r.at(8), 8, tol);
    r.l96 = ring_lambda(r.at(9), 9, r.at(6), 6, tol);
    r.l98 = ring_lambda(r.at(9), 9, r.at(8), 8, tol);
  }
  return r;
}

enum class HoleMode { deg5, deg6 };

// Link data of one hole edge: lambda = (lambda0, alpha, lambda1) [deg5] or
// (lambda0, alpha1, alpha2, lambda1) [deg6]; kappa = (0, beta1, beta2, 0) [deg5] or 0 [deg6].
struct HoleEdgeParams {
  double lambda0 = 1.0;
  double lambda1 = 1.0;
  double alpha = 1.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
};

struct HoleFillParams {
  HoleMode mode = HoleMode::deg5;
  bool open_right = false;
  // edges shared with patches 4 (below), 2 (left), 6 (above), 8 (right)
  HoleEdgeParams e4, e2, e6, e8;

  BernsteinPoly lambda(const HoleEdgeParams& e) const {
    if (mode == HoleMode::deg5) return BernsteinPoly({e.lambda0, e.alpha, e.lambda1});
    return BernsteinPoly({e.lambda0, e.alpha1, e.alpha2, e.lambda1});
  }
  BernsteinPoly kappa(const HoleEdgeParams& e) const {
    if (mode == HoleMode::deg5) return BernsteinPoly({0.0, e.beta1, e.beta2, 0.0});
    return BernsteinPoly({0.0});
  }
};

namespace detail {

inline void require_lambda(double l, const char* name, const Tolerances& tol) {
  if (std::abs(l) < tol.lambda_min) {
    std::ostringstream os;
    os << "pinned " << name << " is (near) zero";
    throw DegenerateLinkError(os.str());
  }
}

inline void pin_endpoints(HoleFillParams& p, const NinePatchRing& r, const Tolerances& tol) {
  p.open_right = r.open_right();
  p.e4.lambda0 = r.l12;
  p.e2.lambda0 = r.l14;
  p.e2.lambda1 = r.l36;
  p.e6.lambda0 = r.l32;
  if (r.open_right()) {
    p.e4.lambda1 = r.l12;
    p.e6.lambda1 = r.l32;
    p.e8 = HoleEdgeParams{};
  } else {
    p.e4.lambda1 = r.l78;
    p.e6.lambda1 = r.l98;
    p.e8.lambda0 = r.l74;
    p.e8.lambda1 = r.l96;
  }
  require_lambda(r.l12, "lambda12", tol);
  require_lambda(r.l14, "lambda14", tol);
  require_lambda(r.l32, "lambda32", tol);
  require_lambda(r.l36, "lambda36", tol);
  if (!r.open_right()) {
    require_lambda(r.l74, "lambda74", tol);
    require_lambda(r.l78, "lambda78", tol);
    require_lambda(r.l96, "lambda96", tol);
    require_lambda(r.l98, "lambda98", tol);
  }
}

}  // namespace detail

// Free choices are the middle lambda ordinates (alpha45, alpha25, alpha65, alpha85);
// default is the mean of each edge's pinned endpoints. The eight beta follow from the
// twist conditions at the four hole corners.
inline HoleFillParams solve_hole_params(const NinePatchRing& r, std::optional<std::array<double, 4>> alphas = {},
                                        const Tolerances& tol = {}) {
  HoleFillParams p;
  p.mode = HoleMode::deg5;
  detail::pin_endpoints(p, r, tol);
  auto mean = [](const HoleEdgeParams& e) { return 0.5 * (e.lambda0 + e.lambda1); };
  const std::array<double, 4> a = alphas.value_or(std::array<double, 4>{mean(p.e4), mean(p.e2), mean(p.e6), mean(p.e8)});
  p.e4.alpha = a[0];
  p.e2.alpha = a[1];
  p.e6.alpha = a[2];
  p.e8.alpha = r.open_right() ? 1.0 : a[3];
  // corner (1,4,5,2)
  p.e4.beta1 = 2.0 * (p.e2.alpha - r.l14) / (3.0 * r.l14);
  p.e2.beta1 = 2.0 * (p.e4.alpha - r.l12) / (3.0 * r.l12);
  // corner (2,5,6,3)
  p.e6.beta1 = 2.0 * (p.e2.alpha - r.l36) / (3.0 * r.l36);
  p.e2.beta2 = 2.0 * (r.l32 - p.e6.alpha) / (3.0 * r.l32);
  if (r.open_right()) {
    p.e4.beta2 = 0.0;
    p.e6.beta2 = 0.0;
    return p;
  }
  // corner (4,7,8,5)
  p.e8.beta1 = 2.0 * (p.e4.alpha - r.l78) / (3.0 * r.l78);
  p.e4.beta2 = 2.0 * (r.l74 - p.e8.alpha) / (3.0 * r.l74);
  // corner (5,8,9,6)
  p.e8.beta2 = 2.0 * (r.l98 - p.e6.alpha) / (3.0 * r.l98);
  p.e6.beta2 = 2.0 * (r.l96 - p.e8.alpha) / (3.0 * r.l96);
  return p;
}

// The eight twist conditions, in the order: corner 1 (two), corner 7 (two), corner 3 (two), corner 9 (two).
inline std::array<double, 8> hole_constraint_residuals(const NinePatchRing& r, const HoleFillParams& p) {
  return {
      std::abs(3.0 * r.l14 * p.e4.beta1 - 2.0 * (p.e2.alpha - r.l14)),
      std::abs(3.0 * r.l12 * p.e2.beta1 - 2.0 * (p.e4.alpha - r.l12)),
      std::abs(3.0 * r.l78 * p.e8.beta1 - 2.0 * (p.e4.alpha - r.l78)),
      std::abs(3.0 * r.l74 * p.e4.beta2 + 2.0 * (p.e8.alpha - r.l74)),
      std::abs(3.0 * r.l36 * p.e6.beta1 - 2.0 * (p.e2.alpha - r.l36)),
      std::abs(3.0 * r.l32 * p.e2.beta2 + 2.0 * (p.e6.alpha - r.l32)),
      std::abs(3.0 * r.l98 * p.e8.beta2 + 2.0 * (p.e6.alpha - r.l98)),
      std::abs(3.0 * r.l96 * p.e6.beta2 + 2.0 * (p.e8.alpha - r.l96)),
  };
}

struct HoleFillResult {
  BezierPatch patch;
  HoleFillParams params;
  // corners (0,0), (n,0), (0,n), (n,n) of the hole patch
  std::array<TwistCheck, 4> twists;
  double max_band_gap = 0.0;
};

struct HoleBands {
  Band bottom, left, top, right;
  bool has_right = true;
  int degree = 5;
};

inline HoleBands hole_bands(const NinePatchRing& r, const HoleFillParams& p) {
  HoleBands b;
  b.degree = p.mode == HoleMode::deg5 ? 5 : 6;
  b.has_right = !r.open_right();
  auto make = [&](const BezierPatch& nb, Side side, const HoleEdgeParams& e) {
    const ControlRow B = boundary_row(nb, side, 0), I = boundary_row(nb, side, 1);
    if (p.mode == HoleMode::deg5)
      return quintic_band(B, I, LinkCoefficients{e.lambda0, e.alpha, e.lambda1, 0.0, e.beta1, e.beta2, 0.0});
    return g1_band(B, I, 3, p.lambda(e), p.kappa(e), 6, 6);
  };
  b.bottom = make(r.at(4), Side::v1, p.e4);
  b.left = make(r.at(2), Side::u1, p.e2);
  b.top = make(r.at(6), Side::v0, p.e6);
  if (b.has_right) b.right = make(r.at(8), Side::u0, p.e8);
  return b;
}

inline std::array<TwistCheck, 4> hole_twists(const HoleBands& b) {
  const int n = b.degree;
  const detail::PlacedBand bottom{&b.bottom, true, false, n}, top{&b.top, true, true, n};
  const detail::PlacedBand left{&b.left, false, false, n}, right{&b.right, false, true, n};
  std::array<TwistCheck, 4> t;
  t[0] = detail::corner_twist(bottom, left, 0, 0, n);
  t[2] = detail::corner_twist(top, left, 0, n, n);
  if (b.has_right) {
    t[1] = detail::corner_twist(bottom, right, n, 0, n);
    t[3] = detail::corner_twist(top, right, n, n, n);
  }
  return t;
}

namespace detail {

inline HoleFillResult assemble_hole(const NinePatchRing& r, const HoleFillParams& p, const InteriorRule& interior) {
  HoleFillResult res;
  res.params = p;
  const HoleBands b = hole_bands(r, p);
  res.twists = hole_twists(b);
  std::vector<const BezierPatch*> ps;
  for (const auto& q : r.patches)
    if (q) ps.push_back(&*q);
  const int n = b.degree;
  NetBuilder nb(n, n, ring_scale(ps), 1e-9);
  nb.put_u_band(b.bottom, false, "hole fill");
  nb.put_v_band(b.left, false, "hole fill");
  nb.put_u_band(b.top, true, "hole fill");
  if (b.has_right) {
    nb.put_v_band(b.right, true, "hole fill");
  } else {
    // free right boundary: the two outer columns interpolate linearly between the bands
    for (int i = n - 1; i <= n; ++i)
      for (int j = 2; j <= n - 2; ++j) {
        const double s = static_cast<double>(j - 1) / (n - 2);
        nb.put(i, j, (1.0 - s) * nb.net()(i, 1) + s * nb.net()(i, n - 1), "hole fill");
      }
  }
  res.max_band_gap = nb.max_gap();
  if (interior) {
    res.patch = nb.net();
    interior(res.patch, nb.mask());
  } else {
    res.patch = default_interior(nb.net(), n);
  }
  return res;
}

}  // namespace detail

inline HoleFillResult fill_hole(const NinePatchRing& r, const HoleFillParams& p, const InteriorRule& interior = {}) {
  if (p.mode != HoleMode::deg5) throw ArgumentError("fill_hole: parameters are not for a (5,5) fill");
  return detail::assemble_hole(r, p, interior);
}

inline HoleFillResult fill_hole(const NinePatchRing& r) { return fill_hole(r, solve_hole_params(r)); }

// Cubic lambda per edge with its inner ordinates pinned to the endpoint values, kappa = 0.
inline HoleFillParams deg6_params(const NinePatchRing& r, const Tolerances& tol = {}) {
  HoleFillParams p;
  p.mode = HoleMode::deg6;
  detail::pin_endpoints(p, r, tol);
  for (HoleEdgeParams* e : {&p.e4, &p.e2, &p.e6, &p.e8}) {
    e->alpha1 = e->lambda0;
    e->alpha2 = e->lambda1;
    e->alpha = 0.5 * (e->lambda0 + e->lambda1);
    e->beta1 = e->beta2 = 0.0;
  }
  return p;
}

inline HoleFillResult fill_hole_deg6(const NinePatchRing& r, const InteriorRule& interior = {}) {
  return detail::assemble_hole(r, deg6_params(r), interior);
}

// ---- fillet ----

struct FilletOptions {
  double lambda_a = 1.0;
  double lambda_b = 1.0;
  Tolerances tol;
};

struct FilletResult {
  int n = 0;
  // fillet row, one patch per column: bi-cubic bridges in even columns, (5,5) fills in odd ones
  std::vector<BezierPatch> middle;
  std::vector<HoleFillParams> fill_params;
};

// Bi-cubic patch joining a (below) and b (above) with constant lambdas and kappa = 0.
inline BezierPatch bridge_patch(const BezierPatch& a, const BezierPatch& b, double lambda_a, double lambda_b) {
  detail::require_bicubic(a, "strip patch");
  detail::require_bicubic(b, "strip patch");
  BezierPatch q(3, 3);
  for (int i = 0; i <= 3; ++i) {
    q(i, 0) = a(i, 3);
    q(i, 1) = a(i, 3) + lambda_a * (a(i, 3) - a(i, 2));
    q(i, 3) = b(i, 0);
    q(i, 2) = b(i, 0) + lambda_b * (b(i, 0) - b(i, 1));
  }
  return q;
}

namespace detail {

inline void require_strip(const std::vector<BezierPatch>& s, const char* name, const Tolerances& tol) {
  for (size_t k = 0; k < s.size(); ++k) require_bicubic(s[k], name);
  for (size_t k = 0; k + 1 < s.size(); ++k) {
    const EdgeCorrespondence c{std::to_string(k), Side::u1, std::to_string(k + 1), Side::u0, false};
    const EdgeLink l = solve_edge_link(s[k], s[k + 1], c, tol.solve_samples, {0, 0}, tol);
    double kmax = 0.0;
    for (const auto& x : l.samples) kmax = std::max(kmax, std::abs(x.kappa));
    if (l.max_g1_residual() >= tol.g1 || l.fit_residual >= tol.g1 || kmax >= tol.g1) {
      std::ostringstream os;
      os << name << ": join " << k << "-" << k + 1 << " is not G1 with constant lambda and zero kappa";
      throw PreconditionError(os.str());
    }
  }
}

}  // namespace detail

inline FilletResult build_fillet(const std::vector<BezierPatch>& strip_a, const std::vector<BezierPatch>& strip_b,
                                 int n, const FilletOptions& opt = {}) {
  if (n < 1) throw ArgumentError("build_fillet: N must be >= 1");
  if (strip_a.size() != static_cast<size_t>(n) || strip_b.size() != static_cast<size_t>(n))
    throw PreconditionError("build_fillet: each strip must have N patches");
  detail::require_strip(strip_a, "strip a", opt.tol);
  detail::require_strip(strip_b, "strip b", opt.tol);
  FilletResult res;
  res.n = n;
  res.middle.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; k += 2)
    res.middle[static_cast<size_t>(k)] = bridge_patch(strip_a[k], strip_b[k], opt.lambda_a, opt.lambda_b);
  for (int k = 1; k < n; k += 2) {
    std::array<std::optional<BezierPatch>, 9> ring;
    for (int c = 0; c < 3 && k - 1 + c < n; ++c) {
      const size_t col = static_cast<size_t>(k - 1 + c);
      ring[static_cast<size_t>(3 * c)] = strip_a[col];
      ring[static_cast<size_t>(3 * c + 2)] = strip_b[col];
      if (c != 1) ring[static_cast<size_t>(3 * c + 1)] = res.middle[col];
    }
    const NinePatchRing r = make_ring(std::move(ring), opt.tol);
    const HoleFillParams p = solve_hole_params(r, {}, opt.tol);
    res.middle[static_cast<size_t>(k)] = fill_hole(r, p).patch;
    res.fill_params.push_back(p);
  }
  return res;
}

}  // namespace gcont
