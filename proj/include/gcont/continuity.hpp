#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <concepts>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <type_traits>
#include <vector>

#include "gcont/bezier.hpp"

namespace gcont {

template <class S>
concept Surface = requires(const S& s, double u, double v, int du, int dv) {
  { s.eval(u, v) } -> std::convertible_to<Vec3>;
  { s.derivative(u, v, du, dv) } -> std::convertible_to<Vec3>;
};

// sampled box for surfaces without a control net
template <Surface S>
Box bounding_box(const S& s) {
  Box b;
  constexpr int n = 16;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) b.add(Vec3(s.eval(static_cast<double>(i) / n, static_cast<double>(j) / n)));
  return b;
}

// Type-erased surface, for mixing surface types in one corner.
class AnySurface {
 public:
  AnySurface() = default;

  template <Surface S>
    requires(!std::same_as<std::remove_cvref_t<S>, AnySurface>)
  AnySurface(S s) : impl_(std::make_shared<Model<S>>(std::move(s))) {}

  Vec3 eval(double u, double v) const { return impl_->eval(u, v); }
  Vec3 derivative(double u, double v, int du, int dv) const { return impl_->derivative(u, v, du, dv); }
  Box box() const { return impl_->box(); }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual Vec3 eval(double u, double v) const = 0;
    virtual Vec3 derivative(double u, double v, int du, int dv) const = 0;
    virtual Box box() const = 0;
  };
  template <class S>
  struct Model : Concept {
    explicit Model(S s) : s(std::move(s)) {}
    Vec3 eval(double u, double v) const override { return s.eval(u, v); }
    Vec3 derivative(double u, double v, int du, int dv) const override { return s.derivative(u, v, du, dv); }
    Box box() const override { return bounding_box(s); }
    S s;
  };
  std::shared_ptr<const Concept> impl_;
};

inline Box bounding_box(const AnySurface& s) { return s.box(); }

struct Tolerances {
  double g0 = 1e-9;
  double g1 = 1e-8;
  double angle = 1e-7;
  double g2 = 1e-6;
  double lambda_min = 1e-8;
  double rank = 1e-10;
  int solve_samples = 33;
  int verify_samples = 101;
};

struct FitDegrees {
  int lambda = 4;
  int kappa = 4;
};

struct EdgeCorrespondence {
  std::string a;
  Side a_side = Side::u1;
  std::string b;
  Side b_side = Side::u0;
  bool reversed = false;
};

// (u,v) of the boundary point with free parameter t
inline std::pair<double, double> side_param(Side s, double t) {
  switch (s) {
    case Side::u0: return {0.0, t};
    case Side::u1: return {1.0, t};
    case Side::v0: return {t, 0.0};
    case Side::v1: return {t, 1.0};
  }
  return {0.0, 0.0};
}

struct Frame {
  Vec3 p, su, sv, suu, suv, svv;
};

template <Surface S>
Frame surface_frame(const S& s, double u, double v, bool second) {
  Frame f;
  f.p = s.eval(u, v);
  f.su = s.derivative(u, v, 1, 0);
  f.sv = s.derivative(u, v, 0, 1);
  if (second) {
    f.suu = s.derivative(u, v, 2, 0);
    f.suv = s.derivative(u, v, 1, 1);
    f.svv = s.derivative(u, v, 0, 2);
  } else {
    f.suu = f.suv = f.svv = Vec3::Zero();
  }
  return f;
}

// Edge quantities at parameter t in a's oriented frame: a_out points from a into b,
// a_tan runs along the edge, b_in points from the edge into b.
struct EdgeJet {
  Frame fa, fb;
  Vec3 a_out, a_tan, b_in;
  Vec3 a_oo, a_ot, a_tt, b_ii;
};

template <Surface A, Surface B>
EdgeJet edge_jet(const A& a, const B& b, const EdgeCorrespondence& c, double t, bool second) {
  EdgeJet j;
  const auto [ua, va] = side_param(c.a_side, t);
  const auto [ub, vb] = side_param(c.b_side, c.reversed ? 1.0 - t : t);
  j.fa = surface_frame(a, ua, va, second);
  j.fb = surface_frame(b, ub, vb, second);
  const double sa = is_max_side(c.a_side) ? 1.0 : -1.0;
  const double sb = is_max_side(c.b_side) ? -1.0 : 1.0;
  if (is_u_side(c.a_side)) {
    j.a_out = sa * j.fa.su;
    j.a_tan = j.fa.sv;
    j.a_oo = j.fa.suu;
    j.a_tt = j.fa.svv;
  } else {
    j.a_out = sa * j.fa.sv;
    j.a_tan = j.fa.su;
    j.a_oo = j.fa.svv;
    j.a_tt = j.fa.suu;
  }
  j.a_ot = sa * j.fa.suv;
  j.b_in = sb * (is_u_side(c.b_side) ? j.fb.su : j.fb.sv);
  j.b_ii = is_u_side(c.b_side) ? j.fb.suu : j.fb.svv;
  return j;
}

struct FrameSolve {
  double x = 0.0;
  double y = 0.0;
  double residual = 0.0;
};

// least squares rhs ~ x e1 + y e2
inline FrameSolve solve_in_frame(const Vec3& e1, const Vec3& e2, const Vec3& rhs) {
  Eigen::Matrix<double, 3, 2> A;
  A.col(0) = e1;
  A.col(1) = e2;
  const Eigen::Vector2d s = A.colPivHouseholderQr().solve(rhs);
  return {s(0), s(1), (rhs - A * s).norm()};
}

inline std::vector<double> sample_params(int n) {
  std::vector<double> t(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) t[k] = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
  return t;
}

struct LinkSample {
  double t = 0.0;
  double lambda = 0.0;
  double kappa = 0.0;
  double g1_residual = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  double g2_residual = 0.0;
};

struct EdgeLink {
  BernsteinPoly lambda;
  BernsteinPoly kappa;
  std::optional<BernsteinPoly> mu;
  std::optional<BernsteinPoly> nu;
  double fit_residual = 0.0;
  double g2_fit_residual = 0.0;
  double scale = 1.0;
  std::vector<LinkSample> samples;

  double max_g1_residual() const {
    double r = 0.0;
    for (const auto& s : samples) r = std::max(r, s.g1_residual);
    return r;
  }
  double max_g2_residual() const {
    double r = 0.0;
    for (const auto& s : samples) r = std::max(r, s.g2_residual);
    return r;
  }
  bool negative_lambda() const {
    for (const auto& s : samples)
      if (s.lambda < 0.0) return true;
    return false;
  }
};

inline std::string describe(const EdgeCorrespondence& c) {
  std::ostringstream os;
  os << c.a << ':' << to_string(c.a_side) << " / " << c.b << ':' << to_string(c.b_side);
  if (c.reversed) os << " (reversed)";
  return os.str();
}

template <Surface A, Surface B>
double edge_scale(const A& a, const B& b) {
  Box box = bounding_box(a);
  box.add(bounding_box(b));
  const double L = box.diagonal();
  if (!(L > 0.0) || !std::isfinite(L)) throw ArgumentError("degenerate (zero-size) patch pair");
  return L;
}

// largest boundary gap over n samples, relative to the pair's scale
template <Surface A, Surface B>
double g0_gap(const A& a, const B& b, const EdgeCorrespondence& c, int n) {
  const double L = edge_scale(a, b);
  double gap = 0.0;
  for (double t : sample_params(n)) {
    const auto [ua, va] = side_param(c.a_side, t);
    const auto [ub, vb] = side_param(c.b_side, c.reversed ? 1.0 - t : t);
    gap = std::max(gap, (Vec3(a.eval(ua, va)) - Vec3(b.eval(ub, vb))).norm() / L);
  }
  return gap;
}

namespace detail {

template <Surface A, Surface B>
void require_g0(const A& a, const B& b, const EdgeCorrespondence& c, const Tolerances& tol) {
  const double gap = g0_gap(a, b, c, tol.solve_samples);
  if (gap > tol.g0) {
    std::ostringstream os;
    os << "edge " << describe(c) << ": boundaries do not coincide (relative gap " << gap << ")";
    throw PreconditionError(os.str());
  }
}

inline void require_rank(const Vec3& e1, const Vec3& e2, double L, const Tolerances& tol, const EdgeCorrespondence& c,
                         double t) {
  if (e1.cross(e2).norm() / (L * L) < tol.rank) {
    std::ostringstream os;
    os << "edge " << describe(c) << ": tangent vectors dependent at t=" << t;
    throw DegenerateParametrizationError(os.str());
  }
}

inline double max_fit_error(const BernsteinPoly& f, const std::vector<double>& t, const std::vector<double>& y) {
  double e = 0.0;
  for (size_t k = 0; k < t.size(); ++k) e = std::max(e, std::abs(f(t[k]) - y[k]));
  return e;
}

}  // namespace detail

// Lemma-1 link: b_in = lambda a_out + kappa a_tan, solved per sample, then fitted.
template <Surface A, Surface B>
EdgeLink solve_edge_link(const A& a, const B& b, const EdgeCorrespondence& c, int n_samples = 33,
                         FitDegrees fit = {}, const Tolerances& tol = {}) {
  if (n_samples < std::max(fit.lambda, fit.kappa) + 1 || n_samples < 2)
    throw ArgumentError("solve_edge_link: too few samples for the fit degrees");
  detail::require_g0(a, b, c, tol);
  EdgeLink link;
  link.scale = edge_scale(a, b);
  std::vector<double> ts = sample_params(n_samples), ls, ks;
  for (double t : ts) {
    const EdgeJet j = edge_jet(a, b, c, t, false);
    detail::require_rank(j.fa.su, j.fa.sv, link.scale, tol, c, t);
    const FrameSolve s = solve_in_frame(j.a_out, j.a_tan, j.b_in);
    if (std::abs(s.x) < tol.lambda_min) {
      std::ostringstream os;
      os << "edge " << describe(c) << ": |lambda| below lambda_min at t=" << t;
      throw DegenerateLinkError(os.str());
    }
    LinkSample ls_;
    ls_.t = t;
    ls_.lambda = s.x;
    ls_.kappa = s.y;
    ls_.g1_residual = s.residual / link.scale;
    link.samples.push_back(ls_);
    ls.push_back(s.x);
    ks.push_back(s.y);
  }
  link.lambda = fit_bernstein(ts, ls, fit.lambda);
  link.kappa = fit_bernstein(ts, ks, fit.kappa);
  link.fit_residual = std::max(detail::max_fit_error(link.lambda, ts, ls), detail::max_fit_error(link.kappa, ts, ks));
  return link;
}

// Lemma-2 link: R = b_ii - l^2 a_oo - 2 l k a_ot - k^2 a_tt = mu a_out + nu a_tan.
template <Surface A, Surface B>
EdgeLink solve_g2_link(const A& a, const B& b, const EdgeCorrespondence& c, const EdgeLink& link, int n_samples = 33,
                       FitDegrees fit = {}, const Tolerances& tol = {}) {
  if (n_samples < std::max(fit.lambda, fit.kappa) + 1 || n_samples < 2)
    throw ArgumentError("solve_g2_link: too few samples for the fit degrees");
  EdgeLink out = link;
  out.samples.clear();
  std::vector<double> ts = sample_params(n_samples), ms, ns;
  for (double t : ts) {
    const EdgeJet j = edge_jet(a, b, c, t, true);
    detail::require_rank(j.fa.su, j.fa.sv, out.scale, tol, c, t);
    const FrameSolve s1 = solve_in_frame(j.a_out, j.a_tan, j.b_in);
    const double l = s1.x, k = s1.y;
    const Vec3 R = j.b_ii - l * l * j.a_oo - 2.0 * l * k * j.a_ot - k * k * j.a_tt;
    const FrameSolve s2 = solve_in_frame(j.a_out, j.a_tan, R);
    LinkSample smp;
    smp.t = t;
    smp.lambda = l;
    smp.kappa = k;
    smp.g1_residual = s1.residual / out.scale;
    smp.mu = s2.x;
    smp.nu = s2.y;
    smp.g2_residual = s2.residual / out.scale;
    out.samples.push_back(smp);
    ms.push_back(s2.x);
    ns.push_back(s2.y);
  }
  out.mu = fit_bernstein(ts, ms, fit.lambda);
  out.nu = fit_bernstein(ts, ns, fit.kappa);
  out.g2_fit_residual = std::max(detail::max_fit_error(*out.mu, ts, ms), detail::max_fit_error(*out.nu, ts, ns));
  return out;
}

inline double normal_angle(const Vec3& na, const Vec3& nb) {
  return std::atan2(na.cross(nb).norm(), std::abs(na.dot(nb)));
}

// normal curvature of the surface with frame f in tangent direction w
inline double normal_curvature(const Frame& f, const Vec3& n, const Vec3& w) {
  const FrameSolve s = solve_in_frame(f.su, f.sv, w);
  const Vec3 d = s.x * f.su + s.y * f.sv;
  const double II = n.dot(s.x * s.x * f.suu + 2.0 * s.x * s.y * f.suv + s.y * s.y * f.svv);
  return II / d.squaredNorm();
}

struct EdgeReport {
  EdgeCorrespondence corr;
  EdgeLink link;
  double max_link_residual = 0.0;
  double max_normal_angle = 0.0;
  double max_g2_link_residual = 0.0;
  double max_curvature_gap = 0.0;
  bool link_pass = false;
  bool normal_pass = false;
  bool g2_checked = false;
  bool g2_link_pass = false;
  bool curvature_pass = false;
  bool negative_lambda = false;
  bool pass = false;
};

template <Surface A, Surface B>
double max_normal_angle(const A& a, const B& b, const EdgeCorrespondence& c, int n, const Tolerances& tol) {
  const double L = edge_scale(a, b);
  double ang = 0.0;
  for (double t : sample_params(n)) {
    const EdgeJet j = edge_jet(a, b, c, t, false);
    detail::require_rank(j.fa.su, j.fa.sv, L, tol, c, t);
    detail::require_rank(j.fb.su, j.fb.sv, L, tol, c, t);
    ang = std::max(ang, normal_angle(j.fa.su.cross(j.fa.sv), j.fb.su.cross(j.fb.sv)));
  }
  return ang;
}

template <Surface A, Surface B>
EdgeReport check_g1_edge(const A& a, const B& b, const EdgeCorrespondence& c, const Tolerances& tol = {},
                         FitDegrees fit = {}) {
  EdgeReport r;
  r.corr = c;
  r.link = solve_edge_link(a, b, c, tol.solve_samples, fit, tol);
  r.max_link_residual = r.link.max_g1_residual();
  r.max_normal_angle = max_normal_angle(a, b, c, tol.verify_samples, tol);
  r.link_pass = r.max_link_residual < tol.g1;
  r.normal_pass = r.max_normal_angle < tol.angle;
  r.negative_lambda = r.link.negative_lambda();
  r.pass = r.link_pass && r.normal_pass;
  return r;
}

// normal curvatures of a and b in three directions 60 degrees apart, scaled by L
template <Surface A, Surface B>
double max_curvature_gap(const A& a, const B& b, const EdgeCorrespondence& c, int n, const Tolerances& tol) {
  const double L = edge_scale(a, b);
  double gap = 0.0;
  for (double t : sample_params(n)) {
    const EdgeJet j = edge_jet(a, b, c, t, true);
    detail::require_rank(j.fa.su, j.fa.sv, L, tol, c, t);
    detail::require_rank(j.fb.su, j.fb.sv, L, tol, c, t);
    const Vec3 na = j.fa.su.cross(j.fa.sv).normalized();
    Vec3 nb = j.fb.su.cross(j.fb.sv).normalized();
    if (nb.dot(na) < 0.0) nb = -nb;
    const Vec3 e1 = j.a_tan.normalized();
    const Vec3 e2 = na.cross(e1);
    for (int k = 0; k < 3; ++k) {
      const double th = k * M_PI / 3.0;
      const Vec3 w = std::cos(th) * e1 + std::sin(th) * e2;
      gap = std::max(gap, std::abs(normal_curvature(j.fa, na, w) - normal_curvature(j.fb, nb, w)) * L);
    }
  }
  return gap;
}

template <Surface A, Surface B>
EdgeReport check_g2_edge(const A& a, const B& b, const EdgeCorrespondence& c, const Tolerances& tol = {},
                         FitDegrees fit = {}, FitDegrees fit2 = {}) {
  EdgeReport r = check_g1_edge(a, b, c, tol, fit);
  r.g2_checked = true;
  r.link = solve_g2_link(a, b, c, r.link, tol.solve_samples, fit2, tol);
  r.max_g2_link_residual = r.link.max_g2_residual();
  r.max_curvature_gap = max_curvature_gap(a, b, c, tol.solve_samples, tol);
  r.g2_link_pass = r.max_g2_link_residual < tol.g2;
  r.curvature_pass = r.max_curvature_gap < tol.g2;
  r.pass = r.pass && r.g2_link_pass && r.curvature_pass;
  return r;
}

// ---- vertex conditions ----

// Link values at V and derivatives along each edge at V.
// Edge (1,2) and (1,4) meet V at t=1, edges (4,3) and (2,3) at t=0.
struct VertexValues {
  double l12 = 1, k12 = 0, l43 = 1, k43 = 0, l14 = 1, k14 = 0, l23 = 1, k23 = 0;
  double dl12 = 0, dk12 = 0, dl43 = 0, dk43 = 0, dl14 = 0, dk14 = 0, dl23 = 0, dk23 = 0;
  double m12 = 0, n12 = 0, m43 = 0, n43 = 0, m14 = 0, n14 = 0, m23 = 0, n23 = 0;
};

inline std::array<double, 4> vertex_g1_residuals(const VertexValues& v) {
  return {std::abs(v.k12 - v.l14 * v.k43), std::abs(v.k14 - v.l12 * v.k23), std::abs(v.l12 - v.l43 - v.k14 * v.k43),
          std::abs(v.l14 - v.l23 - v.k12 * v.k23)};
}

inline double lambda_product_residual(const VertexValues& v) { return std::abs(v.l12 * v.l23 - v.l14 * v.l43); }

inline std::array<double, 6> vertex_g2_residuals(const VertexValues& v) {
  return {
      std::abs(2 * v.l43 * v.dl14 * v.k43 - v.n12 + v.n43 * v.l14 + v.m14 * v.k43 * v.k43),
      std::abs(2 * v.l23 * v.dl12 * v.k23 - v.n14 + v.n23 * v.l12 + v.m12 * v.k23 * v.k23),
      std::abs(2 * v.l43 * v.k43 * v.dk14 - v.m12 + v.m43 + v.n43 * v.k14 + v.n14 * v.k43 * v.k43),
      std::abs(2 * v.l23 * v.k23 * v.dk12 - v.m14 + v.m23 + v.n23 * v.k12 + v.n12 * v.k23 * v.k23),
      std::abs(v.dl43 - v.l23 * v.dl12 + v.l43 * v.dk14 - v.l12 * v.dk23 + v.k14 * v.dk43 - v.m12 * v.k23 +
               v.n14 * v.k43),
      std::abs(v.dl23 - v.l43 * v.dl14 + v.l23 * v.dk12 - v.l14 * v.dk43 + v.k12 * v.dk23 - v.m14 * v.k43 +
               v.n12 * v.k23),
  };
}

// Patch 1 lower-left with V = r1(1,1); 2 right of 1; 4 above 1; 3 diagonal.
template <Surface S = BezierPatch>
struct CornerConfig {
  S r1, r2, r3, r4;
  EdgeLink e12, e43, e14, e23;
  bool has_g2 = false;
};

inline EdgeCorrespondence corner_edge_12() { return {"1", Side::u1, "2", Side::u0, false}; }
inline EdgeCorrespondence corner_edge_43() { return {"4", Side::u1, "3", Side::u0, false}; }
inline EdgeCorrespondence corner_edge_14() { return {"1", Side::v1, "4", Side::v0, false}; }
inline EdgeCorrespondence corner_edge_23() { return {"2", Side::v1, "3", Side::v0, false}; }

// Correspondence for two grid-adjacent patches, a = patch at (ai,aj).
inline EdgeCorrespondence grid_edge(int ai, int aj, int bi, int bj, std::string a = "", std::string b = "") {
  EdgeCorrespondence c;
  c.a = std::move(a);
  c.b = std::move(b);
  if (bi == ai + 1 && bj == aj) {
    c.a_side = Side::u1, c.b_side = Side::u0;
  } else if (bi == ai - 1 && bj == aj) {
    c.a_side = Side::u0, c.b_side = Side::u1;
  } else if (bj == aj + 1 && bi == ai) {
    c.a_side = Side::v1, c.b_side = Side::v0;
  } else if (bj == aj - 1 && bi == ai) {
    c.a_side = Side::v0, c.b_side = Side::v1;
  } else {
    throw ArgumentError("grid_edge: patches are not adjacent");
  }
  return c;
}

struct CornerOptions {
  Tolerances tol;
  FitDegrees g1_fit;
  FitDegrees g2_fit;
  bool with_g2 = false;
};

template <Surface S>
CornerConfig<S> make_corner(S r1, S r2, S r3, S r4, const CornerOptions& opt = {}) {
  CornerConfig<S> c{std::move(r1), std::move(r2), std::move(r3), std::move(r4), {}, {}, {}, {}, opt.with_g2};
  const int n = opt.tol.solve_samples;
  c.e12 = solve_edge_link(c.r1, c.r2, corner_edge_12(), n, opt.g1_fit, opt.tol);
  c.e43 = solve_edge_link(c.r4, c.r3, corner_edge_43(), n, opt.g1_fit, opt.tol);
  c.e14 = solve_edge_link(c.r1, c.r4, corner_edge_14(), n, opt.g1_fit, opt.tol);
  c.e23 = solve_edge_link(c.r2, c.r3, corner_edge_23(), n, opt.g1_fit, opt.tol);
  if (opt.with_g2) {
    c.e12 = solve_g2_link(c.r1, c.r2, corner_edge_12(), c.e12, n, opt.g2_fit, opt.tol);
    c.e43 = solve_g2_link(c.r4, c.r3, corner_edge_43(), c.e43, n, opt.g2_fit, opt.tol);
    c.e14 = solve_g2_link(c.r1, c.r4, corner_edge_14(), c.e14, n, opt.g2_fit, opt.tol);
    c.e23 = solve_g2_link(c.r2, c.r3, corner_edge_23(), c.e23, n, opt.g2_fit, opt.tol);
  }
  return c;
}

template <Surface S>
VertexValues vertex_values(const CornerConfig<S>& c) {
  VertexValues v;
  const LinkSample& s12 = c.e12.samples.back();
  const LinkSample& s43 = c.e43.samples.front();
  const LinkSample& s14 = c.e14.samples.back();
  const LinkSample& s23 = c.e23.samples.front();
  v.l12 = s12.lambda, v.k12 = s12.kappa;
  v.l43 = s43.lambda, v.k43 = s43.kappa;
  v.l14 = s14.lambda, v.k14 = s14.kappa;
  v.l23 = s23.lambda, v.k23 = s23.kappa;
  v.dl12 = c.e12.lambda.derivative()(1.0), v.dk12 = c.e12.kappa.derivative()(1.0);
  v.dl43 = c.e43.lambda.derivative()(0.0), v.dk43 = c.e43.kappa.derivative()(0.0);
  v.dl14 = c.e14.lambda.derivative()(1.0), v.dk14 = c.e14.kappa.derivative()(1.0);
  v.dl23 = c.e23.lambda.derivative()(0.0), v.dk23 = c.e23.kappa.derivative()(0.0);
  v.m12 = s12.mu, v.n12 = s12.nu;
  v.m43 = s43.mu, v.n43 = s43.nu;
  v.m14 = s14.mu, v.n14 = s14.nu;
  v.m23 = s23.mu, v.n23 = s23.nu;
  return v;
}

struct CompatReport {
  VertexValues values;
  std::array<double, 4> g1_residuals{};
  double lambda_product_residual = 0.0;
  std::optional<std::array<double, 6>> g2_residuals;
  std::array<bool, 4> g1_pass{};
  bool lambda_product_pass = false;
  std::array<bool, 6> g2_pass{};
  bool negative_lambda = false;
  Tolerances tol;
  bool pass = false;
};

inline CompatReport compat_report_g1(const VertexValues& v, const Tolerances& tol) {
  for (double l : {v.l12, v.l43, v.l14, v.l23})
    if (std::abs(l) < tol.lambda_min) throw DegenerateLinkError("vertex: |lambda| below lambda_min at V");
  CompatReport r;
  r.values = v;
  r.tol = tol;
  r.g1_residuals = vertex_g1_residuals(v);
  r.lambda_product_residual = lambda_product_residual(v);
  r.pass = true;
  for (int i = 0; i < 4; ++i) {
    r.g1_pass[i] = r.g1_residuals[i] < tol.g1;
    r.pass = r.pass && r.g1_pass[i];
  }
  r.lambda_product_pass = r.lambda_product_residual < tol.g1;
  r.pass = r.pass && r.lambda_product_pass;
  r.negative_lambda = v.l12 < 0 || v.l43 < 0 || v.l14 < 0 || v.l23 < 0;
  return r;
}

inline CompatReport compat_report_g2(const VertexValues& v, const Tolerances& tol) {
  CompatReport r = compat_report_g1(v, tol);
  r.g2_residuals = vertex_g2_residuals(v);
  for (int i = 0; i < 6; ++i) {
    r.g2_pass[i] = (*r.g2_residuals)[i] < tol.g2;
    r.pass = r.pass && r.g2_pass[i];
  }
  return r;
}

template <Surface S>
CompatReport check_vertex_g1(const CornerConfig<S>& c, const Tolerances& tol = {}) {
  return compat_report_g1(vertex_values(c), tol);
}

template <Surface S>
CompatReport check_vertex_g2(const CornerConfig<S>& c, const Tolerances& tol = {}) {
  if (!c.has_g2) throw PreconditionError("check_vertex_g2: corner links have no mu/nu (build with with_g2)");
  return compat_report_g2(vertex_values(c), tol);
}

}  // namespace gcont
