#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "gcont/error.hpp"

namespace gcont {

using Vec3 = Eigen::Vector3d;
using Point3 = Vec3;

enum class Side { u0, u1, v0, v1 };

inline const char* to_string(Side s) {
  switch (s) {
    case Side::u0: return "u0";
    case Side::u1: return "u1";
    case Side::v0: return "v0";
    case Side::v1: return "v1";
  }
  return "?";
}

// true for the u=const sides, where the free parameter is v
inline bool is_u_side(Side s) { return s == Side::u0 || s == Side::u1; }
inline bool is_max_side(Side s) { return s == Side::u1 || s == Side::v1; }

namespace detail {

inline constexpr int kBinomialTable = 12;

constexpr auto make_binomials() {
  std::array<std::array<double, kBinomialTable + 1>, kBinomialTable + 1> t{};
  for (int n = 0; n <= kBinomialTable; ++n) {
    t[n][0] = 1.0;
    for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0.0);
  }
  return t;
}

inline constexpr auto kBinomials = make_binomials();

template <class T>
T zero() {
  if constexpr (std::is_arithmetic_v<T>) {
    return T(0);
  } else {
    return T::Zero();
  }
}

}  // namespace detail

inline double binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw ArgumentError("binomial: index out of range");
  if (n <= detail::kBinomialTable) return detail::kBinomials[n][k];
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double bernstein_eval(int n, int i, double u) {
  if (n < 0 || i < 0 || i > n) throw ArgumentError("bernstein_eval: index out of range");
  double a = 1.0, b = 1.0;
  for (int k = 0; k < n - i; ++k) a *= (1.0 - u);
  for (int k = 0; k < i; ++k) b *= u;
  return binomial(n, i) * a * b;
}

// all n+1 basis values at u, by the triangular recurrence
inline std::vector<double> bernstein_basis(int n, double u) {
  std::vector<double> b(n + 1, 0.0);
  b[0] = 1.0;
  const double s = 1.0 - u;
  for (int k = 1; k <= n; ++k) {
    double saved = 0.0;
    for (int i = 0; i < k; ++i) {
      const double t = b[i];
      b[i] = saved + s * t;
      saved = u * t;
    }
    b[k] = saved;
  }
  return b;
}

// Polynomial (scalar or point valued) in Bernstein form on [0,1].
template <class T>
struct Bernstein {
  std::vector<T> coeffs;

  Bernstein() : coeffs{detail::zero<T>()} {}
  explicit Bernstein(std::vector<T> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) throw ArgumentError("Bernstein: empty coefficient list");
  }

  static Bernstein constant(const T& c) { return Bernstein(std::vector<T>{c}); }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  T operator()(double u) const {
    std::vector<T> w = coeffs;
    const double s = 1.0 - u;
    for (int k = degree(); k > 0; --k)
      for (int i = 0; i < k; ++i) w[i] = s * w[i] + u * w[i + 1];
    return w[0];
  }

  Bernstein derivative() const {
    const int n = degree();
    if (n == 0) return Bernstein();
    std::vector<T> d(n);
    for (int i = 0; i < n; ++i) d[i] = n * (coeffs[i + 1] - coeffs[i]);
    return Bernstein(std::move(d));
  }

  Bernstein elevated(int target) const {
    if (target < degree()) throw ArgumentError("Bernstein: cannot lower degree by elevation");
    std::vector<T> c = coeffs;
    for (int n = degree(); n < target; ++n) {
      std::vector<T> e(n + 2);
      e[0] = c[0];
      e[n + 1] = c[n];
      for (int i = 1; i <= n; ++i) {
        const double a = static_cast<double>(i) / (n + 1);
        e[i] = a * c[i - 1] + (1.0 - a) * c[i];
      }
      c = std::move(e);
    }
    return Bernstein(std::move(c));
  }
};

using BernsteinPoly = Bernstein<double>;
using BezierCurve = Bernstein<Vec3>;

template <class T>
Bernstein<T> operator+(const Bernstein<T>& a, const Bernstein<T>& b) {
  const int n = std::max(a.degree(), b.degree());
  Bernstein<T> x = a.elevated(n), y = b.elevated(n);
  for (int i = 0; i <= n; ++i) x.coeffs[i] = x.coeffs[i] + y.coeffs[i];
  return x;
}

// scalar times (scalar or point) polynomial
template <class T>
Bernstein<T> multiply(const BernsteinPoly& a, const Bernstein<T>& b) {
  const int n = a.degree(), m = b.degree();
  std::vector<T> c(n + m + 1, detail::zero<T>());
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m; ++j)
      c[i + j] = c[i + j] + (binomial(n, i) * binomial(m, j) / binomial(n + m, i + j) * a.coeffs[i]) * b.coeffs[j];
  return Bernstein<T>(std::move(c));
}

// Least-squares fit of Bernstein ordinates to samples (t_k, y_k).
inline BernsteinPoly fit_bernstein(const std::vector<double>& t, const std::vector<double>& y, int degree);

struct RowSource {
  std::string patch;
  Side side = Side::u0;
  int offset = 0;
};

struct ControlRow {
  std::vector<Point3> points;
  RowSource source;

  int degree() const { return static_cast<int>(points.size()) - 1; }
  BezierCurve curve() const { return BezierCurve(points); }
};

// Tensor-product patch; net(i,j) multiplies B_i(u) B_j(v).
class BezierPatch {
 public:
  BezierPatch() = default;

  BezierPatch(int degree_u, int degree_v) : du_(degree_u), dv_(degree_v) {
    if (degree_u < 1 || degree_v < 1) throw ArgumentError("BezierPatch: degrees must be >= 1");
    net_.assign(static_cast<size_t>((du_ + 1) * (dv_ + 1)), Point3::Zero());
  }

  BezierPatch(int degree_u, int degree_v, std::vector<Point3> net) : du_(degree_u), dv_(degree_v), net_(std::move(net)) {
    if (degree_u < 1 || degree_v < 1) throw ArgumentError("BezierPatch: degrees must be >= 1");
    if (net_.size() != static_cast<size_t>((du_ + 1) * (dv_ + 1)))
      throw ArgumentError("BezierPatch: net size does not match degrees");
    for (const auto& q : net_)
      if (!q.allFinite()) throw ArgumentError("BezierPatch: non-finite control point");
  }

  int degree_u() const { return du_; }
  int degree_v() const { return dv_; }

  const Point3& operator()(int i, int j) const { return net_[static_cast<size_t>(i * (dv_ + 1) + j)]; }
  Point3& operator()(int i, int j) { return net_[static_cast<size_t>(i * (dv_ + 1) + j)]; }

  // row-major: i outer, j inner
  const std::vector<Point3>& net() const { return net_; }

  Point3 eval(double u, double v) const;
  Vec3 derivative(double u, double v, int du, int dv) const;

 private:
  int du_ = 0;
  int dv_ = 0;
  std::vector<Point3> net_;
};

namespace detail {

inline void check_domain(double u, double v) {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
    throw ArgumentError("parameter outside [0,1]^2");
}

inline Point3 basis_sum(const BezierPatch& p, double u, double v) {
  const auto bu = bernstein_basis(p.degree_u(), u);
  const auto bv = bernstein_basis(p.degree_v(), v);
  Point3 r = Point3::Zero();
  for (int i = 0; i <= p.degree_u(); ++i) {
    Point3 col = Point3::Zero();
    for (int j = 0; j <= p.degree_v(); ++j) col += bv[j] * p(i, j);
    r += bu[i] * col;
  }
  return r;
}

// (du,dv)-th difference net scaled to the hodograph; degrees may drop to 0
struct Net {
  int nu = 0, nv = 0;
  std::vector<Vec3> q;
  Vec3& at(int i, int j) { return q[static_cast<size_t>(i * (nv + 1) + j)]; }
  const Vec3& at(int i, int j) const { return q[static_cast<size_t>(i * (nv + 1) + j)]; }
};

inline Net hodograph(const BezierPatch& p, int du, int dv) {
  Net n{p.degree_u(), p.degree_v(), p.net()};
  for (int k = 0; k < du; ++k) {
    if (n.nu == 0) return Net{0, 0, {Vec3::Zero()}};
    Net d{n.nu - 1, n.nv, std::vector<Vec3>(static_cast<size_t>(n.nu * (n.nv + 1)))};
    for (int i = 0; i < n.nu; ++i)
      for (int j = 0; j <= n.nv; ++j) d.at(i, j) = n.nu * (n.at(i + 1, j) - n.at(i, j));
    n = std::move(d);
  }
  for (int k = 0; k < dv; ++k) {
    if (n.nv == 0) return Net{0, 0, {Vec3::Zero()}};
    Net d{n.nu, n.nv - 1, std::vector<Vec3>(static_cast<size_t>((n.nu + 1) * n.nv))};
    for (int i = 0; i <= n.nu; ++i)
      for (int j = 0; j < n.nv; ++j) d.at(i, j) = n.nv * (n.at(i, j + 1) - n.at(i, j));
    n = std::move(d);
  }
  return n;
}

inline Vec3 eval_net(const Net& n, double u, double v) {
  const auto bu = bernstein_basis(n.nu, u);
  const auto bv = bernstein_basis(n.nv, v);
  Vec3 r = Vec3::Zero();
  for (int i = 0; i <= n.nu; ++i)
    for (int j = 0; j <= n.nv; ++j) r += bu[i] * bv[j] * n.at(i, j);
  return r;
}

}  // namespace detail

// basis-sum evaluation
inline Point3 patch_eval(const BezierPatch& p, double u, double v) {
  detail::check_domain(u, v);
  if ((u == 0.0 || u == 1.0) && (v == 0.0 || v == 1.0))
    return p(u == 0.0 ? 0 : p.degree_u(), v == 0.0 ? 0 : p.degree_v());
  return detail::basis_sum(p, u, v);
}

inline Point3 patch_eval_de_casteljau(const BezierPatch& p, double u, double v) {
  detail::check_domain(u, v);
  std::vector<Point3> col(static_cast<size_t>(p.degree_u() + 1));
  for (int i = 0; i <= p.degree_u(); ++i) {
    std::vector<Point3> row(static_cast<size_t>(p.degree_v() + 1));
    for (int j = 0; j <= p.degree_v(); ++j) row[j] = p(i, j);
    col[i] = BezierCurve(std::move(row))(v);
  }
  return BezierCurve(std::move(col))(u);
}

inline Vec3 patch_derivative(const BezierPatch& p, double u, double v, int du, int dv) {
  if (du < 0 || dv < 0 || du > 2 || dv > 2 || du + dv > 2)
    throw ArgumentError("patch_derivative: unsupported derivative order");
  detail::check_domain(u, v);
  if (du == 0 && dv == 0) return patch_eval(p, u, v);
  return detail::eval_net(detail::hodograph(p, du, dv), u, v);
}

inline Point3 BezierPatch::eval(double u, double v) const { return patch_eval(*this, u, v); }

inline Vec3 BezierPatch::derivative(double u, double v, int du, int dv) const {
  return patch_derivative(*this, u, v, du, dv);
}

// exact elevation of a cubic row to degree five
inline ControlRow elevate_cubic_row_to_quintic(const ControlRow& row) {
  if (row.points.size() != 4) throw ArgumentError("elevate_cubic_row_to_quintic: row must have 4 points");
  const auto& q = row.points;
  ControlRow out;
  out.source = row.source;
  out.points = {q[0],
                0.4 * q[0] + 0.6 * q[1],
                0.1 * q[0] + 0.6 * q[1] + 0.3 * q[2],
                0.3 * q[1] + 0.6 * q[2] + 0.1 * q[3],
                0.6 * q[2] + 0.4 * q[3],
                q[3]};
  return out;
}

inline ControlRow elevate_row(const ControlRow& row, int target) {
  ControlRow out;
  out.source = row.source;
  out.points = BezierCurve(row.points).elevated(target).coeffs;
  return out;
}

inline ControlRow boundary_row(const BezierPatch& p, Side side, int offset) {
  const int cross = is_u_side(side) ? p.degree_u() : p.degree_v();
  if (offset < 0 || offset > cross) throw ArgumentError("boundary_row: offset out of range");
  ControlRow r;
  r.source.side = side;
  r.source.offset = offset;
  switch (side) {
    case Side::u0:
      for (int j = 0; j <= p.degree_v(); ++j) r.points.push_back(p(offset, j));
      break;
    case Side::u1:
      for (int j = 0; j <= p.degree_v(); ++j) r.points.push_back(p(p.degree_u() - offset, j));
      break;
    case Side::v0:
      for (int i = 0; i <= p.degree_u(); ++i) r.points.push_back(p(i, offset));
      break;
    case Side::v1:
      for (int i = 0; i <= p.degree_u(); ++i) r.points.push_back(p(i, p.degree_v() - offset));
      break;
  }
  return r;
}

struct TriangleMesh {
  std::vector<Point3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
};

// vertex (i,j) sits at (i/nu, j/nv); triangles are counter-clockwise in (u,v)
inline TriangleMesh tessellate(const BezierPatch& p, int nu, int nv) {
  if (nu < 1 || nv < 1) throw ArgumentError("tessellate: nu, nv must be >= 1");
  TriangleMesh m;
  m.vertices.reserve(static_cast<size_t>((nu + 1) * (nv + 1)));
  for (int i = 0; i <= nu; ++i)
    for (int j = 0; j <= nv; ++j)
      m.vertices.push_back(patch_eval(p, static_cast<double>(i) / nu, static_cast<double>(j) / nv));
  auto id = [nv](int i, int j) { return static_cast<std::uint32_t>(i * (nv + 1) + j); };
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return m;
}

// ---- net manipulation ----

inline BezierPatch transpose(const BezierPatch& p) {
  BezierPatch t(p.degree_v(), p.degree_u());
  for (int i = 0; i <= p.degree_u(); ++i)
    for (int j = 0; j <= p.degree_v(); ++j) t(j, i) = p(i, j);
  return t;
}

inline BezierPatch reverse_u(const BezierPatch& p) {
  BezierPatch t(p.degree_u(), p.degree_v());
  for (int i = 0; i <= p.degree_u(); ++i)
    for (int j = 0; j <= p.degree_v(); ++j) t(p.degree_u() - i, j) = p(i, j);
  return t;
}

inline BezierPatch reverse_v(const BezierPatch& p) {
  BezierPatch t(p.degree_u(), p.degree_v());
  for (int i = 0; i <= p.degree_u(); ++i)
    for (int j = 0; j <= p.degree_v(); ++j) t(i, p.degree_v() - j) = p(i, j);
  return t;
}

inline BezierPatch elevate(const BezierPatch& p, int degree_u, int degree_v) {
  if (degree_u < p.degree_u() || degree_v < p.degree_v()) throw ArgumentError("elevate: target below current degree");
  BezierPatch a(degree_u, p.degree_v());
  for (int j = 0; j <= p.degree_v(); ++j) {
    std::vector<Point3> c;
    for (int i = 0; i <= p.degree_u(); ++i) c.push_back(p(i, j));
    const auto e = BezierCurve(std::move(c)).elevated(degree_u);
    for (int i = 0; i <= degree_u; ++i) a(i, j) = e.coeffs[i];
  }
  BezierPatch b(degree_u, degree_v);
  for (int i = 0; i <= degree_u; ++i) {
    std::vector<Point3> c;
    for (int j = 0; j <= p.degree_v(); ++j) c.push_back(a(i, j));
    const auto e = BezierCurve(std::move(c)).elevated(degree_v);
    for (int j = 0; j <= degree_v; ++j) b(i, j) = e.coeffs[j];
  }
  return b;
}

namespace detail {

// de Casteljau split of one control polygon at t
inline std::pair<std::vector<Point3>, std::vector<Point3>> split_polygon(std::vector<Point3> w, double t) {
  const int n = static_cast<int>(w.size()) - 1;
  std::vector<Point3> left(n + 1), right(n + 1);
  left[0] = w[0];
  right[n] = w[n];
  for (int k = 1; k <= n; ++k) {
    for (int i = 0; i <= n - k; ++i) w[i] = (1.0 - t) * w[i] + t * w[i + 1];
    left[k] = w[0];
    right[n - k] = w[n - k];
  }
  return {left, right};
}

}  // namespace detail

inline std::pair<BezierPatch, BezierPatch> split_u(const BezierPatch& p, double t) {
  BezierPatch a(p.degree_u(), p.degree_v()), b(p.degree_u(), p.degree_v());
  for (int j = 0; j <= p.degree_v(); ++j) {
    std::vector<Point3> c;
    for (int i = 0; i <= p.degree_u(); ++i) c.push_back(p(i, j));
    auto [l, r] = detail::split_polygon(std::move(c), t);
    for (int i = 0; i <= p.degree_u(); ++i) {
      a(i, j) = l[i];
      b(i, j) = r[i];
    }
  }
  return {a, b};
}

inline std::pair<BezierPatch, BezierPatch> split_v(const BezierPatch& p, double t) {
  auto [a, b] = split_u(transpose(p), t);
  return {transpose(a), transpose(b)};
}

// the piece of p over [u0,u1] x [v0,v1]
inline BezierPatch subpatch(const BezierPatch& p, double u0, double u1, double v0, double v1) {
  if (!(0.0 <= u0 && u0 < u1 && u1 <= 1.0 && 0.0 <= v0 && v0 < v1 && v1 <= 1.0))
    throw ArgumentError("subpatch: invalid parameter box");
  BezierPatch r = p;
  if (u1 < 1.0) r = split_u(r, u1).first;
  if (u0 > 0.0) r = split_u(r, u0 / u1).second;
  if (v1 < 1.0) r = split_v(r, v1).first;
  if (v0 > 0.0) r = split_v(r, v0 / v1).second;
  return r;
}

struct Box {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());

  void add(const Vec3& x) {
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  void add(const Box& b) {
    lo = lo.cwiseMin(b.lo);
    hi = hi.cwiseMax(b.hi);
  }
  double diagonal() const { return (hi - lo).norm(); }
};

inline Box bounding_box(const BezierPatch& p) {
  Box b;
  for (const auto& q : p.net()) b.add(q);
  return b;
}

}  // namespace gcont

#include <Eigen/QR>

namespace gcont {

inline BernsteinPoly fit_bernstein(const std::vector<double>& t, const std::vector<double>& y, int degree) {
  if (degree < 0) throw ArgumentError("fit_bernstein: negative degree");
  if (t.size() != y.size() || t.size() < static_cast<size_t>(degree + 1))
    throw ArgumentError("fit_bernstein: need at least degree+1 samples");
  Eigen::MatrixXd A(t.size(), degree + 1);
  Eigen::VectorXd b(t.size());
  for (size_t k = 0; k < t.size(); ++k) {
    const auto basis = bernstein_basis(degree, t[k]);
    for (int i = 0; i <= degree; ++i) A(static_cast<Eigen::Index>(k), i) = basis[i];
    b(static_cast<Eigen::Index>(k)) = y[k];
  }
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  return BernsteinPoly(std::vector<double>(x.data(), x.data() + x.size()));
}

}  // namespace gcont
