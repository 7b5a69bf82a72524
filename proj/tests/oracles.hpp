#pragma once

// Independent reference constructions used only by the tests.

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "gcont/bezier.hpp"
#include "gcont/continuity.hpp"

namespace oracle {

using gcont::BezierPatch;
using gcont::Vec3;

// Bezier patch evaluated by direct basis sums with no domain restriction,
// derivatives by the power rule applied to each Bernstein factor.
struct PolySurface {
  BezierPatch p;

  static double basis(int n, int i, double u, int d) {
    // d-th derivative of B_i^n
    if (d == 0) return gcont::binomial(n, i) * std::pow(1.0 - u, n - i) * std::pow(u, i);
    if (n == 0) return 0.0;
    const double a = i > 0 ? basis(n - 1, i - 1, u, d - 1) : 0.0;
    const double b = i < n ? basis(n - 1, i, u, d - 1) : 0.0;
    return n * (a - b);
  }

  Vec3 derivative(double u, double v, int du, int dv) const {
    Vec3 r = Vec3::Zero();
    for (int i = 0; i <= p.degree_u(); ++i)
      for (int j = 0; j <= p.degree_v(); ++j)
        r += basis(p.degree_u(), i, u, du) * basis(p.degree_v(), j, v, dv) * p(i, j);
    return r;
  }
  Vec3 eval(double u, double v) const { return derivative(u, v, 0, 0); }
};

// Polynomial map (u,v) -> (s,t) with derivatives up to order 2.
struct Map2 {
  std::function<std::array<double, 2>(double, double, int, int)> f;
};

// R o Phi with chain-rule derivatives.
struct Composed {
  PolySurface R;
  Map2 phi;

  Vec3 eval(double u, double v) const {
    const auto st = phi.f(u, v, 0, 0);
    return R.eval(st[0], st[1]);
  }

  Vec3 derivative(double u, double v, int du, int dv) const {
    const auto st = phi.f(u, v, 0, 0);
    const double s = st[0], t = st[1];
    if (du == 0 && dv == 0) return R.eval(s, t);
    const Vec3 Rs = R.derivative(s, t, 1, 0), Rt = R.derivative(s, t, 0, 1);
    if (du + dv == 1) {
      const auto d = phi.f(u, v, du, dv);
      return Rs * d[0] + Rt * d[1];
    }
    const Vec3 Rss = R.derivative(s, t, 2, 0), Rst = R.derivative(s, t, 1, 1), Rtt = R.derivative(s, t, 0, 2);
    const int ax = du >= 1 ? 1 : 0;  // first direction
    const int ay = du >= 2 ? 1 : 0;  // second direction
    const auto d1 = phi.f(u, v, ax, 1 - ax);
    const auto d2 = phi.f(u, v, ay, 1 - ay);
    const auto dd = phi.f(u, v, du, dv);
    return Rss * d1[0] * d2[0] + Rst * (d1[0] * d2[1] + d1[1] * d2[0]) + Rtt * d1[1] * d2[1] + Rs * dd[0] +
           Rt * dd[1];
  }
};

// Product polynomial w(u) * w(v) with analytic derivatives, w given as power coefficients.
struct Poly1 {
  std::vector<double> c;  // c[0] + c[1] x + ...
  double operator()(double x, int d) const {
    double r = 0.0;
    for (size_t k = static_cast<size_t>(d); k < c.size(); ++k) {
      double f = 1.0;
      for (int m = 0; m < d; ++m) f *= static_cast<double>(k - static_cast<size_t>(m));
      r += f * c[k] * std::pow(x, static_cast<double>(k - static_cast<size_t>(d)));
    }
    return r;
  }
};

inline Poly1 mul(const Poly1& a, const Poly1& b) {
  Poly1 r{std::vector<double>(a.c.size() + b.c.size() - 1, 0.0)};
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

// x(1-x), x(1-x)^2, (1-x)x^2 ...
inline Poly1 bump(int p0, int p1) {
  Poly1 r{{1.0}};
  for (int k = 0; k < p0; ++k) r = mul(r, Poly1{{0.0, 1.0}});
  for (int k = 0; k < p1; ++k) r = mul(r, Poly1{{1.0, -1.0}});
  return r;
}

// sum of separable terms f(u) g(v)
struct Separable {
  std::vector<std::pair<Poly1, Poly1>> terms;
  double operator()(double u, double v, int du, int dv) const {
    double r = 0.0;
    for (const auto& [f, g] : terms) r += f(u, du) * g(v, dv);
    return r;
  }
};

// explicit Bernstein sum, independent of de Casteljau
template <class T>
inline T bernstein_direct(const std::vector<T>& c, double u) {
  const int n = static_cast<int>(c.size()) - 1;
  T r = c[0] * 0.0;
  for (int i = 0; i <= n; ++i) r = r + PolySurface::basis(n, i, u, 0) * c[i];
  return r;
}

inline BezierPatch random_patch(std::mt19937& rng, int du, int dv, double noise = 0.3) {
  std::uniform_real_distribution<double> U(-noise, noise);
  BezierPatch p(du, dv);
  for (int i = 0; i <= du; ++i)
    for (int j = 0; j <= dv; ++j)
      p(i, j) = Vec3(static_cast<double>(i) / du + U(rng), static_cast<double>(j) / dv + U(rng), U(rng));
  return p;
}

}  // namespace oracle

namespace oracle {

// affine (s0 + ds u, t0 + dt v) plus eps times separable perturbations
inline Map2 perturbed_affine(double s0, double ds, double t0, double dt, double eps, Separable ps, Separable pt) {
  return Map2{[=](double u, double v, int du, int dv) -> std::array<double, 2> {
    double s = eps * ps(u, v, du, dv), t = eps * pt(u, v, du, dv);
    if (du == 0 && dv == 0) {
      s += s0 + ds * u;
      t += t0 + dt * v;
    } else if (du == 1 && dv == 0) {
      s += ds;
    } else if (du == 0 && dv == 1) {
      t += dt;
    }
    return {s, t};
  }};
}

// Bivariate polynomial map (s,t) -> R^2, coefficients c[k][l] of s^k t^l.
struct BiPoly {
  std::vector<std::vector<std::array<double, 2>>> c;

  std::array<double, 2> operator()(double s, double t, int ds, int dt) const {
    std::array<double, 2> r{0.0, 0.0};
    for (size_t k = static_cast<size_t>(ds); k < c.size(); ++k)
      for (size_t l = static_cast<size_t>(dt); l < c[k].size(); ++l) {
        double f = 1.0;
        for (int m = 0; m < ds; ++m) f *= static_cast<double>(k - static_cast<size_t>(m));
        for (int m = 0; m < dt; ++m) f *= static_cast<double>(l - static_cast<size_t>(m));
        f *= std::pow(s, static_cast<double>(k - static_cast<size_t>(ds))) *
             std::pow(t, static_cast<double>(l - static_cast<size_t>(dt)));
        r[0] += f * c[k][l][0];
        r[1] += f * c[k][l][1];
      }
    return r;
  }
};

inline BiPoly zero_bipoly(size_t n = 1) {
  return BiPoly{std::vector<std::vector<std::array<double, 2>>>(n, std::vector<std::array<double, 2>>(n, {0.0, 0.0}))};
}

inline size_t bdeg(const BiPoly& p) { return p.c.size(); }

inline BiPoly add(const BiPoly& a, const BiPoly& b, double sb = 1.0) {
  BiPoly r = zero_bipoly(std::max(bdeg(a), bdeg(b)));
  for (size_t k = 0; k < bdeg(a); ++k)
    for (size_t l = 0; l < bdeg(a); ++l) r.c[k][l] = a.c[k][l];
  for (size_t k = 0; k < bdeg(b); ++k)
    for (size_t l = 0; l < bdeg(b); ++l) {
      r.c[k][l][0] += sb * b.c[k][l][0];
      r.c[k][l][1] += sb * b.c[k][l][1];
    }
  return r;
}

// p times the scalar linear form (alpha + beta s + gamma t)
inline BiPoly mul_linear(const BiPoly& p, double alpha, double beta, double gamma) {
  BiPoly r = zero_bipoly(bdeg(p) + 1);
  for (size_t k = 0; k < bdeg(p); ++k)
    for (size_t l = 0; l < bdeg(p); ++l)
      for (int d = 0; d < 2; ++d) {
        r.c[k][l][d] += alpha * p.c[k][l][d];
        r.c[k + 1][l][d] += beta * p.c[k][l][d];
        r.c[k][l + 1][d] += gamma * p.c[k][l][d];
      }
  return r;
}

inline BiPoly random_bipoly(std::mt19937& rng, size_t n) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  BiPoly p = zero_bipoly(n);
  for (size_t k = 0; k < n; ++k)
    for (size_t l = 0; k + l < n; ++l) p.c[k][l] = {U(rng), U(rng)};
  return p;
}

// (u,v) -> (s,t) = A(u,v) + eps P(A(u,v)) with A the affine map onto [s0,s0+ds] x [t0,t0+dt]
inline Map2 warped_affine(double s0, double ds, double t0, double dt, double eps, BiPoly P) {
  return Map2{[=](double u, double v, int du, int dv) -> std::array<double, 2> {
    const double s = s0 + ds * u, t = t0 + dt * v;
    auto r = P(s, t, du, dv);
    const double f = eps * std::pow(ds, du) * std::pow(dt, dv);
    r[0] *= f;
    r[1] *= f;
    if (du == 0 && dv == 0) {
      r[0] += s;
      r[1] += t;
    } else if (du == 1 && dv == 0) {
      r[0] += ds;
    } else if (du == 0 && dv == 1) {
      r[1] += dt;
    }
    return r;
  }};
}

// Four quadrants of one global surface R, quadrant i warped by its own map
// Psi_i = id + eps P_i. The P_i agree along the shared parameter lines s=a, t=b,
// so neighbours meet G0 and (being pieces of R) G1 and G2, while the four
// Jacobians at V are independent, giving nonzero kappa there.
struct QuadFamily {
  Composed r1, r2, r3, r4;
};

inline QuadFamily quadrant_family(std::mt19937& rng, double eps, double a = 0.5, double b = 0.5) {
  PolySurface R{random_patch(rng, 4, 4)};
  const BiPoly q12 = random_bipoly(rng, 2), q14 = random_bipoly(rng, 2), w = random_bipoly(rng, 1);
  const BiPoly p1 = random_bipoly(rng, 2);
  const BiPoly p2 = add(p1, mul_linear(q12, -a, 1.0, 0.0));
  const BiPoly p4 = add(p1, mul_linear(q14, -b, 0.0, 1.0));
  const BiPoly q23 = add(q14, mul_linear(w, -a, 1.0, 0.0), -1.0);
  const BiPoly p3 = add(p2, mul_linear(q23, -b, 0.0, 1.0));
  QuadFamily f;
  f.r1 = Composed{R, warped_affine(0.0, a, 0.0, b, eps, p1)};
  f.r2 = Composed{R, warped_affine(a, 1.0 - a, 0.0, b, eps, p2)};
  f.r4 = Composed{R, warped_affine(0.0, a, b, 1.0 - b, eps, p4)};
  f.r3 = Composed{R, warped_affine(a, 1.0 - a, b, 1.0 - b, eps, p3)};
  return f;
}

}  // namespace oracle

namespace oracle {

// s plus delta * B_i^n(u) B_j^m(v)
template <class S>
struct Bumped {
  S base;
  Vec3 delta;
  int n = 3, i = 0, m = 3, j = 0;

  Vec3 derivative(double u, double v, int du, int dv) const {
    return Vec3(base.derivative(u, v, du, dv)) + PolySurface::basis(n, i, u, du) * PolySurface::basis(m, j, v, dv) * delta;
  }
  Vec3 eval(double u, double v) const { return derivative(u, v, 0, 0); }
};

}  // namespace oracle

namespace oracle {

struct Oriented {
  BezierPatch p;
  gcont::Side side;
  bool flipped = false;  // free parameter along the side runs backwards
};

// applies one of the eight net symmetries, tracking where `side` goes
inline Oriented reorient(Oriented o, int code) {
  using gcont::Side;
  if (code & 1) {
    o.p = gcont::transpose(o.p);
    o.side = o.side == Side::u0 ? Side::v0 : o.side == Side::u1 ? Side::v1 : o.side == Side::v0 ? Side::u0 : Side::u1;
  }
  if (code & 2) {
    o.p = gcont::reverse_u(o.p);
    if (o.side == Side::u0) o.side = Side::u1;
    else if (o.side == Side::u1) o.side = Side::u0;
    else o.flipped = !o.flipped;
  }
  if (code & 4) {
    o.p = gcont::reverse_v(o.p);
    if (o.side == Side::v0) o.side = Side::v1;
    else if (o.side == Side::v1) o.side = Side::v0;
    else o.flipped = !o.flipped;
  }
  return o;
}

struct EdgePair {
  BezierPatch a, b;
  gcont::EdgeCorrespondence corr;
};

// Bi-cubic pair across a's u=1 / b's u=0 with b_u = lambda a_u + kappa a_v built
// row by row; `fold` > 0 pushes b's first inner row off the tangent plane.
// Both nets are then put in random orientations.
inline EdgePair g1_pair(std::mt19937& rng, double fold = 0.0) {
  std::uniform_real_distribution<double> L(0.5, 2.0), K(-1.0, 1.0);
  const double lambda = L(rng), kappa = K(rng);
  BezierPatch a = random_patch(rng, 3, 3, 0.2);
  BezierPatch b = random_patch(rng, 3, 3, 0.2);
  for (int j = 0; j <= 3; ++j) {
    for (int i = 0; i <= 3; ++i) b(i, j) += Vec3(1.0, 0.0, 0.0);
    b(0, j) = a(3, j);
  }
  // a_v along u=1 is quadratic: 3 (a(3,j+1) - a(3,j)); elevate to cubic
  std::array<Vec3, 3> d;
  for (int j = 0; j < 3; ++j) d[j] = 3.0 * (a(3, j + 1) - a(3, j));
  const std::array<Vec3, 4> tan{d[0], (d[0] + 2.0 * d[1]) / 3.0, (2.0 * d[1] + d[2]) / 3.0, d[2]};
  for (int j = 0; j <= 3; ++j) {
    const Vec3 bu = lambda * 3.0 * (a(3, j) - a(2, j)) + kappa * tan[j];
    b(1, j) = b(0, j) + bu / 3.0;
    if (fold > 0.0) {
      const Vec3 n = (a(3, j) - a(2, j)).cross(tan[j]).normalized();
      b(1, j) += fold * n;
    }
  }
  std::uniform_int_distribution<int> C(0, 7);
  const Oriented oa = reorient({a, gcont::Side::u1, false}, C(rng));
  const Oriented ob = reorient({b, gcont::Side::u0, false}, C(rng));
  return {oa.p, ob.p, {"a", oa.side, "b", ob.side, oa.flipped != ob.flipped}};
}

}  // namespace oracle
