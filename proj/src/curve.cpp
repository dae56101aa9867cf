#include "layerforge/curve.hpp"

#include <cmath>

namespace layerforge {

namespace {

struct Path {
  // position, first and second derivative with respect to the raw parameter
  std::function<void(double, std::array<double, 2>&, std::array<double, 2>&,
                     std::array<double, 2>&)> eval;
};

Path make_path(const CurveSpec& spec) {
  if (spec.path_x && spec.path_y) {
    Expression px = spec.path_x, py = spec.path_y;
    Path p;
    p.eval = [px, py](double u, std::array<double, 2>& c, std::array<double, 2>& cp,
                      std::array<double, 2>& cpp) {
      const Jet2 jx = px.eval_jet(u, 0.0);
      const Jet2 jy = py.eval_jet(u, 0.0);
      c = {jx.v, jy.v};
      cp = {jx.g[0], jy.g[0]};
      cpp = {jx.h[0], jy.h[0]};
    };
    return p;
  }
  if (spec.points.size() < 4) throw CurveError("curve spec needs a path or >= 4 points");
  const std::size_t n = spec.points.size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = spec.points[i][0];
    ys[i] = spec.points[i][1];
  }
  if (spec.closed) {
    const double dx = xs.front() - xs.back(), dy = ys.front() - ys.back();
    if (std::hypot(dx, dy) > 1e-10) throw CurveError("closed point list must wrap around");
  }
  auto sx = std::make_shared<Spline>(xs, 0.0, 1.0, spec.closed);
  auto sy = std::make_shared<Spline>(ys, 0.0, 1.0, spec.closed);
  Path p;
  p.eval = [sx, sy](double u, std::array<double, 2>& c, std::array<double, 2>& cp,
                    std::array<double, 2>& cpp) {
    c = {(*sx)(u), (*sy)(u)};
    cp = {sx->deriv(u), sy->deriv(u)};
    cpp = {sx->deriv2(u), sy->deriv2(u)};
  };
  return p;
}

}  // namespace

PlaneCurve build_curve(const CurveSpec& spec, std::size_t M, double length_tol) {
  if (M < 64) throw CurveError("node count must be at least 64");
  const Path path = make_path(spec);

  // arc length over a fine parameter grid
  const std::size_t fine = 16 * M;
  std::vector<double> u(fine + 1), s(fine + 1, 0.0);
  std::array<double, 2> c, cp, cpp;
  auto speed = [&](double uu) {
    path.eval(uu, c, cp, cpp);
    const double v = std::hypot(cp[0], cp[1]);
    if (v < 1e-12) throw CurveError("zero-speed point in curve spec");
    return v;
  };
  const double du = 1.0 / double(fine);
  for (std::size_t i = 0; i <= fine; ++i) u[i] = double(i) * du;
  for (std::size_t i = 0; i < fine; ++i) {
    const double va = speed(u[i]);
    const double vm = speed(u[i] + 0.5 * du);
    const double vb = speed(u[i + 1]);
    s[i + 1] = s[i] + du / 6.0 * (va + 4.0 * vm + vb);
  }
  const double L = s[fine];
  if (std::abs(L - 1.0) > length_tol)
    throw CurveError("curve length " + std::to_string(L) + " is not 1 within tolerance");

  PlaneCurve out;
  out.closed = spec.closed;
  out.theta.resize(M + 1);
  out.pos.resize(M + 1);
  out.tangent.resize(M + 1);
  out.normal.resize(M + 1);
  out.curvature.resize(M + 1);

  std::size_t hint = 0;
  for (std::size_t j = 0; j <= M; ++j) {
    const double target = double(j) / double(M) * L;
    while (hint + 1 < s.size() && s[hint + 1] < target) ++hint;
    double uu = u[hint];
    if (s[hint + 1] > s[hint])
      uu += du * (target - s[hint]) / (s[hint + 1] - s[hint]);
    for (int it = 0; it < 30; ++it) {
      // Newton on s(u) - target with ds/du = |c'(u)|
      const double va = speed(std::min(std::max(uu, 0.0), 1.0));
      // local arc length from the bracketing node by Simpson
      const double ua = u[hint];
      const double vm = speed(0.5 * (ua + uu));
      const double v0 = speed(ua);
      const double ds = (uu - ua) / 6.0 * (v0 + 4.0 * vm + va);
      const double err = s[hint] + ds - target;
      const double step = err / va;
      uu -= step;
      if (std::abs(step) < 1e-15) break;
    }
    uu = std::min(std::max(uu, 0.0), 1.0);
    path.eval(uu, c, cp, cpp);
    const double v = std::hypot(cp[0], cp[1]);
    const double vp = (cp[0] * cpp[0] + cp[1] * cpp[1]) / v;
    out.theta[j] = double(j) / double(M);
    out.pos[j] = c;
    out.tangent[j] = {cp[0] / v, cp[1] / v};
    out.normal[j] = {out.tangent[j][1], -out.tangent[j][0]};
    // unit-speed second derivative: c''/v^2 - c' v'/v^3
    const std::array<double, 2> gpp = {cpp[0] / (v * v) - cp[0] * vp / (v * v * v),
                                       cpp[1] / (v * v) - cp[1] * vp / (v * v * v)};
    out.curvature[j] = gpp[0] * out.normal[j][0] + gpp[1] * out.normal[j][1];
  }
  if (spec.closed) {
    out.pos[M] = out.pos[0];
    out.tangent[M] = out.tangent[0];
    out.normal[M] = out.normal[0];
    out.curvature[M] = out.curvature[0];
  }

  std::vector<double> xs(M + 1), ys(M + 1);
  for (std::size_t j = 0; j <= M; ++j) {
    xs[j] = out.pos[j][0];
    ys[j] = out.pos[j][1];
  }
  out.sx = Spline(xs, 0.0, 1.0, spec.closed);
  out.sy = Spline(ys, 0.0, 1.0, spec.closed);
  return out;
}

BoundaryContact endpoint_contact(const PlaneCurve& curve, const BoundaryGraph& wall1,
                                 const BoundaryGraph& wall2, const Expression& a1,
                                 const Expression& a2, double tol) {
  if (curve.closed) throw CurveError("endpoint contact is for open curves");
  BoundaryContact out;

  auto one_end = [&](const BoundaryGraph& wall, std::size_t idx, double& k,
                     double& kt, double& ortho) {
    const auto P = curve.pos[idx];
    const Jet2 jp = wall.phi.eval_jet(P[0], 0.0);
    if (std::abs(P[1] - jp.v) > tol)
      throw CurveError("curve endpoint is not on the boundary graph");
    const double phip = jp.g[0], phipp = jp.h[0];
    const double wn = std::hypot(1.0, phip);
    const std::array<double, 2> T = {1.0 / wn, phip / wn};
    const auto g = curve.tangent[idx];
    ortho = std::abs(T[0] * g[0] + T[1] * g[1]);
    if (ortho > tol) throw CurveError("curve does not meet the boundary orthogonally");

    const double A1 = a1.eval(P[0], P[1]);
    const double A2 = a2.eval(P[0], P[1]);
    const double den = std::sqrt(A1 * A1 + A2 * A2);
    const double t1 = A1 / den, t2 = A2 / den;
    const auto n = curve.normal[idx];
    const std::array<double, 2> dir = {t1 * n[0], t2 * n[1]};
    const double sgn = (T[0] * dir[0] + T[1] * dir[1]) >= 0.0 ? 1.0 : -1.0;
    k = sgn * phipp / (wn * wn * wn);
    // curvature of the straightened preimage of the wall
    const double num = std::pow(dir[0] * dir[0] + dir[1] * dir[1], 1.5);
    kt = num / (t1 * n[0] * n[0] + t2 * n[1] * n[1]) * k;
  };

  one_end(wall1, 0, out.k1, out.kt1, out.ortho_residual1);
  one_end(wall2, curve.pos.size() - 1, out.k2, out.kt2, out.ortho_residual2);
  return out;
}

}  // namespace layerforge
