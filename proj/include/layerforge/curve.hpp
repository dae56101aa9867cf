#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "layerforge/fieldexpr.hpp"
#include "layerforge/gridfn.hpp"

namespace layerforge {

struct CurveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input description of a plane curve: either a closed-form parametric path
// (expressions in the parameter through the variable name y1) or a sampled
// point list. The path is reparametrized to unit speed; total length must be 1.
struct CurveSpec {
  bool closed = false;
  Expression path_x, path_y;            // parametric form, parameter in [0,1]
  std::vector<std::array<double, 2>> points;  // alternative: sampled path
};

// Naturally parametrized curve with tangent, normal and curvature tables on
// the uniform grid theta_i in [0,1]. The normal follows the convention
// (gamma1', gamma2') = (-n2, n1); curvature satisfies gamma'' = k n.
struct PlaneCurve {
  bool closed = false;
  std::vector<double> theta;
  std::vector<std::array<double, 2>> pos;
  std::vector<std::array<double, 2>> tangent;
  std::vector<std::array<double, 2>> normal;
  std::vector<double> curvature;

  // splines of the position components; tangent/curvature queries derive
  // from these so off-node evaluation stays consistent with the tables
  Spline sx, sy;

  std::array<double, 2> gamma(double th) const { return {sx(th), sy(th)}; }
  std::array<double, 2> gamma_p(double th) const { return {sx.deriv(th), sy.deriv(th)}; }
  std::array<double, 2> gamma_pp(double th) const { return {sx.deriv2(th), sy.deriv2(th)}; }
  std::array<double, 2> normal_at(double th) const {
    auto g = gamma_p(th);
    return {g[1], -g[0]};
  }
  double curvature_at(double th) const {
    auto gpp = gamma_pp(th);
    auto n = normal_at(th);
    return gpp[0] * n[0] + gpp[1] * n[1];
  }
};

// Builds the unit-speed curve on M+1 nodes (arc-length quadrature + inversion).
// Errors on zero-speed points and on total length away from 1.
PlaneCurve build_curve(const CurveSpec& spec, std::size_t M,
                       double length_tol = 1e-6);

// Boundary wall near an endpoint, given as the graph y2 = phi(y1).
struct BoundaryGraph {
  Expression phi;  // expression in y1
};

// Signed curvatures of the domain walls at the curve endpoints, oriented by
// the transversal direction (a1~n1, a2~n2) of the chart.
struct BoundaryContact {
  double k1 = 0.0, k2 = 0.0;       // signed curvatures at P1, P2
  double kt1 = 0.0, kt2 = 0.0;     // curvatures of the straightened preimages
  double ortho_residual1 = 0.0;    // |<wall tangent, gamma'>| at P1
  double ortho_residual2 = 0.0;
};

// The fields enter only through the endpoint values of a1, a2 (the transversal
// direction). Errors if an endpoint misses its wall or meets it obliquely.
BoundaryContact endpoint_contact(const PlaneCurve& curve,
                                 const BoundaryGraph& wall1,
                                 const BoundaryGraph& wall2,
                                 const Expression& a1, const Expression& a2,
                                 double tol = 1e-6);

}  // namespace layerforge
