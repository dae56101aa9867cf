#pragma once

#include <array>
#include <optional>
#include <vector>

#include "layerforge/curve.hpp"
#include "layerforge/fieldexpr.hpp"

namespace layerforge {

struct ChartError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact metric data of the modified Fermi map at one off-curve point,
// computed from analytic Jacobians of the map itself.
struct MetricSample {
  double g11 = 0.0, g12 = 0.0, g22 = 0.0, g = 0.0;
  // divergence-form coefficient combinations of the anisotropic operator
  double gt11 = 0.0, gt12 = 0.0, gt22 = 0.0;
  std::array<double, 2> F{};
  std::array<double, 2> Ft{};
  std::array<double, 2> Fth{};
};

// Per-theta coefficient tables of the modified Fermi chart, all evaluated on
// the curve (t = 0), plus the endpoint scalars of the boundary operator.
class FermiChart {
 public:
  FermiChart() = default;

  bool closed() const { return curve_.closed; }
  std::size_t nodes() const { return th_.size(); }
  double dtheta() const { return dth_; }
  const PlaneCurve& curve() const { return curve_; }
  double exponent() const { return p_; }
  double sigma_exponent() const { return sigma_; }

  // tables, indexed by theta node
  std::vector<double> th_;
  std::vector<double> a1_, a2_, V_;          // field values on the curve
  std::vector<double> da1_, da2_, Vt_;       // transversal first derivatives
  std::vector<double> dda1_, dda2_, Vtt_;    // transversal second derivatives
  std::vector<double> ta1_, ta2_;            // normalized fields a_i/|a|
  std::vector<double> ta1p_, ta2p_;          // their theta derivatives
  std::vector<double> Theta_tt_;             // transversal bending of the chart
  std::vector<double> q1_, q2_, q1p_, q2p_;
  std::vector<double> f0_, f1_, f2_;
  std::vector<double> l1_;
  std::vector<double> w0_, w1_;
  std::vector<double> hk1_, hk2_, hk3_;      // metric determinant coefficients
  std::vector<double> h1_, h2_, h3_, h4_, h5_, h6_, h7_, h8_;
  std::vector<double> alpha_, beta_, Q_;
  double ell_ = 0.0;
  double b1_ = 0.0, b2_ = 0.0, b6_ = 0.0, b7_ = 0.0;  // endpoint scalars
  double Theta_tttheta_ = 0.0;
  double kt1_ = 0.0, kt2_ = 0.0;

  // interpolated access (cubic)
  double alpha(double th) const { return alpha_s_(th); }
  double alpha_p(double th) const { return alpha_s_.deriv(th); }
  double beta(double th) const { return beta_s_(th); }
  double beta_p(double th) const { return beta_s_.deriv(th); }
  double Qfun(double th) const { return Q_s_(th); }
  double dtilde(double th) const { return dtilde_s_(th); }  // integral of Q

  // exact Gram data of the map at (t, theta); the oracle for the expansions
  MetricSample metric_direct(double t, double theta) const;

  // map and its Jacobian
  std::array<double, 2> map(double t, double theta) const;
  void map_jacobian(double t, double theta, std::array<double, 2>& F,
                    std::array<double, 2>& Ft, std::array<double, 2>& Fth) const;

  // inverse of the map near the curve; nullopt when Newton leaves the band
  std::optional<std::array<double, 2>> invert(double y1, double y2,
                                              double band, int max_iter = 60) const;

  friend FermiChart build_chart(const PlaneCurve& curve, const Expression& a1,
                                const Expression& a2, const Expression& V,
                                const BoundaryContact* contact, double p,
                                double endpoint_tol);

 private:
  PlaneCurve curve_;
  Expression fa1_, fa2_, fV_;
  double p_ = 3.0, sigma_ = 1.5;
  double dth_ = 0.0;
  Spline alpha_s_, beta_s_, Q_s_, dtilde_s_, ta1_s_, ta2_s_;
};

// Tabulates every chart coefficient. For open curves a BoundaryContact must be
// supplied and the fields must be isotropic at the endpoints.
FermiChart build_chart(const PlaneCurve& curve, const Expression& a1,
                       const Expression& a2, const Expression& V,
                       const BoundaryContact* contact, double p,
                       double endpoint_tol = 1e-8);

}  // namespace layerforge
