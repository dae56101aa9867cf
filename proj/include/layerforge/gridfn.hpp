#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace layerforge {

// Tables live on the uniform grid theta_i = a + i*(b-a)/(n-1), i = 0..n-1.
// Closed-curve tables are periodic with node n-1 duplicating node 0.

// 4th-order first derivative of a uniform-grid table. Open tables use
// one-sided 4th-order closures at the first/last two nodes.
std::vector<double> deriv4(const std::vector<double>& f, double dx, bool periodic);

// 2nd-order centered first derivative (one-sided at the ends of open tables).
std::vector<double> deriv2(const std::vector<double>& f, double dx, bool periodic);

// Composite Simpson on a uniform table; an odd interval count is finished
// with a 3/8 panel.
double simpson(const std::vector<double>& f, double dx);

// Adaptive Simpson quadrature to an absolute tolerance.
double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-12, int max_depth = 48);

// Cubic spline on a uniform grid over [a, b]. Open tables get not-a-knot end
// conditions, closed tables a periodic closure (last node == first node).
class Spline {
 public:
  Spline() = default;
  Spline(std::vector<double> y, double a, double b, bool periodic);

  double operator()(double x) const;
  double deriv(double x) const;
  double deriv2(double x) const;

  bool periodic() const { return periodic_; }
  std::size_t size() const { return y_.size(); }

 private:
  void locate(double x, std::size_t& i, double& u) const;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the nodes
  double a_ = 0.0, b_ = 1.0, dx_ = 1.0;
  bool periodic_ = false;
};

// Quintic smoothstep: 0 at u<=0, 1 at u>=1, C^2 across the joints.
double smoothstep(double u);
double smoothstep_d1(double u);
double smoothstep_d2(double u);

// Plateau cutoff: 1 on |t|<=r0, 0 on |t|>=r1, smooth in between.
double cutoff(double t, double r0, double r1);
double cutoff_d1(double t, double r0, double r1);
double cutoff_d2(double t, double r0, double r1);

// Least-squares slope of log|y| against log|x|.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace layerforge
