#include "layerforge/gridfn.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace layerforge {

std::vector<double> deriv4(const std::vector<double>& f, double dx, bool periodic) {
  const std::size_t n = f.size();
  if (n < 6) throw std::invalid_argument("deriv4: table too short");
  std::vector<double> d(n);
  const double s = 1.0 / (12.0 * dx);
  if (periodic) {
    // node n-1 duplicates node 0; period is n-1 samples
    const std::size_t m = n - 1;
    auto at = [&](std::ptrdiff_t i) { return f[((i % (std::ptrdiff_t)m) + m) % m]; };
    for (std::size_t i = 0; i < m; ++i) {
      std::ptrdiff_t k = (std::ptrdiff_t)i;
      d[i] = s * (-at(k + 2) + 8.0 * at(k + 1) - 8.0 * at(k - 1) + at(k - 2));
    }
    d[m] = d[0];
    return d;
  }
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = s * (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]);
  d[0] = s * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  d[1] = s * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  d[n - 1] = -s * (-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] - 3.0 * f[n - 5]);
  d[n - 2] = -s * (-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] + f[n - 5]);
  return d;
}

std::vector<double> deriv2(const std::vector<double>& f, double dx, bool periodic) {
  const std::size_t n = f.size();
  if (n < 3) throw std::invalid_argument("deriv2: table too short");
  std::vector<double> d(n);
  const double s = 1.0 / (2.0 * dx);
  if (periodic) {
    const std::size_t m = n - 1;
    auto at = [&](std::ptrdiff_t i) { return f[((i % (std::ptrdiff_t)m) + m) % m]; };
    for (std::size_t i = 0; i < m; ++i)
      d[i] = s * (at((std::ptrdiff_t)i + 1) - at((std::ptrdiff_t)i - 1));
    d[m] = d[0];
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = s * (f[i + 1] - f[i - 1]);
  d[0] = s * (-3.0 * f[0] + 4.0 * f[1] - f[2]);
  d[n - 1] = s * (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]);
  return d;
}

double simpson(const std::vector<double>& f, double dx) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  std::size_t m = n - 1;  // interval count
  double total = 0.0;
  std::size_t last = m;
  if (m % 2 == 1) {
    if (m < 3) return 0.5 * dx * (f[0] + f[1]);
    last = m - 3;  // 3/8 rule on the final three intervals
    total += 3.0 * dx / 8.0 * (f[m - 3] + 3.0 * f[m - 2] + 3.0 * f[m - 1] + f[m]);
  }
  double s = f[0] + f[last];
  for (std::size_t i = 1; i < last; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
  total += dx / 3.0 * s;
  return total;
}

namespace {
double adapt(const std::function<double(double)>& f, double a, double b, double fa,
             double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace

double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     double tol, int max_depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adapt(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

Spline::Spline(std::vector<double> y, double a, double b, bool periodic)
    : y_(std::move(y)), a_(a), b_(b), periodic_(periodic) {
  const std::size_t n = y_.size();
  if (n < 4) throw std::invalid_argument("Spline: need at least 4 nodes");
  dx_ = (b_ - a_) / double(n - 1);
  m_.assign(n, 0.0);
  const double h = dx_;
  if (periodic_) {
    // unknowns m_0..m_{n-2}; m_{n-1} = m_0
    const std::size_t m = n - 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd r(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t im = (i + m - 1) % m, ip = (i + 1) % m;
      A(i, im) += h / 6.0;
      A(i, i) += 2.0 * h / 3.0;
      A(i, ip) += h / 6.0;
      double yim = y_[im], yi = y_[i], yip = y_[i + 1];  // y_[m] == y_[0]
      r(i) = (yip - yi) / h - (yi - yim) / h;
    }
    Eigen::VectorXd sol = A.partialPivLu().solve(r);
    for (std::size_t i = 0; i < m; ++i) m_[i] = sol(i);
    m_[m] = m_[0];
  } else {
    // not-a-knot: third derivative continuous across the 2nd and (n-1)th nodes
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      A(i, i - 1) = h / 6.0;
      A(i, i) = 2.0 * h / 3.0;
      A(i, i + 1) = h / 6.0;
      r(i) = (y_[i + 1] - y_[i]) / h - (y_[i] - y_[i - 1]) / h;
    }
    A(0, 0) = 1.0; A(0, 1) = -2.0; A(0, 2) = 1.0;
    A(n - 1, n - 1) = 1.0; A(n - 1, n - 2) = -2.0; A(n - 1, n - 3) = 1.0;
    Eigen::VectorXd sol = A.partialPivLu().solve(r);
    for (std::size_t i = 0; i < n; ++i) m_[i] = sol(i);
  }
}

void Spline::locate(double x, std::size_t& i, double& u) const {
  const std::size_t n = y_.size();
  if (periodic_) {
    const double period = b_ - a_;
    x = x - period * std::floor((x - a_) / period);
  } else {
    if (x < a_) x = a_;
    if (x > b_) x = b_;
  }
  double t = (x - a_) / dx_;
  double fi = std::floor(t);
  if (fi > double(n - 2)) fi = double(n - 2);
  if (fi < 0.0) fi = 0.0;
  i = (std::size_t)fi;
  u = x - (a_ + fi * dx_);
}

double Spline::operator()(double x) const {
  std::size_t i; double u;
  locate(x, i, u);
  const double h = dx_, v = h - u;
  return (m_[i] * v * v * v + m_[i + 1] * u * u * u) / (6.0 * h) +
         (y_[i] / h - m_[i] * h / 6.0) * v + (y_[i + 1] / h - m_[i + 1] * h / 6.0) * u;
}

double Spline::deriv(double x) const {
  std::size_t i; double u;
  locate(x, i, u);
  const double h = dx_, v = h - u;
  return (-m_[i] * v * v + m_[i + 1] * u * u) / (2.0 * h) +
         (y_[i + 1] - y_[i]) / h - (m_[i + 1] - m_[i]) * h / 6.0;
}

double Spline::deriv2(double x) const {
  std::size_t i; double u;
  locate(x, i, u);
  const double h = dx_, v = h - u;
  return (m_[i] * v + m_[i + 1] * u) / h;
}

double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}
double smoothstep_d1(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 30.0 * u * u * (1.0 - u) * (1.0 - u);
}
double smoothstep_d2(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 60.0 * u * (1.0 - u) * (1.0 - 2.0 * u);
}

double cutoff(double t, double r0, double r1) {
  return 1.0 - smoothstep((std::abs(t) - r0) / (r1 - r0));
}
double cutoff_d1(double t, double r0, double r1) {
  const double s = t < 0.0 ? -1.0 : 1.0;
  return -s * smoothstep_d1((std::abs(t) - r0) / (r1 - r0)) / (r1 - r0);
}
double cutoff_d2(double t, double r0, double r1) {
  return -smoothstep_d2((std::abs(t) - r0) / (r1 - r0)) / ((r1 - r0) * (r1 - r0));
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(std::abs(x[i])), ly = std::log(std::abs(y[i]));
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  return (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
}

}  // namespace layerforge
