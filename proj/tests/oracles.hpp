// Test-side oracles, independent of the library's quadrature and transforms.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

// Composite Simpson rule on [a,b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int n = 4096) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Wallis: int_0^pi sin^6 x dx = 5 pi / 16.
inline double wallis_sin6() { return 5.0 * M_PI / 16.0; }

// sin^5 x = (10 sin x - 5 sin 3x + sin 5x)/16; coefficients against the
// orthonormal basis sqrt(2/pi) sin(kx) on (0,pi).
inline std::vector<double> sin5_orthonormal_coeffs(int n_modes) {
  std::vector<double> c(n_modes, 0.0);
  const double scale = std::sqrt(M_PI / 2.0);
  if (n_modes >= 1) c[0] = 10.0 / 16.0 * scale;
  if (n_modes >= 3) c[2] = -5.0 / 16.0 * scale;
  if (n_modes >= 5) c[4] = 1.0 / 16.0 * scale;
  return c;
}

// Modal solution of  y'' + y' + y = 0,  y(0)=y0, y'(0)=0:
//   y(t) = e^{-t/2} [ cos(sqrt(3) t / 2) + (1/sqrt(3)) sin(sqrt(3) t / 2) ] y0.
inline double damped_mode(double t, double y0) {
  const double w = std::sqrt(3.0) / 2.0;
  return std::exp(-0.5 * t) * (std::cos(w * t) + std::sin(w * t) / std::sqrt(3.0)) * y0;
}
inline double damped_mode_vel(double t, double y0) {
  const double w = std::sqrt(3.0) / 2.0;
  const double e = std::exp(-0.5 * t);
  const double c = std::cos(w * t), s = std::sin(w * t);
  // derivative of e^{-t/2}(c + s/sqrt(3)) y0
  return y0 * e * (-0.5 * (c + s / std::sqrt(3.0)) + (-w * s + w * c / std::sqrt(3.0)));
}

// Central finite differences for derivative cross-checks.
inline double fd1(const std::function<double(double)>& f, double s,
                  double h = 1e-5) {
  return (f(s + h) - f(s - h)) / (2.0 * h);
}
inline double fd2(const std::function<double(double)>& f, double s,
                  double h = 1e-4) {
  return (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h);
}

}  // namespace oracles
