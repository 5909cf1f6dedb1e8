#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "wavebox/model.hpp"
#include "wavebox/solver.hpp"

namespace wavebox {

// Time series of the energy balance along a trajectory. The identity
// residual r(0,t) = E(t) + D(0,t) - E(0) vanishes for exact solutions and
// is O(dt^2) for the midpoint scheme.
struct EnergyLedger {
  std::vector<double> times;
  std::vector<double> E;
  std::vector<double> kinetic, gradient, potential, forcing;
  std::vector<double> D_cum;      // cumulative dissipation from time 0
  std::vector<double> residual;   // r(0,t)
  std::vector<double> l6_budget;  // cumulative int ||u_t||_6^6

  double max_abs_residual() const;
  // Fixed-header CSV: time,E,kinetic,gradient,potential,forcing,D_cum,
  // residual,l6_budget with 17-significant-digit floats.
  void write_csv(const std::string& path) const;
};

EnergyLedger energy_audit(const Trajectory& trajectory,
                          const NonlinearityProfile& profile,
                          const Forcing& forcing, const SpectralBasis& basis);

// Finite-difference calculus on sampled signals, with constant extension
// outside the record:
//   v_eps^+(t) = v(t+eps) - v(t),  v_eps^-(t) = v(t) - v(t-eps),
//   D_eps v(t) = [v_eps^+ + v_eps^-] / (2 eps).
struct SteklovSeries {
  std::vector<Eigen::VectorXd> d_eps;
  std::vector<Eigen::VectorXd> plus;   // v_eps^+
  std::vector<Eigen::VectorXd> minus;  // v_eps^-
  double eps = 0.0;
};

SteklovSeries steklov_difference(const std::vector<Eigen::VectorXd>& samples,
                                 double sample_spacing, double eps);

// Convergence report for the two scalar pairing identities:
//  (a)  int (u, D_eps u)_{H^1} dt -> 1/2 [ ||u(T)||_{H^1}^2 - ||u(0)||_{H^1}^2 ]
//  (c)  int (u_tt, D_eps u) dt    -> 1/2 [ ||u_t(T)||^2    - ||u_t(0)||^2 ].
// The u_tt pairing is evaluated through its first integral: on the sampled
// record it becomes (v, D_eps v) in H^0, which carries the same limit.
struct SteklovReport {
  std::vector<double> eps_values;
  std::vector<double> gap_a;  // |lhs - rhs| for identity (a)
  std::vector<double> gap_c;
  double rate_a = 0.0;  // log-log slope of gap vs eps
  double rate_c = 0.0;
  bool monotone_a = false;
  bool monotone_c = false;
};

SteklovReport steklov_limit_check(const Trajectory& trajectory,
                                  const SpectralBasis& basis,
                                  const std::vector<double>& eps_sequence);

// Perturbed Lyapunov functional V(U) = E(U) + eps (u_t, u) and the source
// H = L + M entering the decay identity
//   V(U(T)) = e^{-eps T} V(U(0)) + int_0^T e^{-eps (T-t)} H(U(t)) dt.
struct LyapunovSnapshot {
  double V = 0.0;
  double E = 0.0;
  double L = 0.0;  // -int g(u_t) u_t + (3 eps/2) ||u_t||^2
  double M = 0.0;
  double H = 0.0;  // L + M
};

double default_lyapunov_eps(const NonlinearityProfile& profile,
                            const SpectralBasis& basis);

LyapunovSnapshot perturbed_lyapunov(const SpectralState& state,
                                    const NonlinearityProfile& profile,
                                    const Forcing& forcing,
                                    const SpectralBasis& basis,
                                    double eps_param);

// Residual of the decay identity along a trajectory (exponentially weighted
// trapezoid quadrature of H). Goes to zero under dt refinement.
double lyapunov_identity_residual(const Trajectory& trajectory,
                                  const NonlinearityProfile& profile,
                                  const Forcing& forcing,
                                  const SpectralBasis& basis,
                                  double eps_param);

}  // namespace wavebox
