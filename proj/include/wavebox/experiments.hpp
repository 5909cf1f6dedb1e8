#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "wavebox/diagnostics.hpp"
#include "wavebox/model.hpp"
#include "wavebox/solver.hpp"

namespace wavebox {

// One verified inequality: both sides and the formula that produced the
// right-hand side, so reports stay auditable.
struct BoundCheck {
  std::string name;
  std::string formula;
  double observed = 0.0;
  double bound = 0.0;
  bool pass = false;
};

// ---------------------------------------------------------------------------
// Continuous dependence (Lipschitz well-posedness)

struct LipschitzReport {
  std::vector<double> times;
  std::vector<double> rho;        // ||U1(t)-U2(t)||_H / ||U1_0-U2_0||_H
  double initial_gap = 0.0;
  double fitted_C = 0.0;          // smallest C >= 0 with rho(t) <= e^{Ct}
  bool envelope_ok = false;       // self-consistency against e^{fitted_C t}
  bool subexponential_ok = false; // windowed log-slopes do not increase
  bool pass = false;
};

LipschitzReport continuous_dependence(const SpectralState& u0_a,
                                      const SpectralState& u0_b,
                                      const NonlinearityProfile& profile,
                                      const Forcing& forcing,
                                      const SpectralBasis& basis,
                                      const SolverConfig& config);

// ---------------------------------------------------------------------------
// Absorbing ball with the explicit radius 2^{14/3} L / omega,
// L = ||h||^2/(omega lambda1) + C_nu |Omega|.

struct AbsorbingOptions {
  int ensemble_size = 16;
  double r0 = 5.0;        // initial data drawn with ||U0||_H <= r0
  double t_end = 50.0;
  double dwell = 1.0;     // entry requires staying below threshold this long
  std::uint64_t seed = 1;
  SolverConfig solver;
};

struct AbsorbingReport {
  double L = 0.0;
  double radius_sq = 0.0;
  bool decay_mode = false;  // L == 0: trivial attractor, relative decay check
  std::vector<double> entry_times;  // per member (t at which dwell begins)
  std::vector<double> final_sq;     // ||U(T)||_H^2 per member
  double limsup_proxy = 0.0;  // max over members of sup_{[0.9T,T]} ||U||_H^2
  double max_final_ratio = 0.0;  // decay mode: ||U(T)||^2 / ||U(0)||^2
  bool all_entered = false;
  bool no_exit = false;
  bool pass = false;
};

AbsorbingReport absorbing_ball(const NonlinearityProfile& profile,
                               const Forcing& forcing,
                               const SpectralBasis& basis,
                               const AbsorbingOptions& opts);

// ---------------------------------------------------------------------------
// Quasi-stability: fit of the stabilizability envelope on trajectory pairs.

struct QuasiStabilityOptions {
  int pairs = 8;
  double r0 = 2.0;      // base points drawn with ||U0||_H <= r0
  double gap = 1e-2;    // pair separation in ||.||_H
  double t_end = 20.0;
  std::uint64_t seed = 7;
  SolverConfig solver;
};

struct QuasiStabilityReport {
  double c_hat = 0.0;    // smallest c with nonincreasing envelope on [T/4, T]
  double rho_hat = 0.0;  // fitted exponential decay rate of the envelope
  double r2 = 0.0;       // of the log-linear envelope fit
  std::vector<double> env_times, env_values;
  bool pass = false;     // rho_hat > 0 and r2 >= 0.9
};

// Refuses profiles with g'(0) = 0: the stabilizability estimate assumes a
// nondegenerate damping slope at the origin (kappa2 > 0).
QuasiStabilityReport quasi_stability_fit(const NonlinearityProfile& profile,
                                         const Forcing& forcing,
                                         const SpectralBasis& basis,
                                         const QuasiStabilityOptions& opts);

// Q(t) of one pair for a given compactness constant c, as used by the fit.
std::vector<double> quasi_q_series(const Trajectory& a, const Trajectory& b,
                                   double c, const SpectralBasis& basis);

// ---------------------------------------------------------------------------
// Stationary solutions of  -Delta u + f(u) = h  in the Galerkin space.

struct StationaryOptions {
  double tol = 1e-9;     // L2 norm of the projected residual
  int max_iters = 100;
  int restarts = 10;
  std::uint64_t seed = 3;
};

struct StationaryState {
  Eigen::VectorXd u;
  double residual = 0.0;
  double grad_sq = 0.0;
  double lap_sq = 0.0;
  BoundCheck est_grad;  // ||grad u||^2 against the audited constants
  BoundCheck est_lap;   // ||Delta u||^2 against the H^2 bound
};

StationaryState solve_stationary(const NonlinearityProfile& profile,
                                 const Forcing& forcing,
                                 const SpectralBasis& basis,
                                 const Eigen::VectorXd& initial_guess,
                                 const StationaryOptions& opts = {});

// Distance between solutions re-solved from random starts; for monotone f
// (all source coefficients >= 0) this certifies uniqueness.
double stationary_restart_spread(const NonlinearityProfile& profile,
                                 const Forcing& forcing,
                                 const SpectralBasis& basis,
                                 const StationaryState& reference,
                                 int n_starts, std::uint64_t seed,
                                 const StationaryOptions& opts = {});

// Enumerate distinct stationary points from scattered Newton starts
// (no completeness claim for non-monotone sources).
std::vector<StationaryState> stationary_set(const NonlinearityProfile& profile,
                                            const Forcing& forcing,
                                            const SpectralBasis& basis,
                                            int n_starts, std::uint64_t seed,
                                            const StationaryOptions& opts = {});

// ---------------------------------------------------------------------------
// Attractor sampling and gradient-structure checks.

struct AttractorOptions {
  int ensemble_size = 8;
  double r0 = 2.0;
  double burn_in = 10.0;
  int sample_count = 16;      // per member, after burn-in
  double sample_spacing = 0.5;
  std::uint64_t seed = 11;
  SolverConfig solver;
};

struct AttractorReport {
  std::vector<SpectralState> cloud;
  std::vector<double> dist_to_stationary;
  double max_distance = 0.0;
  bool energy_monotone = true;  // E nonincreasing along every trajectory
  int stationary_count = 0;
};

AttractorReport attractor_sample(const NonlinearityProfile& profile,
                                 const Forcing& forcing,
                                 const SpectralBasis& basis,
                                 const AttractorOptions& opts);

// ---------------------------------------------------------------------------
// Forward H^2 tracking: ||Delta u||^2, ||u_t||_{H^1}^2 and a finite-difference
// ||u_tt||^2 along a recorded trajectory.

struct H2Report {
  std::vector<double> times, lap_sq, vel_h1_sq, acc_sq;
  double sup_lap = 0.0, sup_vel = 0.0, sup_acc = 0.0;  // post burn-in
  double trend_slope = 0.0;  // of log windowed sup of the combined statistic
  bool bounded = false;      // trend_slope <= tolerance
};

H2Report h2_tracking(const Trajectory& trajectory, const SpectralBasis& basis,
                     double burn_in_fraction = 0.25);

// ---------------------------------------------------------------------------
// Correlation-sum box-counting estimate on a state cloud (heuristic only).

struct DimensionReport {
  std::vector<double> radii;
  std::vector<double> corr;  // correlation sums C(r)
  double dimension = 0.0;
  double band = 0.0;  // +- 2 standard errors of the fitted slope
};

DimensionReport fractal_dimension_estimate(
    const std::vector<SpectralState>& cloud, const SpectralBasis& basis,
    const std::vector<double>& radii);

// ---------------------------------------------------------------------------
// Hoelder continuity exponent in H^{1-s} x H^{-s} from snapshot increments.

struct HolderReport {
  double s_exponent = 1.0;
  double gamma_hat = 0.0;
  bool vacuous = false;  // constant trajectory
  bool pass = false;     // gamma_hat >= s/6 - 0.05 (or vacuous)
  std::vector<double> gaps, mean_increments;
};

HolderReport holder_weak_norm(const Trajectory& trajectory,
                              const SpectralBasis& basis, double s_exponent);

// ---------------------------------------------------------------------------
// Seeded ensembles of admissible initial data.

std::vector<SpectralState> draw_ensemble(const SpectralBasis& basis,
                                         std::uint64_t seed, int count,
                                         double r_max);

}  // namespace wavebox
