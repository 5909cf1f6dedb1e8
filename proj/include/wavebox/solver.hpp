#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wavebox/model.hpp"
#include "wavebox/spectral.hpp"
#include "wavebox/util.hpp"

namespace wavebox {

enum class Scheme { implicit_midpoint, semi_implicit_imex };

struct SolverConfig {
  double dt = 1e-2;
  Scheme scheme = Scheme::implicit_midpoint;
  double newton_tol = 1e-10;       // residual inf-norm
  int newton_max_iters = 50;
  double t_end = 1.0;
  int observer_stride = 1;

  void validate() const;
};

struct RhsResult {
  Eigen::VectorXd du;  // = v
  Eigen::VectorXd dv;  // = -lambda.*u - P[g(v)] - P[f(u)] + h
};

// Right-hand side of the Galerkin ODE system; nonlinear inner products by
// dealiased collocation.
RhsResult rhs(const SpectralState& state, const NonlinearityProfile& profile,
              const Forcing& forcing, const SpectralBasis& basis);

struct TrajectorySample {
  double time = 0.0;
  Eigen::VectorXd u, v;
  double diss_cum = 0.0;  // int_0^t int_Omega g(u_t) u_t, midpoint quadrature
  double l6_cum = 0.0;    // int_0^t ||u_t||_L6^6
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double dt = 0.0;           // top-level step actually used
  int halvings_used = 0;     // total number of step-halving events

  double sample_spacing() const {
    return samples.size() > 1 ? samples[1].time - samples[0].time : 0.0;
  }
};

// One step of the configured scheme from state.time to state.time + dt.
// Throws NewtonDivergence when the implicit system cannot be solved at this
// dt; simulate() retries with halved steps.
SpectralState step(const SpectralState& state,
                   const NonlinearityProfile& profile, const Forcing& forcing,
                   const SpectralBasis& basis, const SolverConfig& config,
                   double* diss_increment = nullptr,
                   double* l6_increment = nullptr);

// Integrate to t_end, recording every observer_stride steps (plus the final
// state). Newton failures trigger automatic step halving, at most 5 deep.
Trajectory simulate(const SpectralState& initial,
                    const NonlinearityProfile& profile, const Forcing& forcing,
                    const SpectralBasis& basis, const SolverConfig& config);

// Gaussian modal initial data with std dev proportional to 1/lambda_k,
// rescaled to the requested ||U||_H.
SpectralState random_state(const SpectralBasis& basis, Rng& rng,
                           double h_norm);

// Projection of physical-space samples onto the modal space.
SpectralState state_from_grid(const SpectralBasis& basis,
                              const Eigen::VectorXd& u_grid,
                              const Eigen::VectorXd& v_grid, double time = 0.0);

}  // namespace wavebox
