#include "wavebox/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wavebox/errors.hpp"

namespace wavebox {

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be > 0");
  if (!(newton_tol > 0.0))
    throw std::invalid_argument("SolverConfig: newton_tol must be > 0");
  if (newton_max_iters < 1)
    throw std::invalid_argument("SolverConfig: newton_max_iters must be >= 1");
  if (t_end < 0.0)
    throw std::invalid_argument("SolverConfig: t_end must be >= 0");
  if (observer_stride < 1)
    throw std::invalid_argument("SolverConfig: observer_stride must be >= 1");
}

RhsResult rhs(const SpectralState& state, const NonlinearityProfile& profile,
              const Forcing& forcing, const SpectralBasis& basis) {
  if (!profile.is_audited())
    throw std::logic_error("rhs: profile must be audited first");
  if (!state.matches(basis))
    throw std::invalid_argument("rhs: state does not match basis");
  if (!state.all_finite())
    throw std::runtime_error("rhs: non-finite state");

  RhsResult out;
  out.du = state.v;
  const Eigen::VectorXd u_grid = basis.to_physical(state.u);
  const Eigen::VectorXd v_grid = basis.to_physical(state.v);
  const Eigen::VectorXd pg = basis.to_modal(profile.eval_g(v_grid.array()).matrix());
  const Eigen::VectorXd pf = basis.to_modal(profile.eval_f(u_grid.array()).matrix());
  out.dv = -(basis.eigenvalues().array() * state.u.array()).matrix() - pg - pf +
           forcing.coeffs;
  if (!out.du.allFinite() || !out.dv.allFinite())
    throw std::runtime_error("rhs: non-finite derivative");
  return out;
}

namespace {

// Dense modal matrix of phi -> P_N[ w_grid .* phi ], assembled column by
// column through the collocation transforms.
Eigen::MatrixXd collocation_matrix(const SpectralBasis& basis,
                                   const Eigen::ArrayXd& w_grid) {
  const int k = basis.modal_size();
  Eigen::MatrixXd out(k, k);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
  for (int j = 0; j < k; ++j) {
    e[j] = 1.0;
    const Eigen::VectorXd phi = basis.to_physical(e);
    out.col(j) = basis.to_modal((w_grid * phi.array()).matrix());
    e[j] = 0.0;
  }
  return out;
}

// Implicit midpoint, solved with Newton in the midpoint velocity:
//   u_m = u_n + (dt/2) v_m
//   G(v_m) = v_m - v_n + (dt/2)[lambda.*u_m + P g(v_m) + P f(u_m) - h] = 0
//   U_{n+1} = 2 (u_m, v_m) - U_n
SpectralState step_midpoint(const SpectralState& state,
                            const NonlinearityProfile& profile,
                            const Forcing& forcing, const SpectralBasis& basis,
                            const SolverConfig& config, double dt,
                            double* diss_increment, double* l6_increment) {
  const Eigen::ArrayXd lam = basis.eigenvalues().array();

  // Explicit half-step predictor.
  const RhsResult r0 = rhs(state, profile, forcing, basis);
  Eigen::VectorXd vm = state.v + 0.5 * dt * r0.dv;

  Eigen::VectorXd um, u_grid, v_grid;
  double resid = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iter = 0;
  for (; iter <= config.newton_max_iters; ++iter) {
    um = state.u + 0.5 * dt * vm;
    u_grid = basis.to_physical(um);
    v_grid = basis.to_physical(vm);
    const Eigen::VectorXd pg =
        basis.to_modal(profile.eval_g(v_grid.array()).matrix());
    const Eigen::VectorXd pf =
        basis.to_modal(profile.eval_f(u_grid.array()).matrix());
    const Eigen::VectorXd g_res =
        vm - state.v +
        0.5 * dt *
            ((lam * um.array()).matrix() + pg + pf - forcing.coeffs);
    if (!g_res.allFinite())
      throw NewtonDivergence(iter, std::numeric_limits<double>::infinity());
    resid = g_res.lpNorm<Eigen::Infinity>();
    if (resid <= config.newton_tol) {
      converged = true;
      break;
    }
    if (iter == config.newton_max_iters) break;

    const Eigen::MatrixXd cg =
        collocation_matrix(basis, profile.eval_gp(v_grid.array()));
    const Eigen::MatrixXd cf =
        collocation_matrix(basis, profile.eval_fp(u_grid.array()));
    Eigen::MatrixXd jac = 0.5 * dt * cg + 0.25 * dt * dt * cf;
    jac.diagonal().array() += 1.0 + 0.25 * dt * dt * lam;
    const Eigen::VectorXd delta = jac.partialPivLu().solve(-g_res);
    if (!delta.allFinite())
      throw NewtonDivergence(iter, resid);
    vm += delta;
  }
  if (!converged) throw NewtonDivergence(iter, resid);

  if (diss_increment)
    *diss_increment = dt * dissipation_density(v_grid, profile, basis);
  if (l6_increment)
    *l6_increment = dt * std::pow(basis.lp_norm(v_grid, 6.0), 6.0);

  SpectralState next;
  next.u = 2.0 * um - state.u;
  next.v = 2.0 * vm - state.v;
  next.time = state.time + dt;
  if (!next.all_finite()) throw std::runtime_error("step: non-finite state");
  return next;
}

// Linearly implicit midpoint: the wave part and the linear damping are
// treated by the exact diagonal midpoint solve; quintic damping and the
// source are frozen at an explicit half-step predictor.
SpectralState step_imex(const SpectralState& state,
                        const NonlinearityProfile& profile,
                        const Forcing& forcing, const SpectralBasis& basis,
                        double dt, double* diss_increment,
                        double* l6_increment) {
  const Eigen::ArrayXd lam = basis.eigenvalues().array();
  const double kappa2 = profile.g_linear();
  const double kappa = profile.g_quintic();

  const RhsResult r0 = rhs(state, profile, forcing, basis);
  const Eigen::VectorXd up = state.u + 0.5 * dt * state.v;
  const Eigen::VectorXd vp = state.v + 0.5 * dt * r0.dv;

  const Eigen::ArrayXd up_grid = basis.to_physical(up).array();
  const Eigen::ArrayXd vp_grid = basis.to_physical(vp).array();
  const Eigen::VectorXd nl =
      basis.to_modal((kappa * vp_grid.square().square() * vp_grid +
                      profile.eval_f(up_grid))
                         .matrix());

  const Eigen::ArrayXd rhs_v =
      state.v.array() +
      0.5 * dt *
          (-lam * state.u.array() - nl.array() + forcing.coeffs.array());
  const Eigen::ArrayXd denom =
      1.0 + 0.5 * dt * kappa2 + 0.25 * dt * dt * lam;
  const Eigen::VectorXd vm = (rhs_v / denom).matrix();
  const Eigen::VectorXd um = state.u + 0.5 * dt * vm;

  if (diss_increment) {
    const Eigen::VectorXd vm_grid = basis.to_physical(vm);
    *diss_increment = dt * dissipation_density(vm_grid, profile, basis);
    if (l6_increment)
      *l6_increment = dt * std::pow(basis.lp_norm(vm_grid, 6.0), 6.0);
  } else if (l6_increment) {
    const Eigen::VectorXd vm_grid = basis.to_physical(vm);
    *l6_increment = dt * std::pow(basis.lp_norm(vm_grid, 6.0), 6.0);
  }

  SpectralState next;
  next.u = 2.0 * um - state.u;
  next.v = 2.0 * vm - state.v;
  next.time = state.time + dt;
  if (!next.all_finite()) throw std::runtime_error("step: non-finite state");
  return next;
}

SpectralState step_at(const SpectralState& state,
                      const NonlinearityProfile& profile,
                      const Forcing& forcing, const SpectralBasis& basis,
                      const SolverConfig& config, double dt,
                      double* diss_increment, double* l6_increment) {
  if (config.scheme == Scheme::semi_implicit_imex)
    return step_imex(state, profile, forcing, basis, dt, diss_increment,
                     l6_increment);
  return step_midpoint(state, profile, forcing, basis, config, dt,
                       diss_increment, l6_increment);
}

// Step with automatic halving on Newton failure, recursion depth <= 5.
SpectralState step_with_halving(const SpectralState& state,
                                const NonlinearityProfile& profile,
                                const Forcing& forcing,
                                const SpectralBasis& basis,
                                const SolverConfig& config, double dt,
                                int depth, int* halvings, double* diss_cum,
                                double* l6_cum) {
  try {
    double di = 0.0, li = 0.0;
    SpectralState next =
        step_at(state, profile, forcing, basis, config, dt, &di, &li);
    *diss_cum += di;
    *l6_cum += li;
    return next;
  } catch (const NewtonDivergence&) {
    if (depth >= 5) throw;
    if (halvings) ++(*halvings);
    SpectralState half =
        step_with_halving(state, profile, forcing, basis, config, 0.5 * dt,
                          depth + 1, halvings, diss_cum, l6_cum);
    return step_with_halving(half, profile, forcing, basis, config, 0.5 * dt,
                             depth + 1, halvings, diss_cum, l6_cum);
  }
}

}  // namespace

SpectralState step(const SpectralState& state,
                   const NonlinearityProfile& profile, const Forcing& forcing,
                   const SpectralBasis& basis, const SolverConfig& config,
                   double* diss_increment, double* l6_increment) {
  return step_at(state, profile, forcing, basis, config, config.dt,
                 diss_increment, l6_increment);
}

Trajectory simulate(const SpectralState& initial,
                    const NonlinearityProfile& profile, const Forcing& forcing,
                    const SpectralBasis& basis, const SolverConfig& config) {
  config.validate();
  if (!initial.all_finite())
    throw std::runtime_error("simulate: non-finite initial state");

  Trajectory traj;
  long n_steps = std::lround(config.t_end / config.dt);
  if (config.t_end > 0.0 && n_steps < 1) n_steps = 1;
  const double dt = (n_steps > 0) ? config.t_end / n_steps : config.dt;
  traj.dt = dt;

  SpectralState cur = initial;
  double diss_cum = 0.0, l6_cum = 0.0;
  traj.samples.push_back({cur.time, cur.u, cur.v, diss_cum, l6_cum});
  const double t0 = initial.time;

  for (long i = 1; i <= n_steps; ++i) {
    cur = step_with_halving(cur, profile, forcing, basis, config, dt, 0,
                            &traj.halvings_used, &diss_cum, &l6_cum);
    cur.time = t0 + i * dt;  // avoid accumulation drift
    if (i % config.observer_stride == 0 || i == n_steps)
      traj.samples.push_back({cur.time, cur.u, cur.v, diss_cum, l6_cum});
  }
  return traj;
}

SpectralState random_state(const SpectralBasis& basis, Rng& rng,
                           double h_norm) {
  const int k = basis.modal_size();
  SpectralState s = SpectralState::zero(basis);
  if (h_norm == 0.0) return s;
  for (int i = 0; i < k; ++i) {
    const double scale = 1.0 / basis.eigenvalues()[i];
    s.u[i] = scale * rng.gaussian();
    s.v[i] = scale * rng.gaussian();
  }
  const double cur = std::sqrt(h_norms(s, basis).h_sq);
  if (cur > 0.0) {
    s.u *= h_norm / cur;
    s.v *= h_norm / cur;
  }
  return s;
}

SpectralState state_from_grid(const SpectralBasis& basis,
                              const Eigen::VectorXd& u_grid,
                              const Eigen::VectorXd& v_grid, double time) {
  return SpectralState(basis.to_modal(u_grid), basis.to_modal(v_grid), time);
}

}  // namespace wavebox
