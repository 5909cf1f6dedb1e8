#include "wavebox/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "wavebox/util.hpp"

namespace wavebox {

double EnergyLedger::max_abs_residual() const {
  double m = 0.0;
  for (double r : residual) m = std::max(m, std::abs(r));
  return m;
}

void EnergyLedger::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open ledger file: " + path);
  out << "time,E,kinetic,gradient,potential,forcing,D_cum,residual,l6_budget\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out << fmt_sig17(times[i]) << ',' << fmt_sig17(E[i]) << ','
        << fmt_sig17(kinetic[i]) << ',' << fmt_sig17(gradient[i]) << ','
        << fmt_sig17(potential[i]) << ',' << fmt_sig17(forcing[i]) << ','
        << fmt_sig17(D_cum[i]) << ',' << fmt_sig17(residual[i]) << ','
        << fmt_sig17(l6_budget[i]) << '\n';
  }
}

EnergyLedger energy_audit(const Trajectory& trajectory,
                          const NonlinearityProfile& profile,
                          const Forcing& forcing, const SpectralBasis& basis) {
  EnergyLedger ledger;
  if (trajectory.samples.empty()) return ledger;
  const double d0 = trajectory.samples.front().diss_cum;
  const double l0 = trajectory.samples.front().l6_cum;
  double e0 = 0.0;
  for (std::size_t i = 0; i < trajectory.samples.size(); ++i) {
    const auto& s = trajectory.samples[i];
    const EnergySnapshot es =
        energy(SpectralState(s.u, s.v, s.time), profile, forcing, basis);
    if (i == 0) e0 = es.total;
    ledger.times.push_back(s.time);
    ledger.E.push_back(es.total);
    ledger.kinetic.push_back(es.kinetic);
    ledger.gradient.push_back(es.gradient);
    ledger.potential.push_back(es.potential);
    ledger.forcing.push_back(es.forcing_term);
    ledger.D_cum.push_back(s.diss_cum - d0);
    ledger.residual.push_back(es.total + (s.diss_cum - d0) - e0);
    ledger.l6_budget.push_back(s.l6_cum - l0);
  }
  return ledger;
}

SteklovSeries steklov_difference(const std::vector<Eigen::VectorXd>& samples,
                                 double sample_spacing, double eps) {
  if (samples.empty())
    throw std::invalid_argument("steklov_difference: empty sample record");
  if (!(sample_spacing > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("steklov_difference: spacing and eps must be > 0");
  const double ratio = eps / sample_spacing;
  const long m = std::lround(ratio);
  if (m < 1 || std::abs(ratio - static_cast<double>(m)) > 1e-9 * ratio)
    throw std::invalid_argument(
        "steklov_difference: eps must be an integer multiple of the sample "
        "spacing");

  const long n = static_cast<long>(samples.size()) - 1;
  auto at = [&](long i) -> const Eigen::VectorXd& {
    return samples[static_cast<std::size_t>(std::clamp(i, 0L, n))];
  };
  SteklovSeries out;
  out.eps = eps;
  out.d_eps.reserve(samples.size());
  out.plus.reserve(samples.size());
  out.minus.reserve(samples.size());
  for (long i = 0; i <= n; ++i) {
    out.plus.push_back(at(i + m) - at(i));
    out.minus.push_back(at(i) - at(i - m));
    out.d_eps.push_back((at(i + m) - at(i - m)) / (2.0 * eps));
  }
  return out;
}

namespace {

bool nonincreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] * (1.0 + 1e-12) + 1e-300) return false;
  return true;
}

double loglog_rate(const std::vector<double>& eps,
                   const std::vector<double>& gap) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (gap[i] > 0.0) {
      xs.push_back(std::log(eps[i]));
      ys.push_back(std::log(gap[i]));
    }
  }
  return linear_fit(xs, ys).slope;
}

}  // namespace

SteklovReport steklov_limit_check(const Trajectory& trajectory,
                                  const SpectralBasis& basis,
                                  const std::vector<double>& eps_sequence) {
  const auto& samples = trajectory.samples;
  if (samples.size() < 3)
    throw std::invalid_argument("steklov_limit_check: record too short");
  const double dt = trajectory.sample_spacing();

  std::vector<Eigen::VectorXd> u_series, v_series;
  u_series.reserve(samples.size());
  v_series.reserve(samples.size());
  for (const auto& s : samples) {
    u_series.push_back(s.u);
    v_series.push_back(s.v);
  }
  const Eigen::ArrayXd lam = basis.eigenvalues().array();
  const auto& u0 = u_series.front();
  const auto& uT = u_series.back();
  const auto& v0 = v_series.front();
  const auto& vT = v_series.back();
  const double rhs_a = 0.5 * ((lam * uT.array().square()).sum() -
                              (lam * u0.array().square()).sum());
  const double rhs_c = 0.5 * (vT.squaredNorm() - v0.squaredNorm());

  SteklovReport rep;
  for (double eps : eps_sequence) {
    const SteklovSeries du = steklov_difference(u_series, dt, eps);
    const SteklovSeries dv = steklov_difference(v_series, dt, eps);
    // (c) pairs u_tt through its first integral: along the record the
    // pairing reduces to (v, D_eps v) in H^0 with the same limit value.
    double lhs_a = 0.0, lhs_c = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      lhs_a += (lam * u_series[i].array() * du.d_eps[i].array()).sum();
      lhs_c += v_series[i].dot(dv.d_eps[i]);
    }
    lhs_a *= dt;
    lhs_c *= dt;
    rep.eps_values.push_back(eps);
    rep.gap_a.push_back(std::abs(lhs_a - rhs_a));
    rep.gap_c.push_back(std::abs(lhs_c - rhs_c));
  }
  rep.monotone_a = nonincreasing(rep.gap_a);
  rep.monotone_c = nonincreasing(rep.gap_c);
  rep.rate_a = loglog_rate(rep.eps_values, rep.gap_a);
  rep.rate_c = loglog_rate(rep.eps_values, rep.gap_c);
  return rep;
}

double default_lyapunov_eps(const NonlinearityProfile& profile,
                            const SpectralBasis& basis) {
  const double omega = profile.is_audited() ? profile.audit().omega : 1.0;
  return 0.25 * omega * basis.lambda1();
}

LyapunovSnapshot perturbed_lyapunov(const SpectralState& state,
                                    const NonlinearityProfile& profile,
                                    const Forcing& forcing,
                                    const SpectralBasis& basis,
                                    double eps_param) {
  if (!(eps_param > 0.0))
    throw std::invalid_argument("perturbed_lyapunov: eps_param must be > 0");
  LyapunovSnapshot snap;
  const EnergySnapshot es = energy(state, profile, forcing, basis);
  const double vu = state.v.dot(state.u);
  snap.E = es.total;
  snap.V = es.total + eps_param * vu;

  const Eigen::VectorXd u_grid = basis.to_physical(state.u);
  const Eigen::VectorXd v_grid = basis.to_physical(state.v);
  const Eigen::ArrayXd g_grid = profile.eval_g(v_grid.array());
  const double diss = basis.integrate((g_grid * v_grid.array()).matrix());
  const double fu_u =
      basis.integrate((profile.eval_f(u_grid.array()) * u_grid.array()).matrix());
  const double g_u = basis.integrate((g_grid * u_grid.array()).matrix());

  snap.L = -diss + 1.5 * eps_param * state.v.squaredNorm();
  snap.M = -eps_param * (fu_u - es.potential) - eps_param * es.gradient -
           eps_param * g_u + eps_param * eps_param * vu;
  snap.H = snap.L + snap.M;
  return snap;
}

double lyapunov_identity_residual(const Trajectory& trajectory,
                                  const NonlinearityProfile& profile,
                                  const Forcing& forcing,
                                  const SpectralBasis& basis,
                                  double eps_param) {
  const auto& samples = trajectory.samples;
  if (samples.size() < 2)
    throw std::invalid_argument("lyapunov_identity_residual: record too short");
  const double T = samples.back().time - samples.front().time;

  std::vector<double> h_vals(samples.size());
  double v_start = 0.0, v_end = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const LyapunovSnapshot snap = perturbed_lyapunov(
        SpectralState(s.u, s.v, s.time), profile, forcing, basis, eps_param);
    h_vals[i] = snap.H;
    if (i == 0) v_start = snap.V;
    if (i + 1 == samples.size()) v_end = snap.V;
  }
  double integral = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double t0 = samples[i - 1].time - samples.front().time;
    const double t1 = samples[i].time - samples.front().time;
    const double w0 = std::exp(-eps_param * (T - t0));
    const double w1 = std::exp(-eps_param * (T - t1));
    integral += 0.5 * (t1 - t0) * (w0 * h_vals[i - 1] + w1 * h_vals[i]);
  }
  return v_end - (std::exp(-eps_param * T) * v_start + integral);
}

}  // namespace wavebox
