#include "wavebox/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wavebox/errors.hpp"

namespace wavebox {

namespace {

// |s|^(p-1) * s and friends, with fast paths for the odd integer powers.
double pow_signed(double s, double p) {
  if (p == 1.0) return s;
  if (p == 3.0) return s * s * s;
  if (p == 5.0) {
    const double s2 = s * s;
    return s2 * s2 * s;
  }
  return std::copysign(std::pow(std::abs(s), p), s);
}

double pow_abs(double s, double p) {
  if (p == 0.0) return 1.0;
  if (p == 2.0) return s * s;
  if (p == 4.0) {
    const double s2 = s * s;
    return s2 * s2;
  }
  return std::pow(std::abs(s), p);
}

}  // namespace

NonlinearityProfile::NonlinearityProfile(double g_linear, double g_quintic,
                                         std::vector<FTerm> f_terms)
    : kappa2_(g_linear), kappa_(g_quintic), f_terms_(std::move(f_terms)) {
  if (kappa2_ < 0.0 || kappa_ < 0.0)
    throw std::invalid_argument(
        "NonlinearityProfile: damping coefficients must be >= 0");
  for (const auto& t : f_terms_) {
    if (!(t.exponent >= 1.0 && t.exponent <= 5.0))
      throw std::invalid_argument(
          "NonlinearityProfile: source exponents must lie in [1,5]");
    if (!std::isfinite(t.coeff))
      throw std::invalid_argument("NonlinearityProfile: non-finite coefficient");
  }
}

double NonlinearityProfile::eval_g(double s) const {
  const double s2 = s * s;
  return kappa2_ * s + kappa_ * s2 * s2 * s;
}

double NonlinearityProfile::eval_gp(double s) const {
  const double s2 = s * s;
  return kappa2_ + 5.0 * kappa_ * s2 * s2;
}

double NonlinearityProfile::eval_f(double s) const {
  double r = 0.0;
  for (const auto& t : f_terms_) r += t.coeff * pow_signed(s, t.exponent);
  return r;
}

double NonlinearityProfile::eval_fp(double s) const {
  double r = 0.0;
  for (const auto& t : f_terms_)
    r += t.coeff * t.exponent * pow_abs(s, t.exponent - 1.0);
  return r;
}

double NonlinearityProfile::eval_fpp(double s) const {
  double r = 0.0;
  for (const auto& t : f_terms_) {
    if (t.exponent == 1.0) continue;
    r += t.coeff * t.exponent * (t.exponent - 1.0) *
         pow_signed(s, t.exponent - 2.0);
  }
  return r;
}

double NonlinearityProfile::eval_F(double s) const {
  double r = 0.0;
  for (const auto& t : f_terms_)
    r += t.coeff * pow_abs(s, t.exponent + 1.0) / (t.exponent + 1.0);
  return r;
}

Eigen::ArrayXd NonlinearityProfile::eval_g(const Eigen::ArrayXd& s) const {
  return s.unaryExpr([this](double x) { return eval_g(x); });
}
Eigen::ArrayXd NonlinearityProfile::eval_gp(const Eigen::ArrayXd& s) const {
  return s.unaryExpr([this](double x) { return eval_gp(x); });
}
Eigen::ArrayXd NonlinearityProfile::eval_f(const Eigen::ArrayXd& s) const {
  return s.unaryExpr([this](double x) { return eval_f(x); });
}
Eigen::ArrayXd NonlinearityProfile::eval_fp(const Eigen::ArrayXd& s) const {
  return s.unaryExpr([this](double x) { return eval_fp(x); });
}
Eigen::ArrayXd NonlinearityProfile::eval_F(const Eigen::ArrayXd& s) const {
  return s.unaryExpr([this](double x) { return eval_F(x); });
}

const AuditReport& NonlinearityProfile::audit() const {
  if (!audit_)
    throw std::logic_error("NonlinearityProfile: audit has not been run");
  return *audit_;
}

const AuditReport& NonlinearityProfile::run_audit(double lambda1,
                                                  const AuditOptions& opts) {
  if (lambda1 <= 0.0)
    throw std::invalid_argument("run_audit: lambda1 must be positive");
  if (opts.s_max < 10.0 || opts.samples < 10000)
    throw std::invalid_argument(
        "run_audit: need s_max >= 10 and >= 10^4 samples");

  AuditReport rep;
  rep.lambda1 = lambda1;

  // Damping bounds are closed-form for the linear-plus-quintic family:
  // g'(s) = kappa2 + 5 kappa s^4.
  rep.kappa0 = 5.0 * kappa_;
  rep.kappa1 = std::max(kappa2_, 5.0 * kappa_);
  rep.quintic_coercivity = rep.kappa0 > 0.0;
  rep.notes.push_back("kappa0 = 5*g_quintic, kappa1 = max(g_linear, 5*g_quintic)");

  // f'' is unbounded near the origin for exponents in (1,2); the family is
  // then not C^2 and the growth bound on f'' fails at s -> 0.
  for (const auto& t : f_terms_) {
    if (t.coeff != 0.0 && t.exponent > 1.0 && t.exponent < 2.0)
      throw AssumptionViolation("hyp_f''", 0.0,
                                "|f''| unbounded near s = 0 for exponent " +
                                    std::to_string(t.exponent));
  }

  // Leading behavior of f(s)/s as |s| -> inf.
  double p_lead = 1.0;
  for (const auto& t : f_terms_)
    if (t.coeff != 0.0) p_lead = std::max(p_lead, t.exponent);
  double a_lead = 0.0;  // sum of coefficients at the leading exponent
  double linear_sum = 0.0;
  for (const auto& t : f_terms_) {
    if (t.coeff != 0.0 && t.exponent == p_lead) a_lead += t.coeff;
    if (t.exponent == 1.0) linear_sum += t.coeff;
  }
  const bool superlinear = p_lead > 1.0 && a_lead != 0.0;
  if (superlinear) {
    rep.f_over_s_limit = a_lead > 0.0
                             ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
  } else {
    rep.f_over_s_limit = linear_sum;
  }
  if (!(rep.f_over_s_limit > -lambda1))
    throw AssumptionViolation(
        "hyp-inf-f", opts.s_max,
        "lim f(s)/s = " + std::to_string(rep.f_over_s_limit) +
            " must exceed -lambda1 = " + std::to_string(-lambda1));
  rep.notes.push_back(superlinear
                          ? "f/s tail: leading exponent " +
                                std::to_string(p_lead) + " with coefficient " +
                                std::to_string(a_lead)
                          : "f/s tail: linear, sum of slopes " +
                                std::to_string(linear_sum));

  // Sampled sweep. The binding constants for power sums occur either at
  // interior critical points (caught by the grid) or as |s| -> inf (covered
  // by the closed-form tail values recorded alongside).
  const int n = opts.samples;
  double Lf_sampled = 0.0, Cf_sampled = 0.0;
  double fp_min = std::numeric_limits<double>::infinity();
  double fp_min_arg = 0.0;
  double Nf = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = -opts.s_max + 2.0 * opts.s_max * i / (n - 1);
    const double s2 = s * s;
    const double fp = eval_fp(s);
    const double fpp = eval_fpp(s);
    Lf_sampled = std::max(Lf_sampled, std::abs(fpp) / (1.0 + std::abs(s2 * s)));
    Cf_sampled = std::max(Cf_sampled, std::abs(fp) / (1.0 + s2 * s2));
    if (fp < fp_min) {
      fp_min = fp;
      fp_min_arg = s;
    }
    if (fp < 0.0) Nf = std::max(Nf, std::abs(s));
  }

  // Closed-form tails: only quintic terms survive in the ratios.
  double Lf_tail = 0.0, Cf_tail = 0.0;
  for (const auto& t : f_terms_) {
    if (t.exponent == 5.0) {
      Lf_tail += std::abs(t.coeff) * 20.0;
      Cf_tail += std::abs(t.coeff) * 5.0;
    }
  }
  rep.L_f = std::max(Lf_sampled, Lf_tail);
  rep.C_f = std::max(Cf_sampled, Cf_tail);
  rep.notes.push_back("L_f tail = 20*sum|a_i| over quintic terms = " +
                      std::to_string(Lf_tail));
  rep.notes.push_back("C_f tail = 5*sum|a_i| over quintic terms = " +
                      std::to_string(Cf_tail));

  // Golden-section refinement of min f' around the sampled argmin.
  {
    const double step = 2.0 * opts.s_max / (n - 1);
    double lo = fp_min_arg - step, hi = fp_min_arg + step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    for (int it = 0; it < 200; ++it) {
      if (eval_fp(c) < eval_fp(d)) {
        hi = d;
      } else {
        lo = c;
      }
      c = hi - gr * (hi - lo);
      d = lo + gr * (hi - lo);
    }
    fp_min = std::min(fp_min, eval_fp(0.5 * (lo + hi)));
  }
  rep.mu = std::max(0.0, -fp_min);
  rep.N_f = Nf;
  rep.K_f = 1.05 * rep.mu;  // 5% headroom over the sampled/refined minimum
  rep.notes.push_back(superlinear && a_lead > 0.0
                          ? "f' tail -> +inf; min f' interior"
                          : "f' tail constant; min f' on grid");

  // Dissipativity constants: smallest grid nu in [0, lambda1) with
  // F(s) <= f(s) s + (nu/2) s^2 on the sample (the tail is dominated by the
  // coercive leading term once hyp-inf-f holds).
  const int nu_steps = 256;
  double nu_chosen = -1.0;
  double worst_s = 0.0;
  for (int j = 0; j < nu_steps; ++j) {
    const double nu = lambda1 * j / nu_steps;
    if (!superlinear && linear_sum + nu < 0.0) continue;  // F + nu/2 s^2 tail
    bool ok = true;
    double bad_s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double s = -opts.s_max + 2.0 * opts.s_max * i / (n - 1);
      const double gap = eval_f(s) * s + 0.5 * nu * s * s - eval_F(s);
      if (gap < -1e-12 * (1.0 + s * s)) {
        ok = false;
        bad_s = s;
        break;
      }
    }
    if (ok) {
      nu_chosen = nu;
      break;
    }
    worst_s = bad_s;
  }
  if (nu_chosen < 0.0)
    throw AssumptionViolation("hyp_f2", worst_s,
                              "no nu in [0, lambda1) satisfies "
                              "F(s) <= f(s)s + (nu/2)s^2 on the sample");
  rep.nu = nu_chosen;
  rep.omega = 1.0 - rep.nu / lambda1;

  double cnu = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = -opts.s_max + 2.0 * opts.s_max * i / (n - 1);
    cnu = std::max(cnu, -(eval_F(s) + 0.5 * rep.nu * s * s));
  }
  rep.C_nu = cnu;
  rep.notes.push_back(
      "hyp_f2 tail: coercive leading term dominates both inequalities");

  // Post-hoc verification of the certified inequalities on the grid.
  for (int i = 0; i < n; ++i) {
    const double s = -opts.s_max + 2.0 * opts.s_max * i / (n - 1);
    const double Fv = eval_F(s);
    if (Fv < -rep.C_nu - 0.5 * rep.nu * s * s - 1e-10 * (1.0 + s * s))
      throw AssumptionViolation("hyp_f2", s, "lower bound on F failed");
  }

  audit_ = std::move(rep);
  return *audit_;
}

AuditReport audit_assumptions(NonlinearityProfile& profile, double lambda1,
                              const AuditOptions& opts) {
  return profile.run_audit(lambda1, opts);
}

Forcing Forcing::zero(const SpectralBasis& basis) {
  return Forcing{Eigen::VectorXd::Zero(basis.modal_size())};
}

Forcing Forcing::mode1(const SpectralBasis& basis, double amplitude) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(basis.modal_size());
  c[0] = amplitude;
  return Forcing{std::move(c)};
}

EnergySnapshot energy(const SpectralState& state,
                      const NonlinearityProfile& profile,
                      const Forcing& forcing, const SpectralBasis& basis) {
  if (!profile.is_audited())
    throw std::logic_error("energy: profile must be audited first");
  if (!state.matches(basis))
    throw std::invalid_argument("energy: state does not match basis");
  EnergySnapshot snap;
  const HNorms hn = h_norms(state, basis);
  snap.kinetic = 0.5 * hn.v_sq;
  snap.gradient = 0.5 * hn.grad_sq;
  const Eigen::VectorXd u_grid = basis.to_physical(state.u);
  snap.potential = basis.integrate(profile.eval_F(u_grid.array()).matrix());
  snap.forcing_term = forcing.coeffs.dot(state.u);
  snap.total = snap.kinetic + snap.gradient + snap.potential - snap.forcing_term;
  return snap;
}

double dissipation_density(const Eigen::VectorXd& v_grid,
                           const NonlinearityProfile& profile,
                           const SpectralBasis& basis) {
  return basis.integrate(
      (profile.eval_g(v_grid.array()) * v_grid.array()).matrix());
}

}  // namespace wavebox
