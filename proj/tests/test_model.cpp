#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wavebox/errors.hpp"
#include "wavebox/model.hpp"
#include "wavebox/util.hpp"

using namespace wavebox;

namespace {
NonlinearityProfile quintic_profile() {
  return NonlinearityProfile(0.0, 1.0, {{1.0, 5.0}});  // g = s^5, f = s^5
}
}  // namespace

TEST_CASE("closed-form evaluations") {
  NonlinearityProfile p(0.0, 1.0, {{1.0, 5.0}});
  CHECK(p.eval_g(2.0) == doctest::Approx(32.0));
  CHECK(p.eval_gp(2.0) == doctest::Approx(5.0 * 16.0));
  CHECK(p.eval_f(-2.0) == doctest::Approx(-32.0));
  CHECK(p.eval_F(2.0) == doctest::Approx(64.0 / 6.0));
  CHECK(p.eval_fpp(2.0) == doctest::Approx(20.0 * 8.0));

  NonlinearityProfile cubic(1.0, 0.0, {{1.0, 3.0}, {-1.0, 1.0}});
  CHECK(cubic.eval_f(2.0) == doctest::Approx(8.0 - 2.0));
  CHECK(cubic.eval_fp(0.0) == doctest::Approx(-1.0));
  CHECK(cubic.eval_F(2.0) == doctest::Approx(4.0 - 2.0));
}

TEST_CASE("derivative consistency against finite differences") {
  NonlinearityProfile p(0.5, 2.0, {{1.0, 5.0}, {-0.3, 3.0}, {0.2, 1.0}});
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const double s = (rng.uniform() - 0.5) * 20.0;
    const double fp = oracles::fd1([&](double x) { return p.eval_f(x); }, s);
    const double gp = oracles::fd1([&](double x) { return p.eval_g(x); }, s);
    const double Fp = oracles::fd1([&](double x) { return p.eval_F(x); }, s);
    const double scale_f = 1.0 + std::abs(p.eval_fp(s));
    const double scale_g = 1.0 + std::abs(p.eval_gp(s));
    CHECK(std::abs(p.eval_fp(s) - fp) / scale_f < 1e-6);
    CHECK(std::abs(p.eval_gp(s) - gp) / scale_g < 1e-6);
    CHECK(std::abs(p.eval_f(s) - Fp) / scale_f < 1e-6);
    const double fpp = oracles::fd2([&](double x) { return p.eval_f(x); }, s);
    CHECK(std::abs(p.eval_fpp(s) - fpp) / (1.0 + std::abs(fpp)) < 1e-5);
  }
}

TEST_CASE("audit constants for the quintic pair") {
  auto p = quintic_profile();
  const auto rep = p.run_audit(1.0);
  CHECK(rep.kappa0 == doctest::Approx(5.0));
  CHECK(rep.kappa1 == doctest::Approx(5.0));
  CHECK(rep.quintic_coercivity);
  CHECK(rep.L_f == doctest::Approx(20.0).epsilon(1e-3));
  CHECK(rep.C_f == doctest::Approx(5.0).epsilon(1e-3));
  CHECK(rep.nu == 0.0);
  CHECK(rep.omega == 1.0);
  CHECK(rep.C_nu == 0.0);
  CHECK(rep.K_f == 0.0);  // f' = 5 s^4 >= 0
  CHECK(p.meets_assumptions());
}

TEST_CASE("audit of f = s^3 - s finds the f' minimum") {
  // F(s) <= f(s)s + (nu/2)s^2 forces nu >= 1 near s = 0 for this source,
  // so it is only admissible when lambda1 > 1 (e.g. the 2D box).
  NonlinearityProfile p(1.0, 1.0, {{1.0, 3.0}, {-1.0, 1.0}});
  const auto rep = p.run_audit(2.0);
  CHECK(std::isinf(rep.f_over_s_limit));
  CHECK(rep.f_over_s_limit > 0.0);
  CHECK(rep.nu == doctest::Approx(1.0));
  CHECK(rep.omega == doctest::Approx(0.5));
  CHECK(rep.mu == doctest::Approx(1.0).epsilon(1e-6));   // min f' = -1 at 0
  CHECK(rep.K_f == doctest::Approx(1.05).epsilon(1e-6)); // 5% headroom

  NonlinearityProfile q(1.0, 1.0, {{1.0, 3.0}, {-1.0, 1.0}});
  CHECK_THROWS_AS(q.run_audit(1.0), AssumptionViolation);  // 1D: no nu < 1
}

TEST_CASE("audit of f = -(1/2) s picks nu = 1/2") {
  NonlinearityProfile p(1.0, 1.0, {{-0.5, 1.0}});
  const auto rep = p.run_audit(1.0);
  CHECK(rep.f_over_s_limit == doctest::Approx(-0.5));
  CHECK(rep.nu == doctest::Approx(0.5));
  CHECK(rep.omega == doctest::Approx(0.5));
}

TEST_CASE("audit violations") {
  NonlinearityProfile bad(1.0, 1.0, {{-2.0, 1.0}});
  CHECK_THROWS_AS(bad.run_audit(1.0), AssumptionViolation);
  try {
    NonlinearityProfile again(1.0, 1.0, {{-2.0, 1.0}});
    again.run_audit(1.0);
  } catch (const AssumptionViolation& e) {
    CHECK(e.inequality() == "hyp-inf-f");
  }

  NonlinearityProfile nonc2(1.0, 1.0, {{1.0, 1.5}});
  CHECK_THROWS_AS(nonc2.run_audit(1.0), AssumptionViolation);

  CHECK_THROWS_AS(NonlinearityProfile(-1.0, 1.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(NonlinearityProfile(1.0, 1.0, {{1.0, 7.0}}),
                  std::invalid_argument);
}

TEST_CASE("degenerate damping is audited but not coercive") {
  NonlinearityProfile lin(1.0, 0.0, {});
  const auto rep = lin.run_audit(1.0);
  CHECK(rep.kappa0 == 0.0);
  CHECK_FALSE(rep.quintic_coercivity);
  CHECK(lin.is_audited());
  CHECK_FALSE(lin.meets_assumptions());
}

TEST_CASE("family identity g(s) s = kappa2 s^2 + kappa s^6") {
  NonlinearityProfile p(0.7, 1.3, {});
  Rng rng(13);
  for (int i = 0; i < 10000; ++i) {
    const double s = (rng.uniform() - 0.5) * 12.0;
    const double lhs = p.eval_g(s) * s;
    const double rhs = 0.7 * s * s + 1.3 * std::pow(s, 6);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(lhs >= 0.0);
  }
}

TEST_CASE("monotonicity gap of the damping") {
  auto p = quintic_profile();
  const auto rep = p.run_audit(1.0);
  const double kappa2 = p.g_linear();
  Rng rng(17);
  for (int i = 0; i < 10000; ++i) {
    const double r = (rng.uniform() - 0.5) * 8.0;
    const double s = (rng.uniform() - 0.5) * 8.0;
    const double lhs = (p.eval_g(r) - p.eval_g(s)) * (r - s);
    const double rhs = kappa2 * (r - s) * (r - s) +
                       rep.kappa0 / 10.0 *
                           (std::pow(r, 4) + std::pow(s, 4)) * (r - s) * (r - s);
    CHECK(lhs >= rhs - 1e-9 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("energy snapshots") {
  SpectralBasis basis(1, 8);
  auto p = quintic_profile();
  p.run_audit(basis.lambda1());
  const Forcing h0 = Forcing::zero(basis);

  SUBCASE("zero state") {
    const auto e = energy(SpectralState::zero(basis), p, h0, basis);
    CHECK(e.total == 0.0);
  }

  SUBCASE("u(x) = sin x with quintic source") {
    SpectralState s = SpectralState::zero(basis);
    s.u[0] = std::sqrt(M_PI / 2.0);  // sin x in the orthonormal basis
    const auto e = energy(s, p, h0, basis);
    CHECK(e.gradient == doctest::Approx(M_PI / 4.0));
    CHECK(e.potential == doctest::Approx(oracles::wallis_sin6() / 6.0));
    CHECK(e.total == doctest::Approx(M_PI / 4.0 + 5.0 * M_PI / 96.0));
    // independent Simpson confirmation of the potential term
    const double pot = oracles::simpson(
        [](double x) { return std::pow(std::sin(x), 6) / 6.0; }, 0.0, M_PI);
    CHECK(e.potential == doctest::Approx(pot).epsilon(1e-10));
  }

  SUBCASE("kinetic only") {
    SpectralState s = SpectralState::zero(basis);
    s.v[0] = 2.0;  // ||v|| = 2
    const auto e = energy(s, p, h0, basis);
    CHECK(e.total == doctest::Approx(2.0));
  }

  SUBCASE("decomposition is exact") {
    Rng rng(23);
    SpectralState s = SpectralState::zero(basis);
    for (int i = 0; i < 8; ++i) {
      s.u[i] = 0.3 * rng.gaussian();
      s.v[i] = 0.3 * rng.gaussian();
    }
    Forcing h = Forcing::mode1(basis, 0.7);
    const auto e = energy(s, p, h, basis);
    CHECK(e.total == e.kinetic + e.gradient + e.potential - e.forcing_term);
  }
}

TEST_CASE("dissipation density") {
  SpectralBasis basis(1, 8);
  const Eigen::VectorXd x = basis.quad_nodes_1d();
  Eigen::VectorXd sinx(x.size());
  for (int j = 0; j < x.size(); ++j) sinx[j] = std::sin(x[j]);

  auto quintic = quintic_profile();
  quintic.run_audit(1.0);
  CHECK(dissipation_density(Eigen::VectorXd::Zero(x.size()), quintic, basis) ==
        0.0);
  CHECK(dissipation_density(sinx, quintic, basis) ==
        doctest::Approx(oracles::wallis_sin6()));

  NonlinearityProfile lin(1.0, 0.0, {});
  lin.run_audit(1.0);
  CHECK(dissipation_density(sinx, lin, basis) == doctest::Approx(M_PI / 2.0));
}

TEST_CASE("antiderivative consistency F' = f") {
  NonlinearityProfile p(0.0, 1.0, {{0.8, 5.0}, {-0.4, 3.0}});
  Rng rng(29);
  for (int i = 0; i < 500; ++i) {
    const double s = (rng.uniform() - 0.5) * 20.0;
    const double fd = oracles::fd1([&](double x) { return p.eval_F(x); }, s);
    CHECK(std::abs(fd - p.eval_f(s)) / (1.0 + std::abs(p.eval_f(s))) < 1e-6);
  }
}
