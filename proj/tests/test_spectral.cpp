#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wavebox/spectral.hpp"
#include "wavebox/util.hpp"

using wavebox::SpectralBasis;
using wavebox::SpectralState;

TEST_CASE("eigenvalues and geometry") {
  SpectralBasis b1(1, 4);
  CHECK(b1.eigenvalues()[0] == doctest::Approx(1.0));
  CHECK(b1.eigenvalues()[1] == doctest::Approx(4.0));
  CHECK(b1.eigenvalues()[2] == doctest::Approx(9.0));
  CHECK(b1.eigenvalues()[3] == doctest::Approx(16.0));
  CHECK(b1.domain_volume() == doctest::Approx(M_PI));
  CHECK(b1.lambda1() == 1.0);

  SpectralBasis b2(2, 2);
  CHECK(b2.domain_volume() == doctest::Approx(M_PI * M_PI));
  auto sorted = b2.eigenvalues_sorted();
  CHECK(sorted == std::vector<double>{2.0, 5.0, 5.0, 8.0});

  SpectralBasis b3(3, 2);
  CHECK(b3.lambda1() == 3.0);
  CHECK(b3.eigenvalues()[0] == doctest::Approx(3.0));  // mode (1,1,1)

  for (int d = 1; d <= 3; ++d) {
    SpectralBasis b(d, 3);
    auto s = b.eigenvalues_sorted();
    CHECK(s.front() == doctest::Approx(static_cast<double>(d)));
    CHECK(std::is_sorted(s.begin(), s.end()));
  }
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(SpectralBasis(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(SpectralBasis(4, 4), std::invalid_argument);
  CHECK_THROWS_AS(SpectralBasis(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralBasis(1, 4, 2), std::invalid_argument);
}

TEST_CASE("basis functions on the grid") {
  SpectralBasis b(1, 4);
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(4);
  e1[0] = 1.0;
  const Eigen::VectorXd g = b.to_physical(e1);
  const double amp = std::sqrt(2.0 / M_PI);
  for (int j = 0; j < b.grid_per_axis(); ++j)
    CHECK(g[j] == doctest::Approx(amp * std::sin(b.quad_nodes_1d()[j])));
}

TEST_CASE("orthonormality within quadrature") {
  for (int d : {1, 2}) {
    SpectralBasis b(d, d == 1 ? 6 : 3);
    const int k = b.modal_size();
    for (int i = 0; i < k; ++i) {
      Eigen::VectorXd ei = Eigen::VectorXd::Zero(k);
      ei[i] = 1.0;
      const Eigen::VectorXd gi = b.to_physical(ei);
      for (int j = i; j < k; ++j) {
        Eigen::VectorXd ej = Eigen::VectorXd::Zero(k);
        ej[j] = 1.0;
        const Eigen::VectorXd gj = b.to_physical(ej);
        const double ip = b.integrate((gi.array() * gj.array()).matrix());
        CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("round trip is the identity on the modal space") {
  wavebox::Rng rng(7);
  for (int d : {1, 2, 3}) {
    SpectralBasis b(d, d == 3 ? 3 : 5);
    Eigen::VectorXd c(b.modal_size());
    for (int i = 0; i < c.size(); ++i) c[i] = rng.gaussian();
    const Eigen::VectorXd back = b.to_modal(b.to_physical(c));
    CHECK((back - c).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("parseval within quadrature") {
  wavebox::Rng rng(11);
  for (int d : {1, 2}) {
    SpectralBasis b(d, 8);
    Eigen::VectorXd c(b.modal_size());
    for (int i = 0; i < c.size(); ++i) c[i] = rng.gaussian();
    const double l2 = b.lp_norm(b.to_physical(c), 2.0);
    CHECK(std::abs(l2 - c.norm()) < 1e-10);
  }
}

TEST_CASE("sin^5 projection matches the closed-form expansion") {
  SpectralBasis b(1, 8);
  const Eigen::VectorXd x = b.quad_nodes_1d();
  Eigen::VectorXd grid(x.size());
  for (int j = 0; j < x.size(); ++j) grid[j] = std::pow(std::sin(x[j]), 5);
  const Eigen::VectorXd modal = b.to_modal(grid);
  const auto expect = oracles::sin5_orthonormal_coeffs(8);
  for (int k = 0; k < 8; ++k)
    CHECK(modal[k] == doctest::Approx(expect[k]).epsilon(1e-12));
}

TEST_CASE("lp norms") {
  SpectralBasis b(1, 4);
  const Eigen::VectorXd x = b.quad_nodes_1d();
  Eigen::VectorXd sinx(x.size());
  for (int j = 0; j < x.size(); ++j) sinx[j] = std::sin(x[j]);

  CHECK(std::pow(b.lp_norm(sinx, 2.0), 2) == doctest::Approx(M_PI / 2));
  // Wallis integral, cross-checked against an independent Simpson rule.
  const double wallis = oracles::simpson(
      [](double t) { return std::pow(std::sin(t), 6); }, 0.0, M_PI);
  CHECK(wallis == doctest::Approx(oracles::wallis_sin6()).epsilon(1e-10));
  CHECK(std::pow(b.lp_norm(sinx, 6.0), 6) ==
        doctest::Approx(oracles::wallis_sin6()).epsilon(1e-12));

  CHECK(b.lp_norm(Eigen::VectorXd::Zero(x.size()), 2.0) == 0.0);
  CHECK(b.lp_norm(Eigen::VectorXd::Zero(x.size()), 6.0) == 0.0);
}

TEST_CASE("aliasing-free quintic products") {
  wavebox::Rng rng(3);
  SpectralBasis b3(1, 8, 3);
  SpectralBasis b6(1, 8, 6);
  Eigen::VectorXd c(8);
  for (int i = 0; i < 8; ++i) c[i] = rng.gaussian();

  auto quintic_modal = [&](const SpectralBasis& b) {
    const Eigen::ArrayXd g = b.to_physical(c).array();
    return b.to_modal((g.square().square() * g).matrix());
  };
  const Eigen::VectorXd p3 = quintic_modal(b3);
  const Eigen::VectorXd p6 = quintic_modal(b6);
  CHECK((p3 - p6).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("h norms by modal identity") {
  SpectralBasis b(1, 4);
  SpectralState s = SpectralState::zero(b);
  s.u[0] = 1.0;
  auto n = h_norms(s, b);
  CHECK(n.h_sq == doctest::Approx(1.0));
  CHECK(n.lap_sq == doctest::Approx(1.0));

  s = SpectralState::zero(b);
  s.v[0] = 1.0;
  n = h_norms(s, b);
  CHECK(n.h_sq == doctest::Approx(1.0));
  CHECK(n.grad_sq == 0.0);

  s = SpectralState::zero(b);
  s.u[1] = 1.0;  // k = 2, lambda = 4
  n = h_norms(s, b);
  CHECK(n.grad_sq == doctest::Approx(4.0));
  CHECK(n.lap_sq == doctest::Approx(16.0));
}

TEST_CASE("transform size guards") {
  SpectralBasis b(1, 4);
  CHECK_THROWS_AS(b.to_physical(Eigen::VectorXd::Zero(5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(b.to_modal(Eigen::VectorXd::Zero(7)), std::invalid_argument);
}
