#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace wavebox {

// Dirichlet sine eigenbasis of -Laplace on the box (0,pi)^d, d in {1,2,3}.
//
// Basis functions are tensor products of sqrt(2/pi)*sin(k x) per axis, so
// they are orthonormal in L2 and the eigenvalue of the multi-index
// k = (k_1,...,k_d) is lambda_k = sum k_i^2. Physical-space work happens on
// an oversampled uniform grid with M = quad_oversample * N points per axis
// and the flat weight (pi/(M+1))^d. That rule integrates boundary-vanishing
// sine polynomials exactly up to cosine frequency 2M+1, so with
// quad_oversample >= 3 products of six N-mode factors (quintic terms tested
// against one basis function) are alias-free.
//
// Immutable after construction; all transforms are pure and reentrant.
class SpectralBasis {
 public:
  SpectralBasis(int dim, int modes_per_axis, int quad_oversample = 3);

  int dim() const { return dim_; }
  int modes_per_axis() const { return n_; }
  int grid_per_axis() const { return m_; }
  int quad_oversample() const { return oversample_; }
  int modal_size() const { return modal_size_; }
  int grid_size() const { return grid_size_; }

  double domain_volume() const { return volume_; }
  double lambda1() const { return static_cast<double>(dim_); }

  // Eigenvalues in storage (lexicographic multi-index) order.
  const Eigen::VectorXd& eigenvalues() const { return lambda_; }
  // Same spectrum sorted nondecreasing (for reporting).
  std::vector<double> eigenvalues_sorted() const;

  // Multi-index of a flat storage position, 1-based per axis.
  std::array<int, 3> multi_index(int flat) const;
  int flat_index(const std::array<int, 3>& k) const;

  const Eigen::VectorXd& quad_nodes_1d() const { return nodes_1d_; }
  double quad_weight() const { return weight_; }  // per grid point

  // Modal coefficients -> values on the oversampled grid.
  Eigen::VectorXd to_physical(const Eigen::VectorXd& modal) const;
  // Grid values -> modal coefficients (quadrature projection onto the
  // first N modes per axis). to_modal(to_physical(c)) == c.
  Eigen::VectorXd to_modal(const Eigen::VectorXd& grid) const;

  // Quadrature L^p(Omega) norm of a grid function.
  double lp_norm(const Eigen::VectorXd& grid, double p) const;
  // Quadrature integral of a grid function.
  double integrate(const Eigen::VectorXd& grid) const;

 private:
  int dim_, n_, m_, oversample_;
  int modal_size_, grid_size_;
  double volume_, weight_;
  Eigen::VectorXd lambda_;
  Eigen::VectorXd nodes_1d_;
  Eigen::MatrixXd synth_1d_;  // (M x N): synth(j,k) = sqrt(2/pi) sin((k+1) x_j)

  Eigen::VectorXd apply_axes(const Eigen::VectorXd& in,
                             const Eigen::MatrixXd& op) const;
};

// Modal coefficient pair for (u, u_t). Both vectors are indexed like the
// basis they were built against.
struct SpectralState {
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  double time = 0.0;

  SpectralState() = default;
  SpectralState(Eigen::VectorXd u_, Eigen::VectorXd v_, double t = 0.0)
      : u(std::move(u_)), v(std::move(v_)), time(t) {}

  static SpectralState zero(const SpectralBasis& basis);
  bool matches(const SpectralBasis& basis) const;
  bool all_finite() const;
};

struct HNorms {
  double grad_sq = 0.0;   // ||grad u||^2
  double v_sq = 0.0;      // ||u_t||^2
  double h_sq = 0.0;      // ||U||_H^2 = grad_sq + v_sq
  double lap_sq = 0.0;    // ||Delta u||^2
};

// Modal norm identities: ||grad u||^2 = sum lambda_k u_k^2, etc.
HNorms h_norms(const SpectralState& state, const SpectralBasis& basis);

}  // namespace wavebox
