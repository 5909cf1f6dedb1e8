#include "wavebox/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavebox {

SpectralBasis::SpectralBasis(int dim, int modes_per_axis, int quad_oversample)
    : dim_(dim), n_(modes_per_axis), oversample_(quad_oversample) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("SpectralBasis: dim must be 1, 2 or 3");
  if (modes_per_axis < 1)
    throw std::invalid_argument("SpectralBasis: modes_per_axis must be >= 1");
  if (quad_oversample < 3)
    throw std::invalid_argument(
        "SpectralBasis: quad_oversample must be >= 3 (quintic dealiasing)");

  m_ = oversample_ * n_;
  modal_size_ = 1;
  grid_size_ = 1;
  for (int a = 0; a < dim_; ++a) {
    modal_size_ *= n_;
    grid_size_ *= m_;
  }
  volume_ = std::pow(M_PI, dim_);

  const double h = M_PI / (m_ + 1);
  weight_ = std::pow(h, dim_);
  nodes_1d_.resize(m_);
  for (int j = 0; j < m_; ++j) nodes_1d_[j] = (j + 1) * h;

  const double amp = std::sqrt(2.0 / M_PI);
  synth_1d_.resize(m_, n_);
  for (int j = 0; j < m_; ++j)
    for (int k = 0; k < n_; ++k)
      synth_1d_(j, k) = amp * std::sin((k + 1) * nodes_1d_[j]);

  lambda_.resize(modal_size_);
  for (int i = 0; i < modal_size_; ++i) {
    const auto k = multi_index(i);
    double l = 0.0;
    for (int a = 0; a < dim_; ++a) l += static_cast<double>(k[a]) * k[a];
    lambda_[i] = l;
  }
}

std::vector<double> SpectralBasis::eigenvalues_sorted() const {
  std::vector<double> v(lambda_.data(), lambda_.data() + lambda_.size());
  std::sort(v.begin(), v.end());
  return v;
}

std::array<int, 3> SpectralBasis::multi_index(int flat) const {
  std::array<int, 3> k{1, 1, 1};
  for (int a = dim_ - 1; a >= 0; --a) {
    k[a] = flat % n_ + 1;
    flat /= n_;
  }
  return k;
}

int SpectralBasis::flat_index(const std::array<int, 3>& k) const {
  int flat = 0;
  for (int a = 0; a < dim_; ++a) flat = flat * n_ + (k[a] - 1);
  return flat;
}

// One tensor pass: apply `op` along the last axis of a row-major d-cube,
// then rotate axes so that d passes transform every axis and restore order.
Eigen::VectorXd SpectralBasis::apply_axes(const Eigen::VectorXd& in,
                                          const Eigen::MatrixXd& op) const {
  using RowMat =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const int in_axis = static_cast<int>(op.cols());
  const int out_axis = static_cast<int>(op.rows());

  Eigen::VectorXd cur = in;
  std::array<int, 3> shape{1, 1, 1};
  {
    int rest = static_cast<int>(in.size());
    for (int a = 0; a < dim_; ++a) {
      shape[a] = in_axis;
      rest /= in_axis;
    }
    (void)rest;
  }
  for (int pass = 0; pass < dim_; ++pass) {
    const int last = shape[dim_ - 1];
    const int lead = static_cast<int>(cur.size()) / last;
    Eigen::Map<const RowMat> x(cur.data(), lead, last);
    RowMat y = x * op.transpose();  // (lead x out_axis)
    shape[dim_ - 1] = out_axis;

    if (dim_ == 1) {
      cur = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
      continue;
    }
    // rotate: new[a1,...,ad-1, a0] layout <- old[a0, a1, ..., ad-1]
    Eigen::VectorXd rot(y.size());
    const int s0 = shape[0];
    const int tail = static_cast<int>(y.size()) / s0;
    Eigen::Map<const RowMat> yv(y.data(), s0, tail);
    Eigen::Map<RowMat> rv(rot.data(), tail, s0);
    rv = yv.transpose();
    std::array<int, 3> ns = shape;
    for (int a = 0; a < dim_ - 1; ++a) ns[a] = shape[a + 1];
    ns[dim_ - 1] = shape[0];
    shape = ns;
    cur = std::move(rot);
  }
  return cur;
}

Eigen::VectorXd SpectralBasis::to_physical(const Eigen::VectorXd& modal) const {
  if (modal.size() != modal_size_)
    throw std::invalid_argument("to_physical: modal size mismatch");
  return apply_axes(modal, synth_1d_);
}

Eigen::VectorXd SpectralBasis::to_modal(const Eigen::VectorXd& grid) const {
  if (grid.size() != grid_size_)
    throw std::invalid_argument("to_modal: grid size mismatch");
  const double h = M_PI / (m_ + 1);
  const Eigen::MatrixXd analysis = h * synth_1d_.transpose();
  return apply_axes(grid, analysis);
}

double SpectralBasis::lp_norm(const Eigen::VectorXd& grid, double p) const {
  if (grid.size() != grid_size_)
    throw std::invalid_argument("lp_norm: grid size mismatch");
  const double s = grid.array().abs().pow(p).sum() * weight_;
  return std::pow(s, 1.0 / p);
}

double SpectralBasis::integrate(const Eigen::VectorXd& grid) const {
  if (grid.size() != grid_size_)
    throw std::invalid_argument("integrate: grid size mismatch");
  return grid.sum() * weight_;
}

SpectralState SpectralState::zero(const SpectralBasis& basis) {
  return SpectralState(Eigen::VectorXd::Zero(basis.modal_size()),
                       Eigen::VectorXd::Zero(basis.modal_size()), 0.0);
}

bool SpectralState::matches(const SpectralBasis& basis) const {
  return u.size() == basis.modal_size() && v.size() == basis.modal_size();
}

bool SpectralState::all_finite() const {
  return u.allFinite() && v.allFinite();
}

HNorms h_norms(const SpectralState& state, const SpectralBasis& basis) {
  if (!state.matches(basis))
    throw std::invalid_argument("h_norms: state does not match basis");
  HNorms out;
  const auto& l = basis.eigenvalues();
  out.grad_sq = (l.array() * state.u.array().square()).sum();
  out.v_sq = state.v.squaredNorm();
  out.h_sq = out.grad_sq + out.v_sq;
  out.lap_sq = (l.array().square() * state.u.array().square()).sum();
  return out;
}

}  // namespace wavebox
