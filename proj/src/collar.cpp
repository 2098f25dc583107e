#include "ccgeom/collar.hpp"

#include <cmath>

#include "ccgeom/jets.hpp"
#include "ccgeom/parallel.hpp"

namespace ccgeom {

Collar::Collar(SphereGridPtr grid, std::vector<double> logR_coeff, int jet_order)
    : grid_(std::move(grid)), K_(jet_order) {
  if (K_ < 0) throw std::invalid_argument("Collar: jet order must be >= 0");
  logR_coeff_ = std::move(logR_coeff);
  logR_coeff_.resize(sh_count(grid_->lmax()), 0.0);

  const std::size_t n = grid_->size();
  std::vector<double> logR = grid_->synthesize(logR_coeff_);
  R_.resize(n);
  for (std::size_t i = 0; i < n; ++i) R_[i] = std::exp(logR[i]);

  std::vector<Vec3> gradLogR;
  grid_->synthesize_gradient(logR_coeff_, gradLogR);
  gradR_.resize(n);
  for (std::size_t i = 0; i < n; ++i) gradR_[i] = R_[i] * gradLogR[i];

  // c(u,v) = sqrt(R^2 + 2v) and friends, as v-jets per node
  const int K = K_;
  c_.assign((K + 1) * n, 0.0);
  cinv_.assign((K + 1) * n, 0.0);
  for (int i = 0; i < 3; ++i) gradv_[i].assign((K + 1) * n, 0.0);
  par::for_each_index(n, [&](std::size_t i) {
    std::vector<double> c2(K + 1, 0.0), cj(K + 1, 0.0), ci(K + 1, 0.0);
    c2[0] = R_[i] * R_[i];
    if (K >= 1) c2[1] = 2.0;
    jets::pow(c2.data(), 0.5, cj.data(), K);
    jets::pow(c2.data(), -0.5, ci.data(), K);
    const Vec3 u = grid_->node(i);
    const double g[3] = {gradR_[i].x, gradR_[i].y, gradR_[i].z};
    const double uu[3] = {u.x, u.y, u.z};
    for (int k = 0; k <= K; ++k) {
      c_[k * n + i] = cj[k];
      cinv_[k * n + i] = ci[k];
      // grad v = c*u - (R/c) * grad_S R
      for (int d = 0; d < 3; ++d)
        gradv_[d][k * n + i] = cj[k] * uu[d] - R_[i] * ci[k] * g[d];
    }
  });
}

double Collar::R_at(Vec3 u) const {
  return std::exp(grid_->synthesize_at(logR_coeff_, u));
}

std::vector<Vec3> Collar::boundary_points() const {
  std::vector<Vec3> pts(nnodes());
  for (std::size_t i = 0; i < nnodes(); ++i) pts[i] = R_[i] * grid_->node(i);
  return pts;
}

Collar::UV Collar::locate(Vec3 x) const {
  const double r = std::sqrt(dot(x, x));
  if (!(r > 0.0)) throw std::domain_error("Collar::locate: point at the cone vertex");
  const Vec3 u = (1.0 / r) * x;
  const double Ru = R_at(u);
  return UV{u, 0.5 * (r * r - Ru * Ru)};
}

CollarPtr make_collar(SphereGridPtr grid, std::vector<double> logR_coeff, int jet_order) {
  return std::make_shared<const Collar>(std::move(grid), std::move(logR_coeff), jet_order);
}

} // namespace ccgeom
