// Collar chart of a star-shaped boundary in R^3: x = c(u,v) u with
// c = sqrt(R(u)^2 + 2v), so v = (|x|^2 - R(u)^2)/2 vanishes on the boundary.
// Collocation fields are jets in v with coefficients sampled on the grid.
#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "ccgeom/sphere_grid.hpp"

namespace ccgeom {

class Collar {
public:
  // logR_coeff: spherical-harmonic coefficients of log R (padded/truncated to
  // the grid's lmax)
  Collar(SphereGridPtr grid, std::vector<double> logR_coeff, int jet_order);

  const SphereGrid& grid() const { return *grid_; }
  SphereGridPtr grid_ptr() const { return grid_; }
  int jet_order() const { return K_; }
  std::size_t nnodes() const { return grid_->size(); }

  const std::vector<double>& logR_coeff() const { return logR_coeff_; }
  const std::vector<double>& R() const { return R_; }
  const std::vector<Vec3>& gradR() const { return gradR_; }

  double R_at(Vec3 u) const; // off-grid boundary radius

  // boundary points x = R(u) u
  std::vector<Vec3> boundary_points() const;

  // precomputed jets (rows k = 0..K, node-major inner index):
  // c = |x|, cinv = 1/|x|, c2 = |x|^2, and the Cartesian gradient of v.
  const std::vector<double>& c_jet() const { return c_; }
  const std::vector<double>& cinv_jet() const { return cinv_; }
  const std::vector<double>& gradv_jet(int i) const { return gradv_[i]; }

  // collar coordinates of an ambient point (throws if outside the chart)
  struct UV {
    Vec3 u;
    double v;
  };
  UV locate(Vec3 x) const;

  bool same_as(const Collar& other) const { return this == &other; }

private:
  SphereGridPtr grid_;
  int K_;
  std::vector<double> logR_coeff_;
  std::vector<double> R_;
  std::vector<Vec3> gradR_;
  std::vector<double> c_, cinv_;
  std::vector<double> gradv_[3];
};

using CollarPtr = std::shared_ptr<const Collar>;

CollarPtr make_collar(SphereGridPtr grid, std::vector<double> logR_coeff, int jet_order);

} // namespace ccgeom
