// Collocation representation of homogeneous densities: the trivialized
// function F(x) (so that the density is (xi^0)^w F) carried as a jet in the
// collar coordinate v, one coefficient row per jet order, sampled on the grid.
//
// Bookkeeping per field:
//   exact_rows  rows 0..exact_rows-1 equal the underlying function's Taylor
//               coefficients; later rows are truncation debris.
//   tail_zero   the stored polynomial IS the function (no tail at all);
//               implies exact_rows == K+1. deg bounds its v-degree.
//   vanish      structural lower bound on the vanishing order in v.
#pragma once

#include <string>
#include <vector>

#include "ccgeom/collar.hpp"

namespace ccgeom {

class CollField {
public:
  CollField() = default;
  CollField(CollarPtr collar, int weight);

  static CollField zero(CollarPtr collar, int weight);
  // ray-constant extension of boundary values (tail_zero, deg 0)
  static CollField from_boundary(CollarPtr collar, int weight,
                                 const std::vector<double>& values);
  // the seed defining function v itself, as a weight-2 density
  static CollField coordinate_v(CollarPtr collar);

  int weight() const { return weight_; }
  const CollarPtr& collar() const { return collar_; }
  int storage_order() const { return K_; }
  int exact_rows() const { return exact_rows_; }
  int trusted_order() const { return exact_rows_ - 1; }
  bool tail_zero() const { return tail_zero_; }
  int deg() const { return deg_; }
  int vanish() const { return vanish_; }
  std::size_t nnodes() const { return collar_->nnodes(); }

  double* row(int k) { return data_.data() + static_cast<std::size_t>(k) * nnodes(); }
  const double* row(int k) const {
    return data_.data() + static_cast<std::size_t>(k) * nnodes();
  }
  std::vector<double> boundary_values() const; // row 0

  double max_abs_row(int k) const;
  double max_abs() const;

  // arithmetic (same collar required; weight rules enforced by callers)
  friend CollField add(const CollField& a, const CollField& b);
  friend CollField sub(const CollField& a, const CollField& b);
  friend CollField scaled(const CollField& a, double s);
  friend CollField mul(const CollField& a, const CollField& b);

  CollField pow_int(int p) const; // p >= 1

  // d/dv
  CollField dv() const;

  // (a / b) where b vanishes structurally to order s >= its vanish and the
  // reduced leading row of b is invertible; rows of a below s are dropped.
  friend CollField div_reduce(const CollField& a, const CollField& b, int s);

  // multiply by v^p
  CollField shift_up(int p) const;

  // Cartesian gradient of the trivialized function: three jets d F / d x^i
  void collar_gradient(CollField out[3]) const;
  // x . grad F = (dF/dv) * (R^2 + 2v), exact in the collar chart
  CollField x_dot_grad() const;

  // trivialized value at a collar point
  double eval(Vec3 u, double v) const;
  // value of the homogeneous density at a cone point (xi0, x), xi0 > 0
  double eval_cone(double xi0, Vec3 x) const;

  void set_meta(int exact_rows, bool tail_zero, int deg, int vanish);

  CollField with_weight(int w) const {
    CollField c = *this;
    c.weight_ = w;
    return c;
  }

private:
  CollarPtr collar_;
  int weight_ = 0;
  int K_ = 0;
  int exact_rows_ = 0;
  bool tail_zero_ = false;
  int deg_ = 0;
  int vanish_ = 0;
  std::vector<double> data_;
};

void require_same_collar(const CollField& a, const CollField& b, const std::string& op);

} // namespace ccgeom
