#include "ccgeom/coll_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccgeom/parallel.hpp"

namespace ccgeom {

CollField::CollField(CollarPtr collar, int weight)
    : collar_(std::move(collar)), weight_(weight), K_(collar_->jet_order()) {
  data_.assign(static_cast<std::size_t>(K_ + 1) * collar_->nnodes(), 0.0);
  exact_rows_ = K_ + 1;
  tail_zero_ = true;
  deg_ = 0;
  vanish_ = K_ + 1;
}

CollField CollField::zero(CollarPtr collar, int weight) { return CollField(collar, weight); }

CollField CollField::from_boundary(CollarPtr collar, int weight,
                                   const std::vector<double>& values) {
  CollField f(collar, weight);
  if (values.size() != f.nnodes())
    throw std::invalid_argument("from_boundary: value count does not match the grid");
  std::copy(values.begin(), values.end(), f.row(0));
  f.exact_rows_ = f.K_ + 1;
  f.tail_zero_ = true;
  f.deg_ = 0;
  f.vanish_ = 0;
  return f;
}

CollField CollField::coordinate_v(CollarPtr collar) {
  CollField f(collar, 2);
  if (f.K_ < 1) throw std::invalid_argument("coordinate_v: jet order must be >= 1");
  std::fill(f.row(1), f.row(1) + f.nnodes(), 1.0);
  f.exact_rows_ = f.K_ + 1;
  f.tail_zero_ = true;
  f.deg_ = 1;
  f.vanish_ = 1;
  return f;
}

std::vector<double> CollField::boundary_values() const {
  return std::vector<double>(row(0), row(0) + nnodes());
}

double CollField::max_abs_row(int k) const {
  double m = 0.0;
  const double* r = row(k);
  for (std::size_t i = 0; i < nnodes(); ++i) m = std::max(m, std::abs(r[i]));
  return m;
}

double CollField::max_abs() const {
  double m = 0.0;
  for (int k = 0; k <= std::min(K_, exact_rows_ - 1); ++k) m = std::max(m, max_abs_row(k));
  return m;
}

void CollField::set_meta(int exact_rows, bool tail_zero, int deg, int vanish) {
  exact_rows_ = std::min(exact_rows, K_ + 1);
  tail_zero_ = tail_zero;
  deg_ = deg;
  vanish_ = std::min(vanish, K_ + 1);
  if (tail_zero_) exact_rows_ = K_ + 1;
}

void require_same_collar(const CollField& a, const CollField& b, const std::string& op) {
  if (!a.collar() || !b.collar() || !a.collar()->same_as(*b.collar()))
    throw std::invalid_argument(op + ": grid mismatch between collocation fields");
}

CollField add(const CollField& a, const CollField& b) {
  require_same_collar(a, b, "add");
  CollField c(a.collar_, a.weight_);
  const std::size_t total = c.data_.size();
  for (std::size_t i = 0; i < total; ++i) c.data_[i] = a.data_[i] + b.data_[i];
  if (a.tail_zero_ && b.tail_zero_) {
    c.set_meta(c.K_ + 1, true, std::max(a.deg_, b.deg_), std::min(a.vanish_, b.vanish_));
  } else {
    c.set_meta(std::min(a.exact_rows_, b.exact_rows_), false, c.K_ + 1,
               std::min(a.vanish_, b.vanish_));
  }
  return c;
}

CollField sub(const CollField& a, const CollField& b) { return add(a, scaled(b, -1.0)); }

CollField scaled(const CollField& a, double s) {
  CollField c = a;
  for (double& x : c.data_) x *= s;
  return c;
}

CollField mul(const CollField& a, const CollField& b) {
  require_same_collar(a, b, "mul");
  CollField c(a.collar_, a.weight_ + b.weight_);
  const int K = c.K_;
  const std::size_t n = c.nnodes();
  par::for_each_index(n, [&](std::size_t i) {
    for (int k = 0; k <= K; ++k) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += a.data_[j * n + i] * b.data_[(k - j) * n + i];
      c.data_[k * n + i] = s;
    }
  });
  const int van = std::min(a.vanish_ + b.vanish_, K + 1);
  if (a.tail_zero_ && b.tail_zero_) {
    const int d = a.deg_ + b.deg_;
    c.set_meta(K + 1, d <= K, d, van);
  } else {
    const int er = std::min(a.exact_rows_ + b.vanish_, b.exact_rows_ + a.vanish_);
    c.set_meta(er, false, K + 1, van);
  }
  return c;
}

CollField CollField::pow_int(int p) const {
  if (p < 1) throw std::invalid_argument("pow_int: exponent must be >= 1");
  CollField r = *this;
  for (int i = 1; i < p; ++i) r = mul(r, *this);
  return r;
}

CollField CollField::dv() const {
  CollField c(collar_, weight_);
  const std::size_t n = nnodes();
  for (int k = 0; k < K_; ++k) {
    const double* src = row(k + 1);
    double* dst = c.row(k);
    for (std::size_t i = 0; i < n; ++i) dst[i] = (k + 1) * src[i];
  }
  if (tail_zero_) {
    c.set_meta(K_ + 1, true, std::max(0, deg_ - 1), std::max(0, vanish_ - 1));
  } else {
    c.set_meta(exact_rows_ - 1, false, K_ + 1, std::max(0, vanish_ - 1));
  }
  return c;
}

CollField div_reduce(const CollField& a, const CollField& b, int s) {
  require_same_collar(a, b, "div_reduce");
  if (b.vanish() < s)
    throw std::invalid_argument("div_reduce: divisor does not structurally vanish to order s");
  const int K = a.storage_order();
  const std::size_t n = a.nnodes();
  CollField c(a.collar(), a.weight() - b.weight());
  // reduced divisor rows: b_{k+s}; leading row must be invertible
  double lead_min = 1e300, lead_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    lead_min = std::min(lead_min, std::abs(b.row(s)[i]));
    lead_max = std::max(lead_max, std::abs(b.row(s)[i]));
  }
  if (!(lead_max > 0.0) || lead_min < 1e-10 * lead_max)
    throw std::domain_error("div_reduce: reduced divisor row is numerically singular");
  par::for_each_index(n, [&](std::size_t i) {
    for (int k = 0; k + s <= K; ++k) {
      double sum = a.row(k + s)[i];
      for (int j = 0; j < k; ++j) sum -= c.row(j)[i] * b.row(k - j + s)[i];
      c.row(k)[i] = sum / b.row(s)[i];
    }
  });
  const int er = std::max(0, std::min(a.exact_rows(), b.exact_rows()) - s);
  c.set_meta(er, false, K + 1, std::max(0, a.vanish() - s));
  return c;
}

CollField CollField::shift_up(int p) const {
  if (p == 0) return *this;
  CollField c(collar_, weight_ + 2 * p); // multiplying by v^p = (rho-like)^p of weight 2p
  const std::size_t n = nnodes();
  for (int k = p; k <= K_; ++k)
    std::copy(row(k - p), row(k - p) + n, c.row(k));
  const bool tz = tail_zero_ && (deg_ + p <= K_);
  c.set_meta(tz ? K_ + 1 : std::min(exact_rows_ + p, K_ + 1), tz, deg_ + p,
             std::min(vanish_ + p, K_ + 1));
  return c;
}

void CollField::collar_gradient(CollField out[3]) const {
  const SphereGrid& g = collar_->grid();
  const std::size_t n = nnodes();
  const int K = K_;
  for (int d = 0; d < 3; ++d) out[d] = CollField(collar_, weight_ - 0); // weight set below

  // angular part: sum_k v^k * (1/c) * grad_S F_k
  std::vector<std::vector<Vec3>> gradrows(K + 1);
  const int max_row = tail_zero_ ? std::min(K, deg_) : std::min(K, exact_rows_ - 1);
  for (int k = 0; k <= max_row; ++k) {
    std::vector<double> vals(row(k), row(k) + n);
    gradrows[k] = g.gradient(vals);
  }
  const std::vector<double>& cinv = collar_->cinv_jet();
  par::for_each_index(n, [&](std::size_t i) {
    for (int j = 0; j <= K; ++j) {
      double sx = 0, sy = 0, sz = 0;
      for (int k = 0; k <= std::min(j, max_row); ++k) {
        const double w = cinv[(j - k) * n + i];
        sx += gradrows[k][i].x * w;
        sy += gradrows[k][i].y * w;
        sz += gradrows[k][i].z * w;
      }
      out[0].data_[j * n + i] = sx;
      out[1].data_[j * n + i] = sy;
      out[2].data_[j * n + i] = sz;
    }
  });

  // radial part: (dF/dv) * grad v
  CollField fp = dv();
  par::for_each_index(n, [&](std::size_t i) {
    for (int j = 0; j <= K; ++j) {
      for (int d = 0; d < 3; ++d) {
        double s = 0.0;
        for (int k = 0; k <= j; ++k)
          s += fp.data_[k * n + i] * collar_->gradv_jet(d)[(j - k) * n + i];
        out[d].data_[j * n + i] += s;
      }
    }
  });

  const int er_ang = exact_rows_; // cinv rows are all exact series coefficients
  const int er_rad = fp.exact_rows();
  const int er = std::min({er_ang, er_rad, K + 1});
  const int van = std::max(0, vanish_ - 1);
  for (int d = 0; d < 3; ++d) {
    out[d].weight_ = weight_; // trivialized d/dx of F; ambient weight handled by callers
    out[d].set_meta(er, false, K + 1, van);
  }
}

CollField CollField::x_dot_grad() const {
  CollField fp = dv();
  // multiply by c^2 = R^2 + 2v (exact degree-1 polynomial)
  CollField c2(collar_, 0);
  const std::size_t n = nnodes();
  const auto& R = collar_->R();
  for (std::size_t i = 0; i < n; ++i) c2.row(0)[i] = R[i] * R[i];
  if (K_ >= 1)
    for (std::size_t i = 0; i < n; ++i) c2.row(1)[i] = 2.0;
  c2.set_meta(K_ + 1, true, 1, 0);
  CollField r = mul(fp, c2);
  r.weight_ = weight_;
  return r;
}

double CollField::eval(Vec3 u, double v) const {
  const SphereGrid& g = collar_->grid();
  double acc = 0.0, vp = 1.0;
  const int max_row = tail_zero_ ? std::min(K_, deg_) : exact_rows_ - 1;
  for (int k = 0; k <= max_row; ++k) {
    std::vector<double> vals(row(k), row(k) + nnodes());
    acc += g.synthesize_at(g.analyze(vals), u) * vp;
    vp *= v;
  }
  return acc;
}

double CollField::eval_cone(double xi0, Vec3 xs) const {
  if (!(xi0 > 0)) throw std::domain_error("eval_cone: xi0 must be positive");
  const Vec3 x{xs.x / xi0, xs.y / xi0, xs.z / xi0}; // affine chart point
  const auto uv = collar_->locate(x);
  return std::pow(xi0, weight_) * eval(uv.u, uv.v);
}

} // namespace ccgeom
