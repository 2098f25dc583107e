#include "ccgeom/sphere_grid.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "ccgeom/parallel.hpp"

namespace ccgeom {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Newton on P_n with the asymptotic initial guess; converges in a few steps.
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int l = 2; l <= n; ++l) {
        double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

SphereGrid::SphereGrid(int lmax) : lmax_(lmax) {
  if (lmax < 2) throw std::invalid_argument("SphereGrid: lmax must be >= 2");
  ntheta_ = lmax + 1;
  nphi_ = 2 * lmax + 1;

  std::vector<double> x, w;
  gauss_legendre(ntheta_, x, w);
  ct_.resize(ntheta_);
  st_.resize(ntheta_);
  gl_w_ = w;
  for (int i = 0; i < ntheta_; ++i) {
    ct_[i] = x[i];
    st_[i] = std::sqrt(1.0 - x[i] * x[i]);
  }
  phi_.resize(nphi_);
  cphi_.resize(nphi_);
  sphi_.resize(nphi_);
  for (int j = 0; j < nphi_; ++j) {
    phi_[j] = 2.0 * kPi * j / nphi_;
    cphi_[j] = std::cos(phi_[j]);
    sphi_[j] = std::sin(phi_[j]);
  }
  nodes_.resize(static_cast<std::size_t>(ntheta_) * nphi_);
  weights_.resize(nodes_.size());
  for (int i = 0; i < ntheta_; ++i)
    for (int j = 0; j < nphi_; ++j) {
      std::size_t k = static_cast<std::size_t>(i) * nphi_ + j;
      nodes_[k] = Vec3{st_[i] * cphi_[j], st_[i] * sphi_[j], ct_[i]};
      weights_[k] = gl_w_[i] * (2.0 * kPi / nphi_);
    }

  // Fully normalized associated Legendre tables P(theta) and dP/dtheta,
  // Holmes-Featherstone recurrences. Y_lm = sqrt(1/4pi) * P_lm * trig(m phi).
  const int hc = half_count_();
  plm_.assign(static_cast<std::size_t>(ntheta_) * hc, 0.0);
  dplm_.assign(plm_.size(), 0.0);
  for (int it = 0; it < ntheta_; ++it) {
    const double c = ct_[it], s = st_[it];
    double* P = &plm_[static_cast<std::size_t>(it) * hc];
    double* D = &dplm_[static_cast<std::size_t>(it) * hc];
    P[half_index_(0, 0)] = 1.0;
    for (int m = 1; m <= lmax_; ++m) {
      double f = std::sqrt((2.0 * m + 1.0) / (2.0 * m));
      if (m == 1) f *= std::sqrt(2.0); // cos/sin sectors carry half the mass
      P[half_index_(m, m)] = f * s * P[half_index_(m - 1, m - 1)];
    }
    for (int m = 0; m < lmax_; ++m)
      P[half_index_(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * c * P[half_index_(m, m)];
    for (int m = 0; m <= lmax_; ++m)
      for (int l = m + 2; l <= lmax_; ++l) {
        double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
        double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) - m * m) /
                             (4.0 * static_cast<double>(l - 1) * (l - 1) - 1.0));
        P[half_index_(l, m)] = a * (c * P[half_index_(l - 1, m)] - b * P[half_index_(l - 2, m)]);
      }
    // dP/dtheta = l*cot(theta)*P_lm - (1/sin) * sqrt((l^2-m^2)(2l+1)/(2l-1)) * P_{l-1,m}
    for (int m = 0; m <= lmax_; ++m)
      for (int l = m; l <= lmax_; ++l) {
        double t = l * (c / s) * P[half_index_(l, m)];
        if (l > m) {
          double f = std::sqrt((static_cast<double>(l) * l - m * m) * (2.0 * l + 1.0) /
                               (2.0 * l - 1.0));
          t -= (f / s) * P[half_index_(l - 1, m)];
        } else if (l == m && l > 0) {
          // P_mm ~ sin^m: derivative m*cot*P_mm, second term absent
        }
        D[half_index_(l, m)] = t;
      }
  }
}

double SphereGrid::integrate(const std::vector<double>& values) const {
  assert(values.size() == size());
  return par::map_sum(size(), [&](std::size_t i) { return values[i] * weights_[i]; });
}

std::vector<double> SphereGrid::analyze(const std::vector<double>& values) const {
  assert(values.size() == size());
  const int hc = half_count_();
  // azimuthal moments per theta row: gc[m], gs[m]
  std::vector<double> gc(static_cast<std::size_t>(ntheta_) * (lmax_ + 1), 0.0);
  std::vector<double> gs(gc.size(), 0.0);
  const double dphi_w = 2.0 * kPi / nphi_;
  par::for_each_index(static_cast<std::size_t>(ntheta_), [&](std::size_t it) {
    for (int m = 0; m <= lmax_; ++m) {
      double sc = 0.0, ss = 0.0;
      for (int j = 0; j < nphi_; ++j) {
        double v = values[it * nphi_ + j];
        sc += v * std::cos(m * phi_[j]);
        ss += v * std::sin(m * phi_[j]);
      }
      gc[it * (lmax_ + 1) + m] = sc * dphi_w;
      gs[it * (lmax_ + 1) + m] = ss * dphi_w;
    }
  });
  std::vector<double> coeff(sh_count(lmax_), 0.0);
  const double k0 = std::sqrt(1.0 / (4.0 * kPi));
  for (int it = 0; it < ntheta_; ++it) {
    const double* P = &plm_[static_cast<std::size_t>(it) * hc];
    const double wt = gl_w_[it];
    for (int l = 0; l <= lmax_; ++l) {
      coeff[sh_index(l, 0)] += wt * gc[it * (lmax_ + 1)] * k0 * P[half_index_(l, 0)];
      for (int m = 1; m <= l; ++m) {
        double base = wt * k0 * P[half_index_(l, m)];
        coeff[sh_index(l, m)] += base * gc[it * (lmax_ + 1) + m];
        coeff[sh_index(l, -m)] += base * gs[it * (lmax_ + 1) + m];
      }
    }
  }
  return coeff;
}

std::vector<double> SphereGrid::synthesize(const std::vector<double>& coeff) const {
  assert(static_cast<int>(coeff.size()) == sh_count(lmax_));
  const int hc = half_count_();
  std::vector<double> out(size(), 0.0);
  const double k0 = std::sqrt(1.0 / (4.0 * kPi));
  par::for_each_index(static_cast<std::size_t>(ntheta_), [&](std::size_t it) {
    const double* P = &plm_[it * hc];
    // collapse l first: hm_c[m], hm_s[m]
    std::vector<double> hc_m(lmax_ + 1, 0.0), hs_m(lmax_ + 1, 0.0);
    for (int l = 0; l <= lmax_; ++l) {
      hc_m[0] += coeff[sh_index(l, 0)] * P[half_index_(l, 0)];
      for (int m = 1; m <= l; ++m) {
        hc_m[m] += coeff[sh_index(l, m)] * P[half_index_(l, m)];
        hs_m[m] += coeff[sh_index(l, -m)] * P[half_index_(l, m)];
      }
    }
    for (int j = 0; j < nphi_; ++j) {
      double v = hc_m[0];
      for (int m = 1; m <= lmax_; ++m)
        v += hc_m[m] * std::cos(m * phi_[j]) + hs_m[m] * std::sin(m * phi_[j]);
      out[it * nphi_ + j] = k0 * v;
    }
  });
  return out;
}

double SphereGrid::harmonic_at(int l, int m, Vec3 u) {
  const double r = std::sqrt(dot(u, u));
  const double c = u.z / r, s2 = 1.0 - c * c;
  const double s = s2 > 0 ? std::sqrt(s2) : 0.0;
  const double phi = std::atan2(u.y, u.x);
  const int am = m < 0 ? -m : m;
  // on-the-fly recurrence up to (l, |m|), same normalization as the tables
  double pmm = 1.0;
  for (int k = 1; k <= am; ++k) {
    double f = std::sqrt((2.0 * k + 1.0) / (2.0 * k));
    if (k == 1) f *= std::sqrt(2.0);
    pmm *= f * s;
  }
  double p = pmm;
  if (l > am) {
    double pm1 = std::sqrt(2.0 * am + 3.0) * c * pmm;
    if (l == am + 1) {
      p = pm1;
    } else {
      double pl2 = pmm, pl1 = pm1;
      for (int ll = am + 2; ll <= l; ++ll) {
        double a = std::sqrt((4.0 * ll * ll - 1.0) / (static_cast<double>(ll) * ll - am * am));
        double b = std::sqrt((static_cast<double>(ll - 1) * (ll - 1) - am * am) /
                             (4.0 * static_cast<double>(ll - 1) * (ll - 1) - 1.0));
        p = a * (c * pl1 - b * pl2);
        pl2 = pl1;
        pl1 = p;
      }
    }
  }
  const double k0 = std::sqrt(1.0 / (4.0 * kPi));
  if (m == 0) return k0 * p;
  if (m > 0) return k0 * p * std::cos(m * phi);
  return k0 * p * std::sin(am * phi);
}

double SphereGrid::synthesize_at(const std::vector<double>& coeff, Vec3 u) const {
  double v = 0.0;
  for (int l = 0; l <= lmax_; ++l)
    for (int m = -l; m <= l; ++m) {
      double c = coeff[sh_index(l, m)];
      if (c != 0.0) v += c * harmonic_at(l, m, u);
    }
  return v;
}

void SphereGrid::synthesize_gradient(const std::vector<double>& coeff,
                                     std::vector<Vec3>& grad) const {
  assert(static_cast<int>(coeff.size()) == sh_count(lmax_));
  const int hc = half_count_();
  grad.assign(size(), Vec3{});
  const double k0 = std::sqrt(1.0 / (4.0 * kPi));
  par::for_each_index(static_cast<std::size_t>(ntheta_), [&](std::size_t it) {
    const double* P = &plm_[it * hc];
    const double* D = &dplm_[it * hc];
    const double ci = ct_[it], si = st_[it];
    std::vector<double> dth_c(lmax_ + 1, 0.0), dth_s(lmax_ + 1, 0.0);
    std::vector<double> dph_c(lmax_ + 1, 0.0), dph_s(lmax_ + 1, 0.0); // already / sin(theta)
    for (int l = 0; l <= lmax_; ++l) {
      dth_c[0] += coeff[sh_index(l, 0)] * D[half_index_(l, 0)];
      for (int m = 1; m <= l; ++m) {
        dth_c[m] += coeff[sh_index(l, m)] * D[half_index_(l, m)];
        dth_s[m] += coeff[sh_index(l, -m)] * D[half_index_(l, m)];
        dph_c[m] += coeff[sh_index(l, m)] * (m / si) * P[half_index_(l, m)];
        dph_s[m] += coeff[sh_index(l, -m)] * (m / si) * P[half_index_(l, m)];
      }
    }
    for (int j = 0; j < nphi_; ++j) {
      double ft = dth_c[0];
      double fp = 0.0;
      for (int m = 1; m <= lmax_; ++m) {
        const double cm = std::cos(m * phi_[j]), sm = std::sin(m * phi_[j]);
        ft += dth_c[m] * cm + dth_s[m] * sm;
        fp += -dph_c[m] * sm + dph_s[m] * cm;
      }
      ft *= k0;
      fp *= k0;
      // e_theta, e_phi at this node
      const Vec3 eth{ci * cphi_[j], ci * sphi_[j], -si};
      const Vec3 eph{-sphi_[j], cphi_[j], 0.0};
      grad[it * nphi_ + j] = ft * eth + fp * eph;
    }
  });
}

std::vector<Vec3> SphereGrid::gradient(const std::vector<double>& values) const {
  std::vector<Vec3> g;
  synthesize_gradient(analyze(values), g);
  return g;
}

std::vector<double> SphereGrid::laplacian(const std::vector<double>& values) const {
  std::vector<double> c = analyze(values);
  for (int l = 0; l <= lmax_; ++l)
    for (int m = -l; m <= l; ++m) c[sh_index(l, m)] *= static_cast<double>(l) * (l + 1);
  return synthesize(c);
}

std::vector<double> SphereGrid::harmonic(int l, int m) const {
  std::vector<double> v(size());
  for (std::size_t i = 0; i < size(); ++i) v[i] = harmonic_at(l, m, nodes_[i]);
  return v;
}

} // namespace ccgeom
