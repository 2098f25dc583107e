// Gauss-Legendre x equispaced-azimuth grid on S^2 and real spherical-harmonic
// transforms (analysis, synthesis, tangential gradient, Laplace-Beltrami).
// The quadrature integrates products of harmonics of degree <= lmax exactly.
#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace ccgeom {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// nodes/weights of the N-point Gauss-Legendre rule on [-1, 1]
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Real orthonormal spherical harmonics indexed by (l, m), -l <= m <= l,
// packed as idx = l*(l+1) + m.
inline int sh_index(int l, int m) { return l * (l + 1) + m; }
inline int sh_count(int lmax) { return (lmax + 1) * (lmax + 1); }

class SphereGrid {
public:
  explicit SphereGrid(int lmax);

  int lmax() const { return lmax_; }
  int ntheta() const { return ntheta_; }
  int nphi() const { return nphi_; }
  std::size_t size() const { return nodes_.size(); }

  const std::vector<Vec3>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; } // sum = 4*pi
  Vec3 node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  // quadrature of grid values against the round measure
  double integrate(const std::vector<double>& values) const;

  // analysis: grid values -> sh_count(lmax) coefficients
  std::vector<double> analyze(const std::vector<double>& values) const;
  // synthesis at the grid
  std::vector<double> synthesize(const std::vector<double>& coeff) const;
  // synthesis at an arbitrary unit direction
  double synthesize_at(const std::vector<double>& coeff, Vec3 u) const;

  // tangential gradient (Cartesian components of grad_{S^2} f) at the grid,
  // from coefficients
  void synthesize_gradient(const std::vector<double>& coeff, std::vector<Vec3>& grad) const;
  // convenience: gradient of grid values (analysis + gradient synthesis)
  std::vector<Vec3> gradient(const std::vector<double>& values) const;

  // Laplace-Beltrami with the geometer's sign (Delta Y_lm = l(l+1) Y_lm)
  std::vector<double> laplacian(const std::vector<double>& values) const;

  // single real harmonic Y_lm sampled on the grid
  std::vector<double> harmonic(int l, int m) const;
  static double harmonic_at(int l, int m, Vec3 u);

private:
  int lmax_, ntheta_, nphi_;
  std::vector<double> ct_, st_, gl_w_;   // cos(theta), sin(theta), GL weights
  std::vector<double> phi_, cphi_, sphi_;
  std::vector<Vec3> nodes_;
  std::vector<double> weights_;
  // P-tables per theta row: nlm_half values (m >= 0), and d/dtheta tables
  std::vector<double> plm_, dplm_;
  int half_count_() const { return (lmax_ + 1) * (lmax_ + 2) / 2; }
  static int half_index_(int l, int m) { return l * (l + 1) / 2 + m; }
};

using SphereGridPtr = std::shared_ptr<const SphereGrid>;

} // namespace ccgeom
