#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ccgeom/ambient.hpp"
#include "ccgeom/ma_solver.hpp"
#include "ccgeom/surface_spec.hpp"

using namespace ccgeom;

namespace {

double field_sup(const CollField& f) {
  double worst = 0;
  for (int k = 0; k < f.exact_rows(); ++k) worst = std::max(worst, f.max_abs_row(k));
  return worst;
}

FeffermanSolution perturbed_solution(int lmax = 16) {
  SurfaceSpec spec = SurfaceSpec::perturbed_sphere({{4, 0, 0.05}});
  spec.grid.lmax = lmax;
  return solve_fefferman(spec, 2);
}

} // namespace

TEST_CASE("ball ambient metric is the flat Lorentz metric (collocation)") {
  SurfaceSpec spec = SurfaceSpec::ball(2);
  spec.grid.lmax = 12;
  auto grid = std::make_shared<const SphereGrid>(spec.grid.lmax);
  CollarPtr collar = spec.make_boundary_collar(grid, 6);
  HomogeneousField rho(CollField::coordinate_v(collar));
  AmbientMetric m = build_ambient_metric(rho);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double expect = i == j ? (i == 0 ? -1.0 : 1.0) : 0.0;
      CollField diff = m.gij(i, j);
      if (expect != 0.0) {
        CollField c = CollField::from_boundary(
            collar, 0, std::vector<double>(collar->nnodes(), expect));
        diff = sub(diff, c);
      }
      CHECK(field_sup(diff) < 1e-10);
      CHECK(field_sup(m.gamma_ijk(i, j, std::min(i + j, 3))) < 1e-10);
    }
  CHECK(inverse_residual(m) < 1e-11);
}

TEST_CASE("ellipsoid polynomial metric is constant diagonal with zero Gamma") {
  SurfaceSpec spec = SurfaceSpec::ellipsoid({1.2, 1.0, 0.8});
  HomogeneousField rho(PolyField::quadric(4, spec.quadric));
  AmbientMetric m = build_ambient_metric(rho);
  CHECK(m.poly);
  CHECK(m.g0[0] == doctest::Approx(-1.0));
  CHECK(m.g0[5] == doctest::Approx(1.0 / (1.2 * 1.2)));
  CHECK(m.g0[15] == doctest::Approx(1.0 / (0.8 * 0.8)));
  CHECK(inverse_residual(m) < 1e-14);
}

TEST_CASE("Euler identities of the ambient metric on a perturbed sphere") {
  FeffermanSolution sol = perturbed_solution();
  AmbientMetric m = build_ambient_metric(sol.rho);
  auto T = euler_field(m.collar);

  // g_IJ T^I T^J = 2 rho
  CollField acc = CollField::zero(m.collar, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      acc = add(acc, mul(mul(m.gij(i, j), T[i]), T[j]).with_weight(2));
  CHECK(field_sup(sub(acc, scaled(sol.rho.coll(), 2.0))) < 1e-10);

  // g_IJ T^J = d_I rho
  auto drho = ambient_derivative(sol.rho);
  for (int i = 0; i < 4; ++i) {
    CollField gi = CollField::zero(m.collar, 1);
    for (int j = 0; j < 4; ++j) gi = add(gi, mul(m.gij(i, j), T[j]).with_weight(1));
    CHECK(field_sup(sub(gi, drho[i].coll())) < 1e-10);
  }

  // T^I Gamma_IJK = 0
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      CollField c = CollField::zero(m.collar, 0);
      for (int i = 0; i < 4; ++i) c = add(c, mul(T[i], m.gamma_ijk(i, j, k)).with_weight(0));
      CHECK(field_sup(c) < 1e-10);
    }

  // g^{IJ} d_I rho d_J rho = 2 rho
  CollField q = CollField::zero(m.collar, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      q = add(q, mul(mul(m.ginvij(i, j), drho[i].coll()), drho[j].coll()).with_weight(2));
  CHECK(field_sup(sub(q, scaled(sol.rho.coll(), 2.0))) < 1e-9);
}

TEST_CASE("ambient laplacian of the density is -(n+2)") {
  FeffermanSolution sol = perturbed_solution();
  AmbientMetric m = build_ambient_metric(sol.rho);
  HomogeneousField lap = ambient_laplacian(m, sol.rho);
  CollField diff = lap.coll();
  CollField c = CollField::from_boundary(m.collar, 0,
                                         std::vector<double>(m.collar->nnodes(), -4.0));
  CHECK(field_sup(sub(diff, c)) < 1e-9);
}

TEST_CASE("flat harmonic polynomial is annihilated (polynomial mode)") {
  SurfaceSpec spec = SurfaceSpec::ball(2);
  HomogeneousField rho(PolyField::quadric(4, spec.quadric));
  AmbientMetric m = build_ambient_metric(rho);
  PolyField xy = PolyField::variable(4, 0) * PolyField::variable(4, 1);
  HomogeneousField lap = ambient_laplacian(m, HomogeneousField(xy));
  CHECK(lap.poly().is_zero());
}

TEST_CASE("commutator [Delta, rho] f = -(2w+2+n) f") {
  FeffermanSolution sol = perturbed_solution();
  AmbientMetric m = build_ambient_metric(sol.rho);
  auto y = m.collar->grid().harmonic(2, 0);
  HomogeneousField f = homogeneous_extend(m.collar, y, 0); // w = 0, n = 2: coefficient -4
  HomogeneousField rf = field_mul(sol.rho, f);
  HomogeneousField lhs = field_sub(ambient_laplacian(m, rf),
                                   field_mul(sol.rho, ambient_laplacian(m, f)));
  CollField resid = add(lhs.coll(), scaled(f.coll(), 4.0).with_weight(lhs.weight()));
  CHECK(field_sup(resid) < 1e-8);
}

TEST_CASE("second commutator [Delta^2, rho] f = -2(2w+n) Delta f") {
  FeffermanSolution sol = perturbed_solution();
  AmbientMetric m = build_ambient_metric(sol.rho);
  auto y = m.collar->grid().harmonic(1, 1);
  HomogeneousField f = homogeneous_extend(m.collar, y, 2); // w = 2
  HomogeneousField rf = field_mul(sol.rho, f);
  HomogeneousField lhs = field_sub(laplacian_power(m, rf, 2),
                                   field_mul(sol.rho, laplacian_power(m, f, 2)));
  HomogeneousField rhs = field_scale(ambient_laplacian(m, f), -2.0 * (2 * 2 + 2));
  CollField resid = sub(lhs.coll(), rhs.coll().with_weight(lhs.weight()));
  double scale = std::max(1.0, field_sup(rhs.coll()));
  CHECK(field_sup(resid) / scale < 1e-7);
}

TEST_CASE("laplacian_power with k = 0 is the identity") {
  FeffermanSolution sol = perturbed_solution(12);
  AmbientMetric m = build_ambient_metric(sol.rho);
  auto y = m.collar->grid().harmonic(3, -2);
  HomogeneousField f = homogeneous_extend(m.collar, y, 2);
  HomogeneousField same = laplacian_power(m, f, 0);
  CHECK(field_sup(sub(same.coll(), f.coll())) == 0.0);
}

TEST_CASE("trace of Gamma vanishes on the boundary for Fefferman densities") {
  FeffermanSolution sol = perturbed_solution();
  AmbientMetric m = build_ambient_metric(sol.rho);
  auto tr = trace_gamma(m);
  // Fefferman to order n/2+1 makes trGamma = O(rho^{n/2}) = O(rho): row 0 small
  for (int k = 0; k < 4; ++k) CHECK(tr[k].max_abs_row(0) < 1e-9);
}
