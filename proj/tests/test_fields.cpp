#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ccgeom/field.hpp"
#include "ccgeom/surface_spec.hpp"

using namespace ccgeom;

namespace {

CollarPtr unit_ball_collar(int lmax = 12, int K = 6) {
  auto grid = std::make_shared<const SphereGrid>(lmax);
  return make_collar(grid, std::vector<double>(sh_count(lmax), 0.0), K);
}

HomogeneousField ball_poly(int n = 2) {
  SurfaceSpec s = SurfaceSpec::ball(n);
  return HomogeneousField(PolyField::quadric(n + 2, s.quadric));
}

} // namespace

TEST_CASE("polynomial derivative of the ball density") {
  HomogeneousField rho = ball_poly();
  auto d = ambient_derivative(rho);
  // d_I rho = (-xi0, xi1, xi2, xi3)
  std::vector<double> xi{1.3, 0.2, -0.7, 0.5};
  CHECK(d[0].eval_cone(xi) == doctest::Approx(-xi[0]));
  for (int i = 1; i < 4; ++i) CHECK(d[i].eval_cone(xi) == doctest::Approx(xi[i]));
  CHECK(d[0].weight() == 1);
}

TEST_CASE("polynomial arithmetic and weights") {
  HomogeneousField rho = ball_poly();
  HomogeneousField sq = field_mul(rho, rho);
  CHECK(sq.weight() == 4);
  std::vector<double> e0{1.0, 0.0, 0.0, 0.0};
  CHECK(sq.eval_cone(e0) == doctest::Approx(0.25)); // (1/2 * (-1))^2
  // f + 0 = f
  HomogeneousField zero(PolyField(4, 2));
  HomogeneousField same = field_add(rho, zero);
  CHECK(same.eval_cone(e0) == doctest::Approx(rho.eval_cone(e0)));
  // scalar multiple keeps weight
  HomogeneousField s = field_scale(rho, 3.0);
  CHECK(s.weight() == 2);
  CHECK(s.eval_cone(e0) == doctest::Approx(-1.5));
  // Euler is exact for polynomials
  CHECK(euler_residual(rho) == 0.0);
  CHECK(rho.poly().homogeneous());
}

TEST_CASE("add rejects weight mismatch") {
  HomogeneousField rho = ball_poly();
  HomogeneousField sq = field_mul(rho, rho);
  CHECK_THROWS(field_add(rho, sq));
}

TEST_CASE("derivative of a constant weight-0 field vanishes") {
  HomogeneousField c(PolyField::constant(4, 2.5));
  auto d = ambient_derivative(c);
  for (int i = 0; i < 4; ++i) CHECK(d[i].poly().is_zero());
}

TEST_CASE("collocation extension restricts to its boundary data") {
  CollarPtr collar = unit_ball_collar();
  auto y10 = collar->grid().harmonic(1, 0);
  HomogeneousField f = homogeneous_extend(collar, y10, 2);
  auto back = f.coll().boundary_values();
  double worst = 0;
  for (std::size_t i = 0; i < back.size(); ++i)
    worst = std::max(worst, std::abs(back[i] - y10[i]));
  CHECK(worst < 1e-14);
}

TEST_CASE("Euler identity holds for collocation fields of weight 2") {
  // perturbed collar so the chart is not rotationally symmetric
  SurfaceSpec spec = SurfaceSpec::perturbed_sphere({{4, 0, 0.05}});
  auto grid = std::make_shared<const SphereGrid>(16);
  CollarPtr collar = spec.make_boundary_collar(grid, 6);
  auto y = collar->grid().harmonic(2, 1);
  HomogeneousField f = homogeneous_extend(collar, y, 2);
  CHECK(euler_residual(f) < 1e-10);

  // contracted form: xi^I d_I f = w f as jets
  auto df = ambient_derivative(f);
  auto T = euler_field(collar);
  CollField acc = CollField::zero(collar, 2);
  for (int i = 0; i < 4; ++i) acc = add(acc, mul(T[i], df[i].coll()).with_weight(2));
  CollField resid = sub(acc, scaled(f.coll(), 2.0));
  double worst = 0;
  for (int k = 0; k < resid.exact_rows(); ++k)
    worst = std::max(worst, resid.max_abs_row(k));
  CHECK(worst < 1e-10);
}

TEST_CASE("second ambient derivatives commute") {
  SurfaceSpec spec = SurfaceSpec::perturbed_sphere({{4, 0, 0.05}, {3, 1, 0.02}});
  auto grid = std::make_shared<const SphereGrid>(24);
  CollarPtr collar = spec.make_boundary_collar(grid, 6);
  auto y = collar->grid().harmonic(2, -1);
  HomogeneousField f = homogeneous_extend(collar, y, 2);
  auto d1 = ambient_derivative(f);
  auto d01 = ambient_derivative(d1[0]);
  auto d10 = ambient_derivative(d1[1]);
  CollField diff = sub(d01[1].coll(), d10[0].coll());
  double worst = 0;
  for (int k = 0; k < diff.exact_rows(); ++k) worst = std::max(worst, diff.max_abs_row(k));
  CHECK(worst < 1e-9);
}

TEST_CASE("collocation sampling of the ball matches the polynomial values") {
  CollarPtr collar = unit_ball_collar();
  // rho_ball trivializes to v on the unit-ball collar
  HomogeneousField rho_c(CollField::coordinate_v(collar));
  HomogeneousField rho_p = ball_poly();
  for (double s : {0.9, 1.0, 1.05}) {
    std::vector<double> xi{1.1, 0.3 * s, -0.4 * s, 0.55 * s};
    CHECK(rho_c.eval_cone(xi) == doctest::Approx(rho_p.eval_cone(xi)).epsilon(1e-12));
  }
}

TEST_CASE("jet multiplication truncates at the storage order") {
  CollarPtr collar = unit_ball_collar(8, 4);
  CollField v = CollField::coordinate_v(collar);
  CollField v4 = v.pow_int(4);
  CHECK(v4.vanish() == 4);
  CHECK(v4.tail_zero());
  CollField v8 = mul(v4, v4); // degree 8 > storage 4: rows all zero, not tail_zero
  CHECK_FALSE(v8.tail_zero());
  CHECK(v8.max_abs() == 0.0);
}
