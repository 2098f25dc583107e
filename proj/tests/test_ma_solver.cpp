#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ccgeom/ma_solver.hpp"

using namespace ccgeom;

namespace {

double field_sup(const CollField& f) {
  double worst = 0;
  for (int k = 0; k < f.exact_rows(); ++k) worst = std::max(worst, f.max_abs_row(k));
  return worst;
}

double poly_sup(const PolyField& p) {
  double worst = 0;
  for (const auto& [m, c] : p.terms()) worst = std::max(worst, std::abs(c));
  return worst;
}

} // namespace

TEST_CASE("the unit ball solves the equation exactly (cofactor oracle)") {
  SurfaceSpec spec = SurfaceSpec::ball(2);
  HomogeneousField rho(PolyField::quadric(4, spec.quadric));
  HomogeneousField res = ma_residual(rho);
  CHECK(poly_sup(res.poly()) < 1e-15);
}

TEST_CASE("residual scales as c^{n+2} under constant rescaling") {
  for (int n : {2, 4}) {
    SurfaceSpec spec = SurfaceSpec::ball(n);
    const double c = 1.37;
    HomogeneousField rho(PolyField::quadric(n + 2, spec.quadric).scaled(c));
    HomogeneousField res = ma_residual(rho);
    // J[c rho] + 1 = 1 - c^{n+2}
    std::vector<double> origin(n + 2, 0.0);
    CHECK(res.eval_cone(origin) ==
          doctest::Approx(1.0 - std::pow(c, n + 2)).epsilon(1e-13));
  }
}

TEST_CASE("normalized ellipsoids are exact solutions") {
  SurfaceSpec spec = SurfaceSpec::ellipsoid({1.3, 1.0, 0.7});
  double prod2 = std::pow(1.3 * 1.0 * 0.7, 2);
  HomogeneousField rho(
      PolyField::quadric(4, spec.quadric).scaled(std::pow(prod2, 0.25)));
  HomogeneousField res = ma_residual(rho);
  CHECK(poly_sup(res.poly()) < 1e-12);
  // and the solver returns exactly this normalization
  FeffermanSolution sol = solve_fefferman(spec, 2);
  CHECK(sol.exact);
  CHECK(poly_sup(ma_residual(sol.rho).poly()) < 1e-12);
}

TEST_CASE("n = 4 ball works in polynomial mode") {
  SurfaceSpec spec = SurfaceSpec::ball(4);
  FeffermanSolution sol = solve_fefferman(spec, 2);
  CHECK(poly_sup(ma_residual(sol.rho).poly()) < 1e-14);
}

TEST_CASE("ball collocation solve is a fixed point with zero obstruction") {
  SurfaceSpec spec = SurfaceSpec::ball(2);
  spec.grid.lmax = 12;
  auto grid = std::make_shared<const SphereGrid>(spec.grid.lmax);
  FeffermanSolution sol = solve_fefferman(spec, 2, grid);
  // the seed v is already exact: rows beyond 1 stay zero
  CHECK(sol.rho.coll().max_abs_row(2) < 1e-12);
  CHECK(std::abs(sol.rho.coll().max_abs_row(1) - 1.0) < 1e-12);
  Obstruction O = obstruction_density(sol);
  double worst = 0;
  for (double v : O.boundary) worst = std::max(worst, std::abs(v));
  CHECK(worst < 1e-10);
}

TEST_CASE("collocation ellipsoid solve matches the exact quadric density") {
  SurfaceSpec spec = SurfaceSpec::ellipsoid({1.1, 1.0, 0.93});
  spec.grid.lmax = 24;
  auto grid = std::make_shared<const SphereGrid>(24);
  FeffermanSolution sol = solve_fefferman(spec, 2, grid);

  // exact density: c * (1/2)(sum (x_i/a_i)^2 - 1), c = (prod a_i^2)^{1/4};
  // on the collar its v-jet is row1 = c * u^T E u, other rows 0
  const double c = std::pow(1.1 * 1.1 * 0.93 * 0.93, 0.25);
  const CollField& rho = sol.rho.coll();
  const auto& g = rho.collar()->grid();
  double worst = 0;
  for (std::size_t i = 0; i < rho.nnodes(); ++i) {
    Vec3 u = g.node(i);
    double uEu = u.x * u.x / (1.1 * 1.1) + u.y * u.y + u.z * u.z / (0.93 * 0.93);
    worst = std::max(worst, std::abs(rho.row(1)[i] - c * uEu));
    worst = std::max(worst, std::abs(rho.row(0)[i]));
    worst = std::max(worst, std::abs(rho.row(2)[i]));
  }
  CHECK(worst < 1e-9);

  Obstruction O = obstruction_density(sol);
  double osup = 0;
  for (double v : O.boundary) osup = std::max(osup, std::abs(v));
  CHECK(osup < 1e-9);
}

TEST_CASE("per-order residuals vanish after each correction") {
  SurfaceSpec spec = SurfaceSpec::perturbed_sphere({{4, 0, 0.05}});
  spec.grid.lmax = 16;
  FeffermanSolution sol = solve_fefferman(spec, 2);
  HomogeneousField res = ma_residual(sol.rho);
  // rows 0 and 1 of J+1 are solved away
  CHECK(res.coll().max_abs_row(0) < 1e-9);
  CHECK(res.coll().max_abs_row(1) < 1e-9);
  // the obstruction coefficient is genuinely nonzero
  Obstruction O = obstruction_density(sol);
  double osup = 0;
  for (double v : O.boundary) osup = std::max(osup, std::abs(v));
  CHECK(osup > 1e-4);
}

TEST_CASE("correction coefficient m(n+4-2m) vanishes exactly at the obstruction order") {
  const int n = 2;
  for (int m = 1; m <= n / 2 + 1; ++m) CHECK(m * (n + 4 - 2 * m) != 0);
  CHECK((n / 2 + 2) * (n + 4 - 2 * (n / 2 + 2)) == 0);
}

TEST_CASE("solver output is seed independent through the solved orders") {
  SurfaceSpec spec = SurfaceSpec::perturbed_sphere({{4, 0, 0.05}});
  spec.grid.lmax = 16;
  auto grid = std::make_shared<const SphereGrid>(16);
  CollarPtr collar = spec.make_boundary_collar(grid, 6);
  HomogeneousField seed1(CollField::coordinate_v(collar));
  // seed2 = seed1 * (1 + lambda * seed1)
  const double lambda = 0.1;
  HomogeneousField seed2 = field_add(
      seed1, HomogeneousField(scaled(mul(seed1.coll(), seed1.coll()), lambda).with_weight(2)));

  FeffermanSolution a = solve_fefferman_from_seed(seed1, 2, 2);
  FeffermanSolution b = solve_fefferman_from_seed(seed2, 2, 2);
  // boundary jets agree through order n/2+1 = 2
  double worst = 0;
  for (int k = 0; k <= 2; ++k) {
    const double* ra = a.rho.coll().row(k);
    const double* rb = b.rho.coll().row(k);
    for (std::size_t i = 0; i < a.rho.coll().nnodes(); ++i)
      worst = std::max(worst, std::abs(ra[i] - rb[i]));
  }
  CHECK(worst < 1e-9);

  // and the obstruction boundary values agree
  Obstruction Oa = obstruction_density(a);
  Obstruction Ob = obstruction_density(b);
  double od = 0;
  for (std::size_t i = 0; i < Oa.boundary.size(); ++i)
    od = std::max(od, std::abs(Oa.boundary[i] - Ob.boundary[i]));
  CHECK(od < 1e-8);
}

TEST_CASE("strictify drives the boundary value of Delta O to zero") {
  SurfaceSpec spec = SurfaceSpec::perturbed_sphere({{4, 0, 0.05}});
  spec.grid.lmax = 16;
  FeffermanSolution sol = solve_fefferman(spec, 2);
  StrictifyResult s = strictify(sol);
  CHECK(s.delta_O_boundary_before > 1e-4); // generically nonzero going in
  CHECK(s.delta_O_boundary_after < 1e-6 * std::max(1.0, s.delta_O_boundary_before));

  // idempotence modulo the solved order: a second pass changes almost nothing
  FeffermanSolution sol2 = sol;
  sol2.rho = s.rho;
  StrictifyResult s2 = strictify(sol2);
  double drift = 0;
  for (int k = 0; k <= 2; ++k) {
    const double* ra = s.rho.coll().row(k);
    const double* rb = s2.rho.coll().row(k);
    for (std::size_t i = 0; i < s.rho.coll().nnodes(); ++i)
      drift = std::max(drift, std::abs(ra[i] - rb[i]));
  }
  CHECK(drift < 1e-10);

  // strictification leaves the ball untouched
  SurfaceSpec bs = SurfaceSpec::ball(2);
  bs.grid.lmax = 12;
  auto bgrid = std::make_shared<const SphereGrid>(12);
  FeffermanSolution ball = solve_fefferman(bs, 2, bgrid);
  StrictifyResult sb = strictify(ball);
  CHECK(sb.delta_O_boundary_after < 1e-9);
  CHECK(field_sup(sub(sb.rho.coll(), ball.rho.coll())) < 1e-9);
}
