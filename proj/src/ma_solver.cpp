#include "ccgeom/ma_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace ccgeom {

CollField det_jet_matrix(const std::vector<CollField>& m, int dim) {
  if (dim == 1) return m[0];
  CollField acc;
  bool first = true;
  for (int j = 0; j < dim; ++j) {
    std::vector<CollField> minor;
    minor.reserve((dim - 1) * (dim - 1));
    for (int r = 1; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        if (c != j) minor.push_back(m[r * dim + c]);
    CollField term = mul(m[j], det_jet_matrix(minor, dim - 1));
    if (j % 2) term = scaled(term, -1.0);
    if (first) {
      acc = term;
      first = false;
    } else {
      acc = add(acc, term);
    }
  }
  return acc;
}

HomogeneousField ma_residual(const HomogeneousField& rho) {
  if (rho.weight() != 2)
    throw std::invalid_argument("ma_residual: defining density must have weight 2");
  std::vector<HomogeneousField> hess = ambient_hessian(rho);
  const int dim = rho.ncoords();
  if (rho.is_poly()) {
    std::vector<PolyField> entries;
    entries.reserve(dim * dim);
    for (auto& h : hess) entries.push_back(h.poly());
    PolyField det = poly_det(entries, dim);
    PolyField one = PolyField::constant(dim, 1.0);
    return HomogeneousField(det + one);
  }
  std::vector<CollField> entries;
  entries.reserve(dim * dim);
  for (auto& h : hess) entries.push_back(h.coll());
  CollField det = det_jet_matrix(entries, dim);
  CollField one = CollField::from_boundary(det.collar(), 0,
                                           std::vector<double>(det.nnodes(), 1.0));
  return HomogeneousField(add(det, one).with_weight(0));
}

namespace {

FeffermanSolution solve_quadric(const SurfaceSpec& spec) {
  if (!spec.strictly_convex_quadric())
    throw std::domain_error("solve_fefferman: quadric is not strictly convex");
  const int d = spec.n + 2;
  PolyField rho0 = PolyField::quadric(d, spec.quadric);
  std::vector<HomogeneousField> hess = ambient_hessian(HomogeneousField(rho0));
  std::vector<PolyField> entries;
  for (auto& h : hess) entries.push_back(h.poly());
  const double J = poly_det(entries, d).eval(std::vector<double>(d, 0.0));
  if (!(J < 0))
    throw std::domain_error("solve_fefferman: quadric Hessian determinant must be negative");
  const double c = std::pow(-J, -1.0 / d);
  FeffermanSolution sol;
  sol.rho = HomogeneousField(rho0.scaled(c));
  sol.n = spec.n;
  sol.exact = true;
  sol.orders_solved = spec.n / 2 + 2; // residual vanishes identically
  return sol;
}

} // namespace

FeffermanSolution solve_fefferman_from_seed(const HomogeneousField& seed, int n,
                                            int target_order) {
  if (n != 2) throw std::invalid_argument("solve_fefferman: collocation path supports n = 2");
  const int max_order = n / 2 + 1;
  if (target_order < 1 || target_order > max_order)
    throw std::invalid_argument("solve_fefferman: target order must lie in [1, n/2+1]");

  FeffermanSolution sol;
  sol.n = n;
  CollField rho = seed.coll();
  const CollarPtr collar = rho.collar();
  const std::size_t N = collar->nnodes();

  // multiplicative normalization: J[c rho]|_M = c^{n+2} J[rho]|_M
  {
    HomogeneousField res = ma_residual(HomogeneousField(rho));
    std::vector<double> J0 = res.coll().boundary_values();
    std::vector<double> c(N);
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double J = J0[i] - 1.0;
      if (!(J < 0))
        throw std::domain_error("solve_fefferman: boundary Hessian determinant not negative "
                                "(convexity failure)");
      c[i] = std::pow(-J, -1.0 / (n + 2));
      worst = std::max(worst, std::abs(J0[i]));
    }
    sol.order_residuals.push_back(worst);
    rho = mul(rho, CollField::from_boundary(collar, 0, c)).with_weight(2);
  }
  sol.orders_solved = 1;

  // one direct correction per order: kill the rho^(m-1) coefficient with
  // phi rho^m, phi = e / (m (n+4-2m))
  for (int m = 2; m <= target_order; ++m) {
    const double denom = static_cast<double>(m) * (n + 4 - 2 * m);
    if (denom == 0.0) break; // the obstruction order; cannot be killed
    HomogeneousField res = ma_residual(HomogeneousField(rho));
    CollField e_jet = div_reduce(res.coll(), rho.pow_int(m - 1), m - 1);
    std::vector<double> e = e_jet.boundary_values();
    double worst = 0.0;
    for (double v : e) worst = std::max(worst, std::abs(v));
    sol.order_residuals.push_back(worst);
    std::vector<double> phi(N);
    for (std::size_t i = 0; i < N; ++i) phi[i] = e[i] / denom;
    CollField corr = mul(CollField::from_boundary(collar, 2 - 2 * m, phi), rho.pow_int(m));
    rho = add(rho, corr.with_weight(2));
    sol.orders_solved = m;
  }
  sol.rho = HomogeneousField(rho);
  return sol;
}

FeffermanSolution solve_fefferman(const SurfaceSpec& spec, int target_order,
                                  SphereGridPtr grid) {
  if (spec.kind == SurfaceSpec::Kind::Quadric && !grid) return solve_quadric(spec);
  // collocation: build the collar and seed with the coordinate v
  if (spec.n != 2)
    throw std::invalid_argument("solve_fefferman: collocation path supports n = 2 only");
  if (!grid) grid = std::make_shared<const SphereGrid>(spec.grid.lmax);
  CollarPtr collar = spec.make_boundary_collar(grid, spec.grid.jet_order);
  HomogeneousField seed(CollField::coordinate_v(collar));
  if (target_order < 0) target_order = spec.n / 2 + 1;
  return solve_fefferman_from_seed(seed, spec.n, target_order);
}

Obstruction obstruction_density(const FeffermanSolution& sol) {
  Obstruction out;
  const int n = sol.n;
  if (n % 2 != 0) {
    out.odd_n = true;
    return out;
  }
  if (sol.exact) {
    // quadrics solve the equation exactly; the obstruction vanishes
    out.boundary.clear();
    return out;
  }
  if (sol.orders_solved < n / 2 + 1)
    throw std::domain_error("obstruction_density: density not Fefferman to order n/2+1");
  HomogeneousField res = ma_residual(sol.rho);
  const CollField& rho = sol.rho.coll();
  out.field = div_reduce(res.coll(), rho.pow_int(n / 2 + 1), n / 2 + 1)
                  .with_weight(-n - 2);
  out.boundary = out.field.boundary_values();
  return out;
}

StrictifyResult strictify(const FeffermanSolution& sol) {
  const int n = sol.n;
  if (n % 2 != 0) throw std::invalid_argument("strictify: even n only");
  if (sol.exact) {
    // obstruction is identically zero; nothing to correct
    return StrictifyResult{sol.rho, 0.0, 0.0};
  }
  const CollField& rho = sol.rho.coll();
  if (rho.storage_order() < n / 2 + 4)
    throw std::domain_error("strictify: jet order must be at least n/2+4");

  AmbientMetric m = build_ambient_metric(sol.rho);
  Obstruction O = obstruction_density(sol);
  HomogeneousField lapO = ambient_laplacian(m, HomogeneousField(O.field));
  double before = 0.0;
  for (double v : lapO.coll().boundary_values()) before = std::max(before, std::abs(v));

  // Only the boundary value of Delta O enters the corrected obstruction at M:
  // replacing the full jet by its ray-constant extension changes phi by
  // rho * (something vanishing on M), which drops out of Delta'O'|_M.
  CollField lapO_ext =
      CollField::from_boundary(rho.collar(), -n - 4, lapO.coll().boundary_values());
  const double fac = -1.0 / ((n + 6.0) * (n + 6.0));
  CollField phi = scaled(mul(rho, lapO_ext), fac).with_weight(-n - 2);
  CollField corr = mul(phi, rho.pow_int(n / 2 + 2)).with_weight(2);
  FeffermanSolution corrected = sol;
  corrected.rho = HomogeneousField(add(rho, corr));

  AmbientMetric m2 = build_ambient_metric(corrected.rho);
  Obstruction O2 = obstruction_density(corrected);
  HomogeneousField lapO2 = ambient_laplacian(m2, HomogeneousField(O2.field));
  double after = 0.0;
  for (double v : lapO2.coll().boundary_values()) after = std::max(after, std::abs(v));

  return StrictifyResult{corrected.rho, before, after};
}

} // namespace ccgeom
