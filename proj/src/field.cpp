#include "ccgeom/field.hpp"

#include <cmath>

namespace ccgeom {

double HomogeneousField::eval_cone(const std::vector<double>& xi) const {
  if (is_poly()) return poly().eval(xi);
  if (xi.size() != 4) throw std::invalid_argument("eval_cone: collocation fields live in R^4");
  return coll().eval_cone(xi[0], Vec3{xi[1], xi[2], xi[3]});
}

HomogeneousField field_add(const HomogeneousField& a, const HomogeneousField& b) {
  if (a.weight() != b.weight())
    throw std::invalid_argument("field_add: weight mismatch");
  if (a.is_poly() != b.is_poly())
    throw std::invalid_argument("field_add: representation mismatch");
  if (a.is_poly()) return HomogeneousField(a.poly() + b.poly());
  return HomogeneousField(add(a.coll(), b.coll()));
}

HomogeneousField field_sub(const HomogeneousField& a, const HomogeneousField& b) {
  return field_add(a, field_scale(b, -1.0));
}

HomogeneousField field_mul(const HomogeneousField& a, const HomogeneousField& b) {
  if (a.is_poly() != b.is_poly())
    throw std::invalid_argument("field_mul: representation mismatch");
  if (a.is_poly()) return HomogeneousField(a.poly() * b.poly());
  return HomogeneousField(mul(a.coll(), b.coll()));
}

HomogeneousField field_scale(const HomogeneousField& a, double s) {
  if (a.is_poly()) return HomogeneousField(a.poly().scaled(s));
  return HomogeneousField(scaled(a.coll(), s));
}

std::vector<HomogeneousField> ambient_derivative(const HomogeneousField& f) {
  std::vector<HomogeneousField> out;
  if (f.is_poly()) {
    const int nv = f.poly().nvars();
    out.reserve(nv);
    for (int i = 0; i < nv; ++i) out.emplace_back(f.poly().partial(i));
    return out;
  }
  const CollField& F = f.coll();
  if (F.storage_order() < 1 || F.exact_rows() < 2)
    throw std::domain_error("ambient_derivative: jet order exhausted");
  const int w = F.weight();
  CollField g[3];
  F.collar_gradient(g);
  // d_0 f = t^(w-1) (w F - x . grad F); d_i f = t^(w-1) dF/dx^i
  CollField comp0 = sub(scaled(F, static_cast<double>(w)), F.x_dot_grad());
  out.emplace_back(comp0.with_weight(w - 1));
  for (int i = 0; i < 3; ++i) out.emplace_back(g[i].with_weight(w - 1));
  return out;
}

HomogeneousField homogeneous_extend(CollarPtr collar, const std::vector<double>& boundary,
                                    int weight, int) {
  for (double v : boundary)
    if (!std::isfinite(v)) throw std::invalid_argument("homogeneous_extend: non-finite value");
  return HomogeneousField(CollField::from_boundary(std::move(collar), weight, boundary));
}

std::vector<CollField> euler_field(const CollarPtr& collar) {
  std::vector<CollField> T;
  T.reserve(4);
  const std::size_t n = collar->nnodes();
  // xi^0 = t * 1
  T.push_back(CollField::from_boundary(collar, 1, std::vector<double>(n, 1.0)));
  // xi^i = t * x^i with x^i = c(u,v) u_i
  const auto& cj = collar->c_jet();
  const int K = collar->jet_order();
  for (int d = 0; d < 3; ++d) {
    CollField f(collar, 1);
    for (int k = 0; k <= K; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        const Vec3 u = collar->grid().node(i);
        const double ud = d == 0 ? u.x : (d == 1 ? u.y : u.z);
        f.row(k)[i] = cj[k * n + i] * ud;
      }
    f.set_meta(K + 1, false, K + 1, 0);
    T.push_back(f);
  }
  return T;
}

double euler_residual(const HomogeneousField& f) {
  std::vector<HomogeneousField> df = ambient_derivative(f);
  const int w = f.weight();
  if (f.is_poly()) {
    const int nv = f.poly().nvars();
    PolyField acc = f.poly().scaled(static_cast<double>(-w));
    for (int i = 0; i < nv; ++i) acc = acc + PolyField::variable(nv, i) * df[i].poly();
    // exact cancellation expected; report the largest surviving coefficient
    double m = 0.0;
    for (const auto& [mon, c] : acc.terms()) m = std::max(m, std::abs(c));
    return m;
  }
  // sample along rays through a few grid nodes
  const CollField& F = f.coll();
  const auto& grid = F.collar()->grid();
  double worst = 0.0;
  const std::size_t step = std::max<std::size_t>(1, grid.size() / 24);
  for (std::size_t i = 0; i < grid.size(); i += step) {
    const Vec3 u = grid.node(i);
    const double R = F.collar()->R()[i];
    for (double s : {0.9, 1.0, 1.12}) {
      const Vec3 x = (0.98 * R) * u; // slightly inside the boundary
      const double base = F.eval_cone(1.0, x);
      const double scaled_val = F.eval_cone(s, Vec3{s * x.x, s * x.y, s * x.z});
      worst = std::max(worst, std::abs(scaled_val - std::pow(s, w) * base));
    }
  }
  return worst;
}

} // namespace ccgeom
