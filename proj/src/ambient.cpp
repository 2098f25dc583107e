#include "ccgeom/ambient.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "ccgeom/parallel.hpp"

namespace ccgeom {

std::vector<HomogeneousField> ambient_hessian(const HomogeneousField& f) {
  const int dim = f.ncoords();
  std::vector<HomogeneousField> hess(dim * dim);
  std::vector<HomogeneousField> d1 = ambient_derivative(f);
  for (int i = 0; i < dim; ++i) {
    std::vector<HomogeneousField> d2 = ambient_derivative(d1[i]);
    for (int j = 0; j < dim; ++j) hess[i * dim + j] = std::move(d2[j]);
  }
  return hess;
}

namespace {

// order-by-order inverse of a jet-valued symmetric matrix
void invert_jet_matrix(const std::vector<CollField>& G, std::vector<CollField>& X, int dim) {
  const CollarPtr collar = G[0].collar();
  const int K = G[0].storage_order();
  const std::size_t n = collar->nnodes();
  X.assign(dim * dim, CollField::zero(collar, 0));
  int exact = K + 1;
  for (const auto& e : G) exact = std::min(exact, e.exact_rows());

  par::for_each_index(n, [&](std::size_t p) {
    Eigen::MatrixXd G0(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) G0(i, j) = G[i * dim + j].row(0)[p];
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(G0);
    Eigen::MatrixXd X0 = lu.inverse();
    std::vector<Eigen::MatrixXd> Xk(K + 1, Eigen::MatrixXd::Zero(dim, dim));
    Xk[0] = X0;
    for (int k = 1; k <= K; ++k) {
      Eigen::MatrixXd S = Eigen::MatrixXd::Zero(dim, dim);
      for (int j = 1; j <= k; ++j) {
        Eigen::MatrixXd Gj(dim, dim);
        for (int a = 0; a < dim; ++a)
          for (int b = 0; b < dim; ++b) Gj(a, b) = G[a * dim + b].row(j)[p];
        S += Gj * Xk[k - j];
      }
      Xk[k] = -X0 * S;
    }
    for (int k = 0; k <= K; ++k)
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) X[a * dim + b].row(k)[p] = Xk[k](a, b);
  });
  for (auto& e : X) e.set_meta(exact, false, K + 1, 0);
}

void check_signature(const std::vector<CollField>& G, int dim, int n) {
  const std::size_t N = G[0].nnodes();
  for (std::size_t p = 0; p < N; ++p) {
    Eigen::MatrixXd G0(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) G0(i, j) = G[i * dim + j].row(0)[p];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G0);
    int neg = 0;
    for (int i = 0; i < dim; ++i)
      if (es.eigenvalues()[i] < 0) ++neg;
    if (neg != 1)
      throw std::domain_error(
          "build_ambient_metric: Hessian does not have Lorentz signature (1, n+1); "
          "the domain is not strictly convex here");
  }
  (void)n;
}

} // namespace

AmbientMetric build_ambient_metric(const HomogeneousField& rho) {
  AmbientMetric m;
  m.rho = rho;
  if (rho.weight() != 2)
    throw std::invalid_argument("build_ambient_metric: defining density must have weight 2");

  if (rho.is_poly()) {
    m.poly = true;
    const int dim = rho.poly().nvars();
    m.dim = dim;
    m.n = dim - 2;
    std::vector<HomogeneousField> hess = ambient_hessian(rho);
    m.g0.assign(dim * dim, 0.0);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const PolyField& e = hess[i * dim + j].poly();
        if (e.is_zero()) continue;
        // entries of a quadric Hessian are constants
        if (e.weight() != 0)
          throw std::invalid_argument(
              "build_ambient_metric: polynomial mode supports quadric densities only");
        m.g0[i * dim + j] = e.eval(std::vector<double>(dim, 0.0));
      }
    Eigen::Map<Eigen::MatrixXd> G(m.g0.data(), dim, dim);
    Eigen::MatrixXd Gm = G;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Gm);
    int neg = 0;
    for (int i = 0; i < dim; ++i)
      if (es.eigenvalues()[i] < 0) ++neg;
    if (neg != 1)
      throw std::domain_error("build_ambient_metric: quadric is not strictly convex");
    Eigen::MatrixXd Gi = Gm.inverse();
    m.ginv0.assign(dim * dim, 0.0);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m.ginv0[i * dim + j] = Gi(i, j);
    return m;
  }

  // collocation (n = 2)
  m.poly = false;
  m.dim = 4;
  m.n = 2;
  m.collar = rho.coll().collar();
  std::vector<HomogeneousField> hess = ambient_hessian(rho);
  m.g.reserve(16);
  for (auto& h : hess) m.g.push_back(h.coll());
  check_signature(m.g, 4, 2);
  invert_jet_matrix(m.g, m.ginv, 4);
  for (int i = 0; i < 16; ++i) m.ginv[i] = m.ginv[i].with_weight(0);

  // Gamma_IJK = (1/2) D_I D_J D_K rho, totally symmetric: differentiate the
  // Hessian once and average nothing (symmetry holds up to spectral error)
  m.gamma.assign(64, CollField::zero(m.collar, -1));
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      std::vector<HomogeneousField> d3 =
          ambient_derivative(HomogeneousField(m.g[i * 4 + j]));
      for (int k = 0; k < 4; ++k) {
        CollField gk = scaled(d3[k].coll(), 0.5).with_weight(-1);
        m.gamma[(i * 4 + j) * 4 + k] = gk;
        if (j != i) m.gamma[(j * 4 + i) * 4 + k] = gk;
      }
    }
  // raise the last index
  m.gamma_up.assign(64, CollField::zero(m.collar, -1));
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        CollField acc = CollField::zero(m.collar, -1);
        for (int l = 0; l < 4; ++l)
          acc = add(acc, mul(m.ginvij(k, l), m.gamma_ijk(i, j, l)).with_weight(-1));
        m.gamma_up[(i * 4 + j) * 4 + k] = acc;
        if (j != i) m.gamma_up[(j * 4 + i) * 4 + k] = acc;
      }
  return m;
}

HomogeneousField ambient_laplacian(const AmbientMetric& m, const HomogeneousField& f) {
  const int w = f.weight();
  if (m.poly) {
    if (!f.is_poly())
      throw std::invalid_argument("ambient_laplacian: representation mismatch");
    const int dim = m.dim;
    std::vector<HomogeneousField> hess = ambient_hessian(f);
    PolyField acc(dim, w - 2);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const double gij = m.ginv0[i * dim + j];
        if (gij != 0.0) acc = acc + hess[i * dim + j].poly().scaled(-gij);
      }
    return HomogeneousField(acc);
  }
  if (!f.is_coll()) throw std::invalid_argument("ambient_laplacian: representation mismatch");
  if (f.coll().exact_rows() < 3 && !f.coll().tail_zero())
    throw std::domain_error("ambient_laplacian: jet order exhausted");
  std::vector<HomogeneousField> d1 = ambient_derivative(f);
  CollField acc = CollField::zero(m.collar, w - 2);
  for (int i = 0; i < 4; ++i) {
    std::vector<HomogeneousField> d2 = ambient_derivative(d1[i]);
    for (int j = 0; j < 4; ++j) {
      CollField bracket = d2[j].coll();
      for (int k = 0; k < 4; ++k)
        bracket = sub(bracket,
                      mul(m.gamma_up_ijk(i, j, k), d1[k].coll()).with_weight(bracket.weight()));
      acc = add(acc, scaled(mul(m.ginvij(i, j), bracket), -1.0).with_weight(w - 2));
    }
  }
  return HomogeneousField(acc);
}

HomogeneousField laplacian_power(const AmbientMetric& m, const HomogeneousField& f, int k) {
  HomogeneousField r = f;
  for (int i = 0; i < k; ++i) r = ambient_laplacian(m, r);
  return r;
}

std::vector<CollField> trace_gamma(const AmbientMetric& m) {
  if (m.poly) throw std::invalid_argument("trace_gamma: collocation metrics only");
  std::vector<CollField> tr;
  tr.reserve(4);
  for (int k = 0; k < 4; ++k) {
    CollField acc = CollField::zero(m.collar, -1);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        acc = add(acc, mul(m.ginvij(i, j), m.gamma_ijk(i, j, k)).with_weight(-1));
    tr.push_back(acc);
  }
  return tr;
}

double inverse_residual(const AmbientMetric& m) {
  if (m.poly) {
    const int dim = m.dim;
    Eigen::Map<const Eigen::MatrixXd> G(m.g0.data(), dim, dim);
    Eigen::Map<const Eigen::MatrixXd> Gi(m.ginv0.data(), dim, dim);
    return (G * Gi - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  }
  double worst = 0.0;
  int exact = m.g[0].storage_order() + 1;
  for (const auto& e : m.g) exact = std::min(exact, e.exact_rows());
  for (const auto& e : m.ginv) exact = std::min(exact, e.exact_rows());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CollField acc = CollField::zero(m.collar, 0);
      for (int k = 0; k < 4; ++k) acc = add(acc, mul(m.gij(i, k), m.ginvij(k, j)));
      if (i == j) {
        CollField one = CollField::from_boundary(m.collar, 0,
                                                 std::vector<double>(m.collar->nnodes(), 1.0));
        acc = sub(acc, one);
      }
      for (int r = 0; r < exact; ++r) worst = std::max(worst, acc.max_abs_row(r));
    }
  return worst;
}

} // namespace ccgeom
