// Ambient (tractor) metric g_IJ = D_I D_J rhobar on the cone, its pointwise
// inverse, the totally symmetric Christoffel field Gamma_IJK = (1/2) D^3
// rhobar, and the ambient Laplacian.
#pragma once

#include <vector>

#include "ccgeom/field.hpp"

namespace ccgeom {

struct AmbientMetric {
  int n = 2;          // boundary dimension
  int dim = 4;        // n + 2
  bool poly = false;
  HomogeneousField rho;

  // polynomial (quadric) case: constant matrices, Gamma = 0
  std::vector<double> g0, ginv0; // dim*dim row-major

  // collocation case
  CollarPtr collar;
  std::vector<CollField> g;        // dim*dim
  std::vector<CollField> ginv;     // dim*dim
  std::vector<CollField> gamma;    // dim^3, all indices down
  std::vector<CollField> gamma_up; // Gamma_IJ^K (last index raised)

  const CollField& gij(int i, int j) const { return g[i * dim + j]; }
  const CollField& ginvij(int i, int j) const { return ginv[i * dim + j]; }
  const CollField& gamma_ijk(int i, int j, int k) const {
    return gamma[(i * dim + j) * dim + k];
  }
  const CollField& gamma_up_ijk(int i, int j, int k) const {
    return gamma_up[(i * dim + j) * dim + k];
  }
};

// Hessian fields D_I D_J f (dim*dim entries)
std::vector<HomogeneousField> ambient_hessian(const HomogeneousField& f);

// builds g, ginv, Gamma; checks Lorentz signature (1, n+1) at boundary nodes
AmbientMetric build_ambient_metric(const HomogeneousField& rho);

// Delta f = -g^{IJ} (D_I D_J f - Gamma_IJ^K D_K f); weight drops by 2
HomogeneousField ambient_laplacian(const AmbientMetric& m, const HomogeneousField& f);
HomogeneousField laplacian_power(const AmbientMetric& m, const HomogeneousField& f, int k);

// trace Gamma_K = g^{IJ} Gamma_IJK (collocation only)
std::vector<CollField> trace_gamma(const AmbientMetric& m);

// max |g . ginv - Id| over trusted jet rows (diagnostic)
double inverse_residual(const AmbientMetric& m);

} // namespace ccgeom
