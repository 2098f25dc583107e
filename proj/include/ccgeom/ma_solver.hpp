// Order-by-order construction of Fefferman defining densities
// (det D^2 rhobar = -1 up to the obstruction order), obstruction extraction,
// and the strict normalization that controls Delta O.
#pragma once

#include <vector>

#include "ccgeom/ambient.hpp"
#include "ccgeom/field.hpp"
#include "ccgeom/surface_spec.hpp"

namespace ccgeom {

// J[rho] + 1 where J = det(D_I D_J rho); zero iff rho solves the equation
HomogeneousField ma_residual(const HomogeneousField& rho);

// determinant of a jet-valued matrix (cofactor expansion)
CollField det_jet_matrix(const std::vector<CollField>& m, int dim);

struct FeffermanSolution {
  HomogeneousField rho;
  int n = 2;
  int orders_solved = 0; // J + 1 = O(rho^orders_solved)
  bool exact = false;    // quadric (polynomial) path: residual identically 0
  std::vector<double> order_residuals; // sup of the killed coefficient per order
};

// quadric specs: exact normalization in polynomial mode.
// star-shaped specs (n = 2): collocation jet iteration on the given grid.
FeffermanSolution solve_fefferman(const SurfaceSpec& spec, int target_order,
                                  SphereGridPtr grid = nullptr);

// same iteration from an explicit seed density (uniqueness experiments)
FeffermanSolution solve_fefferman_from_seed(const HomogeneousField& seed, int n,
                                            int target_order);

struct Obstruction {
  CollField field;               // weight -n-2 jet (trivialized)
  std::vector<double> boundary;  // O|_M
  bool odd_n = false;            // odd n: no obstruction, field is zero
};

// rho must be Fefferman to order n/2+1 (even n)
Obstruction obstruction_density(const FeffermanSolution& sol);

struct StrictifyResult {
  HomogeneousField rho;           // corrected density
  double delta_O_boundary_before; // sup |Delta O|_M| going in
  double delta_O_boundary_after;  // recomputed after the correction
};

StrictifyResult strictify(const FeffermanSolution& sol);

} // namespace ccgeom
