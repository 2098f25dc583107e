// HomogeneousField: a projective density of integer weight w realized as a
// degree-w homogeneous function on the cone, in one of two representations
// (exact polynomial / collocation jet). The D-operator is d/dxi^I here.
#pragma once

#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "ccgeom/coll_field.hpp"
#include "ccgeom/poly_field.hpp"

namespace ccgeom {

class HomogeneousField {
public:
  HomogeneousField() = default;
  explicit HomogeneousField(PolyField p) : weight_(p.weight()), repr_(std::move(p)) {}
  explicit HomogeneousField(CollField c) : weight_(c.weight()), repr_(std::move(c)) {}

  int weight() const { return weight_; }
  bool is_poly() const { return std::holds_alternative<PolyField>(repr_); }
  bool is_coll() const { return std::holds_alternative<CollField>(repr_); }
  const PolyField& poly() const { return std::get<PolyField>(repr_); }
  const CollField& coll() const { return std::get<CollField>(repr_); }
  PolyField& poly() { return std::get<PolyField>(repr_); }
  CollField& coll() { return std::get<CollField>(repr_); }

  // ambient dimension count n+2 (poly: nvars, collocation: 4)
  int ncoords() const { return is_poly() ? poly().nvars() : 4; }

  double eval_cone(const std::vector<double>& xi) const;

private:
  int weight_ = 0;
  std::variant<PolyField, CollField> repr_;
};

// field arithmetic (spec: add requires equal weights; mul adds weights)
HomogeneousField field_add(const HomogeneousField& a, const HomogeneousField& b);
HomogeneousField field_sub(const HomogeneousField& a, const HomogeneousField& b);
HomogeneousField field_mul(const HomogeneousField& a, const HomogeneousField& b);
HomogeneousField field_scale(const HomogeneousField& a, double s);

// D-operator: partial derivatives in homogeneous coordinates, I = 0..n+1.
// Collocation: chain rule through the collar chart; costs one trusted jet row
// unless the input is an exact polynomial in v.
std::vector<HomogeneousField> ambient_derivative(const HomogeneousField& f);

// extension of boundary data to a density of the given weight; ray_constant
// sets all higher jet coefficients of the trivialized function to zero.
HomogeneousField homogeneous_extend(CollarPtr collar, const std::vector<double>& boundary,
                                    int weight, int jet_order_unused = -1);

// Euler residual max |xi^I d_I f - w f| sampled along rays (diagnostic)
double euler_residual(const HomogeneousField& f);

// the Euler field T^I = xi^I as four weight-1 collocation fields
std::vector<CollField> euler_field(const CollarPtr& collar);

} // namespace ccgeom
