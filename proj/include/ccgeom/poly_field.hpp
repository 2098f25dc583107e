// Exact sparse homogeneous polynomials in the cone coordinates
// xi^0..xi^{n+1}. A density of weight w is a polynomial with every monomial
// of total degree w; derivatives, products and determinants stay exact.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace ccgeom {

class PolyField {
public:
  using Monomial = std::vector<std::uint8_t>; // exponent per variable

  PolyField() = default;
  PolyField(int nvars, int weight) : nvars_(nvars), weight_(weight) {}

  static PolyField constant(int nvars, double c); // weight 0
  // rho = (1/2) a_IJ xi^I xi^J from a symmetric matrix (row-major, nvars^2)
  static PolyField quadric(int nvars, const std::vector<double>& a);
  static PolyField variable(int nvars, int i); // xi^i, weight 1

  int nvars() const { return nvars_; }
  int weight() const { return weight_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Monomial& m, double c);

  PolyField operator+(const PolyField& o) const;
  PolyField operator-(const PolyField& o) const;
  PolyField operator*(const PolyField& o) const;
  PolyField scaled(double s) const;
  PolyField partial(int i) const; // d/dxi^i, weight drops by one
  double eval(const std::vector<double>& xi) const;

  // checks every monomial has total degree == weight
  bool homogeneous() const;

  const std::map<Monomial, double>& terms() const { return terms_; }

private:
  int nvars_ = 0;
  int weight_ = 0;
  std::map<Monomial, double> terms_;
};

// determinant of a matrix of polynomials (cofactor expansion; exact)
PolyField poly_det(const std::vector<PolyField>& m, int dim);

} // namespace ccgeom
