#include "ccgeom/poly_field.hpp"

#include <cmath>
#include <stdexcept>

namespace ccgeom {

PolyField PolyField::constant(int nvars, double c) {
  PolyField p(nvars, 0);
  if (c != 0.0) p.terms_[Monomial(nvars, 0)] = c;
  return p;
}

PolyField PolyField::quadric(int nvars, const std::vector<double>& a) {
  if (static_cast<int>(a.size()) != nvars * nvars)
    throw std::invalid_argument("quadric: coefficient matrix size mismatch");
  PolyField p(nvars, 2);
  for (int i = 0; i < nvars; ++i)
    for (int j = 0; j < nvars; ++j) {
      double c = 0.5 * a[i * nvars + j];
      if (c == 0.0) continue;
      Monomial m(nvars, 0);
      m[i] += 1;
      m[j] += 1;
      p.add_term(m, c);
    }
  return p;
}

PolyField PolyField::variable(int nvars, int i) {
  PolyField p(nvars, 1);
  Monomial m(nvars, 0);
  m[i] = 1;
  p.terms_[m] = 1.0;
  return p;
}

void PolyField::add_term(const Monomial& m, double c) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (c != 0.0) terms_[m] = c;
  } else {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

PolyField PolyField::operator+(const PolyField& o) const {
  if (weight_ != o.weight_ && !is_zero() && !o.is_zero())
    throw std::invalid_argument("poly add: weight mismatch");
  PolyField r = *this;
  if (r.is_zero()) r.weight_ = o.weight_;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

PolyField PolyField::operator-(const PolyField& o) const { return *this + o.scaled(-1.0); }

PolyField PolyField::operator*(const PolyField& o) const {
  PolyField r(nvars_, weight_ + o.weight_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(nvars_);
      for (int i = 0; i < nvars_; ++i) m[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
      r.add_term(m, ca * cb);
    }
  return r;
}

PolyField PolyField::scaled(double s) const {
  PolyField r(nvars_, weight_);
  if (s == 0.0) return r;
  for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
  return r;
}

PolyField PolyField::partial(int i) const {
  PolyField r(nvars_, weight_ - 1);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial d = m;
    d[i] -= 1;
    r.add_term(d, c * m[i]);
  }
  return r;
}

double PolyField::eval(const std::vector<double>& xi) const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int e = 0; e < m[i]; ++e) t *= xi[i];
    s += t;
  }
  return s;
}

bool PolyField::homogeneous() const {
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (auto e : m) d += e;
    if (d != weight_) return false;
  }
  return true;
}

PolyField poly_det(const std::vector<PolyField>& m, int dim) {
  if (dim == 1) return m[0];
  // expand along the first row into (dim-1) minors
  PolyField acc;
  bool first = true;
  for (int j = 0; j < dim; ++j) {
    if (m[j].is_zero()) continue;
    std::vector<PolyField> minor;
    minor.reserve((dim - 1) * (dim - 1));
    for (int r = 1; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        if (c != j) minor.push_back(m[r * dim + c]);
    PolyField term = m[j] * poly_det(minor, dim - 1);
    if (j % 2) term = term.scaled(-1.0);
    if (first) {
      acc = term;
      first = false;
    } else {
      acc = acc + term;
    }
  }
  if (first && dim > 0) acc = PolyField(m[0].nvars(), 0); // all-zero row
  return acc;
}

} // namespace ccgeom
