// Truncated power series ("jets") in one variable, stored as coefficient
// spans. These are the scalar kernels under the collocation fields and the
// collar quadrature.
#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace ccgeom::jets {

// c = a * b truncated at order K (inclusive); c may not alias a or b.
inline void mul(const double* a, const double* b, double* c, int K) {
  for (int k = 0; k <= K; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += a[j] * b[k - j];
    c[k] = s;
  }
}

// c = a / b with b[0] != 0, truncated at order K; c must not alias a or b.
inline void div(const double* a, const double* b, double* c, int K) {
  assert(b[0] != 0.0);
  for (int k = 0; k <= K; ++k) {
    double s = a[k];
    for (int j = 0; j < k; ++j) s -= c[j] * b[k - j];
    c[k] = s / b[0];
  }
}

// c = sqrt(a), a[0] > 0
inline void sqrt(const double* a, double* c, int K) {
  assert(a[0] > 0.0);
  c[0] = std::sqrt(a[0]);
  for (int k = 1; k <= K; ++k) {
    double s = a[k];
    for (int j = 1; j < k; ++j) s -= c[j] * c[k - j];
    c[k] = s / (2.0 * c[0]);
  }
}

// c = a(x)^p for real exponent p, a[0] > 0 (binomial via the ODE
// a c' = p a' c, i.e. c_k from lower orders)
inline void pow(const double* a, double p, double* c, int K) {
  assert(a[0] > 0.0);
  c[0] = std::pow(a[0], p);
  for (int k = 1; k <= K; ++k) {
    // k a0 c_k = sum_{j=1..k} ((p+1) j - k) a_j c_{k-j}
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += ((p + 1.0) * j - k) * a[j] * c[k - j];
    c[k] = s / (k * a[0]);
  }
}

// composition c = f(g(x)) with g[0] == 0; c may not alias f or g.
inline void compose(const double* f, int Kf, const double* g, double* c, int K) {
  assert(g[0] == 0.0);
  std::vector<double> acc(K + 1, 0.0), tmp(K + 1, 0.0);
  // Horner: acc = f[Kf]; acc = acc*g + f[k]
  acc[0] = f[Kf];
  for (int k = Kf - 1; k >= 0; --k) {
    mul(acc.data(), g, tmp.data(), K);
    tmp[0] += f[k];
    acc.swap(tmp);
  }
  for (int k = 0; k <= K; ++k) c[k] = acc[k];
}

// reversion: given s(v) = s1 v + s2 v^2 + ... with s1 != 0, return v(s)
// truncated at order K (v[0] = 0).
inline void revert(const double* s, double* v, int K) {
  assert(s[0] == 0.0 && s[1] != 0.0);
  std::vector<double> cur(K + 1, 0.0), comp(K + 1, 0.0);
  cur[1] = 1.0 / s[1];
  for (int it = 0; it < K; ++it) {
    // cur <- (x - (s(cur) - s1*cur)) / s1 : fixed point exact order by order
    compose(s, K, cur.data(), comp.data(), K);
    for (int k = 0; k <= K; ++k) comp[k] -= s[1] * cur[k];
    for (int k = 0; k <= K; ++k) {
      double rhs = (k == 1 ? 1.0 : 0.0) - comp[k];
      cur[k] = rhs / s[1];
    }
  }
  for (int k = 0; k <= K; ++k) v[k] = cur[k];
}

inline double eval(const double* a, int K, double x) {
  double r = a[K];
  for (int k = K - 1; k >= 0; --k) r = r * x + a[k];
  return r;
}

} // namespace ccgeom::jets
