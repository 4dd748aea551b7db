#pragma once

// Dense complex matrices of size N <= 4.  Row-major, value semantics.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace goldentile {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

struct CMatrix {
  int n = 0;
  std::vector<cplx> a;

  CMatrix() = default;
  explicit CMatrix(int size) : n(size), a(static_cast<std::size_t>(size * size)) {}

  static CMatrix identity(int size) {
    CMatrix m(size);
    for (int i = 0; i < size; ++i) m(i, i) = 1.0;
    return m;
  }

  cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }

  CMatrix operator*(const CMatrix& o) const {
    CMatrix c(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const cplx x = (*this)(i, k);
        if (x == cplx{}) continue;
        for (int j = 0; j < n; ++j) c(i, j) += x * o(k, j);
      }
    return c;
  }

  CVector operator*(const CVector& v) const {
    CVector w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    return w;
  }

  CMatrix operator-(const CMatrix& o) const {
    CMatrix c = *this;
    for (std::size_t i = 0; i < a.size(); ++i) c.a[i] -= o.a[i];
    return c;
  }

  CMatrix& operator*=(double s) {
    for (auto& x : a) x *= s;
    return *this;
  }

  /// Maximum absolute row sum.
  double norm_inf() const {
    double best = 0;
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += std::abs((*this)(i, j));
      best = std::max(best, s);
    }
    return best;
  }

  /// Largest entry modulus.
  double max_abs() const {
    double best = 0;
    for (const auto& x : a) best = std::max(best, std::abs(x));
    return best;
  }
};

inline double max_abs_diff(const CVector& x, const CVector& y) {
  double best = 0;
  for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, std::abs(x[i] - y[i]));
  return best;
}

}  // namespace goldentile
