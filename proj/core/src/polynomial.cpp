#include "goldentile/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace goldentile {

namespace {

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Polynomial derivative(const Polynomial& p) {
  Polynomial d;
  const std::size_t deg = p.size() - 1;
  for (std::size_t i = 0; i < deg; ++i) d.push_back(p[i] * static_cast<std::int64_t>(deg - i));
  return d;
}

int sgn(long double x) { return (x > 0) - (x < 0); }

}  // namespace

Polynomial charpoly(const IntMatrix& a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("charpoly: matrix is not square");
  Polynomial c(n + 1, 0);
  c[0] = 1;
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    m = matmul(a, m);
    for (std::size_t i = 0; i < n; ++i) m[i][i] += c[k - 1];
    const IntMatrix am = matmul(a, m);
    std::int64_t tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am[i][i];
    if (tr % static_cast<std::int64_t>(k) != 0) throw std::logic_error("charpoly: inexact division");
    c[k] = -tr / static_cast<std::int64_t>(k);
  }
  return c;
}

long double poly_eval(const Polynomial& p, long double x) {
  long double r = 0;
  for (auto c : p) r = r * x + static_cast<long double>(c);
  return r;
}

std::complex<long double> poly_eval(const Polynomial& p, std::complex<long double> z) {
  std::complex<long double> r = 0;
  for (auto c : p) r = r * z + static_cast<long double>(c);
  return r;
}

std::vector<std::complex<long double>> complex_roots(const Polynomial& p_in) {
  Polynomial p = p_in;
  while (!p.empty() && p.front() == 0) p.erase(p.begin());
  if (p.size() < 2) return {};
  std::vector<std::complex<long double>> zeros;
  while (p.back() == 0) {  // roots at the origin
    zeros.emplace_back(0);
    p.pop_back();
  }
  const std::size_t n = p.size() - 1;
  const Polynomial dp = derivative(p);
  long double bound = 0;
  for (std::size_t i = 1; i < p.size(); ++i)
    bound = std::max(bound, std::abs(static_cast<long double>(p[i]) / static_cast<long double>(p[0])));
  bound += 1;

  // Initial guesses on a circle, rotated off the real axis to avoid symmetric stalls.
  std::vector<std::complex<long double>> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long double ang = 2.0L * 3.14159265358979323846264L * (static_cast<long double>(i) + 0.25L) /
                            static_cast<long double>(n);
    z[i] = std::polar(0.5L * bound, ang);
  }
  for (int iter = 0; iter < 500; ++iter) {
    long double maxstep = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto f = poly_eval(p, z[i]);
      const auto df = poly_eval(dp, z[i]);
      if (f == std::complex<long double>(0)) continue;
      const auto ratio = f / df;
      std::complex<long double> s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += 1.0L / (z[i] - z[j]);
      const auto w = ratio / (1.0L - ratio * s);
      z[i] -= w;
      maxstep = std::max(maxstep, std::abs(w) / std::max(1.0L, std::abs(z[i])));
    }
    if (maxstep < 1e-19L) break;
  }
  for (auto& r : z) {
    for (int k = 0; k < 3; ++k) {
      const auto df = poly_eval(dp, r);
      if (std::abs(df) == 0) break;
      r -= poly_eval(p, r) / df;
    }
  }
  z.insert(z.end(), zeros.begin(), zeros.end());
  std::sort(z.begin(), z.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return z;
}

long double largest_real_root(const Polynomial& p) {
  const auto roots = complex_roots(p);
  long double best = -INFINITY;
  for (const auto& r : roots)
    if (std::abs(r.imag()) <= 1e-9L * std::max(1.0L, std::abs(r))) best = std::max(best, r.real());
  if (!std::isfinite(best)) throw std::domain_error("largest_real_root: polynomial has no real root");

  // Certify with a sign change and refine.
  long double lo = best - 1e-6L * std::max(1.0L, std::abs(best));
  long double hi = best + 1e-6L * std::max(1.0L, std::abs(best));
  const int shi = sgn(poly_eval(p, hi));
  if (sgn(poly_eval(p, lo)) == shi) return best;  // even multiplicity; nothing to bisect
  for (int i = 0; i < 60; ++i) {
    const long double mid = 0.5L * (lo + hi);
    if (sgn(poly_eval(p, mid)) == shi) hi = mid;
    else lo = mid;
  }
  long double x = 0.5L * (lo + hi);
  const Polynomial dp = derivative(p);
  for (int i = 0; i < 4; ++i) {
    const long double df = poly_eval(dp, x);
    if (df == 0) break;
    const long double nx = x - poly_eval(p, x) / df;
    if (nx < lo || nx > hi) break;
    x = nx;
  }
  return x;
}

}  // namespace goldentile
