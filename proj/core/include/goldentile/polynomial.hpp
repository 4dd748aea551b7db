#pragma once

// Integer polynomials: characteristic polynomials of small integer
// matrices, complex root finding, and the largest real root used for
// Hausdorff dimensions.  Coefficients are stored highest degree first.

#include <complex>
#include <cstdint>
#include <vector>

namespace goldentile {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using Polynomial = std::vector<std::int64_t>;

/// det(x I - A) by the Faddeev-LeVerrier recursion, exact in integers.
Polynomial charpoly(const IntMatrix& a);

long double poly_eval(const Polynomial& p, long double x);
std::complex<long double> poly_eval(const Polynomial& p, std::complex<long double> z);

/// All complex roots (Aberth-Ehrlich iteration, Newton polished), sorted by
/// descending real part, then descending imaginary part.
std::vector<std::complex<long double>> complex_roots(const Polynomial& p);

/// Largest real root: bracketed by the Cauchy bound, refined by bisection
/// and finished with safeguarded Newton steps.
long double largest_real_root(const Polynomial& p);

}  // namespace goldentile
