#pragma once

// Dense univariate polynomials over Q(i), coefficients stored low degree first.

#include <optional>
#include <vector>

#include "nil2kit/matrix.hpp"

namespace nil2kit::detail {

using Poly = std::vector<GaussQ>;

void trim(Poly& p);
int degree(const Poly& p);  ///< -1 for the zero polynomial
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly derivative(const Poly& p);
Poly make_monic(Poly p);
/// Monic gcd.
Poly poly_gcd(Poly a, Poly b);
GaussQ evaluate(const Poly& p, const GaussQ& x);
/// p(-x)
Poly negate_argument(const Poly& p);

/// det(xI - a) via exact Hessenberg reduction.
Poly characteristic_polynomial(const Matrix& a);

/// Distinct roots of p in Q(i) with their multiplicities, or nullopt when some
/// root is not a Gaussian rational.
std::optional<std::vector<std::pair<GaussQ, int>>> gaussian_rational_roots(const Poly& p);

/// Double-precision approximations of all roots of p (companion matrix).
std::vector<Complex> approximate_roots(const Poly& p);

}  // namespace nil2kit::detail
