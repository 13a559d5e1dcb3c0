#pragma once

#include <gmpxx.h>

namespace rigidlab {

using BigInt = mpz_class;

BigInt binomial(long n, long k);

/// Degree of the Cayley-Menger variety of n points in R^d:
///   prod_{k=0}^{n-d-2} C(n-1+k, n-d-1-k) / C(2k+1, k).
/// Evaluated in exact rationals; throws std::logic_error if the product is
/// not integral and std::invalid_argument if n < d+1.
BigInt cm_degree(int d, int n);

/// Upper bound on planar embeddings modulo rigid motions, C(2n-4, n-2).
/// Cross-checked against 2*cm_degree(2, n). Requires n >= 3.
BigInt planar_bound(int n);

/// Upper bound on spatial embeddings modulo rigid motions, 2*cm_degree(3, n).
/// Cross-checked against spatial_closed_form(n). Requires n >= 4.
BigInt spatial_bound(int n);

/// (2^(n-3) / (n-2)) * C(2n-6, n-3); throws if the division is not exact.
BigInt spatial_closed_form(int n);

/// Oleinik-Petrovskii-Milnor-Thom bound 2*3^(dn-1) for dn-variate quadrics.
BigInt opmt_bound(int d, int n);

struct BoundReport {
  int d = 2;
  int n = 3;
  BigInt cm_degree;
  BigInt embedding_bound;  // 2 * cm_degree
  BigInt opmt;
};

BoundReport bound_report(int d, int n);

}  // namespace rigidlab
