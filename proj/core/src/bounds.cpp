#include "rigidlab/bounds.hpp"

#include <stdexcept>
#include <string>

namespace rigidlab {

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

BigInt cm_degree(int d, int n) {
  if (d < 1) throw std::invalid_argument("dimension must be at least 1");
  if (n < d + 1) {
    throw std::invalid_argument("cm_degree needs n >= d+1 (got d = " + std::to_string(d) +
                                ", n = " + std::to_string(n) + ")");
  }
  mpq_class product = 1;
  for (long k = 0; k <= n - d - 2; ++k) {
    product *= mpq_class(binomial(n - 1 + k, n - d - 1 - k), binomial(2 * k + 1, k));
    product.canonicalize();
  }
  if (product.get_den() != 1) {
    throw std::logic_error("Cayley-Menger degree product is not integral for d = " +
                           std::to_string(d) + ", n = " + std::to_string(n));
  }
  return product.get_num();
}

BigInt planar_bound(int n) {
  if (n < 3) throw std::invalid_argument("planar_bound needs n >= 3");
  BigInt bound = binomial(2L * n - 4, n - 2);
  if (bound != 2 * cm_degree(2, n)) {
    throw std::logic_error("C(2n-4, n-2) disagrees with 2*D(2,n) at n = " + std::to_string(n));
  }
  return bound;
}

BigInt spatial_closed_form(int n) {
  if (n < 4) throw std::invalid_argument("spatial closed form needs n >= 4");
  BigInt numerator = binomial(2L * n - 6, n - 3);
  numerator <<= static_cast<mp_bitcnt_t>(n - 3);
  const BigInt divisor = n - 2;
  if (numerator % divisor != 0) {
    throw std::logic_error("spatial closed form is not integral at n = " + std::to_string(n));
  }
  return numerator / divisor;
}

BigInt spatial_bound(int n) {
  if (n < 4) throw std::invalid_argument("spatial_bound needs n >= 4");
  BigInt bound = 2 * cm_degree(3, n);
  if (bound != spatial_closed_form(n)) {
    throw std::logic_error("2*D(3,n) disagrees with the closed form at n = " + std::to_string(n));
  }
  return bound;
}

BigInt opmt_bound(int d, int n) {
  if (d < 1 || n < 1) throw std::invalid_argument("opmt_bound needs d, n >= 1");
  BigInt power;
  mpz_ui_pow_ui(power.get_mpz_t(), 3, static_cast<unsigned long>(d) * n - 1);
  return 2 * power;
}

BoundReport bound_report(int d, int n) {
  BoundReport r;
  r.d = d;
  r.n = n;
  r.cm_degree = cm_degree(d, n);
  r.embedding_bound = 2 * r.cm_degree;
  r.opmt = opmt_bound(d, n);
  return r;
}

}  // namespace rigidlab
