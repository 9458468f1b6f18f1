#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace weilstar {

// Every character value, Gauss sum, cocycle value and operator entry lives here.
using Scalar = std::complex<double>;

// Global equality tolerance for scalars. Sums never exceed q^{2m} terms at the
// sizes this library targets, so accumulated rounding stays orders of magnitude
// below it.
inline constexpr double kDefaultTolerance = 1e-9;

class DegenerateScalar : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// exp(2*pi*i*k/n), periodic in k. Quarter turns are returned exactly.
Scalar root_of_unity(std::uint64_t n, std::int64_t k);

// sqrt(n) for a set cardinality n.
double sqrt_nonneg_int(std::uint64_t n);

// 1/z; throws DegenerateScalar when z == 0.
Scalar checked_inverse(Scalar z);

inline bool approx_equal(Scalar a, Scalar b, double tol = kDefaultTolerance) {
  if (tol < 0.0) throw std::invalid_argument("approx_equal: negative tolerance");
  return std::abs(a - b) <= tol;
}

}  // namespace weilstar
