#include "weilstar/scalar.hpp"

#include <cmath>
#include <numbers>

namespace weilstar {

Scalar root_of_unity(std::uint64_t n, std::int64_t k) {
  if (n == 0) throw std::invalid_argument("root_of_unity: order must be positive");
  const auto order = static_cast<std::int64_t>(n);
  std::int64_t r = k % order;
  if (r < 0) r += order;
  if (r == 0) return {1.0, 0.0};
  // Exact values on the real and imaginary axes.
  if ((4 * r) % order == 0) {
    switch ((4 * r) / order) {
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(order);
  return {std::cos(angle), std::sin(angle)};
}

double sqrt_nonneg_int(std::uint64_t n) {
  return std::sqrt(static_cast<double>(n));
}

Scalar checked_inverse(Scalar z) {
  if (z == Scalar{0.0, 0.0}) throw DegenerateScalar("inverse of zero scalar");
  return 1.0 / z;
}

}  // namespace weilstar
