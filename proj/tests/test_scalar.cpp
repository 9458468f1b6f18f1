#include <doctest.h>

#include <cmath>

#include "weilstar/scalar.hpp"

using namespace weilstar;

TEST_CASE("roots of unity") {
  CHECK(root_of_unity(4, 1) == Scalar(0.0, 1.0));
  CHECK(root_of_unity(4, 2) == Scalar(-1.0, 0.0));
  CHECK(root_of_unity(4, -1) == Scalar(0.0, -1.0));
  CHECK(root_of_unity(1, 7) == Scalar(1.0, 0.0));
  const Scalar z = root_of_unity(3, 1);
  CHECK(std::abs(z - Scalar(-0.5, std::sqrt(3.0) / 2)) < 1e-15);
  CHECK(std::abs(root_of_unity(3, 4) - z) < 1e-15);
  CHECK(std::abs(root_of_unity(5, 2) * root_of_unity(5, 3) - 1.0) < 1e-15);
  CHECK_THROWS_AS(root_of_unity(0, 1), std::invalid_argument);
}

TEST_CASE("helpers") {
  CHECK(sqrt_nonneg_int(9) == 3.0);
  CHECK(std::abs(sqrt_nonneg_int(27) - 3.0 * std::sqrt(3.0)) < 1e-14);
  CHECK(checked_inverse(Scalar(0.0, 2.0)) == Scalar(0.0, -0.5));
  CHECK_THROWS_AS(checked_inverse(Scalar(0.0, 0.0)), DegenerateScalar);
  CHECK(approx_equal(Scalar(1.0, 0.0), Scalar(1.0, 1e-12)));
  CHECK_FALSE(approx_equal(Scalar(1.0, 0.0), Scalar(1.0, 1e-6)));
  CHECK_THROWS_AS(approx_equal(1.0, 1.0, -1.0), std::invalid_argument);
}
