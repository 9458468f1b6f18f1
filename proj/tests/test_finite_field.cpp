#include <doctest.h>

#include <cmath>
#include <set>

#include "weilstar/finite_field.hpp"

using namespace weilstar;

namespace {

// Schoolbook arithmetic on coefficient vectors modulo a monic polynomial.
std::vector<int> poly_mulmod(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& mod, int p) {
  const std::size_t e = mod.size() - 1;
  std::vector<int> prod(2 * e, 0);
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (std::size_t k = prod.size(); k-- > e;) {
    const int c = prod[k];
    for (std::size_t i = 0; i <= e; ++i) prod[k - e + i] = ((prod[k - e + i] - c * mod[i]) % p + p) % p;
  }
  prod.resize(e);
  return prod;
}

}  // namespace

TEST_CASE("prime field F_5 matches integer arithmetic") {
  FiniteField f({5, 1, {}});
  CHECK(f.q() == 5);
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      CHECK(f.add(f.from_int(a), f.from_int(b)) == f.from_int((a + b) % 5));
      CHECK(f.mul(f.from_int(a), f.from_int(b)) == f.from_int((a * b) % 5));
    }
    if (a != 0) CHECK(f.mul(f.from_int(a), f.inv(f.from_int(a))) == f.one());
  }
  CHECK(f.from_int(-1) == f.from_int(4));
  CHECK_THROWS_AS(f.inv(f.zero()), std::domain_error);
}

TEST_CASE("F_9 with modulus x^2 + 1 agrees with schoolbook arithmetic") {
  const std::vector<std::uint32_t> modulus{1, 0, 1};
  FiniteField f({3, 2, modulus});
  CHECK(f.q() == 9);
  const std::vector<int> mod{1, 0, 1};
  for (auto a : f.elements()) {
    for (auto b : f.elements()) {
      const auto ca = f.coeffs(a), cb = f.coeffs(b);
      const std::vector<int> ia(ca.begin(), ca.end()), ib(cb.begin(), cb.end());
      const auto expected = poly_mulmod(ia, ib, mod, 3);
      const auto got = f.coeffs(f.mul(a, b));
      CHECK(std::vector<int>(got.begin(), got.end()) == expected);
    }
  }
  for (auto a : f.elements()) {
    if (a == f.zero()) continue;
    CHECK(f.mul(a, f.inv(a)) == f.one());
    // Tr(a) = a + a^3 lies in F_3.
    const auto a3 = f.mul(a, f.mul(a, a));
    const auto tr = f.add(a, a3);
    CHECK(f.coeffs(tr)[1] == 0);
    CHECK(f.absolute_trace(a) == f.coeffs(tr)[0]);
  }
}

TEST_CASE("invalid field parameters are rejected") {
  CHECK_THROWS(FiniteField({4, 1, {}}));
  CHECK_THROWS(FiniteField({2, 1, {}}));
  CHECK_THROWS(FiniteField({3, 2, {2, 0, 1}}));  // x^2 - 1 is reducible
  CHECK_THROWS(FiniteField({3, 4, {}}));
}

TEST_CASE("canonical character and quadratic character") {
  FiniteField f({3, 1, {}});
  CHECK(std::abs(f.psi(f.one()) - Scalar(-0.5, std::sqrt(3.0) / 2)) < 1e-15);
  CHECK(f.psi(f.zero()) == Scalar(1.0, 0.0));
  FiniteField g({7, 1, {}});
  std::set<std::uint32_t> squares;
  for (int t = 1; t < 7; ++t) squares.insert(static_cast<std::uint32_t>((t * t) % 7));
  for (int a = 1; a < 7; ++a) {
    const bool sq = squares.count(static_cast<std::uint32_t>(a)) > 0;
    CHECK(g.is_square(g.from_int(a)) == sq);
    CHECK(g.quadratic_character(g.from_int(a)) == (sq ? 1 : -1));
  }
  CHECK(g.quadratic_character(g.zero()) == 0);
  CHECK(is_prime(7));
  CHECK_FALSE(is_prime(9));
}
