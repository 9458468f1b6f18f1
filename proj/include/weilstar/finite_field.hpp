#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "weilstar/scalar.hpp"

namespace weilstar {

// F_q with q = p^e, p an odd prime, e <= 3. `modulus` lists the coefficients of
// the defining polynomial from the constant term up to the leading 1; it may be
// left empty when e == 1.
struct FieldSpec {
  std::uint32_t p = 3;
  std::uint32_t e = 1;
  std::vector<std::uint32_t> modulus;

  std::uint32_t q() const;
  bool operator==(const FieldSpec&) const = default;
};

// A field element by its position in the canonical enumeration: the coefficient
// vector (c_0, ..., c_{e-1}) read as base-p digits with c_0 most significant.
struct FieldElement {
  std::uint32_t code = 0;
  auto operator<=>(const FieldElement&) const = default;
};

class FiniteField {
 public:
  static constexpr std::uint32_t kMaxOrder = 1024;

  explicit FiniteField(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t p() const { return spec_.p; }
  std::uint32_t e() const { return spec_.e; }
  std::uint32_t q() const { return q_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return one_; }
  // Image of an integer in the prime subfield.
  FieldElement from_int(std::int64_t n) const;
  FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(FieldElement a) const;

  FieldElement add(FieldElement a, FieldElement b) const { return {add_[a.code * q_ + b.code]}; }
  FieldElement mul(FieldElement a, FieldElement b) const { return {mul_[a.code * q_ + b.code]}; }
  FieldElement neg(FieldElement a) const { return {neg_[a.code]}; }
  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
  FieldElement inv(FieldElement a) const;

  // All q elements in canonical order.
  std::vector<FieldElement> elements() const;

  // Tr_{F_q/F_p}(a) as an integer in [0, p).
  std::uint32_t absolute_trace(FieldElement a) const { return trace_[a.code]; }
  // The canonical additive character psi(t) = exp(2 pi i Tr(t) / p).
  Scalar psi(FieldElement a) const { return psi_[trace_[a.code]]; }
  // psi evaluated at an element given by its absolute trace.
  Scalar psi_of_trace(std::uint32_t tr) const { return psi_[tr]; }

  bool is_square(FieldElement a) const;
  // +1 on nonzero squares, -1 on non-squares, 0 at zero.
  int quadratic_character(FieldElement a) const;

 private:
  std::vector<std::uint32_t> poly_mul_mod(std::span<const std::uint32_t> a,
                                          std::span<const std::uint32_t> b) const;

  FieldSpec spec_;
  std::uint32_t q_ = 0;
  FieldElement one_;
  std::vector<std::uint32_t> add_, mul_, neg_, inv_, trace_;
  std::vector<Scalar> psi_;
  std::vector<bool> square_;
};

bool is_prime(std::uint32_t n);

}  // namespace weilstar
