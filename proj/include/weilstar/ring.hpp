#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "weilstar/finite_field.hpp"

namespace weilstar {

enum class Involution { NegateX, Identity };

// A_m = F_q[x]/(x^m) with x* = -x (or the identity involution).
struct TruncatedPolySpec {
  FieldSpec field;
  std::uint32_t m = 1;
  Involution involution = Involution::NegateX;
  bool operator==(const TruncatedPolySpec&) const = default;
};

// M(n, F_q) with the transpose as involution.
struct MatrixRingSpec {
  FieldSpec field;
  std::uint32_t n = 1;
  bool operator==(const MatrixRingSpec&) const = default;
};

// The involutive double of R = M(r, F_q): pairs (x1, x2) with componentwise
// product and (x1, x2)* = (x2^T, x1^T).
struct DoublingSpec {
  FieldSpec field;
  std::uint32_t r = 1;
  bool operator==(const DoublingSpec&) const = default;
};

using RingSpec = std::variant<TruncatedPolySpec, MatrixRingSpec, DoublingSpec>;

const FieldSpec& field_spec(const RingSpec& spec);
std::string describe(const RingSpec& spec);

class Ring;

// A ring element: its index in the canonical enumeration of its ring, tagged
// with the owning ring so that mixing rings is caught.
class RingElement {
 public:
  RingElement() = default;
  std::uint32_t code() const { return code_; }
  std::uint32_t ring_id() const { return ring_; }

  friend bool operator==(const RingElement&, const RingElement&) = default;
  friend auto operator<=>(const RingElement&, const RingElement&) = default;

 private:
  friend class Ring;
  RingElement(std::uint32_t code, std::uint32_t ring) : ring_(ring), code_(code) {}
  // ring_ first so that ordering groups by ring, then canonical order.
  std::uint32_t ring_ = 0;
  std::uint32_t code_ = 0;
};

enum class Subset { All, Symmetric, Units, SymmetricUnits, CentralSymmetricUnits };

class MixedRingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAUnit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A finite ring with involution. Elements are enumerated canonically: the
// payload (coefficients, matrix entries in row-major order, or the two matrices
// of a doubled pair) read as base-q digits, first entry most significant.
class Ring {
 public:
  static constexpr std::uint64_t kMaxEnumerable = 1'000'000;
  static constexpr std::uint64_t kMaxTabulated = 1024;

  explicit Ring(const RingSpec& spec);
  Ring(const Ring&) = delete;
  Ring& operator=(const Ring&) = delete;

  const RingSpec& spec() const { return spec_; }
  const FiniteField& field() const { return field_; }
  std::uint32_t size() const { return size_; }
  std::uint32_t id() const { return id_; }
  std::size_t payload_size() const { return payload_size_; }

  bool is_truncated_poly() const { return std::holds_alternative<TruncatedPolySpec>(spec_); }
  // m for A_m; throws for other variants.
  std::uint32_t degree_bound() const;
  Involution involution() const;

  RingElement element(std::uint32_t code) const;
  RingElement zero() const { return {0, id_}; }
  RingElement one() const { return one_; }
  RingElement from_int(std::int64_t n) const;
  RingElement scalar(FieldElement c) const;
  // The generator x of A_m (m >= 2).
  RingElement x() const;
  RingElement from_payload(std::span<const FieldElement> payload) const;
  // Payload entries given as integers: codes of field elements, reduced mod p
  // (negatives allowed) when the field is prime.
  RingElement from_ints(std::span<const std::int64_t> entries) const;
  std::vector<FieldElement> payload(RingElement a) const;

  RingElement add(RingElement a, RingElement b) const;
  RingElement sub(RingElement a, RingElement b) const { return add(a, neg(b)); }
  RingElement mul(RingElement a, RingElement b) const;
  RingElement neg(RingElement a) const;
  RingElement star(RingElement a) const;
  RingElement inv(RingElement a) const;
  bool is_unit(RingElement a) const;
  bool is_symmetric(RingElement a) const;
  bool is_central(RingElement a) const;

  // Raw index arithmetic for inner loops; no ownership checks.
  std::uint32_t add_code(std::uint32_t a, std::uint32_t b) const {
    return tabulated_ ? add_table_[std::size_t{a} * size_ + b] : add_slow(a, b);
  }
  std::uint32_t mul_code(std::uint32_t a, std::uint32_t b) const {
    return tabulated_ ? mul_table_[std::size_t{a} * size_ + b] : mul_slow(a, b);
  }
  std::uint32_t neg_code(std::uint32_t a) const { return neg_table_[a]; }
  std::uint32_t star_code(std::uint32_t a) const { return star_table_[a]; }

  std::vector<RingElement> enumerate(Subset subset) const;

  // A_m only: tr(sum a_i x^i) = a_{m-1}.
  FieldElement trace_tr(RingElement a) const;
  FieldElement trace_code(std::uint32_t a) const;
  // Q(t) = t* t and B_Q(t, s) = t* s + t s*.
  RingElement quadratic_form(RingElement t) const;
  RingElement polar_form(RingElement t, RingElement s) const;

  std::string to_string(RingElement a) const;
  // Comma-separated payload codes; inverse of from_ints for canonical input.
  std::string to_literal(RingElement a) const;

 private:
  void check(RingElement a) const;
  std::vector<FieldElement> decode(std::uint32_t code) const;
  std::uint32_t encode(std::span<const FieldElement> payload) const;
  std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;
  std::vector<FieldElement> mul_payload(const std::vector<FieldElement>& a,
                                        const std::vector<FieldElement>& b) const;
  std::vector<FieldElement> star_payload(const std::vector<FieldElement>& a) const;
  bool inverse_payload(const std::vector<FieldElement>& a, std::vector<FieldElement>& out) const;

  RingSpec spec_;
  FiniteField field_;
  std::uint32_t id_;
  std::size_t payload_size_ = 0;
  std::uint32_t size_ = 0;
  RingElement one_;
  bool tabulated_ = false;
  std::vector<std::uint32_t> add_table_, mul_table_;
  std::vector<std::uint32_t> neg_table_, star_table_;
  // UINT32_MAX marks a non-unit.
  std::vector<std::uint32_t> inv_table_;
  std::vector<bool> central_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(const RingSpec& spec) { return std::make_shared<const Ring>(spec); }

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// First symmetric s, in canonical order, with a + s c a unit. Requires
// a* c = c* a and A a + A c = A.
RingElement coprime_reduction(const Ring& ring, RingElement a, RingElement c);

// First symmetric unit x, in canonical order, such that a - x^{-1} and b + x are
// symmetric units. Requires a, b symmetric non-units of A_m.
RingElement symmetric_unit_shift(const Ring& ring, RingElement a, RingElement b);

// Rank of a rows x cols matrix over the field (row-major).
std::size_t matrix_rank(const FiniteField& field, std::vector<FieldElement> entries, std::size_t rows,
                        std::size_t cols);

}  // namespace weilstar
