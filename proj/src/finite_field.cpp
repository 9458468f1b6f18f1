#include "weilstar/finite_field.hpp"

#include <stdexcept>
#include <string>

namespace weilstar {

std::uint32_t FieldSpec::q() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) q *= p;
  return static_cast<std::uint32_t>(q);
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

void validate(FieldSpec& spec) {
  if (!is_prime(spec.p) || spec.p == 2) {
    throw std::invalid_argument("field characteristic must be an odd prime, got " + std::to_string(spec.p));
  }
  if (spec.e < 1 || spec.e > 3) {
    throw std::invalid_argument("extension degree must be 1, 2 or 3");
  }
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < spec.e; ++i) q *= spec.p;
  if (q > FiniteField::kMaxOrder) {
    throw std::invalid_argument("field order " + std::to_string(q) + " exceeds supported maximum");
  }
  if (spec.e == 1 && spec.modulus.empty()) spec.modulus = {0, 1};
  if (spec.modulus.size() != spec.e + 1) {
    throw std::invalid_argument("modulus must have e+1 coefficients (constant term first)");
  }
  for (auto& c : spec.modulus) c %= spec.p;
  if (spec.modulus.back() != 1) throw std::invalid_argument("modulus must be monic");
  // Degree <= 3: irreducible iff no root in F_p.
  if (spec.e >= 2) {
    for (std::uint32_t x = 0; x < spec.p; ++x) {
      std::uint64_t acc = 0;
      for (std::size_t i = spec.modulus.size(); i-- > 0;) acc = (acc * x + spec.modulus[i]) % spec.p;
      if (acc == 0) throw std::invalid_argument("modulus is reducible over F_p (root " + std::to_string(x) + ")");
    }
  }
}

}  // namespace

FiniteField::FiniteField(FieldSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  q_ = spec_.q();
  const std::uint32_t p = spec_.p;
  const std::uint32_t e = spec_.e;

  std::vector<std::vector<std::uint32_t>> c(q_);
  for (std::uint32_t code = 0; code < q_; ++code) c[code] = coeffs(FieldElement{code});
  {
    std::vector<std::uint32_t> unit(e, 0);
    unit[0] = 1;
    one_ = from_coeffs(unit);
  }

  add_.resize(static_cast<std::size_t>(q_) * q_);
  mul_.resize(static_cast<std::size_t>(q_) * q_);
  neg_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    std::vector<std::uint32_t> n(e);
    for (std::uint32_t i = 0; i < e; ++i) n[i] = (p - c[a][i]) % p;
    neg_[a] = from_coeffs(n).code;
    for (std::uint32_t b = 0; b < q_; ++b) {
      std::vector<std::uint32_t> s(e);
      for (std::uint32_t i = 0; i < e; ++i) s[i] = (c[a][i] + c[b][i]) % p;
      add_[a * q_ + b] = from_coeffs(s).code;
      mul_[a * q_ + b] = from_coeffs(poly_mul_mod(c[a], c[b])).code;
    }
  }

  inv_.assign(q_, 0);
  for (std::uint32_t a = 1; a < q_; ++a) {
    for (std::uint32_t b = 1; b < q_; ++b) {
      if (mul_[a * q_ + b] == one_.code) {
        inv_[a] = b;
        break;
      }
    }
  }

  // Tr(t) = t + t^p + ... + t^{p^{e-1}} lies in the prime field, i.e. has only
  // a constant coefficient.
  trace_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    FieldElement term{a};
    FieldElement sum = zero();
    for (std::uint32_t i = 0; i < e; ++i) {
      sum = add(sum, term);
      FieldElement pow = one_;
      for (std::uint32_t k = 0; k < p; ++k) pow = mul(pow, term);
      term = pow;
    }
    const auto sc = coeffs(sum);
    for (std::uint32_t i = 1; i < e; ++i) {
      if (sc[i] != 0) throw std::logic_error("field trace left the prime subfield");
    }
    trace_[a] = sc[0];
  }

  psi_.resize(p);
  for (std::uint32_t t = 0; t < p; ++t) psi_[t] = root_of_unity(p, t);

  square_.assign(q_, false);
  for (std::uint32_t a = 1; a < q_; ++a) square_[mul_[a * q_ + a]] = true;
}

std::vector<std::uint32_t> FiniteField::poly_mul_mod(std::span<const std::uint32_t> a,
                                                     std::span<const std::uint32_t> b) const {
  const std::uint32_t p = spec_.p;
  const std::uint32_t e = spec_.e;
  std::vector<std::uint64_t> prod(2 * e, 0);
  for (std::uint32_t i = 0; i < e; ++i) {
    for (std::uint32_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  // Reduce x^k for k >= e using the monic modulus.
  for (std::size_t k = prod.size(); k-- > e;) {
    const std::uint64_t lead = prod[k];
    if (lead == 0) continue;
    prod[k] = 0;
    for (std::uint32_t i = 0; i < e; ++i) {
      prod[k - e + i] = (prod[k - e + i] + (p - lead) * spec_.modulus[i]) % p;
    }
  }
  std::vector<std::uint32_t> out(e);
  for (std::uint32_t i = 0; i < e; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return out;
}

FieldElement FiniteField::from_int(std::int64_t n) const {
  const auto p = static_cast<std::int64_t>(spec_.p);
  std::int64_t r = n % p;
  if (r < 0) r += p;
  std::vector<std::uint32_t> c(spec_.e, 0);
  c[0] = static_cast<std::uint32_t>(r);
  return from_coeffs(c);
}

FieldElement FiniteField::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != spec_.e) throw std::invalid_argument("field element needs e coefficients");
  std::uint32_t code = 0;
  for (std::uint32_t c : coeffs) code = code * spec_.p + (c % spec_.p);
  return {code};
}

std::vector<std::uint32_t> FiniteField::coeffs(FieldElement a) const {
  std::vector<std::uint32_t> c(spec_.e);
  std::uint32_t code = a.code;
  for (std::size_t i = spec_.e; i-- > 0;) {
    c[i] = code % spec_.p;
    code /= spec_.p;
  }
  return c;
}

FieldElement FiniteField::inv(FieldElement a) const {
  if (a.code == 0) throw std::domain_error("inverse of zero in finite field");
  return {inv_[a.code]};
}

std::vector<FieldElement> FiniteField::elements() const {
  std::vector<FieldElement> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = {i};
  return out;
}

bool FiniteField::is_square(FieldElement a) const {
  if (a.code == 0) throw std::domain_error("quadratic character is undefined at zero");
  return square_[a.code];
}

int FiniteField::quadratic_character(FieldElement a) const {
  if (a.code == 0) return 0;
  return square_[a.code] ? 1 : -1;
}

}  // namespace weilstar
