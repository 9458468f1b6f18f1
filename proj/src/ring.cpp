#include "weilstar/ring.hpp"

#include <atomic>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace weilstar {

namespace {

constexpr std::uint32_t kNoInverse = std::numeric_limits<std::uint32_t>::max();

std::atomic<std::uint32_t> next_ring_id{1};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t payload_size_of(const RingSpec& spec) {
  return std::visit(Overloaded{
                        [](const TruncatedPolySpec& s) -> std::size_t { return s.m; },
                        [](const MatrixRingSpec& s) -> std::size_t { return std::size_t{s.n} * s.n; },
                        [](const DoublingSpec& s) -> std::size_t { return 2 * std::size_t{s.r} * s.r; },
                    },
                    spec);
}

using Payload = std::vector<FieldElement>;

Payload mat_mul(const FiniteField& f, const FieldElement* a, const FieldElement* b, std::size_t n) {
  Payload out(n * n, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const FieldElement aik = a[i * n + k];
      if (aik.code == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] = f.add(out[i * n + j], f.mul(aik, b[k * n + j]));
    }
  }
  return out;
}

void transpose_into(const FieldElement* a, FieldElement* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[j * n + i] = a[i * n + j];
  }
}

// Gauss-Jordan inverse; false when singular.
bool mat_inverse(const FiniteField& f, const FieldElement* a, FieldElement* out, std::size_t n) {
  Payload m(a, a + n * n);
  Payload inv(n * n, f.zero());
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = f.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot * n + col].code == 0) ++pivot;
    if (pivot == n) return false;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m[pivot * n + j], m[col * n + j]);
        std::swap(inv[pivot * n + j], inv[col * n + j]);
      }
    }
    const FieldElement scale = f.inv(m[col * n + col]);
    for (std::size_t j = 0; j < n; ++j) {
      m[col * n + j] = f.mul(m[col * n + j], scale);
      inv[col * n + j] = f.mul(inv[col * n + j], scale);
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col) continue;
      const FieldElement factor = m[row * n + col];
      if (factor.code == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m[row * n + j] = f.sub(m[row * n + j], f.mul(factor, m[col * n + j]));
        inv[row * n + j] = f.sub(inv[row * n + j], f.mul(factor, inv[col * n + j]));
      }
    }
  }
  std::copy(inv.begin(), inv.end(), out);
  return true;
}

std::string matrix_string(const FiniteField& f, const FieldElement* a, std::size_t n) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < n; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < n; ++j) {
      if (j) os << ',';
      os << a[i * n + j].code;
    }
    os << ']';
  }
  os << ']';
  (void)f;
  return os.str();
}

}  // namespace

const FieldSpec& field_spec(const RingSpec& spec) {
  return std::visit([](const auto& s) -> const FieldSpec& { return s.field; }, spec);
}

std::string describe(const RingSpec& spec) {
  auto field_name = [](const FieldSpec& f) {
    std::ostringstream os;
    os << "F_" << f.q();
    if (f.e > 1) os << " (p=" << f.p << ", e=" << f.e << ")";
    return os.str();
  };
  return std::visit(Overloaded{
                        [&](const TruncatedPolySpec& s) {
                          return "A_" + std::to_string(s.m) + " = " + field_name(s.field) + "[x]/(x^" +
                                 std::to_string(s.m) + "), involution " +
                                 (s.involution == Involution::NegateX ? "x -> -x" : "identity");
                        },
                        [&](const MatrixRingSpec& s) {
                          return "M(" + std::to_string(s.n) + ", " + field_name(s.field) + "), transpose";
                        },
                        [&](const DoublingSpec& s) {
                          return "D(M(" + std::to_string(s.r) + ", " + field_name(s.field) + ")), doubling";
                        },
                    },
                    spec);
}

Ring::Ring(const RingSpec& spec)
    : spec_(spec), field_(field_spec(spec)), id_(next_ring_id.fetch_add(1)), payload_size_(payload_size_of(spec)) {
  if (payload_size_ == 0) throw std::invalid_argument("ring parameters must be positive");
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < payload_size_; ++i) {
    size *= field_.q();
    if (size > kMaxEnumerable) throw std::invalid_argument("ring too large to enumerate (limit 10^6 elements)");
  }
  size_ = static_cast<std::uint32_t>(size);

  Payload unit(payload_size_, field_.zero());
  std::visit(Overloaded{
                 [&](const TruncatedPolySpec&) { unit[0] = field_.one(); },
                 [&](const MatrixRingSpec& s) {
                   for (std::size_t i = 0; i < s.n; ++i) unit[i * s.n + i] = field_.one();
                 },
                 [&](const DoublingSpec& s) {
                   const std::size_t r2 = std::size_t{s.r} * s.r;
                   for (std::size_t i = 0; i < s.r; ++i) {
                     unit[i * s.r + i] = field_.one();
                     unit[r2 + i * s.r + i] = field_.one();
                   }
                 },
             },
             spec_);
  one_ = RingElement{encode(unit), id_};

  neg_table_.resize(size_);
  star_table_.resize(size_);
  inv_table_.assign(size_, kNoInverse);
  for (std::uint32_t a = 0; a < size_; ++a) {
    Payload pa = decode(a);
    Payload na(payload_size_);
    for (std::size_t i = 0; i < payload_size_; ++i) na[i] = field_.neg(pa[i]);
    neg_table_[a] = encode(na);
    star_table_[a] = encode(star_payload(pa));
    Payload ia;
    if (inverse_payload(pa, ia)) inv_table_[a] = encode(ia);
  }

  tabulated_ = size_ <= kMaxTabulated;
  if (tabulated_) {
    const std::size_t n = size_;
    add_table_.resize(n * n);
    mul_table_.resize(n * n);
    std::vector<Payload> dec(n);
    for (std::uint32_t a = 0; a < size_; ++a) dec[a] = decode(a);
    for (std::uint32_t a = 0; a < size_; ++a) {
      for (std::uint32_t b = 0; b < size_; ++b) {
        Payload s(payload_size_);
        for (std::size_t i = 0; i < payload_size_; ++i) s[i] = field_.add(dec[a][i], dec[b][i]);
        add_table_[a * n + b] = encode(s);
        mul_table_[a * n + b] = encode(mul_payload(dec[a], dec[b]));
      }
    }
  }

  // Scalars are central, so commuting with the coordinate basis suffices.
  std::vector<std::uint32_t> basis;
  for (std::size_t i = 0; i < payload_size_; ++i) {
    Payload e(payload_size_, field_.zero());
    e[i] = field_.one();
    basis.push_back(encode(e));
  }
  central_.assign(size_, true);
  for (std::uint32_t a = 0; a < size_; ++a) {
    for (std::uint32_t b : basis) {
      if (mul_code(a, b) != mul_code(b, a)) {
        central_[a] = false;
        break;
      }
    }
  }
}

std::uint32_t Ring::degree_bound() const {
  const auto* tp = std::get_if<TruncatedPolySpec>(&spec_);
  if (!tp) throw std::invalid_argument("operation requires a truncated polynomial ring");
  return tp->m;
}

Involution Ring::involution() const {
  const auto* tp = std::get_if<TruncatedPolySpec>(&spec_);
  return tp ? tp->involution : Involution::NegateX;
}

void Ring::check(RingElement a) const {
  if (a.ring_ != id_) throw MixedRingError("ring element belongs to a different ring");
}

RingElement Ring::element(std::uint32_t code) const {
  if (code >= size_) throw std::out_of_range("ring element code out of range");
  return {code, id_};
}

RingElement Ring::from_int(std::int64_t n) const { return scalar(field_.from_int(n)); }

RingElement Ring::scalar(FieldElement c) const {
  Payload p = decode(one_.code_);
  for (auto& v : p) v = (v.code == 0) ? field_.zero() : c;
  return {encode(p), id_};
}

RingElement Ring::x() const {
  const std::uint32_t m = degree_bound();
  if (m < 2) throw std::invalid_argument("x is zero in A_1");
  Payload p(payload_size_, field_.zero());
  p[1] = field_.one();
  return {encode(p), id_};
}

RingElement Ring::from_payload(std::span<const FieldElement> payload) const {
  if (payload.size() != payload_size_) throw std::invalid_argument("payload has wrong length");
  for (auto v : payload) {
    if (v.code >= field_.q()) throw std::invalid_argument("payload entry out of range");
  }
  return {encode(payload), id_};
}

RingElement Ring::from_ints(std::span<const std::int64_t> entries) const {
  if (entries.size() != payload_size_) {
    throw std::invalid_argument("ring literal needs " + std::to_string(payload_size_) + " entries, got " +
                                std::to_string(entries.size()));
  }
  Payload p(payload_size_);
  for (std::size_t i = 0; i < payload_size_; ++i) {
    if (field_.e() == 1) {
      p[i] = field_.from_int(entries[i]);
    } else {
      if (entries[i] < 0 || entries[i] >= field_.q()) throw std::invalid_argument("field code out of range");
      p[i] = FieldElement{static_cast<std::uint32_t>(entries[i])};
    }
  }
  return {encode(p), id_};
}

std::vector<FieldElement> Ring::payload(RingElement a) const {
  check(a);
  return decode(a.code_);
}

std::vector<FieldElement> Ring::decode(std::uint32_t code) const {
  Payload p(payload_size_);
  for (std::size_t i = payload_size_; i-- > 0;) {
    p[i] = FieldElement{code % field_.q()};
    code /= field_.q();
  }
  return p;
}

std::uint32_t Ring::encode(std::span<const FieldElement> payload) const {
  std::uint32_t code = 0;
  for (auto v : payload) code = code * field_.q() + v.code;
  return code;
}

std::uint32_t Ring::add_slow(std::uint32_t a, std::uint32_t b) const {
  Payload pa = decode(a), pb = decode(b);
  for (std::size_t i = 0; i < payload_size_; ++i) pa[i] = field_.add(pa[i], pb[i]);
  return encode(pa);
}

std::uint32_t Ring::mul_slow(std::uint32_t a, std::uint32_t b) const {
  return encode(mul_payload(decode(a), decode(b)));
}

std::vector<FieldElement> Ring::mul_payload(const Payload& a, const Payload& b) const {
  return std::visit(Overloaded{
                        [&](const TruncatedPolySpec& s) {
                          Payload out(s.m, field_.zero());
                          for (std::size_t i = 0; i < s.m; ++i) {
                            if (a[i].code == 0) continue;
                            for (std::size_t j = 0; i + j < s.m; ++j) {
                              out[i + j] = field_.add(out[i + j], field_.mul(a[i], b[j]));
                            }
                          }
                          return out;
                        },
                        [&](const MatrixRingSpec& s) { return mat_mul(field_, a.data(), b.data(), s.n); },
                        [&](const DoublingSpec& s) {
                          const std::size_t r2 = std::size_t{s.r} * s.r;
                          Payload first = mat_mul(field_, a.data(), b.data(), s.r);
                          Payload second = mat_mul(field_, a.data() + r2, b.data() + r2, s.r);
                          first.insert(first.end(), second.begin(), second.end());
                          return first;
                        },
                    },
                    spec_);
}

std::vector<FieldElement> Ring::star_payload(const Payload& a) const {
  return std::visit(Overloaded{
                        [&](const TruncatedPolySpec& s) {
                          Payload out = a;
                          if (s.involution == Involution::NegateX) {
                            for (std::size_t i = 1; i < s.m; i += 2) out[i] = field_.neg(out[i]);
                          }
                          return out;
                        },
                        [&](const MatrixRingSpec& s) {
                          Payload out(a.size());
                          transpose_into(a.data(), out.data(), s.n);
                          return out;
                        },
                        [&](const DoublingSpec& s) {
                          const std::size_t r2 = std::size_t{s.r} * s.r;
                          Payload out(a.size());
                          transpose_into(a.data() + r2, out.data(), s.r);
                          transpose_into(a.data(), out.data() + r2, s.r);
                          return out;
                        },
                    },
                    spec_);
}

bool Ring::inverse_payload(const Payload& a, Payload& out) const {
  return std::visit(Overloaded{
                        [&](const TruncatedPolySpec& s) {
                          // Local ring: power-series inversion of a unit.
                          if (a[0].code == 0) return false;
                          out.assign(s.m, field_.zero());
                          const FieldElement a0inv = field_.inv(a[0]);
                          out[0] = a0inv;
                          for (std::size_t k = 1; k < s.m; ++k) {
                            FieldElement acc = field_.zero();
                            for (std::size_t j = 1; j <= k; ++j) acc = field_.add(acc, field_.mul(a[j], out[k - j]));
                            out[k] = field_.neg(field_.mul(a0inv, acc));
                          }
                          return true;
                        },
                        [&](const MatrixRingSpec& s) {
                          out.assign(a.size(), field_.zero());
                          return mat_inverse(field_, a.data(), out.data(), s.n);
                        },
                        [&](const DoublingSpec& s) {
                          const std::size_t r2 = std::size_t{s.r} * s.r;
                          out.assign(a.size(), field_.zero());
                          return mat_inverse(field_, a.data(), out.data(), s.r) &&
                                 mat_inverse(field_, a.data() + r2, out.data() + r2, s.r);
                        },
                    },
                    spec_);
}

RingElement Ring::add(RingElement a, RingElement b) const {
  check(a);
  check(b);
  return {add_code(a.code_, b.code_), id_};
}

RingElement Ring::mul(RingElement a, RingElement b) const {
  check(a);
  check(b);
  return {mul_code(a.code_, b.code_), id_};
}

RingElement Ring::neg(RingElement a) const {
  check(a);
  return {neg_table_[a.code_], id_};
}

RingElement Ring::star(RingElement a) const {
  check(a);
  return {star_table_[a.code_], id_};
}

RingElement Ring::inv(RingElement a) const {
  check(a);
  if (inv_table_[a.code_] == kNoInverse) throw NotAUnit("inverse of non-unit " + to_string(a));
  return {inv_table_[a.code_], id_};
}

bool Ring::is_unit(RingElement a) const {
  check(a);
  return inv_table_[a.code_] != kNoInverse;
}

bool Ring::is_symmetric(RingElement a) const {
  check(a);
  return star_table_[a.code_] == a.code_;
}

bool Ring::is_central(RingElement a) const {
  check(a);
  return central_[a.code_];
}

std::vector<RingElement> Ring::enumerate(Subset subset) const {
  std::vector<RingElement> out;
  for (std::uint32_t c = 0; c < size_; ++c) {
    const bool sym = star_table_[c] == c;
    const bool unit = inv_table_[c] != kNoInverse;
    bool keep = true;
    switch (subset) {
      case Subset::All: break;
      case Subset::Symmetric: keep = sym; break;
      case Subset::Units: keep = unit; break;
      case Subset::SymmetricUnits: keep = sym && unit; break;
      case Subset::CentralSymmetricUnits: keep = sym && unit && central_[c]; break;
    }
    if (keep) out.push_back({c, id_});
  }
  return out;
}

FieldElement Ring::trace_tr(RingElement a) const {
  check(a);
  return trace_code(a.code_);
}

FieldElement Ring::trace_code(std::uint32_t a) const {
  degree_bound();
  // a_{m-1} is the last base-q digit.
  return FieldElement{a % field_.q()};
}

RingElement Ring::quadratic_form(RingElement t) const {
  degree_bound();
  return mul(star(t), t);
}

RingElement Ring::polar_form(RingElement t, RingElement s) const {
  degree_bound();
  return add(mul(star(t), s), mul(t, star(s)));
}

std::string Ring::to_string(RingElement a) const {
  check(a);
  const Payload p = decode(a.code_);
  return std::visit(Overloaded{
                        [&](const TruncatedPolySpec& s) {
                          std::ostringstream os;
                          bool any = false;
                          for (std::size_t i = 0; i < s.m; ++i) {
                            if (p[i].code == 0) continue;
                            if (any) os << " + ";
                            any = true;
                            const bool show_coeff = p[i] != field_.one() || i == 0;
                            if (show_coeff) os << p[i].code;
                            if (i >= 1) os << "x";
                            if (i >= 2) os << "^" << i;
                          }
                          if (!any) os << "0";
                          return os.str();
                        },
                        [&](const MatrixRingSpec& s) { return matrix_string(field_, p.data(), s.n); },
                        [&](const DoublingSpec& s) {
                          const std::size_t r2 = std::size_t{s.r} * s.r;
                          return "(" + matrix_string(field_, p.data(), s.r) + ", " +
                                 matrix_string(field_, p.data() + r2, s.r) + ")";
                        },
                    },
                    spec_);
}

std::string Ring::to_literal(RingElement a) const {
  check(a);
  std::string out;
  for (auto v : decode(a.code_)) {
    if (!out.empty()) out += ',';
    out += std::to_string(v.code);
  }
  return out;
}

std::size_t matrix_rank(const FiniteField& f, std::vector<FieldElement> m, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot * cols + col].code == 0) ++pivot;
    if (pivot == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m[pivot * cols + j], m[rank * cols + j]);
    const FieldElement scale = f.inv(m[rank * cols + col]);
    for (std::size_t j = 0; j < cols; ++j) m[rank * cols + j] = f.mul(m[rank * cols + j], scale);
    for (std::size_t row = 0; row < rows; ++row) {
      if (row == rank) continue;
      const FieldElement factor = m[row * cols + col];
      if (factor.code == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        m[row * cols + j] = f.sub(m[row * cols + j], f.mul(factor, m[rank * cols + j]));
      }
    }
    ++rank;
  }
  return rank;
}

namespace {

// A a + A c = A. For M(n): the stacked 2n x n matrix [a; c] has rank n; the
// doubled ring checks each component.
bool left_coprime(const Ring& ring, RingElement a, RingElement c) {
  const auto pa = ring.payload(a);
  const auto pc = ring.payload(c);
  auto stacked_full_rank = [&](std::size_t offset, std::size_t n) {
    std::vector<FieldElement> m;
    m.reserve(2 * n * n);
    m.insert(m.end(), pa.begin() + offset, pa.begin() + offset + n * n);
    m.insert(m.end(), pc.begin() + offset, pc.begin() + offset + n * n);
    return matrix_rank(ring.field(), std::move(m), 2 * n, n) == n;
  };
  return std::visit(Overloaded{
                        [&](const TruncatedPolySpec&) { return ring.is_unit(a) || ring.is_unit(c); },
                        [&](const MatrixRingSpec& s) { return stacked_full_rank(0, s.n); },
                        [&](const DoublingSpec& s) {
                          const std::size_t r2 = std::size_t{s.r} * s.r;
                          return stacked_full_rank(0, s.r) && stacked_full_rank(r2, s.r);
                        },
                    },
                    ring.spec());
}

}  // namespace

RingElement coprime_reduction(const Ring& ring, RingElement a, RingElement c) {
  if (ring.mul(ring.star(a), c) != ring.mul(ring.star(c), a)) {
    throw PreconditionError("coprime_reduction: not star-commuting (a*c != c*a)");
  }
  if (!left_coprime(ring, a, c)) throw PreconditionError("coprime_reduction: not coprime");
  for (const RingElement s : ring.enumerate(Subset::Symmetric)) {
    if (ring.is_unit(ring.add(a, ring.mul(s, c)))) return s;
  }
  throw std::logic_error("coprime_reduction: no symmetric s makes a + s c a unit");
}

RingElement symmetric_unit_shift(const Ring& ring, RingElement a, RingElement b) {
  ring.degree_bound();
  for (RingElement v : {a, b}) {
    if (!ring.is_symmetric(v) || ring.is_unit(v)) {
      throw PreconditionError("symmetric_unit_shift: arguments must be symmetric non-units");
    }
  }
  for (const RingElement x : ring.enumerate(Subset::SymmetricUnits)) {
    const RingElement left = ring.sub(a, ring.inv(x));
    const RingElement right = ring.add(b, x);
    if (ring.is_unit(left) && ring.is_symmetric(left) && ring.is_unit(right) && ring.is_symmetric(right)) return x;
  }
  throw std::domain_error("symmetric_unit_shift: no symmetric unit x found");
}

}  // namespace weilstar
