#include <doctest.h>

#include <vector>

#include "weilstar/ring.hpp"

using namespace weilstar;

namespace {

RingPtr truncated(std::uint32_t p, std::uint32_t m, Involution inv = Involution::NegateX) {
  return make_ring(TruncatedPolySpec{FieldSpec{p, 1, {}}, m, inv});
}

RingElement poly(const Ring& r, std::vector<std::int64_t> c) { return r.from_ints(c); }

// Naive truncated convolution over F_p on coefficient vectors.
std::vector<std::int64_t> convolve(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, int p) {
  std::vector<std::int64_t> out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return out;
}

std::vector<std::int64_t> ints(const Ring& r, RingElement a) {
  std::vector<std::int64_t> out;
  for (auto f : r.payload(a)) out.push_back(f.code);
  return out;
}

}  // namespace

TEST_CASE("truncated polynomial examples") {
  auto r = truncated(3, 3);
  const auto x = r->x();
  CHECK(r->star(x) == poly(*r, {0, 2, 0}));
  CHECK(r->inv(poly(*r, {1, 1, 0})) == poly(*r, {1, 2, 1}));
  CHECK(r->trace_tr(r->mul(x, x)).code == 1);
  CHECK(r->trace_tr(r->one()).code == 0);
  CHECK(r->quadratic_form(x) == poly(*r, {0, 0, 2}));
  CHECK(r->quadratic_form(r->one()) == r->one());
  CHECK(r->polar_form(r->one(), x) == r->zero());
  CHECK_THROWS_AS(r->inv(x), NotAUnit);

  auto r1 = truncated(3, 1);
  for (auto c : r1->enumerate(Subset::All)) CHECK(r1->trace_tr(c).code == r1->payload(c)[0].code);
}

TEST_CASE("multiplication agrees with naive convolution") {
  auto r = truncated(3, 3);
  for (auto a : r->enumerate(Subset::All))
    for (auto b : r->enumerate(Subset::All)) CHECK(ints(*r, r->mul(a, b)) == convolve(ints(*r, a), ints(*r, b), 3));
}

TEST_CASE("subset enumeration") {
  auto r = truncated(3, 3);
  const auto sym = r->enumerate(Subset::Symmetric);
  REQUIRE(sym.size() == 9);
  for (auto s : sym) CHECK(r->payload(s)[1].code == 0);
  CHECK(r->enumerate(Subset::SymmetricUnits).size() == 6);
  CHECK(r->enumerate(Subset::Units).size() == 18);
  auto r1 = truncated(3, 1);
  const auto units = r1->enumerate(Subset::Units);
  REQUIRE(units.size() == 2);
  CHECK(units[0] == r1->from_int(1));
  CHECK(units[1] == r1->from_int(2));
  auto r5 = truncated(5, 3);
  CHECK(r5->enumerate(Subset::Units).size() == 4 * 25);
}

TEST_CASE("involution axioms hold exhaustively") {
  std::vector<RingPtr> rings{truncated(3, 3), truncated(3, 2), make_ring(MatrixRingSpec{FieldSpec{3, 1, {}}, 2}),
                             make_ring(DoublingSpec{FieldSpec{3, 1, {}}, 1})};
  for (const auto& r : rings) {
    const auto all = r->enumerate(Subset::All);
    for (auto a : all) {
      CHECK(r->star(r->star(a)) == a);
      CHECK(r->is_unit(a) == (a != r->zero() && [&] {
              for (auto b : all)
                if (r->mul(a, b) == r->one() && r->mul(b, a) == r->one()) return true;
              return false;
            }()));
      for (auto b : all) {
        CHECK(r->star(r->mul(a, b)) == r->mul(r->star(b), r->star(a)));
        CHECK(r->star(r->add(a, b)) == r->add(r->star(a), r->star(b)));
      }
    }
  }
}

TEST_CASE("matrix ring transpose") {
  auto r = make_ring(MatrixRingSpec{FieldSpec{3, 1, {}}, 2});
  const std::vector<std::int64_t> a{1, 2, 0, 1}, at{1, 0, 2, 1};
  CHECK(r->star(r->from_ints(a)) == r->from_ints(at));
  CHECK(r->size() == 81);
}

TEST_CASE("mixed rings are rejected") {
  auto a = truncated(3, 3);
  auto b = truncated(3, 3);
  CHECK_THROWS_AS(a->add(a->one(), b->one()), MixedRingError);
}

TEST_CASE("coprime reduction") {
  auto r = truncated(3, 3);
  const auto x2 = r->mul(r->x(), r->x());
  CHECK(coprime_reduction(*r, r->one(), x2) == r->zero());
  // Symmetric order is 0, x^2, 2x^2, 1, ...; x^2 + 1 is the first unit.
  CHECK(coprime_reduction(*r, x2, r->one()) == r->one());
  // x* 1 = -x differs from 1* x = x.
  CHECK_THROWS_AS(coprime_reduction(*r, r->x(), r->one()), PreconditionError);
  CHECK_THROWS_AS(coprime_reduction(*r, x2, x2), PreconditionError);

  // Independent oracle: the first symmetric 2x2 matrix in canonical order with
  // diag(1,0) + s diag(0,1) invertible.
  auto mr = make_ring(MatrixRingSpec{FieldSpec{3, 1, {}}, 2});
  const auto a = mr->from_ints(std::vector<std::int64_t>{1, 0, 0, 0});
  const auto c = mr->from_ints(std::vector<std::int64_t>{0, 0, 0, 1});
  const auto s = coprime_reduction(*mr, a, c);
  RingElement expected = mr->zero();
  for (std::int64_t code = 0; code < 81; ++code) {
    std::vector<std::int64_t> e{code / 27, (code / 9) % 3, (code / 3) % 3, code % 3};
    if (e[1] != e[2]) continue;
    // a + s c = [[1, s01], [0, s11]] has determinant s11.
    if (e[3] != 0) {
      expected = mr->from_ints(e);
      break;
    }
  }
  CHECK(s == expected);
  CHECK(mr->is_unit(mr->add(a, mr->mul(s, c))));
}

TEST_CASE("symmetric unit shift") {
  auto r = truncated(3, 3);
  CHECK(symmetric_unit_shift(*r, r->zero(), r->zero()) == r->one());
  const auto x2 = r->mul(r->x(), r->x());
  const auto x = symmetric_unit_shift(*r, x2, x2);
  RingElement oracle = r->zero();
  for (auto u : r->enumerate(Subset::SymmetricUnits)) {
    const auto s1 = r->sub(x2, r->inv(u)), s2 = r->add(x2, u);
    if (r->is_unit(s1) && r->is_unit(s2) && r->is_symmetric(s1) && r->is_symmetric(s2)) {
      oracle = u;
      break;
    }
  }
  CHECK(x == oracle);

  auto r5 = truncated(3, 5);
  const auto y2 = r5->mul(r5->x(), r5->x());
  const auto y4 = r5->mul(y2, y2);
  const auto y = symmetric_unit_shift(*r5, y2, y4);
  CHECK(r5->is_unit(r5->sub(y2, r5->inv(y))));
  CHECK(r5->is_unit(r5->add(y4, y)));
  CHECK_THROWS_AS(symmetric_unit_shift(*r, r->one(), r->zero()), PreconditionError);
}

TEST_CASE("trace form is non-degenerate for odd m") {
  for (std::uint32_t m : {1u, 3u, 5u}) {
    auto r = truncated(3, m);
    std::vector<FieldElement> gram;
    std::vector<RingElement> basis;
    for (std::uint32_t i = 0; i < m; ++i) {
      std::vector<std::int64_t> e(m, 0);
      e[i] = 1;
      basis.push_back(r->from_ints(e));
    }
    for (auto a : basis)
      for (auto b : basis) gram.push_back(r->trace_tr(r->polar_form(a, b)));
    CHECK(matrix_rank(r->field(), gram, m, m) == m);
    for (auto a : r->enumerate(Subset::All)) CHECK(r->trace_tr(r->star(a)) == r->trace_tr(a));
  }
}
