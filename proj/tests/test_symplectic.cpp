#include <doctest.h>

#include <filesystem>
#include <set>

#include "weilstar/symplectic.hpp"

using namespace weilstar;

namespace {

RingPtr truncated(std::uint32_t p, std::uint32_t m) {
  return make_ring(TruncatedPolySpec{FieldSpec{p, 1, {}}, m, Involution::NegateX});
}

std::vector<std::int64_t> coeffs(const Ring& r, RingElement a) {
  std::vector<std::int64_t> out;
  for (auto f : r.payload(a)) out.push_back(f.code);
  return out;
}

// All k-dimensional F_p-subspaces of F_p^n via reduced row echelon forms.
void rref_subspaces(int p, int n, int k, const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
  std::vector<int> pivots;
  std::function<void(int)> choose = [&](int start) {
    if (static_cast<int>(pivots.size()) == k) {
      std::vector<std::pair<int, int>> free;
      for (int row = 0; row < k; ++row)
        for (int col = pivots[row] + 1; col < n; ++col)
          if (std::find(pivots.begin(), pivots.end(), col) == pivots.end()) free.emplace_back(row, col);
      std::vector<int> vals(free.size(), 0);
      while (true) {
        std::vector<std::vector<int>> rows(k, std::vector<int>(n, 0));
        for (int row = 0; row < k; ++row) rows[row][pivots[row]] = 1;
        for (std::size_t i = 0; i < free.size(); ++i) rows[free[i].first][free[i].second] = vals[i];
        visit(rows);
        std::size_t i = 0;
        while (i < vals.size() && ++vals[i] == p) vals[i++] = 0;
        if (i == vals.size()) break;
      }
      return;
    }
    for (int col = start; col < n; ++col) {
      pivots.push_back(col);
      choose(col + 1);
      pivots.pop_back();
    }
  };
  choose(0);
}

// Counts Lagrangians of W = A_m^2 without using the module's own enumeration:
// m-dimensional subspaces that are x-stable and B-isotropic.
std::set<std::vector<std::uint32_t>> brute_force_lagrangians(const SelfDualModule& mod) {
  const Ring& r = mod.ring();
  const int p = static_cast<int>(r.field().p());
  const int m = static_cast<int>(r.spec().index() == 0 ? std::get<TruncatedPolySpec>(r.spec()).m : 0);
  std::set<std::vector<std::uint32_t>> found;
  rref_subspaces(p, 2 * m, m, [&](const std::vector<std::vector<int>>& rows) {
    std::vector<std::uint32_t> elements;
    std::vector<int> combo(m, 0);
    while (true) {
      std::vector<std::int64_t> v(2 * m, 0);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < 2 * m; ++j) v[j] = (v[j] + combo[i] * rows[i][j]) % p;
      const WVector w{r.from_ints(std::vector<std::int64_t>(v.begin(), v.begin() + m)),
                      r.from_ints(std::vector<std::int64_t>(v.begin() + m, v.end()))};
      elements.push_back(mod.index(w));
      int i = 0;
      while (i < m && ++combo[i] == p) combo[i++] = 0;
      if (i == m) break;
    }
    std::sort(elements.begin(), elements.end());
    std::vector<bool> in(mod.size(), false);
    for (auto e : elements) in[e] = true;
    for (auto e : elements) {
      if (m > 1 && !in[mod.scale(r.x(), e)]) return;
      for (auto f : elements)
        if (mod.trace_B(e, f) != 0) return;
    }
    found.insert(elements);
  });
  return found;
}

}  // namespace

TEST_CASE("eta and B examples") {
  SelfDualModule mod(truncated(3, 3));
  const Ring& r = mod.ring();
  const auto x = r.x(), x2 = r.mul(x, x);
  CHECK(mod.eta(r.one(), x2).code == 1);
  CHECK(mod.eta(x, r.zero()).code == 0);
  CHECK(mod.eta(x, x).code == 2);
  for (std::uint32_t v = 0; v < mod.size(); v += 7) CHECK(mod.trace_B(v, v) == 0);

  SelfDualModule mod1(truncated(3, 1));
  const Ring& r1 = mod1.ring();
  const WVector e1{r1.one(), r1.zero()}, e2{r1.zero(), r1.one()};
  CHECK(std::abs(mod1.chi(e1, e2) - root_of_unity(3, 1)) < 1e-15);
  CHECK(mod1.hermitian(e1, e2) == r1.one());
}

TEST_CASE("B matches the explicit coefficient formula at m = 3") {
  SelfDualModule mod(truncated(3, 3));
  const Ring& r = mod.ring();
  for (std::uint32_t vi = 0; vi < mod.size(); ++vi) {
    const auto v = mod.vector(vi);
    const auto v1 = coeffs(r, v.first), v2 = coeffs(r, v.second);
    for (std::uint32_t wi = 0; wi < mod.size(); wi += 5) {
      const auto w = mod.vector(wi);
      const auto w1 = coeffs(r, w.first), w2 = coeffs(r, w.second);
      const std::int64_t expected = (v1[0] * w2[2] - v2[2] * w1[0]) + (v1[2] * w2[0] - v2[0] * w1[2]) +
                                    (v2[1] * w1[1] - v1[1] * w2[1]);
      REQUIRE(mod.trace_B(vi, wi) == static_cast<std::uint32_t>(((expected % 3) + 3) % 3));
    }
  }
}

TEST_CASE("hermitian form traces to B") {
  for (std::uint32_t m : {1u, 3u}) {
    SelfDualModule mod(truncated(3, m));
    const Ring& r = mod.ring();
    const std::uint32_t step = m == 1 ? 1 : 11;
    for (std::uint32_t vi = 0; vi < mod.size(); vi += step) {
      for (std::uint32_t wi = 0; wi < mod.size(); wi += step) {
        const auto v = mod.vector(vi), w = mod.vector(wi);
        CHECK(r.trace_tr(mod.hermitian(v, w)).code == mod.trace_B(vi, wi));
        CHECK(r.star(mod.hermitian(v, w)) == r.neg(mod.hermitian(w, v)));
      }
    }
  }
}

TEST_CASE("chi is a bi-character at m = 1") {
  SelfDualModule mod(truncated(3, 1));
  for (std::uint32_t v = 0; v < mod.size(); ++v)
    for (std::uint32_t vp = 0; vp < mod.size(); ++vp)
      for (std::uint32_t w = 0; w < mod.size(); ++w)
        CHECK(std::abs(mod.chi(mod.add(v, vp), w) - mod.chi(v, w) * mod.chi(vp, w)) < 1e-12);
}

TEST_CASE("the group action preserves B") {
  auto ring = truncated(3, 3);
  SelfDualModule mod(ring);
  StarGroup group(ring);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = group.sample(rng);
    for (int k = 0; k < 20; ++k) {
      const auto v = static_cast<std::uint32_t>(uniform_index(rng, mod.size()));
      const auto w = static_cast<std::uint32_t>(uniform_index(rng, mod.size()));
      CHECK(mod.trace_B(mod.right_multiply(v, g), mod.right_multiply(w, g)) == mod.trace_B(v, w));
    }
  }
  const auto v = mod.vector(100);
  CHECK(mod.act(group, group.identity(), v) == v);
  // v.w^{-1} with w^{-1} = (0 -1; 1 0): (a, b) -> (b, -a).
  const auto moved = mod.act(group, group.w(), v);
  CHECK(moved.first == v.second);
  CHECK(moved.second == ring->neg(v.first));
}

TEST_CASE("Lagrangian enumeration matches brute force") {
  for (auto [p, m, expected] : {std::tuple{3u, 1u, 4u}, std::tuple{5u, 1u, 6u}, std::tuple{3u, 3u, 16u}}) {
    SelfDualModule mod(truncated(p, m));
    LagrangianTable table(mod);
    CHECK(table.size() == expected);
    std::set<std::vector<std::uint32_t>> ours;
    for (const auto& l : table.all()) {
      CHECK(l.size() == mod.dim());
      CHECK(mod.is_lagrangian(l.elements));
      CHECK(mod.is_lagrangian_hermitian(l.elements));
      ours.insert(l.elements);
    }
    CHECK(ours == brute_force_lagrangians(mod));
    const auto& l0 = table[table.base_point()];
    CHECK(l0.contains(mod.index({mod.ring().zero(), mod.ring().one()})));
  }
}

TEST_CASE("both Lagrangian characterizations agree on all candidates") {
  for (std::uint32_t m : {1u, 3u}) {
    SelfDualModule mod(truncated(3, m));
    for (const auto& c : mod.submodule_candidates())
      CHECK(mod.is_lagrangian(c.elements) == mod.is_lagrangian_hermitian(c.elements));
  }
}

TEST_CASE("is_lagrangian examples") {
  SelfDualModule mod(truncated(3, 1));
  const Ring& r = mod.ring();
  CHECK(mod.is_lagrangian(mod.span({{r.zero(), r.one()}})));
  CHECK_FALSE(mod.is_lagrangian(mod.span({{r.one(), r.zero()}, {r.zero(), r.one()}})));
  CHECK_FALSE(mod.is_lagrangian({0}));
}

TEST_CASE("Lagrangian action is a group action") {
  auto ring = truncated(3, 3);
  SelfDualModule mod(ring);
  StarGroup group(ring);
  LagrangianTable table(mod);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = group.sample(rng), h = group.sample(rng);
    const auto l = static_cast<std::uint32_t>(uniform_index(rng, table.size()));
    CHECK(table.act(group, group.mul(g, h), l) == table.act(group, g, table.act(group, h, l)));
    for (auto a : group.units()) {
      for (auto e : table[l].elements) CHECK(table[l].contains(mod.scale(a, e)));
      break;
    }
  }
  CHECK(table.act(group, group.identity(), 5) == 5);
}

TEST_CASE("Lagrangian cache round trip") {
  SelfDualModule mod(truncated(3, 3));
  const auto dir = std::filesystem::temp_directory_path() / "weilstar_cache_test";
  std::filesystem::remove_all(dir);
  const auto first = LagrangianTable::load_or_enumerate(mod, dir);
  REQUIRE(std::filesystem::exists(lagrangian_cache_file(mod, dir)));
  const auto second = LagrangianTable::load_or_enumerate(mod, dir);
  REQUIRE(first.size() == second.size());
  for (std::uint32_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].elements == second[i].elements);
    CHECK(first[i].generators == second[i].generators);
  }
  std::filesystem::remove_all(dir);
}
