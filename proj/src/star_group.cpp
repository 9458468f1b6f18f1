#include "weilstar/star_group.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace weilstar {

const char* cell_name(Cell cell) {
  switch (cell) {
    case Cell::B: return "B";
    case Cell::BwB: return "BwB";
    case Cell::BwBwB: return "BwBwB";
  }
  return "?";
}

Word BruhatForm::word() const {
  Word out{{LetterKind::H, t}, {LetterKind::U, b1}};
  if (cell != Cell::B) {
    out.push_back({LetterKind::W, {}});
    out.push_back({LetterKind::U, c1.value()});
  }
  if (cell == Cell::BwBwB) {
    out.push_back({LetterKind::W, {}});
    out.push_back({LetterKind::U, d1.value()});
  }
  return out;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  return static_cast<std::size_t>(rng() % n);
}

StarGroup::StarGroup(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("StarGroup: null ring");
  units_ = ring_->enumerate(Subset::Units);
  symmetric_ = ring_->enumerate(Subset::Symmetric);
  symmetric_units_ = ring_->enumerate(Subset::SymmetricUnits);
  for (auto s : symmetric_) {
    if (s != ring_->zero() && !ring_->is_unit(s)) symmetric_nonunits_nonzero_.push_back(s);
  }
}

StarMatrix StarGroup::identity() const {
  return {ring_->one(), ring_->zero(), ring_->zero(), ring_->one()};
}

StarMatrix StarGroup::h(RingElement t) const {
  if (!ring_->is_unit(t)) throw std::invalid_argument("h(t) requires a unit, got " + ring_->to_string(t));
  return {t, ring_->zero(), ring_->zero(), ring_->inv(ring_->star(t))};
}

StarMatrix StarGroup::u(RingElement s) const {
  if (!ring_->is_symmetric(s)) throw std::invalid_argument("u(s) requires a symmetric s, got " + ring_->to_string(s));
  return {ring_->one(), s, ring_->zero(), ring_->one()};
}

StarMatrix StarGroup::w() const {
  return {ring_->zero(), ring_->one(), ring_->neg(ring_->one()), ring_->zero()};
}

StarMatrix StarGroup::letter(const Letter& l) const {
  switch (l.kind) {
    case LetterKind::H: return h(l.param);
    case LetterKind::U: return u(l.param);
    case LetterKind::W: return w();
  }
  throw std::logic_error("unknown letter");
}

StarMatrix StarGroup::evaluate(const Word& word) const {
  StarMatrix g = identity();
  for (const auto& l : word) g = mul(g, letter(l));
  return g;
}

StarMatrix StarGroup::mul(const StarMatrix& g, const StarMatrix& h) const {
  const Ring& r = *ring_;
  return {r.add(r.mul(g.a, h.a), r.mul(g.b, h.c)), r.add(r.mul(g.a, h.b), r.mul(g.b, h.d)),
          r.add(r.mul(g.c, h.a), r.mul(g.d, h.c)), r.add(r.mul(g.c, h.b), r.mul(g.d, h.d))};
}

RingElement StarGroup::star_det(const StarMatrix& g) const {
  const Ring& r = *ring_;
  return r.sub(r.mul(g.a, r.star(g.d)), r.mul(g.b, r.star(g.c)));
}

Membership StarGroup::membership(const StarMatrix& g) const {
  const Ring& r = *ring_;
  auto s = [&](RingElement x) { return r.star(x); };
  if (r.mul(g.a, s(g.b)) != r.mul(g.b, s(g.a))) return Membership::None;
  if (r.mul(g.c, s(g.d)) != r.mul(g.d, s(g.c))) return Membership::None;
  if (r.mul(s(g.a), g.c) != r.mul(s(g.c), g.a)) return Membership::None;
  if (r.mul(s(g.b), g.d) != r.mul(s(g.d), g.b)) return Membership::None;
  const RingElement det = star_det(g);
  const RingElement det2 = r.sub(r.mul(s(g.a), g.d), r.mul(s(g.c), g.b));
  if (det != det2) return Membership::None;
  if (!(r.is_symmetric(det) && r.is_central(det) && r.is_unit(det))) return Membership::None;
  return det == r.one() ? Membership::SLStar : Membership::GLStar;
}

StarMatrix StarGroup::inv(const StarMatrix& g) const {
  if (membership(g) == Membership::None) throw NotInGroup("inverse: matrix is not in GL_*(2, A)");
  const Ring& r = *ring_;
  const RingElement k = r.inv(star_det(g));
  StarMatrix out{r.mul(k, r.star(g.d)), r.mul(k, r.neg(r.star(g.b))), r.mul(k, r.neg(r.star(g.c))),
                 r.mul(k, r.star(g.a))};
  if (mul(g, out) != identity()) throw std::logic_error("inverse: *-adjugate failed to invert");
  return out;
}

BruhatForm StarGroup::big_cell_form(const StarMatrix& g) const {
  // h(x)u(y)wu(z) = (-xy, x - xyz; -(x*)^{-1}, -(x*)^{-1} z), so
  // x = -(c*)^{-1}, y = c* a, z = c^{-1} d.
  const Ring& r = *ring_;
  const RingElement cs = r.star(g.c);
  BruhatForm f;
  f.cell = Cell::BwB;
  f.t = r.neg(r.inv(cs));
  f.b1 = r.mul(cs, g.a);
  f.c1 = r.mul(r.inv(g.c), g.d);
  return f;
}

BruhatForm StarGroup::normal_form(const StarMatrix& g) const {
  if (membership(g) != Membership::SLStar) throw NotInGroup("normal_form: matrix is not in SL_*(2, A)");
  const Ring& r = *ring_;
  BruhatForm f;
  if (g.c == r.zero()) {
    f.cell = Cell::B;
    f.t = g.a;
    f.b1 = r.mul(r.inv(g.a), g.b);
  } else if (r.is_unit(g.c)) {
    f = big_cell_form(g);
  } else {
    // w u(s) g has lower-left -(a + s c), a unit; then
    // g = u(-s) w^{-1} h(x)u(y)wu(z) = h(t) u(t^{-1}(-s)(t*)^{-1}) w u(y) w u(z)
    // with t = -(x*)^{-1}.
    const RingElement s = coprime_reduction(r, g.a, g.c);
    const BruhatForm inner = big_cell_form(mul(mul(w(), u(s)), g));
    f.cell = Cell::BwBwB;
    f.t = r.neg(r.inv(r.star(inner.t)));
    f.b1 = r.mul(r.mul(r.inv(f.t), r.neg(s)), r.inv(r.star(f.t)));
    f.c1 = inner.b1;
    f.d1 = inner.c1;
  }
  for (const auto& l : f.word()) {
    if (l.kind == LetterKind::U && !r.is_symmetric(l.param)) {
      throw std::logic_error("normal_form: non-symmetric u-parameter");
    }
  }
  if (evaluate(f) != g) throw std::logic_error("normal_form: word does not reproduce the element");
  return f;
}

int StarGroup::w_length(const StarMatrix& g) const {
  if (membership(g) != Membership::SLStar) throw NotInGroup("w_length: matrix is not in SL_*(2, A)");
  if (g.c == ring_->zero()) return 0;
  return ring_->is_unit(g.c) ? 1 : 2;
}

Word StarGroup::sample_word(std::mt19937_64& rng) const {
  auto pick = [&](const std::vector<RingElement>& v) { return v[uniform_index(rng, v.size())]; };
  const std::uint64_t q = ring_->field().q();
  Cell cell;
  if (ring_->is_truncated_poly() && ring_->degree_bound() == 1) {
    // Over F_q the cells have q(q-1) and q^2(q-1) elements.
    cell = uniform_index(rng, q + 1) == 0 ? Cell::B : Cell::BwB;
  } else {
    const bool third = !ring_->is_truncated_poly() || !symmetric_nonunits_nonzero_.empty();
    cell = static_cast<Cell>(uniform_index(rng, third ? 3 : 2));
  }
  BruhatForm f;
  f.cell = cell;
  f.t = pick(units_);
  f.b1 = pick(symmetric_);
  if (cell == Cell::BwB) f.c1 = pick(symmetric_);
  if (cell == Cell::BwBwB) {
    f.c1 = ring_->is_truncated_poly() ? pick(symmetric_nonunits_nonzero_) : pick(symmetric_);
    f.d1 = pick(symmetric_);
  }
  return f.word();
}

StarMatrix StarGroup::sample(std::mt19937_64& rng) const { return evaluate(sample_word(rng)); }

StarMatrix StarGroup::sample(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  return sample(rng);
}

std::vector<StarMatrix> StarGroup::enumerate(std::size_t limit) const {
  std::vector<StarMatrix> gens;
  for (auto t : units_) gens.push_back(h(t));
  for (auto s : symmetric_) gens.push_back(u(s));
  gens.push_back(w());

  std::unordered_set<StarMatrix, StarMatrixHash> seen{identity()};
  std::vector<StarMatrix> out{identity()};
  std::deque<StarMatrix> queue{identity()};
  while (!queue.empty()) {
    const StarMatrix g = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      StarMatrix next = mul(g, s);
      if (seen.insert(next).second) {
        if (out.size() >= limit) throw std::length_error("enumerate_group: group exceeds limit");
        out.push_back(next);
        queue.push_back(next);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string StarGroup::to_string(const StarMatrix& g) const {
  const Ring& r = *ring_;
  return "((" + r.to_string(g.a) + ", " + r.to_string(g.b) + "), (" + r.to_string(g.c) + ", " + r.to_string(g.d) +
         "))";
}

std::string StarGroup::to_string(const Word& word) const {
  std::string out;
  for (const auto& l : word) {
    switch (l.kind) {
      case LetterKind::H: out += "h(" + ring_->to_string(l.param) + ")"; break;
      case LetterKind::U: out += "u(" + ring_->to_string(l.param) + ")"; break;
      case LetterKind::W: out += "w"; break;
    }
  }
  return out.empty() ? "e" : out;
}

RelationParameters relation_parameters(const StarGroup& group, std::size_t sample_size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto choose = [&](const std::vector<RingElement>& all) {
    if (all.size() <= sample_size) return all;
    std::vector<RingElement> out;
    out.reserve(sample_size);
    for (std::size_t i = 0; i < sample_size; ++i) out.push_back(all[uniform_index(rng, all.size())]);
    return out;
  };
  return {choose(group.units()), choose(group.symmetric()), choose(group.symmetric_units())};
}

namespace {

struct MatrixModel {
  using value_type = StarMatrix;
  const StarGroup& group;
  StarMatrix h(RingElement t) const { return group.h(t); }
  StarMatrix u(RingElement b) const { return group.u(b); }
  StarMatrix w() const { return group.w(); }
  StarMatrix mul(const StarMatrix& x, const StarMatrix& y) const { return group.mul(x, y); }
  double deviation(const StarMatrix& x, const StarMatrix& y) const { return x == y ? 0.0 : 1.0; }
};

}  // namespace

RelationReport verify_relations(const StarGroup& group, std::size_t sample_size, std::uint64_t seed) {
  return check_presentation(group, MatrixModel{group}, relation_parameters(group, sample_size, seed), 0.5);
}

std::vector<Check> verify_sampled_words(const StarGroup& group, std::size_t samples, std::uint64_t seed) {
  const Ring& r = group.ring();
  std::mt19937_64 rng(seed);
  Check member("sampled words lie in SL_*(2, A)");
  Check det("det_*(gh) = det_*(g) det_*(h)");
  Check normal("normal form re-multiplies to the element");
  for (std::size_t i = 0; i < samples; ++i) {
    const Word wg = group.sample_word(rng);
    const Word wh = group.sample_word(rng);
    const StarMatrix g = group.evaluate(wg);
    const StarMatrix h = group.evaluate(wh);
    const StarMatrix gh = group.mul(g, h);
    const auto name = [&] { return group.to_string(wg) + " * " + group.to_string(wh); };
    member.record_bool(group.membership(g) == Membership::SLStar && group.membership(gh) == Membership::SLStar,
                       group.to_string(wg));
    det.record_bool(group.star_det(gh) == r.mul(group.star_det(g), group.star_det(h)), name());
    bool ok = false;
    try {
      ok = group.evaluate(group.normal_form(g)) == g;
    } catch (const std::exception&) {
      ok = false;
    }
    normal.record_bool(ok, group.to_string(wg));
  }
  return {member, det, normal};
}

StarMatrix doubling_projection(const StarGroup& doubled, const Ring& base, const StarMatrix& g) {
  const auto* ds = std::get_if<DoublingSpec>(&doubled.ring().spec());
  const auto* ms = std::get_if<MatrixRingSpec>(&base.spec());
  if (!ds || !ms || ds->r != ms->n || !(ds->field == ms->field)) {
    throw std::invalid_argument("doubling_projection: base must be M(r, F_q) of the doubled ring");
  }
  if (doubled.membership(g) != Membership::SLStar) throw NotInGroup("doubling_projection: not in SL_*(2, D(R))");
  const std::size_t r2 = std::size_t{ds->r} * ds->r;
  auto first = [&](RingElement x) {
    const auto p = doubled.ring().payload(x);
    return base.from_payload(std::span(p).first(r2));
  };
  return {first(g.a), first(g.b), first(g.c), first(g.d)};
}

bool block_invertible(const Ring& base, const StarMatrix& g) {
  const auto* ms = std::get_if<MatrixRingSpec>(&base.spec());
  if (!ms) throw std::invalid_argument("block_invertible: base must be a matrix ring");
  const std::size_t n = ms->n;
  std::vector<FieldElement> big(4 * n * n);
  const RingElement blocks[2][2] = {{g.a, g.b}, {g.c, g.d}};
  for (std::size_t bi = 0; bi < 2; ++bi) {
    for (std::size_t bj = 0; bj < 2; ++bj) {
      const auto p = base.payload(blocks[bi][bj]);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) big[(bi * n + i) * 2 * n + bj * n + j] = p[i * n + j];
      }
    }
  }
  return matrix_rank(base.field(), std::move(big), 2 * n, 2 * n) == 2 * n;
}

}  // namespace weilstar
