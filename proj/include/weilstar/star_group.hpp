#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "weilstar/report.hpp"
#include "weilstar/ring.hpp"

namespace weilstar {

// A 2x2 matrix (a b; c d) over an involutive ring.
struct StarMatrix {
  RingElement a, b, c, d;
  friend bool operator==(const StarMatrix&, const StarMatrix&) = default;
  friend auto operator<=>(const StarMatrix&, const StarMatrix&) = default;
};

struct StarMatrixHash {
  std::size_t operator()(const StarMatrix& g) const noexcept {
    std::size_t h = g.a.code();
    for (std::uint32_t v : {g.b.code(), g.c.code(), g.d.code()}) h = h * 0x9E3779B97F4A7C15ull + v;
    return h;
  }
};

enum class Membership { None, GLStar, SLStar };

// Bruhat generators: h(t) = diag(t, (t*)^{-1}), u(s) = (1 s; 0 1), w = (0 1; -1 0).
enum class LetterKind { H, U, W };
struct Letter {
  LetterKind kind;
  RingElement param;  // unused for W
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

enum class Cell { B, BwB, BwBwB };
const char* cell_name(Cell cell);

// g = h(t)u(b1), h(t)u(b1)wu(c1) or h(t)u(b1)wu(c1)wu(d1).
struct BruhatForm {
  Cell cell = Cell::B;
  RingElement t, b1;
  std::optional<RingElement> c1, d1;

  Word word() const;
  int w_count() const { return static_cast<int>(cell); }
};

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);

// GL_*(2, A) and SL_*(2, A) over a finite involutive ring.
class StarGroup {
 public:
  explicit StarGroup(RingPtr ring);

  const Ring& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }

  StarMatrix identity() const;
  StarMatrix h(RingElement t) const;
  StarMatrix u(RingElement s) const;
  StarMatrix w() const;
  StarMatrix letter(const Letter& l) const;
  StarMatrix evaluate(const Word& word) const;
  StarMatrix evaluate(const BruhatForm& form) const { return evaluate(form.word()); }

  StarMatrix mul(const StarMatrix& g, const StarMatrix& h) const;
  // Inverse via the *-adjugate (d*, -b*; -c*, a*) scaled by det_*^{-1}.
  StarMatrix inv(const StarMatrix& g) const;

  Membership membership(const StarMatrix& g) const;
  // ad* - bc*.
  RingElement star_det(const StarMatrix& g) const;

  BruhatForm normal_form(const StarMatrix& g) const;
  // 0, 1 or 2 by the lower-left entry: zero, unit, other.
  int w_length(const StarMatrix& g) const;

  StarMatrix sample(std::mt19937_64& rng) const;
  StarMatrix sample(std::uint64_t seed) const;
  Word sample_word(std::mt19937_64& rng) const;

  // Breadth-first closure of the Bruhat generators, sorted canonically.
  std::vector<StarMatrix> enumerate(std::size_t limit) const;

  const std::vector<RingElement>& units() const { return units_; }
  const std::vector<RingElement>& symmetric() const { return symmetric_; }
  const std::vector<RingElement>& symmetric_units() const { return symmetric_units_; }

  std::string to_string(const StarMatrix& g) const;
  std::string to_string(const Word& word) const;

 private:
  // (x, y, z) with g = h(x)u(y)wu(z); requires c to be a unit.
  BruhatForm big_cell_form(const StarMatrix& g) const;

  RingPtr ring_;
  std::vector<RingElement> units_, symmetric_, symmetric_units_, symmetric_nonunits_nonzero_;
};

class NotInGroup : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Presentation relations.

using RelationResult = Check;

struct RelationReport {
  std::vector<RelationResult> relations;
  bool passed() const {
    for (const auto& r : relations) {
      if (!r.passed()) return false;
    }
    return !relations.empty();
  }
};

// Parameter sets used by the relation checks: every unit, symmetric element and
// symmetric unit when the range has at most `sample_size` members, otherwise a
// seeded sample of that size.
struct RelationParameters {
  std::vector<RingElement> units, symmetric, symmetric_units;
};
RelationParameters relation_parameters(const StarGroup& group, std::size_t sample_size, std::uint64_t seed);

// Checks the six relations of the A_m presentation plus the variant
// w u(t^-1) w u(t) w u(t^-1) = h(t) in any model of the generators. `Model`
// provides value_type, h(t), u(b), w(), mul(x, y) and deviation(x, y).
template <class Model>
RelationReport check_presentation(const StarGroup& group, const Model& model, const RelationParameters& params,
                                  double tolerance, std::size_t max_witnesses = 5) {
  const Ring& ring = group.ring();
  RelationReport report;
  auto record = [&](RelationResult& res, double dev, const std::function<std::string()>& witness) {
    res.witness_limit = max_witnesses;
    res.record(dev, tolerance, witness);
  };
  auto str = [&](RingElement x) { return ring.to_string(x); };

  RelationResult r1{"h(t1)h(t2) = h(t1 t2)"};
  for (auto t1 : params.units) {
    for (auto t2 : params.units) {
      record(r1, model.deviation(model.mul(model.h(t1), model.h(t2)), model.h(ring.mul(t1, t2))),
             [&] { return "t1=" + str(t1) + ", t2=" + str(t2); });
    }
  }
  RelationResult r2{"u(b1)u(b2) = u(b1 + b2)"};
  for (auto b1 : params.symmetric) {
    for (auto b2 : params.symmetric) {
      record(r2, model.deviation(model.mul(model.u(b1), model.u(b2)), model.u(ring.add(b1, b2))),
             [&] { return "b1=" + str(b1) + ", b2=" + str(b2); });
    }
  }
  RelationResult r3{"h(t)u(b) = u(t b t*)h(t)"};
  for (auto t : params.units) {
    for (auto b : params.symmetric) {
      const auto conj = ring.mul(ring.mul(t, b), ring.star(t));
      record(r3, model.deviation(model.mul(model.h(t), model.u(b)), model.mul(model.u(conj), model.h(t))),
             [&] { return "t=" + str(t) + ", b=" + str(b); });
    }
  }
  RelationResult r4{"w^2 = h(-1)"};
  record(r4, model.deviation(model.mul(model.w(), model.w()), model.h(ring.neg(ring.one()))),
         [] { return std::string("w"); });
  RelationResult r5{"w h(t) = h(t*^-1) w"};
  for (auto t : params.units) {
    record(r5, model.deviation(model.mul(model.w(), model.h(t)), model.mul(model.h(ring.inv(ring.star(t))), model.w())),
           [&] { return "t=" + str(t); });
  }
  RelationResult r6{"u(t)wu(t^-1)wu(t) = w h(-t^-1)"};
  RelationResult r6b{"w u(t^-1) w u(t) w u(t^-1) = h(t)"};
  for (auto t : params.symmetric_units) {
    const auto ti = ring.inv(t);
    auto lhs = model.mul(model.mul(model.mul(model.mul(model.u(t), model.w()), model.u(ti)), model.w()), model.u(t));
    record(r6, model.deviation(lhs, model.mul(model.w(), model.h(ring.neg(ti)))), [&] { return "t=" + str(t); });
    auto lhs2 = model.mul(
        model.mul(model.mul(model.mul(model.mul(model.w(), model.u(ti)), model.w()), model.u(t)), model.w()),
        model.u(ti));
    record(r6b, model.deviation(lhs2, model.h(t)), [&] { return "t=" + str(t); });
  }
  report.relations = {r1, r2, r3, r4, r5, r6, r6b};
  return report;
}

// The relations as matrix identities in SL_*(2, A).
RelationReport verify_relations(const StarGroup& group, std::size_t sample_size, std::uint64_t seed);

// On `samples` seeded generator words: membership in SL_*, det_*(gh) =
// det_*(g) det_*(h), and the normal form re-multiplying to the element.
std::vector<Check> verify_sampled_words(const StarGroup& group, std::size_t samples, std::uint64_t seed);

// SL_*(2, D(R)) -> GL(2, R) for the doubled ring: keep first components.
// `base` must be M(r, F_q) for the same field and r.
StarMatrix doubling_projection(const StarGroup& doubled, const Ring& base, const StarMatrix& g);
// Whether a 2x2 matrix over M(r, F_q) is invertible as a 2r x 2r matrix.
bool block_invertible(const Ring& base, const StarMatrix& g);

}  // namespace weilstar
