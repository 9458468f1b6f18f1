#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weilstar/bundle.hpp"

namespace weilstar {

// Gauss sums and the operators of the Bruhat-generator construction on
// L^2(A_m), in the point basis indexed by ring codes.
class WeilContext {
 public:
  // Requires A_m with x* = -x and m odd, or m = 1.
  explicit WeilContext(RingPtr ring);

  const Ring& ring() const { return *ring_; }
  const StarGroup& group() const { return group_; }
  std::uint32_t dim() const { return ring_->size(); }

  // S(a) = sum_{t in A} psi(tr(a Q(t))).
  Scalar gauss_sum(RingElement a) const { return gauss_[a.code()]; }
  // S(a) / S(1) for a symmetric unit a.
  Scalar alpha(RingElement a) const;
  // S(t) / S(1) for any unit t; this is the factor in rho(h(t)).
  Scalar alpha_unit(RingElement t) const;
  // (sum_{t in F_q} psi(t^2)) / sqrt(q).
  Scalar omega() const { return omega_; }
  // alpha(-1) q^{m/2} / S(1): the scalar relating rho(w) to sigma_w.
  Scalar kappa() const;
  // +1 on squares of symmetric units, -1 on other symmetric units.
  int sign_character(RingElement a) const;
  const std::vector<RingElement>& symmetric_unit_squares() const { return squares_; }

  OperatorMatrix rho_h(RingElement t) const;
  OperatorMatrix rho_u(RingElement b) const;
  const OperatorMatrix& rho_w() const { return rho_w_; }
  OperatorMatrix rho_letter(const Letter& l) const;
  OperatorMatrix rho_word(const Word& word) const;
  // Product of generator operators along the normal-form word of g.
  OperatorMatrix rho(const StarMatrix& g) const { return rho_word(group_.normal_form(g).word()); }

  // sigma_{h(a)} f(c) = f(ac); sigma_{u(b)} f(c) = psi(b c c*) f(c);
  // sigma_w f(c) = q^{-m/2} sum_a psi(2 c* a) f(a).
  OperatorMatrix sigma_h(RingElement a) const;
  OperatorMatrix sigma_u(RingElement b) const;
  OperatorMatrix sigma_w() const;

  // alpha(a) on B, alpha(a) omega on BwB, alpha(-a) on BwBwB, with a the
  // leading unit of the normal form.
  Scalar delta(const StarMatrix& g) const;
  // As delta, with kappa in place of omega on BwB.
  Scalar delta_kappa(const StarMatrix& g) const;

 private:
  RingPtr ring_;
  StarGroup group_;
  std::vector<Scalar> gauss_;
  Scalar omega_;
  std::vector<RingElement> squares_;
  std::vector<Scalar> psi_bar_;  // psi(tr(a)) by code
  OperatorMatrix rho_w_;
};

// The contraction of the bundle action to the fiber over a base Lagrangian,
// transported to L^2(A_m) through a supplementary Lagrangian.
class GeometricWeil {
 public:
  // Defaults: base <(0,1)>, supplementary <(1,0)>.
  GeometricWeil(const WeilContext& context, const Bundle& bundle, std::optional<std::uint32_t> base = std::nullopt,
                std::optional<std::uint32_t> supplementary = std::nullopt);

  const WeilContext& context() const { return *context_; }
  const Bundle& bundle() const { return *bundle_; }
  std::uint32_t base() const { return base_; }

  // gamma_{L, gL} o tau_g in the coset basis of E_L.
  OperatorMatrix coset_matrix(const StarMatrix& g) const { return bundle_->contracted_matrix(g, base_); }
  // The same operator on functions f'(a) = f(i(a)), i: A -> supplementary.
  OperatorMatrix sigma(const StarMatrix& g) const;

  // mu(L, gL, ghL).
  Scalar cocycle_formula(const StarMatrix& g, const StarMatrix& h) const;
  // sqrt(|ghL n gL| / (|L n ghL||gL n L||L|)) S_W(L; gL, ghL), i.e. mu(ghL, gL, L).
  Scalar cocycle_reversed(const StarMatrix& g, const StarMatrix& h) const;
  // Fit of rho_g rho_h = lambda rho_gh.
  ScalarFit cocycle_operational(const StarMatrix& g, const StarMatrix& h) const;

 private:
  const WeilContext* context_;
  const Bundle* bundle_;
  std::uint32_t base_;
  OperatorMatrix transport_;      // point values from coset coordinates
  OperatorMatrix transport_inv_;
};

struct CocycleRecord {
  Word g_word, h_word;
  Scalar c_formula, c_operational;
  Scalar delta_g, delta_h, delta_gh;
  double residual = 0.0;
};

struct CocycleReport {
  std::vector<Check> checks;
  std::vector<Check> diagnostics;
  std::vector<CocycleRecord> records;
  bool passed() const { return all_passed(checks); }
};

// Projective law rho_g rho_h = c(g,h) rho_gh, formula vs operational cocycle,
// the cocycle identity and unit modulus, on `samples` seeded pairs.
CocycleReport verify_cocycle(const GeometricWeil& geometric, std::size_t samples, std::uint64_t seed,
                             double tolerance, double residual_tolerance = 1e-6);

enum class Orientation { None, CocycleTimesDeltas, CocycleTimesDeltaProduct };
const char* orientation_name(Orientation o);

struct ComparisonReport {
  std::vector<Check> checks;
  std::vector<Check> diagnostics;
  Orientation orientation = Orientation::None;
  Orientation operational_orientation = Orientation::None;
  Scalar omega, kappa;
  std::vector<CocycleRecord> records;
  bool passed() const { return all_passed(checks) && orientation != Orientation::None; }
};

// Generator identities rho(h(a)) = alpha(a) sigma_h(a), rho(u(b)) = sigma_u(b),
// rho(w) = omega sigma_w; rho(g) = delta(g) sigma_g on sampled g; and the
// coboundary identity in both orientations on sampled pairs.
ComparisonReport compare_representations(const GeometricWeil& geometric, std::size_t samples, std::uint64_t seed,
                                         double tolerance);

struct GaussReport {
  std::vector<Check> checks;
  bool passed() const { return all_passed(checks); }
};
// alpha equals the sign character on every symmetric unit, alpha is
// multiplicative, omega^2 = alpha(-1), omega^4 = 1, S(0) = q^m.
GaussReport verify_gauss_sums(const WeilContext& context, double tolerance);

// Presentation relations as operator identities for rho.
RelationReport verify_operator_relations(const WeilContext& context, const RelationParameters& params,
                                         double tolerance);

enum class RepKind { Bruhat, Geometric };

struct CharacterTable {
  std::vector<StarMatrix> elements;
  std::vector<Scalar> values;
};
CharacterTable rep_character(RepKind kind, const WeilContext& context, const GeometricWeil* geometric,
                             std::size_t limit = 5000);
Scalar character_inner_product(const CharacterTable& a, const CharacterTable& b);

}  // namespace weilstar
