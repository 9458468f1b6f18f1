#include "weilstar/weil.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace weilstar {

WeilContext::WeilContext(RingPtr ring) : ring_(std::move(ring)), group_(ring_) {
  const Ring& r = *ring_;
  if (!supports_weil(r)) {
    throw PreconditionError("Weil representation requires A_m with x* = -x and m odd (or m = 1), got " +
                            describe(r.spec()));
  }
  const std::uint32_t n = r.size();
  psi_bar_.resize(n);
  for (std::uint32_t a = 0; a < n; ++a) psi_bar_[a] = r.field().psi(r.trace_code(a));

  std::vector<std::uint32_t> q_form(n);
  for (std::uint32_t t = 0; t < n; ++t) q_form[t] = r.mul_code(r.star_code(t), t);
  gauss_.resize(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    Scalar s{0.0, 0.0};
    for (std::uint32_t t = 0; t < n; ++t) s += psi_bar_[r.mul_code(a, q_form[t])];
    gauss_[a] = s;
  }

  const FiniteField& k = r.field();
  Scalar s{0.0, 0.0};
  for (auto t : k.elements()) s += k.psi(k.mul(t, t));
  omega_ = s / std::sqrt(static_cast<double>(k.q()));

  std::set<RingElement> sq;
  for (auto u : group_.symmetric_units()) sq.insert(r.mul(u, u));
  squares_.assign(sq.begin(), sq.end());

  const Scalar scale = alpha(r.neg(r.one())) / gauss_sum(r.one());
  rho_w_.resize(n, n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t c = 0; c < n; ++c) {
      const std::uint32_t bq = r.add_code(r.mul_code(r.star_code(a), c), r.mul_code(a, r.star_code(c)));
      rho_w_(a, c) = scale * psi_bar_[bq];
    }
  }
}

Scalar WeilContext::alpha(RingElement a) const {
  if (!ring_->is_unit(a) || !ring_->is_symmetric(a)) {
    throw std::invalid_argument("alpha requires a symmetric unit, got " + ring_->to_string(a));
  }
  return gauss_sum(a) / gauss_sum(ring_->one());
}

Scalar WeilContext::alpha_unit(RingElement t) const {
  if (!ring_->is_unit(t)) throw NotAUnit("alpha requires a unit, got " + ring_->to_string(t));
  return gauss_sum(t) / gauss_sum(ring_->one());
}

Scalar WeilContext::kappa() const {
  return alpha(ring_->neg(ring_->one())) * std::sqrt(static_cast<double>(dim())) / gauss_sum(ring_->one());
}

int WeilContext::sign_character(RingElement a) const {
  if (!ring_->is_unit(a) || !ring_->is_symmetric(a)) {
    throw std::invalid_argument("sign character requires a symmetric unit, got " + ring_->to_string(a));
  }
  return std::binary_search(squares_.begin(), squares_.end(), a) ? 1 : -1;
}

OperatorMatrix WeilContext::rho_h(RingElement t) const {
  const Scalar a = alpha_unit(t);
  OperatorMatrix m = OperatorMatrix::Zero(dim(), dim());
  for (std::uint32_t x = 0; x < dim(); ++x) m(x, ring_->mul_code(x, t.code())) = a;
  return m;
}

OperatorMatrix WeilContext::rho_u(RingElement b) const {
  if (!ring_->is_symmetric(b)) throw std::invalid_argument("rho_u requires a symmetric parameter");
  OperatorMatrix m = OperatorMatrix::Zero(dim(), dim());
  for (std::uint32_t x = 0; x < dim(); ++x) {
    m(x, x) = psi_bar_[ring_->mul_code(b.code(), ring_->mul_code(ring_->star_code(x), x))];
  }
  return m;
}

OperatorMatrix WeilContext::rho_letter(const Letter& l) const {
  switch (l.kind) {
    case LetterKind::H: return rho_h(l.param);
    case LetterKind::U: return rho_u(l.param);
    case LetterKind::W: return rho_w_;
  }
  throw std::logic_error("unknown letter");
}

OperatorMatrix WeilContext::rho_word(const Word& word) const {
  OperatorMatrix m = OperatorMatrix::Identity(dim(), dim());
  for (const auto& l : word) m = m * rho_letter(l);
  return m;
}

OperatorMatrix WeilContext::sigma_h(RingElement a) const {
  if (!ring_->is_unit(a)) throw NotAUnit("sigma_h requires a unit");
  OperatorMatrix m = OperatorMatrix::Zero(dim(), dim());
  for (std::uint32_t c = 0; c < dim(); ++c) m(c, ring_->mul_code(a.code(), c)) = 1.0;
  return m;
}

OperatorMatrix WeilContext::sigma_u(RingElement b) const {
  if (!ring_->is_symmetric(b)) throw std::invalid_argument("sigma_u requires a symmetric parameter");
  OperatorMatrix m = OperatorMatrix::Zero(dim(), dim());
  for (std::uint32_t c = 0; c < dim(); ++c) {
    m(c, c) = psi_bar_[ring_->mul_code(b.code(), ring_->mul_code(c, ring_->star_code(c)))];
  }
  return m;
}

OperatorMatrix WeilContext::sigma_w() const {
  const Ring& r = *ring_;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim()));
  const std::uint32_t two = r.from_int(2).code();
  OperatorMatrix m(dim(), dim());
  for (std::uint32_t c = 0; c < dim(); ++c) {
    for (std::uint32_t a = 0; a < dim(); ++a) {
      m(c, a) = scale * psi_bar_[r.mul_code(two, r.mul_code(r.star_code(c), a))];
    }
  }
  return m;
}

Scalar WeilContext::delta(const StarMatrix& g) const {
  const BruhatForm f = group_.normal_form(g);
  switch (f.cell) {
    case Cell::B: return alpha_unit(f.t);
    case Cell::BwB: return alpha_unit(f.t) * omega_;
    case Cell::BwBwB: return alpha_unit(ring_->neg(f.t));
  }
  throw std::logic_error("unknown cell");
}

Scalar WeilContext::delta_kappa(const StarMatrix& g) const {
  const BruhatForm f = group_.normal_form(g);
  return f.cell == Cell::BwB ? alpha_unit(f.t) * kappa() : delta(g);
}

// ---------------------------------------------------------------------------

GeometricWeil::GeometricWeil(const WeilContext& context, const Bundle& bundle, std::optional<std::uint32_t> base,
                             std::optional<std::uint32_t> supplementary)
    : context_(&context), bundle_(&bundle) {
  if (&context.ring() != &bundle.module().ring()) throw MixedRingError("GeometricWeil: ring mismatch");
  const auto& table = bundle.table();
  const auto& mod = bundle.module();
  base_ = base ? *base : table.base_point();
  const std::uint32_t supp = supplementary ? *supplementary : table.supplementary();
  if (table.intersection_size(base_, supp) != 1) {
    throw std::invalid_argument("GeometricWeil: Lagrangians are not supplementary");
  }
  const auto& gens = table[supp].generators;
  if (gens.size() != 1) throw std::invalid_argument("GeometricWeil: supplementary Lagrangian must be cyclic");
  const std::uint32_t gen = mod.index(gens.front());
  const std::uint32_t n = context.dim();
  transport_ = OperatorMatrix::Zero(n, n);
  for (std::uint32_t a = 0; a < n; ++a) {
    // f'(a) = f(a v) = chi(r, a v - r) f(r) with r the coset representative.
    const std::uint32_t v = mod.scale(context.ring().element(a), gen);
    const std::uint32_t pos = bundle.coset_of(base_, v);
    const std::uint32_t r = bundle.coset_reps(base_)[pos];
    if (transport_.col(pos).cwiseAbs().maxCoeff() != 0.0) {
      throw std::invalid_argument("GeometricWeil: supplementary Lagrangian is not free on its generator");
    }
    transport_(a, pos) = mod.chi(r, mod.sub(v, r));
  }
  transport_inv_ = transport_.adjoint();
}

OperatorMatrix GeometricWeil::sigma(const StarMatrix& g) const {
  return transport_ * coset_matrix(g) * transport_inv_;
}

Scalar GeometricWeil::cocycle_formula(const StarMatrix& g, const StarMatrix& h) const {
  const auto& table = bundle_->table();
  const auto& group = context_->group();
  const std::uint32_t gl = table.act(group, g, base_);
  const std::uint32_t ghl = table.act(group, group.mul(g, h), base_);
  return bundle_->multiplier(base_, gl, ghl);
}

Scalar GeometricWeil::cocycle_reversed(const StarMatrix& g, const StarMatrix& h) const {
  const auto& table = bundle_->table();
  const auto& group = context_->group();
  const std::uint32_t gl = table.act(group, g, base_);
  const std::uint32_t ghl = table.act(group, group.mul(g, h), base_);
  return bundle_->multiplier(ghl, gl, base_);
}

ScalarFit GeometricWeil::cocycle_operational(const StarMatrix& g, const StarMatrix& h) const {
  const OperatorMatrix product = coset_matrix(g) * coset_matrix(h);
  return fit_scalar(product, coset_matrix(context_->group().mul(g, h)));
}

// ---------------------------------------------------------------------------

namespace {

std::string pair_name(const StarGroup& group, const StarMatrix& g, const StarMatrix& h) {
  return "g=" + group.to_string(g) + ", h=" + group.to_string(h);
}

Word normal_word(const StarGroup& group, const StarMatrix& g) { return group.normal_form(g).word(); }

}  // namespace

CocycleReport verify_cocycle(const GeometricWeil& geometric, std::size_t samples, std::uint64_t seed,
                             double tolerance, double residual_tolerance) {
  const auto& ctx = geometric.context();
  const auto& group = ctx.group();
  std::mt19937_64 rng(seed);
  CocycleReport report;
  Check law("projective law: rho_g rho_h = c(g,h) rho_gh");
  Check agree("formula cocycle equals operational cocycle");
  Check residual("operational residual");
  Check modulus("|c(g,h)| = 1");
  Check identity("cocycle identity: c(g,h) c(gh,k) = c(h,k) c(g,hk)");
  Check trivial("c(e,g) = c(g,e) = 1");
  Check reversed("reversed multiplier orientation equals operational cocycle");
  Check conjugate("reversed orientation equals conj(formula)");

  const StarMatrix e = group.identity();
  for (std::size_t i = 0; i < samples; ++i) {
    const StarMatrix g = group.sample(rng);
    const StarMatrix h = group.sample(rng);
    const StarMatrix k = group.sample(rng);
    const StarMatrix gh = group.mul(g, h);
    const auto name = [&] { return pair_name(group, g, h); };

    const OperatorMatrix rg = geometric.coset_matrix(g);
    const OperatorMatrix rh = geometric.coset_matrix(h);
    const OperatorMatrix rgh = geometric.coset_matrix(gh);
    const Scalar c = geometric.cocycle_formula(g, h);
    const OperatorMatrix product = rg * rh;
    const ScalarFit fit = fit_scalar(product, rgh);

    law.record(max_abs(product - c * rgh), tolerance, name);
    agree.record(std::abs(c - fit.lambda), tolerance, name);
    residual.record(fit.residual, residual_tolerance, name);
    modulus.record(std::abs(std::abs(c) - 1.0), tolerance, name);
    const Scalar lhs = c * geometric.cocycle_formula(gh, k);
    const Scalar rhs = geometric.cocycle_formula(h, k) * geometric.cocycle_formula(g, group.mul(h, k));
    identity.record(std::abs(lhs - rhs), tolerance, [&] { return name() + ", k=" + group.to_string(k); });
    trivial.record(std::max(std::abs(geometric.cocycle_formula(e, g) - 1.0), std::abs(geometric.cocycle_formula(g, e) - 1.0)),
                   tolerance, [&] { return "g=" + group.to_string(g); });
    const Scalar rev = geometric.cocycle_reversed(g, h);
    reversed.record(std::abs(rev - fit.lambda), tolerance, name);
    conjugate.record(std::abs(rev - std::conj(c)), tolerance, name);

    CocycleRecord rec;
    rec.g_word = normal_word(group, g);
    rec.h_word = normal_word(group, h);
    rec.c_formula = c;
    rec.c_operational = fit.lambda;
    rec.delta_g = ctx.delta(g);
    rec.delta_h = ctx.delta(h);
    rec.delta_gh = ctx.delta(gh);
    rec.residual = fit.residual;
    report.records.push_back(std::move(rec));
  }
  report.checks = {law, agree, residual, modulus, identity, trivial};
  report.diagnostics = {reversed, conjugate};
  return report;
}

const char* orientation_name(Orientation o) {
  switch (o) {
    case Orientation::None: return "none";
    case Orientation::CocycleTimesDeltas: return "c(g,h) delta(g) delta(h) = delta(gh)";
    case Orientation::CocycleTimesDeltaProduct: return "c(g,h) delta(gh) = delta(g) delta(h)";
  }
  return "?";
}

namespace {

struct Orientations {
  Check a{"coboundary: c(g,h) delta(g) delta(h) = delta(gh)"};
  Check b{"coboundary: c(g,h) delta(gh) = delta(g) delta(h)"};
  void record(Scalar c, Scalar dg, Scalar dh, Scalar dgh, double tol, const std::function<std::string()>& name) {
    a.record(std::abs(c * dg * dh - dgh), tol, name);
    b.record(std::abs(c * dgh - dg * dh), tol, name);
  }
  Orientation satisfied() const {
    if (a.passed()) return Orientation::CocycleTimesDeltas;
    if (b.passed()) return Orientation::CocycleTimesDeltaProduct;
    return Orientation::None;
  }
  // The satisfied orientation, or the closer one when neither holds.
  const Check& chosen() const {
    if (a.passed() || (!b.passed() && a.failures <= b.failures)) return a;
    return b;
  }
};

}  // namespace

ComparisonReport compare_representations(const GeometricWeil& geometric, std::size_t samples, std::uint64_t seed,
                                         double tolerance) {
  const auto& ctx = geometric.context();
  const auto& group = ctx.group();
  const Ring& ring = ctx.ring();
  ComparisonReport report;
  report.omega = ctx.omega();
  report.kappa = ctx.kappa();

  Check gen_h("rho(h(a)) = alpha(a) sigma_h(a)");
  Check gen_u("rho(u(b)) = sigma_u(b)");
  Check gen_w("rho(w) = omega sigma_w");
  Check explicit_h("geometric sigma_h(a) matches f'(ac)");
  Check explicit_u("geometric sigma_u(b) matches psi(b c c*) f'(c)");
  Check explicit_w("geometric sigma_w matches q^{-m/2} sum psi(2 c* a) f'(a)");
  Check kappa_w("rho(w) = kappa sigma_w");

  for (auto a : group.units()) {
    const auto s = geometric.sigma(group.h(a));
    const auto name = [&] { return "a=" + ring.to_string(a); };
    gen_h.record(max_abs(ctx.rho_h(a) - ctx.alpha_unit(a) * s), tolerance, name);
    explicit_h.record(max_abs(s - ctx.sigma_h(a)), tolerance, name);
  }
  for (auto b : group.symmetric()) {
    const auto s = geometric.sigma(group.u(b));
    const auto name = [&] { return "b=" + ring.to_string(b); };
    gen_u.record(max_abs(ctx.rho_u(b) - s), tolerance, name);
    explicit_u.record(max_abs(s - ctx.sigma_u(b)), tolerance, name);
  }
  {
    const auto s = geometric.sigma(group.w());
    const auto name = [] { return std::string("w"); };
    gen_w.record(max_abs(ctx.rho_w() - ctx.omega() * s), tolerance, name);
    explicit_w.record(max_abs(s - ctx.sigma_w()), tolerance, name);
    kappa_w.record(max_abs(ctx.rho_w() - ctx.kappa() * s), tolerance, name);
  }

  std::mt19937_64 rng(seed);
  Check factor("rho(g) = delta(g) sigma_g");
  Check factor_cell[3] = {Check("rho(g) = delta(g) sigma_g on B"), Check("rho(g) = delta(g) sigma_g on BwB"),
                          Check("rho(g) = delta(g) sigma_g on BwBwB")};
  Check factor_kappa("rho(g) = delta_kappa(g) sigma_g");
  Check proportional("rho(g) = lambda sigma_g for some scalar (operational delta)");
  Orientations formula, kappa_or, operational;

  auto delta_op = [&](const StarMatrix& g) {
    const ScalarFit fit = fit_scalar(ctx.rho(g), geometric.sigma(g));
    proportional.record(fit.residual, tolerance, [&] { return "g=" + group.to_string(g); });
    return fit.lambda;
  };

  for (std::size_t i = 0; i < samples; ++i) {
    const StarMatrix g = group.sample(rng);
    const StarMatrix h = group.sample(rng);
    const StarMatrix gh = group.mul(g, h);
    const auto gname = [&] { return "g=" + group.to_string(g) + " = " + group.to_string(normal_word(group, g)); };

    const OperatorMatrix rg = ctx.rho(g);
    const OperatorMatrix sg = geometric.sigma(g);
    const double dev = max_abs(rg - ctx.delta(g) * sg);
    factor.record(dev, tolerance, gname);
    factor_cell[group.w_length(g)].record(dev, tolerance, gname);
    factor_kappa.record(max_abs(rg - ctx.delta_kappa(g) * sg), tolerance, gname);

    const Scalar c = geometric.cocycle_formula(g, h);
    const auto name = [&] { return pair_name(group, g, h); };
    const Scalar dg = ctx.delta(g), dh = ctx.delta(h), dgh = ctx.delta(gh);
    formula.record(c, dg, dh, dgh, tolerance, name);
    kappa_or.record(c, ctx.delta_kappa(g), ctx.delta_kappa(h), ctx.delta_kappa(gh), tolerance, name);
    const Scalar og = delta_op(g), oh = delta_op(h), ogh = delta_op(gh);
    operational.record(c, og, oh, ogh, tolerance, name);

    const ScalarFit fit = geometric.cocycle_operational(g, h);
    CocycleRecord rec;
    rec.g_word = normal_word(group, g);
    rec.h_word = normal_word(group, h);
    rec.c_formula = c;
    rec.c_operational = fit.lambda;
    rec.delta_g = dg;
    rec.delta_h = dh;
    rec.delta_gh = dgh;
    rec.residual = fit.residual;
    report.records.push_back(std::move(rec));
  }

  report.orientation = formula.satisfied();
  report.operational_orientation = operational.satisfied();
  Check coboundary = formula.chosen();
  report.checks = {gen_h, gen_u, gen_w, explicit_h, explicit_u, explicit_w, factor, coboundary};

  report.diagnostics = {kappa_w, proportional};
  for (auto& c : factor_cell) {
    if (c.checked > 0) report.diagnostics.push_back(c);
  }
  report.diagnostics.push_back(factor_kappa);
  for (const Check* c : {&kappa_or.a, &kappa_or.b}) {
    Check copy = *c;
    copy.name += " [delta_kappa]";
    report.diagnostics.push_back(copy);
  }
  for (const Check* c : {&operational.a, &operational.b}) {
    Check copy = *c;
    copy.name += " [operational delta]";
    report.diagnostics.push_back(copy);
  }
  return report;
}

// ---------------------------------------------------------------------------

GaussReport verify_gauss_sums(const WeilContext& ctx, double tolerance) {
  const Ring& ring = ctx.ring();
  const auto& units = ctx.group().symmetric_units();
  GaussReport report;
  Check zero("S(0) = q^m");
  zero.record(std::abs(ctx.gauss_sum(ring.zero()) - Scalar(ctx.dim(), 0.0)), tolerance, [] { return std::string("a=0"); });
  Check sign("alpha equals the sign character");
  for (auto a : units) {
    sign.record(std::abs(ctx.alpha(a) - Scalar(ctx.sign_character(a), 0.0)), tolerance,
                [&] { return "a=" + ring.to_string(a); });
  }
  Check index("squares have index 2 in the symmetric units");
  index.record_bool(2 * ctx.symmetric_unit_squares().size() == units.size(),
                    std::to_string(ctx.symmetric_unit_squares().size()) + " squares among " +
                        std::to_string(units.size()));
  Check mult("alpha multiplicative on symmetric units");
  for (auto a : units) {
    for (auto b : units) {
      mult.record(std::abs(ctx.alpha(ring.mul(a, b)) - ctx.alpha(a) * ctx.alpha(b)), tolerance,
                  [&] { return "a=" + ring.to_string(a) + ", b=" + ring.to_string(b); });
    }
  }
  const Scalar w = ctx.omega();
  const Scalar am1 = ctx.alpha(ring.neg(ring.one()));
  Check sq("omega^2 = alpha(-1)");
  sq.record(std::abs(w * w - am1), tolerance, [] { return std::string("omega"); });
  Check fourth("omega^4 = 1");
  fourth.record(std::abs(w * w * w * w - 1.0), tolerance, [] { return std::string("omega"); });
  report.checks = {zero, sign, index, mult, sq, fourth};
  return report;
}

namespace {

struct OperatorModel {
  using value_type = OperatorMatrix;
  const WeilContext& ctx;
  OperatorMatrix h(RingElement t) const { return ctx.rho_h(t); }
  OperatorMatrix u(RingElement b) const { return ctx.rho_u(b); }
  OperatorMatrix w() const { return ctx.rho_w(); }
  OperatorMatrix mul(const OperatorMatrix& x, const OperatorMatrix& y) const { return x * y; }
  double deviation(const OperatorMatrix& x, const OperatorMatrix& y) const { return max_abs(x - y); }
};

}  // namespace

RelationReport verify_operator_relations(const WeilContext& context, const RelationParameters& params,
                                         double tolerance) {
  return check_presentation(context.group(), OperatorModel{context}, params, tolerance);
}

CharacterTable rep_character(RepKind kind, const WeilContext& context, const GeometricWeil* geometric,
                             std::size_t limit) {
  if (kind == RepKind::Geometric && geometric == nullptr) {
    throw std::invalid_argument("rep_character: geometric representation requested without a bundle");
  }
  CharacterTable table;
  table.elements = context.group().enumerate(limit);
  for (const auto& g : table.elements) {
    table.values.push_back(kind == RepKind::Bruhat ? context.rho(g).trace() : geometric->sigma(g).trace());
  }
  return table;
}

Scalar character_inner_product(const CharacterTable& a, const CharacterTable& b) {
  if (a.elements != b.elements) throw std::invalid_argument("character_inner_product: different groups");
  if (a.elements.empty()) throw std::invalid_argument("character_inner_product: empty group");
  Scalar s{0.0, 0.0};
  for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * std::conj(b.values[i]);
  return s / static_cast<double>(a.elements.size());
}

}  // namespace weilstar
