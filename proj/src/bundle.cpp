#include "weilstar/bundle.hpp"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace weilstar {

Bundle::Bundle(const LagrangianTable& table, const StarGroup& group) : table_(&table), group_(&group) {
  if (&group.ring() != &table.module().ring()) throw MixedRingError("Bundle: group and module use different rings");
  const auto& mod = module();
  reps_.resize(table.size());
  coset_.resize(table.size());
  for (std::uint32_t id = 0; id < table.size(); ++id) {
    auto& coset = coset_[id];
    coset.assign(mod.size(), UINT32_MAX);
    for (std::uint32_t w = 0; w < mod.size(); ++w) {
      if (coset[w] != UINT32_MAX) continue;
      const auto pos = static_cast<std::uint32_t>(reps_[id].size());
      reps_[id].push_back(w);
      for (auto l : table[id].elements) coset[mod.add(w, l)] = pos;
    }
  }
}

FiberFunction Bundle::basis_function(std::uint32_t lagrangian, std::uint32_t rep_position) const {
  const auto& mod = module();
  const std::uint32_t r = reps_.at(lagrangian).at(rep_position);
  FiberFunction f{lagrangian, std::vector<Scalar>(mod.size())};
  for (auto l : table()[lagrangian].elements) f.values[mod.add(r, l)] = mod.chi(r, l);
  return f;
}

std::vector<FiberFunction> Bundle::fiber_basis(std::uint32_t lagrangian) const {
  std::vector<FiberFunction> out;
  for (std::uint32_t i = 0; i < reps_.at(lagrangian).size(); ++i) out.push_back(basis_function(lagrangian, i));
  return out;
}

bool Bundle::is_in_fiber(const FiberFunction& f, std::uint32_t lagrangian, double tolerance) const {
  const auto& mod = module();
  if (f.values.size() != mod.size()) return false;
  for (std::uint32_t w = 0; w < mod.size(); ++w) {
    for (auto l : table()[lagrangian].elements) {
      if (std::abs(f.values[mod.add(w, l)] - mod.chi(w, l) * f.values[w]) > tolerance) return false;
    }
  }
  return true;
}

Scalar Bundle::inner_product(const FiberFunction& f, const FiberFunction& h) const {
  if (f.lagrangian != h.lagrangian) throw std::invalid_argument("inner_product: functions lie in different fibers");
  if (f.values.size() != h.values.size()) throw std::invalid_argument("inner_product: size mismatch");
  Scalar s{0.0, 0.0};
  for (std::size_t i = 0; i < f.values.size(); ++i) s += f.values[i] * std::conj(h.values[i]);
  return s;
}

FiberFunction Bundle::tau(const StarMatrix& g, const FiberFunction& f) const {
  const auto& mod = module();
  FiberFunction out{table().act(group(), g, f.lagrangian), std::vector<Scalar>(mod.size())};
  for (std::uint32_t w = 0; w < mod.size(); ++w) out.values[w] = f.values[mod.right_multiply(w, g)];
  return out;
}

FiberFunction Bundle::gamma(std::uint32_t target, const FiberFunction& f) const {
  const auto& mod = module();
  const auto& lp = table()[target].elements;
  const double nrm =
      1.0 / std::sqrt(static_cast<double>(table()[f.lagrangian].size()) * table().intersection_size(target, f.lagrangian));
  FiberFunction out{target, std::vector<Scalar>(mod.size())};
  for (std::uint32_t w = 0; w < mod.size(); ++w) {
    Scalar s{0.0, 0.0};
    for (auto l : lp) s += std::conj(mod.chi(w, l)) * f.values[mod.add(w, l)];
    out.values[w] = nrm * s;
  }
  return out;
}

Eigen::VectorXcd Bundle::coordinates(const FiberFunction& f) const {
  const auto& reps = reps_.at(f.lagrangian);
  Eigen::VectorXcd c(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) c[i] = f.values[reps[i]];
  return c;
}

FiberFunction Bundle::from_coordinates(std::uint32_t lagrangian, const Eigen::VectorXcd& c) const {
  FiberFunction f{lagrangian, std::vector<Scalar>(module().size())};
  for (std::uint32_t i = 0; i < c.size(); ++i) {
    const auto b = basis_function(lagrangian, i);
    for (std::size_t w = 0; w < f.values.size(); ++w) f.values[w] += c[i] * b.values[w];
  }
  return f;
}

OperatorMatrix Bundle::gamma_matrix(std::uint32_t target, std::uint32_t source) const {
  const auto& mod = module();
  const auto& src_reps = reps_.at(source);
  const auto& dst_reps = reps_.at(target);
  const double nrm =
      1.0 / std::sqrt(static_cast<double>(table()[source].size()) * table().intersection_size(target, source));
  OperatorMatrix m = OperatorMatrix::Zero(dst_reps.size(), src_reps.size());
  for (std::size_t i = 0; i < dst_reps.size(); ++i) {
    const std::uint32_t x = dst_reps[i];
    for (auto l : table()[target].elements) {
      const std::uint32_t y = mod.add(x, l);
      const std::uint32_t pos = coset_[source][y];
      const std::uint32_t r = src_reps[pos];
      m(i, pos) += nrm * std::conj(mod.chi(x, l)) * mod.chi(r, mod.sub(y, r));
    }
  }
  return m;
}

OperatorMatrix Bundle::tau_matrix(const StarMatrix& g, std::uint32_t source) const {
  const auto& mod = module();
  const std::uint32_t target = table().act(group(), g, source);
  const auto& src_reps = reps_.at(source);
  const auto& dst_reps = reps_.at(target);
  OperatorMatrix m = OperatorMatrix::Zero(dst_reps.size(), src_reps.size());
  for (std::size_t i = 0; i < dst_reps.size(); ++i) {
    const std::uint32_t y = mod.right_multiply(dst_reps[i], g);
    const std::uint32_t pos = coset_[source][y];
    const std::uint32_t r = src_reps[pos];
    m(i, pos) = mod.chi(r, mod.sub(y, r));
  }
  return m;
}

OperatorMatrix Bundle::contracted_matrix(const StarMatrix& g, std::uint32_t lagrangian) const {
  const auto& mod = module();
  const auto& reps = reps_.at(lagrangian);
  const auto& elements = table()[lagrangian].elements;
  // |L n gL| = #{l in L : l.g in L}.
  std::uint32_t meet = 0;
  for (auto l : elements) meet += table()[lagrangian].contains(mod.right_multiply(l, g)) ? 1 : 0;
  const double nrm = 1.0 / std::sqrt(static_cast<double>(elements.size()) * meet);
  OperatorMatrix m = OperatorMatrix::Zero(reps.size(), reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const std::uint32_t x = reps[i];
    for (auto l : elements) {
      const std::uint32_t y = mod.right_multiply(mod.add(x, l), g);
      const std::uint32_t pos = coset_[lagrangian][y];
      const std::uint32_t r = reps[pos];
      m(i, pos) += nrm * std::conj(mod.chi(x, l)) * mod.chi(r, mod.sub(y, r));
    }
  }
  return m;
}

Scalar Bundle::geometric_gauss_sum(std::uint32_t l, std::uint32_t lp, std::uint32_t lpp, bool reverse_scan) const {
  const auto& mod = module();
  const auto& first = table()[lp].elements;
  const auto& second = table()[lpp];
  Scalar s{0.0, 0.0};
  for (auto z : table()[l].elements) {
    const std::size_t n = first.size();
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint32_t z1 = first[reverse_scan ? n - 1 - k : k];
      const std::uint32_t z2 = mod.sub(z, z1);
      if (second.contains(z2)) {
        s += mod.chi(z1, z2);
        break;
      }
    }
  }
  return s;
}

Scalar Bundle::multiplier(std::uint32_t lpp, std::uint32_t lp, std::uint32_t l) const {
  const auto& t = table();
  const double ratio = static_cast<double>(t.intersection_size(lpp, lp)) /
                       (static_cast<double>(t.intersection_size(l, lpp)) * t.intersection_size(lp, l) * t[l].size());
  return std::sqrt(ratio) * geometric_gauss_sum(l, lp, lpp);
}

ScalarFit fit_scalar(const OperatorMatrix& x, const OperatorMatrix& y) {
  const double denom = y.squaredNorm();
  if (denom == 0.0) throw DegenerateScalar("fit_scalar: reference matrix is zero");
  ScalarFit fit;
  fit.lambda = (y.adjoint() * x).trace() / denom;
  fit.residual = max_abs(x - fit.lambda * y);
  return fit;
}

double max_abs(const OperatorMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

namespace {

std::string triple_name(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

}  // namespace

ConnectionReport verify_connection(const Bundle& bundle, VerifyMode mode, std::size_t samples, std::uint64_t seed,
                                   double tolerance) {
  const auto& table = bundle.table();
  const auto& group = bundle.group();
  const auto n = static_cast<std::uint32_t>(table.size());
  std::mt19937_64 rng(seed);

  std::map<std::pair<std::uint32_t, std::uint32_t>, OperatorMatrix> cache;
  auto gamma = [&](std::uint32_t target, std::uint32_t source) -> const OperatorMatrix& {
    auto key = std::make_pair(target, source);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, bundle.gamma_matrix(target, source)).first;
    return it->second;
  };

  std::vector<std::array<std::uint32_t, 3>> triples;
  if (mode == VerifyMode::Exhaustive) {
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        for (std::uint32_t c = 0; c < n; ++c) triples.push_back({a, b, c});
  } else {
    for (std::size_t i = 0; i < samples; ++i) {
      triples.push_back({static_cast<std::uint32_t>(uniform_index(rng, n)),
                         static_cast<std::uint32_t>(uniform_index(rng, n)),
                         static_cast<std::uint32_t>(uniform_index(rng, n))});
    }
  }

  std::vector<StarMatrix> elements;
  constexpr std::size_t kExhaustiveGroupLimit = 200;
  if (mode == VerifyMode::Exhaustive) {
    try {
      elements = group.enumerate(kExhaustiveGroupLimit);
    } catch (const std::length_error&) {
      elements.clear();
    }
  }
  if (elements.empty()) {
    elements.push_back(group.w());
    for (std::size_t i = 0; i < samples; ++i) elements.push_back(group.sample(rng));
  }

  Check a("a) adjoint: <gamma_{L',L} f, h> = <f, gamma_{L,L'} h>");
  Check b("b) isometry: gamma_{L',L} unitary");
  Check c("c) gamma_{L,L} = id and gamma_{L,L'} gamma_{L',L} = id (both orders)");
  Check d("d) gamma_{L'',L'} gamma_{L',L} = mu(L'',L',L) gamma_{L'',L}");
  Check dfit("d) operational scalar equals multiplier()");
  Check dmod("d) |mu(L'',L',L)| = 1");
  Check e("e) tau_g gamma_{L',L} = gamma_{gL',gL} tau_g");
  Check sw("S_W independent of the decomposition scan order");

  const std::size_t dim = bundle.fiber_dim();
  const OperatorMatrix id = OperatorMatrix::Identity(dim, dim);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  if (mode == VerifyMode::Exhaustive) {
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y) pairs.emplace_back(x, y);
  } else {
    for (const auto& t : triples) pairs.emplace_back(t[1], t[0]);
  }

  for (const auto& [lp, l] : pairs) {
    const auto& g1 = gamma(lp, l);
    const auto& g2 = gamma(l, lp);
    const auto name = [&] { return "L'=" + std::to_string(lp) + ", L=" + std::to_string(l); };
    a.record(max_abs(g2 - g1.adjoint()), tolerance, name);
    b.record(max_abs(g1.adjoint() * g1 - id), tolerance, name);
    c.record(std::max({max_abs(g2 * g1 - id), max_abs(g1 * g2 - id), max_abs(gamma(l, l) - id)}), tolerance, name);
  }

  std::size_t g_index = 0;
  for (const auto& t : triples) {
    const auto [l, lp, lpp] = t;
    const auto name = [&] { return "(L'', L', L) = " + triple_name(lpp, lp, l); };
    const Scalar mu = bundle.multiplier(lpp, lp, l);
    const OperatorMatrix composed = gamma(lpp, lp) * gamma(lp, l);
    const OperatorMatrix& direct = gamma(lpp, l);
    d.record(max_abs(composed - mu * direct), tolerance, name);
    const auto fit = fit_scalar(composed, direct);
    dfit.record(std::abs(fit.lambda - mu), tolerance, name);
    dmod.record(std::abs(std::abs(mu) - 1.0), tolerance, name);
    sw.record(std::abs(bundle.geometric_gauss_sum(l, lp, lpp) - bundle.geometric_gauss_sum(l, lp, lpp, true)),
              tolerance, [&] { return "(L; L', L'') = " + triple_name(l, lp, lpp); });
    if (mode == VerifyMode::Sampled) {
      const StarMatrix& g = elements[g_index++ % elements.size()];
      const OperatorMatrix lhs = bundle.tau_matrix(g, lp) * gamma(lp, l);
      const OperatorMatrix rhs = gamma(table.act(group, g, lp), table.act(group, g, l)) * bundle.tau_matrix(g, l);
      e.record(max_abs(lhs - rhs), tolerance, [&] { return "g=" + group.to_string(g) + ", " + name(); });
    }
  }

  if (mode == VerifyMode::Exhaustive) {
    for (const auto& g : elements) {
      std::vector<OperatorMatrix> taus;
      std::vector<std::uint32_t> images;
      for (std::uint32_t x = 0; x < n; ++x) {
        taus.push_back(bundle.tau_matrix(g, x));
        images.push_back(table.act(group, g, x));
      }
      for (const auto& [lp, l] : pairs) {
        const OperatorMatrix lhs = taus[lp] * gamma(lp, l);
        const OperatorMatrix rhs = gamma(images[lp], images[l]) * taus[l];
        e.record(max_abs(lhs - rhs), tolerance, [&] {
          return "g=" + group.to_string(g) + ", L'=" + std::to_string(lp) + ", L=" + std::to_string(l);
        });
      }
    }
  }

  return {{a, b, c, d, dfit, dmod, e, sw}};
}

}  // namespace weilstar
