#include "weilstar/symplectic.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace weilstar {

namespace {

std::vector<std::uint32_t> collect(const std::vector<bool>& members) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < members.size(); ++i) {
    if (members[i]) out.push_back(i);
  }
  return out;
}

}  // namespace

bool supports_weil(const Ring& ring) {
  if (!ring.is_truncated_poly()) return false;
  const std::uint32_t m = ring.degree_bound();
  if (m == 1) return true;
  return ring.involution() == Involution::NegateX && m % 2 == 1;
}

SelfDualModule::SelfDualModule(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("SelfDualModule: null ring");
  if (!supports_weil(*ring_)) {
    throw PreconditionError("self-dual module requires A_m with x* = -x and m odd (or m = 1), got " +
                            describe(ring_->spec()));
  }
  const std::uint64_t n = ring_->size();
  if (n * n > kMaxW) throw PreconditionError("W = A^2 too large to enumerate");
  size_ = static_cast<std::uint32_t>(n * n);
  p_ = ring_->field().p();
  eta_trace_.resize(n * n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      eta_trace_[a * n + b] =
          ring_->field().absolute_trace(ring_->trace_code(ring_->mul_code(ring_->star_code(a), b)));
    }
  }
}

std::uint32_t SelfDualModule::index(const WVector& v) const {
  if (v.first.ring_id() != ring_->id() || v.second.ring_id() != ring_->id()) {
    throw MixedRingError("WVector from a different ring");
  }
  return v.first.code() * dim() + v.second.code();
}

WVector SelfDualModule::vector(std::uint32_t index) const {
  if (index >= size_) throw std::out_of_range("W index out of range");
  return {ring_->element(index / dim()), ring_->element(index % dim())};
}

std::string SelfDualModule::to_string(const WVector& v) const {
  return "(" + ring_->to_string(v.first) + ", " + ring_->to_string(v.second) + ")";
}

FieldElement SelfDualModule::eta(RingElement a, RingElement b) const {
  return ring_->trace_tr(ring_->mul(ring_->star(a), b));
}

FieldElement SelfDualModule::form_B(const WVector& v, const WVector& w) const {
  return ring_->field().sub(eta(v.first, w.second), eta(v.second, w.first));
}

Scalar SelfDualModule::chi(const WVector& v, const WVector& w) const { return ring_->field().psi(form_B(v, w)); }

RingElement SelfDualModule::hermitian(const WVector& v, const WVector& w) const {
  const Ring& r = *ring_;
  return r.sub(r.mul(r.star(v.first), w.second), r.mul(r.star(v.second), w.first));
}

std::uint32_t SelfDualModule::add(std::uint32_t v, std::uint32_t w) const {
  const std::uint32_t n = dim();
  return ring_->add_code(v / n, w / n) * n + ring_->add_code(v % n, w % n);
}

std::uint32_t SelfDualModule::sub(std::uint32_t v, std::uint32_t w) const {
  const std::uint32_t n = dim();
  return ring_->add_code(v / n, ring_->neg_code(w / n)) * n + ring_->add_code(v % n, ring_->neg_code(w % n));
}

std::uint32_t SelfDualModule::scale(RingElement a, std::uint32_t v) const {
  const std::uint32_t n = dim();
  return ring_->mul_code(a.code(), v / n) * n + ring_->mul_code(a.code(), v % n);
}

std::uint32_t SelfDualModule::right_multiply(std::uint32_t v, const StarMatrix& g) const {
  const Ring& r = *ring_;
  const std::uint32_t n = dim();
  const std::uint32_t v1 = v / n, v2 = v % n;
  const std::uint32_t w1 = r.add_code(r.mul_code(v1, g.a.code()), r.mul_code(v2, g.c.code()));
  const std::uint32_t w2 = r.add_code(r.mul_code(v1, g.b.code()), r.mul_code(v2, g.d.code()));
  return w1 * n + w2;
}

WVector SelfDualModule::add(const WVector& v, const WVector& w) const {
  return {ring_->add(v.first, w.first), ring_->add(v.second, w.second)};
}

WVector SelfDualModule::scale(RingElement a, const WVector& v) const {
  return {ring_->mul(a, v.first), ring_->mul(a, v.second)};
}

WVector SelfDualModule::right_multiply(const WVector& v, const StarMatrix& g) const {
  const Ring& r = *ring_;
  return {r.add(r.mul(v.first, g.a), r.mul(v.second, g.c)), r.add(r.mul(v.first, g.b), r.mul(v.second, g.d))};
}

WVector SelfDualModule::act(const StarGroup& group, const StarMatrix& g, const WVector& v) const {
  return right_multiply(v, group.inv(g));
}

std::vector<std::uint32_t> SelfDualModule::span(const std::vector<WVector>& generators) const {
  std::vector<std::uint32_t> current{0};
  for (const auto& gen : generators) {
    const std::uint32_t gi = index(gen);
    std::vector<bool> members(size_, false);
    std::vector<std::uint32_t> multiples;
    for (std::uint32_t a = 0; a < dim(); ++a) multiples.push_back(scale(ring_->element(a), gi));
    for (std::uint32_t x : current) {
      for (std::uint32_t y : multiples) members[add(x, y)] = true;
    }
    current = collect(members);
  }
  return current;
}

std::vector<std::uint32_t> SelfDualModule::orthogonal_B(const std::vector<std::uint32_t>& elements) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t w = 0; w < size_; ++w) {
    if (std::all_of(elements.begin(), elements.end(), [&](std::uint32_t l) { return trace_B(w, l) == 0; })) {
      out.push_back(w);
    }
  }
  return out;
}

std::vector<std::uint32_t> SelfDualModule::orthogonal_hermitian(const std::vector<std::uint32_t>& elements) const {
  const Ring& r = *ring_;
  const std::uint32_t n = dim();
  std::vector<std::uint32_t> out;
  for (std::uint32_t w = 0; w < size_; ++w) {
    const bool orth = std::all_of(elements.begin(), elements.end(), [&](std::uint32_t l) {
      const std::uint32_t lhs = r.mul_code(r.star_code(w / n), l % n);
      const std::uint32_t rhs = r.mul_code(r.star_code(w % n), l / n);
      return lhs == rhs;
    });
    if (orth) out.push_back(w);
  }
  return out;
}

bool SelfDualModule::is_submodule(const std::vector<std::uint32_t>& elements) const {
  if (elements.empty()) return false;
  std::vector<bool> members(size_, false);
  for (auto e : elements) {
    if (e >= size_) return false;
    members[e] = true;
  }
  if (!members[0]) return false;
  for (auto x : elements) {
    for (auto y : elements) {
      if (!members[add(x, y)]) return false;
    }
    for (std::uint32_t a = 0; a < dim(); ++a) {
      if (!members[scale(ring_->element(a), x)]) return false;
    }
  }
  return true;
}

bool SelfDualModule::is_lagrangian(const std::vector<std::uint32_t>& elements) const {
  std::vector<std::uint32_t> sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return is_submodule(sorted) && orthogonal_B(sorted) == sorted;
}

bool SelfDualModule::is_lagrangian_hermitian(const std::vector<std::uint32_t>& elements) const {
  std::vector<std::uint32_t> sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return is_submodule(sorted) && orthogonal_hermitian(sorted) == sorted;
}

std::vector<SelfDualModule::Candidate> SelfDualModule::submodule_candidates() const {
  std::map<std::vector<std::uint32_t>, std::vector<WVector>> found;
  std::vector<std::pair<WVector, std::vector<std::uint32_t>>> cyclic;
  for (std::uint32_t v = 0; v < size_; ++v) {
    const WVector gen = vector(v);
    auto elements = span({gen});
    if (found.emplace(elements, std::vector<WVector>{gen}).second) cyclic.emplace_back(gen, std::move(elements));
  }
  std::vector<bool> members(size_);
  for (std::size_t i = 0; i < cyclic.size(); ++i) {
    for (std::size_t j = i + 1; j < cyclic.size(); ++j) {
      std::fill(members.begin(), members.end(), false);
      for (auto x : cyclic[i].second) {
        for (auto y : cyclic[j].second) members[add(x, y)] = true;
      }
      found.emplace(collect(members), std::vector<WVector>{cyclic[i].first, cyclic[j].first});
    }
  }
  std::vector<Candidate> out;
  out.reserve(found.size());
  for (auto& [elements, gens] : found) out.push_back({gens, elements});
  return out;
}

// ---------------------------------------------------------------------------

LagrangianTable::LagrangianTable(const SelfDualModule& module) : module_(&module) {
  for (auto& c : module.submodule_candidates()) {
    if (c.elements.size() != module.dim()) {
      // |L| |L^perp| = |W| for a non-degenerate form, so only this size can
      // satisfy L = L^perp.
      continue;
    }
    if (!module.is_lagrangian(c.elements)) continue;
    Lagrangian l;
    l.generators = std::move(c.generators);
    l.elements = std::move(c.elements);
    lagrangians_.push_back(std::move(l));
  }
  index();
}

LagrangianTable::LagrangianTable(const SelfDualModule& module, std::vector<Lagrangian> lagrangians)
    : module_(&module), lagrangians_(std::move(lagrangians)) {
  for (const auto& l : lagrangians_) {
    if (l.elements.size() != module.dim() || !std::is_sorted(l.elements.begin(), l.elements.end())) {
      throw std::invalid_argument("LagrangianTable: malformed Lagrangian");
    }
  }
  index();
}

void LagrangianTable::index() {
  std::sort(lagrangians_.begin(), lagrangians_.end(),
            [](const Lagrangian& a, const Lagrangian& b) { return a.elements < b.elements; });
  by_elements_.clear();
  for (std::uint32_t i = 0; i < lagrangians_.size(); ++i) {
    auto& l = lagrangians_[i];
    l.id = i;
    l.members.assign(module_->size(), false);
    for (auto e : l.elements) l.members[e] = true;
    if (!by_elements_.emplace(l.elements, i).second) throw std::invalid_argument("LagrangianTable: duplicate entry");
  }
}

std::optional<std::uint32_t> LagrangianTable::find(const std::vector<std::uint32_t>& sorted_elements) const {
  auto it = by_elements_.find(sorted_elements);
  if (it == by_elements_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t LagrangianTable::id_of(const std::vector<WVector>& generators) const {
  auto id = find(module_->span(generators));
  if (!id) throw std::invalid_argument("generators do not span a Lagrangian");
  return *id;
}

std::uint32_t LagrangianTable::act(const StarGroup& group, const StarMatrix& g, std::uint32_t id) const {
  const StarMatrix gi = group.inv(g);
  std::vector<std::uint32_t> image;
  image.reserve(module_->dim());
  for (auto v : (*this)[id].elements) image.push_back(module_->right_multiply(v, gi));
  std::sort(image.begin(), image.end());
  auto out = find(image);
  if (!out) throw std::logic_error("image of a Lagrangian is missing from the table");
  return *out;
}

std::uint32_t LagrangianTable::intersection_size(std::uint32_t a, std::uint32_t b) const {
  const auto& la = (*this)[a];
  const auto& lb = (*this)[b];
  std::uint32_t n = 0;
  for (auto v : la.elements) n += lb.contains(v) ? 1 : 0;
  return n;
}

std::uint32_t LagrangianTable::base_point() const {
  const Ring& r = module_->ring();
  return id_of({{r.zero(), r.one()}});
}

std::uint32_t LagrangianTable::supplementary() const {
  const Ring& r = module_->ring();
  return id_of({{r.one(), r.zero()}});
}

std::filesystem::path lagrangian_cache_file(const SelfDualModule& module, const std::filesystem::path& dir) {
  const auto& f = module.ring().field().spec();
  return dir / ("lagrangians_p" + std::to_string(f.p) + "_e" + std::to_string(f.e) + "_m" +
                std::to_string(module.ring().degree_bound()) + ".json");
}

namespace {

nlohmann::json cache_key(const SelfDualModule& module) {
  const auto& f = module.ring().field().spec();
  return {{"p", f.p},
          {"e", f.e},
          {"modulus", f.modulus},
          {"m", module.ring().degree_bound()},
          {"involution", module.ring().involution() == Involution::NegateX ? "negate-x" : "identity"}};
}

}  // namespace

void LagrangianTable::save(const std::filesystem::path& file) const {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["key"] = cache_key(*module_);
  auto& list = j["lagrangians"] = nlohmann::json::array();
  for (const auto& l : lagrangians_) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : l.generators) gens.push_back({g.first.code(), g.second.code()});
    list.push_back({{"id", l.id}, {"generators", gens}, {"elements", l.elements}});
  }
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << j.dump() << '\n';
}

LagrangianTable LagrangianTable::load_or_enumerate(const SelfDualModule& module, const std::filesystem::path& dir) {
  const auto file = lagrangian_cache_file(module, dir);
  if (std::filesystem::exists(file)) {
    try {
      std::ifstream in(file);
      const auto j = nlohmann::json::parse(in);
      if (j.at("format_version").get<int>() == kFormatVersion && j.at("key") == cache_key(module)) {
        std::vector<Lagrangian> ls;
        for (const auto& e : j.at("lagrangians")) {
          Lagrangian l;
          for (const auto& g : e.at("generators")) {
            l.generators.push_back({module.ring().element(g.at(0)), module.ring().element(g.at(1))});
          }
          l.elements = e.at("elements").get<std::vector<std::uint32_t>>();
          ls.push_back(std::move(l));
        }
        return LagrangianTable(module, std::move(ls));
      }
    } catch (const std::exception&) {
      // Unreadable or stale cache: fall through and rebuild.
    }
  }
  LagrangianTable table(module);
  std::filesystem::create_directories(dir);
  table.save(file);
  return table;
}

}  // namespace weilstar
