#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weilstar/star_group.hpp"

namespace weilstar {

// A_m with x* = -x and m odd, or m = 1 with either involution.
bool supports_weil(const Ring& ring);

struct WVector {
  RingElement first, second;
  friend bool operator==(const WVector&, const WVector&) = default;
  friend auto operator<=>(const WVector&, const WVector&) = default;
};

// S = A_m with eta(a, b) = tr(a* b), and W = S + S with
// B((s,t),(s',t')) = eta(s,t') - eta(t,s'). Elements of W are indexed by
// first * |A| + second, which is the canonical order.
class SelfDualModule {
 public:
  static constexpr std::uint64_t kMaxW = 1'000'000;

  // Requires A_m with x* = -x and m odd, or m = 1 with either involution.
  explicit SelfDualModule(RingPtr ring);

  const Ring& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  std::uint32_t dim() const { return ring_->size(); }  // |S| = q^m
  std::uint32_t size() const { return size_; }         // |W| = q^{2m}

  std::uint32_t index(const WVector& v) const;
  WVector vector(std::uint32_t index) const;
  std::string to_string(const WVector& v) const;

  FieldElement eta(RingElement a, RingElement b) const;
  FieldElement form_B(const WVector& v, const WVector& w) const;
  Scalar chi(const WVector& v, const WVector& w) const;
  // A-valued anti-hermitian form v1* w2 - v2* w1.
  RingElement hermitian(const WVector& v, const WVector& w) const;

  // Index-level versions for inner loops. `trace_B` is the absolute trace of B.
  std::uint32_t trace_B(std::uint32_t v, std::uint32_t w) const {
    const std::uint32_t n = dim();
    const std::uint32_t t1 = eta_trace_[(v / n) * n + (w % n)];
    const std::uint32_t t2 = eta_trace_[(v % n) * n + (w / n)];
    return (t1 + p_ - t2) % p_;
  }
  Scalar chi(std::uint32_t v, std::uint32_t w) const { return ring_->field().psi_of_trace(trace_B(v, w)); }
  std::uint32_t add(std::uint32_t v, std::uint32_t w) const;
  std::uint32_t sub(std::uint32_t v, std::uint32_t w) const;
  std::uint32_t scale(RingElement a, std::uint32_t v) const;
  std::uint32_t right_multiply(std::uint32_t v, const StarMatrix& g) const;

  WVector add(const WVector& v, const WVector& w) const;
  WVector scale(RingElement a, const WVector& v) const;
  // Row vector times matrix: (v1 a + v2 c, v1 b + v2 d).
  WVector right_multiply(const WVector& v, const StarMatrix& g) const;
  // The left action g.v := v.g^{-1}.
  WVector act(const StarGroup& group, const StarMatrix& g, const WVector& v) const;

  // The A-submodule generated by the given vectors, as sorted indices.
  std::vector<std::uint32_t> span(const std::vector<WVector>& generators) const;

  // Explicit orthogonals {w : B(w, l) = 0 for all l} and {w : hermitian(w, l) = 0}.
  std::vector<std::uint32_t> orthogonal_B(const std::vector<std::uint32_t>& elements) const;
  std::vector<std::uint32_t> orthogonal_hermitian(const std::vector<std::uint32_t>& elements) const;

  // Closed under addition and A, and equal to its own B-orthogonal.
  bool is_lagrangian(const std::vector<std::uint32_t>& elements) const;
  // Closed, and equal to its own orthogonal under the anti-hermitian form.
  bool is_lagrangian_hermitian(const std::vector<std::uint32_t>& elements) const;
  bool is_submodule(const std::vector<std::uint32_t>& elements) const;

  // Distinct A-submodules generated by one or two vectors, with a choice of
  // generators for each.
  struct Candidate {
    std::vector<WVector> generators;
    std::vector<std::uint32_t> elements;
  };
  std::vector<Candidate> submodule_candidates() const;

 private:
  RingPtr ring_;
  std::uint32_t size_ = 0;
  std::uint32_t p_ = 0;
  std::vector<std::uint32_t> eta_trace_;
};

struct Lagrangian {
  std::uint32_t id = 0;
  std::vector<WVector> generators;
  std::vector<std::uint32_t> elements;  // sorted W-indices
  std::vector<bool> members;            // indexed by W-index

  bool contains(std::uint32_t v) const { return members[v]; }
  std::size_t size() const { return elements.size(); }
};

// All Lagrangians of W, sorted by element list; ids are positions.
class LagrangianTable {
 public:
  static constexpr int kFormatVersion = 1;

  explicit LagrangianTable(const SelfDualModule& module);
  LagrangianTable(const SelfDualModule& module, std::vector<Lagrangian> lagrangians);

  // Loads from `<dir>/lagrangians_p<p>_e<e>_m<m>.json` when present and of the
  // current version, otherwise enumerates and writes the file.
  static LagrangianTable load_or_enumerate(const SelfDualModule& module, const std::filesystem::path& dir);
  void save(const std::filesystem::path& file) const;

  const SelfDualModule& module() const { return *module_; }
  const std::vector<Lagrangian>& all() const { return lagrangians_; }
  const Lagrangian& operator[](std::uint32_t id) const { return lagrangians_.at(id); }
  std::size_t size() const { return lagrangians_.size(); }

  std::optional<std::uint32_t> find(const std::vector<std::uint32_t>& sorted_elements) const;
  // The Lagrangian generated by the given vectors; throws if it is not one.
  std::uint32_t id_of(const std::vector<WVector>& generators) const;
  // g.L = L.g^{-1}.
  std::uint32_t act(const StarGroup& group, const StarMatrix& g, std::uint32_t id) const;

  std::uint32_t intersection_size(std::uint32_t a, std::uint32_t b) const;

  // <(0,1)> and <(1,0)>.
  std::uint32_t base_point() const;
  std::uint32_t supplementary() const;

 private:
  void index();

  const SelfDualModule* module_;
  std::vector<Lagrangian> lagrangians_;
  std::map<std::vector<std::uint32_t>, std::uint32_t> by_elements_;
};

std::filesystem::path lagrangian_cache_file(const SelfDualModule& module, const std::filesystem::path& dir);

}  // namespace weilstar
