#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "weilstar/report.hpp"
#include "weilstar/symplectic.hpp"

namespace weilstar {

using OperatorMatrix = Eigen::MatrixXcd;

// A function on W covariant under translation by its Lagrangian:
// f(w + l) = chi(w, l) f(w).
struct FiberFunction {
  std::uint32_t lagrangian = 0;
  std::vector<Scalar> values;  // indexed by W-index
};

// The bundle of fibers E_L over the Lagrangians of W, with the group action
// tau and the connection gamma.
class Bundle {
 public:
  Bundle(const LagrangianTable& table, const StarGroup& group);

  const LagrangianTable& table() const { return *table_; }
  const SelfDualModule& module() const { return table_->module(); }
  const StarGroup& group() const { return *group_; }

  // Minimal elements of the cosets of L, in canonical order.
  const std::vector<std::uint32_t>& coset_reps(std::uint32_t lagrangian) const { return reps_[lagrangian]; }
  // Position in coset_reps(L) of the coset containing v.
  std::uint32_t coset_of(std::uint32_t lagrangian, std::uint32_t v) const { return coset_[lagrangian][v]; }
  std::uint32_t fiber_dim() const { return module().dim(); }

  // f_r(r + l) = chi(r, l), zero off r + L.
  FiberFunction basis_function(std::uint32_t lagrangian, std::uint32_t rep_position) const;
  std::vector<FiberFunction> fiber_basis(std::uint32_t lagrangian) const;
  bool is_in_fiber(const FiberFunction& f, std::uint32_t lagrangian, double tolerance) const;
  Scalar inner_product(const FiberFunction& f, const FiberFunction& h) const;

  // (tau_g f)(w) = f(w.g), a function on the fiber over g.L.
  FiberFunction tau(const StarMatrix& g, const FiberFunction& f) const;
  // gamma_{L', L} f (w) = (|L||L n L'|)^{-1/2} sum_{l' in L'} conj(chi(w, l')) f(w + l').
  FiberFunction gamma(std::uint32_t target, const FiberFunction& f) const;

  // Coordinates in the basis f_r are the values f(r).
  Eigen::VectorXcd coordinates(const FiberFunction& f) const;
  FiberFunction from_coordinates(std::uint32_t lagrangian, const Eigen::VectorXcd& c) const;

  // Matrices in the coset bases.
  OperatorMatrix gamma_matrix(std::uint32_t target, std::uint32_t source) const;
  OperatorMatrix tau_matrix(const StarMatrix& g, std::uint32_t source) const;
  // gamma_{L, gL} o tau_g on E_L.
  OperatorMatrix contracted_matrix(const StarMatrix& g, std::uint32_t lagrangian) const;

  // S_W(L; L', L'') = sum over l in L n (L' + L'') of chi(l', l''), with l = l' + l''
  // the first decomposition found scanning L' forward (or backward).
  Scalar geometric_gauss_sum(std::uint32_t l, std::uint32_t lp, std::uint32_t lpp, bool reverse_scan = false) const;
  // gamma_{L'',L'} o gamma_{L',L} = multiplier(L'', L', L) gamma_{L'',L}.
  Scalar multiplier(std::uint32_t lpp, std::uint32_t lp, std::uint32_t l) const;

 private:
  const LagrangianTable* table_;
  const StarGroup* group_;
  std::vector<std::vector<std::uint32_t>> reps_;
  std::vector<std::vector<std::uint32_t>> coset_;
};

// Least-squares scalar with x ~ lambda y, and the max entry of x - lambda y.
struct ScalarFit {
  Scalar lambda{0.0, 0.0};
  double residual = 0.0;
};
ScalarFit fit_scalar(const OperatorMatrix& x, const OperatorMatrix& y);
double max_abs(const OperatorMatrix& m);

enum class VerifyMode { Exhaustive, Sampled };

struct ConnectionReport {
  std::vector<Check> properties;
  bool passed() const { return all_passed(properties); }
};

// Properties a) adjoint, b) isometry, c) inverse, d) composition with the
// multiplier, e) equivariance, plus well-definedness of S_W. Exhaustive mode
// covers every pair and triple and every group element (or `samples` of them
// when the group is larger); sampled mode draws `samples` triples.
ConnectionReport verify_connection(const Bundle& bundle, VerifyMode mode, std::size_t samples, std::uint64_t seed,
                                   double tolerance);

}  // namespace weilstar
