#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "recollab/algebra.hpp"

namespace recollab {

/// Action matrices of a finite-dimensional module, one per basis element of
/// the algebra. Matrices act on column vectors from the left.
template <class S>
struct Representation {
  AlgebraPtr<S> algebra;
  Index dim = 0;
  std::vector<Mat<S>> action;
};

/// Right A-module. Convention: m * b_i = action(i) * m, hence
/// action(x y) = action(y) * action(x). Checked at construction.
template <class S>
class RightModule {
 public:
  RightModule() = default;
  /// With verify = false the caller vouches for the module axioms.
  RightModule(AlgebraPtr<S> algebra, Index dim, std::vector<Mat<S>> action, bool verify = true);

  static RightModule zero(AlgebraPtr<S> algebra);
  static RightModule regular(AlgebraPtr<S> algebra);
  /// The indecomposable projective e_i A.
  static RightModule projective(AlgebraPtr<S> algebra, std::size_t i);
  /// The simple top of e_i A.
  static RightModule simple(AlgebraPtr<S> algebra, std::size_t i);

  const AlgebraPtr<S>& algebra() const { return rep_->algebra; }
  Index dim() const { return rep_->dim; }
  const Mat<S>& action(Index i) const { return rep_->action[static_cast<std::size_t>(i)]; }
  const std::vector<Mat<S>>& actions() const { return rep_->action; }
  /// Matrix of m -> m * x.
  Mat<S> act(const Vec<S>& x) const;
  std::uint64_t hash() const;

 private:
  std::shared_ptr<const Representation<S>> rep_;
};

/// Left A-module: b_i * m = action(i) * m, so action(x y) = action(x) action(y).
template <class S>
class LeftModule {
 public:
  LeftModule() = default;
  LeftModule(AlgebraPtr<S> algebra, Index dim, std::vector<Mat<S>> action, bool verify = true);

  static LeftModule regular(AlgebraPtr<S> algebra);

  const AlgebraPtr<S>& algebra() const { return rep_->algebra; }
  Index dim() const { return rep_->dim; }
  const Mat<S>& action(Index i) const { return rep_->action[static_cast<std::size_t>(i)]; }
  const std::vector<Mat<S>>& actions() const { return rep_->action; }
  Mat<S> act(const Vec<S>& x) const;
  /// The same data as a right module over the opposite algebra.
  RightModule<S> as_right(const AlgebraPtr<S>& opposite_algebra) const;

 private:
  std::shared_ptr<const Representation<S>> rep_;
};

template <class S>
LeftModule<S> as_left(const RightModule<S>& m, const AlgebraPtr<S>& opposite_algebra);

/// B-A-bimodule stored as commuting left (B) and right (A) action matrices.
template <class S>
class Bimodule {
 public:
  Bimodule() = default;
  Bimodule(AlgebraPtr<S> left, AlgebraPtr<S> right, Index dim, std::vector<Mat<S>> left_action,
           std::vector<Mat<S>> right_action);

  /// A as an A-A-bimodule.
  static Bimodule regular(AlgebraPtr<S> a);

  Index dim() const { return dim_; }
  const AlgebraPtr<S>& left_algebra() const { return left_.algebra(); }
  const AlgebraPtr<S>& right_algebra() const { return right_.algebra(); }
  const LeftModule<S>& left() const { return left_; }
  const RightModule<S>& right() const { return right_; }

  /// Right module over env = tensor(opposite(B), A):
  /// m * (b_i^op (x) a_j) = b_i m a_j.
  RightModule<S> as_right_module(const AlgebraPtr<S>& env) const;
  /// Left module over env = tensor(opposite(A), B) ... for an A-A-bimodule
  /// this is the enveloping algebra: (a_i^op (x) a_j) * m = a_j m a_i.
  LeftModule<S> as_left_module(const AlgebraPtr<S>& env) const;

 private:
  Index dim_ = 0;
  LeftModule<S> left_;
  RightModule<S> right_;
};

// ---------------------------------------------------------------- maps

template <class S>
bool is_homomorphism(const RightModule<S>& m, const RightModule<S>& n, const Mat<S>& f);

/// Basis of Hom_A(M, N); each entry is dim N x dim M.
template <class S>
std::vector<Mat<S>> hom_space(const RightModule<S>& m, const RightModule<S>& n);

template <class S>
struct Submodule {
  RightModule<S> module;
  Mat<S> inclusion;  // ambient x sub
};

template <class S>
struct QuotientModule {
  RightModule<S> module;
  Mat<S> projection;  // quotient x ambient
};

/// Restriction to a submodule given by an invariant subspace.
template <class S>
Submodule<S> submodule(const RightModule<S>& m, const Subspace<S>& w);

template <class S>
QuotientModule<S> quotient_module(const RightModule<S>& m, const Subspace<S>& w);

template <class S>
struct KernelCokernel {
  Submodule<S> kernel;
  QuotientModule<S> cokernel;
};

template <class S>
KernelCokernel<S> kernel_cokernel(const RightModule<S>& m, const RightModule<S>& n, const Mat<S>& f);

/// M * rad as a subspace of M.
template <class S>
Subspace<S> radical_submodule(const RightModule<S>& m);

/// Restriction along an algebra map phi: B -> A given as a dim A x dim B matrix.
template <class S>
RightModule<S> restrict_module(const RightModule<S>& m, const AlgebraPtr<S>& b, const Mat<S>& phi);

// ---------------------------------------------------------------- tensor

template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b);

/// M (x)_B N as the quotient of M (x) N (index i * dim N + j) by balancing
/// relations m b (x) n - m (x) b n.
template <class S>
struct TensorSpace {
  Subspace<S> relations;
  Index dim = 0;
  Index dim_m = 0, dim_n = 0;
  /// Operator on M (x) N induced to the quotient.
  Mat<S> induce(const Mat<S>& op) const;
  /// Quotient coordinates of m (x) n.
  Vec<S> element(const Vec<S>& m, const Vec<S>& n) const;
};

template <class S>
TensorSpace<S> tensor_space(const RightModule<S>& m, const LeftModule<S>& n);

/// M (x)_B N for right B-module M and B-A-bimodule N, as a right A-module.
template <class S>
RightModule<S> tensor_over(const RightModule<S>& m, const Bimodule<S>& n);

/// M (x)_B N for C-B-bimodule M and B-A-bimodule N.
template <class S>
Bimodule<S> tensor_over(const Bimodule<S>& m, const Bimodule<S>& n);

// ---------------------------------------------------------------- covers

/// Minimal projective cover: generators g_k in M e_{i_k} spanning the top.
template <class S>
struct ProjectiveCover {
  std::vector<std::size_t> summands;  // primitive index of each e_i A summand
  std::vector<Vec<S>> generators;     // images of e_{i_k}
  Mat<S> map;                         // dim M x dim P
  Index dim = 0;                      // dim P
};

template <class S>
ProjectiveCover<S> projective_cover(const RightModule<S>& m);

template <class S>
struct FreeCover {
  Index rank = 0;
  RightModule<S> free;
  Mat<S> map;  // dim M x (rank * dim A)
};

/// A^r -> M with r the largest multiplicity of a simple in the top of M.
template <class S>
FreeCover<S> free_cover(const RightModule<S>& m);

template <class S>
bool is_projective(const RightModule<S>& m);

/// Direct sum of e_{i_k} A as a module.
template <class S>
RightModule<S> projective_module(const AlgebraPtr<S>& a, const std::vector<std::size_t>& summands);

// ---------------------------------------------------------------- iso test

enum class IsoVerdict { Isomorphic, NotIsomorphic, Inconclusive };

const char* to_string(IsoVerdict v) noexcept;

template <class S>
struct IsoResult {
  IsoVerdict verdict = IsoVerdict::Inconclusive;
  std::optional<Mat<S>> witness;  // invertible intertwiner M -> N
  long evaluations = 0;
};

/// Deterministic search for an invertible element of Hom(M, N) on the grid
/// {0..dim}^h (complete by the degree bound on det), or all of F_p^h when p is
/// too small for that grid. Gives up after `budget` evaluations.
template <class S>
IsoResult<S> iso_test(const RightModule<S>& m, const RightModule<S>& n, long budget = 200000);

// ---------------------------------------------------------------- algebras

template <class S>
struct Triangular {
  AlgebraPtr<S> algebra;
  Vec<S> e1, e2;
};

/// [[A1, 0], [M, A2]] for an A2-A1-bimodule M; basis A1, A2, M in that order.
template <class S>
Triangular<S> triangular(const AlgebraPtr<S>& a1, const AlgebraPtr<S>& a2, const Bimodule<S>& m);

/// k^d as a bimodule over two one-dimensional algebras (scalars act as scalars).
template <class S>
Bimodule<S> scalar_bimodule(const AlgebraPtr<S>& left, const AlgebraPtr<S>& right, Index d);

template <class S>
struct CanonicalBimodules {
  Corner<S> corner;
  IdealQuotient<S> quotient;
  Bimodule<S> a;       // A as A-A
  Bimodule<S> ae;      // Ae as A-eAe
  Bimodule<S> ea;      // eA as eAe-A
  Bimodule<S> aea;     // AeA as A-A
  std::optional<Bimodule<S>> a_mod;  // A/AeA as A-A, absent when zero
  Mat<S> inclusion;    // AeA -> A
  Mat<S> projection;   // A -> A/AeA
};

template <class S>
CanonicalBimodules<S> canonical_bimodules(const AlgebraPtr<S>& a, const Vec<S>& e);

}  // namespace recollab
