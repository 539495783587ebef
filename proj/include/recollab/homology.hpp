#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recollab/complex.hpp"

namespace recollab {

/// Dimensions in consecutive degrees lo .. hi(); zero outside.
struct GradedDims {
  int lo = 0;
  std::vector<Index> dims;

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  Index at(int n) const;
  std::string format() const;
  friend bool operator==(const GradedDims&, const GradedDims&) = default;
};

/// Which argument gets a projective resolution.
enum class Resolve { First, Second };

/// Tor^A_n(M, N) for n = 0 .. n_max. Resolve::Second resolves N over A^op.
template <class S>
GradedDims tor(const RightModule<S>& m, const LeftModule<S>& n, int n_max, Resolve side = Resolve::First);

/// Ext^n_A(M, N) for n = 0 .. n_max. Resolve::Second computes
/// Ext_{A^op}(DN, DM) with D the vector-space dual.
template <class S>
GradedDims ext(const RightModule<S>& m, const RightModule<S>& n, int n_max, Resolve side = Resolve::First);

/// Vector-space dual of a right A-module, as a right module over opposite(A).
template <class S>
RightModule<S> dual_module(const RightModule<S>& m, const AlgebraPtr<S>& opposite_algebra);

/// Finite(d) or AtLeast(cutoff + 1).
struct DimBound {
  bool finite = false;
  int value = 0;

  static DimBound exactly(int d) { return {true, d}; }
  static DimBound at_least(int d) { return {false, d}; }
  std::string format() const;
  friend bool operator==(const DimBound&, const DimBound&) = default;
};

template <class S>
DimBound projective_dimension(const RightModule<S>& m, int cutoff);

/// Two isomorphic nonzero syzygies among the first cutoff + 1 prove that the
/// minimal resolution of m never ends; returns a description of the pair.
template <class S>
std::optional<std::string> periodic_syzygy(const RightModule<S>& m, int cutoff);

/// max over simples of their projective dimension.
template <class S>
DimBound global_dimension(const AlgebraPtr<S>& a, int cutoff);

/// A as a right and as a left module over its enveloping algebra.
template <class S>
struct Diagonal {
  AlgebraPtr<S> env;
  RightModule<S> right;
  LeftModule<S> left;
};

template <class S>
Diagonal<S> diagonal(const AlgebraPtr<S>& a);

/// Projective dimension of A over A^e.
template <class S>
DimBound hochschild_dimension(const AlgebraPtr<S>& a, int cutoff);

/// HH_n(A) = Tor^{A^e}_n(A, A), n = 0 .. n_max.
template <class S>
GradedDims hochschild_homology(const AlgebraPtr<S>& a, int n_max);

/// HH^n(A) = Ext^n_{A^e}(A, A), n = 0 .. n_max.
template <class S>
GradedDims hochschild_cohomology(const AlgebraPtr<S>& a, int n_max);

// ---------------------------------------------------------------- bar oracle

struct BarDims {
  GradedDims homology;
  GradedDims cohomology;
};

/// HH_* and HH^* from the normalized Hochschild complexes A (x) Abar^{(x)n} and
/// Hom(Abar^{(x)n}, A), Abar = A / k1. Uses only the structure constants.
/// Throws BudgetExceeded if a term would exceed `budget` dimensions.
template <class S>
BarDims bar_oracle(const Algebra<S>& a, int n_max, Index budget = 20000);

// ---------------------------------------------------------------- Yoneda

/// Ext^n(M, N) for n = 0 .. n_max with cocycle representatives.
template <class S>
struct ExtGroups {
  RightModule<S> m, n;
  ProjectiveResolution<S> resolution;  // of m
  CochainComplex<S> complex;           // Hom(P, N)
  std::vector<Cohomology<S>> groups;   // degree k at index k

  int top() const { return static_cast<int>(groups.size()) - 1; }
};

template <class S>
ExtGroups<S> ext_groups(const RightModule<S>& m, const RightModule<S>& n, int n_max);

/// x in Ext^p(N, L), y in Ext^q(M, N) (coordinates in the given groups);
/// returns the coordinates of x y in Ext^{p+q}(M, L). Computed as x composed
/// with the lift of y.
template <class S>
Vec<S> yoneda_product(const ExtGroups<S>& left, int p, const Vec<S>& x, const ExtGroups<S>& right, int q,
                      const Vec<S>& y, const ExtGroups<S>& target);

}  // namespace recollab
