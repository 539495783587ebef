#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "recollab/module.hpp"

namespace recollab {

/// Cochain complex of vector spaces; term k sits in degree lo + k and d[k]
/// maps it to term k + 1. Terms outside the stored range are zero.
template <class S>
struct CochainComplex {
  FieldTag field;
  int lo = 0;
  std::vector<Index> dims;
  std::vector<Mat<S>> d;

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  Index dim(int n) const;
  /// C^n -> C^{n+1}; a correctly shaped zero matrix outside the stored range.
  Mat<S> diff(int n) const;
  /// Throws Internal if some d^{n+1} d^n is nonzero.
  void check() const;
};

/// Degreewise maps between two cochain complexes.
template <class S>
struct CochainMap {
  int lo = 0;
  std::vector<Mat<S>> f;
  Mat<S> at(int n, Index rows, Index cols, const FieldTag& field) const;
};

/// H^n with representatives; coordinates() expresses a cocycle in the basis
/// of representatives modulo coboundaries.
template <class S>
struct Cohomology {
  int degree = 0;
  Mat<S> reps;        // C^n x h
  Mat<S> system;      // [coboundary basis | reps]
  Index boundaries = 0;
  Index dim() const { return reps.cols(); }
  Mat<S> coordinates(const Mat<S>& cocycles) const;
};

template <class S>
Cohomology<S> cohomology(const CochainComplex<S>& c, int n);

template <class S>
Index cohomology_dim(const CochainComplex<S>& c, int n);

/// Matrix of the map induced on H^n by a chain map.
template <class S>
Mat<S> induced_map(const Cohomology<S>& from, const Cohomology<S>& to, const Mat<S>& f);

// ---------------------------------------------------------------- projective complexes

/// Bounded complex of finitely generated projective right modules, each term a
/// direct sum of e_i A in the basis of Algebra::projective(i). Term k sits in
/// degree lo + k; d[k] is the vector-space matrix of term k -> term k + 1.
template <class S>
struct ProjectiveComplex {
  AlgebraPtr<S> algebra;
  int lo = 0;
  std::vector<std::vector<std::size_t>> summands;
  std::vector<Mat<S>> d;

  int hi() const { return lo + static_cast<int>(summands.size()) - 1; }
  const std::vector<std::size_t>& terms(int n) const;
  Index dim(int n) const;
  RightModule<S> module(int n) const;
  Mat<S> diff(int n) const;
  ProjectiveComplex shift(int k) const;  // X[k]: degree n of the result is degree n + k of X
};

/// Offsets of the summands of a projective term, plus the total dimension.
template <class S>
std::vector<Index> summand_offsets(const Algebra<S>& a, const std::vector<std::size_t>& summands);

/// Coordinates of the k-th generator e_{i_k} inside the term.
template <class S>
Vec<S> generator_vector(const Algebra<S>& a, const std::vector<std::size_t>& summands, std::size_t k);

/// Entry (l, k) is the algebra element c with f(g_k) = sum_l g'_l c.
template <class S>
using ElementMatrix = std::vector<std::vector<Vec<S>>>;

template <class S>
ElementMatrix<S> to_elements(const Algebra<S>& a, const std::vector<std::size_t>& target,
                             const std::vector<std::size_t>& source, const Mat<S>& f);

template <class S>
Mat<S> from_elements(const Algebra<S>& a, const std::vector<std::size_t>& target,
                     const std::vector<std::size_t>& source, const ElementMatrix<S>& c);

/// Bounded complex of arbitrary modules, cohomologically indexed.
template <class S>
struct BoundedComplex {
  AlgebraPtr<S> algebra;
  int lo = 0;
  std::vector<RightModule<S>> modules;
  std::vector<Mat<S>> d;

  int hi() const { return lo + static_cast<int>(modules.size()) - 1; }
  static BoundedComplex concentrated(const RightModule<S>& m, int degree = 0);
  static BoundedComplex from_projective(const ProjectiveComplex<S>& x);
};

// ---------------------------------------------------------------- resolutions

/// Minimal projective resolution ... -> P_1 -> P_0 -> M. P_n sits in degree
/// -n of complex(). stabilized means the kernel of the last computed
/// differential is zero, so pd M = length() exactly; otherwise pd M > depth.
template <class S>
struct ProjectiveResolution {
  RightModule<S> module;
  std::vector<std::vector<std::size_t>> summands;  // degrees 0..length
  std::vector<Mat<S>> d;                           // d[n]: P_n -> P_{n-1}, d[0] empty
  Mat<S> augmentation;                             // P_0 -> M
  bool stabilized = false;
  int depth = 0;                                   // requested depth

  const AlgebraPtr<S>& algebra() const { return module.algebra(); }
  int length() const { return static_cast<int>(summands.size()) - 1; }
  const std::vector<std::size_t>& terms(int n) const;
  Index dim(int n) const;
  Mat<S> diff(int n) const;  // P_n -> P_{n-1}, zero-shaped outside
  RightModule<S> term(int n) const;
  ProjectiveComplex<S> complex(int top) const;  // P_top .. P_0 in degrees -top .. 0
};

/// Resolution with P_0 .. P_depth, stopping early at a zero syzygy.
template <class S>
ProjectiveResolution<S> projective_resolution(const RightModule<S>& m, int depth);

/// Uses RECOLLAB_CACHE_DIR-style on-disk cache when configured, plus an
/// in-process memo. Results are identical to projective_resolution.
template <class S>
ProjectiveResolution<S> cached_resolution(const RightModule<S>& m, int depth);

void set_resolution_cache(std::optional<std::filesystem::path> dir);
std::optional<std::filesystem::path> resolution_cache();
void clear_resolution_memo();

template <class S>
std::string serialize_resolution(const ProjectiveResolution<S>& r);
template <class S>
ProjectiveResolution<S> deserialize_resolution(const std::string& text, const RightModule<S>& m);

/// Exactness of P at every computed degree, including at M.
template <class S>
bool is_exact(const ProjectiveResolution<S>& r);

// ---------------------------------------------------------------- Hom and tensor

/// Total complex Hom_A(X, Y) with (df) = d_Y f - (-1)^n f d_X.
template <class S>
CochainComplex<S> hom_complex(const ProjectiveComplex<S>& x, const BoundedComplex<S>& y);

/// Hom_A(P, N) for a resolution P, in degrees 0 .. top.
template <class S>
CochainComplex<S> hom_complex(const ProjectiveResolution<S>& p, const RightModule<S>& n, int top);

/// Degreewise map Hom(P, N) -> Hom(P, N') induced by a module map h: N -> N'.
template <class S>
CochainMap<S> hom_postcompose(const ProjectiveResolution<S>& p, const RightModule<S>& n, const RightModule<S>& n2,
                              const Mat<S>& h, int top);

/// A cochain of Hom(P_n, N) (coordinates as in hom_complex) as the module
/// map P_n -> N it describes, and back.
template <class S>
Mat<S> cochain_to_map(const ProjectiveResolution<S>& p, int n, const RightModule<S>& target, const Vec<S>& cochain);
template <class S>
Vec<S> map_to_cochain(const ProjectiveResolution<S>& p, int n, const RightModule<S>& target, const Mat<S>& map);

/// P (x)_A N for a left module N, in degrees -top .. 0.
template <class S>
CochainComplex<S> tensor_complex(const ProjectiveResolution<S>& p, const LeftModule<S>& n, int top);

template <class S>
CochainComplex<S> tensor_complex(const ProjectiveComplex<S>& x, const LeftModule<S>& n);

// ---------------------------------------------------------------- maps of resolutions

/// Chain map F_n: P_n -> Q_n over f: M -> N (F lifts f through augmentations).
template <class S>
struct ChainMap {
  std::vector<Mat<S>> f;  // f[n]: P_n -> Q_n
};

template <class S>
ChainMap<S> lift_map(const Mat<S>& f, const ProjectiveResolution<S>& p, const ProjectiveResolution<S>& q);

/// Lift of a cocycle phi: P_shift -> N (given on P_shift as a matrix into N)
/// to F_n: P_{shift+n} -> Q_n, n = 0 .. steps.
template <class S>
ChainMap<S> lift_cocycle(const Mat<S>& phi, int shift, const ProjectiveResolution<S>& p,
                         const ProjectiveResolution<S>& q, int steps);

/// Horseshoe resolution of 0 -> M' -f-> M -g-> M'' -> 0: P_n = P'_n (+) P''_n
/// with differentials [[d', tau], [0, d'']].
template <class S>
struct Horseshoe {
  ProjectiveResolution<S> left, middle, right;
};

template <class S>
Horseshoe<S> horseshoe(const RightModule<S>& m1, const RightModule<S>& m, const RightModule<S>& m2, const Mat<S>& f,
                       const Mat<S>& g, int depth);

/// Throws InputNotExact unless 0 -> M' -> M -> M'' -> 0 is an exact sequence of modules.
template <class S>
void check_short_exact(const RightModule<S>& m1, const RightModule<S>& m, const RightModule<S>& m2, const Mat<S>& f,
                       const Mat<S>& g);

// ---------------------------------------------------------------- perfect complexes

/// H^n(Hom(X, X)) = 0 for all n != 0. The amplitude bounds the check.
template <class S>
bool is_exceptional(const ProjectiveComplex<S>& x);

/// Hom_A(-, A) degreewise: a complex over opposite(A) (passed in) with term p
/// of the result dual to term -p of x.
template <class S>
ProjectiveComplex<S> dualize_perfect(const ProjectiveComplex<S>& x, const AlgebraPtr<S>& opposite_algebra);

/// Cohomology dims of a projective complex as vector spaces.
template <class S>
std::vector<Index> cohomology_dims(const ProjectiveComplex<S>& x);

template <class S>
CochainComplex<S> underlying(const ProjectiveComplex<S>& x);

}  // namespace recollab
