#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recollab/les.hpp"
#include "recollab/recollement.hpp"

namespace recollab {

/// Tor sequence of 0 -> AeA -> A -> A/AeA -> 0 under - (x)_{A^e} A, with the
/// ends compared against HH_*(eAe) and HH_*(A/AeA).
template <class S>
struct KellerReport {
  bool degenerate = false;  // AeA = A: only HH(A) = HH(eAe) is checked
  LesReport<S> les;
  GradedDims hh, hh_corner, hh_quotient;
  Certificate checks;
  std::optional<bool> additive;  // set when the recollement is perfect

  bool ok() const { return (degenerate || les.exact) && checks.ok() && additive.value_or(true); }
};

template <class S>
KellerReport<S> keller_homology(const RecollementData<S>& r, int n_max);

/// The three Ext sequences of the same short exact sequence:
///   Ext(A, AeA) -> HH(A) -> Ext(A, A/AeA)        third term against HH(A/AeA)
///   Ext(A/AeA, A) -> HH(A) -> Ext(AeA, A)        third term against HH(eAe)
///   Ext(A/AeA, AeA) -> HH(A) -> HH(A/AeA) + HH(eAe)
/// The last is realized as Hom(P'', AeA) -> Hom(P, A) -> quotient, and the
/// quotient is compared with Hom(P', A) (+) Hom(P, A/AeA) by a quasi-isomorphism
/// check in each degree.
template <class S>
struct CohomologyLesReport {
  bool degenerate = false;
  std::vector<LesReport<S>> sequences;
  GradedDims hh, hh_corner, hh_quotient;
  Certificate checks;

  bool ok() const;
};

template <class S>
CohomologyLesReport<S> cohomology_les(const RecollementData<S>& r, int n_max);

enum class Verdict { Consistent, ConsistentVacuous, Inconclusive, Falsified };

const char* to_string(Verdict v) noexcept;

struct EquivalenceReport {
  struct Side {
    std::string name;
    DimBound bound;
    std::string witness;  // proof that the dimension is infinite, when found
  };
  std::string invariant;  // "hochschild_dimension" or "global_dimension"
  bool applies = true;    // the equivalence is guaranteed for this recollement
  std::vector<Side> sides;
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

/// Hochschild dimension of A and both sides; the equivalence needs a perfect recollement.
template <class S>
EquivalenceReport smoothness_equivalence(const RecollementData<S>& r, int cutoff);

template <class S>
EquivalenceReport gldim_equivalence(const RecollementData<S>& r, int cutoff);

struct DualityReport {
  std::vector<Index> dims, dual_dims, double_dual_dims;
  int lo = 0, dual_lo = 0;
  bool dims_equal = false;
  IsoVerdict h0 = IsoVerdict::Inconclusive;

  bool ok() const { return dims_equal && h0 == IsoVerdict::Isomorphic; }
};

/// Dualizes twice with Hom(-, A) and compares with the original complex.
template <class S>
DualityReport duality_roundtrip(const ProjectiveComplex<S>& x, const AlgebraPtr<S>& opposite_algebra);

/// H^0 of a projective complex as a module.
template <class S>
RightModule<S> cohomology_module(const ProjectiveComplex<S>& x, int n);

}  // namespace recollab
