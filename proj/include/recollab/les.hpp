#pragma once

#include <string>
#include <vector>

#include "recollab/homology.hpp"

namespace recollab {

/// Long exact cohomology sequence with explicit maps. Terms run
/// H^n(K), H^n(C), H^n(Q), H^{n+1}(K), ... ; maps[i] goes from terms[i] to
/// terms[i + 1]. For Tor sequences `homological` is set and the degrees are
/// the homological ones, decreasing along the sequence.
template <class S>
struct LesReport {
  struct Term {
    std::string label;
    int degree = 0;
    Index dim = 0;
  };
  struct Joint {
    std::size_t term = 0;
    bool checked = false;
    bool composes_to_zero = true;
    Index rank_in = 0, rank_out = 0;
    bool exact = false;
  };

  bool homological = false;
  std::vector<Term> terms;
  std::vector<Mat<S>> maps;
  std::vector<std::string> map_kinds;  // "induced" or "connecting"
  std::vector<Joint> joints;
  bool exact = false;

  /// Index of the term with the given label and degree, or npos.
  std::size_t find(const std::string& label, int degree) const;
};

/// Names for the three columns of a sequence.
struct LesLabels {
  std::string k, c, q;
};

/// Checks that 0 -> K -f-> C -g-> Q -> 0 is degreewise exact and f, g are
/// chain maps (InputNotExact otherwise), then builds the sequence over
/// degrees lo .. hi. A closed end means the cohomology beyond it is known to
/// vanish, so the boundary joint is checked too.
template <class S>
LesReport<S> les_from_complexes(const CochainComplex<S>& k, const CochainComplex<S>& c, const CochainComplex<S>& q,
                                const CochainMap<S>& f, const CochainMap<S>& g, int lo, int hi, const LesLabels& labels,
                                bool lower_closed, bool upper_closed);

/// C / im f degreewise for an injective chain map f: K -> C.
template <class S>
struct QuotientComplex {
  CochainComplex<S> complex;
  CochainMap<S> projection;
  CochainMap<S> section;  // linear (not chain) right inverse of the projection
};

template <class S>
QuotientComplex<S> quotient_complex(const CochainComplex<S>& c, const CochainMap<S>& f);

template <class S>
struct ShortExact {
  RightModule<S> left, middle, right;
  Mat<S> f, g;  // left -> middle -> right
};

/// Ext(T, -) applied to the sequence: degrees 0 .. n_max.
template <class S>
LesReport<S> les_covariant(const ShortExact<S>& ses, const RightModule<S>& t, int n_max, const LesLabels& labels);

/// Ext(-, T) via a horseshoe resolution: Ext(right) -> Ext(middle) -> Ext(left).
template <class S>
LesReport<S> les_contravariant(const ShortExact<S>& ses, const RightModule<S>& t, int n_max, const LesLabels& labels);

/// Tor(-, T) via a horseshoe resolution, homological degrees n_max .. 0.
template <class S>
LesReport<S> les_tensor(const ShortExact<S>& ses, const LeftModule<S>& t, int n_max, const LesLabels& labels);

}  // namespace recollab
