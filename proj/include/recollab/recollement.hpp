#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recollab/homology.hpp"

namespace recollab {

enum class Flavor { IdempotentStratifying, Triangular, Opposite };
enum class Perfectness { Verified, Refuted, Inconclusive };

const char* to_string(Flavor f) noexcept;
const char* to_string(Perfectness p) noexcept;

/// One named numerical check.
struct CheckLine {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct Certificate {
  std::vector<CheckLine> checks;
  bool ok() const;
  void add(std::string name, bool ok, std::string detail = {});
  /// First failing check, if any.
  const CheckLine* failure() const;
};

struct StratifyingReport {
  Index tensor_dim = 0;  // dim Ae (x)_eAe eA
  Index ideal_dim = 0;   // dim AeA
  bool mult_iso = false;
  GradedDims tor;        // Tor^{eAe}_n(Ae, eA), n = 0 .. n_max
  int checked_to = 0;
  std::optional<int> failing_degree;  // least n >= 1 with Tor_n != 0
  bool stratifying = false;
  DimBound pd_quotient;  // pd of A/AeA as a right A-module
  Perfectness perfect_ideal = Perfectness::Inconclusive;
  std::string witness;   // for Refuted: the repeating syzygies

  /// Human-readable reason when not stratifying.
  std::string failure() const;
};

/// The multiplication and Tor conditions for AeA, plus perfectness of A/AeA
/// within the cutoff n_max.
template <class S>
StratifyingReport check_stratifying(const AlgebraPtr<S>& a, const Vec<S>& e, int n_max);

/// Recollement of D(a) relative to D(a1) and D(a2). An absent side is the
/// zero algebra. `e` and `parts` are present whenever the recollement is
/// given by an idempotent.
template <class S>
struct RecollementData {
  Flavor flavor = Flavor::IdempotentStratifying;
  AlgebraPtr<S> a;
  std::optional<AlgebraPtr<S>> a1, a2;
  std::optional<Vec<S>> e;
  std::optional<CanonicalBimodules<S>> parts;
  StratifyingReport stratifying;
  Perfectness perfect = Perfectness::Inconclusive;
  Certificate certificate;
  int window = 0;  // degree window used for certification

  bool has_idempotent() const { return e.has_value(); }
  const CanonicalBimodules<S>& bimodules() const;
};

/// Throws NotStratifying (with the failing condition) unless e is stratifying.
/// Certification runs the module battery and throws Internal on failure.
template <class S>
RecollementData<S> from_idempotent(const AlgebraPtr<S>& a, const Vec<S>& e, int n_max);

/// A = [[A1, 0], [M, A2]] with e = diag(0, 1). Throws NotPerfect unless
/// perfectness is verified.
template <class S>
RecollementData<S> from_triangular(const AlgebraPtr<S>& a1, const AlgebraPtr<S>& a2, const Bimodule<S>& m, int n_max);

/// B (x) A with idempotent 1 (x) e, certified from scratch. TransferFailed on
/// any failed certificate.
template <class S>
RecollementData<S> tensor_transfer(const AlgebraPtr<S>& b, const RecollementData<S>& r, int n_max);

/// Recollement of D(A^op) with the sides swapped: D((eAe)^op) on the left and
/// D((A/AeA)^op) on the right. The objects are the duals RHom_A(X, A) of
/// X1 = A/AeA and X2 = eA, certified directly (exceptional, orthogonal,
/// generating on simples); the presentation is the same e, now read in A^op,
/// turned one step. i^* and j_! of the result are not available.
/// NotPerfect unless r is perfect.
template <class S>
RecollementData<S> opposite_transfer(const RecollementData<S>& r, int n_max);

// ---------------------------------------------------------------- functors

enum class Functor { IUpperStar, ILowerStar, IUpperShriek, JLowerShriek, JUpperShriek, JLowerStar };

const char* to_string(Functor f) noexcept;
/// Parses "i^*", "i_*", "i^!", "j_!", "j^!", "j_*".
std::optional<Functor> parse_functor(const std::string& s);

/// Algebra a module must live over to be fed to f.
template <class S>
AlgebraPtr<S> functor_source(const RecollementData<S>& r, Functor f);

/// Cohomology dimensions of f(m) in degrees -n_max .. n_max (derived tensor
/// functors live in degrees <= 0, derived Hom functors in degrees >= 0).
template <class S>
GradedDims eval_functor(const RecollementData<S>& r, Functor f, const RightModule<S>& m, int n_max);

/// Standard test modules: the regular module and all simples.
template <class S>
std::vector<RightModule<S>> module_battery(const AlgebraPtr<S>& a);

/// R3, R4 (Euler form), and adjunction dimension checks on the batteries.
template <class S>
Certificate certify_battery(const RecollementData<S>& r, int n_max);

}  // namespace recollab
