#pragma once

// Exact scalar types. Every dense matrix in the library is an Eigen matrix over
// one of these, and every algorithm is a template on the scalar.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <gmpxx.h>

#include "recollab/error.hpp"

namespace recollab {

/// Which exact field a computation lives in: the rationals (prime == 0) or F_p.
struct FieldTag {
  std::uint32_t prime = 0;

  static FieldTag rationals() { return {}; }
  static FieldTag prime_field(std::uint32_t p);
  /// Accepts "Q" or "Fp:<prime>".
  static FieldTag parse(std::string_view text);

  bool is_rational() const noexcept { return prime == 0; }
  std::string to_string() const;

  friend bool operator==(const FieldTag&, const FieldTag&) = default;
};

bool is_prime(std::uint64_t n) noexcept;

/// Arbitrary-precision rational. Values whose numerator and denominator fit in
/// 62 bits are stored inline; anything larger spills to a GMP rational.
class Rational {
 public:
  Rational() noexcept = default;
  Rational(long long n);  // NOLINT: implicit so Eigen's Scalar(0)/Scalar(1) work
  Rational(int n) : Rational(static_cast<long long>(n)) {}  // NOLINT
  Rational(long long num, long long den);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept;
  ~Rational();

  bool is_zero() const noexcept { return big_ == nullptr && num_ == 0; }
  bool is_one() const noexcept { return big_ == nullptr && num_ == 1 && den_ == 1; }
  mpq_class to_mpq() const;
  std::string to_string() const;
  /// "p", "-p" or "p/q"; throws ParseError.
  static Rational parse(std::string_view text);

  Rational inverse() const;
  Rational operator-() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  void assign_big(mpq_class&& q);
  void assign_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  mpq_class* big_ = nullptr;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

/// Element of a prime field F_p with the modulus carried alongside the value.
/// A modulus of 0 marks an integer constant that has not met a field element
/// yet (Eigen builds Scalar(0) and Scalar(1) without context); it binds to the
/// modulus of the first operand it is combined with.
class Zp {
 public:
  Zp() noexcept = default;
  Zp(long long n) noexcept : raw_(n) {}  // NOLINT: unbound constant
  Zp(int n) noexcept : raw_(n) {}        // NOLINT
  Zp(long long n, std::uint32_t p);

  std::uint32_t modulus() const noexcept { return p_; }
  /// Representative in [0, p) for bound values, the raw integer otherwise.
  std::int64_t value() const noexcept { return raw_; }
  bool is_zero() const noexcept { return raw_ == 0; }
  bool is_one() const noexcept { return raw_ == 1; }
  std::string to_string() const;

  Zp inverse() const;
  Zp operator-() const;

  Zp& operator+=(const Zp& rhs);
  Zp& operator-=(const Zp& rhs);
  Zp& operator*=(const Zp& rhs);
  Zp& operator/=(const Zp& rhs);

  friend Zp operator+(Zp lhs, const Zp& rhs) { return lhs += rhs; }
  friend Zp operator-(Zp lhs, const Zp& rhs) { return lhs -= rhs; }
  friend Zp operator*(Zp lhs, const Zp& rhs) { return lhs *= rhs; }
  friend Zp operator/(Zp lhs, const Zp& rhs) { return lhs /= rhs; }
  friend bool operator==(const Zp& a, const Zp& b);
  friend bool operator!=(const Zp& a, const Zp& b) { return !(a == b); }

 private:
  static std::uint32_t common_modulus(const Zp& a, const Zp& b);
  std::int64_t reduced(std::uint32_t p) const noexcept;

  std::int64_t raw_ = 0;
  std::uint32_t p_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Zp& x);

inline bool is_zero(const Rational& x) noexcept { return x.is_zero(); }
inline bool is_zero(const Zp& x) noexcept { return x.is_zero(); }
inline Rational inverse(const Rational& x) { return x.inverse(); }
inline Zp inverse(const Zp& x) { return x.inverse(); }

/// Per-scalar glue: constructing constants inside a field and (de)serializing.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr const char* name = "Q";
  static bool accepts(const FieldTag& tag) { return tag.is_rational(); }
  static Rational make(const FieldTag&, long long n) { return Rational(n); }
  static Rational parse(const FieldTag&, std::string_view text) { return Rational::parse(text); }
  static std::string format(const Rational& x) { return x.to_string(); }
};

template <>
struct ScalarTraits<Zp> {
  static constexpr const char* name = "Fp";
  static bool accepts(const FieldTag& tag) { return !tag.is_rational(); }
  static Zp make(const FieldTag& tag, long long n) { return Zp(n, tag.prime); }
  /// Accepts integers and "p/q" fractions (interpreted as p * q^-1).
  static Zp parse(const FieldTag& tag, std::string_view text);
  static std::string format(const Zp& x) { return x.to_string(); }
};

template <class S>
S make_scalar(const FieldTag& tag, long long n) {
  return ScalarTraits<S>::make(tag, n);
}

template <class S>
std::string format_scalar(const S& x) {
  return ScalarTraits<S>::format(x);
}

// Explicit instantiation helper used by every translation unit that defines
// templates out of line.
#define RECOLLAB_FOR_EACH_SCALAR(X) \
  X(::recollab::Rational)           \
  X(::recollab::Zp)

}  // namespace recollab

namespace Eigen {

template <>
struct NumTraits<recollab::Rational> : GenericNumTraits<recollab::Rational> {
  using Real = recollab::Rational;
  using NonInteger = recollab::Rational;
  using Literal = recollab::Rational;
  using Nested = recollab::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4,
  };
  static recollab::Rational epsilon() { return 0; }
  static recollab::Rational dummy_precision() { return 0; }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<recollab::Zp> : GenericNumTraits<recollab::Zp> {
  using Real = recollab::Zp;
  using NonInteger = recollab::Zp;
  using Literal = recollab::Zp;
  using Nested = recollab::Zp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 2,
  };
  static recollab::Zp epsilon() { return 0; }
  static recollab::Zp dummy_precision() { return 0; }
  static int digits10() { return 0; }
};

}  // namespace Eigen
