#include "recollab/field.hpp"

#include <charconv>
#include <limits>
#include <ostream>
#include <tuple>
#include <utility>

namespace recollab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotFiniteDimensional: return "NotFiniteDimensional";
    case ErrorCode::InvalidRelation: return "InvalidRelation";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::NotSplitBasic: return "NotSplitBasic";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::InvalidAlgebra: return "InvalidAlgebra";
    case ErrorCode::InvalidModule: return "InvalidModule";
    case ErrorCode::QuotientIsZero: return "QuotientIsZero";
    case ErrorCode::DepthMismatch: return "DepthMismatch";
    case ErrorCode::DepthInsufficient: return "DepthInsufficient";
    case ErrorCode::InputNotExact: return "InputNotExact";
    case ErrorCode::NotDegreewiseProjective: return "NotDegreewiseProjective";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotStratifying: return "NotStratifying";
    case ErrorCode::NotPerfect: return "NotPerfect";
    case ErrorCode::TransferFailed: return "TransferFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldTag FieldTag::prime_field(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw Error(ErrorCode::UnsupportedField, "modulus " + std::to_string(p) + " is not a prime below 2^31");
  return FieldTag{p};
}

FieldTag FieldTag::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text.substr(0, 3) == "Fp:") {
    auto digits = text.substr(3);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && p < (1ull << 31))
      return prime_field(static_cast<std::uint32_t>(p));
  }
  throw Error(ErrorCode::ParseError, "field must be \"Q\" or \"Fp:<prime>\", got \"" + std::string(text) + "\"");
}

std::string FieldTag::to_string() const {
  return is_rational() ? std::string("Q") : "Fp:" + std::to_string(prime);
}

// ---------------------------------------------------------------- Rational

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kInlineLimit = std::int64_t{1} << 62;

u128 uabs(i128 x) { return x < 0 ? static_cast<u128>(-x) : static_cast<u128>(x); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits_inline(i128 v) { return v > -kInlineLimit && v < kInlineLimit; }

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long long n) {
  if (fits_inline(n)) {
    num_ = n;
  } else {
    assign_big(mpq_class(mpz_class(std::to_string(n))));
  }
}

Rational::Rational(long long num, long long den) {
  if (den == 0) throw Error(ErrorCode::Internal, "rational with zero denominator");
  assign_wide(num, den);
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  assign_big(std::move(c));
}

Rational::Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
  if (other.big_) big_ = new mpq_class(*other.big_);
}

Rational::Rational(Rational&& other) noexcept : num_(other.num_), den_(other.den_), big_(other.big_) {
  other.big_ = nullptr;
  other.num_ = 0;
  other.den_ = 1;
}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  if (other.big_) {
    if (big_) {
      *big_ = *other.big_;
    } else {
      big_ = new mpq_class(*other.big_);
    }
  } else {
    delete big_;
    big_ = nullptr;
  }
  num_ = other.num_;
  den_ = other.den_;
  return *this;
}

Rational& Rational::operator=(Rational&& other) noexcept {
  if (this == &other) return *this;
  delete big_;
  big_ = other.big_;
  num_ = other.num_;
  den_ = other.den_;
  other.big_ = nullptr;
  other.num_ = 0;
  other.den_ = 1;
  return *this;
}

Rational::~Rational() { delete big_; }

void Rational::assign_big(mpq_class&& q) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p()) {
    long nn = n.get_si();
    long dd = d.get_si();
    if (fits_inline(nn) && fits_inline(dd)) {
      delete big_;
      big_ = nullptr;
      num_ = nn;
      den_ = dd;
      return;
    }
  }
  if (big_) {
    *big_ = std::move(q);
  } else {
    big_ = new mpq_class(std::move(q));
  }
  num_ = 0;
  den_ = 1;
}

void Rational::assign_wide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    delete big_;
    big_ = nullptr;
    num_ = 0;
    den_ = 1;
    return;
  }
  u128 g = gcd128(uabs(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  if (fits_inline(num) && fits_inline(den)) {
    delete big_;
    big_ = nullptr;
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    return;
  }
  mpq_class q(to_mpz(num), to_mpz(den));
  assign_big(std::move(q));
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(to_mpz(num_), to_mpz(den_));
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return Error(ErrorCode::ParseError, "not a rational number: \"" + s + "\""); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto valid_int = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) throw bad();
  if (num[0] == '+') num.erase(0, 1);
  mpz_class d(den);
  if (d == 0) throw bad();
  mpq_class q(mpz_class(num), d);
  q.canonicalize();
  return Rational(q);
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::Internal, "division by zero");
  if (big_) {
    mpq_class q = 1 / *big_;
    return Rational(q);
  }
  Rational r;
  r.assign_wide(den_, num_);
  return r;
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      i128 s = static_cast<i128>(num_) + rhs.num_;
      if (fits_inline(s)) {
        num_ = static_cast<std::int64_t>(s);
        return *this;
      }
    }
    assign_wide(static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_,
                static_cast<i128>(den_) * rhs.den_);
    return *this;
  }
  assign_big(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    assign_wide(static_cast<i128>(num_) * rhs.den_ - static_cast<i128>(rhs.num_) * den_,
                static_cast<i128>(den_) * rhs.den_);
    return *this;
  }
  assign_big(to_mpq() - rhs.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    assign_wide(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_);
    return *this;
  }
  assign_big(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::Internal, "division by zero");
  if (!big_ && !rhs.big_) {
    assign_wide(static_cast<i128>(num_) * rhs.den_, static_cast<i128>(den_) * rhs.num_);
    return *this;
  }
  assign_big(to_mpq() / rhs.to_mpq());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  // Canonical forms: a value that fits inline is never stored big.
  return false;
}

bool operator<(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_)
    return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
  return a.to_mpq() < b.to_mpq();
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

// ---------------------------------------------------------------- Zp

namespace {

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return t;
}

}  // namespace

Zp::Zp(long long n, std::uint32_t p) : p_(p) {
  if (p == 0) {
    raw_ = n;
    return;
  }
  std::int64_t r = n % static_cast<std::int64_t>(p);
  raw_ = r < 0 ? r + p : r;
}

std::int64_t Zp::reduced(std::uint32_t p) const noexcept {
  if (p == 0 || p_ == p) return raw_;
  std::int64_t r = raw_ % static_cast<std::int64_t>(p);
  return r < 0 ? r + p : r;
}

std::uint32_t Zp::common_modulus(const Zp& a, const Zp& b) {
  if (a.p_ == 0) return b.p_;
  if (b.p_ == 0 || a.p_ == b.p_) return a.p_;
  throw Error(ErrorCode::FieldMismatch,
              "F_" + std::to_string(a.p_) + " element combined with F_" + std::to_string(b.p_) + " element");
}

std::string Zp::to_string() const { return std::to_string(raw_); }

Zp Zp::inverse() const {
  if (is_zero()) throw Error(ErrorCode::Internal, "division by zero");
  if (p_ == 0) {
    if (raw_ == 1 || raw_ == -1) return *this;
    throw Error(ErrorCode::Internal, "cannot invert an integer constant outside a prime field");
  }
  Zp r;
  r.p_ = p_;
  r.raw_ = mod_inverse(raw_, p_);
  return r;
}

Zp Zp::operator-() const {
  Zp r = *this;
  if (p_ == 0) {
    r.raw_ = -raw_;
  } else if (raw_ != 0) {
    r.raw_ = p_ - raw_;
  }
  return r;
}

Zp& Zp::operator+=(const Zp& rhs) {
  std::uint32_t p = common_modulus(*this, rhs);
  if (p == 0) {
    raw_ += rhs.raw_;
    return *this;
  }
  std::int64_t s = reduced(p) + rhs.reduced(p);
  raw_ = s >= p ? s - p : s;
  p_ = p;
  return *this;
}

Zp& Zp::operator-=(const Zp& rhs) {
  std::uint32_t p = common_modulus(*this, rhs);
  if (p == 0) {
    raw_ -= rhs.raw_;
    return *this;
  }
  std::int64_t s = reduced(p) - rhs.reduced(p);
  raw_ = s < 0 ? s + p : s;
  p_ = p;
  return *this;
}

Zp& Zp::operator*=(const Zp& rhs) {
  std::uint32_t p = common_modulus(*this, rhs);
  if (p == 0) {
    raw_ *= rhs.raw_;
    return *this;
  }
  raw_ = (reduced(p) * rhs.reduced(p)) % p;
  p_ = p;
  return *this;
}

Zp& Zp::operator/=(const Zp& rhs) {
  std::uint32_t p = common_modulus(*this, rhs);
  if (p == 0) return *this *= rhs.inverse();
  Zp inv = Zp(rhs.reduced(p), p).inverse();
  return *this *= inv;
}

bool operator==(const Zp& a, const Zp& b) {
  std::uint32_t p = Zp::common_modulus(a, b);
  return a.reduced(p) == b.reduced(p);
}

std::ostream& operator<<(std::ostream& os, const Zp& x) { return os << x.to_string(); }

Zp ScalarTraits<Zp>::parse(const FieldTag& tag, std::string_view text) {
  Rational q = Rational::parse(text);
  mpq_class v = q.to_mpq();
  mpz_class p(tag.prime);
  mpz_class num = v.get_num() % p;
  mpz_class den = v.get_den() % p;
  if (den == 0)
    throw Error(ErrorCode::ParseError, "denominator of \"" + std::string(text) + "\" vanishes mod " + std::to_string(tag.prime));
  Zp n(num.get_si(), tag.prime);
  Zp d(den.get_si(), tag.prime);
  return n / d;
}

}  // namespace recollab
