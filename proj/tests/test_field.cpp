#include <doctest.h>

#include <random>
#include <sstream>

#include "recollab/field.hpp"

using namespace recollab;

TEST_CASE("field tags parse and print") {
  CHECK(FieldTag::parse("Q").is_rational());
  CHECK(FieldTag::parse("Fp:5").prime == 5);
  CHECK(FieldTag::parse("Fp:5").to_string() == "Fp:5");
  CHECK_THROWS_AS(FieldTag::parse("Fp:6"), Error);
  CHECK_THROWS_AS(FieldTag::parse("R"), Error);
  CHECK_THROWS_AS(FieldTag::parse("Fp:"), Error);
}

TEST_CASE("rational arithmetic is exact and normalized") {
  Rational a(1, 3), b(1, 6);
  CHECK((a + b) == Rational(1, 2));
  CHECK((a - b).to_string() == "1/6");
  CHECK((a * b).to_string() == "1/18");
  CHECK((a / b) == Rational(2));
  CHECK(Rational(4, -6).to_string() == "-2/3");
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK(Rational::parse("+7") == Rational(7));
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("x"), Error);
  CHECK_THROWS_AS(Rational(0).inverse(), Error);
}

TEST_CASE("rational overflow spills to gmp and demotes back") {
  Rational big(1LL << 61);
  Rational sq = big * big * big;
  CHECK(sq.to_mpq() == mpq_class(mpz_class(1) << 183));
  Rational back = sq / (big * big);
  CHECK(back == big);
  CHECK(back.to_string() == std::to_string(1LL << 61));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    long long p = static_cast<long long>(rng() >> 2) - (1LL << 60);
    long long q = static_cast<long long>(rng() >> 3) + 1;
    long long r = static_cast<long long>(rng() >> 2) - (1LL << 60);
    long long s = static_cast<long long>(rng() >> 3) + 1;
    mpq_class x(mpz_class(std::to_string(p)), mpz_class(std::to_string(q)));
    mpq_class y(mpz_class(std::to_string(r)), mpz_class(std::to_string(s)));
    x.canonicalize();
    y.canonicalize();
    Rational a(p, q), c(r, s);
    CHECK((a + c).to_mpq() == x + y);
    CHECK((a - c).to_mpq() == x - y);
    CHECK((a * c).to_mpq() == x * y);
    if (r != 0) CHECK((a / c).to_mpq() == x / y);
    CHECK(((a * c) / c) == a);
  }
}

TEST_CASE("prime field arithmetic") {
  Zp a(3, 5), b(4, 5);
  CHECK((a + b).value() == 2);
  CHECK((a - b).value() == 4);
  CHECK((a * b).value() == 2);
  CHECK((a / b).value() == 2);
  CHECK((a * a.inverse()).value() == 1);
  CHECK(Zp(-1, 5).value() == 4);
  CHECK(Zp(0) == Zp(5, 5));
  CHECK((Zp(1) + a).modulus() == 5);
  CHECK_THROWS_AS(Zp(1, 5) + Zp(1, 7), Error);
  CHECK(ScalarTraits<Zp>::parse(FieldTag::prime_field(5), "1/2").value() == 3);
  for (long long x = 1; x < 101; ++x) CHECK((Zp(x, 101) * Zp(x, 101).inverse()).value() == 1);
}

TEST_CASE("scalars print through streams") {
  std::ostringstream os;
  os << Rational(-3, 9) << " " << Zp(12, 7);
  CHECK(os.str() == "-1/3 5");
}
