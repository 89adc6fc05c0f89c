#include <doctest.h>

#include <random>

#include "cope/scalar.hpp"

using namespace cope;
using Q = QuadraticScalar;

namespace {

Q qs(long an, long ad, long bn, long bd, long d = 5) {
    return Q(Rational(an, ad), Rational(bn, bd), d);
}

Q sqrt5() { return Q::sqrt_of(5); }

// independent oracle: dyadic bisection on t^2 = d, plain rational arithmetic
Rational sqrt_oracle(long d, unsigned bits) {
    Rational lo(0), hi(d < 4 ? 2 : d);
    for (unsigned i = 0; i < bits + 4; ++i) {
        Rational mid = (lo + hi) / 2;
        if (mid * mid <= Rational(d))
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

Q random_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-8, 8);
    std::uniform_int_distribution<long> den(1, 6);
    return qs(num(rng), den(rng), num(rng), den(rng));
}

} // namespace

TEST_CASE("field arithmetic on worked values") {
    Q one_plus = Q(1) + sqrt5();
    Q one_minus = Q(1) - sqrt5();
    CHECK(one_plus * one_minus == Q(-4));

    Q a = Q(3) - sqrt5();
    CHECK(a / a == Q(1));

    Q b = qs(-1, 10, 1, 10) * Q(10); // ((sqrt5-1)/10) * 10
    CHECK(b == qs(-1, 1, 1, 1));
}

TEST_CASE("division by zero is rejected") {
    CHECK_THROWS_AS(Q(1) / Q(0), DomainError);
    // a^2 = b^2 d never vanishes for nonzero a, b with square-free d
    CHECK_NOTHROW(Q(1) / qs(2, 1, -1, 1));
}

TEST_CASE("mixed radicands are rejected, rationals are compatible") {
    Q x = Q::sqrt_of(5);
    Q y = Q::sqrt_of(3);
    CHECK_THROWS_AS(x + y, FieldMismatchError);
    CHECK((Q(2) + x).radicand() == 5);
    CHECK_THROWS_AS(Q::sqrt_of(12), DomainError); // not square-free
}

TEST_CASE("sign: exact case analysis") {
    CHECK((Q(3) - sqrt5()).sign() == 1);
    CHECK((Q(2) - sqrt5()).sign() == -1);
    CHECK(Q(0).sign() == 0);
    CHECK(qs(0, 1, -1, 3).sign() == -1);
    CHECK(qs(-7, 1, 22, 7).sign() == 1); // 22/7 sqrt5 > 7
}

TEST_CASE("sign is multiplicative") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        Q x = random_scalar(rng);
        Q y = random_scalar(rng);
        if (x.sign() == 0 || y.sign() == 0) continue;
        CHECK((x * y).sign() == x.sign() * y.sign());
    }
}

TEST_CASE("field axioms hold exactly on random scalars") {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        Q x = random_scalar(rng), y = random_scalar(rng), z = random_scalar(rng);
        CHECK((x + y) + z == x + (y + z));
        CHECK(x * (y + z) == x * y + x * z);
        if (x.sign() != 0) CHECK(x * (Q(1) / x) == Q(1));
    }
}

TEST_CASE("approx brackets the true value") {
    Rational a20 = sqrt5().approx(20);
    Rational truth = sqrt_oracle(5, 40);
    Rational err = a20 - truth;
    if (err < 0) err = -err;
    CHECK(err < Rational(1, 1 << 19));

    CHECK(Q(Rational(7, 3)).approx(10) == Rational(7, 3));

    Q golden = qs(-1, 2, 1, 2); // (sqrt5-1)/2
    Rational g10 = golden.approx(10);
    Rational gt = (sqrt_oracle(5, 30) - 1) / 2;
    Rational gerr = g10 - gt;
    if (gerr < 0) gerr = -gerr;
    CHECK(gerr < Rational(1, 1 << 9));
}

TEST_CASE("approx refinement property") {
    std::mt19937 rng(13);
    for (int i = 0; i < 50; ++i) {
        Q x = random_scalar(rng);
        for (unsigned b : {4u, 9u, 17u}) {
            Rational d = x.approx(b) - x.approx(b + 8);
            if (d < 0) d = -d;
            Rational bound(1);
            bound >>= (b - 1);
            CHECK(d < bound);
        }
    }
}

TEST_CASE("round_pow2 worked values") {
    Q x = Q(3) - sqrt5(); // ~0.7639
    CHECK(x.round_pow2(RoundDir::Down) == Rational(1, 2));
    // oracle: exact sign tests 1/2 <= 3-sqrt5 < 1 <=> 25 >= 20 and 4 < 5
    CHECK((x - Q(Rational(1, 2))).sign() >= 0);
    CHECK((x - Q(1)).sign() < 0);

    CHECK(Q(1).round_pow2(RoundDir::Down) == Rational(1));
    CHECK(Q(1).round_pow2(RoundDir::Up) == Rational(1));
    CHECK(sqrt5().round_pow2(RoundDir::Up) == Rational(4));
    CHECK(sqrt5().round_pow2(RoundDir::Down) == Rational(2));
    CHECK_THROWS_AS(Q(0).round_pow2(RoundDir::Down), DomainError);
    CHECK_THROWS_AS((Q(0) - sqrt5()).round_pow2(RoundDir::Down), DomainError);
}

TEST_CASE("round_pow2 bracketing property") {
    std::mt19937 rng(17);
    for (int i = 0; i < 100; ++i) {
        Q x = random_scalar(rng);
        if (x.sign() <= 0) continue;
        Q down(x.round_pow2(RoundDir::Down));
        CHECK((down - x).sign() <= 0);
        CHECK((Q(2) * down - x).sign() > 0);
        Q up(x.round_pow2(RoundDir::Up));
        CHECK((x - up).sign() <= 0);
        CHECK((x - up / Q(2)).sign() > 0);
    }
}

TEST_CASE("scalar grammar round trip") {
    CHECK(Q::parse("3/10") == qs(3, 10, 0, 1));
    CHECK(Q::parse("(-1/10)+(1/10)*sqrt(5)") == qs(-1, 10, 1, 10));
    CHECK(Q::parse(" ( -1/10 ) + ( 1/10 ) * sqrt( 5 )") == qs(-1, 10, 1, 10));
    CHECK(Q::parse("-4") == Q(-4));
    CHECK_THROWS_AS(Q::parse("1.5"), ParseError);
    CHECK_THROWS_AS(Q::parse("(1)+(2)*cbrt(5)"), ParseError);
    CHECK_THROWS_AS(Q::parse(""), ParseError);

    std::mt19937 rng(19);
    for (int i = 0; i < 100; ++i) {
        Q x = random_scalar(rng);
        CHECK(Q::parse(x.str()) == x);
    }
}

TEST_CASE("float backend tolerance and parsing") {
    FloatScalar::set_tolerance(1e-9);
    CHECK(FloatScalar(5e-10).sign() == 0);
    CHECK(FloatScalar(2e-9).sign() == 1);
    CHECK(FloatScalar::parse("(-1/10)+(1/10)*sqrt(5)").value() ==
          doctest::Approx(0.12360679774997896).epsilon(1e-12));
    CHECK(FloatScalar::parse("0.25").value() == 0.25);
    CHECK(FloatScalar(0.7639).round_pow2(RoundDir::Down).value() == 0.5);
    CHECK(FloatScalar(0.5).round_pow2(RoundDir::Up).value() == 0.5);
    CHECK(FloatScalar(0.500001).round_pow2(RoundDir::Up).value() == 1.0);
}
