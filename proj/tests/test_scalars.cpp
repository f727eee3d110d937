#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dercent/error.hpp"
#include "dercent/scalars.hpp"
#include "support.hpp"

using namespace dercent;

namespace {

// Oracle for the prime-field root: multiplicative order by repeated multiplication.
int order_mod(std::uint64_t x, std::uint64_t p)
{
    std::uint64_t y = 1;
    int order = 0;
    do {
        y = y * x % p;
        ++order;
    } while (y != 1);
    return order;
}

// Evaluate the monic Phi_m at a field element by Horner's rule.
Scalar eval_modulus(Field f, const Scalar& x)
{
    const auto& coeffs = f.modulus();
    Scalar acc = Scalar::zero(f);
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc *= x;
        acc += Scalar(f, mpq_class(coeffs[k]));
    }
    return acc;
}

} // namespace

TEST_CASE("make_field computes cyclotomic moduli")
{
    auto q4 = make_field(FieldKind::cyclotomic, 4);
    REQUIRE(q4.degree() == 2);
    CHECK(q4.modulus() == std::vector<mpz_class>{1, 0, 1});
    auto zeta = Scalar::generator(q4);
    CHECK(zeta * zeta == Scalar(q4, -1L));

    auto q1 = make_field(FieldKind::cyclotomic, 1);
    CHECK(q1.modulus() == std::vector<mpz_class>{-1, 1});
    CHECK(q1.degree() == 1);
    CHECK(Scalar::generator(q1).is_one());

    CHECK(cyclotomic_polynomial(6) == std::vector<mpz_class>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<mpz_class>{1, 0, -1, 0, 1});

    SUBCASE("modulus divides x^m - 1 and has degree phi(m)")
    {
        for (int m = 1; m <= 30; ++m) {
            auto phi = cyclotomic_polynomial(m);
            CHECK(phi.size() - 1 == static_cast<std::size_t>(euler_phi(m)));
            CHECK(phi.back() == 1);
            // Long division of x^m - 1 by phi leaves no remainder.
            std::vector<mpz_class> num(static_cast<std::size_t>(m) + 1, 0);
            num[0] = -1;
            num.back() = 1;
            const std::size_t dd = phi.size() - 1;
            for (std::size_t k = num.size(); k-- > dd;) {
                mpz_class c = num[k];
                for (std::size_t t = 0; t <= dd; ++t)
                    num[k - dd + t] -= c * phi[t];
            }
            for (const auto& r : num)
                CHECK(r == 0);
        }
    }
}

TEST_CASE("make_field over a prime")
{
    auto f = make_field(FieldKind::prime, 4, 5);
    CHECK(f.prime_root() == 2);
    CHECK(order_mod(2, 5) == 4);
    CHECK(order_mod(make_field(FieldKind::prime, 3, 7).prime_root(), 7) == 3);
    CHECK(order_mod(make_field(FieldKind::prime, 8, 17).prime_root(), 17) == 8);

    auto kind_of = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Internal;
    };
    CHECK(kind_of([] { make_field(FieldKind::prime, 5, 5); }) == ErrorKind::CharDividesM);
    CHECK(kind_of([] { make_field(FieldKind::prime, 4, 9); }) == ErrorKind::NotPrime);
    CHECK(kind_of([] { make_field(FieldKind::prime, 3, 5); }) == ErrorKind::NoPrimitiveRoot);
    CHECK(make_field(FieldKind::prime, 4, 5) == f);
}

TEST_CASE("scalar arithmetic examples")
{
    auto q4 = make_field(FieldKind::cyclotomic, 4);
    auto zeta = Scalar::generator(q4);
    auto one = Scalar::one(q4);
    // (1 + zeta)^-1 = (1 - zeta) / 2 since (1 + zeta)(1 - zeta) = 1 - zeta^2 = 2
    CHECK((one + zeta) * (one - zeta) == Scalar(q4, 2L));
    CHECK((one + zeta).inverse() == (one - zeta) / Scalar(q4, 2L));
    CHECK(zeta * zeta * zeta * zeta == one);

    auto q = rationals();
    CHECK(parse_scalar("2/4", q) + parse_scalar("1/4", q) == parse_scalar("3/4", q));
    CHECK(to_literal(Scalar(q, mpq_class(2, 4)) + Scalar(q, mpq_class(1, 4))) == "3/4");

    CHECK_THROWS_AS(Scalar::zero(q).inverse(), Error);
    CHECK_THROWS_AS(Scalar::one(q) + Scalar::one(q4), Error);
    try {
        (void)(Scalar::one(q) / Scalar::zero(q));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DivisionByZero);
    }
    try {
        (void)(Scalar::one(q) * Scalar::one(q4));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FieldMismatch);
    }
}

TEST_CASE("parse_scalar")
{
    auto q = rationals();
    auto s = parse_scalar("-3/2", q);
    CHECK(s.rational_value().get_num() == -3);
    CHECK(s.rational_value().get_den() == 2);
    CHECK(parse_scalar("-6/4", q) == s);
}

TEST_CASE("parse_scalar grammar")
{
    auto q = rationals();
    auto q4 = make_field(FieldKind::cyclotomic, 4);
    auto f5 = make_field(FieldKind::prime, 4, 5);
    CHECK(parse_scalar("[0, 1]", q4) == Scalar::generator(q4));
    CHECK(parse_scalar("[3]", q4) == Scalar(q4, 3L));
    CHECK(parse_scalar("7", f5).residue() == 2);
    CHECK(parse_scalar("-1", f5).residue() == 4);
    CHECK(parse_scalar(" 6/4 ", q) == Scalar(q, mpq_class(3, 2)));

    auto position_of = [](std::string_view text, Field f) -> long {
        try {
            parse_scalar(text, f);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1;
    };
    CHECK(position_of("abc", q) == 0);
    CHECK(position_of("1/0", q) == 2);
    CHECK(position_of("1 2", q) == 2);
    CHECK(position_of("[1, 2, 3]", q4) == 6);
    CHECK(position_of("[1, 2", q4) == 5);
}

TEST_CASE("literal round trip on canonical forms")
{
    std::mt19937_64 rng(11);
    for (auto f : testing::all_field_kinds()) {
        for (int trial = 0; trial < 50; ++trial) {
            Scalar s = testing::random_scalar(rng, f);
            std::string lit = to_literal(s);
            CHECK(parse_scalar(lit, f) == s);
            CHECK(to_literal(parse_scalar(lit, f)) == lit);
        }
    }
}

TEST_CASE("field axioms on random triples")
{
    std::mt19937_64 rng(1234);
    for (auto f : testing::all_field_kinds()) {
        CAPTURE(f.describe());
        for (int trial = 0; trial < 60; ++trial) {
            Scalar a = testing::random_scalar(rng, f);
            Scalar b = testing::random_scalar(rng, f);
            Scalar c = testing::random_scalar(rng, f);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a - a == Scalar::zero(f));
            CHECK(-(-a) == a);
            Scalar fused = c;
            fused.sub_mul(a, b);
            CHECK(fused == c - a * b);
            if (!a.is_zero()) {
                CHECK(a * a.inverse() == Scalar::one(f));
                CHECK((b / a) * a == b);
            }
        }
    }
}

TEST_CASE("roots of unity have exact order")
{
    for (auto f : {make_field(FieldKind::cyclotomic, 4), make_field(FieldKind::cyclotomic, 6),
                   make_field(FieldKind::cyclotomic, 5), make_field(FieldKind::prime, 4, 5),
                   make_field(FieldKind::prime, 6, 13)}) {
        CAPTURE(f.describe());
        const int m = f.m();
        Scalar zeta = Scalar::generator(f);
        CHECK(zeta.pow(m).is_one());
        for (int j = 1; j < m; ++j)
            CHECK_FALSE(zeta.pow(j).is_one());
        if (f.kind() == FieldKind::cyclotomic)
            CHECK(eval_modulus(f, zeta).is_zero());
    }
    CHECK(*root_of_unity(rationals(), 2) == Scalar(rationals(), -1L));
    CHECK_FALSE(root_of_unity(rationals(), 3).has_value());
    auto q4 = make_field(FieldKind::cyclotomic, 4);
    CHECK(*root_of_unity(q4, 2) == Scalar(q4, -1L));
    CHECK(*root_of_unity(q4, 4) == Scalar::generator(q4));
}

TEST_CASE("normalization is idempotent")
{
    std::mt19937_64 rng(99);
    for (auto f : testing::all_field_kinds()) {
        for (int trial = 0; trial < 30; ++trial) {
            Scalar s = testing::random_scalar(rng, f) * testing::random_scalar(rng, f);
            Scalar again = s + Scalar::zero(f);
            CHECK(again == s);
            if (f.kind() == FieldKind::rational) {
                mpq_class copy = s.rational_value();
                copy.canonicalize();
                CHECK(copy == s.rational_value());
                CHECK(s.rational_value().get_den() > 0);
            }
            if (f.kind() == FieldKind::cyclotomic)
                CHECK(s.coefficients().size() == f.degree());
            if (f.kind() == FieldKind::prime)
                CHECK(s.residue() < f.p());
        }
    }
}

TEST_CASE("pretty printing")
{
    auto q4 = make_field(FieldKind::cyclotomic, 4);
    auto zeta = Scalar::generator(q4);
    CHECK(to_pretty(Scalar(q4, 4L)) == "4");
    CHECK(to_pretty(Scalar::one(q4) - zeta) == "1 - ζ");
    CHECK(to_pretty(Scalar::zero(q4)) == "0");
    CHECK(to_literal(zeta) == "[0, 1]");
}
