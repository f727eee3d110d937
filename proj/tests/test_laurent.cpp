#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dercent/catalog.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace dercent;
using namespace dercent::testing;

namespace {

LoopElement z_power(Field f, long n)
{
    return LoopElement::pure(Vec{Scalar::one(f)}, n);
}

Field f5() { return make_field(FieldKind::prime, 4, 5); }

/// d = ad_h (x) 1 + ad_e (x) z^2 + id (x) z d/dz, restricted to the fixed points.
struct SquareCase {
    LoopSetup setup;
    std::vector<LoopMulTerm> mul;
    std::vector<LoopDiffTerm> diff;
};

SquareCase sl2_square_case()
{
    const Field f = f5();
    const Algebra a = catalog::sl2(f);
    SquareCase c;
    c.setup = make_loop_setup(a, catalog::sl2_sign(f), 4, GradingStyle::forward, 1);
    c.mul = {{a.left_operator(a.basis_vector(1)), 0}, {a.left_operator(a.basis_vector(0)), 2}};
    c.diff = {{Matrix::identity(f, 3), {LaurentElement::monomial(f, 1)}}};
    return c;
}

} // namespace

TEST_CASE("Laurent arithmetic")
{
    const Field q = rationals();
    const auto one = LaurentElement::monomial(q, 0), z = LaurentElement::monomial(q, 1);
    CHECK((one + z) * (one - z) == one - z * z);
    CHECK(z * LaurentElement::monomial(q, -1) == one);
    CHECK((z - z).is_zero());
    CHECK(to_literal(LaurentElement(q)) == "0");
    const LaurentDerivation zddz{z};
    CHECK(zddz.apply(LaurentElement::monomial(Scalar(q, 3), -4)) == LaurentElement::monomial(Scalar(q, -12), -4));
}

TEST_CASE("Laurent literals round-trip")
{
    for (const Field f : all_field_kinds()) {
        LaurentElement x(f);
        x.add_term(-3, Scalar(f, 2));
        x.add_term(0, Scalar(f, -1));
        x.add_term(7, Scalar::one(f));
        CHECK(parse_laurent(to_literal(x), f) == x);
    }
    const Field q = rationals();
    CHECK(parse_laurent("1/2*z^-1 + 3*z^2", q).coefficient(-1) == Scalar(q, mpq_class(1, 2)));
    try {
        parse_laurent("1*z^2 + *z", q);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position() > 0);
    }
}

TEST_CASE("loop literals round-trip")
{
    const Field q = rationals();
    const Algebra a = catalog::sl2(q);
    LoopElement x(q, 3);
    x.add_part(2, a.basis_vector(0), Scalar(q, 2));
    x.add_part(-1, a.basis_vector(1), Scalar(q, -1));
    CHECK(parse_loop(to_literal(x, a), a) == x);
    CHECK(error_kind([&] { parse_loop("w:1*z^0", a); }) == ErrorKind::ParseError);
}

TEST_CASE("graded components of z^n")
{
    CHECK(graded_component(5, 4, GradingStyle::forward) == 1);
    CHECK(graded_component(5, 4, GradingStyle::inverse) == 3);
    CHECK(graded_component(-1, 3, GradingStyle::forward) == 2);
    CHECK(parse_style("inverse") == GradingStyle::inverse);
    CHECK(error_kind([] { make_loop_setup(catalog::ground_field(rationals()), Matrix::identity(rationals(), 1), 4,
                                          GradingStyle::forward, 2); }) == ErrorKind::NoUnitFound);
}

TEST_CASE("earlier formula values and the Leibniz failure")
{
    const auto ex = catalog::exa_bm();
    const Field q = ex.setup.a.field();
    auto bm = [&](const LoopElement& x) { return loop_bm_eval(ex.setup, ex.d, x); };
    CHECK(bm(z_power(q, 5)) == Scalar(q, 4) * z_power(q, 5));
    CHECK(bm(z_power(q, 3)).is_zero());
    CHECK(bm(z_power(q, 2)).is_zero());
    const Algebra& a = ex.setup.a;
    CHECK(bm(z_power(q, 2).multiply(a, z_power(q, 3))) !=
          bm(z_power(q, 2)).multiply(a, z_power(q, 3)) + z_power(q, 2).multiply(a, bm(z_power(q, 3))));
    CHECK(loop_leibniz_failure(ex.setup, bm, 5).has_value());
}

TEST_CASE("extension formula values")
{
    const auto ex = catalog::last_exa_i();
    const Field q = ex.setup.a.field();
    auto phi = [&](const LoopElement& x) { return loop_phi_eval(ex.setup, ex.d, x); };
    CHECK(phi(z_power(q, 2)) == Scalar(q, 2) * z_power(q, 2));
    CHECK(phi(z_power(q, 5)) == Scalar(q, 5) * z_power(q, 5));
    CHECK_FALSE(loop_leibniz_failure(ex.setup, phi, 8).has_value());
    for (long n = -12; n <= 12; n += 4)
        CHECK(phi(z_power(q, n)) == ex.d.apply(ex.setup, z_power(q, n)));

    const LoopDerivation zero{[q](std::size_t, long) { return LoopElement(q, 1); }};
    CHECK(loop_phi_eval(ex.setup, zero, z_power(q, 3)).is_zero());
}

TEST_CASE("t^(n+1) d/dt extends to m^-1 z^(nm+1) d/dz")
{
    for (GradingStyle style : {GradingStyle::inverse, GradingStyle::forward})
        for (int m : {2, 3, 4})
            for (long n = -2; n <= 2; ++n) {
                const auto ex = catalog::last_exa_ii(m, n, style);
                const Field q = ex.setup.a.field();
                check_fixed_derivation(ex.setup, ex.d, 2L * m);
                const LaurentDerivation expected{
                    LaurentElement::monomial(Scalar::one(q) / Scalar(q, m), n * m + 1)};
                for (long j = -2L * m; j <= 2L * m; ++j) {
                    const LoopElement want = z_power(q, 0).act(expected.apply(LaurentElement::monomial(q, j)));
                    CHECK(loop_phi_eval(ex.setup, ex.d, z_power(q, j)) == want);
                }
            }
}

TEST_CASE("quotient map")
{
    const Field q = rationals();
    CHECK(quotient_to_finite(z_power(q, 5), 4) == unit_vec(q, 4, 1));
    CHECK(quotient_to_finite(z_power(q, -1), 4) == unit_vec(q, 4, 3));
    std::mt19937_64 rng(9);
    const Algebra a = catalog::sl2(q);
    const Algebra finite = tensor_product(a, quotient_laurent_algebra(q, 6));
    std::uniform_int_distribution<long> exp(-9, 9);
    for (int trial = 0; trial < 20; ++trial) {
        const LoopElement x = LoopElement::pure(random_vec(rng, q, 3), exp(rng));
        const LoopElement y = LoopElement::pure(random_vec(rng, q, 3), exp(rng));
        CHECK(quotient_to_finite(x.multiply(a, y), 6) ==
              finite.multiply(quotient_to_finite(x, 6), quotient_to_finite(y, 6)));
    }
}

TEST_CASE("twisted sl2 loop at Nm = 4 reproduces the flagship setup")
{
    const Field q = rationals();
    const LoopSetup loop = make_loop_setup(catalog::sl2(q), catalog::sl2_sign(q), 2, GradingStyle::forward, 1);
    const SetupSpec got = quotient_setup_spec(loop, 4);
    const SetupSpec want = catalog::setup("sl2-twisted-flagship");
    CHECK(got.a == want.a);
    CHECK(got.s == want.s);
    CHECK(got.sigma1 == want.sigma1);
    CHECK(got.sigma2 == want.sigma2);
    CHECK(got.m == want.m);
    CHECK(got.q == want.q);
    CHECK(got.u == want.u);
}

TEST_CASE("windowed commuting square between the Laurent model and the quotient")
{
    const SquareCase c = sl2_square_case();
    const Field f = f5();
    const std::size_t modulus = 20;
    const LoopDerivation d = loop_derivation(c.setup, c.mul, c.diff);
    check_fixed_derivation(c.setup, d, 6);
    const Setup finite = make_setup(quotient_setup_spec(c.setup, modulus));
    const Matrix big = extend_phi(finite_derivation(finite, modulus, c.mul, c.diff), finite);
    CHECK(finite.in_degree_zero_derivations(big));
    for (std::size_t i = 0; i < 3; ++i)
        for (long j = -4; j <= 4; ++j) {
            const LoopElement x = LoopElement::pure(unit_vec(f, 3, i), j);
            CHECK(quotient_to_finite(loop_phi_eval(c.setup, d, x), modulus) == big.apply(quotient_to_finite(x, modulus)));
        }
    auto phi = [&](const LoopElement& x) { return loop_phi_eval(c.setup, d, x); };
    CHECK_FALSE(loop_leibniz_failure(c.setup, phi, 4).has_value());
}

TEST_CASE("non-derivations are rejected")
{
    const Field q = rationals();
    const LoopSetup setup = make_loop_setup(catalog::ground_field(q), Matrix::identity(q, 1), 4, GradingStyle::forward, 1);
    const LoopDerivation bad{[q](std::size_t, long n) { return LoopElement::pure(Vec{Scalar::one(q)}, n); }};
    CHECK(error_kind([&] { check_fixed_derivation(setup, bad, 8); }) == ErrorKind::NotInDomain);
}
