#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dercent/catalog.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace dercent;
using namespace dercent::testing;

TEST_CASE("sl2 structure constants")
{
    const Field q = rationals();
    const Algebra a = catalog::sl2(q);
    const Vec e = a.basis_vector(0), h = a.basis_vector(1), f = a.basis_vector(2);
    CHECK(a.multiply(e, f) == h);
    CHECK(a.multiply(h, e) == scale(Scalar(q, 2), e));
    CHECK(a.multiply(h, f) == scale(Scalar(q, -2), f));
    CHECK(is_zero(a.multiply(e, e)));
    CHECK(a.is_perfect());
    CHECK_FALSE(a.is_commutative());
    CHECK_FALSE(a.is_unital());
}

TEST_CASE("sl2-graded is sl2 in the basis k = e - f, h, x = e + f")
{
    const Field q = rationals();
    const Algebra a = catalog::sl2(q), b = catalog::sl2_graded(q);
    // columns: images of k, h, x in (e, h, f)
    const Matrix g = Matrix::from_columns(q, 3,
                                          {Vec{Scalar(q, 1), Scalar(q, 0), Scalar(q, -1)},
                                           Vec{Scalar(q, 0), Scalar(q, 1), Scalar(q, 0)},
                                           Vec{Scalar(q, 1), Scalar(q, 0), Scalar(q, 1)}});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(g.apply(b.multiply(b.basis_vector(i), b.basis_vector(j))) ==
                  a.multiply(g.column(i), g.column(j)));
}

TEST_CASE("commutative associative examples")
{
    for (const Field f : all_field_kinds()) {
        const Algebra dual = catalog::dual_numbers(f);
        CHECK(dual.is_commutative());
        CHECK(dual.is_associative());
        REQUIRE(dual.is_unital());
        CHECK(dual.unit() == unit_vec(f, 2, 0));
        CHECK(dual.is_perfect());

        const Algebra g = catalog::group_algebra(f, 3);
        CHECK(g.is_associative());
        CHECK(g.unit() == unit_vec(f, 3, 0));
        const Algebra z = quotient_laurent_algebra(f, 4);
        CHECK(z.multiply(z.basis_vector(3), z.basis_vector(2)) == z.basis_vector(1));
    }
}

TEST_CASE("zero-product algebra is not perfect")
{
    const Algebra z = catalog::zero_algebra(rationals(), 3);
    CHECK_FALSE(z.is_perfect());
    CHECK(z.properties().product_span.dim() == 0);
}

TEST_CASE("tensor product multiplies factorwise")
{
    std::mt19937_64 rng(11);
    for (const Field f : all_field_kinds()) {
        const Algebra a = catalog::sl2(f), s = catalog::dual_numbers(f);
        const Algebra as = tensor_product(a, s);
        CHECK(as.dim() == 6);
        CHECK(as.basis_names()[3] == "h⊗x");
        for (int trial = 0; trial < 5; ++trial) {
            const Vec x = random_vec(rng, f, 3), y = random_vec(rng, f, 3);
            const Vec s1 = random_vec(rng, f, 2), s2 = random_vec(rng, f, 2);
            CHECK(as.multiply(kron_vec(x, s1), kron_vec(y, s2)) == kron_vec(a.multiply(x, y), s.multiply(s1, s2)));
        }
    }
}

TEST_CASE("subalgebras")
{
    const Field q = rationals();
    const Algebra a = catalog::sl2(q);
    const auto borel = subalgebra_on(a, Subspace::span(q, 3, {a.basis_vector(0), a.basis_vector(1)}));
    CHECK(borel.algebra.dim() == 2);
    CHECK(borel.embedding.cols() == 2);
    CHECK(error_kind([&] { subalgebra_on(a, Subspace::span(q, 3, {a.basis_vector(0), a.basis_vector(2)})); }) ==
          ErrorKind::NotClosed);
}

TEST_CASE("inverses in commutative algebras")
{
    for (const Field f : all_field_kinds()) {
        const Algebra z = quotient_laurent_algebra(f, 4);
        CHECK(invert_element(z, z.basis_vector(1)) == z.basis_vector(3));
        CHECK(element_power(z, z.basis_vector(1), -6) == z.basis_vector(2));

        const Algebra dual = catalog::dual_numbers(f);
        const Vec one_plus_x{Scalar::one(f), Scalar::one(f)};
        CHECK(invert_element(dual, one_plus_x) == Vec{Scalar::one(f), -Scalar::one(f)});
        CHECK(error_kind([&] { invert_element(dual, dual.basis_vector(1)); }) == ErrorKind::SingularElement);
    }
}

TEST_CASE("random property: associativity of tensor products of associative algebras")
{
    std::mt19937_64 rng(23);
    const Field f = make_field(FieldKind::prime, 4, 5);
    const Algebra as = tensor_product(catalog::group_algebra(f, 2), catalog::dual_numbers(f));
    CHECK(as.is_associative());
    CHECK(as.is_commutative());
    for (int trial = 0; trial < 10; ++trial) {
        const Vec x = random_vec(rng, f, 4), y = random_vec(rng, f, 4), z = random_vec(rng, f, 4);
        CHECK(as.multiply(as.multiply(x, y), z) == as.multiply(x, as.multiply(y, z)));
    }
}
