#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dercent/catalog.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace dercent;
using namespace dercent::testing;

namespace {

/// sum_i w^i P_i, with P_i read off Grading::decompose on each basis vector.
Matrix reconstruct(const Grading& g, const Scalar& w, Field f, std::size_t n)
{
    std::vector<Vec> columns;
    for (std::size_t k = 0; k < n; ++k) {
        const auto parts = g.decompose(unit_vec(f, n, k));
        Vec col = zero_vec(f, n);
        for (int i = 0; i < g.m; ++i)
            axpy(col, w.pow(i), parts[static_cast<std::size_t>(i)]);
        columns.push_back(col);
    }
    return Matrix::from_columns(f, n, columns);
}

std::vector<Automorphism> sample_automorphisms()
{
    const Field q = rationals(), c3 = make_field(FieldKind::cyclotomic, 3), f5 = make_field(FieldKind::prime, 4, 5);
    std::vector<Automorphism> out;
    out.push_back(check_automorphism(catalog::sl2(q), catalog::sl2_sign(q), 2));
    out.push_back(check_automorphism(catalog::sl2_graded(q), catalog::sl2_graded_involution(q), 2));
    out.push_back(check_automorphism(quotient_laurent_algebra(c3, 6),
                                     quotient_laurent_automorphism(c3, 6, 3, GradingStyle::forward), 3));
    out.push_back(check_automorphism(quotient_laurent_algebra(f5, 8),
                                     quotient_laurent_automorphism(f5, 8, 4, GradingStyle::inverse), 4));
    out.push_back(check_automorphism(catalog::sl2(f5), catalog::sl2_sign(f5), 4));
    out.push_back(tensor_automorphism(out[0], check_automorphism(quotient_laurent_algebra(q, 4),
                                                                 quotient_laurent_automorphism(q, 4, 2,
                                                                                               GradingStyle::forward),
                                                                 2)));
    return out;
}

} // namespace

TEST_CASE("grading roots")
{
    CHECK(grading_root(rationals(), 2) == Scalar(rationals(), -1));
    CHECK(grading_root(make_field(FieldKind::prime, 4, 5), 4) == Scalar(make_field(FieldKind::prime, 4, 5), 2));
    const Field c4 = make_field(FieldKind::cyclotomic, 4);
    CHECK(grading_root(c4, 4).pow(2) == Scalar(c4, -1));
    CHECK(error_kind([] { grading_root(rationals(), 3); }) == ErrorKind::FieldMismatch);
}

TEST_CASE("eps and inverse_mod")
{
    CHECK(eps(-1, 4) == 3);
    CHECK(eps(9, 4) == 1);
    CHECK(eps(0, 4) == 0);
    CHECK(inverse_mod(3, 4) == 3);
    CHECK_FALSE(inverse_mod(2, 4).has_value());
}

TEST_CASE("automorphism validation")
{
    const Field q = rationals();
    const Algebra a = catalog::sl2(q);
    Matrix bad = Matrix::identity(q, 3);
    bad(2, 2) = Scalar(q, -1);
    CHECK(error_kind([&] { check_automorphism(a, bad, 2); }) == ErrorKind::NotAutomorphism);
    CHECK(error_kind([&] { check_automorphism(a, catalog::sl2_sign(q), 3); }) == ErrorKind::WrongPeriod);
}

TEST_CASE("sl2 sign grading")
{
    const Field q = rationals();
    const Grading g = grading_from_automorphism(check_automorphism(catalog::sl2(q), catalog::sl2_sign(q), 2));
    CHECK(g.dims() == std::vector<std::size_t>{1, 2});
    CHECK(g.degree_of(unit_vec(q, 3, 1)) == 0);
    CHECK(g.degree_of(unit_vec(q, 3, 0)) == 1);
    CHECK_FALSE(g.degree_of(Vec{Scalar(q, 1), Scalar(q, 1), Scalar(q, 0)}).has_value());
}

TEST_CASE("gradings are complete, multiplicative and reconstruct sigma")
{
    for (const Automorphism& sigma : sample_automorphisms()) {
        const Algebra& a = sigma.algebra;
        const Field f = a.field();
        const Grading g = grading_from_automorphism(sigma);
        CAPTURE(f.describe());
        CHECK(is_direct_sum_decomposition(g.components, a.dim()));
        CHECK(is_valid_algebra_grading(a, g));
        CHECK(reconstruct(g, grading_root(f, sigma.m), f, a.dim()) == sigma.matrix);
        for (int i = 0; i < g.m; ++i)
            for (int j = 0; j < g.m; ++j)
                for (const auto& x : g[i].basis_vectors())
                    for (const auto& y : g[j].basis_vectors())
                        CHECK(g[i + j].contains(a.multiply(x, y)));
    }
}

TEST_CASE("random property: decompose sums back")
{
    std::mt19937_64 rng(41);
    for (const Automorphism& sigma : sample_automorphisms()) {
        const Field f = sigma.algebra.field();
        const Grading g = grading_from_automorphism(sigma);
        for (int trial = 0; trial < 5; ++trial) {
            const Vec v = random_vec(rng, f, sigma.algebra.dim());
            const auto parts = g.decompose(v);
            Vec sum = zero_vec(f, v.size());
            for (int i = 0; i < g.m; ++i) {
                CHECK(g[i].contains(parts[static_cast<std::size_t>(i)]));
                sum = add(sum, parts[static_cast<std::size_t>(i)]);
            }
            CHECK(sum == v);
        }
    }
}

TEST_CASE("induced grading on derivations is the conjugation eigenspace decomposition")
{
    for (const Automorphism& sigma : sample_automorphisms()) {
        const Field f = sigma.algebra.field();
        const std::size_t n = sigma.algebra.dim();
        const EndoSpace d = derivation_space(sigma.algebra);
        const Grading g = induced_endo_grading(sigma, d);
        const Scalar w = grading_root(f, sigma.m);
        const Matrix inv = inverse(sigma.matrix);
        std::size_t total = 0;
        for (int i = 0; i < g.m; ++i) {
            total += g[i].dim();
            for (const auto& v : g[i].basis_vectors()) {
                const Matrix t = Matrix::unflatten(f, n, n, v);
                CHECK(d.contains(t));
                CHECK(sigma.matrix * t * inv == w.pow(i) * t);
            }
        }
        CHECK(total == d.dim());
    }
}

TEST_CASE("fixed points and graded units of the twisted sl2 setup")
{
    const Field q = rationals();
    const Automorphism s2 = check_automorphism(quotient_laurent_algebra(q, 4),
                                               quotient_laurent_automorphism(q, 4, 2, GradingStyle::forward), 2);
    const Automorphism sigma =
        tensor_automorphism(check_automorphism(catalog::sl2(q), catalog::sl2_sign(q), 2), s2);
    const Subalgebra fixed = fixed_point_algebra(sigma);
    CHECK(fixed.algebra.dim() == 6);
    for (std::size_t c = 0; c < fixed.embedding.cols(); ++c)
        CHECK(sigma.matrix.apply(fixed.embedding.column(c)) == fixed.embedding.column(c));

    const Grading gs = grading_from_automorphism(s2);
    const GradedUnitData u = find_graded_unit(s2.algebra, gs, 1);
    CHECK(gs.degree_of(u.u) == 1);
    CHECK(s2.algebra.multiply(u.u, u.u_inverse) == s2.algebra.unit());
    CHECK(error_kind([&] { find_graded_unit(s2.algebra, gs, 1, zero_vec(q, 4)); }).has_value());
}
