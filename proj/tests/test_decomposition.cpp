#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dercent/catalog.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace dercent;
using namespace dercent::testing;

namespace {

long dimension(const VerificationReport& r, const std::string& name)
{
    for (const auto& [n, v] : r.dimensions)
        if (n == name)
            return v;
    FAIL("missing dimension " << name);
    return -1;
}

std::vector<Algebra> commutative_factors(Field q)
{
    return {catalog::dual_numbers(q), quotient_laurent_algebra(q, 3), quotient_laurent_algebra(q, 4),
            catalog::group_algebra(q, 2)};
}

/// Derivations of A (x) S that also commute with sigma, by brute force.
Subspace brute_degree_zero(const Algebra& as, const Matrix& sigma)
{
    const Subspace der = brute_derivations(as);
    const std::size_t n = as.dim();
    const Subspace comm = brute_kernel(as.field(), n, [&](const Matrix& t) { return (sigma * t - t * sigma).flatten(); });
    return der.intersect(comm);
}

std::string failure_message(const SetupSpec& spec)
{
    try {
        make_setup(spec);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("block decomposition against brute-force derivations")
{
    const Field q = rationals();
    for (const Algebra& a : {catalog::sl2(q), catalog::sl2_graded(q)})
        for (const Algebra& s : commutative_factors(q)) {
            CAPTURE(s.dim());
            const Subspace full = brute_derivations(tensor_product(a, s));
            const std::size_t expected = brute_derivations(a).dim() * s.dim() +
                                         brute_centroid(a).dim() * brute_derivations(s).dim();
            CHECK(full.dim() == expected);
            const TensorImages img = embed_tensor_derivations(a, s);
            CHECK(img.der_tensor_s.space.intersect(img.cent_tensor_ders.space).dim() == 0);
            CHECK(img.der_tensor_s.space.sum(img.cent_tensor_ders.space) == full);
            CHECK(verify_block_decomposition(a, s).verdict());
        }
}

TEST_CASE("split of random derivations")
{
    const Field q = rationals();
    std::mt19937_64 rng(3);
    for (const Algebra& s : commutative_factors(q)) {
        const Algebra a = catalog::sl2(q);
        const Algebra as = tensor_product(a, s);
        const auto basis = brute_derivations(as).basis_vectors();
        const std::size_t n = as.dim();
        for (int trial = 0; trial < 5; ++trial) {
            Vec flat = zero_vec(q, n * n);
            for (const auto& b : basis)
                axpy(flat, random_scalar(rng, q), b);
            const Matrix delta = Matrix::unflatten(q, n, n, flat);
            const SplitResult sp = split_derivation(delta, a, s);
            CHECK(sp.d + sp.remainder == delta);
            CHECK(is_derivation(as, sp.d));
            for (std::size_t j = 0; j < s.dim(); ++j) {
                const Matrix l = kron(Matrix::identity(q, a.dim()), s.left_operator(s.basis_vector(j)));
                CHECK(sp.d * l == l * sp.d);
            }
            for (std::size_t i = 0; i < a.dim(); ++i)
                CHECK(is_zero(sp.remainder.apply(kron_vec(a.basis_vector(i), s.unit()))));
        }
        CHECK(verify_split(a, s, 5, 17).verdict());
    }
}

TEST_CASE("psi on every catalog pair")
{
    const Field q = rationals();
    for (const Algebra& a : {catalog::sl2(q), catalog::sl2_graded(q)})
        for (const Algebra& s : commutative_factors(q)) {
            const VerificationReport r = verify_psi(a, s);
            CHECK(r.verdict());
            CHECK(dimension(r, "dim C(A (x) S)") == static_cast<long>(brute_centroid(tensor_product(a, s)).dim()));
        }
    CHECK(error_kind([&] { verify_psi(catalog::zero_algebra(q, 2), catalog::dual_numbers(q)); }) ==
          ErrorKind::NotPerfect);
}

TEST_CASE("pi and phi on the flagship setup")
{
    const Setup st = make_setup(catalog::setup("sl2-twisted-flagship"));
    const Subspace oracle = brute_degree_zero(st.as, st.sigma.matrix);
    const EndoSpace zero = degree_zero_derivations(st);
    CHECK(zero.space == oracle);
    CHECK(oracle.dim() == 6);
    CHECK(brute_derivations(st.fixed.algebra).dim() == 6);

    for (const auto& big : zero.matrices()) {
        const Matrix small = restrict_pi(big, st);
        CHECK(is_derivation(st.fixed.algebra, small));
        CHECK(extend_phi(small, st) == big);
    }
    for (const auto& d : derivation_space(st.fixed.algebra).matrices()) {
        const Matrix big = extend_phi(d, st);
        CHECK(st.in_degree_zero_derivations(big));
        CHECK(restrict_pi(big, st) == d);
    }
    CHECK(verify_pi_isomorphism(st).verdict());
    CHECK(verify_graded_decomposition(st).verdict());
}

TEST_CASE("graded dimension formula from independently computed gradings")
{
    for (const char* name : {"sl2-twisted-flagship", "sl2-graded-twisted"}) {
        const Setup st = make_setup(catalog::setup(name));
        std::size_t formula = 0;
        for (int i = 0; i < st.m; ++i)
            formula += st.grading_der_a[i].dim() * st.grading_s[-i].dim() +
                       st.grading_cent_a[i].dim() * st.grading_der_s[-i].dim();
        CHECK(formula == brute_derivations(st.fixed.algebra).dim());
    }
}

TEST_CASE("surjectivity identities with wrap cases")
{
    const Setup st = make_setup(catalog::setup("sl2-twisted-flagship"));
    const VerificationReport r = check_surjectivity_identities(st, derivation_space(st.fixed.algebra).matrices(), 2);
    CHECK(r.verdict());
    CHECK(dimension(r, "formula4 wrap cases") > 0);
    CHECK(dimension(r, "*I wrap cases") > 0);
}

TEST_CASE("characteristic-p branch over F5")
{
    for (const char* name : {"sl2-f5-quotient", "k-f5-quotient-laurent"}) {
        const Setup st = make_setup(catalog::setup(name));
        CHECK(st.a.field().characteristic() == 5);
        for (const auto& d : derivation_space(st.fixed.algebra).matrices()) {
            const Matrix base = extend_phi(d, st, PhiBranch::char0, 1);
            CHECK(extend_phi(d, st, PhiBranch::charp) == base);
            CHECK(extend_phi(d, st, PhiBranch::char0, 2) == base);
            CHECK(extend_phi(d, st, PhiBranch::char0, 3) == base);
            CHECK(restrict_pi(base, st) == d);
        }
    }
}

TEST_CASE("untwisted setup with m = 1")
{
    const Setup st = make_setup(catalog::setup("sl2-untwisted"));
    CHECK(st.fixed.algebra.dim() == 6);
    CHECK(verify_pi_isomorphism(st).verdict());
}

TEST_CASE("hypothesis failures are named")
{
    const Field q = rationals();
    SetupSpec spec = catalog::setup("sl2-twisted-flagship");

    SetupSpec zero = spec;
    zero.a = catalog::zero_algebra(q, 3);
    CHECK(failure_message(zero).find("hypothesis (i) A perfect fails") != std::string::npos);

    SetupSpec noncomm = spec;
    noncomm.s = catalog::sl2(q);
    noncomm.sigma2 = catalog::sl2_sign(q);
    noncomm.u.reset();
    CHECK(failure_message(noncomm).find("hypothesis (ii)") != std::string::npos);

    SetupSpec period = spec;
    period.m = 3;
    CHECK(failure_message(period).find("hypothesis (iii)") != std::string::npos);

    SetupSpec unit = spec;
    unit.q = 0;
    unit.u = Vec{Scalar(q, 1), Scalar(q, 0), Scalar(q, 1), Scalar(q, 0)};
    CHECK(failure_message(unit).find("hypothesis (iv)") != std::string::npos);

    CHECK(error_kind([&] { make_setup(zero); }) == ErrorKind::NotPerfect);
}

TEST_CASE("phi rejects maps that are not derivations of the fixed points")
{
    const Setup st = make_setup(catalog::setup("sl2-twisted-flagship"));
    const std::size_t n = st.fixed.algebra.dim();
    CHECK(error_kind([&] { extend_phi(Matrix::identity(st.as.field(), n), st); }) == ErrorKind::NotInDomain);
    CHECK(extend_phi(Matrix(st.as.field(), n, n), st).is_zero());
}
