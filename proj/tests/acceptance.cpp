// One line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "dercent/catalog.hpp"
#include "dercent/cli.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace dercent;
using namespace dercent::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

struct CliResult {
    int code;
    std::string out, err;
};

CliResult cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line)
{
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (l == line)
            return true;
    return false;
}

std::vector<std::pair<std::string, Algebra>> factors(Field q)
{
    return {{"dual-numbers", catalog::dual_numbers(q)},
            {"quotient-laurent(3,1)", quotient_laurent_algebra(q, 3)},
            {"quotient-laurent(4,1)", quotient_laurent_algebra(q, 4)},
            {"group-algebra(2)", catalog::group_algebra(q, 2)}};
}

std::vector<std::pair<std::string, Algebra>> lie_factors(Field q)
{
    return {{"sl2", catalog::sl2(q)}, {"sl2-graded", catalog::sl2_graded(q)}};
}

Outcome counterexample()
{
    Outcome o;
    const CliResult r = cli({"counterexample-bm"});
    o.require(r.code == 0, "exit code " + std::to_string(r.code));
    o.require(has_line(r.out, "D(1⊗z^5) = 4(1⊗z^5)"), "missing D(1⊗z^5) = 4(1⊗z^5)");
    o.require(has_line(r.out, "D(1⊗z^3) = 0"), "missing D(1⊗z^3) = 0");
    o.require(has_line(r.out, "D(1⊗z^2) = 0"), "missing D(1⊗z^2) = 0");
    o.require(has_line(r.out, "D((1⊗z^2)(1⊗z^3)) = 4(1⊗z^5) ≠ D(1⊗z^2)(1⊗z^3) + (1⊗z^2)D(1⊗z^3) = 0"),
              "missing Leibniz witness");

    const auto ex = catalog::exa_bm();
    const Field q = ex.setup.a.field();
    auto z = [&](long n) { return LoopElement::pure(Vec{Scalar::one(q)}, n); };
    auto bm = [&](const LoopElement& x) { return loop_bm_eval(ex.setup, ex.d, x); };
    o.require(bm(z(5)) == Scalar(q, 4) * z(5), "library value at z^5");
    o.require(bm(z(3)).is_zero() && bm(z(2)).is_zero(), "library values at z^3, z^2");
    const LoopElement lhs = bm(z(5));
    const LoopElement rhs = bm(z(2)).multiply(ex.setup.a, z(3)) + z(2).multiply(ex.setup.a, bm(z(3)));
    o.require(lhs - rhs == Scalar(q, 4) * z(5), "Leibniz defect is not 4 z^5");
    return o;
}

Outcome phi_reproduction()
{
    Outcome o;
    const CliResult i = cli({"phi-eval", "--laurent", "last-exa-i"});
    o.require(i.code == 0, "last-exa-i exit code " + std::to_string(i.code));
    o.require(has_line(i.out, "φ(d)(1⊗z^2) = 2(1⊗z^2)"), "missing φ(d)(1⊗z^2) = 2(1⊗z^2)");
    o.require(has_line(i.out, "φ(d)(1⊗z^5) = 5(1⊗z^5)"), "missing φ(d)(1⊗z^5) = 5(1⊗z^5)");
    const CliResult ii = cli({"--json", "phi-eval", "--laurent", "last-exa-ii"});
    o.require(ii.code == 0, "last-exa-ii exit code " + std::to_string(ii.code));

    // Independent restatement: m^-1 z^(nm+1) d/dz applied to z^j.
    for (int m : {2, 3, 4})
        for (long n = -2; n <= 2; ++n) {
            const auto ex = catalog::last_exa_ii(m, n);
            const Field q = ex.setup.a.field();
            const LaurentDerivation target{LaurentElement::monomial(Scalar::one(q) / Scalar(q, m), n * m + 1)};
            for (long j = -2L * m; j <= 2L * m; ++j) {
                const LaurentElement want = target.apply(LaurentElement::monomial(q, j));
                const LoopElement got = loop_phi_eval(ex.setup, ex.d, LoopElement::pure(Vec{Scalar::one(q)}, j));
                o.require(got == LoopElement::pure(Vec{Scalar::one(q)}, 0).act(want),
                          "m = " + std::to_string(m) + ", n = " + std::to_string(n) + ", j = " + std::to_string(j));
            }
        }
    return o;
}

Outcome block_decomposition()
{
    Outcome o;
    const Field q = rationals();
    for (const auto& [an, a] : lie_factors(q))
        for (const auto& [sn, s] : factors(q)) {
            const std::string tag = an + " (x) " + sn;
            const Subspace full = brute_derivations(tensor_product(a, s));
            const std::size_t formula =
                brute_derivations(a).dim() * s.dim() + brute_centroid(a).dim() * brute_derivations(s).dim();
            o.require(full.dim() == formula, tag + ": dimension " + std::to_string(full.dim()) + " vs " +
                                                 std::to_string(formula));
            const TensorImages img = embed_tensor_derivations(a, s);
            o.require(img.der_tensor_s.space.intersect(img.cent_tensor_ders.space).dim() == 0,
                      tag + ": images intersect");
            o.require(img.der_tensor_s.space.sum(img.cent_tensor_ders.space) == full, tag + ": sum differs");
            o.require(cli({"verify-thm1", "--algebra", an, "--s", sn}).code == 0, tag + ": CLI verdict");
        }
    return o;
}

Outcome pi_bijective()
{
    Outcome o;
    const CliResult r = cli({"--json", "verify-thm2", "--setup", "sl2-twisted-flagship"});
    o.require(r.code == 0, "exit code " + std::to_string(r.code));
    const auto j = nlohmann::json::parse(r.out);
    o.require(j["verdict"] == "pass", "verdict");
    o.require(j["dimensions"]["dim D(A (x) S)_0"] == 6 && j["dimensions"]["dim D((A (x) S)_0)"] == 6,
              "dimensions are not 6 = 6");
    o.require(j["dimensions"]["rank pi"] == 6, "rank pi");

    const Setup st = make_setup(catalog::setup("sl2-twisted-flagship"));
    const Subspace der = brute_derivations(st.as);
    const std::size_t n = st.as.dim();
    const Subspace comm = brute_kernel(st.as.field(), n, [&](const Matrix& t) {
        return (st.sigma.matrix * t - t * st.sigma.matrix).flatten();
    });
    const Subspace zero = der.intersect(comm);
    const Subspace small = brute_derivations(st.fixed.algebra);
    o.require(zero.dim() == 6 && small.dim() == 6, "brute-force dimensions");
    std::vector<Vec> images;
    for (const auto& v : zero.basis_vectors()) {
        const Matrix big = Matrix::unflatten(st.as.field(), n, n, v);
        const Matrix d = restrict_pi(big, st);
        images.push_back(d.flatten());
        o.require(extend_phi(d, st) == big, "phi(pi(D)) != D");
    }
    o.require(Subspace::span(st.as.field(), 36, images) == small, "pi not surjective onto brute-force space");
    for (const auto& v : small.basis_vectors()) {
        const Matrix d = Matrix::unflatten(st.as.field(), 6, 6, v);
        o.require(restrict_pi(extend_phi(d, st), st) == d, "pi(phi(d)) != d");
    }
    std::size_t formula = 0;
    for (int i = 0; i < st.m; ++i)
        formula += st.grading_der_a[i].dim() * st.grading_s[-i].dim() +
                   st.grading_cent_a[i].dim() * st.grading_der_s[-i].dim();
    o.require(formula == small.dim(), "graded dimension formula");
    return o;
}

Outcome split()
{
    Outcome o;
    const Field q = rationals();
    std::mt19937_64 rng(20240611);
    for (const auto& [an, a] : lie_factors(q))
        for (const auto& [sn, s] : factors(q)) {
            const std::string tag = an + " (x) " + sn;
            const Algebra as = tensor_product(a, s);
            const std::size_t n = as.dim();
            const auto basis = brute_derivations(as).basis_vectors();
            std::vector<Matrix> ls;
            for (std::size_t j = 0; j < s.dim(); ++j)
                ls.push_back(kron(Matrix::identity(q, a.dim()), s.left_operator(s.basis_vector(j))));
            for (int sample = 0; sample < 25; ++sample) {
                Vec flat = zero_vec(q, n * n);
                for (const auto& b : basis)
                    axpy(flat, random_scalar(rng, q), b);
                const Matrix delta = Matrix::unflatten(q, n, n, flat);
                const SplitResult sp = split_derivation(delta, a, s);
                o.require(sp.d + sp.remainder == delta, tag + ": d + remainder != delta");
                o.require(is_derivation(as, sp.d), tag + ": d is not a derivation");
                for (const auto& l : ls)
                    o.require(sp.d * l == l * sp.d, tag + ": d is not S-linear");
                for (std::size_t i = 0; i < a.dim(); ++i)
                    o.require(is_zero(sp.remainder.apply(kron_vec(a.basis_vector(i), s.unit()))),
                              tag + ": remainder does not vanish on A (x) 1");
            }
            o.require(s_module_derivations(a, s).space.intersect(vanishing_on_A1_derivations(a, s).space).dim() == 0,
                      tag + ": subspaces intersect");
            o.require(cli({"verify-lemma21", "--algebra", an, "--s", sn, "--budget", "25"}).code == 0,
                      tag + ": CLI verdict");
        }
    return o;
}

Outcome psi()
{
    Outcome o;
    const Field q = rationals();
    for (const auto& [an, a] : lie_factors(q))
        for (const auto& [sn, s] : factors(q)) {
            const std::string tag = an + " (x) " + sn;
            const PsiReport p = psi_map(a, s);
            o.require(brute_centroid(tensor_product(a, s)).dim() == brute_centroid(a).dim() * s.dim(),
                      tag + ": centroid dimension");
            o.require(p.isomorphism(), tag + ": psi not bijective");
            o.require(cli({"psi-check", "--algebra", an, "--s", sn}).code == 0, tag + ": CLI verdict");
        }
    for (std::size_t n : {1, 2, 3}) {
        const std::string name = "zero(" + std::to_string(n) + ")";
        o.require(error_kind([&] { psi_map(catalog::zero_algebra(q, n), catalog::dual_numbers(q)); }) ==
                      ErrorKind::NotPerfect,
                  name + ": not refused");
        const CliResult r = cli({"psi-check", "--algebra", name, "--s", "dual-numbers"});
        o.require(r.code == 3 && r.err.find("NotPerfect") != std::string::npos, name + ": CLI did not refuse");
    }
    return o;
}

Outcome identities()
{
    Outcome o;
    const CliResult r = cli({"--json", "lemma-identities", "--setup", "sl2-twisted-flagship", "--budget", "2"});
    o.require(r.code == 0, "exit code " + std::to_string(r.code));
    const auto j = nlohmann::json::parse(r.out);
    o.require(j["verdict"] == "pass", "verdict");
    o.require(j["dimensions"]["|n| bound"] == 2, "n range");
    o.require(j["dimensions"]["formula4 wrap cases"] > 0, "no formula4 wrap case");
    o.require(j["dimensions"]["*I wrap cases"] > 0, "no *I wrap case");
    for (const auto& a : j["assertions"])
        o.require(a["pass"] == true, a["name"].get<std::string>());
    return o;
}

Outcome char_p()
{
    Outcome o;
    for (const char* name : {"sl2-f5-quotient", "k-f5-quotient-laurent"}) {
        const Setup st = make_setup(catalog::setup(name));
        o.require(st.a.field().characteristic() == 5 && st.m == 4, std::string(name) + ": not F5 with m = 4");
        for (const auto& d : derivation_space(st.fixed.algebra).matrices()) {
            const Matrix base = extend_phi(d, st, PhiBranch::char0, 1);
            o.require(st.in_degree_zero_derivations(base) && restrict_pi(base, st) == d,
                      std::string(name) + ": phi is not a right inverse");
            o.require(extend_phi(d, st, PhiBranch::charp) == base, std::string(name) + ": branches differ");
            for (long n : {2L, 3L})
                o.require(extend_phi(d, st, PhiBranch::char0, n) == base,
                          std::string(name) + ": depends on n = " + std::to_string(n));
        }
    }
    o.require(cli({"verify-thm2", "--setup", "sl2-f5-quotient"}).code == 0, "CLI verdict");
    return o;
}

Scalar evaluate(const std::vector<mpz_class>& poly, const Scalar& x)
{
    Scalar acc = Scalar::zero(x.field());
    for (auto it = poly.rbegin(); it != poly.rend(); ++it)
        acc = acc * x + Scalar(x.field(), mpq_class(*it));
    return acc;
}

Outcome infrastructure()
{
    Outcome o;
    std::mt19937_64 rng(99);
    for (const Field f : all_field_kinds()) {
        const std::string tag = f.describe();
        for (int t = 0; t < 40; ++t) {
            const Scalar a = random_scalar(rng, f), b = random_scalar(rng, f), c = random_scalar(rng, f);
            o.require(a + b == b + a && a * b == b * a, tag + ": commutativity");
            o.require((a + b) + c == a + (b + c) && (a * b) * c == a * (b * c), tag + ": associativity");
            o.require(a * (b + c) == a * b + a * c, tag + ": distributivity");
            o.require(a + Scalar::zero(f) == a && a * Scalar::one(f) == a && (a - a).is_zero(), tag + ": identities");
            if (!a.is_zero())
                o.require(a * a.inverse() == Scalar::one(f), tag + ": inverses");
        }
        for (int t = 0; t < 10; ++t) {
            const Matrix m = random_low_rank(rng, f, 5, 6, 3);
            const RrefResult r = rref(m);
            o.require(rref(r.reduced).reduced == r.reduced, tag + ": rref not idempotent");
            o.require(r.rank + kernel_basis(m).dim() == m.cols(), tag + ": rank-nullity");
            const Subspace u = random_subspace(rng, f, 6, 4), v = random_subspace(rng, f, 6, 4);
            o.require(u.sum(v).dim() + u.intersect(v).dim() == u.dim() + v.dim(), tag + ": Grassmann identity");
        }
    }
    for (int m = 1; m <= 12; ++m) {
        const Field f = make_field(FieldKind::cyclotomic, m);
        o.require(evaluate(cyclotomic_polynomial(m), Scalar::generator(f)).is_zero(),
                  "Phi_" + std::to_string(m) + "(zeta) != 0");
    }
    for (auto [p, m] : {std::pair<std::uint64_t, int>{5, 4}, {7, 3}, {7, 6}, {13, 12}}) {
        const Field f = make_field(FieldKind::prime, m, p);
        o.require(evaluate(cyclotomic_polynomial(m), Scalar::generator(f)).is_zero(),
                  "Phi_" + std::to_string(m) + " over F" + std::to_string(p));
    }

    const Field q = rationals(), c3 = make_field(FieldKind::cyclotomic, 3), f5 = make_field(FieldKind::prime, 4, 5);
    const std::vector<Automorphism> autos = {
        check_automorphism(catalog::sl2(q), catalog::sl2_sign(q), 2),
        check_automorphism(catalog::sl2_graded(q), catalog::sl2_graded_involution(q), 2),
        check_automorphism(quotient_laurent_algebra(c3, 6), quotient_laurent_automorphism(c3, 6, 3, GradingStyle::forward), 3),
        check_automorphism(quotient_laurent_algebra(f5, 8), quotient_laurent_automorphism(f5, 8, 4, GradingStyle::inverse), 4),
        make_setup(catalog::setup("sl2-twisted-flagship")).sigma,
    };
    for (const Automorphism& sigma : autos) {
        const Algebra& a = sigma.algebra;
        const Field f = a.field();
        const Grading g = grading_from_automorphism(sigma);
        const std::string tag = "grading over " + f.describe() + ", m = " + std::to_string(sigma.m);
        o.require(is_direct_sum_decomposition(g.components, a.dim()), tag + ": incomplete");
        for (int i = 0; i < g.m; ++i)
            for (int j = 0; j < g.m; ++j)
                for (const auto& x : g[i].basis_vectors())
                    for (const auto& y : g[j].basis_vectors())
                        o.require(g[i + j].contains(a.multiply(x, y)), tag + ": not multiplicative");
        const Scalar w = grading_root(f, sigma.m);
        std::vector<Vec> columns;
        for (std::size_t k = 0; k < a.dim(); ++k) {
            const auto parts = g.decompose(unit_vec(f, a.dim(), k));
            Vec col = zero_vec(f, a.dim());
            for (int i = 0; i < g.m; ++i)
                axpy(col, w.pow(i), parts[static_cast<std::size_t>(i)]);
            columns.push_back(col);
        }
        o.require(Matrix::from_columns(f, a.dim(), columns) == sigma.matrix, tag + ": sigma not reconstructed");
    }
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        const char* title;
        Outcome (*fn)();
        double budget_seconds; // 0 when the criterion sets no runtime bound
    };
    const Criterion criteria[] = {
        {"counterexample reproduction", counterexample, 1},
        {"phi formula reproduction", phi_reproduction, 5},
        {"block decomposition dimension identity", block_decomposition, 60},
        {"pi bijective on the flagship setup", pi_bijective, 30},
        {"split of 25 random derivations per pair", split, 0},
        {"psi bijective, refused on zero-product algebras", psi, 0},
        {"surjectivity identities with wrap cases", identities, 0},
        {"characteristic-p branch over F5", char_p, 0},
        {"infrastructure invariants", infrastructure, 30},
    };
    int failures = 0;
    int index = 1;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_seconds > 0 && secs >= c.budget_seconds)
            o.require(false, "runtime over budget");
        failures += o.pass ? 0 : 1;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << index++ << ": " << c.title << " (" << timing
                  << ")" << (o.pass ? "" : " -- " + o.detail) << "\n";
    }
    return failures == 0 ? 0 : 1;
}
