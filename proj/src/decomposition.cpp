#include "dercent/decomposition.hpp"

#include <random>
#include <sstream>

#include "dercent/error.hpp"
#include "dercent/kernels.hpp"

namespace dercent {

UnitPowers::UnitPowers(Algebra s, Vec u) : s_(std::move(s)), u_(std::move(u))
{
    u_inv_ = invert_element(s_, u_);
    cache_.emplace(0, s_.unit());
    cache_.emplace(1, u_);
    cache_.emplace(-1, u_inv_);
}

const Vec& UnitPowers::power(long e) const
{
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(e); it != cache_.end())
        return it->second;
    // Walk outwards from the nearest cached exponent of the same sign.
    const long step = e > 0 ? 1 : -1;
    long k = step;
    while (cache_.count(k + step) && (k + step) * step <= e * step)
        k += step;
    Vec cur = cache_.at(k);
    const Vec& base = e > 0 ? u_ : u_inv_;
    while (k != e) {
        cur = s_.multiply(cur, base);
        k += step;
        cache_.emplace(k, cur);
    }
    return cache_.at(e);
}

namespace {

std::string strip_kind(const Error& e)
{
    std::string what = e.what();
    auto pos = what.find(": ");
    return pos == std::string::npos ? what : what.substr(pos + 2);
}

template <class Fn>
auto under_hypothesis(const std::string& name, Fn&& fn)
{
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.kind(), "hypothesis " + name + " fails: " + strip_kind(e));
    }
}

const char* H1 = "(i) A perfect";
const char* H2 = "(ii) S commutative associative unital";
const char* H3 = "(iii) sigma1, sigma2 automorphisms with sigma^m = 1";
const char* H4 = "(iv) unit u in S_q";
const char* H5 = "(v) psi isomorphism";

std::vector<HomogeneousVector> homogeneous_basis(const Grading& g)
{
    std::vector<HomogeneousVector> out;
    for (int i = 0; i < g.m; ++i)
        for (auto& v : g[i].basis_vectors())
            out.push_back({i, std::move(v)});
    return out;
}

std::vector<Matrix> unflatten_all(const Subspace& sp, Field f, std::size_t n)
{
    std::vector<Matrix> out;
    for (const auto& v : sp.basis_vectors())
        out.push_back(Matrix::unflatten(f, n, n, v));
    return out;
}

std::vector<Matrix> left_ops(const Algebra& s, const std::vector<Vec>& elems)
{
    std::vector<Matrix> out;
    for (const auto& e : elems)
        out.push_back(s.left_operator(e));
    return out;
}

void record_setup(VerificationReport& r, const Setup& setup)
{
    for (const auto& [name, pass] : setup.hypotheses)
        r.hypothesis(name, pass);
}

} // namespace

Vec Setup::tensor(std::span<const Scalar> a_vec, std::span<const Scalar> s_vec) const
{
    const std::size_t ds = s.dim();
    Vec out = zero_vec(a.field(), a.dim() * ds);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a_vec[i].is_zero())
            continue;
        for (std::size_t j = 0; j < ds; ++j)
            if (!s_vec[j].is_zero())
                out[i * ds + j] = a_vec[i] * s_vec[j];
    }
    return out;
}

Vec Setup::act(std::span<const Scalar> x, std::span<const Scalar> t) const
{
    const std::size_t ds = s.dim();
    Vec out = zero_vec(a.field(), x.size());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        auto slice = x.subspan(i * ds, ds);
        if (is_zero(slice))
            continue;
        Vec prod = s.multiply(slice, t);
        std::copy(prod.begin(), prod.end(), out.begin() + static_cast<std::ptrdiff_t>(i * ds));
    }
    return out;
}

Vec Setup::apply_fixed(const Matrix& d, std::span<const Scalar> x) const
{
    auto coords = fixed_space.coordinates(x);
    if (!coords)
        throw Error(ErrorKind::NotInDomain, "argument lies outside the fixed-point algebra");
    return fixed.embedding.apply(d.apply(*coords));
}

bool Setup::in_degree_zero_derivations(const Matrix& d) const
{
    return d.rows() == as.dim() && d.cols() == as.dim() && is_derivation(as, d) &&
           sigma.matrix * d == d * sigma.matrix;
}

Setup make_setup(const SetupSpec& spec)
{
    Setup st;
    const Field f = spec.a.field();
    if (spec.s.field() != f)
        throw Error(ErrorKind::FieldMismatch, "A and S are defined over different fields");
    st.a = spec.a;
    st.s = spec.s;
    st.m = spec.m;

    under_hypothesis(H1, [&] {
        if (!st.a.is_perfect())
            throw Error(ErrorKind::NotPerfect, "A * A has dimension " +
                                                   std::to_string(st.a.properties().product_span.dim()) + " < " +
                                                   std::to_string(st.a.dim()));
        return 0;
    });
    st.hypotheses.emplace_back(H1, true);
    under_hypothesis(H2, [&] {
        st.s.require_commutative_associative_unital("S");
        return 0;
    });
    st.hypotheses.emplace_back(H2, true);
    under_hypothesis(H3, [&] {
        st.sigma1 = check_automorphism(st.a, spec.sigma1, spec.m);
        st.sigma2 = check_automorphism(st.s, spec.sigma2, spec.m);
        st.grading_a = grading_from_automorphism(st.sigma1);
        st.grading_s = grading_from_automorphism(st.sigma2);
        return 0;
    });
    st.hypotheses.emplace_back(H3, true);
    st.unit = under_hypothesis(H4, [&] { return find_graded_unit(st.s, st.grading_s, spec.q, spec.u); });
    st.hypotheses.emplace_back(H4, true);
    under_hypothesis(H5, [&] {
        auto rep = psi_map(st.a, st.s);
        if (!rep.isomorphism())
            throw Error(ErrorKind::PsiNotIso, "rank " + std::to_string(rep.rank) + ", dim C(A)*dim S = " +
                                                  std::to_string(rep.domain_dim) + ", dim C(A (x) S) = " +
                                                  std::to_string(rep.centroid_dim));
        return 0;
    });
    st.hypotheses.emplace_back(H5, true);

    st.as = tensor_product(st.a, st.s);
    st.sigma = tensor_automorphism(st.sigma1, st.sigma2);
    st.grading_as = grading_from_automorphism(st.sigma);
    st.der_a = derivation_space(st.a);
    st.cent_a = centroid(st.a);
    st.der_s = derivation_space(st.s);
    st.grading_der_a = induced_endo_grading(st.sigma1, st.der_a);
    st.grading_cent_a = induced_endo_grading(st.sigma1, st.cent_a);
    st.grading_der_s = induced_endo_grading(st.sigma2, st.der_s);
    st.fixed = fixed_point_algebra(st.sigma);
    st.fixed_space = st.grading_as[0];

    st.graded_a = homogeneous_basis(st.grading_a);
    st.graded_s = homogeneous_basis(st.grading_s);
    std::vector<Vec> columns;
    for (std::size_t i = 0; i < st.graded_a.size(); ++i)
        for (std::size_t j = 0; j < st.graded_s.size(); ++j) {
            GradedPair p{i, j, st.tensor(st.graded_a[i].v, st.graded_s[j].v)};
            columns.push_back(p.vector);
            st.graded_basis.push_back(std::move(p));
        }
    st.graded_basis_inverse = inverse(Matrix::from_columns(f, st.as.dim(), columns));
    st.u_powers = std::make_shared<UnitPowers>(st.s, st.unit.u_prime);
    st.u_orig_powers = std::make_shared<UnitPowers>(st.s, st.unit.u);
    return st;
}

SplitResult split_derivation(const Matrix& delta, const Algebra& a, const Algebra& s)
{
    s.require_commutative_associative_unital("S");
    const Algebra as = tensor_product(a, s);
    if (delta.rows() != as.dim() || delta.cols() != as.dim())
        throw Error(ErrorKind::DimensionMismatch, "endomorphism does not act on A (x) S");
    if (!is_derivation(as, delta))
        throw Error(ErrorKind::NotInDomain, "not a derivation of A (x) S");
    const std::size_t ds = s.dim();
    const Vec& one = s.unit();
    Matrix d(as.field(), as.dim(), as.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Vec e1 = zero_vec(as.field(), as.dim());
        for (std::size_t j = 0; j < ds; ++j)
            e1[i * ds + j] = one[j];
        Vec img = delta.apply(e1); // delta(e_i (x) 1)
        for (std::size_t j = 0; j < ds; ++j) {
            // delta(e_i (x) 1) s_j
            const Matrix rj = s.right_operator(s.basis_vector(j));
            for (std::size_t k = 0; k < a.dim(); ++k) {
                Vec slice(img.begin() + static_cast<std::ptrdiff_t>(k * ds),
                          img.begin() + static_cast<std::ptrdiff_t>((k + 1) * ds));
                Vec prod = rj.apply(slice);
                for (std::size_t t = 0; t < ds; ++t)
                    d(k * ds + t, i * ds + j) = prod[t];
            }
        }
    }
    return {d, delta - d};
}

TensorImages embed_tensor_derivations(const Algebra& a, const Algebra& s)
{
    s.require_commutative_associative_unital("S");
    if (!a.is_perfect())
        throw Error(ErrorKind::NotPerfect, "A is not perfect");
    const std::size_t n = a.dim() * s.dim();
    const auto der_a = derivation_space(a).matrices();
    const auto cent_a = centroid(a).matrices();
    const auto der_s = derivation_space(s).matrices();
    std::vector<Matrix> first, second;
    for (const auto& d : der_a)
        for (std::size_t j = 0; j < s.dim(); ++j)
            first.push_back(kron(d, s.left_operator(s.basis_vector(j))));
    for (const auto& g : cent_a)
        for (const auto& dp : der_s)
            second.push_back(kron(g, dp));
    return {make_endo_space(EndoTag::derivations, n, n, first), make_endo_space(EndoTag::derivations, n, n, second)};
}

VerificationReport verify_psi(const Algebra& a, const Algebra& s)
{
    VerificationReport r;
    r.claim = "psi: C(A) (x) S -> C(A (x) S) is an isomorphism of associative algebras";
    const PsiReport p = psi_map(a, s);
    r.hypothesis("A perfect", true);
    r.hypothesis("S commutative associative unital", true);
    const EndoSpace c = centroid(a);
    r.dimension("dim C(A)", c.dim());
    r.dimension("dim S", s.dim());
    r.dimension("dim C(A) (x) S", p.domain_dim);
    r.dimension("rank psi", p.rank);
    r.dimension("dim C(A (x) S)", p.centroid_dim);
    r.check("psi injective", p.injective);
    r.check("psi image inside C(A (x) S)", p.image_in_centroid);
    r.check("psi surjective", p.surjective);
    r.check("dim C(A (x) S) = dim C(A) * dim S", p.centroid_dim == c.dim() * s.dim());

    const auto gammas = c.matrices();
    bool mult = true;
    std::string witness;
    for (std::size_t i = 0; i < gammas.size() && mult; ++i)
        for (std::size_t j = 0; j < s.dim() && mult; ++j)
            for (std::size_t k = 0; k < gammas.size() && mult; ++k)
                for (std::size_t l = 0; l < s.dim() && mult; ++l) {
                    const Matrix lhs = kron(gammas[i], s.left_operator(s.basis_vector(j))) *
                                       kron(gammas[k], s.left_operator(s.basis_vector(l)));
                    const Matrix rhs = kron(gammas[i] * gammas[k],
                                            s.left_operator(s.multiply(s.basis_vector(j), s.basis_vector(l))));
                    if (lhs != rhs) {
                        mult = false;
                        witness = "gamma" + std::to_string(i) + ", " + s.basis_names()[j] + ", gamma" +
                                  std::to_string(k) + ", " + s.basis_names()[l];
                    }
                }
    r.check("psi multiplicative on basis pairs", mult, witness);
    return r;
}

VerificationReport verify_block_decomposition(const Algebra& a, const Algebra& s)
{
    VerificationReport r;
    r.claim = "D(A (x) S) = D(A) (x) S + C(A) (x) D(S)";
    r.absorb(verify_psi(a, s), "psi: ");
    const Algebra as = tensor_product(a, s);
    const EndoSpace full = derivation_space(as);
    const std::size_t da = derivation_space(a).dim(), ca = centroid(a).dim(), dsd = derivation_space(s).dim();
    const TensorImages img = embed_tensor_derivations(a, s);
    r.dimension("dim D(A)", da);
    r.dimension("dim C(A)", ca);
    r.dimension("dim S", s.dim());
    r.dimension("dim D(S)", dsd);
    r.dimension("dim D(A (x) S)", full.dim());
    r.dimension("dim D(A) (x) S image", img.der_tensor_s.dim());
    r.dimension("dim C(A) (x) D(S) image", img.cent_tensor_ders.dim());
    const std::size_t predicted = da * s.dim() + ca * dsd;
    r.check("dim D(A (x) S) = dim D(A) * dim S + dim C(A) * dim D(S)", full.dim() == predicted,
            std::to_string(full.dim()) + " != " + std::to_string(predicted));

    bool leibniz = true;
    for (const auto* sp : {&img.der_tensor_s, &img.cent_tensor_ders})
        for (const auto& m : sp->matrices())
            leibniz = leibniz && is_derivation(as, m);
    r.check("image basis elements are derivations of A (x) S", leibniz);
    const Subspace sum = img.der_tensor_s.space.sum(img.cent_tensor_ders.space);
    r.check("images intersect trivially",
            img.der_tensor_s.space.intersect(img.cent_tensor_ders.space).dim() == 0);
    r.check("sum of images equals the solved derivation space", sum == full.space);

    bool closed = true;
    std::string witness;
    std::vector<Matrix> basis = img.der_tensor_s.matrices();
    for (auto& m : img.cent_tensor_ders.matrices())
        basis.push_back(std::move(m));
    for (std::size_t i = 0; i < basis.size() && closed; ++i)
        for (std::size_t j = i + 1; j < basis.size() && closed; ++j)
            if (!sum.contains(commutator(basis[i], basis[j]).flatten())) {
                closed = false;
                witness = "[b" + std::to_string(i) + ", b" + std::to_string(j) + "]";
            }
    r.check("images closed under commutator", closed, witness);
    return r;
}

VerificationReport verify_split(const Algebra& a, const Algebra& s, int samples, unsigned seed)
{
    VerificationReport r;
    r.claim = "D(A (x) S) = D_S(A (x) S) + D_{A(x)1}(A (x) S)";
    const PsiReport p = psi_map(a, s);
    r.hypothesis("A perfect", true);
    r.hypothesis("S commutative associative unital", true);
    r.hypothesis("psi isomorphism", p.isomorphism());

    const Algebra as = tensor_product(a, s);
    const EndoSpace full = derivation_space(as);
    const EndoSpace ds = s_module_derivations(a, s);
    const EndoSpace da1 = vanishing_on_A1_derivations(a, s);
    r.dimension("dim D(A (x) S)", full.dim());
    r.dimension("dim D_S", ds.dim());
    r.dimension("dim D_{A(x)1}", da1.dim());
    r.check("D_S and D_{A(x)1} intersect trivially", ds.space.intersect(da1.space).dim() == 0);
    r.check("D_S + D_{A(x)1} equals the solved derivation space", ds.space.sum(da1.space) == full.space);

    const EndoSpace cent = centroid(a);
    const Algebra cs = tensor_product(centroid_algebra(cent), s);
    const Algebra calg = centroid_algebra(cent);
    std::vector<Vec> one_s;
    for (std::size_t j = 0; j < s.dim(); ++j) {
        Vec v = zero_vec(cs.field(), cs.dim());
        const Vec& idc = calg.unit();
        for (std::size_t i = 0; i < calg.dim(); ++i)
            v[i * s.dim() + j] = idc[i];
        one_s.push_back(std::move(v));
    }
    const EndoSpace rel = relative_derivation_space(cs, Subspace::span(cs.field(), cs.dim(), one_s));
    r.dimension("dim D(1 (x) S, C(A) (x) S)", rel.dim());
    r.check("dim D_{A(x)1} = dim D(1 (x) S, C(A) (x) S)", rel.dim() == da1.dim(),
            std::to_string(da1.dim()) + " != " + std::to_string(rel.dim()));

    bool lie = true;
    const auto da1_basis = da1.matrices();
    for (std::size_t i = 0; i < da1_basis.size() && lie; ++i)
        for (std::size_t j = i + 1; j < da1_basis.size() && lie; ++j)
            lie = da1.contains(commutator(da1_basis[i], da1_basis[j]));
    r.check("D_{A(x)1} closed under commutator", lie);

    std::mt19937 rng(seed);
    const auto basis = full.matrices();
    int ok = 0;
    std::string witness;
    for (int t = 0; t < samples; ++t) {
        Matrix delta(as.field(), as.dim(), as.dim());
        for (const auto& b : basis)
            delta += Scalar(as.field(), static_cast<long>(rng() % 11) - 5) * b;
        const SplitResult sp = split_derivation(delta, a, s);
        const bool pass = ds.contains(sp.d) && da1.contains(sp.remainder) && sp.d + sp.remainder == delta;
        if (pass)
            ++ok;
        else if (witness.empty())
            witness = "sample " + std::to_string(t) + ": delta = " + literal(delta);
    }
    r.dimension("random derivations split", static_cast<std::size_t>(samples));
    r.check("every sampled derivation splits as d + remainder with d in D_S, remainder in D_{A(x)1}",
            ok == samples, witness);
    return r;
}

VerificationReport verify_graded_decomposition(const Setup& setup)
{
    VerificationReport r;
    r.claim = "graded components of D(A (x) S) under sigma = sigma1 (x) sigma2";
    record_setup(r, setup);
    const Field f = setup.as.field();
    const std::size_t n = setup.as.dim();
    const std::size_t na = setup.a.dim();
    const EndoSpace full = derivation_space(setup.as);
    const Grading g = induced_endo_grading(setup.sigma, full);
    r.dimension("m", static_cast<std::size_t>(setup.m));
    r.dimension("dim D(A (x) S)", full.dim());
    std::size_t total = 0;
    for (int j = 0; j < setup.m; ++j) {
        std::vector<Vec> first, second;
        for (int k = 0; k < setup.m; ++k) {
            const auto lops = left_ops(setup.s, setup.grading_s[j - k].basis_vectors());
            for (const auto& d : unflatten_all(setup.grading_der_a[k], f, na))
                for (const auto& l : lops)
                    first.push_back(kron(d, l).flatten());
            const auto dprimes = unflatten_all(setup.grading_der_s[j - k], f, setup.s.dim());
            for (const auto& gm : unflatten_all(setup.grading_cent_a[k], f, na))
                for (const auto& dp : dprimes)
                    second.push_back(kron(gm, dp).flatten());
        }
        const Subspace u = Subspace::span(f, n * n, first), v = Subspace::span(f, n * n, second);
        const std::string tag = "degree " + std::to_string(j);
        r.dimension("dim D(A (x) S)_" + std::to_string(j), g[j].dim());
        r.check(tag + ": D(A)-part and C(A)-part intersect trivially", u.intersect(v).dim() == 0);
        r.check(tag + ": component equals sum of D(A)_k (x) S_{j-k} and C(A)_k (x) D(S)_{j-k}", u.sum(v) == g[j],
                std::to_string(u.sum(v).dim()) + " vs " + std::to_string(g[j].dim()));
        total += g[j].dim();
    }
    r.check("graded dimensions sum to dim D(A (x) S)", total == full.dim());
    return r;
}

EndoSpace degree_zero_derivations(const Setup& setup)
{
    const std::size_t n = setup.as.dim();
    auto eqs = derivation_equations(setup.as);
    for (auto& row : commutant_equations(n, {setup.sigma.matrix}))
        eqs.push_back(std::move(row));
    return {EndoTag::derivations, n, n, kernels::solve_homogeneous(setup.as.field(), n * n, eqs)};
}

Matrix restrict_pi(const Matrix& d, const Setup& setup)
{
    if (!setup.in_degree_zero_derivations(d))
        throw Error(ErrorKind::NotInDomain, "not a degree-0 derivation of A (x) S");
    const Matrix& e = setup.fixed.embedding;
    const Matrix de = d * e;
    std::vector<Vec> cols;
    for (std::size_t c = 0; c < de.cols(); ++c) {
        auto coords = setup.fixed_space.coordinates(de.column(c));
        if (!coords)
            throw Error(ErrorKind::Internal, "degree-0 derivation leaves the fixed-point algebra");
        cols.push_back(std::move(*coords));
    }
    return Matrix::from_columns(setup.as.field(), setup.fixed.algebra.dim(), cols);
}

namespace {

void require_fixed_derivation(const Matrix& d, const Setup& setup)
{
    const std::size_t k = setup.fixed.algebra.dim();
    if (d.rows() != k || d.cols() != k)
        throw Error(ErrorKind::DimensionMismatch, "endomorphism does not act on the fixed-point algebra");
    if (!is_derivation(setup.fixed.algebra, d))
        throw Error(ErrorKind::NotInDomain, "not a derivation of the fixed-point algebra");
}

/// Matrix of the map sending graded basis element t to images[t].
Matrix from_graded_images(const Setup& setup, const std::vector<Vec>& images)
{
    return Matrix::from_columns(setup.as.field(), setup.as.dim(), images) * setup.graded_basis_inverse;
}

} // namespace

Matrix extend_phi(const Matrix& d, const Setup& setup, PhiBranch branch, long n)
{
    require_fixed_derivation(d, setup);
    const Field f = setup.as.field();
    const long m = setup.m;
    const UnitPowers& u = *setup.u_powers;
    std::optional<Scalar> mn_inv;
    std::optional<long> p_inv;
    long p = 0;
    if (branch == PhiBranch::char0) {
        if (n == 0)
            throw Error(ErrorKind::NotInDomain, "n must be nonzero");
        const Scalar mn(f, m * n);
        if (mn.is_zero())
            throw Error(ErrorKind::NotInDomain, "m * n is not invertible in " + f.describe());
        mn_inv = mn.inverse();
    } else {
        if (f.kind() != FieldKind::prime)
            throw Error(ErrorKind::FieldMismatch, "the characteristic-p formula needs a prime field");
        p = static_cast<long>(f.characteristic());
        p_inv = inverse_mod(p, m);
        if (!p_inv)
            throw Error(ErrorKind::NotInDomain, "p is not invertible modulo m");
    }

    std::vector<Vec> images(setup.graded_basis.size());
    std::vector<std::string> errors(setup.graded_basis.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t t = 0; t < setup.graded_basis.size(); ++t) {
        try {
            const auto& pair = setup.graded_basis[t];
            const auto& a = setup.graded_a[pair.a_index];
            const auto& b = setup.graded_s[pair.b_index];
            const long ei = a.degree;
            const long es = eps(a.degree + b.degree, m);
            const Vec ab = setup.tensor(a.v, b.v);
            if (branch == PhiBranch::char0) {
                Vec img = setup.act(setup.apply_fixed(d, setup.act(ab, u.power(-es))), u.power(es));
                if (es != 0) {
                    Vec inner = setup.act(setup.apply_fixed(d, setup.tensor(a.v, u.power(-ei + m * n))), u.power(-m * n));
                    Vec base = setup.apply_fixed(d, setup.tensor(a.v, u.power(-ei)));
                    Vec corr = setup.act(sub(inner, base), setup.s.multiply(u.power(ei), b.v));
                    axpy(img, Scalar(f, es) * *mn_inv, corr);
                }
                images[t] = std::move(img);
            } else {
                const long pr = p * eps(es * *p_inv, m);
                images[t] = setup.act(setup.apply_fixed(d, setup.act(ab, u.power(-pr))), u.power(pr));
            }
        } catch (const std::exception& e) {
            errors[t] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty())
            throw Error(ErrorKind::Internal, "phi evaluation failed: " + e);
    return from_graded_images(setup, images);
}

Matrix bm_formula_extend(const Matrix& d, const Setup& setup)
{
    require_fixed_derivation(d, setup);
    const long m = setup.m;
    const long q_inv = *inverse_mod(setup.unit.q, m);
    const UnitPowers& u = *setup.u_orig_powers;
    std::vector<Vec> images;
    for (const auto& pair : setup.graded_basis) {
        const auto& a = setup.graded_a[pair.a_index];
        const auto& b = setup.graded_s[pair.b_index];
        const long r = eps(eps(a.degree + b.degree, m) * q_inv, m);
        images.push_back(setup.act(setup.apply_fixed(d, setup.act(setup.tensor(a.v, b.v), u.power(-r))), u.power(r)));
    }
    return from_graded_images(setup, images);
}

VerificationReport verify_pi_isomorphism(const Setup& setup)
{
    VerificationReport r;
    r.claim = "pi: D(A (x) S)_0 -> D((A (x) S)_0) is an isomorphism with inverse phi";
    record_setup(r, setup);
    const Field f = setup.as.field();
    const EndoSpace z = degree_zero_derivations(setup);
    const EndoSpace t = derivation_space(setup.fixed.algebra);
    r.dimension("m", static_cast<std::size_t>(setup.m));
    r.dimension("dim A (x) S", setup.as.dim());
    r.dimension("dim (A (x) S)_0", setup.fixed.algebra.dim());
    r.dimension("dim D(A (x) S)_0", z.dim());
    r.dimension("dim D((A (x) S)_0)", t.dim());

    const auto zb = z.matrices();
    std::vector<Vec> pi_cols;
    std::vector<Matrix> restricted;
    bool in_target = true;
    for (const auto& d : zb) {
        restricted.push_back(restrict_pi(d, setup));
        in_target = in_target && t.contains(restricted.back());
        pi_cols.push_back(restricted.back().flatten());
    }
    const std::size_t k = setup.fixed.algebra.dim();
    const std::size_t rk = zb.empty() ? 0 : rank(Matrix::from_columns(f, k * k, pi_cols));
    r.dimension("rank pi", rk);
    r.check("pi maps into D((A (x) S)_0)", in_target);
    r.check("pi injective", rk == z.dim(), "kernel dimension " + std::to_string(z.dim() - rk));
    r.check("pi surjective", rk == t.dim(), "rank " + std::to_string(rk) + " < " + std::to_string(t.dim()));

    bool left = true;
    std::string lw;
    for (std::size_t i = 0; i < zb.size() && left; ++i)
        if (extend_phi(restricted[i], setup) != zb[i]) {
            left = false;
            lw = "D = " + literal(zb[i]);
        }
    r.check("phi(pi(D)) = D on a basis of D(A (x) S)_0", left, lw);

    bool right = true, deriv = true, degree0 = true;
    std::string rw, dw;
    for (const auto& d : t.matrices()) {
        const Matrix big = extend_phi(d, setup);
        const bool is_der = is_derivation(setup.as, big);
        const bool deg = setup.sigma.matrix * big == big * setup.sigma.matrix;
        if (!is_der && deriv) {
            deriv = false;
            dw = "d = " + literal(d);
        }
        degree0 = degree0 && deg;
        if (is_der && deg && restrict_pi(big, setup) != d && right) {
            right = false;
            rw = "d = " + literal(d);
        }
    }
    r.check("phi(d) is a derivation of A (x) S on all basis pairs", deriv, dw);
    r.check("phi(d) commutes with sigma", degree0);
    r.check("pi(phi(d)) = d on a basis of D((A (x) S)_0)", deriv && degree0 && right, rw);

    std::size_t formula = 0;
    for (int i = 0; i < setup.m; ++i)
        formula += setup.grading_der_a[i].dim() * setup.grading_s[-i].dim() +
                   setup.grading_cent_a[i].dim() * setup.grading_der_s[-i].dim();
    r.dimension("sum_i dim D(A)_i dim S_-i + dim C(A)_i dim D(S)_-i", formula);
    r.check("graded dimension formula for D((A (x) S)_0)", formula == t.dim(),
            std::to_string(formula) + " != " + std::to_string(t.dim()));
    r.check("graded dimension formula for D(A (x) S)_0", formula == z.dim(),
            std::to_string(formula) + " != " + std::to_string(z.dim()));
    return r;
}

namespace {

struct IdentityTally {
    std::size_t count = 0;
    std::size_t wraps = 0;
    std::string witness;
    void record(bool pass, const std::string& where)
    {
        ++count;
        if (!pass && witness.empty())
            witness = where;
    }
};

} // namespace

VerificationReport check_surjectivity_identities(const Setup& setup, const std::vector<Matrix>& ds, long n_max)
{
    VerificationReport r;
    r.claim = "identities used in the surjectivity of pi";
    record_setup(r, setup);
    for (const auto& d : ds)
        require_fixed_derivation(d, setup);
    const Field f = setup.as.field();
    const long m = setup.m;
    const UnitPowers& u = *setup.u_powers;
    const Vec& one = setup.s.unit();
    const auto& ga = setup.graded_a;
    const auto& gs = setup.graded_s;

    enum { F1, F2, F3, F4, I1, I2, I3, COUNT };
    const char* names[COUNT] = {
        "formula1: u^-nm d(a (x) u^(-i+nm)) + u^nm d(a (x) u^(-i-nm)) = 2 d(a (x) u^-i)",
        "formula2: u^-nm d(a (x) u^(-i+nm)) + n u^m d(a (x) u^(-i-m)) = (1+n) d(a (x) u^-i)",
        "formula3: u^-nm d(a (x) u^(-i+nm)) - n u^-m d(a (x) u^(-i+m)) = (1-n) d(a (x) u^-i)",
        "formula4: eps(i+j) may be replaced by eps(i)+eps(j)",
        "*I: exchange identity",
        "*II: exchange identity with s = t = 0",
        "*III: exchange identity with s = i, b1 = 1",
    };
    std::vector<std::vector<IdentityTally>> tallies(ds.size(), std::vector<IdentityTally>(COUNT));

#pragma omp parallel for schedule(dynamic)
    for (std::size_t di = 0; di < ds.size(); ++di) {
        const Matrix& d = ds[di];
        auto& tl = tallies[di];
        const std::string dtag = "d" + std::to_string(di);
        // d(a (x) x) for x in S.
        auto dd = [&](const Vec& a, const Vec& x) { return setup.apply_fixed(d, setup.tensor(a, x)); };
        auto U = [&](long e) -> const Vec& { return u.power(e); };
        auto mul = [&](const Vec& x, const Vec& y) { return setup.s.multiply(x, y); };
        // u^(-m+s) d(a (x) u^(-s+m) b) - u^s d(a (x) u^-s b)
        auto bracket = [&](const Vec& a, const Vec& b, long s) {
            return sub(setup.act(dd(a, mul(U(-s + m), b)), U(-m + s)), setup.act(dd(a, mul(U(-s), b)), U(s)));
        };

        for (std::size_t ai = 0; ai < ga.size(); ++ai) {
            const Vec& a = ga[ai].v;
            for (long shift : {0L, -1L}) {
                const long i = ga[ai].degree + shift * m;
                const Vec base = dd(a, U(-i));
                for (long n = -n_max; n <= n_max; ++n) {
                    const std::string where = dtag + ", a = " + std::to_string(ai) + ", i = " + std::to_string(i) +
                                              ", n = " + std::to_string(n);
                    const Vec head = setup.act(dd(a, U(-i + n * m)), U(-n * m));
                    const Vec f1 = add(head, setup.act(dd(a, U(-i - n * m)), U(n * m)));
                    tl[F1].record(f1 == scale(Scalar(f, 2), base), where);
                    Vec f2 = head;
                    axpy(f2, Scalar(f, n), setup.act(dd(a, U(-i - m)), U(m)));
                    tl[F2].record(f2 == scale(Scalar(f, 1 + n), base), where);
                    Vec f3 = head;
                    axpy(f3, Scalar(f, -n), setup.act(dd(a, U(-i + m)), U(-m)));
                    tl[F3].record(f3 == scale(Scalar(f, 1 - n), base), where);
                }
            }
        }

        for (std::size_t ai = 0; ai < ga.size(); ++ai)
            for (std::size_t aj = 0; aj < ga.size(); ++aj) {
                const long ei = ga[ai].degree, ej = ga[aj].degree, eij = eps(ei + ej, m);
                const Vec x = setup.a.multiply(ga[ai].v, ga[aj].v);
                const std::string pair = dtag + ", a_i = " + std::to_string(ai) + ", a_j = " + std::to_string(aj);
                auto side = [&](long e) {
                    return setup.act(sub(setup.act(dd(x, U(-e + m)), U(-m)), dd(x, U(-e))), U(e));
                };
                tl[F4].record(side(eij) == side(ei + ej), pair);
                if (eij != ei + ej)
                    ++tl[F4].wraps;

                for (long n = -n_max; n <= n_max; ++n) {
                    const long i = ei + n * m, j = ej + n * m;
                    const std::string where = pair + ", i = " + std::to_string(i) + ", j = " + std::to_string(j);
                    // (a_i (x) u^-i)[u^(-m+j) d(a_j (x) u^(-j+m)) - d(a_j (x) u^-j) u^j] u^-j
                    const Vec inner_j = sub(setup.act(dd(ga[aj].v, U(-j + m)), U(-m + j)),
                                            setup.act(dd(ga[aj].v, U(-j)), U(j)));
                    const Vec inner_i = sub(setup.act(dd(ga[ai].v, U(-i + m)), U(-m + i)),
                                            setup.act(dd(ga[ai].v, U(-i)), U(i)));
                    const Vec lhs2 = setup.act(setup.as.multiply(setup.tensor(ga[ai].v, U(-i)), inner_j), U(-j));
                    const Vec rhs2 = setup.as.multiply(setup.act(inner_i, U(-i)), setup.tensor(ga[aj].v, U(-j)));
                    tl[I2].record(lhs2 == rhs2, where);
                    if (eps(i + j, m) != eps(i, m) + eps(j, m))
                        ++tl[I2].wraps;
                }

                for (std::size_t b1 = 0; b1 < gs.size(); ++b1)
                    for (std::size_t b2 = 0; b2 < gs.size(); ++b2) {
                        const long sbar = eps(ei + gs[b1].degree, m), tbar = eps(ej + gs[b2].degree, m);
                        if (eps(sbar + tbar, m) != sbar + tbar)
                            ++tl[I1].wraps;
                        for (long n = -n_max; n <= n_max; ++n) {
                            const long s = sbar + n * m, t = tbar - n * m;
                            const std::string where = pair + ", b1 = " + std::to_string(b1) + ", b2 = " +
                                                      std::to_string(b2) + ", s = " + std::to_string(s) +
                                                      ", t = " + std::to_string(t);
                            const Vec lhs = setup.as.multiply(bracket(ga[ai].v, gs[b1].v, s),
                                                              setup.tensor(ga[aj].v, gs[b2].v));
                            const Vec rhs = setup.as.multiply(setup.tensor(ga[ai].v, gs[b1].v),
                                                              bracket(ga[aj].v, gs[b2].v, t));
                            tl[I1].record(lhs == rhs, where);
                        }
                    }

                for (std::size_t b2 = 0; b2 < gs.size(); ++b2) {
                    const long tbar = eps(ej + gs[b2].degree, m);
                    for (long n = -n_max; n <= n_max; ++n) {
                        const long i = ei + n * m, t = tbar + n * m;
                        const std::string where = pair + ", b2 = " + std::to_string(b2) + ", i = " +
                                                  std::to_string(i) + ", t = " + std::to_string(t);
                        const Vec lhs = setup.as.multiply(setup.tensor(ga[ai].v, one), bracket(ga[aj].v, gs[b2].v, t));
                        const Vec rhs = setup.as.multiply(bracket(ga[ai].v, one, i), setup.tensor(ga[aj].v, gs[b2].v));
                        tl[I3].record(lhs == rhs, where);
                    }
                }
            }
    }

    r.dimension("derivations sampled", ds.size());
    r.dimension("|n| bound", static_cast<std::size_t>(n_max));
    for (int k = 0; k < COUNT; ++k) {
        IdentityTally total;
        for (const auto& tl : tallies) {
            total.count += tl[k].count;
            total.wraps += tl[k].wraps;
            if (total.witness.empty())
                total.witness = tl[k].witness;
        }
        const std::string key = std::string(names[k]).substr(0, std::string(names[k]).find(':'));
        r.dimension(key + " instances", total.count);
        if (k == F4 || k == I1 || k == I2)
            r.dimension(key + " wrap cases", total.wraps);
        r.check(names[k], total.witness.empty(), total.witness);
    }
    r.note("formula4 is checked with exponent -eps(i)-eps(j) inside the right-hand bracket");
    return r;
}

} // namespace dercent
