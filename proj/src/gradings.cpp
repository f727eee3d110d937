#include "dercent/gradings.hpp"

#include <numeric>
#include <random>

#include "dercent/error.hpp"

namespace dercent {

Automorphism check_automorphism(const Algebra& a, const Matrix& matrix, int m)
{
    const std::size_t n = a.dim();
    if (m < 1)
        throw Error(ErrorKind::WrongPeriod, "period must be positive");
    if (matrix.rows() != n || matrix.cols() != n)
        throw Error(ErrorKind::DimensionMismatch, "automorphism matrix has the wrong size");
    if (matrix.field() != a.field())
        throw Error(ErrorKind::FieldMismatch, "automorphism over a different field");
    if (rank(matrix) != n)
        throw Error(ErrorKind::NotAutomorphism, "matrix is singular");
    std::vector<Vec> images;
    for (std::size_t i = 0; i < n; ++i)
        images.push_back(matrix.column(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec lhs = a.zero();
            for (const auto& [k, c] : a.product(i, j))
                axpy(lhs, c, images[k]);
            if (lhs != a.multiply(images[i], images[j]))
                throw Error(ErrorKind::NotAutomorphism, "sigma(" + a.basis_names()[i] + " * " + a.basis_names()[j] +
                                                            ") != sigma(" + a.basis_names()[i] + ") * sigma(" +
                                                            a.basis_names()[j] + ")");
        }
    if (!matrix.pow(static_cast<unsigned long>(m)).is_identity())
        throw Error(ErrorKind::WrongPeriod, "sigma^" + std::to_string(m) + " is not the identity");
    return {a, matrix, m};
}

long eps(long i, long m)
{
    return ((i % m) + m) % m;
}

std::optional<long> inverse_mod(long q, long m)
{
    q = eps(q, m);
    for (long x = 0; x < m; ++x)
        if (eps(q * x, m) == eps(1, m))
            return x;
    return std::nullopt;
}

Scalar grading_root(Field f, int m)
{
    if (m == 1)
        return Scalar::one(f);
    auto w = root_of_unity(f, m);
    if (!w)
        throw Error(ErrorKind::FieldMismatch, f.describe() + " has no primitive " + std::to_string(m) + "-th root of unity");
    return *w;
}

std::vector<std::size_t> Grading::dims() const
{
    std::vector<std::size_t> out;
    for (const auto& c : components)
        out.push_back(c.dim());
    return out;
}

std::optional<int> Grading::degree_of(std::span<const Scalar> v) const
{
    if (is_zero(v))
        return 0;
    for (int i = 0; i < m; ++i)
        if (components[static_cast<std::size_t>(i)].contains(v))
            return i;
    return std::nullopt;
}

std::vector<Vec> Grading::decompose(std::span<const Scalar> v) const
{
    // Solve v = sum_i x_i over the concatenated component bases.
    const Field f = components.front().field();
    const std::size_t n = components.front().ambient_dim();
    std::vector<Vec> columns;
    for (const auto& c : components)
        for (const auto& b : c.basis_vectors())
            columns.push_back(b);
    Matrix p = Matrix::from_columns(f, n, columns);
    Matrix aug(f, n, columns.size() + 1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            aug(r, c) = p(r, c);
        aug(r, columns.size()) = v[r];
    }
    auto res = rref(aug);
    if (!res.pivots.empty() && res.pivots.back() == columns.size())
        throw Error(ErrorKind::NotInDomain, "vector lies outside the graded space");
    Vec x = zero_vec(f, columns.size());
    for (std::size_t r = 0; r < res.rank; ++r)
        x[res.pivots[r]] = res.reduced(r, columns.size());
    std::vector<Vec> parts;
    std::size_t offset = 0;
    for (const auto& c : components) {
        Vec part = zero_vec(f, n);
        for (std::size_t t = 0; t < c.dim(); ++t)
            axpy(part, x[offset + t], columns[offset + t]);
        offset += c.dim();
        parts.push_back(std::move(part));
    }
    return parts;
}

namespace {

std::vector<Subspace> eigenspaces(const Matrix& m, const Scalar& omega, int period)
{
    std::vector<Subspace> out;
    const auto id = Matrix::identity(m.field(), m.rows());
    Scalar w = Scalar::one(m.field());
    for (int i = 0; i < period; ++i) {
        out.push_back(kernel_basis(m - w * id));
        w *= omega;
    }
    return out;
}

} // namespace

Grading grading_from_automorphism(const Automorphism& sigma)
{
    const Scalar omega = grading_root(sigma.algebra.field(), sigma.m);
    Grading g{sigma.m, eigenspaces(sigma.matrix, omega, sigma.m)};
    if (!is_direct_sum_decomposition(g.components, sigma.algebra.dim()))
        throw Error(ErrorKind::Internal, "eigenspaces of sigma do not decompose the algebra");
    return g;
}

bool is_valid_algebra_grading(const Algebra& a, const Grading& g)
{
    if (!is_direct_sum_decomposition(g.components, a.dim()))
        return false;
    for (int i = 0; i < g.m; ++i)
        for (int j = 0; j < g.m; ++j) {
            const auto& target = g[i + j];
            for (const auto& x : g[i].basis_vectors())
                for (const auto& y : g[j].basis_vectors())
                    if (!target.contains(a.multiply(x, y)))
                        return false;
        }
    return true;
}

Grading induced_endo_grading(const Automorphism& sigma, const EndoSpace& e)
{
    const Field f = sigma.algebra.field();
    const Matrix inv = inverse(sigma.matrix);
    const auto basis = e.matrices();
    std::vector<Vec> columns;
    for (const auto& t : basis) {
        auto coords = e.coordinates(sigma.matrix * t * inv);
        if (!coords)
            throw Error(ErrorKind::NotInvariant, "space is not stable under conjugation by sigma");
        columns.push_back(std::move(*coords));
    }
    Grading g;
    g.m = sigma.m;
    const std::size_t ambient = e.rows * e.cols;
    if (basis.empty()) {
        g.components.assign(static_cast<std::size_t>(sigma.m), Subspace(f, ambient));
        return g;
    }
    const Matrix star = Matrix::from_columns(f, basis.size(), columns);
    for (const auto& comp : eigenspaces(star, grading_root(f, sigma.m), sigma.m)) {
        std::vector<Vec> flat;
        for (const auto& x : comp.basis_vectors()) {
            Vec v = zero_vec(f, ambient);
            for (std::size_t t = 0; t < basis.size(); ++t)
                if (!x[t].is_zero())
                    axpy(v, x[t], basis[t].flatten());
            flat.push_back(std::move(v));
        }
        g.components.push_back(Subspace::span(f, ambient, flat));
    }
    std::size_t total = 0;
    for (const auto& c : g.components)
        total += c.dim();
    if (total != e.dim())
        throw Error(ErrorKind::Internal, "conjugation by sigma is not diagonalizable on the space");
    return g;
}

Automorphism tensor_automorphism(const Automorphism& s1, const Automorphism& s2)
{
    if (s1.m != s2.m)
        throw Error(ErrorKind::WrongPeriod, "automorphisms have different declared periods");
    if (s1.algebra.field() != s2.algebra.field())
        throw Error(ErrorKind::FieldMismatch, "automorphisms over different fields");
    return check_automorphism(tensor_product(s1.algebra, s2.algebra), kron(s1.matrix, s2.matrix), s1.m);
}

Subalgebra fixed_point_algebra(const Automorphism& sigma)
{
    return subalgebra_on(sigma.algebra, grading_from_automorphism(sigma)[0]);
}

GradedUnitData find_graded_unit(const Algebra& s, const Grading& g, int q, const std::optional<Vec>& explicit_u)
{
    const long m = g.m;
    auto q1 = inverse_mod(q, m);
    if (!q1)
        throw Error(ErrorKind::NotUnitResidue, std::to_string(q) + " is not a unit in Z_" + std::to_string(m));
    s.require_commutative_associative_unital("S");
    const Subspace& sq = g[q];
    auto invertible = [&](const Vec& u) { return rank(s.left_operator(u)) == s.dim(); };

    std::optional<Vec> found;
    if (explicit_u) {
        if (!sq.contains(*explicit_u))
            throw Error(ErrorKind::NotInDomain, "given u is not homogeneous of degree " + std::to_string(eps(q, m)));
        if (!invertible(*explicit_u))
            throw Error(ErrorKind::SingularElement, "given u is not invertible");
        found = explicit_u;
    }
    for (std::size_t i = 0; !found && i < sq.dim(); ++i)
        if (Vec b = sq.basis_vector(i); invertible(b))
            found = b;
    if (!found && sq.dim() > 0) {
        std::mt19937 rng(20240611u);
        for (int attempt = 0; attempt < 64 && !found; ++attempt) {
            Vec u = zero_vec(s.field(), s.dim());
            for (std::size_t i = 0; i < sq.dim(); ++i)
                axpy(u, Scalar(s.field(), static_cast<long>(rng() % 5) - 2), sq.basis_vector(i));
            if (!is_zero(u) && invertible(u))
                found = u;
        }
    }
    if (!found)
        throw Error(ErrorKind::NoUnitFound, "no unit found in S_" + std::to_string(eps(q, m)));

    GradedUnitData out;
    out.q = static_cast<int>(eps(q, m));
    out.u = *found;
    out.u_inverse = invert_element(s, out.u);
    out.u_prime = element_power(s, out.u, *q1);
    out.u_prime_inverse = invert_element(s, out.u_prime);
    if (!g[1].contains(out.u_prime))
        throw Error(ErrorKind::Internal, "u' is not of degree 1");
    return out;
}

} // namespace dercent
