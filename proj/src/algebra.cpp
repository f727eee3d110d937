#include "dercent/algebra.hpp"

#include <algorithm>
#include <mutex>

#include "dercent/error.hpp"
#include "dercent/kernels.hpp"

namespace dercent {

namespace detail {

struct AlgebraCache {
    std::once_flag props_once;
    std::once_flag ops_once;
    AlgebraProperties props;
    MultOperators ops;
};

} // namespace detail

namespace {

// Sums duplicate columns, drops zeros, sorts by column.
SparseRow normalize_row(Field f, SparseRow row)
{
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow out;
    for (auto& [k, c] : row) {
        if (c.field() != f)
            throw Error(ErrorKind::FieldMismatch, "structure constant over the wrong field");
        if (!out.empty() && out.back().first == k)
            out.back().second += c;
        else
            out.emplace_back(k, std::move(c));
    }
    std::erase_if(out, [](const auto& e) { return e.second.is_zero(); });
    return out;
}

std::optional<Vec> solve_unit(const Algebra& a)
{
    // Unknowns u_0..u_{n-1} and a homogenizing t: L_u = R_u = t * id.
    const std::size_t n = a.dim();
    const Field f = a.field();
    std::vector<SparseRow> eqs;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            SparseRow left, right;
            for (std::size_t i = 0; i < n; ++i) {
                Scalar l = a.structure_constant(i, j, k);
                if (!l.is_zero())
                    left.emplace_back(i, l);
                Scalar r = a.structure_constant(j, i, k);
                if (!r.is_zero())
                    right.emplace_back(i, r);
            }
            if (j == k) {
                left.emplace_back(n, Scalar(f, -1L));
                right.emplace_back(n, Scalar(f, -1L));
            }
            eqs.push_back(std::move(left));
            eqs.push_back(std::move(right));
        }
    }
    Matrix reduced = kernels::row_space(f, n + 1, eqs);
    Vec u = zero_vec(f, n);
    for (std::size_t r = 0; r < reduced.rows(); ++r) {
        std::size_t pivot = 0;
        while (reduced(r, pivot).is_zero())
            ++pivot;
        if (pivot == n)
            return std::nullopt; // forces t = 0
        u[pivot] = -reduced(r, n);
    }
    return u;
}

} // namespace

Algebra::Algebra(Field f, std::vector<std::string> names, std::vector<SparseRow> table)
    : field_(f), names_(std::move(names)), table_(std::move(table)), cache_(std::make_shared<detail::AlgebraCache>())
{
    const std::size_t n = names_.size();
    if (n == 0)
        throw Error(ErrorKind::DimensionMismatch, "algebra of dimension 0");
    if (table_.size() != n * n)
        throw Error(ErrorKind::DimensionMismatch,
                    "table has " + std::to_string(table_.size()) + " products, expected " + std::to_string(n * n));
    for (auto& row : table_) {
        row = normalize_row(f, std::move(row));
        if (!row.empty() && row.back().first >= n)
            throw Error(ErrorKind::DimensionMismatch, "basis index " + std::to_string(row.back().first) + " out of range");
    }
}

Scalar Algebra::structure_constant(std::size_t i, std::size_t j, std::size_t k) const
{
    const auto& row = product(i, j);
    auto it = std::lower_bound(row.begin(), row.end(), k, [](const auto& e, std::size_t key) { return e.first < key; });
    if (it != row.end() && it->first == k)
        return it->second;
    return Scalar::zero(field_);
}

void Algebra::check_element(std::span<const Scalar> x) const
{
    if (x.size() != dim())
        throw Error(ErrorKind::DimensionMismatch,
                    "element of length " + std::to_string(x.size()) + " in an algebra of dimension " + std::to_string(dim()));
}

Vec Algebra::multiply(std::span<const Scalar> x, std::span<const Scalar> y) const
{
    check_element(x);
    check_element(y);
    Vec out = zero();
    Scalar xy(field_);
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero())
            continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (y[j].is_zero())
                continue;
            xy = x[i] * y[j];
            for (const auto& [k, c] : product(i, j))
                out[k].add_mul(xy, c);
        }
    }
    return out;
}

Matrix Algebra::left_operator(std::span<const Scalar> x) const
{
    check_element(x);
    Matrix m(field_, dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero())
            continue;
        for (std::size_t j = 0; j < dim(); ++j)
            for (const auto& [k, c] : product(i, j))
                m(k, j).add_mul(x[i], c);
    }
    return m;
}

Matrix Algebra::right_operator(std::span<const Scalar> x) const
{
    check_element(x);
    Matrix m(field_, dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero())
            continue;
        for (std::size_t j = 0; j < dim(); ++j)
            for (const auto& [k, c] : product(j, i))
                m(k, j).add_mul(x[i], c);
    }
    return m;
}

const MultOperators& Algebra::mult_operators() const
{
    std::call_once(cache_->ops_once, [this] {
        auto& ops = cache_->ops;
        for (std::size_t i = 0; i < dim(); ++i) {
            Vec b = basis_vector(i);
            ops.left.push_back(left_operator(b));
            ops.right.push_back(right_operator(b));
        }
        ops.identity = Matrix::identity(field_, dim());
    });
    return cache_->ops;
}

const AlgebraProperties& Algebra::properties() const
{
    std::call_once(cache_->props_once, [this] {
        auto& p = cache_->props;
        const std::size_t n = dim();
        std::vector<SparseRow> products;
        for (const auto& row : table_)
            if (!row.empty())
                products.push_back(row);
        p.product_span = Subspace::from_reduced(kernels::row_space(field_, n, products));
        p.perfect = p.product_span.dim() == n;

        p.commutative = true;
        for (std::size_t i = 0; i < n && p.commutative; ++i)
            for (std::size_t j = i + 1; j < n && p.commutative; ++j)
                p.commutative = product(i, j) == product(j, i);

        p.associative = true;
        for (std::size_t i = 0; i < n && p.associative; ++i) {
            for (std::size_t j = 0; j < n && p.associative; ++j) {
                Vec ij = zero();
                for (const auto& [k, c] : product(i, j))
                    ij[k] = c;
                for (std::size_t k = 0; k < n && p.associative; ++k) {
                    Vec jk = zero();
                    for (const auto& [l, c] : product(j, k))
                        jk[l] = c;
                    p.associative = multiply(ij, basis_vector(k)) == multiply(basis_vector(i), jk);
                }
            }
        }
        p.unit = solve_unit(*this);
    });
    return cache_->props;
}

const Vec& Algebra::unit() const
{
    const auto& p = properties();
    if (!p.unit)
        throw Error(ErrorKind::NotUnital, "algebra has no unit");
    return *p.unit;
}

void Algebra::require_commutative_associative_unital(const std::string& role) const
{
    if (!is_commutative())
        throw Error(ErrorKind::NotCommutative, role + " is not commutative");
    if (!is_associative())
        throw Error(ErrorKind::NotAssociative, role + " is not associative");
    if (!is_unital())
        throw Error(ErrorKind::NotUnital, role + " is not unital");
}

bool operator==(const Algebra& a, const Algebra& b)
{
    return a.field_ == b.field_ && a.names_ == b.names_ && a.table_ == b.table_;
}

Algebra make_algebra(Field f, std::vector<std::string> names,
                     const std::vector<std::vector<std::vector<Scalar>>>& table)
{
    const std::size_t n = names.size();
    if (table.size() != n)
        throw Error(ErrorKind::DimensionMismatch, "table must have one block per basis element");
    std::vector<SparseRow> rows(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n)
            throw Error(ErrorKind::DimensionMismatch, "table row " + std::to_string(i) + " has wrong length");
        for (std::size_t j = 0; j < n; ++j) {
            if (table[i][j].size() != n)
                throw Error(ErrorKind::DimensionMismatch, "product vector has wrong length");
            for (std::size_t k = 0; k < n; ++k)
                if (!table[i][j][k].is_zero())
                    rows[i * n + j].emplace_back(k, table[i][j][k]);
        }
    }
    return Algebra(f, std::move(names), std::move(rows));
}

Algebra tensor_product(const Algebra& a, const Algebra& s)
{
    if (a.field() != s.field())
        throw Error(ErrorKind::FieldMismatch, "tensor product of algebras over different fields");
    const std::size_t na = a.dim(), ns = s.dim(), n = na * ns;
    std::vector<std::string> names;
    for (const auto& x : a.basis_names())
        for (const auto& y : s.basis_names())
            names.push_back(x + "⊗" + y);
    std::vector<SparseRow> table(n * n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t k = 0; k < na; ++k) {
            const auto& ak = a.product(i, k);
            if (ak.empty())
                continue;
            for (std::size_t j = 0; j < ns; ++j)
                for (std::size_t l = 0; l < ns; ++l) {
                    const auto& sl = s.product(j, l);
                    auto& row = table[(i * ns + j) * n + (k * ns + l)];
                    for (const auto& [p, c] : ak)
                        for (const auto& [q, d] : sl)
                            row.emplace_back(p * ns + q, c * d);
                }
        }
    return Algebra(a.field(), std::move(names), std::move(table));
}

Subalgebra subalgebra_on(const Algebra& a, const Subspace& u)
{
    if (u.ambient_dim() != a.dim())
        throw Error(ErrorKind::DimensionMismatch, "subspace lives in the wrong ambient space");
    if (u.dim() == 0)
        throw Error(ErrorKind::DimensionMismatch, "subalgebra on the zero subspace");
    const std::size_t k = u.dim();
    const auto basis = u.basis_vectors();
    std::vector<SparseRow> table(k * k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t s = 0; s < k; ++s) {
            auto coords = u.coordinates(a.multiply(basis[r], basis[s]));
            if (!coords)
                throw Error(ErrorKind::NotClosed, "subspace is not closed under the product");
            for (std::size_t t = 0; t < k; ++t)
                if (!(*coords)[t].is_zero())
                    table[r * k + s].emplace_back(t, (*coords)[t]);
        }
    std::vector<std::string> names;
    for (std::size_t r = 0; r < k; ++r) {
        std::size_t support = 0, last = 0;
        for (std::size_t i = 0; i < a.dim(); ++i)
            if (!basis[r][i].is_zero()) {
                ++support;
                last = i;
            }
        if (support == 1 && basis[r][last].is_one())
            names.push_back(a.basis_names()[last]);
        else
            names.push_back("v" + std::to_string(r));
    }
    return {Algebra(a.field(), std::move(names), std::move(table)), Matrix::from_columns(a.field(), a.dim(), basis)};
}

Vec invert_element(const Algebra& s, std::span<const Scalar> u)
{
    s.require_commutative_associative_unital("S");
    Matrix lu = s.left_operator(u);
    try {
        return inverse(lu).apply(s.unit());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SingularElement)
            throw Error(ErrorKind::SingularElement, "element is not invertible");
        throw;
    }
}

Vec element_power(const Algebra& s, std::span<const Scalar> u, long e)
{
    Vec base = e < 0 ? invert_element(s, u) : Vec(u.begin(), u.end());
    Vec out = s.unit();
    for (long k = 0; k < (e < 0 ? -e : e); ++k)
        out = s.multiply(out, base);
    return out;
}

} // namespace dercent
