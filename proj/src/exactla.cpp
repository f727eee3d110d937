#include "dercent/exactla.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "dercent/error.hpp"
#include "dercent/kernels.hpp"

namespace dercent {

Vec zero_vec(Field f, std::size_t n)
{
    return Vec(n, Scalar::zero(f));
}

Vec unit_vec(Field f, std::size_t n, std::size_t i)
{
    Vec v = zero_vec(f, n);
    v.at(i) = Scalar::one(f);
    return v;
}

bool is_zero(std::span<const Scalar> v)
{
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec add(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw Error(ErrorKind::DimensionMismatch, "vector add");
    Vec out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += b[i];
    return out;
}

Vec sub(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw Error(ErrorKind::DimensionMismatch, "vector sub");
    Vec out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] -= b[i];
    return out;
}

Vec scale(const Scalar& c, const Vec& v)
{
    Vec out = v;
    for (auto& x : out)
        x *= c;
    return out;
}

void axpy(Vec& y, const Scalar& a, const Vec& x)
{
    if (y.size() != x.size())
        throw Error(ErrorKind::DimensionMismatch, "axpy");
    if (a.is_zero())
        return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!x[i].is_zero())
            y[i].add_mul(a, x[i]);
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f))
{
}

Matrix Matrix::identity(Field f, std::size_t n)
{
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = Scalar::one(f);
    return m;
}

Matrix Matrix::from_rows(Field f, std::size_t cols, const std::vector<Vec>& rows)
{
    Matrix m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw Error(ErrorKind::DimensionMismatch, "row length");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(Field f, std::size_t rows, const std::vector<Vec>& columns)
{
    Matrix m(f, rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows)
            throw Error(ErrorKind::DimensionMismatch, "column length");
        for (std::size_t r = 0; r < rows; ++r)
            m(r, c) = columns[c][r];
    }
    return m;
}

Matrix Matrix::unflatten(Field f, std::size_t rows, std::size_t cols, std::span<const Scalar> entries)
{
    if (entries.size() != rows * cols)
        throw Error(ErrorKind::DimensionMismatch, "unflatten");
    Matrix m(f, rows, cols);
    std::copy(entries.begin(), entries.end(), m.data_.begin());
    return m;
}

Vec Matrix::row(std::size_t r) const
{
    auto s = row_span(r);
    return Vec(s.begin(), s.end());
}

Vec Matrix::column(std::size_t c) const
{
    Vec v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v.push_back((*this)(r, c));
    return v;
}

Matrix Matrix::transpose() const
{
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Vec Matrix::apply(std::span<const Scalar> v) const
{
    if (v.size() != cols_)
        throw Error(ErrorKind::DimensionMismatch, "matrix-vector size");
    Vec out = zero_vec(field_, rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        if (v[c].is_zero())
            continue;
        for (std::size_t r = 0; r < rows_; ++r) {
            const Scalar& a = (*this)(r, c);
            if (!a.is_zero())
                out[r].add_mul(a, v[c]);
        }
    }
    return out;
}

bool Matrix::is_zero() const
{
    return dercent::is_zero(data_);
}

bool Matrix::is_identity() const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (r == c ? !(*this)(r, c).is_one() : !(*this)(r, c).is_zero())
                return false;
    return true;
}

Matrix& Matrix::operator+=(const Matrix& rhs)
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw Error(ErrorKind::DimensionMismatch, "matrix add");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs)
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw Error(ErrorKind::DimensionMismatch, "matrix sub");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= rhs.data_[i];
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    return kernels::multiply(a, b);
}

Matrix operator*(const Scalar& c, Matrix a)
{
    for (auto& x : a.data_)
        x *= c;
    return a;
}

bool operator==(const Matrix& a, const Matrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix Matrix::pow(unsigned long e) const
{
    if (rows_ != cols_)
        throw Error(ErrorKind::DimensionMismatch, "power of non-square matrix");
    Matrix result = identity(field_, rows_);
    Matrix base = *this;
    while (e > 0) {
        if (e & 1UL)
            result = result * base;
        e >>= 1U;
        if (e > 0)
            base = base * base;
    }
    return result;
}

Matrix kron(const Matrix& a, const Matrix& b)
{
    if (a.field() != b.field())
        throw Error(ErrorKind::FieldMismatch, "kron");
    Matrix out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& x = a(i, j);
            if (x.is_zero())
                continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (!b(k, l).is_zero())
                        out(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
        }
    return out;
}

Matrix commutator(const Matrix& a, const Matrix& b)
{
    return a * b - b * a;
}

// ---------------------------------------------------------------------------
// elimination

EchelonBuilder::EchelonBuilder(Field f, std::size_t cols)
    : field_(f), cols_(cols), pivot_row_(cols, -1), acc_(cols, Scalar::zero(f)), mark_(cols, 0)
{
}

bool EchelonBuilder::add_dense(std::span<const Scalar> row)
{
    if (row.size() != cols_)
        throw Error(ErrorKind::DimensionMismatch, "row length");
    SparseRow sparse;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!row[c].is_zero())
            sparse.emplace_back(c, row[c]);
    return add(sparse);
}

bool EchelonBuilder::add(const SparseRow& row)
{
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> queue;
    std::vector<std::size_t> touched;
    auto touch = [&](std::size_t c) {
        if (!mark_[c]) {
            mark_[c] = 1;
            touched.push_back(c);
            queue.push(c);
        }
    };
    for (const auto& [c, v] : row) {
        if (c >= cols_)
            throw Error(ErrorKind::DimensionMismatch, "column index out of range");
        if (v.field() != field_)
            throw Error(ErrorKind::FieldMismatch, "equation over a different field");
        acc_[c] += v;
        touch(c);
    }

    bool independent = false;
    while (!queue.empty()) {
        std::size_t c = queue.top();
        queue.pop();
        if (acc_[c].is_zero())
            continue;
        std::ptrdiff_t pr = pivot_row_[c];
        if (pr >= 0) {
            Scalar factor = acc_[c];
            for (const auto& [col, val] : rows_[static_cast<std::size_t>(pr)]) {
                acc_[col].sub_mul(factor, val);
                touch(col);
            }
            continue;
        }
        // New pivot at c: every remaining nonzero lies at a column >= c.
        Scalar inv = acc_[c].inverse();
        SparseRow fresh;
        std::sort(touched.begin(), touched.end());
        for (std::size_t col : touched)
            if (col >= c && !acc_[col].is_zero())
                fresh.emplace_back(col, acc_[col] * inv);
        pivot_row_[c] = static_cast<std::ptrdiff_t>(rows_.size());
        rows_.push_back(std::move(fresh));
        independent = true;
        break;
    }
    for (std::size_t col : touched) {
        acc_[col] = Scalar::zero(field_);
        mark_[col] = 0;
    }
    return independent;
}

Matrix EchelonBuilder::reduced() const
{
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < cols_; ++c)
        if (pivot_row_[c] >= 0)
            order.push_back(c);
    Matrix out(field_, order.size(), cols_);
    for (std::size_t r = 0; r < order.size(); ++r)
        for (const auto& [col, val] : rows_[static_cast<std::size_t>(pivot_row_[order[r]])])
            out(r, col) = val;
    // Back substitution, last pivot first.
    for (std::size_t k = order.size(); k-- > 0;) {
        std::size_t pc = order[k];
        for (std::size_t r = 0; r < k; ++r) {
            if (out(r, pc).is_zero())
                continue;
            Scalar factor = out(r, pc);
            for (std::size_t c = pc; c < cols_; ++c)
                if (!out(k, c).is_zero())
                    out(r, c).sub_mul(factor, out(k, c));
        }
    }
    return out;
}

RrefResult rref(const Matrix& m)
{
    EchelonBuilder builder(m.field(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        builder.add_dense(m.row_span(r));
    Matrix red = builder.reduced();
    RrefResult result{Matrix(m.field(), m.rows(), m.cols()), red.rows(), {}};
    for (std::size_t r = 0; r < red.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            result.reduced(r, c) = red(r, c);
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!red(r, c).is_zero()) {
                result.pivots.push_back(c);
                break;
            }
    }
    return result;
}

std::size_t rank(const Matrix& m)
{
    EchelonBuilder builder(m.field(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        builder.add_dense(m.row_span(r));
    return builder.rank();
}

Matrix inverse(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(m.field(), n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            aug(r, c) = m(r, c);
        aug(r, n + r) = Scalar::one(m.field());
    }
    auto red = rref(aug);
    if (red.rank < n || red.pivots[n - 1] != n - 1)
        throw Error(ErrorKind::SingularElement, "matrix is singular");
    Matrix out(m.field(), n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            out(r, c) = red.reduced(r, n + c);
    return out;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(Field f, std::size_t ambient_dim) : ambient_(ambient_dim), basis_(f, 0, ambient_dim) {}

Subspace Subspace::full(Field f, std::size_t n)
{
    return from_reduced(Matrix::identity(f, n));
}

Subspace Subspace::span(Field f, std::size_t ambient_dim, const std::vector<Vec>& vectors)
{
    EchelonBuilder builder(f, ambient_dim);
    for (const auto& v : vectors)
        builder.add_dense(v);
    return from_reduced(builder.reduced());
}

Subspace Subspace::row_space(const Matrix& m)
{
    return from_reduced(kernels::row_space_dense(m));
}

Subspace Subspace::from_reduced(Matrix basis)
{
    Subspace s;
    s.ambient_ = basis.cols();
    for (std::size_t r = 0; r < basis.rows(); ++r) {
        std::size_t c = 0;
        while (c < basis.cols() && basis(r, c).is_zero())
            ++c;
        if (c == basis.cols())
            throw Error(ErrorKind::Internal, "zero row in subspace basis");
        s.pivots_.push_back(c);
    }
    s.basis_ = std::move(basis);
    return s;
}

std::vector<Vec> Subspace::basis_vectors() const
{
    std::vector<Vec> out;
    out.reserve(dim());
    for (std::size_t r = 0; r < dim(); ++r)
        out.push_back(basis_.row(r));
    return out;
}

std::optional<Vec> Subspace::coordinates(std::span<const Scalar> v) const
{
    if (v.size() != ambient_)
        throw Error(ErrorKind::DimensionMismatch, "vector length " + std::to_string(v.size()) +
                                                      " vs ambient " + std::to_string(ambient_));
    Vec residual(v.begin(), v.end());
    Vec coords;
    coords.reserve(dim());
    for (std::size_t r = 0; r < dim(); ++r) {
        Scalar c = residual[pivots_[r]];
        if (!c.is_zero()) {
            auto row = basis_.row_span(r);
            for (std::size_t k = pivots_[r]; k < ambient_; ++k)
                if (!row[k].is_zero())
                    residual[k].sub_mul(c, row[k]);
        }
        coords.push_back(std::move(c));
    }
    if (!dercent::is_zero(residual))
        return std::nullopt;
    return coords;
}

bool Subspace::contains(const Subspace& other) const
{
    check_compatible(other);
    for (std::size_t r = 0; r < other.dim(); ++r)
        if (!contains(other.basis_.row_span(r)))
            return false;
    return true;
}

void Subspace::check_compatible(const Subspace& other) const
{
    if (ambient_ != other.ambient_)
        throw Error(ErrorKind::DimensionMismatch, "subspaces of different ambient dimension");
    if (field() != other.field())
        throw Error(ErrorKind::FieldMismatch, "subspaces over different fields");
}

Subspace Subspace::sum(const Subspace& other) const
{
    check_compatible(other);
    EchelonBuilder builder(field(), ambient_);
    for (std::size_t r = 0; r < dim(); ++r)
        builder.add_dense(basis_.row_span(r));
    for (std::size_t r = 0; r < other.dim(); ++r)
        builder.add_dense(other.basis_.row_span(r));
    return from_reduced(builder.reduced());
}

Subspace Subspace::intersect(const Subspace& other) const
{
    check_compatible(other);
    // Zassenhaus: rows [u | u] and [v | 0]; rows of the echelon form whose
    // left half vanishes span the intersection in their right half.
    const std::size_t n = ambient_;
    EchelonBuilder builder(field(), 2 * n);
    for (std::size_t r = 0; r < dim(); ++r) {
        SparseRow row;
        for (std::size_t c = 0; c < n; ++c)
            if (!basis_(r, c).is_zero()) {
                row.emplace_back(c, basis_(r, c));
                row.emplace_back(n + c, basis_(r, c));
            }
        builder.add(row);
    }
    for (std::size_t r = 0; r < other.dim(); ++r) {
        SparseRow row;
        for (std::size_t c = 0; c < n; ++c)
            if (!other.basis_(r, c).is_zero())
                row.emplace_back(c, other.basis_(r, c));
        builder.add(row);
    }
    Matrix red = builder.reduced();
    std::vector<Vec> vectors;
    for (std::size_t r = 0; r < red.rows(); ++r) {
        auto row = red.row_span(r);
        if (dercent::is_zero(row.subspan(0, n)))
            vectors.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(n), row.end());
    }
    return span(field(), n, vectors);
}

bool operator==(const Subspace& a, const Subspace& b)
{
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
}

Subspace kernel_of_reduced(const Matrix& reduced, std::size_t cols)
{
    const Field f = reduced.field();
    std::vector<std::ptrdiff_t> pivot_of_col(cols, -1);
    for (std::size_t r = 0; r < reduced.rows(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (!reduced(r, c).is_zero()) {
                pivot_of_col[c] = static_cast<std::ptrdiff_t>(r);
                break;
            }
    std::vector<Vec> vectors;
    for (std::size_t free = 0; free < cols; ++free) {
        if (pivot_of_col[free] >= 0)
            continue;
        Vec v = zero_vec(f, cols);
        v[free] = Scalar::one(f);
        for (std::size_t c = 0; c < cols; ++c)
            if (pivot_of_col[c] >= 0)
                v[c] = -reduced(static_cast<std::size_t>(pivot_of_col[c]), free);
        vectors.push_back(std::move(v));
    }
    return Subspace::span(f, cols, vectors);
}

Subspace kernel_basis(const Matrix& m)
{
    return kernel_of_reduced(kernels::row_space_dense(m), m.cols());
}

bool is_direct_sum_decomposition(std::span<const Subspace> parts, std::size_t target_dim)
{
    if (parts.empty())
        return target_dim == 0;
    std::size_t total = 0;
    Subspace acc(parts.front().field(), parts.front().ambient_dim());
    for (const auto& p : parts) {
        total += p.dim();
        acc = acc.sum(p);
    }
    return total == acc.dim() && acc.dim() == target_dim;
}

bool is_direct_sum_decomposition_of(const Subspace& u, const Subspace& v, std::size_t target_dim)
{
    const Subspace parts[] = {u, v};
    return is_direct_sum_decomposition(parts, target_dim);
}

} // namespace dercent
