#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dercent/scalars.hpp"

namespace dercent {

using Vec = std::vector<Scalar>;
/// Sparse row: (column, value) pairs; columns need not be sorted or unique.
using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

Vec zero_vec(Field f, std::size_t n);
Vec unit_vec(Field f, std::size_t n, std::size_t i);
bool is_zero(std::span<const Scalar> v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& c, const Vec& v);
void axpy(Vec& y, const Scalar& a, const Vec& x); // y += a x

/// Dense row-major matrix over a single field.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, std::size_t rows, std::size_t cols);

    static Matrix identity(Field f, std::size_t n);
    static Matrix from_rows(Field f, std::size_t cols, const std::vector<Vec>& rows);
    static Matrix from_columns(Field f, std::size_t rows, const std::vector<Vec>& columns);
    /// Inverse of flatten(): row-major entries.
    static Matrix unflatten(Field f, std::size_t rows, std::size_t cols, std::span<const Scalar> entries);

    Field field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Scalar> row_span(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vec row(std::size_t r) const;
    Vec column(std::size_t c) const;
    const Vec& flatten() const noexcept { return data_; }

    Matrix transpose() const;
    Vec apply(std::span<const Scalar> v) const;
    bool is_zero() const;
    bool is_identity() const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Scalar& c, Matrix a);
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix pow(unsigned long e) const;

private:
    Field field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vec data_;
};

/// Kronecker product; with the tensor index convention (i, j) -> i * dim(b) + j
/// this is the matrix of a (x) b on the tensor product.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);

struct RrefResult {
    Matrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form, leftmost pivots, zero rows at the bottom.
RrefResult rref(const Matrix& m);

/// Incremental sparse Gaussian elimination. Rows are reduced against the
/// pivots seen so far and kept only when independent, so a system with
/// many redundant equations never grows past its rank.
class EchelonBuilder {
public:
    EchelonBuilder(Field f, std::size_t cols);

    /// Returns true when the row was independent of the rows already added.
    bool add(const SparseRow& row);
    bool add_dense(std::span<const Scalar> row);

    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    Field field() const noexcept { return field_; }

    /// Canonical reduced echelon basis of the row space (rank x cols).
    Matrix reduced() const;

    const std::vector<SparseRow>& pivot_rows() const noexcept { return rows_; }

private:
    Field field_;
    std::size_t cols_;
    std::vector<SparseRow> rows_;           // each sorted, leading entry 1 at its pivot
    std::vector<std::ptrdiff_t> pivot_row_; // column -> row index or -1
    Vec acc_;
    std::vector<char> mark_;
};

/// Linear subspace of F^n held by its canonical reduced echelon basis, so
/// equality of subspaces is equality of bases.
class Subspace {
public:
    Subspace() = default;
    Subspace(Field f, std::size_t ambient_dim);

    static Subspace full(Field f, std::size_t n);
    static Subspace span(Field f, std::size_t ambient_dim, const std::vector<Vec>& vectors);
    static Subspace row_space(const Matrix& m);
    /// Caller guarantees `basis` is already reduced echelon with no zero rows.
    static Subspace from_reduced(Matrix basis);

    Field field() const noexcept { return basis_.field(); }
    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const Matrix& basis() const noexcept { return basis_; }
    Vec basis_vector(std::size_t i) const { return basis_.row(i); }
    std::vector<Vec> basis_vectors() const;
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    /// Coordinates with respect to basis(), or nullopt when v is outside.
    std::optional<Vec> coordinates(std::span<const Scalar> v) const;
    bool contains(std::span<const Scalar> v) const { return coordinates(v).has_value(); }
    bool contains(const Subspace& other) const;

    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b);
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    void check_compatible(const Subspace& other) const;

    std::size_t ambient_ = 0;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

/// Null space {v : M v = 0}.
Subspace kernel_basis(const Matrix& m);
/// Null space of the system whose rows are already in reduced echelon form.
Subspace kernel_of_reduced(const Matrix& reduced, std::size_t cols);

/// True iff the parts are independent and together span a space of target_dim.
bool is_direct_sum_decomposition(std::span<const Subspace> parts, std::size_t target_dim);
bool is_direct_sum_decomposition_of(const Subspace& u, const Subspace& v, std::size_t target_dim);

/// Inverse of a square matrix; throws SingularElement when singular.
Matrix inverse(const Matrix& m);
std::size_t rank(const Matrix& m);

} // namespace dercent
