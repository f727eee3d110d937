#include "dercent/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dercent/error.hpp"

namespace dercent::kernels {

namespace {

constexpr std::size_t multiply_threshold = 24;  // output rows
constexpr std::size_t row_space_threshold = 512; // equations

void check_product(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows())
        throw Error(ErrorKind::DimensionMismatch,
                    "matrix product " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " * " +
                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    if (a.field() != b.field())
        throw Error(ErrorKind::FieldMismatch, "matrix product");
}

void multiply_row(const Matrix& a, const Matrix& b, Matrix& out, std::size_t r)
{
    for (std::size_t k = 0; k < a.cols(); ++k) {
        const Scalar& x = a(r, k);
        if (x.is_zero())
            continue;
        for (std::size_t c = 0; c < b.cols(); ++c) {
            const Scalar& y = b(k, c);
            if (!y.is_zero())
                out(r, c).add_mul(x, y);
        }
    }
}

} // namespace

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// ---------------------------------------------------------------------------

namespace serial {

Matrix multiply(const Matrix& a, const Matrix& b)
{
    check_product(a, b);
    Matrix out(a.field(), a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        multiply_row(a, b, out, r);
    return out;
}

Matrix row_space(Field f, std::size_t cols, std::span<const SparseRow> rows)
{
    EchelonBuilder builder(f, cols);
    for (const auto& row : rows) {
        builder.add(row);
        if (builder.rank() == cols)
            break;
    }
    return builder.reduced();
}

std::vector<SparseRow> assemble(std::size_t blocks, const BlockGenerator& gen)
{
    std::vector<SparseRow> out;
    for (std::size_t b = 0; b < blocks; ++b)
        gen(b, out);
    return out;
}

} // namespace serial

// ---------------------------------------------------------------------------

namespace omp {

Matrix multiply(const Matrix& a, const Matrix& b)
{
    check_product(a, b);
    Matrix out(a.field(), a.rows(), b.cols());
    const auto n = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < n; ++r)
        multiply_row(a, b, out, static_cast<std::size_t>(r));
    return out;
}

Matrix row_space(Field f, std::size_t cols, std::span<const SparseRow> rows)
{
    const std::size_t chunks = std::max<std::size_t>(1, static_cast<std::size_t>(max_threads()));
    const std::size_t per = (rows.size() + chunks - 1) / chunks;
    std::vector<std::vector<SparseRow>> partial(chunks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(chunks); ++t) {
        const auto idx = static_cast<std::size_t>(t);
        const std::size_t lo = std::min(rows.size(), idx * per);
        const std::size_t hi = std::min(rows.size(), lo + per);
        EchelonBuilder local(f, cols);
        for (std::size_t r = lo; r < hi && local.rank() < cols; ++r)
            local.add(rows[r]);
        partial[idx] = local.pivot_rows();
    }
    EchelonBuilder merged(f, cols);
    for (const auto& chunk : partial)
        for (const auto& row : chunk)
            merged.add(row);
    return merged.reduced();
}

std::vector<SparseRow> assemble(std::size_t blocks, const BlockGenerator& gen)
{
    std::vector<std::vector<SparseRow>> per_block(blocks);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b)
        gen(static_cast<std::size_t>(b), per_block[static_cast<std::size_t>(b)]);
    std::vector<SparseRow> out;
    for (auto& block : per_block)
        std::move(block.begin(), block.end(), std::back_inserter(out));
    return out;
}

} // namespace omp

// ---------------------------------------------------------------------------

Matrix multiply(const Matrix& a, const Matrix& b)
{
    if (max_threads() > 1 && a.rows() >= multiply_threshold)
        return omp::multiply(a, b);
    return serial::multiply(a, b);
}

Matrix row_space(Field f, std::size_t cols, std::span<const SparseRow> rows)
{
    if (max_threads() > 1 && rows.size() >= row_space_threshold)
        return omp::row_space(f, cols, rows);
    return serial::row_space(f, cols, rows);
}

Matrix row_space_dense(const Matrix& m)
{
    std::vector<SparseRow> rows(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m(r, c).is_zero())
                rows[r].emplace_back(c, m(r, c));
    return row_space(m.field(), m.cols(), rows);
}

std::vector<SparseRow> assemble(std::size_t blocks, const BlockGenerator& gen)
{
    if (max_threads() > 1 && blocks > 1)
        return omp::assemble(blocks, gen);
    return serial::assemble(blocks, gen);
}

Subspace solve_homogeneous(Field f, std::size_t unknowns, std::span<const SparseRow> equations)
{
    return kernel_of_reduced(row_space(f, unknowns, equations), unknowns);
}

} // namespace dercent::kernels
