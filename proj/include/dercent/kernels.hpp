#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dercent/exactla.hpp"

/// Hot loops of the solvers. Each kernel exists twice: `serial` is the
/// reference implementation kept for testing, `omp` is the OpenMP version.
/// The unqualified entry points dispatch to `omp` above a size threshold.
namespace dercent::kernels {

/// Generates the equations of block b into the output vector.
using BlockGenerator = std::function<void(std::size_t block, std::vector<SparseRow>& out)>;

namespace serial {

Matrix multiply(const Matrix& a, const Matrix& b);
/// Reduced echelon basis of the span of the rows (rank x cols).
Matrix row_space(Field f, std::size_t cols, std::span<const SparseRow> rows);
std::vector<SparseRow> assemble(std::size_t blocks, const BlockGenerator& gen);

} // namespace serial

namespace omp {

Matrix multiply(const Matrix& a, const Matrix& b);
/// Chunks are eliminated independently per thread, then merged.
Matrix row_space(Field f, std::size_t cols, std::span<const SparseRow> rows);
std::vector<SparseRow> assemble(std::size_t blocks, const BlockGenerator& gen);

} // namespace omp

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix row_space(Field f, std::size_t cols, std::span<const SparseRow> rows);
Matrix row_space_dense(const Matrix& m);
std::vector<SparseRow> assemble(std::size_t blocks, const BlockGenerator& gen);

/// Null space of the homogeneous system given by `equations`.
Subspace solve_homogeneous(Field f, std::size_t unknowns, std::span<const SparseRow> equations);

int max_threads();

} // namespace dercent::kernels
