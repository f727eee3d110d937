#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dercent/exactla.hpp"

namespace dercent {

struct AlgebraProperties {
    bool perfect = false;
    std::optional<Vec> unit;
    bool commutative = false;
    bool associative = false;
    Subspace product_span;

    bool unital() const { return unit.has_value(); }
};

struct MultOperators {
    std::vector<Matrix> left;  // left[i] = L_{b_i}
    std::vector<Matrix> right; // right[i] = R_{b_i}
    Matrix identity;
};

namespace detail {
struct AlgebraCache;
}

/// Finite-dimensional algebra given by structure constants:
/// b_i * b_j = sum_k c[i][j][k] b_k. Elements are coordinate vectors.
class Algebra {
public:
    Algebra() = default;
    /// table[i * dim + j] holds the nonzero components of b_i * b_j.
    Algebra(Field f, std::vector<std::string> names, std::vector<SparseRow> table);

    Field field() const noexcept { return field_; }
    std::size_t dim() const noexcept { return names_.size(); }
    const std::vector<std::string>& basis_names() const noexcept { return names_; }

    /// Sorted nonzero components of b_i * b_j.
    const SparseRow& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
    Scalar structure_constant(std::size_t i, std::size_t j, std::size_t k) const;

    Vec basis_vector(std::size_t i) const { return unit_vec(field_, dim(), i); }
    Vec zero() const { return zero_vec(field_, dim()); }
    Vec multiply(std::span<const Scalar> x, std::span<const Scalar> y) const;

    /// Matrix of L_x (column j is x * b_j) and of R_x.
    Matrix left_operator(std::span<const Scalar> x) const;
    Matrix right_operator(std::span<const Scalar> x) const;
    const MultOperators& mult_operators() const;

    const AlgebraProperties& properties() const;
    bool is_perfect() const { return properties().perfect; }
    bool is_commutative() const { return properties().commutative; }
    bool is_associative() const { return properties().associative; }
    bool is_unital() const { return properties().unital(); }
    /// Throws NotUnital when there is no unit.
    const Vec& unit() const;

    /// Throws NotCommutative / NotAssociative / NotUnital, naming `role`.
    void require_commutative_associative_unital(const std::string& role) const;

    friend bool operator==(const Algebra& a, const Algebra& b);

private:
    void check_element(std::span<const Scalar> x) const;

    Field field_;
    std::vector<std::string> names_;
    std::vector<SparseRow> table_;
    std::shared_ptr<detail::AlgebraCache> cache_;
};

/// Checked constructor: dense table[i][j][k] = c_ij^k.
Algebra make_algebra(Field f, std::vector<std::string> names,
                     const std::vector<std::vector<std::vector<Scalar>>>& table);

/// Basis (i, j) -> i * dim(S) + j, named "a⊗s".
Algebra tensor_product(const Algebra& a, const Algebra& s);

struct Subalgebra {
    Algebra algebra;
    Matrix embedding; // dim(A) x dim(U), column r = r-th basis vector of U
};

/// Restricts the product of `a` to the canonical basis of U; NotClosed when U * U is not inside U.
Subalgebra subalgebra_on(const Algebra& a, const Subspace& u);

/// Inverse in a commutative associative unital algebra; SingularElement when none exists.
Vec invert_element(const Algebra& s, std::span<const Scalar> u);

/// u^e for any integer e, through invert_element for negative e.
Vec element_power(const Algebra& s, std::span<const Scalar> u, long e);

} // namespace dercent
