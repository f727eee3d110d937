#pragma once

#include <string>
#include <vector>

#include "dercent/algebra.hpp"

namespace dercent {

enum class EndoTag {
    derivations,
    centroid,
    differential_centroid,
    s_module_derivations,
    vanishing_on_A1,
    relative_derivations,
    commutant,
    other,
};

std::string to_string(EndoTag tag);

/// A space of linear maps F^cols -> F^rows stored as a subspace of the
/// row-major flattened matrices. Endomorphism spaces have rows == cols.
struct EndoSpace {
    EndoTag tag = EndoTag::other;
    std::size_t rows = 0;
    std::size_t cols = 0;
    Subspace space;

    std::size_t dim() const { return space.dim(); }
    Matrix element(std::size_t i) const;
    std::vector<Matrix> matrices() const;
    bool contains(const Matrix& m) const;
    /// Coordinates of m with respect to the basis, or nullopt.
    std::optional<Vec> coordinates(const Matrix& m) const;
};

EndoSpace make_endo_space(EndoTag tag, std::size_t rows, std::size_t cols, const std::vector<Matrix>& spanning);

/// Equations of the derivation condition on End(A), unknown D(k, l) at k * n + l.
std::vector<SparseRow> derivation_equations(const Algebra& a);
/// Equations T M - M T = 0 for every M, unknowns as above.
std::vector<SparseRow> commutant_equations(std::size_t n, const std::vector<Matrix>& mats);
/// Equations T v = 0 for every v.
std::vector<SparseRow> annihilator_equations(std::size_t n, const std::vector<Vec>& vectors);

bool is_derivation(const Algebra& a, const Matrix& d);

EndoSpace derivation_space(const Algebra& a);
/// Linear maps delta: B -> A with delta(x y) = delta(x) y + x delta(y) on B,
/// as dim(A) x dim(B) matrices in the canonical basis of B.
EndoSpace relative_derivation_space(const Algebra& a, const Subspace& b);
EndoSpace centroid(const Algebra& a);
EndoSpace differential_centroid(const Algebra& a);
/// Endomorphisms commuting with every matrix in `mats`.
EndoSpace commutant(Field f, std::size_t n, const std::vector<Matrix>& mats);

/// Matrices of 1 (x) L_{s_j} on A (x) S.
std::vector<Matrix> s_action_operators(const Algebra& a, const Algebra& s);
/// Embedding of A (x) 1 in A (x) S: vectors e_i (x) 1.
std::vector<Vec> a_tensor_one(const Algebra& a, const Algebra& s);

EndoSpace s_module_derivations(const Algebra& a, const Algebra& s);
EndoSpace vanishing_on_A1_derivations(const Algebra& a, const Algebra& s);

struct PsiReport {
    Matrix psi;                 // columns: flattened gamma_i (x) L_{s_j}, index i * dim S + j
    std::size_t domain_dim = 0; // dim C(A) * dim S
    std::size_t rank = 0;
    std::size_t centroid_dim = 0; // dim C(A (x) S), computed independently
    bool injective = false;
    bool image_in_centroid = false;
    bool surjective = false;
    bool isomorphism() const { return injective && image_in_centroid && surjective; }
};

/// psi: C(A) (x) S -> C(A (x) S), gamma (x) s -> gamma (x) L_s.
/// Throws NotPerfect when A is not perfect and the usual errors on S.
PsiReport psi_map(const Algebra& a, const Algebra& s);

/// C(A) as an associative algebra under composition, on the given centroid basis.
Algebra centroid_algebra(const EndoSpace& c);

} // namespace dercent
