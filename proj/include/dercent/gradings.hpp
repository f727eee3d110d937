#pragma once

#include <optional>
#include <vector>

#include "dercent/algebra.hpp"
#include "dercent/invariants.hpp"

namespace dercent {

/// Validated automorphism: sigma(xy) = sigma(x) sigma(y) and sigma^m = id.
/// The period m is the declared exponent, not the minimal order.
struct Automorphism {
    Algebra algebra;
    Matrix matrix; // column convention
    int m = 1;
};

Automorphism check_automorphism(const Algebra& a, const Matrix& matrix, int m);

/// Representative of i mod m in {0, ..., m - 1}.
long eps(long i, long m);

/// The primitive m-th root used for eigenvalue gradings; FieldMismatch when absent.
Scalar grading_root(Field f, int m);

/// Components indexed by residues 0..m-1. Components of endomorphism
/// gradings are subspaces of flattened matrices.
struct Grading {
    int m = 1;
    std::vector<Subspace> components;

    const Subspace& operator[](long i) const { return components[static_cast<std::size_t>(eps(i, m))]; }
    std::vector<std::size_t> dims() const;
    /// Degree of v, or nullopt when v is not homogeneous. Zero has degree 0.
    std::optional<int> degree_of(std::span<const Scalar> v) const;
    /// Coordinates of v split into its homogeneous parts.
    std::vector<Vec> decompose(std::span<const Scalar> v) const;
};

Grading grading_from_automorphism(const Automorphism& sigma);

/// True iff the components form a direct sum of the whole space and A_i A_j lies in A_{i+j}.
bool is_valid_algebra_grading(const Algebra& a, const Grading& g);

/// Grading of E induced by T -> sigma T sigma^-1; NotInvariant when E is not stable.
Grading induced_endo_grading(const Automorphism& sigma, const EndoSpace& e);

Automorphism tensor_automorphism(const Automorphism& s1, const Automorphism& s2);

Subalgebra fixed_point_algebra(const Automorphism& sigma);

struct GradedUnitData {
    int q = 1;
    Vec u;
    Vec u_inverse;
    Vec u_prime; // u^eps(q^-1), lies in degree 1
    Vec u_prime_inverse;
};

/// Searches S_q for a unit: basis vectors first, then 64 seeded small
/// combinations. An explicit u overrides the search and is validated.
GradedUnitData find_graded_unit(const Algebra& s, const Grading& g, int q,
                                const std::optional<Vec>& explicit_u = std::nullopt);

/// Inverse of q in Z_m, or nullopt when gcd(q, m) != 1.
std::optional<long> inverse_mod(long q, long m);

} // namespace dercent
