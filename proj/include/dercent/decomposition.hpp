#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dercent/gradings.hpp"
#include "dercent/invariants.hpp"
#include "dercent/report.hpp"

namespace dercent {

/// Integer powers of a fixed unit of S, computed on demand.
class UnitPowers {
public:
    UnitPowers(Algebra s, Vec u);
    const Vec& power(long e) const;
    const Vec& base() const { return u_; }

private:
    Algebra s_;
    Vec u_;
    Vec u_inv_;
    mutable std::mutex mutex_;
    mutable std::map<long, Vec> cache_;
};

struct SetupSpec {
    Algebra a;
    Algebra s;
    Matrix sigma1;
    Matrix sigma2;
    int m = 1;
    int q = 1;
    std::optional<Vec> u; // explicit unit of S_q, searched for when absent
};

/// One element a (x) b of the graded tensor basis: a spans part of A_i, b part of S_c.
struct GradedPair {
    std::size_t a_index = 0; // index into Setup::graded_a
    std::size_t b_index = 0; // index into Setup::graded_s
    Vec vector;              // a (x) b in A (x) S coordinates
};

struct HomogeneousVector {
    int degree = 0;
    Vec v;
};

/// Everything the verifiers need, validated once. Construction throws
/// the hypothesis failure named in the message when a hypothesis fails.
struct Setup {
    Algebra a, s, as;
    Automorphism sigma1, sigma2, sigma;
    int m = 1;
    GradedUnitData unit;
    Grading grading_a, grading_s, grading_as;
    EndoSpace der_a, cent_a, der_s;
    Grading grading_der_a, grading_cent_a, grading_der_s;
    Subalgebra fixed;
    Subspace fixed_space;
    std::vector<HomogeneousVector> graded_a; // homogeneous basis of A
    std::vector<HomogeneousVector> graded_s; // homogeneous basis of S
    std::vector<GradedPair> graded_basis;
    Matrix graded_basis_inverse;
    std::shared_ptr<UnitPowers> u_powers;      // powers of u' (degree 1)
    std::shared_ptr<UnitPowers> u_orig_powers; // powers of u (degree q)
    std::vector<std::pair<std::string, bool>> hypotheses;

    Vec tensor(std::span<const Scalar> a_vec, std::span<const Scalar> s_vec) const;
    /// Right S-action (a (x) s) . t = a (x) s t.
    Vec act(std::span<const Scalar> x, std::span<const Scalar> t) const;
    /// d applied to an element of the fixed-point algebra given in A (x) S coordinates.
    Vec apply_fixed(const Matrix& d, std::span<const Scalar> x) const;
    /// True iff D is a derivation of A (x) S commuting with sigma.
    bool in_degree_zero_derivations(const Matrix& d) const;
};

Setup make_setup(const SetupSpec& spec);

enum class PhiBranch { char0, charp };

// --- split and tensor images ---------------------------------------------

struct SplitResult {
    Matrix d;         // S-linear part
    Matrix remainder; // vanishes on A (x) 1
};

SplitResult split_derivation(const Matrix& delta, const Algebra& a, const Algebra& s);

struct TensorImages {
    EndoSpace der_tensor_s;     // span of d (x) L_s
    EndoSpace cent_tensor_ders; // span of gamma (x) d'
};

TensorImages embed_tensor_derivations(const Algebra& a, const Algebra& s);

// --- verifiers ------------------------------------------------------------

VerificationReport verify_psi(const Algebra& a, const Algebra& s);
VerificationReport verify_block_decomposition(const Algebra& a, const Algebra& s);
/// Direct sum D_S + D_{A(x)1}, the dimension identity through C(A) (x) S, and
/// `samples` seeded random derivations split and checked.
VerificationReport verify_split(const Algebra& a, const Algebra& s, int samples, unsigned seed);
VerificationReport verify_graded_decomposition(const Setup& setup);
VerificationReport verify_pi_isomorphism(const Setup& setup);

// --- pi and phi -----------------------------------------------------------

/// Derivations of A (x) S commuting with sigma, solved directly.
EndoSpace degree_zero_derivations(const Setup& setup);

/// Restriction to the fixed-point algebra; NotInDomain unless D is a degree-0 derivation.
Matrix restrict_pi(const Matrix& d, const Setup& setup);

/// Extension of a derivation d of the fixed-point algebra. `n` is the free
/// integer of the general form (the production formula uses n = 1).
Matrix extend_phi(const Matrix& d, const Setup& setup, PhiBranch branch = PhiBranch::char0, long n = 1);

/// Earlier published extension formula, returned without any derivation guarantee.
Matrix bm_formula_extend(const Matrix& d, const Setup& setup);

/// Sampled identities used in the surjectivity proof, over every d given
/// and every n with |n| <= n_max.
VerificationReport check_surjectivity_identities(const Setup& setup, const std::vector<Matrix>& ds, long n_max = 2);

} // namespace dercent
