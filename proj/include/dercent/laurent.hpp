#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dercent/decomposition.hpp"

namespace dercent {

/// Finite sum of c z^n over arbitrary integer exponents, zero coefficients never stored.
class LaurentElement {
public:
    LaurentElement() = default;
    explicit LaurentElement(Field f) : field_(f) {}

    static LaurentElement monomial(const Scalar& c, long n);
    static LaurentElement monomial(Field f, long n) { return monomial(Scalar::one(f), n); }

    Field field() const noexcept { return field_; }
    const std::map<long, Scalar>& terms() const noexcept { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coefficient(long n) const;

    void add_term(long n, const Scalar& c);

    LaurentElement& operator+=(const LaurentElement& rhs);
    LaurentElement& operator-=(const LaurentElement& rhs);
    friend LaurentElement operator+(LaurentElement a, const LaurentElement& b) { return a += b; }
    friend LaurentElement operator-(LaurentElement a, const LaurentElement& b) { return a -= b; }
    friend LaurentElement operator*(const LaurentElement& a, const LaurentElement& b);
    friend LaurentElement operator*(const Scalar& c, const LaurentElement& a);
    friend bool operator==(const LaurentElement& a, const LaurentElement& b);
    friend bool operator!=(const LaurentElement& a, const LaurentElement& b) { return !(a == b); }

private:
    void check_field(const LaurentElement& other) const;

    Field field_;
    std::map<long, Scalar> terms_;
};

/// "c*z^n" terms joined by " + ", exponent ascending; "0" for zero.
std::string to_literal(const LaurentElement& x);
LaurentElement parse_laurent(std::string_view text, Field f);

/// p(z) d/dz: z^n -> n p(z) z^(n-1).
struct LaurentDerivation {
    LaurentElement coefficient;
    LaurentElement apply(const LaurentElement& x) const;
};

enum class GradingStyle { forward, inverse };

std::string to_string(GradingStyle style);
GradingStyle parse_style(std::string_view text);

/// Degree of z^n: n mod m (forward, sigma2(z^n) = w^n z^n) or -n mod m (inverse).
int graded_component(long n, int m, GradingStyle style);

/// Element of A (x) k[z, z^-1]: exponent -> A-coordinates, zero parts dropped.
class LoopElement {
public:
    LoopElement() = default;
    LoopElement(Field f, std::size_t dim_a) : field_(f), dim_a_(dim_a) {}

    static LoopElement pure(std::span<const Scalar> a, long n);

    Field field() const noexcept { return field_; }
    std::size_t dim_a() const noexcept { return dim_a_; }
    const std::map<long, Vec>& parts() const noexcept { return parts_; }
    bool is_zero() const { return parts_.empty(); }

    void add_part(long n, std::span<const Scalar> a, const Scalar& c);
    LoopElement& operator+=(const LoopElement& rhs);
    LoopElement& operator-=(const LoopElement& rhs);
    friend LoopElement operator+(LoopElement a, const LoopElement& b) { return a += b; }
    friend LoopElement operator-(LoopElement a, const LoopElement& b) { return a -= b; }
    friend LoopElement operator*(const Scalar& c, const LoopElement& x);
    friend bool operator==(const LoopElement& a, const LoopElement& b);
    friend bool operator!=(const LoopElement& a, const LoopElement& b) { return !(a == b); }

    /// Right action of a Laurent polynomial on the S slot.
    LoopElement act(const LaurentElement& t) const;
    LoopElement multiply(const Algebra& a, const LoopElement& other) const;

private:
    Field field_;
    std::size_t dim_a_ = 0;
    std::map<long, Vec> parts_;
};

/// "name:laurent" terms joined by " ; " when A has named basis vectors.
std::string to_literal(const LoopElement& x, const Algebra& a);
/// Parses "e:2*z^1 ; h:-1*z^0".
LoopElement parse_loop(std::string_view text, const Algebra& a);

/// A (x) k[z, z^-1] with sigma = sigma1 (x) sigma2 and a monomial unit u = z^u_exponent.
struct LoopSetup {
    Algebra a;
    Automorphism sigma1;
    int m = 1;
    GradingStyle style = GradingStyle::forward;
    long u_exponent = 1;
    Grading grading_a;
    std::vector<HomogeneousVector> graded_a;
    Matrix graded_a_inverse; // coordinates with respect to graded_a

    int degree_of_exponent(long n) const { return graded_component(n, m, style); }
    /// Residue q with u in S_q.
    int unit_degree() const { return degree_of_exponent(u_exponent); }
};

/// NoUnitFound when the degree q of z^u_exponent is not a unit mod m.
LoopSetup make_loop_setup(const Algebra& a, const Matrix& sigma1, int m, GradingStyle style, long u_exponent);

/// A derivation of the fixed-point algebra, given by its values on a_i (x) z^n
/// for graded_a[index] = a_i of degree i and z^n of degree -i.
struct LoopDerivation {
    std::function<LoopElement(std::size_t index, long n)> on_basis;

    LoopElement apply(const LoopSetup& setup, const LoopElement& x) const;
};

/// Restriction of sum_k mul_terms[k].e (x) z^exponent + sum gamma (x) p d/dz.
struct LoopMulTerm {
    Matrix e; // endomorphism of A
    long exponent = 0;
};
struct LoopDiffTerm {
    Matrix gamma; // endomorphism of A
    LaurentDerivation derivation;
};
LoopDerivation loop_derivation(const LoopSetup& setup, std::vector<LoopMulTerm> mul, std::vector<LoopDiffTerm> diff);

/// Leibniz on fixed-point basis pairs with exponents in [-window, window]; NotInDomain on failure.
void check_fixed_derivation(const LoopSetup& setup, const LoopDerivation& d, long window);

/// The explicit extension formula with n = 1, evaluated term by term.
LoopElement loop_phi_eval(const LoopSetup& setup, const LoopDerivation& d, const LoopElement& target);
/// The earlier published formula, with u of degree q.
LoopElement loop_bm_eval(const LoopSetup& setup, const LoopDerivation& d, const LoopElement& target);

/// First pair of homogeneous basis elements a_i (x) z^n1, a_j (x) z^n2 with
/// |n1|, |n2| <= window on which `map` violates Leibniz, as a literal witness.
std::optional<std::string> loop_leibniz_failure(const LoopSetup& setup,
                                                const std::function<LoopElement(const LoopElement&)>& map,
                                                long window);

/// Image of x in A (x) k[z]/(z^modulus - 1), coordinates i * modulus + (n mod modulus).
Vec quotient_to_finite(const LoopElement& x, std::size_t modulus);

/// k[z]/(z^modulus - 1) with basis z^0..z^(modulus-1).
Algebra quotient_laurent_algebra(Field f, std::size_t modulus);
/// sigma2 on k[z]/(z^modulus - 1) matching `style`; modulus must be a multiple of m.
Matrix quotient_laurent_automorphism(Field f, std::size_t modulus, int m, GradingStyle style);
/// Finite setup A (x) k[z]/(z^modulus - 1) with u = z^u_exponent reduced.
SetupSpec quotient_setup_spec(const LoopSetup& setup, std::size_t modulus);

/// The finite-dimensional derivation of the quotient fixed-point algebra matching mul/diff terms.
Matrix finite_derivation(const Setup& finite, std::size_t modulus, const std::vector<LoopMulTerm>& mul,
                         const std::vector<LoopDiffTerm>& diff);

} // namespace dercent
