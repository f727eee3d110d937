#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace dercent {

enum class FieldKind { rational, cyclotomic, prime };

std::string_view to_string(FieldKind kind);

namespace detail {

struct FieldData {
    FieldKind kind = FieldKind::rational;
    int m = 1;
    std::uint64_t p = 0;
    std::size_t degree = 1;
    // Cyclotomic: coefficients of Phi_m, lowest degree first, monic.
    std::vector<mpz_class> modulus;
    // Cyclotomic: x^(degree + t) reduced mod Phi_m, for t in [0, degree - 1).
    std::vector<std::vector<mpz_class>> high_powers;
    // Prime: the primitive m-th root of unity housed by this field.
    std::uint64_t root = 1;
};

} // namespace detail

/// Handle to an interned field descriptor. Two handles compare equal iff
/// they were built from the same (kind, m, p); descriptors live for the
/// whole program, so handles are trivially copyable and thread-safe.
class Field {
public:
    Field();

    FieldKind kind() const noexcept { return data_->kind; }
    int m() const noexcept { return data_->m; }
    std::uint64_t p() const noexcept { return data_->p; }
    /// Dimension over the prime field: phi(m) for cyclotomic, 1 otherwise.
    std::size_t degree() const noexcept { return data_->degree; }
    std::uint64_t characteristic() const noexcept { return data_->kind == FieldKind::prime ? data_->p : 0; }
    const std::vector<mpz_class>& modulus() const noexcept { return data_->modulus; }
    std::uint64_t prime_root() const noexcept { return data_->root; }

    std::string describe() const;

    const detail::FieldData* data() const noexcept { return data_; }

    friend bool operator==(Field a, Field b) noexcept { return a.data_ == b.data_; }
    friend bool operator!=(Field a, Field b) noexcept { return a.data_ != b.data_; }

private:
    explicit Field(const detail::FieldData* data) : data_(data) {}
    friend Field make_field(FieldKind, int, std::uint64_t);
    friend class Scalar;

    const detail::FieldData* data_;
};

/// Builds (or fetches) the field descriptor. `m` is the cyclotomic order
/// for cyclotomic fields and the root-of-unity order for prime fields; it
/// is forced to 1 for the rational kind.
Field make_field(FieldKind kind, int m = 1, std::uint64_t p = 0);

inline Field rationals() { return make_field(FieldKind::rational); }

/// Exact element of a Field.
class Scalar {
public:
    Scalar();
    explicit Scalar(Field f);
    Scalar(Field f, long value);
    Scalar(Field f, const mpq_class& value);

    static Scalar zero(Field f) { return Scalar(f); }
    static Scalar one(Field f) { return Scalar(f, 1L); }
    /// Cyclotomic generator zeta_m; for prime fields the stored root.
    static Scalar generator(Field f);
    static Scalar from_coefficients(Field f, std::vector<mpq_class> coeffs);
    static Scalar from_residue(Field f, std::uint64_t residue);

    Field field() const noexcept { return Field(f_); }

    bool is_zero() const;
    bool is_one() const;

    const mpq_class& rational_value() const noexcept { return q_; }
    const std::vector<mpq_class>& coefficients() const noexcept { return c_; }
    std::uint64_t residue() const noexcept { return r_; }

    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    /// this -= a * b without an intermediate Scalar.
    void sub_mul(const Scalar& a, const Scalar& b);
    void add_mul(const Scalar& a, const Scalar& b);

    Scalar operator-() const;
    Scalar inverse() const;
    Scalar pow(long exponent) const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

private:
    const detail::FieldData* f_;
    mpq_class q_;
    std::vector<mpq_class> c_;
    std::uint64_t r_ = 0;

    void check_field(const Scalar& other) const;
    void normalize_prime(const mpz_class& value);
};

/// Primitive root of unity of the given order, when the field holds one.
/// The rational field holds -1 (order 2); cyclotomic Q(zeta_M) holds
/// zeta_M^(M/order) whenever order | M.
std::optional<Scalar> root_of_unity(Field f, int order);

/// Canonical literal (see README for the grammar). Round-trips through parse_scalar.
std::string to_literal(const Scalar& s);
/// Human form, e.g. "3/2", "1 - ζ".
std::string to_pretty(const Scalar& s);

Scalar parse_scalar(std::string_view text, Field f);

std::string to_string(const mpq_class& q);

/// Cyclotomic polynomial Phi_m with integer coefficients, lowest degree first.
std::vector<mpz_class> cyclotomic_polynomial(int m);

bool is_prime(std::uint64_t n);
int euler_phi(int m);

} // namespace dercent
