#include "dercent/scalars.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "dercent/error.hpp"

namespace dercent {

std::string_view to_string(FieldKind kind)
{
    switch (kind) {
    case FieldKind::rational: return "rational";
    case FieldKind::cyclotomic: return "cyclotomic";
    case FieldKind::prime: return "prime";
    }
    return "unknown";
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

int euler_phi(int m)
{
    int result = m;
    int n = m;
    for (int q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            while (n % q == 0)
                n /= q;
            result -= result / q;
        }
    }
    if (n > 1)
        result -= result / n;
    return result;
}

std::vector<mpz_class> cyclotomic_polynomial(int m)
{
    if (m < 1)
        throw Error(ErrorKind::DimensionMismatch, "cyclotomic order must be positive");
    // x^m - 1 divided exactly by Phi_d for every proper divisor d of m.
    std::vector<mpz_class> num(static_cast<std::size_t>(m) + 1, 0);
    num[0] = -1;
    num[static_cast<std::size_t>(m)] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d != 0)
            continue;
        auto div = cyclotomic_polynomial(d);
        std::size_t dn = num.size() - 1;
        std::size_t dd = div.size() - 1;
        std::vector<mpz_class> quot(dn - dd + 1, 0);
        for (std::size_t k = dn + 1; k-- > dd;) {
            mpz_class coeff = num[k]; // divisor is monic
            quot[k - dd] = coeff;
            if (coeff == 0)
                continue;
            for (std::size_t t = 0; t <= dd; ++t)
                num[k - dd + t] -= coeff * div[t];
        }
        for (std::size_t t = 0; t < dd; ++t)
            if (num[t] != 0)
                throw Error(ErrorKind::Internal, "inexact cyclotomic division");
        num = std::move(quot);
    }
    return num;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t result = 1 % p;
    base %= p;
    while (e > 0) {
        if (e & 1U)
            result = mul_mod(result, base, p);
        base = mul_mod(base, base, p);
        e >>= 1U;
    }
    return result;
}

std::vector<int> prime_factors(int n)
{
    std::vector<int> out;
    for (int q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0)
                n /= q;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

bool has_exact_order(std::uint64_t x, int order, std::uint64_t p)
{
    if (pow_mod(x, static_cast<std::uint64_t>(order), p) != 1)
        return false;
    for (int q : prime_factors(order))
        if (pow_mod(x, static_cast<std::uint64_t>(order / q), p) == 1)
            return false;
    return true;
}

std::uint64_t find_prime_root(int order, std::uint64_t p)
{
    if (order == 1)
        return 1;
    const std::uint64_t cofactor = (p - 1) / static_cast<std::uint64_t>(order);
    for (std::uint64_t x = 2; x < p; ++x) {
        std::uint64_t y = pow_mod(x, cofactor, p);
        if (has_exact_order(y, order, p))
            return y;
    }
    throw Error(ErrorKind::NoPrimitiveRoot, "no element of order " + std::to_string(order));
}

std::unique_ptr<detail::FieldData> build_field(FieldKind kind, int m, std::uint64_t p)
{
    auto data = std::make_unique<detail::FieldData>();
    data->kind = kind;
    data->m = m;
    data->p = p;
    if (kind == FieldKind::cyclotomic) {
        data->modulus = cyclotomic_polynomial(m);
        const std::size_t d = data->modulus.size() - 1;
        data->degree = d;
        if (d >= 2) {
            // x^d = -(c_0 + ... + c_{d-1} x^{d-1})
            std::vector<mpz_class> cur(d);
            for (std::size_t t = 0; t < d; ++t)
                cur[t] = -data->modulus[t];
            data->high_powers.push_back(cur);
            for (std::size_t step = 1; step + 1 < d; ++step) {
                mpz_class top = cur[d - 1];
                for (std::size_t t = d - 1; t > 0; --t)
                    cur[t] = cur[t - 1];
                cur[0] = 0;
                for (std::size_t t = 0; t < d; ++t)
                    cur[t] += top * data->high_powers[0][t];
                data->high_powers.push_back(cur);
            }
        }
    } else if (kind == FieldKind::prime) {
        data->root = find_prime_root(m, p);
    }
    return data;
}

} // namespace

Field make_field(FieldKind kind, int m, std::uint64_t p)
{
    if (m < 1)
        throw Error(ErrorKind::DimensionMismatch, "m must be positive");
    if (kind == FieldKind::rational) {
        m = 1;
        p = 0;
    } else if (kind == FieldKind::cyclotomic) {
        p = 0;
    } else {
        if (p >= (std::uint64_t{1} << 32U) || !is_prime(p))
            throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not a prime below 2^32");
        if (static_cast<std::uint64_t>(m) % p == 0)
            throw Error(ErrorKind::CharDividesM, "p = " + std::to_string(p) + " divides m = " + std::to_string(m));
        if ((p - 1) % static_cast<std::uint64_t>(m) != 0)
            throw Error(ErrorKind::NoPrimitiveRoot,
                        "m = " + std::to_string(m) + " does not divide p - 1 = " + std::to_string(p - 1));
    }

    static std::mutex mutex;
    static std::map<std::tuple<int, int, std::uint64_t>, std::unique_ptr<detail::FieldData>> registry;
    std::lock_guard lock(mutex);
    auto key = std::make_tuple(static_cast<int>(kind), m, p);
    auto it = registry.find(key);
    if (it == registry.end())
        it = registry.emplace(key, build_field(kind, m, p)).first;
    return Field(it->second.get());
}

Field::Field()
{
    static const Field q = rationals();
    data_ = q.data_;
}

std::string Field::describe() const
{
    switch (kind()) {
    case FieldKind::rational: return "Q";
    case FieldKind::cyclotomic: return "Q(zeta_" + std::to_string(m()) + ")";
    case FieldKind::prime: return "F_" + std::to_string(p()) + " (m = " + std::to_string(m()) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar() : Scalar(Field()) {}

Scalar::Scalar(Field f) : f_(f.data_)
{
    if (f_->kind == FieldKind::cyclotomic)
        c_.assign(f_->degree, mpq_class(0));
}

Scalar::Scalar(Field f, long value) : Scalar(f)
{
    switch (f_->kind) {
    case FieldKind::rational: q_ = value; break;
    case FieldKind::cyclotomic: c_[0] = value; break;
    case FieldKind::prime: normalize_prime(mpz_class(value)); break;
    }
}

Scalar::Scalar(Field f, const mpq_class& value) : Scalar(f)
{
    switch (f_->kind) {
    case FieldKind::rational:
        q_ = value;
        q_.canonicalize();
        break;
    case FieldKind::cyclotomic:
        c_[0] = value;
        c_[0].canonicalize();
        break;
    case FieldKind::prime: {
        Scalar num(f), den(f);
        num.normalize_prime(value.get_num());
        den.normalize_prime(value.get_den());
        *this = num / den;
        break;
    }
    }
}

void Scalar::normalize_prime(const mpz_class& value)
{
    mpz_class r;
    mpz_class p(static_cast<unsigned long>(f_->p));
    mpz_mod(r.get_mpz_t(), value.get_mpz_t(), p.get_mpz_t());
    r_ = r.get_ui();
}

Scalar Scalar::generator(Field f)
{
    Scalar s(f);
    switch (f.kind()) {
    case FieldKind::rational: s.q_ = 1; break;
    case FieldKind::cyclotomic:
        if (f.degree() == 1) {
            s.c_[0] = f.m() == 2 ? -1 : 1;
        } else {
            s.c_[1] = 1;
        }
        break;
    case FieldKind::prime: s.r_ = f.prime_root(); break;
    }
    return s;
}

Scalar Scalar::from_coefficients(Field f, std::vector<mpq_class> coeffs)
{
    if (f.kind() != FieldKind::cyclotomic)
        throw Error(ErrorKind::FieldMismatch, "coefficient vectors are for cyclotomic fields");
    if (coeffs.size() > f.degree())
        throw Error(ErrorKind::DimensionMismatch, "too many cyclotomic coefficients");
    Scalar s(f);
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
        coeffs[t].canonicalize();
        s.c_[t] = coeffs[t];
    }
    return s;
}

Scalar Scalar::from_residue(Field f, std::uint64_t residue)
{
    if (f.kind() != FieldKind::prime)
        throw Error(ErrorKind::FieldMismatch, "residues are for prime fields");
    Scalar s(f);
    s.r_ = residue % f.p();
    return s;
}

void Scalar::check_field(const Scalar& other) const
{
    if (f_ != other.f_)
        throw Error(ErrorKind::FieldMismatch,
                    "operands over " + Field(f_).describe() + " and " + Field(other.f_).describe());
}

bool Scalar::is_zero() const
{
    switch (f_->kind) {
    case FieldKind::rational: return sgn(q_) == 0;
    case FieldKind::cyclotomic:
        for (const auto& c : c_)
            if (sgn(c) != 0)
                return false;
        return true;
    case FieldKind::prime: return r_ == 0;
    }
    return false;
}

bool Scalar::is_one() const
{
    switch (f_->kind) {
    case FieldKind::rational: return q_ == 1;
    case FieldKind::cyclotomic:
        if (c_[0] != 1)
            return false;
        for (std::size_t t = 1; t < c_.size(); ++t)
            if (sgn(c_[t]) != 0)
                return false;
        return true;
    case FieldKind::prime: return r_ == 1;
    }
    return false;
}

Scalar& Scalar::operator+=(const Scalar& rhs)
{
    check_field(rhs);
    switch (f_->kind) {
    case FieldKind::rational: q_ += rhs.q_; break;
    case FieldKind::cyclotomic:
        for (std::size_t t = 0; t < c_.size(); ++t)
            c_[t] += rhs.c_[t];
        break;
    case FieldKind::prime: r_ = (r_ + rhs.r_) % f_->p; break;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs)
{
    check_field(rhs);
    switch (f_->kind) {
    case FieldKind::rational: q_ -= rhs.q_; break;
    case FieldKind::cyclotomic:
        for (std::size_t t = 0; t < c_.size(); ++t)
            c_[t] -= rhs.c_[t];
        break;
    case FieldKind::prime: r_ = (r_ + f_->p - rhs.r_) % f_->p; break;
    }
    return *this;
}

namespace {

std::vector<mpq_class> cyclotomic_product(const detail::FieldData& f, const std::vector<mpq_class>& a,
                                          const std::vector<mpq_class>& b)
{
    const std::size_t d = f.degree;
    std::vector<mpq_class> full(2 * d - 1, mpq_class(0));
    for (std::size_t i = 0; i < d; ++i) {
        if (sgn(a[i]) == 0)
            continue;
        for (std::size_t j = 0; j < d; ++j)
            if (sgn(b[j]) != 0)
                full[i + j] += a[i] * b[j];
    }
    std::vector<mpq_class> out(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(d));
    for (std::size_t k = d; k < full.size(); ++k) {
        if (sgn(full[k]) == 0)
            continue;
        const auto& red = f.high_powers[k - d];
        for (std::size_t t = 0; t < d; ++t)
            if (red[t] != 0)
                out[t] += full[k] * red[t];
    }
    return out;
}

} // namespace

Scalar& Scalar::operator*=(const Scalar& rhs)
{
    check_field(rhs);
    switch (f_->kind) {
    case FieldKind::rational: q_ *= rhs.q_; break;
    case FieldKind::cyclotomic: c_ = cyclotomic_product(*f_, c_, rhs.c_); break;
    case FieldKind::prime: r_ = mul_mod(r_, rhs.r_, f_->p); break;
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs)
{
    check_field(rhs);
    return *this *= rhs.inverse();
}

void Scalar::sub_mul(const Scalar& a, const Scalar& b)
{
    check_field(a);
    check_field(b);
    switch (f_->kind) {
    case FieldKind::rational: {
        mpq_class t;
        mpq_mul(t.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
        mpq_sub(q_.get_mpq_t(), q_.get_mpq_t(), t.get_mpq_t());
        break;
    }
    case FieldKind::cyclotomic: {
        auto prod = cyclotomic_product(*f_, a.c_, b.c_);
        for (std::size_t t = 0; t < c_.size(); ++t)
            c_[t] -= prod[t];
        break;
    }
    case FieldKind::prime: r_ = (r_ + f_->p - mul_mod(a.r_, b.r_, f_->p)) % f_->p; break;
    }
}

void Scalar::add_mul(const Scalar& a, const Scalar& b)
{
    check_field(a);
    check_field(b);
    switch (f_->kind) {
    case FieldKind::rational: {
        mpq_class t;
        mpq_mul(t.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
        mpq_add(q_.get_mpq_t(), q_.get_mpq_t(), t.get_mpq_t());
        break;
    }
    case FieldKind::cyclotomic: {
        auto prod = cyclotomic_product(*f_, a.c_, b.c_);
        for (std::size_t t = 0; t < c_.size(); ++t)
            c_[t] += prod[t];
        break;
    }
    case FieldKind::prime: r_ = (r_ + mul_mod(a.r_, b.r_, f_->p)) % f_->p; break;
    }
}

Scalar Scalar::operator-() const
{
    Scalar out{Field(f_)};
    out -= *this;
    return out;
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    Scalar out{Field(f_)};
    switch (f_->kind) {
    case FieldKind::rational: out.q_ = 1 / q_; break;
    case FieldKind::prime: out.r_ = pow_mod(r_, f_->p - 2, f_->p); break;
    case FieldKind::cyclotomic: {
        // Solve (multiplication-by-this) x = 1 over Q.
        const std::size_t d = f_->degree;
        std::vector<std::vector<mpq_class>> aug(d, std::vector<mpq_class>(d + 1, mpq_class(0)));
        std::vector<mpq_class> basis(d, mpq_class(0));
        for (std::size_t j = 0; j < d; ++j) {
            std::fill(basis.begin(), basis.end(), mpq_class(0));
            basis[j] = 1;
            auto col = cyclotomic_product(*f_, c_, basis);
            for (std::size_t i = 0; i < d; ++i)
                aug[i][j] = col[i];
        }
        aug[0][d] = 1;
        for (std::size_t col = 0; col < d; ++col) {
            std::size_t piv = col;
            while (piv < d && sgn(aug[piv][col]) == 0)
                ++piv;
            if (piv == d)
                throw Error(ErrorKind::Internal, "singular multiplication matrix in cyclotomic field");
            std::swap(aug[piv], aug[col]);
            mpq_class lead = aug[col][col];
            for (auto& v : aug[col])
                v /= lead;
            for (std::size_t r = 0; r < d; ++r) {
                if (r == col || sgn(aug[r][col]) == 0)
                    continue;
                mpq_class factor = aug[r][col];
                for (std::size_t c = col; c <= d; ++c)
                    aug[r][c] -= factor * aug[col][c];
            }
        }
        for (std::size_t i = 0; i < d; ++i)
            out.c_[i] = aug[i][d];
        break;
    }
    }
    return out;
}

Scalar Scalar::pow(long exponent) const
{
    Scalar base = exponent < 0 ? inverse() : *this;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    Scalar result = one(Field(f_));
    while (e > 0) {
        if (e & 1UL)
            result *= base;
        base *= base;
        e >>= 1U;
    }
    return result;
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (a.f_ != b.f_)
        return false;
    switch (a.f_->kind) {
    case FieldKind::rational: return a.q_ == b.q_;
    case FieldKind::cyclotomic: return a.c_ == b.c_;
    case FieldKind::prime: return a.r_ == b.r_;
    }
    return false;
}

std::optional<Scalar> root_of_unity(Field f, int order)
{
    if (order < 1)
        return std::nullopt;
    if (order == 1)
        return Scalar::one(f);
    switch (f.kind()) {
    case FieldKind::rational:
        if (order == 2)
            return Scalar(f, -1L);
        return std::nullopt;
    case FieldKind::cyclotomic:
        if (f.m() % order == 0)
            return Scalar::generator(f).pow(f.m() / order);
        if (order == 2)
            return Scalar(f, -1L);
        return std::nullopt;
    case FieldKind::prime:
        if (f.m() % order == 0)
            return Scalar::generator(f).pow(f.m() / order);
        if ((f.p() - 1) % static_cast<std::uint64_t>(order) == 0)
            return Scalar::from_residue(f, find_prime_root(order, f.p()));
        return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// text

std::string to_string(const mpq_class& q)
{
    return q.get_str(10);
}

std::string to_literal(const Scalar& s)
{
    switch (s.field().kind()) {
    case FieldKind::rational: return to_string(s.rational_value());
    case FieldKind::prime: return std::to_string(s.residue());
    case FieldKind::cyclotomic: {
        std::string out = "[";
        for (std::size_t t = 0; t < s.coefficients().size(); ++t) {
            if (t > 0)
                out += ", ";
            out += to_string(s.coefficients()[t]);
        }
        return out + "]";
    }
    }
    return "?";
}

std::string to_pretty(const Scalar& s)
{
    if (s.field().kind() != FieldKind::cyclotomic)
        return to_literal(s);
    std::string out;
    const auto& c = s.coefficients();
    for (std::size_t t = 0; t < c.size(); ++t) {
        if (sgn(c[t]) == 0)
            continue;
        mpq_class mag = abs(c[t]);
        if (out.empty()) {
            if (sgn(c[t]) < 0)
                out += "-";
        } else {
            out += sgn(c[t]) < 0 ? " - " : " + ";
        }
        std::string mono = t == 0 ? "" : (t == 1 ? "ζ" : "ζ^" + std::to_string(t));
        if (t == 0 || mag != 1)
            out += to_string(mag) + (mono.empty() ? "" : "*");
        out += mono;
    }
    return out.empty() ? "0" : out;
}

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    std::size_t pos() const { return pos_; }
    void advance() { ++pos_; }

    bool accept(char c)
    {
        skip_ws();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    mpz_class integer(bool allow_sign)
    {
        skip_ws();
        std::string digits;
        if (allow_sign && (peek() == '-' || peek() == '+')) {
            if (peek() == '-')
                digits += '-';
            ++pos_;
        }
        std::size_t start = pos_;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek())))
            digits += text_[pos_++];
        if (pos_ == start)
            throw ParseError("expected decimal digits", pos_);
        return mpz_class(digits, 10);
    }

    mpq_class rational()
    {
        mpz_class num = integer(true);
        if (accept('/')) {
            std::size_t at = pos_;
            mpz_class den = integer(false);
            if (den == 0)
                throw ParseError("zero denominator", at);
            mpq_class q(num, den);
            q.canonicalize();
            return q;
        }
        return mpq_class(num);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Scalar parse_scalar(std::string_view text, Field f)
{
    Cursor cur(text);
    Scalar out(f);
    cur.skip_ws();
    if (f.kind() == FieldKind::cyclotomic && cur.peek() == '[') {
        cur.advance();
        std::vector<mpq_class> coeffs;
        if (!cur.accept(']')) {
            do {
                std::size_t at = cur.pos();
                coeffs.push_back(cur.rational());
                if (coeffs.size() > f.degree())
                    throw ParseError("more than phi(m) = " + std::to_string(f.degree()) + " coefficients", at);
            } while (cur.accept(','));
            if (!cur.accept(']'))
                throw ParseError("expected ']'", cur.pos());
        }
        out = Scalar::from_coefficients(f, std::move(coeffs));
    } else {
        std::size_t at = cur.pos();
        mpq_class q = cur.rational();
        if (f.kind() == FieldKind::prime && q.get_den() != 1) {
            mpz_class p(static_cast<unsigned long>(f.p()));
            if (q.get_den() % p == 0)
                throw ParseError("denominator divisible by p", at);
        }
        out = Scalar(f, q);
    }
    cur.skip_ws();
    if (!cur.done())
        throw ParseError("trailing characters", cur.pos());
    return out;
}

} // namespace dercent
