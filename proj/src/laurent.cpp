#include "dercent/laurent.hpp"

#include <algorithm>
#include <cctype>

#include "dercent/error.hpp"

namespace dercent {

LaurentElement LaurentElement::monomial(const Scalar& c, long n)
{
    LaurentElement x(c.field());
    x.add_term(n, c);
    return x;
}

Scalar LaurentElement::coefficient(long n) const
{
    auto it = terms_.find(n);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void LaurentElement::add_term(long n, const Scalar& c)
{
    if (c.field() != field_)
        throw Error(ErrorKind::FieldMismatch, "Laurent coefficient over a different field");
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.emplace(n, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void LaurentElement::check_field(const LaurentElement& other) const
{
    if (field_ != other.field_)
        throw Error(ErrorKind::FieldMismatch, "Laurent polynomials over different fields");
}

LaurentElement& LaurentElement::operator+=(const LaurentElement& rhs)
{
    check_field(rhs);
    for (const auto& [n, c] : rhs.terms_)
        add_term(n, c);
    return *this;
}

LaurentElement& LaurentElement::operator-=(const LaurentElement& rhs)
{
    check_field(rhs);
    for (const auto& [n, c] : rhs.terms_)
        add_term(n, -c);
    return *this;
}

LaurentElement operator*(const LaurentElement& a, const LaurentElement& b)
{
    a.check_field(b);
    LaurentElement out(a.field_);
    for (const auto& [n1, c1] : a.terms_)
        for (const auto& [n2, c2] : b.terms_)
            out.add_term(n1 + n2, c1 * c2);
    return out;
}

LaurentElement operator*(const Scalar& c, const LaurentElement& a)
{
    LaurentElement out(a.field_);
    for (const auto& [n, x] : a.terms_)
        out.add_term(n, c * x);
    return out;
}

bool operator==(const LaurentElement& a, const LaurentElement& b)
{
    return a.field_ == b.field_ && a.terms_ == b.terms_;
}

std::string to_literal(const LaurentElement& x)
{
    if (x.is_zero())
        return "0";
    std::string out;
    for (const auto& [n, c] : x.terms()) {
        if (!out.empty())
            out += " + ";
        out += to_literal(c) + "*z^" + std::to_string(n);
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

/// Splits at `sep` outside brackets, returning (offset, piece) pairs.
std::vector<std::pair<std::size_t, std::string_view>> split_top(std::string_view text, char sep)
{
    std::vector<std::pair<std::size_t, std::string_view>> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || (text[i] == sep && depth == 0)) {
            out.emplace_back(start, text.substr(start, i - start));
            start = i + 1;
        } else if (text[i] == '[') {
            ++depth;
        } else if (text[i] == ']') {
            --depth;
        }
    }
    return out;
}

long parse_exponent(std::string_view s, std::size_t offset)
{
    s = trim(s);
    if (s.empty())
        throw ParseError("missing exponent", offset);
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        ++i;
    }
    if (i == s.size())
        throw ParseError("missing exponent digits", offset + i);
    long v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("invalid exponent", offset + i);
        v = v * 10 + (s[i] - '0');
    }
    return neg ? -v : v;
}

} // namespace

LaurentElement parse_laurent(std::string_view text, Field f)
{
    LaurentElement out(f);
    if (trim(text) == "0")
        return out;
    for (const auto& [offset, piece] : split_top(text, '+')) {
        const std::string_view term = trim(piece);
        if (term.empty())
            throw ParseError("empty Laurent term", offset);
        const auto star = term.rfind("*z^");
        if (star == std::string_view::npos)
            throw ParseError("expected c*z^n", offset);
        const std::size_t base = offset + static_cast<std::size_t>(term.data() - piece.data());
        Scalar c = [&] {
            try {
                return parse_scalar(term.substr(0, star), f);
            } catch (const ParseError& e) {
                throw ParseError("invalid coefficient", base + e.position());
            }
        }();
        out.add_term(parse_exponent(term.substr(star + 3), base + star + 3), c);
    }
    return out;
}

LaurentElement LaurentDerivation::apply(const LaurentElement& x) const
{
    LaurentElement out(x.field());
    for (const auto& [n, c] : x.terms())
        if (n != 0)
            out += coefficient * LaurentElement::monomial(Scalar(x.field(), n) * c, n - 1);
    return out;
}

std::string to_string(GradingStyle style)
{
    return style == GradingStyle::forward ? "forward" : "inverse";
}

GradingStyle parse_style(std::string_view text)
{
    if (text == "forward")
        return GradingStyle::forward;
    if (text == "inverse")
        return GradingStyle::inverse;
    throw ParseError("grading style must be forward or inverse", 0);
}

int graded_component(long n, int m, GradingStyle style)
{
    return static_cast<int>(eps(style == GradingStyle::forward ? n : -n, m));
}

LoopElement LoopElement::pure(std::span<const Scalar> a, long n)
{
    LoopElement x(a.front().field(), a.size());
    x.add_part(n, a, Scalar::one(x.field_));
    return x;
}

void LoopElement::add_part(long n, std::span<const Scalar> a, const Scalar& c)
{
    if (a.size() != dim_a_)
        throw Error(ErrorKind::DimensionMismatch, "A-part has the wrong dimension");
    if (c.is_zero() || dercent::is_zero(a))
        return;
    auto it = parts_.find(n);
    if (it == parts_.end())
        it = parts_.emplace(n, zero_vec(field_, dim_a_)).first;
    for (std::size_t i = 0; i < dim_a_; ++i)
        if (!a[i].is_zero())
            it->second[i].add_mul(c, a[i]);
    if (dercent::is_zero(it->second))
        parts_.erase(it);
}

LoopElement& LoopElement::operator+=(const LoopElement& rhs)
{
    for (const auto& [n, v] : rhs.parts_)
        add_part(n, v, Scalar::one(field_));
    return *this;
}

LoopElement& LoopElement::operator-=(const LoopElement& rhs)
{
    for (const auto& [n, v] : rhs.parts_)
        add_part(n, v, -Scalar::one(field_));
    return *this;
}

LoopElement operator*(const Scalar& c, const LoopElement& x)
{
    LoopElement out(x.field_, x.dim_a_);
    for (const auto& [n, v] : x.parts_)
        out.add_part(n, v, c);
    return out;
}

bool operator==(const LoopElement& a, const LoopElement& b)
{
    return a.dim_a_ == b.dim_a_ && a.parts_ == b.parts_;
}

LoopElement LoopElement::act(const LaurentElement& t) const
{
    LoopElement out(field_, dim_a_);
    for (const auto& [n, v] : parts_)
        for (const auto& [k, c] : t.terms())
            out.add_part(n + k, v, c);
    return out;
}

LoopElement LoopElement::multiply(const Algebra& a, const LoopElement& other) const
{
    LoopElement out(field_, dim_a_);
    for (const auto& [n1, v1] : parts_)
        for (const auto& [n2, v2] : other.parts_)
            out.add_part(n1 + n2, a.multiply(v1, v2), Scalar::one(field_));
    return out;
}

std::string to_literal(const LoopElement& x, const Algebra& a)
{
    if (x.is_zero())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        LaurentElement coeff(a.field());
        for (const auto& [n, v] : x.parts())
            coeff.add_term(n, v[i]);
        if (coeff.is_zero())
            continue;
        if (!out.empty())
            out += " ; ";
        out += a.basis_names()[i] + ":" + to_literal(coeff);
    }
    return out;
}

LoopElement parse_loop(std::string_view text, const Algebra& a)
{
    LoopElement out(a.field(), a.dim());
    if (trim(text) == "0")
        return out;
    for (const auto& [offset, piece] : split_top(text, ';')) {
        const auto colon = piece.find(':');
        if (colon == std::string_view::npos)
            throw ParseError("expected name:laurent", offset);
        const std::string name(trim(piece.substr(0, colon)));
        const auto& names = a.basis_names();
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end())
            throw ParseError("unknown basis element '" + name + "'", offset);
        LaurentElement coeff = [&] {
            try {
                return parse_laurent(piece.substr(colon + 1), a.field());
            } catch (const ParseError& e) {
                throw ParseError("invalid Laurent part", offset + colon + 1 + e.position());
            }
        }();
        const Vec basis = a.basis_vector(static_cast<std::size_t>(it - names.begin()));
        for (const auto& [n, c] : coeff.terms())
            out.add_part(n, basis, c);
    }
    return out;
}

LoopSetup make_loop_setup(const Algebra& a, const Matrix& sigma1, int m, GradingStyle style, long u_exponent)
{
    LoopSetup st;
    st.a = a;
    st.sigma1 = check_automorphism(a, sigma1, m);
    st.m = m;
    st.style = style;
    st.u_exponent = u_exponent;
    if (!inverse_mod(st.unit_degree(), m))
        throw Error(ErrorKind::NoUnitFound, "z^" + std::to_string(u_exponent) + " has degree " +
                                                std::to_string(st.unit_degree()) + ", not a unit residue mod " +
                                                std::to_string(m));
    if (sigma1.is_identity()) {
        // Trivial grading; needs no root of unity in the field.
        st.grading_a.m = m;
        st.grading_a.components.assign(static_cast<std::size_t>(m), Subspace(a.field(), a.dim()));
        st.grading_a.components[0] = Subspace::full(a.field(), a.dim());
    } else {
        st.grading_a = grading_from_automorphism(st.sigma1);
    }
    std::vector<Vec> cols;
    for (int i = 0; i < m; ++i)
        for (auto& v : st.grading_a[i].basis_vectors()) {
            cols.push_back(v);
            st.graded_a.push_back({i, std::move(v)});
        }
    st.graded_a_inverse = inverse(Matrix::from_columns(a.field(), a.dim(), cols));
    return st;
}

LoopElement LoopDerivation::apply(const LoopSetup& setup, const LoopElement& x) const
{
    LoopElement out(x.field(), x.dim_a());
    for (const auto& [n, v] : x.parts()) {
        const Vec coords = setup.graded_a_inverse.apply(v);
        for (std::size_t idx = 0; idx < coords.size(); ++idx) {
            if (coords[idx].is_zero())
                continue;
            if (eps(setup.graded_a[idx].degree + setup.degree_of_exponent(n), setup.m) != 0)
                throw Error(ErrorKind::NotInDomain, "argument lies outside the fixed-point algebra");
            out += coords[idx] * on_basis(idx, n);
        }
    }
    return out;
}

LoopDerivation loop_derivation(const LoopSetup& setup, std::vector<LoopMulTerm> mul, std::vector<LoopDiffTerm> diff)
{
    const Field f = setup.a.field();
    const std::size_t dim = setup.a.dim();
    return {[f, dim, graded = setup.graded_a, mul = std::move(mul), diff = std::move(diff)](std::size_t idx, long n) {
        const Vec& a = graded[idx].v;
        LoopElement out(f, dim);
        for (const auto& t : mul)
            out.add_part(n + t.exponent, t.e.apply(a), Scalar::one(out.field()));
        for (const auto& t : diff) {
            const Vec ga = t.gamma.apply(a);
            const LaurentElement image = t.derivation.apply(LaurentElement::monomial(f, n));
            for (const auto& [k, c] : image.terms())
                out.add_part(k, ga, c);
        }
        return out;
    }};
}

void check_fixed_derivation(const LoopSetup& setup, const LoopDerivation& d, long window)
{
    const auto& ga = setup.graded_a;
    auto fixed_exponents = [&](int degree) {
        std::vector<long> out;
        for (long n = -window; n <= window; ++n)
            if (eps(degree + setup.degree_of_exponent(n), setup.m) == 0)
                out.push_back(n);
        return out;
    };
    for (std::size_t i = 0; i < ga.size(); ++i)
        for (std::size_t j = 0; j < ga.size(); ++j)
            for (long n1 : fixed_exponents(ga[i].degree))
                for (long n2 : fixed_exponents(ga[j].degree)) {
                    const LoopElement x = LoopElement::pure(ga[i].v, n1), y = LoopElement::pure(ga[j].v, n2);
                    const LoopElement lhs = d.apply(setup, x.multiply(setup.a, y));
                    const LoopElement rhs =
                        d.apply(setup, x).multiply(setup.a, y) + x.multiply(setup.a, d.apply(setup, y));
                    if (lhs != rhs)
                        throw Error(ErrorKind::NotInDomain, "not a derivation of the fixed-point algebra: fails on (" +
                                                                to_literal(x, setup.a) + ", " + to_literal(y, setup.a) +
                                                                ")");
                }
}

namespace {

template <class Term>
LoopElement eval_graded(const LoopSetup& setup, const LoopElement& target, Term&& term)
{
    LoopElement out(target.field(), target.dim_a());
    for (const auto& [n, v] : target.parts()) {
        const Vec coords = setup.graded_a_inverse.apply(v);
        for (std::size_t idx = 0; idx < coords.size(); ++idx)
            if (!coords[idx].is_zero())
                out += coords[idx] * term(idx, n);
    }
    return out;
}

LaurentElement z_power(Field f, long n)
{
    return LaurentElement::monomial(f, n);
}

} // namespace

LoopElement loop_phi_eval(const LoopSetup& setup, const LoopDerivation& d, const LoopElement& target)
{
    const Field f = target.field();
    const long m = setup.m;
    const Scalar mm(f, m);
    if (mm.is_zero())
        throw Error(ErrorKind::NotInDomain, "m is not invertible in " + f.describe());
    const Scalar m_inv = mm.inverse();
    const long up = setup.u_exponent * *inverse_mod(setup.unit_degree(), m); // u' = z^up lies in S_1
    return eval_graded(setup, target, [&](std::size_t idx, long n) {
        const long ei = setup.graded_a[idx].degree;
        const long es = eps(ei + setup.degree_of_exponent(n), m);
        LoopElement img = d.on_basis(idx, n - es * up).act(z_power(f, es * up));
        if (es != 0) {
            LoopElement inner = d.on_basis(idx, (-ei + m) * up).act(z_power(f, -m * up)) - d.on_basis(idx, -ei * up);
            img += (Scalar(f, es) * m_inv) * inner.act(z_power(f, ei * up + n));
        }
        return img;
    });
}

LoopElement loop_bm_eval(const LoopSetup& setup, const LoopDerivation& d, const LoopElement& target)
{
    const Field f = target.field();
    const long m = setup.m;
    const long q_inv = *inverse_mod(setup.unit_degree(), m);
    const long ue = setup.u_exponent;
    return eval_graded(setup, target, [&](std::size_t idx, long n) {
        const long s = eps(setup.graded_a[idx].degree + setup.degree_of_exponent(n), m);
        const long r = eps(s * q_inv, m);
        return d.on_basis(idx, n - r * ue).act(z_power(f, r * ue));
    });
}

std::optional<std::string> loop_leibniz_failure(const LoopSetup& setup,
                                                const std::function<LoopElement(const LoopElement&)>& map,
                                                long window)
{
    const auto& ga = setup.graded_a;
    for (std::size_t i = 0; i < ga.size(); ++i)
        for (std::size_t j = 0; j < ga.size(); ++j)
            for (long n1 = -window; n1 <= window; ++n1)
                for (long n2 = -window; n2 <= window; ++n2) {
                    const LoopElement x = LoopElement::pure(ga[i].v, n1), y = LoopElement::pure(ga[j].v, n2);
                    const LoopElement lhs = map(x.multiply(setup.a, y));
                    const LoopElement rhs = map(x).multiply(setup.a, y) + x.multiply(setup.a, map(y));
                    if (lhs != rhs)
                        return "(" + to_literal(x, setup.a) + ", " + to_literal(y, setup.a) + "): " +
                               to_literal(lhs, setup.a) + " != " + to_literal(rhs, setup.a);
                }
    return std::nullopt;
}

Vec quotient_to_finite(const LoopElement& x, std::size_t modulus)
{
    Vec out = zero_vec(x.field(), x.dim_a() * modulus);
    for (const auto& [n, v] : x.parts()) {
        const auto r = static_cast<std::size_t>(eps(n, static_cast<long>(modulus)));
        for (std::size_t i = 0; i < v.size(); ++i)
            out[i * modulus + r] += v[i];
    }
    return out;
}

Algebra quotient_laurent_algebra(Field f, std::size_t modulus)
{
    if (modulus == 0)
        throw Error(ErrorKind::DimensionMismatch, "modulus must be positive");
    std::vector<std::string> names;
    std::vector<SparseRow> table;
    for (std::size_t i = 0; i < modulus; ++i)
        names.push_back("z^" + std::to_string(i));
    for (std::size_t i = 0; i < modulus; ++i)
        for (std::size_t j = 0; j < modulus; ++j)
            table.push_back({{(i + j) % modulus, Scalar::one(f)}});
    return Algebra(f, std::move(names), std::move(table));
}

Matrix quotient_laurent_automorphism(Field f, std::size_t modulus, int m, GradingStyle style)
{
    if (modulus % static_cast<std::size_t>(m) != 0)
        throw Error(ErrorKind::WrongPeriod, "modulus " + std::to_string(modulus) + " is not a multiple of m = " +
                                                std::to_string(m));
    const Scalar w = grading_root(f, m);
    Matrix out(f, modulus, modulus);
    for (std::size_t j = 0; j < modulus; ++j)
        out(j, j) = w.pow(graded_component(static_cast<long>(j), m, style));
    return out;
}

SetupSpec quotient_setup_spec(const LoopSetup& setup, std::size_t modulus)
{
    const Field f = setup.a.field();
    SetupSpec spec;
    spec.a = setup.a;
    spec.s = quotient_laurent_algebra(f, modulus);
    spec.sigma1 = setup.sigma1.matrix;
    spec.sigma2 = quotient_laurent_automorphism(f, modulus, setup.m, setup.style);
    spec.m = setup.m;
    spec.q = setup.unit_degree();
    spec.u = unit_vec(f, modulus, static_cast<std::size_t>(eps(setup.u_exponent, static_cast<long>(modulus))));
    return spec;
}

Matrix finite_derivation(const Setup& finite, std::size_t modulus, const std::vector<LoopMulTerm>& mul,
                         const std::vector<LoopDiffTerm>& diff)
{
    const Field f = finite.as.field();
    Matrix big(f, finite.as.dim(), finite.as.dim());
    for (const auto& t : mul)
        big += kron(t.e, finite.s.left_operator(finite.s.basis_vector(
                             static_cast<std::size_t>(eps(t.exponent, static_cast<long>(modulus))))));
    for (const auto& t : diff) {
        Matrix p(f, modulus, modulus);
        for (std::size_t j = 0; j < modulus; ++j) {
            const Vec img = quotient_to_finite(
                LoopElement::pure(std::vector<Scalar>{Scalar::one(f)}, 0)
                    .act(t.derivation.apply(LaurentElement::monomial(f, static_cast<long>(j)))),
                modulus);
            for (std::size_t r = 0; r < modulus; ++r)
                p(r, j) = img[r];
        }
        big += kron(t.gamma, p);
    }
    return restrict_pi(big, finite);
}

} // namespace dercent
