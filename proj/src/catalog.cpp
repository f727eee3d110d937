#include "dercent/catalog.hpp"

#include <regex>

#include "dercent/error.hpp"

namespace dercent::catalog {

namespace {

using Table = std::vector<SparseRow>;

Table empty_table(std::size_t n)
{
    return Table(n * n);
}

void set(Table& t, std::size_t n, std::size_t i, std::size_t j, std::size_t k, const Scalar& c)
{
    t[i * n + j].emplace_back(k, c);
}

Matrix diagonal(Field f, const std::vector<long>& entries)
{
    Matrix out(f, entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
        out(i, i) = Scalar(f, entries[i]);
    return out;
}

Field f5() { return make_field(FieldKind::prime, 4, 5); }

} // namespace

Algebra sl2(Field f)
{
    Table t = empty_table(3);
    const Scalar one(f, 1), two(f, 2);
    set(t, 3, 0, 2, 1, one);  // [e, f] = h
    set(t, 3, 2, 0, 1, -one); // [f, e] = -h
    set(t, 3, 1, 0, 0, two);  // [h, e] = 2e
    set(t, 3, 0, 1, 0, -two);
    set(t, 3, 1, 2, 2, -two); // [h, f] = -2f
    set(t, 3, 2, 1, 2, two);
    return Algebra(f, {"e", "h", "f"}, std::move(t));
}

Algebra sl2_graded(Field f)
{
    Table t = empty_table(3);
    const Scalar two(f, 2);
    set(t, 3, 0, 2, 1, two); // [k, x] = 2h
    set(t, 3, 2, 0, 1, -two);
    set(t, 3, 1, 0, 2, two); // [h, k] = 2x
    set(t, 3, 0, 1, 2, -two);
    set(t, 3, 1, 2, 0, two); // [h, x] = 2k
    set(t, 3, 2, 1, 0, -two);
    return Algebra(f, {"k", "h", "x"}, std::move(t));
}

Algebra dual_numbers(Field f)
{
    Table t = empty_table(2);
    const Scalar one(f, 1);
    set(t, 2, 0, 0, 0, one);
    set(t, 2, 0, 1, 1, one);
    set(t, 2, 1, 0, 1, one);
    return Algebra(f, {"1", "x"}, std::move(t));
}

Algebra group_algebra(Field f, std::size_t n)
{
    if (n == 0)
        throw Error(ErrorKind::DimensionMismatch, "group order must be positive");
    Table t = empty_table(n);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back("g^" + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j)
            set(t, n, i, j, (i + j) % n, Scalar::one(f));
    }
    return Algebra(f, std::move(names), std::move(t));
}

Algebra zero_algebra(Field f, std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("x" + std::to_string(i + 1));
    return Algebra(f, std::move(names), empty_table(n));
}

Algebra ground_field(Field f)
{
    Table t = empty_table(1);
    set(t, 1, 0, 0, 0, Scalar::one(f));
    return Algebra(f, {"1"}, std::move(t));
}

Matrix sl2_sign(Field f)
{
    return diagonal(f, {-1, 1, -1});
}

Matrix sl2_graded_involution(Field f)
{
    return diagonal(f, {1, -1, -1});
}

Algebra algebra(const std::string& name, Field f)
{
    static const std::regex one_arg(R"(([a-z-]+)\((\d+)\))");
    static const std::regex two_arg(R"(([a-z-]+)\((\d+),\s*(\d+)\))");
    std::smatch mt;
    if (name == "sl2")
        return sl2(f);
    if (name == "sl2-graded")
        return sl2_graded(f);
    if (name == "dual-numbers")
        return dual_numbers(f);
    if (name == "k")
        return ground_field(f);
    if (std::regex_match(name, mt, one_arg)) {
        const auto n = std::stoul(mt[2]);
        if (mt[1] == "group-algebra")
            return group_algebra(f, n);
        if (mt[1] == "zero")
            return zero_algebra(f, n);
    }
    if (std::regex_match(name, mt, two_arg) && mt[1] == "quotient-laurent")
        return quotient_laurent_algebra(f, std::stoul(mt[2]) * std::stoul(mt[3]));
    throw ParseError("unknown algebra '" + name + "'", 0);
}

std::vector<Entry> entries()
{
    return {
        {"sl2", "algebra", "sl2 with basis e, h, f"},
        {"sl2-graded", "algebra", "sl2 with basis k = e - f, h, x = e + f"},
        {"dual-numbers", "algebra", "k[x]/(x^2)"},
        {"group-algebra(n)", "algebra", "group algebra of Z_n"},
        {"zero(n)", "algebra", "n-dimensional algebra with zero product"},
        {"k", "algebra", "the ground field"},
        {"quotient-laurent(N,m)", "algebra", "k[z]/(z^(N m) - 1)"},
        {"sl2-twisted-flagship", "setup", "sl2 (x) Q[z]/(z^4 - 1), sigma1 = diag(-1, 1, -1), sigma2(z) = -z, m = 2, u = z"},
        {"sl2-graded-twisted", "setup", "sl2-graded (x) Q[z]/(z^4 - 1), sigma1 = diag(1, -1, -1), sigma2(z) = -z, m = 2, u = z"},
        {"sl2-untwisted", "setup", "sl2 (x) Q[x]/(x^2), sigma1 = sigma2 = id, m = 1"},
        {"sl2-f5-quotient", "setup", "sl2 (x) F5[z]/(z^4 - 1), sigma1 = diag(-1, 1, -1), sigma2(z) = 2z, m = 4, u = z"},
        {"k-f5-quotient-laurent", "setup", "k (x) F5[z]/(z^20 - 1), sigma2(z) = 2z, m = 4, u = z"},
        {"exaBM-laurent", "laurent", "k (x) k[z, z^-1], m = 4, u = z, d = restriction of z d/dz; earlier published formula"},
        {"last-exa-i", "laurent", "k (x) k[z, z^-1], m = 4, u = z, d = restriction of z d/dz; extension formula"},
        {"last-exa-ii", "laurent", "k (x) k[z, z^-1], inverse grading, u = z^-1, d = t^(n+1) d/dt with t = z^m"},
    };
}

bool is_setup(const std::string& name)
{
    for (const auto& e : entries())
        if (e.kind == "setup" && e.name == name)
            return true;
    return false;
}

bool is_laurent(const std::string& name)
{
    for (const auto& e : entries())
        if (e.kind == "laurent" && e.name == name)
            return true;
    return false;
}

SetupSpec setup(const std::string& name)
{
    SetupSpec spec;
    if (name == "sl2-twisted-flagship" || name == "sl2-graded-twisted") {
        const Field q = rationals();
        const bool graded = name == "sl2-graded-twisted";
        spec.a = graded ? sl2_graded(q) : sl2(q);
        spec.sigma1 = graded ? sl2_graded_involution(q) : sl2_sign(q);
        spec.s = quotient_laurent_algebra(q, 4);
        spec.sigma2 = quotient_laurent_automorphism(q, 4, 2, GradingStyle::forward);
        spec.m = 2;
        spec.q = 1;
        spec.u = unit_vec(q, 4, 1);
        return spec;
    }
    if (name == "sl2-untwisted") {
        const Field q = rationals();
        spec.a = sl2(q);
        spec.s = dual_numbers(q);
        spec.sigma1 = Matrix::identity(q, 3);
        spec.sigma2 = Matrix::identity(q, 2);
        spec.m = 1;
        spec.q = 0;
        return spec;
    }
    if (name == "sl2-f5-quotient" || name == "k-f5-quotient-laurent") {
        const Field f = f5();
        const bool small = name == "sl2-f5-quotient";
        const std::size_t modulus = small ? 4 : 20;
        spec.a = small ? sl2(f) : ground_field(f);
        spec.sigma1 = small ? sl2_sign(f) : Matrix::identity(f, 1);
        spec.s = quotient_laurent_algebra(f, modulus);
        spec.sigma2 = quotient_laurent_automorphism(f, modulus, 4, GradingStyle::forward);
        spec.m = 4;
        spec.q = 1;
        spec.u = unit_vec(f, modulus, 1);
        return spec;
    }
    throw ParseError("unknown setup '" + name + "'", 0);
}

namespace {

LaurentExample z_ddz_example(const std::string& description)
{
    const Field q = rationals();
    LaurentExample ex;
    ex.setup = make_loop_setup(ground_field(q), Matrix::identity(q, 1), 4, GradingStyle::forward, 1);
    ex.d = loop_derivation(ex.setup, {}, {{Matrix::identity(q, 1), {LaurentElement::monomial(q, 1)}}});
    const Vec one{Scalar::one(q)};
    for (long n : {5L, 3L, 2L})
        ex.targets.push_back(LoopElement::pure(one, n));
    ex.description = description;
    return ex;
}

} // namespace

LaurentExample exa_bm()
{
    return z_ddz_example("earlier published formula on k (x) k[z, z^-1], m = 4, u = z, d = z d/dz on the fixed points");
}

LaurentExample last_exa_i()
{
    return z_ddz_example("extension formula on k (x) k[z, z^-1], m = 4, u = z, d = z d/dz on the fixed points");
}

LaurentExample last_exa_ii(int m, long n, GradingStyle style)
{
    const Field q = rationals();
    LaurentExample ex;
    ex.setup = make_loop_setup(ground_field(q), Matrix::identity(q, 1), m, style,
                               style == GradingStyle::inverse ? -1 : 1);
    ex.d.on_basis = [q, m, n](std::size_t, long e) {
        // t^(n+1) d/dt on t^(e/m)
        if (e % m != 0)
            throw Error(ErrorKind::NotInDomain, "z^" + std::to_string(e) + " is not a power of t");
        LoopElement out(q, 1);
        out.add_part(e + n * m, Vec{Scalar::one(q)}, Scalar(q, e / m));
        return out;
    };
    const Vec one{Scalar::one(q)};
    for (long j = -2L * m; j <= 2L * m; ++j)
        ex.targets.push_back(LoopElement::pure(one, j));
    ex.description = "extension of t^(n+1) d/dt, t = z^m, " + to_string(style) + " grading, u = z^" +
                     std::to_string(ex.setup.u_exponent);
    return ex;
}

} // namespace dercent::catalog
