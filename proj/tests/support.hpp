#pragma once

// Hand-rolled generators for the property tests. Every suite seeds its own
// engine so failures replay deterministically.

#include <random>
#include <vector>

#include "dercent/exactla.hpp"
#include "dercent/scalars.hpp"

namespace dercent::testing {

inline Scalar random_scalar(std::mt19937_64& rng, Field f, int spread = 5)
{
    std::uniform_int_distribution<long> num(-spread, spread);
    std::uniform_int_distribution<long> den(1, 3);
    switch (f.kind()) {
    case FieldKind::rational: return Scalar(f, mpq_class(num(rng), den(rng)));
    case FieldKind::prime: return Scalar(f, num(rng));
    case FieldKind::cyclotomic: {
        std::vector<mpq_class> coeffs;
        for (std::size_t t = 0; t < f.degree(); ++t)
            coeffs.emplace_back(num(rng), den(rng));
        return Scalar::from_coefficients(f, coeffs);
    }
    }
    return Scalar(f);
}

inline Scalar random_nonzero(std::mt19937_64& rng, Field f)
{
    for (;;) {
        Scalar s = random_scalar(rng, f);
        if (!s.is_zero())
            return s;
    }
}

/// Sparse-ish random vector: each entry is zero with probability 1/2.
inline Vec random_vec(std::mt19937_64& rng, Field f, std::size_t n)
{
    Vec v;
    std::bernoulli_distribution keep(0.5);
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(keep(rng) ? random_scalar(rng, f) : Scalar::zero(f));
    return v;
}

inline Matrix random_matrix(std::mt19937_64& rng, Field f, std::size_t rows, std::size_t cols)
{
    std::vector<Vec> r;
    for (std::size_t i = 0; i < rows; ++i)
        r.push_back(random_vec(rng, f, cols));
    return Matrix::from_rows(f, cols, r);
}

/// Random matrix of bounded rank: product of random rows x k and k x cols.
inline Matrix random_low_rank(std::mt19937_64& rng, Field f, std::size_t rows, std::size_t cols, std::size_t k)
{
    return random_matrix(rng, f, rows, k) * random_matrix(rng, f, k, cols);
}

inline Subspace random_subspace(std::mt19937_64& rng, Field f, std::size_t n, std::size_t max_gens)
{
    std::uniform_int_distribution<std::size_t> count(0, max_gens);
    std::vector<Vec> gens;
    const std::size_t k = count(rng);
    for (std::size_t i = 0; i < k; ++i)
        gens.push_back(random_vec(rng, f, n));
    return Subspace::span(f, n, gens);
}

inline std::vector<Field> all_field_kinds()
{
    return {rationals(), make_field(FieldKind::cyclotomic, 4), make_field(FieldKind::cyclotomic, 3),
            make_field(FieldKind::prime, 4, 5), make_field(FieldKind::prime, 3, 7)};
}

} // namespace dercent::testing
