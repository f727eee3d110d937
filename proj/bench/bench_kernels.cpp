#include <benchmark/benchmark.h>

#include <random>

#include "dercent/catalog.hpp"
#include "dercent/kernels.hpp"

using namespace dercent;

namespace {

Matrix random_matrix(Field f, std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
    Matrix m(f, n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            m(r, c) = f.kind() == FieldKind::rational ? Scalar(f, mpq_class(num(rng), den(rng))) : Scalar(f, num(rng));
    return m;
}

Field field_for(std::int64_t kind)
{
    return kind == 0 ? rationals() : make_field(FieldKind::prime, 4, 5);
}

/// Leibniz equations of sl2 (x) k[z]/(z^n - 1): the dominant solver workload.
std::vector<SparseRow> leibniz_system(Field f, std::size_t n)
{
    return derivation_equations(tensor_product(catalog::sl2(f), quotient_laurent_algebra(f, n)));
}

template <Matrix (*Mul)(const Matrix&, const Matrix&)>
void bm_multiply(benchmark::State& state)
{
    const Field f = field_for(state.range(1));
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_matrix(f, n, 1), b = random_matrix(f, n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(Mul(a, b));
}

template <Matrix (*RowSpace)(Field, std::size_t, std::span<const SparseRow>)>
void bm_row_space(benchmark::State& state)
{
    const Field f = field_for(state.range(1));
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto rows = leibniz_system(f, n);
    const std::size_t unknowns = 9 * n * n;
    for (auto _ : state)
        benchmark::DoNotOptimize(RowSpace(f, unknowns, rows));
    state.counters["equations"] = static_cast<double>(rows.size());
}

template <std::vector<SparseRow> (*Assemble)(std::size_t, const kernels::BlockGenerator&)>
void bm_assemble(benchmark::State& state)
{
    const Field f = field_for(state.range(1));
    const auto n = static_cast<std::size_t>(state.range(0));
    const Algebra a = tensor_product(catalog::sl2(f), quotient_laurent_algebra(f, n));
    const std::size_t d = a.dim();
    // block (i, j): coefficient of b_k in D(b_i b_j) - D(b_i) b_j - b_i D(b_j), unknown D(r, c) at r * d + c
    const kernels::BlockGenerator gen = [&](std::size_t block, std::vector<SparseRow>& out) {
        const std::size_t i = block / d, j = block % d;
        std::vector<SparseRow> rows(d);
        for (const auto& [k, c] : a.product(i, j))
            for (std::size_t r = 0; r < d; ++r)
                rows[r].emplace_back(r * d + k, c);
        for (std::size_t t = 0; t < d; ++t) {
            for (const auto& [k, c] : a.product(t, j))
                rows[k].emplace_back(t * d + i, -c);
            for (const auto& [k, c] : a.product(i, t))
                rows[k].emplace_back(t * d + j, -c);
        }
        for (auto& r : rows)
            if (!r.empty())
                out.push_back(std::move(r));
    };
    for (auto _ : state)
        benchmark::DoNotOptimize(Assemble(d * d, gen));
}

} // namespace

// second argument: 0 = Q, 1 = F5
BENCHMARK(bm_multiply<kernels::serial::multiply>)->Name("multiply/serial")->ArgsProduct({{16, 32, 64}, {0, 1}});
BENCHMARK(bm_multiply<kernels::omp::multiply>)->Name("multiply/omp")->ArgsProduct({{16, 32, 64}, {0, 1}});
BENCHMARK(bm_row_space<kernels::serial::row_space>)->Name("row_space/serial")->ArgsProduct({{2, 3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(bm_row_space<kernels::omp::row_space>)->Name("row_space/omp")->ArgsProduct({{2, 3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(bm_assemble<kernels::serial::assemble>)->Name("assemble/serial")->ArgsProduct({{2, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(bm_assemble<kernels::omp::assemble>)->Name("assemble/omp")->ArgsProduct({{2, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
