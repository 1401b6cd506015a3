#include <benchmark/benchmark.h>

#include "dendriform/dend.hpp"
#include "dendriform/envelope.hpp"
#include "dendriform/scalg.hpp"
#include "dendriform/trees.hpp"

using namespace dendriform;

namespace {

// Sum of all basis trees of the given degree, the densest element there is.
DendElem full_sum(std::uint32_t p, int g, int degree) {
    DendElem out(p, g);
    for (const Tree& t : enumerate_trees(degree, g)) {
        out.add_term(t, FpScalar(1, p));
    }
    return out;
}

void BM_EnumerateTrees(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_trees(n, 1));
    }
    state.SetItemsProcessed(state.iterations() * tree_count(n, 1));
}
BENCHMARK(BM_EnumerateTrees)->DenseRange(4, 8);

void BM_StarProduct(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    DendElem x = full_sum(5, 1, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(star(x, x));
    }
}
BENCHMARK(BM_StarProduct)->DenseRange(1, 4);

void BM_StarPower(benchmark::State& state) {
    std::uint32_t p = static_cast<std::uint32_t>(state.range(0));
    DendElem y = DendElem::generator(p, 1, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(star_power(y, p));
    }
}
BENCHMARK(BM_StarPower)->Arg(2)->Arg(3)->Arg(5);

void BM_IdealClosure(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    PreLieData P(2, 1, {0});
    auto gens = relation_generators_U(P);
    for (auto _ : state) {
        TruncatedIdeal ideal(2, 1, d, gens);
        benchmark::DoNotOptimize(ideal.rank());
    }
}
BENCHMARK(BM_IdealClosure)->DenseRange(3, 6);

void BM_MembershipReduce(benchmark::State& state) {
    PreLieData P(2, 1, {0});
    TruncatedIdeal ideal(2, 1, 5, relation_generators_U(P));
    DendElem probe = full_sum(2, 1, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ideal.reduce(probe));
    }
}
BENCHMARK(BM_MembershipReduce);

void BM_MatrixFrobenius(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    SCAlgebra A = SCAlgebra::matrix_algebra(n, 3);
    FpVec x(A.dim(), 3);
    for (std::size_t i = 0; i < A.dim(); ++i) {
        x.set_raw(i, static_cast<std::uint32_t>(i % 3));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(A.frobenius(x));
    }
}
BENCHMARK(BM_MatrixFrobenius)->Arg(2)->Arg(3);

void BM_RotaBaxterCheck(benchmark::State& state) {
    SCAlgebra A = SCAlgebra::matrix_algebra(2, 2);
    LinearOperator beta = LinearOperator::zero(2, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_rota_baxter(A, beta).pass());
    }
}
BENCHMARK(BM_RotaBaxterCheck);

}  // namespace

BENCHMARK_MAIN();
