#include <benchmark/benchmark.h>

#include "domgame/generators.hpp"
#include "domgame/solver.hpp"
#include "domgame/strategy.hpp"

using namespace domgame;

static void BM_GameValue(benchmark::State& state) {
    const Forest t = random_tree(static_cast<int>(state.range(0)), 2718);
    for (auto _ : state) benchmark::DoNotOptimize(game_dom_number(t, Player::Dominator).value);
}
BENCHMARK(BM_GameValue)->DenseRange(10, 20, 2)->Unit(benchmark::kMillisecond);

static void BM_GameValueSparse(benchmark::State& state) {
    const Forest t = random_tree(static_cast<int>(state.range(0)), 31);
    for (auto _ : state) benchmark::DoNotOptimize(game_dom_number(t, Player::Staller).value);
}
BENCHMARK(BM_GameValueSparse)->Arg(GameSolver::kDenseLimit + 2)->Arg(GameSolver::kDenseLimit + 6)
    ->Unit(benchmark::kMillisecond);

static void BM_EnumerateTrees(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_trees(static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_EnumerateTrees)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

static void BM_StrategyGame(benchmark::State& state) {
    const Forest f = random_forest(static_cast<int>(state.range(0)), 3, 5);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_game(f, StallerPolicy::random(), Player::Dominator, ++seed).turns());
}
BENCHMARK(BM_StrategyGame)->Arg(20)->Arg(40)->Arg(64);

static void BM_WorstCase(benchmark::State& state) {
    const Forest t = random_tree(static_cast<int>(state.range(0)), 99);
    for (auto _ : state) benchmark::DoNotOptimize(worst_case_turns(t, phased_policy(), Player::Dominator).turns);
}
BENCHMARK(BM_WorstCase)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
