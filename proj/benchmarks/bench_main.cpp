#include <benchmark/benchmark.h>

#include <polyframe/frames.hpp>
#include <polyframe/generators.hpp>
#include <polyframe/io.hpp>
#include <polyframe/lp.hpp>
#include <polyframe/realization.hpp>
#include <polyframe/reduction.hpp>

#include <random>

using namespace polyframe;

static void BM_UpReductionScott(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto p = with_root(random_poset(static_cast<std::size_t>(state.range(0)), 0.3, rng));
  auto target = builtin_frame("scott");
  for (auto _ : state) benchmark::DoNotOptimize(find_up_reduction(p, target));
}
BENCHMARK(BM_UpReductionScott)->Arg(6)->Arg(10)->Arg(14);

static void BM_FrameValidates(benchmark::State& state) {
  std::mt19937_64 rng(2);
  auto p = random_poset(static_cast<std::size_t>(state.range(0)), 0.4, rng);
  auto f = parse_formula("((p -> q) -> p) -> p");
  for (auto _ : state) benchmark::DoNotOptimize(frame_validates(p, f));
}
BENCHMARK(BM_FrameValidates)->Arg(4)->Arg(6)->Arg(8);

// Dense feasibility LP of the shape used by convex membership.
static void BM_ExactLp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coeff(-5, 5);
  LinearProgram lp(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n);
    for (auto& c : row) c = coeff(rng);
    lp.add_constraint(row, Relation::LessEqual, Rational(10));
  }
  lp.add_constraint(std::vector<Rational>(n, Rational(1)), Relation::LessEqual, Rational(20));
  lp.set_objective(std::vector<Rational>(n, Rational(1)));
  for (auto _ : state) benchmark::DoNotOptimize(lp.maximize());
}
BENCHMARK(BM_ExactLp)->Arg(4)->Arg(8)->Arg(16);

static void BM_ReduceToSawedTree(benchmark::State& state) {
  std::mt19937_64 rng(4);
  auto p = random_pl_frame(static_cast<int>(state.range(0)), 12, rng);
  for (auto _ : state) benchmark::DoNotOptimize(reduce_to_sawed_tree(p));
  state.counters["elements"] = static_cast<double>(p.size());
}
BENCHMARK(BM_ReduceToSawedTree)->DenseRange(2, 4);

static void BM_RealizeHeightThree(benchmark::State& state) {
  auto st = io::sawed_tree_from_json(io::read_json_file(POLYFRAME_DATA_DIR "/height3.json"));
  for (auto _ : state) benchmark::DoNotOptimize(realize_sawed_tree(st));
}
BENCHMARK(BM_RealizeHeightThree)->Unit(benchmark::kMillisecond);

static void BM_RealizeAndVerify(benchmark::State& state) {
  std::mt19937_64 rng(5);
  auto st = random_sawed_tree(static_cast<int>(state.range(0)), 2, rng);
  for (auto _ : state) {
    auto r = realize_sawed_tree(st);
    benchmark::DoNotOptimize(verify_realization(r, {20, 1}));
  }
  state.counters["elements"] = static_cast<double>(st.frame().size());
}
BENCHMARK(BM_RealizeAndVerify)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
