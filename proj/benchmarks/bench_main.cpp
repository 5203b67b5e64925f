#include <random>

#include <benchmark/benchmark.h>

#include "bgi/bgi.hpp"

namespace {

using namespace bgi;

Bigraph free_triangle() {
  return from_pairwise({"a", "b", "c"}, {{{"a", "b"}, PairKind::Free}, {{"a", "c"}, PairKind::Monotone},
                                         {{"b", "c"}, PairKind::Tensor}});
}

Coloring cyclic_word(std::size_t k, std::size_t colors) {
  Coloring c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = (i * 7 + i / 3) % colors;
  return c;
}

void BM_EnumerateCompatible(benchmark::State& state) {
  const auto g = free_triangle();
  const auto c = cyclic_word(static_cast<std::size_t>(state.range(0)), 3);
  std::size_t count = 0;
  for (auto _ : state) {
    count = enumerate_compatible(c, g).size();
    benchmark::DoNotOptimize(count);
  }
  state.counters["partitions"] = static_cast<double>(count);
}
BENCHMARK(BM_EnumerateCompatible)->DenseRange(4, 10, 2);

void BM_JointMoment(benchmark::State& state) {
  const auto g = free_triangle();
  std::mt19937_64 rng(1);
  const auto problem = random_problem(g, static_cast<std::size_t>(state.range(0)), {3, 3, 3}, rng);
  const auto phi = problem_functional(problem);
  const auto basis = static_cast<CumulantKind>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(joint_moment(g, problem.word, phi, basis));
}
BENCHMARK(BM_JointMoment)->ArgsProduct({{4, 6, 8}, {0, 1, 2}});

void BM_ProductSpaceMoment(benchmark::State& state) {
  const auto g = free_triangle();
  std::mt19937_64 rng(2);
  const auto problem = random_problem(g, static_cast<std::size_t>(state.range(0)), {2, 2, 2}, rng);
  for (auto _ : state) {
    const auto space = ProductSpace::build(g, problem.states, problem.word.size());
    benchmark::DoNotOptimize(vacuum_moment(space, problem.word, problem.elements));
  }
}
BENCHMARK(BM_ProductSpaceMoment)->DenseRange(2, 6, 2);

void BM_WeingartenTable(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(WeingartenTable(k, 16).value_of_type(CycleType(k, 1)));
}
BENCHMARK(BM_WeingartenTable)->DenseRange(2, 7, 1);

SiteModel boolean_model() {
  return SiteModel::validate({"v", "w"}, {"a", "b", "c"}, {{0, 1}, {0, 2}}, {{2}, {1}});
}

void BM_ExactExpectation(benchmark::State& state) {
  const auto m = boolean_model();
  const auto n = static_cast<std::size_t>(state.range(0));
  const Coloring word = {0, 1, 0, 1};
  const auto gen = replicated_generator({Matrix::Identity(2, 2), Matrix(Eigen::Vector2cd(1.0, -1.0).asDiagonal())});
  const auto el = generate_elements(m, n, word, gen);
  for (auto _ : state) benchmark::DoNotOptimize(exact_expectation(m, n, word, el));
}
BENCHMARK(BM_ExactExpectation)->RangeMultiplier(2)->Range(4, 16)->Unit(benchmark::kMillisecond);

void BM_SampleMoment(benchmark::State& state) {
  const auto m = boolean_model();
  const auto n = static_cast<std::size_t>(state.range(0));
  const Coloring word = {0, 1, 0, 1};
  const auto gen = replicated_generator({Matrix(Eigen::Vector2cd(1.0, -1.0).asDiagonal())});
  const auto el = generate_elements(m, n, word, gen);
  std::mt19937_64 rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(sample_moment(m, n, word, el, rng));
}
BENCHMARK(BM_SampleMoment)->RangeMultiplier(2)->Range(4, 16)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
