#include <benchmark/benchmark.h>

#include <random>

#include "bochner/clifford.hpp"
#include "bochner/curvature.hpp"

using namespace bochner;

namespace {

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = r; s < n; ++s) a(r, s) = a(s, r) = u(rng);
  return a;
}

Form random_form(int q, int p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(binomial(q, p)));
  for (auto& x : c) x = u(rng);
  return Form(q, p, std::move(c));
}

void BM_BochnerQuadratic(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const CurvatureOperator r(q, random_symmetric(static_cast<int>(binomial(q, 2)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(bochner_quadratic(r, q / 2).mat.data());
}
BENCHMARK(BM_BochnerQuadratic)->DenseRange(4, 8, 2);

void BM_BochnerDirect(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const CurvatureOperator r(q, random_symmetric(static_cast<int>(binomial(q, 2)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(bochner_direct(r, q / 2).mat.data());
}
BENCHMARK(BM_BochnerDirect)->DenseRange(4, 8, 2);

void BM_CanonicalForm(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const Eigen::MatrixXd a = random_symmetric(q, 2);
  Eigen::MatrixXd skew = a;
  for (int r = 0; r < q; ++r)
    for (int s = 0; s < q; ++s) skew(r, s) = r < s ? a(r, s) : (r > s ? -a(s, r) : 0.0);
  const ONeillTensor h(q, skew);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(h).b.data());
}
BENCHMARK(BM_CanonicalForm)->DenseRange(4, 10, 2);

void BM_BracketTwoForm(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const Form psi = random_form(q, 2, 3), w = random_form(q, q / 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(bracket_two_form(psi, w).coeffs().data());
}
BENCHMARK(BM_BracketTwoForm)->DenseRange(4, 10, 2);

}  // namespace

BENCHMARK_MAIN();
