// Serial reference kernels against their OpenMP versions, plus a small
// Monte Carlo experiment at different thread counts.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <Eigen/Dense>

#include "hdtest/dists.hpp"
#include "hdtest/kernels.hpp"
#include "hdtest/rng.hpp"
#include "hdtest/simlab.hpp"

namespace {

using namespace hdtest;

Eigen::MatrixXd data(int n, int p) {
  RngStream rs(7, 0);
  return sample_matrix(StdNormal{}, n, p, rs);
}

void BM_ColumnMoments(benchmark::State& state) {
  const Eigen::MatrixXd x = data(200, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::column_moments(x));
}

void BM_ColumnMomentsReference(benchmark::State& state) {
  const Eigen::MatrixXd x = data(200, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::column_moments(x));
}

void BM_GramFrobenius(benchmark::State& state) {
  const Eigen::MatrixXd y = data(100, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::gram_frobenius_sq(y));
}

void BM_GramFrobeniusReference(benchmark::State& state) {
  const Eigen::MatrixXd y = data(100, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::gram_frobenius_sq(y));
}

void BM_ProjectOut(benchmark::State& state) {
  const Eigen::MatrixXd a = data(200, 5);
  const Eigen::MatrixXd x = data(200, static_cast<int>(state.range(0)));
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ() *
                            Eigen::MatrixXd::Identity(200, 5);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::project_out(q, x));
}

void BM_ProjectOutReference(benchmark::State& state) {
  const Eigen::MatrixXd a = data(200, 5);
  const Eigen::MatrixXd x = data(200, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::project_out_design(a, x));
}

// Table-1 style null experiment; the argument is the thread count.
void BM_OneSampleExperiment(benchmark::State& state) {
  SimConfig c;
  c.reps = 200;
  c.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c));
  state.counters["reps_per_s"] =
      benchmark::Counter(static_cast<double>(c.reps) * state.iterations(), benchmark::Counter::kIsRate);
}

BENCHMARK(BM_ColumnMoments)->Arg(200)->Arg(1000);
BENCHMARK(BM_ColumnMomentsReference)->Arg(200)->Arg(1000);
BENCHMARK(BM_GramFrobenius)->Arg(200)->Arg(600);
BENCHMARK(BM_GramFrobeniusReference)->Arg(200)->Arg(600);
BENCHMARK(BM_ProjectOut)->Arg(200)->Arg(600);
BENCHMARK(BM_ProjectOutReference)->Arg(200)->Arg(600);
BENCHMARK(BM_OneSampleExperiment)
    ->Arg(1)
    ->Arg(omp_get_num_procs() > 1 ? omp_get_num_procs() : 2)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
