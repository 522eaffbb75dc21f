// Serial vs parallel timings for the structure kernels on the three
// workload shapes that dominate solver time: projection onto a Hankel
// structure (dense overlapping bands), projection onto a completion
// structure (disjoint coordinates), and assembly of the normal/tangent
// interaction systems at a rank projection.
//
// Run with --benchmark_filter=... to select; OMP_NUM_THREADS controls the
// parallel variants. Both variants compute bitwise-identical outputs.

#include <benchmark/benchmark.h>

#include <vector>

#include "slra/kernels.hpp"
#include "slra/manifold.hpp"
#include "slra/rng.hpp"
#include "slra/structures.hpp"
#include "slra/subspace.hpp"

namespace {

using slra::AffineStructure;
using slra::CoordinateMask;
using slra::DenseMatrix;
using slra::RankProjection;
using slra::Rng;
using slra::kernels::Exec;

DenseMatrix random_matrix(int rows, int cols, Rng& rng) {
  DenseMatrix m(rows, cols);
  double* e = m.data();
  for (int k = 0; k < m.size(); ++k) e[k] = rng.gaussian();
  return m;
}

CoordinateMask random_mask(int size, double rate, Rng& rng) {
  CoordinateMask mask;
  mask.rows = size;
  mask.cols = size;
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      if (rng.uniform01() < rate)
        mask.observed.push_back({i, j, rng.gaussian()});
  return mask;
}

void bm_project_hankel(benchmark::State& state) {
  const Exec exec = state.range(0) ? Exec::parallel : Exec::serial;
  const int size = static_cast<int>(state.range(1));
  Rng rng(2024);
  const AffineStructure structure =
      slra::hankel_structure(size, size).structure();
  const DenseMatrix x = random_matrix(size, size, rng);
  for (auto _ : state) {
    DenseMatrix projected = structure.project_onto(x, exec);
    benchmark::DoNotOptimize(projected.data());
  }
}

void bm_project_completion(benchmark::State& state) {
  const Exec exec = state.range(0) ? Exec::parallel : Exec::serial;
  const int size = static_cast<int>(state.range(1));
  Rng rng(2025);
  const AffineStructure structure =
      slra::completion_structure(random_mask(size, 0.35, rng));
  const DenseMatrix x = random_matrix(size, size, rng);
  for (auto _ : state) {
    DenseMatrix projected = structure.project_onto(x, exec);
    benchmark::DoNotOptimize(projected.data());
  }
}

void bm_normal_system(benchmark::State& state) {
  const Exec exec = state.range(0) ? Exec::parallel : Exec::serial;
  const int deg = static_cast<int>(state.range(1));
  Rng rng(2026);
  const slra::SylvesterStructure sylvester(deg, deg, deg / 3);
  slra::PolyPair pair;
  pair.f.resize(deg + 1);
  pair.g.resize(deg + 1);
  for (double& c : pair.f) c = rng.uniform(-10.0, 10.0);
  for (double& c : pair.g) c = rng.uniform(-10.0, 10.0);
  const DenseMatrix m = sylvester.embed(pair);
  const RankProjection proj = RankProjection::compute(m, sylvester.target_rank());
  const slra::kernels::BasisView& basis = sylvester.structure().basis_view();
  DenseMatrix a(proj.normal_dim(), basis.count);
  std::vector<double> b;
  for (auto _ : state) {
    slra::kernels::assemble_normal_system(proj, basis, m, a, b, exec);
    benchmark::DoNotOptimize(a.data());
  }
}

void bm_tangent_system(benchmark::State& state) {
  const Exec exec = state.range(0) ? Exec::parallel : Exec::serial;
  const int size = static_cast<int>(state.range(1));
  const int rank = 4;
  Rng rng(2027);
  const AffineStructure structure =
      slra::completion_structure(random_mask(size, 0.35, rng));
  const DenseMatrix m = structure.base();
  const RankProjection proj = RankProjection::compute(m, rank);
  const slra::kernels::BasisView& complement = structure.complement_view();
  DenseMatrix a(complement.count, proj.tangent_dim());
  std::vector<double> b;
  for (auto _ : state) {
    slra::kernels::assemble_tangent_system(proj, complement, m, a, b, exec);
    benchmark::DoNotOptimize(a.data());
  }
}

}  // namespace

BENCHMARK(bm_project_hankel)
    ->ArgsProduct({{0, 1}, {120, 240}})
    ->ArgNames({"parallel", "size"})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_project_completion)
    ->ArgsProduct({{0, 1}, {120, 240}})
    ->ArgNames({"parallel", "size"})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_normal_system)
    ->ArgsProduct({{0, 1}, {36, 60}})
    ->ArgNames({"parallel", "deg"})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_tangent_system)
    ->ArgsProduct({{0, 1}, {60, 120}})
    ->ArgNames({"parallel", "size"})
    ->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
