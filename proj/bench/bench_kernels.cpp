// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "rho/aggregation.hpp"
#include "rho/criterion.hpp"
#include "rho/kernels.hpp"
#include "rho/model_zoo.hpp"
#include "rho/rng.hpp"

namespace {

using namespace rho;

Sample gaussian_sample(std::size_t n) {
  CounterRng rng(2024, 0);
  std::vector<double> x(n);
  for (double& v : x) v = rng.normal();
  return Sample::scalars(std::move(x));
}

DensityFamily location_grid(std::size_t entries, std::size_t n) {
  const double step = 4.0 / static_cast<double>(entries - 1);
  return build_gaussian_location_grid(-2.0, 2.0 + 0.5 * step, step, 1.0, n).family;
}

void BM_EvaluateFamily(benchmark::State& st, Exec exec) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const Sample X = gaussian_sample(n);
  const DensityFamily fam = location_grid(81, n);
  for (auto _ : st) {
    auto L = exec == Exec::serial ? kernels::evaluate_family_serial(fam, X)
                                  : kernels::evaluate_family_parallel(fam, X);
    benchmark::DoNotOptimize(L);
  }
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * fam.size() * n));
}

void BM_Upsilon(benchmark::State& st, Exec exec) {
  const auto entries = static_cast<std::size_t>(st.range(0));
  const std::size_t n = 500;
  const Sample X = gaussian_sample(n);
  const DensityFamily fam = location_grid(entries, n);
  const LogDensityMatrix L = kernels::evaluate_family_serial(fam, X);
  const std::vector<double> pen(fam.size(), 0.0);
  const PsiKernel k = kernel_constants(PsiId::psi2);
  for (auto _ : st) {
    auto u = exec == Exec::serial ? kernels::upsilon_serial(L, pen, k)
                                  : kernels::upsilon_parallel(L, pen, k);
    benchmark::DoNotOptimize(u);
  }
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * fam.size() * fam.size() * n));
}

void BM_TMix(benchmark::State& st, Exec exec) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const Sample X = gaussian_sample(n);
  std::vector<ProductDensity> cands;
  for (double m : {-1.0, 0.0, 0.7, 2.0}) cands.push_back(ProductDensity::iid(Density1D::gaussian(m, 1.0), n));
  const CandidateSet cs(std::move(cands), X);
  const SimplexPoint a = SimplexPoint::uniform(4);
  const SimplexPoint b{{0.1, 0.6, 0.2, 0.1}};
  const PsiKernel k = kernel_constants(PsiId::psi2);
  for (auto _ : st) benchmark::DoNotOptimize(t_mix(cs, a, b, k, exec));
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * n));
}

}  // namespace

BENCHMARK_CAPTURE(BM_EvaluateFamily, serial, rho::Exec::serial)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_EvaluateFamily, parallel, rho::Exec::parallel)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_Upsilon, serial, rho::Exec::serial)->Arg(21)->Arg(81);
BENCHMARK_CAPTURE(BM_Upsilon, parallel, rho::Exec::parallel)->Arg(21)->Arg(81);
BENCHMARK_CAPTURE(BM_TMix, serial, rho::Exec::serial)->Arg(1000)->Arg(100000);
BENCHMARK_CAPTURE(BM_TMix, parallel, rho::Exec::parallel)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
