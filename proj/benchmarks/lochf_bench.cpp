#include <benchmark/benchmark.h>

#include <memory>

#include "lochf/eisops/operators.hpp"
#include "lochf/grmod/graded.hpp"
#include "lochf/homalg/resolution.hpp"
#include "lochf/locring/hilbert.hpp"
#include "lochf/numsgp/semigroup.hpp"

using namespace lochf;
using exactla::FieldSpec;
using locring::ModulePresentation;
using locring::QuotientPresentation;
using locring::RingSpec;

namespace {

std::shared_ptr<const QuotientPresentation> quotient(std::vector<std::string> vars, std::uint32_t d,
                                                     const std::vector<std::string>& rels) {
  return std::make_shared<const QuotientPresentation>(
      QuotientPresentation::parse(RingSpec{std::move(vars), d, FieldSpec::rationals()}, rels));
}

void BM_SemigroupHf(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(numsgp::semigroup_hf({6, 7, 15}, n));
}
BENCHMARK(BM_SemigroupHf)->Arg(9)->Arg(30)->Arg(100);

void BM_LocalHf(benchmark::State& state) {
  const auto d = static_cast<std::uint32_t>(state.range(0));
  const auto a = quotient({"X", "Y", "Z"}, d, {"Y^3 - X*Z", "X^5 - Z^2"});
  const auto m = ModulePresentation::free(a, 1);
  for (auto _ : state) benchmark::DoNotOptimize(locring::hilbert_function(m, d - 2));
}
BENCHMARK(BM_LocalHf)->Arg(10)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_GradedHf(benchmark::State& state) {
  const auto g = grmod::GradedQuotient::parse({"X", "Y", "Z"}, FieldSpec::rationals(),
                                              {"X*Z", "Y^6", "Y^3*Z", "Z^2"});
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grmod::graded_hf(g, n));
}
BENCHMARK(BM_GradedHf)->Arg(9)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_BettiResidueField(benchmark::State& state) {
  const auto d = static_cast<std::uint32_t>(state.range(0));
  const auto a = quotient({"x", "y"}, d, {"x^2 - y^3", "x*y"});
  const auto k = ModulePresentation::residue_field(a);
  for (auto _ : state) benchmark::DoNotOptimize(homalg::betti_table(k, 6, d));
}
BENCHMARK(BM_BettiResidueField)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_EisenbudOperators(benchmark::State& state) {
  const auto a = quotient({"x", "y"}, 10, {"x^2", "y^2"});
  const auto c = homalg::resolution_complex(ModulePresentation::residue_field(a), 5, 10);
  for (auto _ : state) {
    const auto l = eisops::lift_complex(c);
    benchmark::DoNotOptimize(eisops::solve_operators(l));
  }
}
BENCHMARK(BM_EisenbudOperators)->Unit(benchmark::kMillisecond);

void BM_MonotonicityScan(benchmark::State& state) {
  numsgp::ScanConstraints c;
  c.min_embdim = 3;
  c.max_embdim = 3;
  c.max_multiplicity = 8;
  c.max_frobenius = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(numsgp::monotonicity_scan(c));
}
BENCHMARK(BM_MonotonicityScan)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
