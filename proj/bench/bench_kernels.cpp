// Serial reference against the OpenMP path for each parallel kernel.
// Arg 0 runs serially, arg 1 in parallel.

#include "approx/axioms.hpp"
#include "approx/ideal.hpp"
#include "approx/localization.hpp"
#include "approx/modules.hpp"
#include "approx/nullstellensatz.hpp"
#include "approx/spectrum.hpp"

#include <benchmark/benchmark.h>

using namespace approx;

namespace {

bool par(const benchmark::State& s) { return s.range(0) != 0; }

void BM_AxiomsExhaustive(benchmark::State& s) {
  auto cl = ClosureSpec::parse(Ring::residue(12), "setshift:J=4");
  auto carrier = Carrier::of_ring(cl.ring().finite());
  auto compiled = compile_closure(cl);
  CheckOptions opt;
  opt.parallel = par(s);
  for (auto _ : s)
    benchmark::DoNotOptimize(check_axioms_carrier(carrier, compiled, AxiomMode::exhaustive(), opt));
}
BENCHMARK(BM_AxiomsExhaustive)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TransferAxioms(benchmark::State& s) {
  auto z = Ring::integers();
  auto l = localize(ClosureSpec::parse(z, "shift:J=30"), parse_element_list(z, "2"), par(s));
  CheckOptions opt;
  opt.parallel = par(s);
  opt.pair_cap = std::uint64_t{1} << 30;
  for (auto _ : s) benchmark::DoNotOptimize(check_transfer_axioms(l, AxiomMode::exhaustive(), opt));
}
BENCHMARK(BM_TransferAxioms)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ZPrimeBrute(benchmark::State& s) {
  auto cl = ClosureSpec::parse(Ring::integers(), "shift:J=120");
  for (auto _ : s)
    for (std::uint64_t p : {2, 3, 5, 7})
      benchmark::DoNotOptimize(z_is_approx_prime_brute(cl, p, 2000, par(s)));
}
BENCHMARK(BM_ZPrimeBrute)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SpectrumFinite(benchmark::State& s) {
  auto ar = ApproxRing::of(ClosureSpec::parse(Ring::residue(60), "gen"));
  SpectrumOptions opt;
  opt.parallel = par(s);
  for (auto _ : s) benchmark::DoNotOptimize(spectrum(ar, opt));
}
BENCHMARK(BM_SpectrumFinite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Iso1(benchmark::State& s) {
  auto m = Module::parse("Z/24");
  auto am = ApproxModule::of(m, ModuleClosureSpec::parse(m, "shift:N=12"));
  ApproxHom f(am, am, ApproxHom::parse_table(am, am, "mul:3"));
  for (auto _ : s) benchmark::DoNotOptimize(iso1(f, std::nullopt, par(s)));
}
BENCHMARK(BM_Iso1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Esep(benchmark::State& s) {
  auto r = Ring::functions(2, 2);
  auto fc = FunctionClosure::of(ClosureSpec::parse(r, "pointwise"));
  auto ideals = enumerate_ideals(r.finite(), r.finite().size());
  for (auto _ : s) benchmark::DoNotOptimize(check_esep(fc, ideals, par(s)));
}
BENCHMARK(BM_Esep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
