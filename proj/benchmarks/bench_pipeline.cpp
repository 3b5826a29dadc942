#include <benchmark/benchmark.h>

#include <random>

#include "cubmap/io.hpp"
#include "cubmap/sphere_builder.hpp"
#include "cubmap/triarc.hpp"
#include "cubmap/verify.hpp"

namespace {

using namespace cubmap;

const CombMap& tetra_sphere() {
  static CombMap m = build_sphere({FaceVector{{3, 4}}, 0}).first;
  return m;
}

void BM_BuildSphereTetra(benchmark::State& st) {
  for (auto _ : st) {
    auto [m, rep] = build_sphere({FaceVector{{3, 4}}, 0});
    benchmark::DoNotOptimize(m.live_darts());
  }
}
BENCHMARK(BM_BuildSphereTetra)->Unit(benchmark::kMillisecond);

void BM_AssembleT(benchmark::State& st) {
  for (auto _ : st) {
    Triarc t = assemble_T(FaceVector{{3, 4}});
    benchmark::DoNotOptimize(t.m.live_darts());
  }
}
BENCHMARK(BM_AssembleT)->Unit(benchmark::kMillisecond);

void BM_FillTriarc(benchmark::State& st) {
  auto n = static_cast<std::int64_t>(st.range(0));
  for (auto _ : st) {
    Triarc t = fill_triarc(n);
    benchmark::DoNotOptimize(t.m.live_darts());
  }
}
BENCHMARK(BM_FillTriarc)->Arg(8)->Arg(16)->Arg(24)->Unit(
    benchmark::kMillisecond);

void BM_FaceCensus(benchmark::State& st) {
  const CombMap& m = tetra_sphere();
  for (auto _ : st) {
    FaceVector c = m.face_census();
    benchmark::DoNotOptimize(c.size());
  }
}
BENCHMARK(BM_FaceCensus)->Unit(benchmark::kMillisecond);

void BM_Connectivity(benchmark::State& st) {
  const CombMap& m = tetra_sphere();
  for (auto _ : st) benchmark::DoNotOptimize(connectivity(m));
}
BENCHMARK(BM_Connectivity)->Unit(benchmark::kMillisecond);

void BM_SerializeParse(benchmark::State& st) {
  const CombMap& m = tetra_sphere();
  for (auto _ : st) {
    ParsedMap round = parse(serialize(m));
    benchmark::DoNotOptimize(round.map.live_darts());
  }
}
BENCHMARK(BM_SerializeParse)->Unit(benchmark::kMillisecond);

void BM_CanonicalForm(benchmark::State& st) {
  const CombMap& m = tetra_sphere();
  for (auto _ : st) {
    std::vector<std::int32_t> c = canonical_form(m);
    benchmark::DoNotOptimize(c.size());
  }
}
BENCHMARK(BM_CanonicalForm)->Unit(benchmark::kMillisecond);

void BM_FlipChurn(benchmark::State& st) {
  CombMap m = tetra_sphere();
  std::mt19937 rng(12345);
  std::uniform_int_distribution<Dart> pick(0, m.dart_limit() - 1);
  for (auto _ : st) {
    int done = 0;
    while (done < 64) {
      Dart d = pick(rng);
      try {
        m.flip_edge(d);
        ++done;
      } catch (const std::invalid_argument&) {
      }
    }
    benchmark::DoNotOptimize(done);
  }
}
BENCHMARK(BM_FlipChurn)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
