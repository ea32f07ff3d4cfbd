#include <benchmark/benchmark.h>

#include <random>

#include "tiltkit/closure.hpp"
#include "tiltkit/tilt.hpp"
#include "tiltkit/witt.hpp"

using namespace tiltkit;

namespace {

RingElem rand_elem(std::mt19937_64& rng, const RingCtxPtr& ctx) {
    std::vector<uint64_t> v(ctx->deg);
    for (auto& x : v) x = rng() % ctx->pM;
    return RingElem(ctx, std::move(v));
}

TiltElem chain(const RingElem& deepest, uint32_t depth) {
    std::vector<RingElem> seq(depth + 1, deepest);
    for (uint32_t n = depth; n-- > 0;) seq[n] = seq[n + 1].pow(deepest.ctx()->p);
    return TiltElem{deepest.ctx(), std::move(seq), deepest.ctx()->M};
}

void BM_KummerMul(benchmark::State& state) {
    RingCtxPtr ctx = make_kummer(3, 6, static_cast<uint32_t>(state.range(0)));
    std::mt19937_64 rng(1);
    RingElem a = rand_elem(rng, ctx), b = rand_elem(rng, ctx);
    for (auto _ : state) {
        benchmark::DoNotOptimize(a * b);
    }
}
BENCHMARK(BM_KummerMul)->Arg(1)->Arg(2)->Arg(3);

void BM_LimitPthPowers(benchmark::State& state) {
    RingCtxPtr ctx = make_zmod(3, static_cast<uint32_t>(state.range(0)));
    std::mt19937_64 rng(2);
    RingElem deep = rand_elem(rng, ctx);
    std::vector<RingElem> approx(ctx->M, deep);
    for (uint32_t n = static_cast<uint32_t>(approx.size()) - 1; n-- > 0;)
        approx[n] = approx[n + 1].pow(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(limit_pth_powers(ctx, approx));
    }
}
BENCHMARK(BM_LimitPthPowers)->Arg(3)->Arg(6);

void BM_TiltAdd(benchmark::State& state) {
    RingCtxPtr ctx = make_kummer(3, 4, 2);
    std::mt19937_64 rng(3);
    TiltElem x = chain(rand_elem(rng, ctx), 5), y = chain(rand_elem(rng, ctx), 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tilt_add(x, y));
    }
}
BENCHMARK(BM_TiltAdd);

void BM_Teichmuller(benchmark::State& state) {
    WittCtx w = make_witt_ctx(static_cast<uint64_t>(state.range(0)), 6);
    RingElem a = elem_from_index(w.residue_field, 1 % w.q + 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(teichmuller(a, w));
    }
}
BENCHMARK(BM_Teichmuller)->Arg(9)->Arg(25)->Arg(81);

void BM_SemigroupMembership(benchmark::State& state) {
    MonomialRing ring(5, 0, {6, 9, 20});
    long long e = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ring.contains(e));
        e = (e + 7) % 1000;
    }
}
BENCHMARK(BM_SemigroupMembership);

void BM_SharpImageRootCount(benchmark::State& state) {
    WittCtx w = make_witt_ctx(5, 4);
    RingElem a = teichmuller(RingElem::from_int(w.residue_field, 2), w);
    for (auto _ : state) {
        benchmark::DoNotOptimize(unique_p_root_in_sharp_image(a, w));
    }
}
BENCHMARK(BM_SharpImageRootCount);

} // namespace

BENCHMARK_MAIN();
