#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "claimdecomp/evalkit/matching.hpp"
#include "claimdecomp/evalkit/rouge.hpp"
#include "claimdecomp/retrieval/scorers.hpp"

namespace {

std::vector<std::string> random_texts(std::size_t count, std::size_t words, unsigned seed) {
    static const std::vector<std::string> vocab = {"tax", "rate", "rose", "jobs", "texas", "crime", "fell",
                                                   "law", "budget", "city", "police", "percent", "the", "in"};
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    std::vector<std::string> out(count);
    for (auto& t : out)
        for (std::size_t i = 0; i < words; ++i) t += (i ? " " : "") + vocab[pick(rng)];
    return out;
}

void BM_Hungarian(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    claimdecomp::Matrix m(n, n);
    for (auto& v : m.values) v = d(rng);
    for (auto _ : state) benchmark::DoNotOptimize(claimdecomp::hungarian_match(m).total);
}
BENCHMARK(BM_Hungarian)->Arg(5)->Arg(20)->Arg(100);

void BM_Bm25(benchmark::State& state) {
    const auto paragraphs = random_texts(static_cast<std::size_t>(state.range(0)), 60, 2);
    const auto hypotheses = random_texts(4, 10, 3);
    for (auto _ : state) benchmark::DoNotOptimize(claimdecomp::bm25_scores(paragraphs, hypotheses).scores().data());
}
BENCHMARK(BM_Bm25)->Arg(20)->Arg(200);

void BM_RougeL(benchmark::State& state) {
    const auto texts = random_texts(2, static_cast<std::size_t>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(claimdecomp::rouge_l(texts[0], texts[1]).f1);
}
BENCHMARK(BM_RougeL)->Arg(12)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
