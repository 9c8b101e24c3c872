#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <vector>

#include "event2vec/autoencoder.hpp"
#include "event2vec/eval.hpp"
#include "event2vec/proximity.hpp"
#include "event2vec/synth.hpp"

using namespace event2vec;

namespace {

SynthResult make_network(int events) {
    SynthSpec spec;
    spec.tmpl = SynthSpec::Template::random_net;
    spec.events = events;
    spec.sizes = {{"author", events}, {"venue", 8}, {"term", events / 2}};
    spec.seed = 1;
    return generate(spec);
}

void bm_event_generation(benchmark::State& state) {
    auto syn = make_network(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto events = generate_events(syn.hin, {syn.anchor_type});
        benchmark::DoNotOptimize(events);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(syn.hin.links().size()));
}
BENCHMARK(bm_event_generation)->Arg(100)->Arg(1000)->Arg(10000);

void bm_training_epoch(benchmark::State& state) {
    auto syn = make_network(static_cast<int>(state.range(0)));
    auto events = generate_events(syn.hin, {syn.anchor_type});
    auto m = build_incident_matrices(events, syn.hin);
    TrainConfig cfg;
    cfg.d = 32;
    cfg.epochs = 1;
    cfg.batch_size = 16;
    for (auto _ : state) {
        auto result = train(m, cfg);
        benchmark::DoNotOptimize(result);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(events.size()));
}
BENCHMARK(bm_training_epoch)->Arg(100)->Arg(500);

void bm_gradient(benchmark::State& state) {
    auto syn = make_network(200);
    auto events = generate_events(syn.hin, {syn.anchor_type});
    auto m = build_incident_matrices(events, syn.hin);
    TrainConfig cfg;
    cfg.d = static_cast<int>(state.range(0));
    auto params = init_params(m.type_sizes(), cfg.d, 1);
    std::vector<std::size_t> batch(16);
    std::iota(batch.begin(), batch.end(), std::size_t{0});
    for (auto _ : state) {
        auto g = gradients(params, m, batch, cfg);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(bm_gradient)->Arg(16)->Arg(64)->Arg(128);

void bm_pairwise_esp(benchmark::State& state) {
    auto syn = make_network(static_cast<int>(state.range(0)));
    auto events = generate_events(syn.hin, {syn.anchor_type});
    const auto& authors = syn.hin.nodes_of_type("author");
    for (auto _ : state) {
        double sum = 0.0;
        for (std::size_t i = 0; i < authors.size(); ++i)
            for (std::size_t j = i + 1; j < authors.size(); ++j) {
                if (events.events_of(authors[i]).empty() ||
                    events.events_of(authors[j]).empty())
                    continue;
                sum += esp(authors[i], authors[j], events);
            }
        benchmark::DoNotOptimize(sum);
    }
}
BENCHMARK(bm_pairwise_esp)->Arg(50)->Arg(200);

void bm_auc(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<double> pos(n), neg(n);
    for (auto& v : pos) v = static_cast<double>(rng() >> 11) * 0x1.0p-53 + 0.1;
    for (auto& v : neg) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    for (auto _ : state) benchmark::DoNotOptimize(auc(pos, neg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * n));
}
BENCHMARK(bm_auc)->Arg(1000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
