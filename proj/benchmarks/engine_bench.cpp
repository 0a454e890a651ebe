// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "sracer/compiler.hpp"

namespace {

using namespace sracer;

const char* kPattern = R"(pred TypeIsT(x): x.type = "T"
pred TypeIsH(x): x.type = "H"
pred EqualId(x, y): x.id = y.id
(TypeIsT(~) -> r1) ; TRUE* ; (TypeIsH(~) & EqualId(~, r1))
)";

std::vector<Event> randomStream(std::size_t n, int ids)
{
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> type(0, 1), id(1, ids), value(0, 99);
    std::vector<Event> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(Event{{"type", std::string(type(rng) ? "H" : "T")},
                            {"id", std::int64_t{id(rng)}},
                            {"value", std::int64_t{value(rng)}}});
    return out;
}

void runEngine(benchmark::State& state, const Sra& a, const std::vector<Event>& events)
{
    std::size_t matches = 0;
    for (auto _ : state) {
        StreamEngine engine(std::make_shared<const Sra>(a));
        for (const auto& e : events)
            matches += engine.step(e);
    }
    benchmark::DoNotOptimize(matches);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * events.size()));
}

// Nondeterministic streaming automaton, no window: every stored reading with a
// distinct (id, value) stays live, so this one uses a shorter stream.
void BM_StreamNondeterministic(benchmark::State& state)
{
    Srem e = parsePatternFile(kPattern).expression;
    Sra a = compileStreaming(e);
    runEngine(state, a, randomStream(2000, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_StreamNondeterministic)->Arg(2)->Arg(16)->Arg(128);

// Banked deterministic automaton: one run, cost bounded per event.
void BM_StreamDeterministic(benchmark::State& state)
{
    Srem e = Srem::window(toStreaming(parsePatternFile(kPattern).expression), static_cast<std::size_t>(state.range(0)));
    Sra d = determinizeStreaming(e);
    runEngine(state, d, randomStream(10000, 16));
}
BENCHMARK(BM_StreamDeterministic)->Arg(2)->Arg(3);

// The same window recognized nondeterministically, for comparison.
void BM_StreamWindowedNondeterministic(benchmark::State& state)
{
    Srem e = Srem::window(toStreaming(parsePatternFile(kPattern).expression), static_cast<std::size_t>(state.range(0)));
    Sra a = compileStreaming(e);
    runEngine(state, a, randomStream(10000, 16));
}
BENCHMARK(BM_StreamWindowedNondeterministic)->Arg(2)->Arg(3);

}  // namespace
