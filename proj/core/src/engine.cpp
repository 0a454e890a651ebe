// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <unordered_map>

#include "sracer/automaton.hpp"

namespace sracer {

StreamEngine::StreamEngine(std::shared_ptr<const Sra> automaton, EngineOptions options)
    : a_(std::move(automaton)), options_(options)
{
    if (!a_)
        throw InvalidAutomaton("stream engine needs an automaton");
    if (a_->hasEpsilon())
        throw InvalidAutomaton("stream engine needs an epsilon-free automaton");
    readSets_.resize(a_->stateCount());
    for (StateId q = 0; q < a_->stateCount(); ++q) {
        auto& rs = readSets_[q];
        for (const auto& t : a_->outgoing(q))
            for (const auto& r : t.label->registers())
                if (std::find(rs.begin(), rs.end(), r) == rs.end())
                    rs.push_back(r);
    }
    live_.push_back({a_->start(), Valuation{}});
    stats_.registers = a_->registers().size();
}

bool StreamEngine::emptyMatch() const
{
    return options_.reportEmptyMatch && a_->isFinal(a_->start());
}

std::optional<StateId> StreamEngine::currentState() const
{
    if (live_.size() != 1)
        return std::nullopt;
    return live_.front().first;
}

bool StreamEngine::step(const Event& t)
{
    ++consumed_;
    stats_ = StepStats{};
    stats_.registers = a_->registers().size();
    if (live_.empty())
        return false;
    return a_->isDeterministicFlag() ? stepDeterministic(t) : stepNondeterministic(t);
}

bool StreamEngine::stepDeterministic(const Event& t)
{
    auto& [q, v] = live_.front();
    auto out = a_->outgoing(q);
    stats_.outgoing = out.size();

    // Each register the state's conditions read is fetched once.
    const auto& reads = readSets_[q];
    std::vector<std::pair<const Register*, const Event*>> view;
    view.reserve(reads.size());
    for (const auto& r : reads) {
        view.push_back({&r, v.get(r)});
        ++stats_.registerReads;
    }
    RegisterResolver resolve = [&view](const Register& r) -> const Event* {
        for (const auto& [name, ev] : view)
            if (*name == r)
                return ev;
        return nullptr;
    };

    for (const auto& tr : out) {
        ++stats_.conditionEvaluations;
        if (!satisfies(*tr.label, t, resolve))
            continue;
        StateId next = tr.target;
        Valuation nv = tr.writes.empty() ? v : v.with(tr.writes, t);
        live_.front() = {next, std::move(nv)};
        return a_->isFinal(next);
    }
    live_.clear();
    return false;
}

bool StreamEngine::stepNondeterministic(const Event& t)
{
    std::vector<std::pair<StateId, Valuation>> next;
    // bucket index by (state, valuation) hash; collisions are resolved by comparison
    std::unordered_multimap<std::size_t, std::size_t> index;
    bool matched = false;
    for (const auto& [q, v] : live_) {
        for (const auto& tr : a_->outgoing(q)) {
            ++stats_.conditionEvaluations;
            if (!satisfies(*tr.label, t, v))
                continue;
            Valuation nv = tr.writes.empty() ? v : v.with(tr.writes, t);
            std::size_t h = hashCombine(tr.target, nv.hash());
            auto [lo, hi] = index.equal_range(h);
            bool dup = std::any_of(lo, hi, [&](const auto& e) {
                return next[e.second].first == tr.target && next[e.second].second == nv;
            });
            if (dup)
                continue;
            index.emplace(h, next.size());
            matched = matched || a_->isFinal(tr.target);
            next.push_back({tr.target, std::move(nv)});
            if (next.size() > options_.configurationCap)
                throw ConfigurationCapExceeded("live configuration set exceeded the cap of " +
                                               std::to_string(options_.configurationCap));
        }
    }
    live_ = std::move(next);
    return matched;
}

}  // namespace sracer
