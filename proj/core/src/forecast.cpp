// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "sracer/forecast.hpp"

namespace sracer {

std::string symbolName(Symbol s)
{
    if (s < 26)
        return std::string(1, static_cast<char>('a' + s));
    return "s" + std::to_string(s);
}

std::optional<Symbol> parseSymbolName(std::string_view name)
{
    if (name.size() == 1 && name[0] >= 'a' && name[0] <= 'z')
        return static_cast<Symbol>(name[0] - 'a');
    if (name.size() < 2 || name[0] != 's')
        return std::nullopt;
    Symbol v = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), v);
    if (ec != std::errc() || ptr != name.data() + name.size() || v < 26)
        return std::nullopt;
    return v;
}

SymbolMap::SymbolMap(std::vector<Condition> labels) : labels_(std::move(labels))
{
    for (std::size_t i = 0; i < labels_.size(); ++i)
        for (std::size_t j = i + 1; j < labels_.size(); ++j)
            if (labels_[i] == labels_[j])
                throw Error("symbol map labels must be distinct");
}

SymbolMap SymbolMap::fromAutomaton(const Sra& d)
{
    std::vector<Condition> labels;
    for (const auto& t : d.transitions())
        if (!t.isEpsilon() && std::find(labels.begin(), labels.end(), *t.label) == labels.end())
            labels.push_back(*t.label);
    return SymbolMap(std::move(labels));
}

std::optional<Symbol> SymbolMap::symbolOf(const Condition& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        return std::nullopt;
    return static_cast<Symbol>(it - labels_.begin());
}

std::vector<Symbol> symbolize(const Sra& d, const SymbolMap& map, std::span<const Event> s)
{
    if (!d.isDeterministicFlag())
        throw NotDeterministic("symbolization needs a deterministic automaton");
    std::vector<Symbol> out;
    out.reserve(s.size());
    StateId q = d.start();
    Valuation v;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Transition* taken = nullptr;
        for (const auto& t : d.outgoing(q))
            if (satisfies(*t.label, s[i], v)) {
                taken = &t;
                break;
            }
        if (!taken)
            throw NoTransition("no transition out of " + d.stateName(q) + " for element " + std::to_string(i + 1) +
                               " " + s[i].toString());
        auto sym = map.symbolOf(*taken->label);
        if (!sym)
            throw NoTransition("label " + taken->label->toString() + " has no symbol");
        out.push_back(*sym);
        if (!taken->writes.empty())
            v = v.with(taken->writes, s[i]);
        q = taken->target;
    }
    return out;
}

SymbolicDfa::SymbolicDfa(const Sra& d, const SymbolMap& map)
    : start_(d.start()), alphabet_(map.size()), final_(d.stateCount()), delta_(d.stateCount()),
      enabled_(d.stateCount())
{
    for (StateId q = 0; q < d.stateCount(); ++q) {
        final_[q] = d.isFinal(q);
        for (const auto& t : d.outgoing(q)) {
            if (t.isEpsilon())
                throw InvalidAutomaton("a symbolic automaton cannot have epsilon transitions");
            auto sym = map.symbolOf(*t.label);
            if (!sym)
                throw Error("label " + t.label->toString() + " has no symbol");
            if (!delta_[q].emplace(*sym, t.target).second)
                throw NotDeterministic("two transitions out of " + d.stateName(q) + " carry the same label");
        }
        for (const auto& [sym, _] : delta_[q])
            enabled_[q].push_back(sym);
    }
}

std::optional<StateId> SymbolicDfa::next(StateId q, Symbol s) const
{
    auto it = delta_[q].find(s);
    if (it == delta_[q].end())
        return std::nullopt;
    return it->second;
}

namespace {

// Every chronological prefix of every context. A history only matters
// through its longest suffix in this set.
std::set<Context> contextPrefixes(const Pst& t)
{
    std::set<Context> out;
    for (const auto& c : t.contexts())
        for (std::size_t len = 0; len <= c.size(); ++len)
            out.emplace(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(len));
    return out;
}

Context historyKey(const std::set<Context>& prefixes, const Context& h)
{
    for (std::size_t len = h.size();; --len) {
        Context suffix(h.end() - static_cast<std::ptrdiff_t>(len), h.end());
        if (prefixes.count(suffix))
            return suffix;
        if (len == 0)
            return {};
    }
}

}  // namespace

WaitingTimeDistribution waitingTime(const SymbolicDfa& dfa, const Pst& t, StateId state, const Context& context,
                                    const WaitingTimeOptions& options)
{
    if (options.horizon == 0)
        throw Error("the horizon must be at least one step");
    if (state >= dfa.stateCount())
        throw Error("state out of range");
    if (t.alphabetSize() < dfa.alphabetSize())
        throw Error("the tree's alphabet is smaller than the automaton's");

    const auto prefixes = contextPrefixes(t);
    WaitingTimeDistribution wd;
    wd.state = state;
    wd.context = context;
    wd.masses.assign(options.horizon, 0.0);

    std::map<std::pair<StateId, Context>, double> frontier;
    frontier[{state, historyKey(prefixes, context)}] = 1.0;
    for (std::size_t n = 1; n <= options.horizon && !frontier.empty(); ++n) {
        std::map<std::pair<StateId, Context>, double> next;
        for (const auto& [node, mass] : frontier) {
            const auto& [q, key] = node;
            const auto& enabled = dfa.enabled(q);
            if (enabled.empty())
                continue;  // no way on; the mass ends up in the residual
            const auto& p = t.predict(key);
            double norm = 0.0;
            for (Symbol s : enabled)
                norm += p[s];
            for (Symbol s : enabled) {
                double ps = norm > 0.0 ? p[s] / norm : 1.0 / static_cast<double>(enabled.size());
                double m = mass * ps;
                StateId to = *dfa.next(q, s);
                if (dfa.isFinal(to)) {
                    wd.masses[n - 1] += m;
                    continue;
                }
                if (m < options.floor || n == options.horizon)
                    continue;
                Context h = key;
                h.push_back(s);
                next[{to, historyKey(prefixes, h)}] += m;
            }
        }
        frontier = std::move(next);
    }
    double total = 0.0;
    for (double m : wd.masses)
        total += m;
    wd.residual = std::max(0.0, 1.0 - total);
    return wd;
}

WaitingTimeDistribution waitingTime(const Sra& d, const SymbolMap& map, const Pst& t, StateId state,
                                    const Context& context, const WaitingTimeOptions& options)
{
    if (!d.isDeterministicFlag())
        throw NotDeterministic("waiting times need a deterministic automaton");
    if (!d.flags().complete)
        throw NotComplete("waiting times need a complete automaton");
    return waitingTime(SymbolicDfa(d, map), t, state, context, options);
}

std::size_t forecastRegression(const WaitingTimeDistribution& wd)
{
    if (wd.masses.empty())
        throw Error("empty waiting-time distribution");
    return static_cast<std::size_t>(std::max_element(wd.masses.begin(), wd.masses.end()) - wd.masses.begin()) + 1;
}

Classification forecastClassification(const WaitingTimeDistribution& wd, std::size_t w, double threshold)
{
    if (w == 0 || w > wd.masses.size())
        throw Error("forecast window must lie within the horizon");
    if (threshold < 0.0 || threshold > 1.0)
        throw Error("threshold must lie in [0, 1]");
    double sum = 0.0;
    for (std::size_t n = 0; n < w; ++n)
        sum += wd.masses[n];
    return sum >= threshold ? Classification::Positive : Classification::Negative;
}

}  // namespace sracer
