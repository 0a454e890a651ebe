// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <set>

#include "detail.hpp"
#include "sracer/compiler.hpp"

namespace sracer {

namespace {

struct Fragment {
    StateId start;
    StateId final;
};

class Thompson {
public:
    Fragment build(const Srem& e)
    {
        switch (e.kind()) {
        case Srem::Kind::Empty: {
            // no path from start to final
            StateId s = b_.addState(), f = b_.addState();
            return {s, f};
        }
        case Srem::Kind::Epsilon: {
            StateId s = b_.addState(), f = b_.addState();
            b_.addEpsilon(s, f);
            return {s, f};
        }
        case Srem::Kind::Cond: {
            StateId s = b_.addState(), f = b_.addState();
            b_.addTransition(s, f, e.condition());
            return {s, f};
        }
        case Srem::Kind::CondWrite: {
            StateId s = b_.addState(), f = b_.addState();
            b_.addTransition(s, f, e.condition(), {e.target()});
            return {s, f};
        }
        case Srem::Kind::Concat: {
            Fragment l = build(e.left());
            Fragment r = build(e.right());
            b_.addEpsilon(l.final, r.start);
            return {l.start, r.final};
        }
        case Srem::Kind::Or: {
            StateId s = b_.addState();
            Fragment l = build(e.left());
            Fragment r = build(e.right());
            StateId f = b_.addState();
            b_.addEpsilon(s, l.start);
            b_.addEpsilon(s, r.start);
            b_.addEpsilon(l.final, f);
            b_.addEpsilon(r.final, f);
            return {s, f};
        }
        case Srem::Kind::Star: {
            StateId s = b_.addState();
            Fragment body = build(e.left());
            StateId f = b_.addState();
            b_.addEpsilon(s, body.start);
            b_.addEpsilon(s, f);
            b_.addEpsilon(body.final, body.start);
            b_.addEpsilon(body.final, f);
            return {s, f};
        }
        case Srem::Kind::Window:
            throw WindowedInput("compile does not take windowed expressions; use compileWindowed");
        }
        throw InvalidPattern("unknown expression kind");
    }

    Sra finish(const Srem& e)
    {
        Fragment f = build(e);
        b_.setStart(f.start);
        b_.addFinal(f.final);
        for (const auto& r : regTop(e))
            b_.addRegister(r);
        return b_.build();
    }

private:
    SraBuilder b_;
};

std::vector<StateId> epsilonClosure(const Sra& a, std::vector<StateId> seed)
{
    std::vector<bool> in(a.stateCount(), false);
    for (StateId q : seed)
        in[q] = true;
    for (std::size_t i = 0; i < seed.size(); ++i)
        for (const auto& t : a.outgoing(seed[i]))
            if (t.isEpsilon() && !in[t.target]) {
                in[t.target] = true;
                seed.push_back(t.target);
            }
    std::sort(seed.begin(), seed.end());
    return seed;
}

}  // namespace

Sra compile(const Srem& e)
{
    if (e.containsWindow())
        throw WindowedInput("compile does not take windowed expressions; use compileWindowed");
    return Thompson().finish(e);
}

Sra eliminateEpsilon(const Sra& a)
{
    if (!a.hasEpsilon())
        return a;
    // A closure is identified by its members that consume elements plus
    // whether it accepts; closures that agree on both behave alike.
    std::vector<bool> consumes(a.stateCount(), false);
    for (const auto& t : a.transitions())
        if (!t.isEpsilon())
            consumes[t.source] = true;
    using Key = std::pair<std::vector<StateId>, bool>;
    auto keyOf = [&](const std::vector<StateId>& closure) {
        Key k;
        for (StateId q : closure) {
            if (consumes[q])
                k.first.push_back(q);
            k.second = k.second || a.isFinal(q);
        }
        return k;
    };

    SraBuilder b;
    std::map<Key, StateId> ids;
    std::vector<Key> work;
    auto intern = [&](const std::vector<StateId>& closure) {
        Key k = keyOf(closure);
        auto [it, fresh] = ids.emplace(k, static_cast<StateId>(ids.size()));
        if (fresh) {
            std::string name = "{";
            for (std::size_t i = 0; i < closure.size(); ++i)
                name += (i ? "," : "") + a.stateName(closure[i]);
            b.addState(name + "}");
            if (k.second)
                b.addFinal(it->second);
            work.push_back(k);
        }
        return it->second;
    };
    b.setStart(intern(epsilonClosure(a, {a.start()})));
    for (std::size_t i = 0; i < work.size(); ++i) {
        Key k = work[i];
        StateId from = ids.at(k);
        std::vector<Transition> seen;
        for (StateId q : k.first)
            for (const auto& t : a.outgoing(q)) {
                if (t.isEpsilon())
                    continue;
                StateId to = intern(epsilonClosure(a, {t.target}));
                Transition nt{from, to, t.label, t.writes};
                if (std::find(seen.begin(), seen.end(), nt) != seen.end())
                    continue;
                seen.push_back(nt);
                b.addTransition(from, to, *t.label, t.writes);
            }
    }
    for (const auto& r : a.registers())
        b.addRegister(r);
    SraFlags flags = a.flags();
    flags.deterministic = false;
    return b.build(flags);
}

}  // namespace sracer
