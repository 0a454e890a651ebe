// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <set>

#include "detail.hpp"
#include "sracer/compiler.hpp"

namespace sracer {

namespace detail {

Sra powerset(const Sra& a, SraFlags flags)
{
    SraBuilder b;
    for (const auto& r : a.registers())
        b.addRegister(r);
    std::map<std::vector<StateId>, StateId> ids;
    std::vector<std::vector<StateId>> work;
    auto intern = [&](std::vector<StateId> set) {
        auto [it, fresh] = ids.emplace(set, static_cast<StateId>(ids.size()));
        if (fresh) {
            std::string name = "{";
            bool final = false;
            for (std::size_t i = 0; i < set.size(); ++i) {
                name += (i ? "," : "") + a.stateName(set[i]);
                final = final || a.isFinal(set[i]);
            }
            b.addState(name + "}");
            if (final)
                b.addFinal(it->second);
            work.push_back(std::move(set));
        }
        return it->second;
    };
    b.setStart(intern({a.start()}));
    for (std::size_t i = 0; i < work.size(); ++i) {
        const std::vector<StateId> set = work[i];
        StateId from = ids.at(set);
        std::vector<const Transition*> out;
        for (StateId q : set)
            for (const auto& t : a.outgoing(q))
                out.push_back(&t);
        if (out.empty())
            continue;
        for (const auto& m : mintermFamily(distinctLabels(out))) {
            std::set<StateId> targets;
            std::set<Register> writes;
            for (const auto* t : out)
                if (m.entails(*t->label)) {
                    targets.insert(t->target);
                    writes.insert(t->writes.begin(), t->writes.end());
                }
            if (targets.empty())
                continue;
            StateId to = intern(std::vector<StateId>(targets.begin(), targets.end()));
            b.addTransition(from, to, m.condition(), std::vector<Register>(writes.begin(), writes.end()));
        }
    }
    flags.deterministic = true;
    return b.build(flags);
}

}  // namespace detail

Sra determinize(const Sra& unrolled)
{
    if (!unrolled.isUnrolled())
        throw NotUnrolled("determinization needs an acyclic (unrolled) automaton");
    Sra a = eliminateEpsilon(unrolled);
    return detail::powerset(a, SraFlags{true, false, a.windowBound()});
}

Sra determinize(const Srem& windowed)
{
    return determinize(compileWindowed(windowed));
}

Sra complete(const Sra& d)
{
    if (!d.isDeterministicFlag())
        throw NotDeterministic("completion needs a deterministic automaton");
    if (d.flags().complete)
        return d;
    SraBuilder b;
    detail::embed(b, d);
    b.setStart(d.start());
    for (StateId f : d.finals())
        b.addFinal(f);
    StateId dead = b.addState("dead");
    for (StateId q = 0; q < d.stateCount(); ++q) {
        std::vector<Condition> negated;
        bool covered = false;
        for (const auto& t : d.outgoing(q)) {
            if (t.label->kind() == Condition::Kind::True)
                covered = true;
            negated.push_back(Condition::negate(*t.label));
        }
        if (!covered)
            b.addTransition(q, dead, Condition::conj(std::move(negated)));
    }
    b.addTransition(dead, dead, Condition::top());
    SraFlags flags = d.flags();
    flags.complete = true;
    return b.build(flags);
}

Sra completeAndComplement(const Sra& d)
{
    Sra c = complete(d);
    std::vector<StateId> finals;
    for (StateId q = 0; q < c.stateCount(); ++q)
        if (!c.isFinal(q))
            finals.push_back(q);
    return Sra(c.stateCount(), c.start(), std::move(finals), c.registers(), c.transitions(), c.flags(),
               c.stateNames());
}

Sra completeAndComplement(const Srem& windowed)
{
    return completeAndComplement(determinize(windowed));
}

Sra compileWindowed(const Srem& e)
{
    if (e.kind() != Srem::Kind::Window)
        throw NotWindowed("expected an expression of the form (e) within w");
    if (e.left().containsWindow())
        throw InvalidPattern("a window may only appear at the outermost level");
    Sra a = toSingleRegister(eliminateEpsilon(compile(e.left())));
    return unroll(a, e.windowSize()).automaton;
}

namespace {

Sra topLoop()
{
    SraBuilder b;
    StateId q = b.addState();
    b.setStart(q);
    b.addFinal(q);
    b.addTransition(q, q, Condition::top());
    return b.build();
}

}  // namespace

Sra compileStreaming(const Srem& e)
{
    if (e.kind() == Srem::Kind::Window)
        return eliminateEpsilon(concatOf(topLoop(), compileWindowed(e)));
    return eliminateEpsilon(compile(toStreaming(e)));
}

Sra determinizeStreaming(const Srem& windowed)
{
    const Sra tree = compileWindowed(windowed);
    const std::size_t w = windowed.windowSize();
    std::set<Register> written;
    for (const auto& t : tree.transitions())
        written.insert(t.writes.begin(), t.writes.end());

    // Phase p means the number of consumed elements is p mod w. A run started
    // in phase p uses bank p; it ends before the next run in the same phase starts.
    SraBuilder b;
    std::vector<StateId> phase;
    for (std::size_t p = 0; p < w; ++p) {
        phase.push_back(b.addState("phase" + std::to_string(p)));
        if (tree.isFinal(tree.start()))
            b.addFinal(phase.back());
    }
    b.setStart(phase[0]);
    // (tree node, bank) -> state
    std::map<std::pair<StateId, std::size_t>, StateId> node;
    auto stateOf = [&](StateId n, std::size_t bank) {
        auto [it, fresh] = node.emplace(std::pair{n, bank}, 0);
        if (fresh) {
            it->second = b.addState(tree.stateName(n) + "@" + std::to_string(bank));
            if (tree.isFinal(n))
                b.addFinal(it->second);
        }
        return it->second;
    };
    auto banked = [&](std::size_t bank) {
        return [&written, bank](const Register& r) {
            return written.count(r) ? Register(r.name() + "_p" + std::to_string(bank)) : r;
        };
    };
    auto copy = [&](StateId from, const Transition& t, std::size_t bank) {
        auto f = banked(bank);
        std::vector<Register> ws;
        for (const auto& r : t.writes)
            ws.push_back(f(r));
        b.addTransition(from, stateOf(t.target, bank), t.label->renamed(f), std::move(ws));
    };
    for (std::size_t p = 0; p < w; ++p) {
        b.addTransition(phase[p], phase[(p + 1) % w], Condition::top());
        for (const auto& t : tree.outgoing(tree.start()))
            copy(phase[p], t, p);
    }
    // every tree node below the root, in every bank
    for (std::size_t bank = 0; bank < w; ++bank)
        for (StateId n = 0; n < tree.stateCount(); ++n)
            if (n != tree.start())
                for (const auto& t : tree.outgoing(n))
                    copy(stateOf(n, bank), t, bank);
    Sra nfa = b.build();
    SraFlags flags{true, true, w};
    return detail::powerset(nfa, flags);
}

std::vector<Stage> pipelineStages(const Srem& e)
{
    std::vector<Stage> out;
    const bool windowed = e.kind() == Srem::Kind::Window;
    const Srem body = windowed ? e.left() : e;
    out.push_back({"compile", compile(body)});
    out.push_back({"eliminate-epsilon", eliminateEpsilon(out.back().automaton)});
    out.push_back({"single-register", toSingleRegister(out.back().automaton)});
    if (!windowed)
        return out;
    out.push_back({"unroll", unroll(out.back().automaton, e.windowSize()).automaton});
    out.push_back({"determinize", determinize(out.back().automaton)});
    return out;
}

}  // namespace sracer
