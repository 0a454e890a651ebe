// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <set>

#include "detail.hpp"
#include "sracer/compiler.hpp"

namespace sracer {

namespace {

// Renaming for b's registers so that they avoid a's.
std::map<Register, Register> separate(const Sra& a, const Sra& b, const ClosureOptions& o)
{
    std::set<std::string> used;
    for (const auto& r : a.registers())
        used.insert(r.name());
    for (const auto& r : b.registers())
        used.insert(r.name());
    std::map<Register, Register> rename;
    for (const auto& r : b.registers()) {
        if (!std::binary_search(a.registers().begin(), a.registers().end(), r))
            continue;
        if (!o.renameRegisters)
            throw RegisterCollision("both operands use register " + r.name());
        rename.emplace(r, detail::mintRegister(r.name(), used));
    }
    return rename;
}

Condition conjoin(const Condition& x, const Condition& y)
{
    if (x.kind() == Condition::Kind::True)
        return y;
    if (y.kind() == Condition::Kind::True)
        return x;
    return Condition::conj(x, y);
}

}  // namespace

Sra unionOf(const Sra& a, const Sra& b, const ClosureOptions& options)
{
    auto rename = separate(a, b, options);
    SraBuilder out;
    StateId s = out.addState();
    StateId ao = detail::embed(out, a);
    StateId bo = detail::embed(out, b, rename);
    StateId f = out.addState();
    out.setStart(s);
    out.addFinal(f);
    out.addEpsilon(s, ao + a.start());
    out.addEpsilon(s, bo + b.start());
    for (StateId q : a.finals())
        out.addEpsilon(ao + q, f);
    for (StateId q : b.finals())
        out.addEpsilon(bo + q, f);
    return out.build();
}

Sra concatOf(const Sra& a, const Sra& b, const ClosureOptions& options)
{
    auto rename = separate(a, b, options);
    SraBuilder out;
    StateId ao = detail::embed(out, a);
    StateId bo = detail::embed(out, b, rename);
    out.setStart(ao + a.start());
    for (StateId q : a.finals())
        out.addEpsilon(ao + q, bo + b.start());
    for (StateId q : b.finals())
        out.addFinal(bo + q);
    return out.build();
}

Sra starOf(const Sra& a)
{
    SraBuilder out;
    StateId s = out.addState();
    StateId ao = detail::embed(out, a);
    StateId f = out.addState();
    out.setStart(s);
    out.addFinal(f);
    out.addEpsilon(s, ao + a.start());
    out.addEpsilon(s, f);
    for (StateId q : a.finals()) {
        out.addEpsilon(ao + q, ao + a.start());
        out.addEpsilon(ao + q, f);
    }
    return out.build();
}

Sra intersect(const Sra& a0, const Sra& b0, const ClosureOptions& options)
{
    auto rename = separate(a0, b0, options);
    Sra a = eliminateEpsilon(a0);
    Sra b = eliminateEpsilon(b0);
    auto map = [&](const Register& r) {
        auto it = rename.find(r);
        return it == rename.end() ? r : it->second;
    };

    SraBuilder out;
    for (const auto& r : a.registers())
        out.addRegister(r);
    for (const auto& r : b.registers())
        out.addRegister(map(r));
    std::map<std::pair<StateId, StateId>, StateId> ids;
    std::vector<std::pair<StateId, StateId>> work;
    auto intern = [&](StateId p, StateId q) {
        auto [it, fresh] = ids.emplace(std::pair{p, q}, static_cast<StateId>(ids.size()));
        if (fresh) {
            out.addState("(" + a.stateName(p) + "," + b.stateName(q) + ")");
            if (a.isFinal(p) && b.isFinal(q))
                out.addFinal(it->second);
            work.emplace_back(p, q);
        }
        return it->second;
    };
    out.setStart(intern(a.start(), b.start()));
    for (std::size_t i = 0; i < work.size(); ++i) {
        auto [p, q] = work[i];
        StateId from = ids.at(work[i]);
        for (const auto& x : a.outgoing(p))
            for (const auto& y : b.outgoing(q)) {
                Condition c = conjoin(*x.label, y.label->renamed(map));
                std::vector<Register> w = x.writes;
                for (const auto& r : y.writes)
                    w.push_back(map(r));
                out.addTransition(from, intern(x.target, y.target), std::move(c), std::move(w));
            }
    }
    return out.build();
}

}  // namespace sracer
