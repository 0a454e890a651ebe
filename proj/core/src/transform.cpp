// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>

#include "sracer/compiler.hpp"

namespace sracer {

namespace {

// Block k holds the original registers whose contents are kept in register b(k+1).
using Partition = std::vector<std::vector<Register>>;

std::size_t blockOf(const Partition& p, const Register& r)
{
    for (std::size_t k = 0; k < p.size(); ++k)
        if (std::binary_search(p[k].begin(), p[k].end(), r))
            return k;
    throw InvalidAutomaton("register " + r.name() + " is in no block");
}

bool subsetOf(const std::vector<Register>& a, const std::vector<Register>& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string partitionName(const Partition& p)
{
    std::string s = "(";
    for (std::size_t k = 0; k < p.size(); ++k) {
        s += k ? ",{" : "{";
        for (std::size_t i = 0; i < p[k].size(); ++i)
            s += (i ? "," : "") + p[k][i].name();
        s += "}";
    }
    return s + ")";
}

}  // namespace

Sra toSingleRegister(const Sra& a)
{
    if (a.isSingleRegister())
        return a;
    const auto& regs = a.registers();  // sorted
    const std::size_t w = regs.size();
    std::vector<Register> blocks;
    for (std::size_t k = 0; k < w; ++k)
        blocks.emplace_back("b" + std::to_string(k + 1));

    SraBuilder b;
    for (const auto& r : blocks)
        b.addRegister(r);
    using Key = std::pair<StateId, Partition>;
    std::map<Key, StateId> ids;
    std::vector<Key> work;
    auto intern = [&](StateId q, const Partition& p) {
        auto [it, fresh] = ids.emplace(Key{q, p}, static_cast<StateId>(ids.size()));
        if (fresh) {
            b.addState(a.stateName(q) + partitionName(p));
            if (a.isFinal(q))
                b.addFinal(it->second);
            work.push_back(it->first);
        }
        return it->second;
    };

    Partition start(w);
    start[0] = regs;
    b.setStart(intern(a.start(), start));
    for (std::size_t i = 0; i < work.size(); ++i) {
        const auto [q, p] = work[i];
        StateId from = ids.at(work[i]);
        auto toBlock = [&](const Register& r) { return blocks[blockOf(p, r)]; };
        for (const auto& t : a.outgoing(q)) {
            if (t.isEpsilon()) {
                b.addEpsilon(from, intern(t.target, p));
                continue;
            }
            Condition c = t.label->renamed(toBlock);
            if (t.writes.empty()) {
                b.addTransition(from, intern(t.target, p), c);
                continue;
            }
            std::size_t k = 0;
            while (!subsetOf(p[k], t.writes))
                ++k;
            Partition np = p;
            for (auto& block : np) {
                std::vector<Register> rest;
                std::set_difference(block.begin(), block.end(), t.writes.begin(), t.writes.end(),
                                    std::back_inserter(rest));
                block = std::move(rest);
            }
            std::vector<Register> merged;
            std::set_union(p[k].begin(), p[k].end(), t.writes.begin(), t.writes.end(), std::back_inserter(merged));
            np[k] = std::move(merged);
            b.addTransition(from, intern(t.target, np), c, {blocks[k]});
        }
    }
    SraFlags flags = a.flags();
    return b.build(flags);
}

}  // namespace sracer
