// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

// Helpers shared by the compiler sources. Not installed.

#ifndef SRACER_SRC_DETAIL_HPP_
#define SRACER_SRC_DETAIL_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sracer/automaton.hpp"

namespace sracer::detail {

// <base>_<n> for the smallest n >= 1 not in `used`; records the result.
inline Register mintRegister(const std::string& base, std::set<std::string>& used)
{
    for (std::size_t n = 1;; ++n) {
        std::string name = base + "_" + std::to_string(n);
        if (used.insert(name).second)
            return Register(name);
    }
}

// Copies every state and transition of `a` into `b`, renaming registers.
// Returns the id of a's state 0 in b.
inline StateId embed(SraBuilder& b, const Sra& a, const std::map<Register, Register>& rename = {})
{
    StateId base = static_cast<StateId>(b.stateCount());
    for (StateId q = 0; q < a.stateCount(); ++q)
        b.addState(a.stateNames().empty() ? std::string() : a.stateName(q));
    auto map = [&](const Register& r) {
        auto it = rename.find(r);
        return it == rename.end() ? r : it->second;
    };
    for (const auto& r : a.registers())
        b.addRegister(map(r));
    for (const auto& t : a.transitions()) {
        if (t.isEpsilon()) {
            b.addEpsilon(base + t.source, base + t.target);
            continue;
        }
        std::vector<Register> w;
        for (const auto& r : t.writes)
            w.push_back(map(r));
        b.addTransition(base + t.source, base + t.target, rename.empty() ? *t.label : t.label->renamed(map),
                        std::move(w));
    }
    return base;
}

// Minterm family over the distinct labels of `ts`, in first-seen order.
inline std::vector<Condition> distinctLabels(const std::vector<const Transition*>& ts)
{
    std::vector<Condition> out;
    for (const auto* t : ts)
        if (std::find(out.begin(), out.end(), *t->label) == out.end())
            out.push_back(*t->label);
    return out;
}

// Powerset construction over the reachable subsets of an epsilon-free
// automaton. Labels are minterms of the outgoing conditions of each subset.
Sra powerset(const Sra& a, SraFlags flags);

}  // namespace sracer::detail

#endif  // SRACER_SRC_DETAIL_HPP_
