// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include "sracer/algebra.hpp"

#include <algorithm>

namespace sracer {

Condition Minterm::condition() const
{
    std::vector<Condition> cs;
    cs.reserve(literals.size());
    for (const auto& [c, positive] : literals)
        cs.push_back(positive ? c : Condition::negate(c));
    return Condition::conj(std::move(cs));
}

bool Minterm::entails(const Condition& c) const
{
    if (c.kind() == Condition::Kind::True)
        return true;
    return std::any_of(literals.begin(), literals.end(),
                       [&](const auto& l) { return l.second && l.first == c; });
}

std::vector<Minterm> mintermFamily(const std::vector<Condition>& conditions)
{
    const std::size_t n = conditions.size();
    if (n > 24)
        throw Error("minterm construction over " + std::to_string(n) + " conditions is too large");
    std::vector<Minterm> out;
    // bit i of j set means condition i is negated, which yields the
    // (f1&f2, !f1&f2, f1&!f2, !f1&!f2) order
    for (std::size_t j = 0; j < (std::size_t{1} << n); ++j) {
        Minterm m;
        bool unsat = false;
        for (std::size_t i = 0; i < n && !unsat; ++i) {
            bool positive = ((j >> i) & 1) == 0;
            if (conditions[i].kind() == Condition::Kind::True) {
                unsat = !positive;
                continue;
            }
            m.literals.emplace_back(conditions[i], positive);
        }
        if (!unsat)
            out.push_back(std::move(m));
    }
    return out;
}

std::vector<Condition> minterms(const std::vector<Condition>& conditions)
{
    std::vector<Condition> out;
    for (const auto& m : mintermFamily(conditions))
        out.push_back(m.condition());
    return out;
}

bool entails(const Condition& minterm, const Condition& c)
{
    if (minterm.kind() == Condition::Kind::Or)
        throw NotAMinterm("a disjunction is not a minterm: " + minterm.toString());
    if (c.kind() == Condition::Kind::True || minterm == c)
        return true;
    if (minterm.kind() != Condition::Kind::And)
        return false;
    const auto& ch = minterm.children();
    return std::find(ch.begin(), ch.end(), c) != ch.end();
}

namespace {

std::vector<Condition> literalsOf(const Condition& c)
{
    std::vector<Condition> out{c};
    if (c.kind() == Condition::Kind::And)
        out.insert(out.end(), c.children().begin(), c.children().end());
    return out;
}

bool complementary(const Condition& a, const Condition& b)
{
    return (a.kind() == Condition::Kind::Not && a.children()[0] == b) ||
           (b.kind() == Condition::Kind::Not && b.children()[0] == a);
}

}  // namespace

bool syntacticallyExclusive(const Condition& a, const Condition& b)
{
    for (const auto& la : literalsOf(a))
        for (const auto& lb : literalsOf(b))
            if (complementary(la, lb))
                return true;
    return false;
}

}  // namespace sracer
