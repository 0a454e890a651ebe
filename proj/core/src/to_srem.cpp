// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <vector>

#include "sracer/compiler.hpp"

namespace sracer {

namespace {

bool isEmpty(const Srem& e) { return e.kind() == Srem::Kind::Empty; }
bool isEpsilon(const Srem& e) { return e.kind() == Srem::Kind::Epsilon; }

Srem seq(const Srem& a, const Srem& b)
{
    if (isEmpty(a) || isEmpty(b))
        return Srem::empty();
    if (isEpsilon(a))
        return b;
    if (isEpsilon(b))
        return a;
    return Srem::concat(a, b);
}

Srem either(const Srem& a, const Srem& b)
{
    if (isEmpty(a))
        return b;
    if (isEmpty(b) || a == b)
        return a;
    return Srem::alt(a, b);
}

Srem loop(const Srem& a)
{
    if (isEmpty(a) || isEpsilon(a))
        return Srem::epsilon();
    if (a.kind() == Srem::Kind::Star)
        return a;
    return Srem::star(a);
}

// Generalized automaton: a dense matrix of expression labels, ∅ where absent.
class Gsra {
public:
    explicit Gsra(std::size_t n) : n_(n), edge_(n * n, Srem::empty()) {}

    Srem& at(std::size_t i, std::size_t j) { return edge_[i * n_ + j]; }

    std::size_t incident(std::size_t x)
    {
        std::size_t k = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!isEmpty(at(i, x)))
                ++k;
            if (i != x && !isEmpty(at(x, i)))
                ++k;
        }
        return k;
    }

    void eliminate(std::size_t x, const std::vector<bool>& alive)
    {
        Srem self = loop(at(x, x));
        for (std::size_t i = 0; i < n_; ++i) {
            if (i == x || !alive[i] || isEmpty(at(i, x)))
                continue;
            Srem into = seq(at(i, x), self);
            for (std::size_t j = 0; j < n_; ++j) {
                if (j == x || !alive[j] || isEmpty(at(x, j)))
                    continue;
                at(i, j) = either(seq(into, at(x, j)), at(i, j));
            }
        }
        for (std::size_t i = 0; i < n_; ++i) {
            at(i, x) = Srem::empty();
            at(x, i) = Srem::empty();
        }
    }

private:
    std::size_t n_;
    std::vector<Srem> edge_;
};

}  // namespace

Srem sraToSrem(const Sra& input)
{
    Sra a = toSingleRegister(eliminateEpsilon(input));
    const std::size_t n = a.stateCount();
    const std::size_t start = n, final = n + 1;
    Gsra g(n + 2);
    g.at(start, a.start()) = Srem::epsilon();
    for (StateId f : a.finals())
        g.at(f, final) = Srem::epsilon();
    for (const auto& t : a.transitions()) {
        Srem label = t.writes.empty() ? Srem::cond(*t.label) : Srem::condWrite(*t.label, t.writes.front());
        g.at(t.source, t.target) = either(g.at(t.source, t.target), label);
    }

    std::vector<bool> alive(n + 2, true);
    for (std::size_t round = 0; round < n; ++round) {
        std::size_t best = n;
        std::size_t bestCount = 0;
        for (std::size_t x = 0; x < n; ++x) {
            if (!alive[x])
                continue;
            std::size_t k = g.incident(x);
            if (best == n || k < bestCount) {
                best = x;
                bestCount = k;
            }
        }
        g.eliminate(best, alive);
        alive[best] = false;
    }
    return g.at(start, final);
}

}  // namespace sracer
