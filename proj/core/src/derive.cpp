// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <unordered_map>

#include "sracer/pattern.hpp"

namespace sracer {

bool DerivationResult::contains(const Valuation& v) const
{
    return std::find(valuations.begin(), valuations.end(), v) != valuations.end();
}

namespace {

void addUnique(std::vector<Valuation>& out, const Valuation& v)
{
    if (std::find(out.begin(), out.end(), v) == out.end())
        out.push_back(v);
}

// Structural recursion over the expression on the slice s[i, j).
class Deriver {
public:
    explicit Deriver(std::span<const Event> s) : s_(s) {}

    std::vector<Valuation> run(const Srem& e, std::size_t i, std::size_t j, const Valuation& v)
    {
        Key key{e.identity(), i, j, v};
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        std::vector<Valuation> out = compute(e, i, j, v);
        memo_.emplace(std::move(key), out);
        return out;
    }

private:
    std::vector<Valuation> compute(const Srem& e, std::size_t i, std::size_t j, const Valuation& v)
    {
        std::vector<Valuation> out;
        switch (e.kind()) {
        case Srem::Kind::Empty:
            break;
        case Srem::Kind::Epsilon:
            if (i == j)
                out.push_back(v);
            break;
        case Srem::Kind::Cond:
            if (j == i + 1 && satisfies(e.condition(), s_[i], v))
                out.push_back(v);
            break;
        case Srem::Kind::CondWrite:
            if (j == i + 1 && satisfies(e.condition(), s_[i], v))
                out.push_back(v.with(e.target(), s_[i]));
            break;
        case Srem::Kind::Concat:
            for (std::size_t k = i; k <= j; ++k)
                for (const auto& mid : run(e.left(), i, k, v))
                    for (const auto& fin : run(e.right(), k, j, mid))
                        addUnique(out, fin);
            break;
        case Srem::Kind::Or:
            for (const auto& x : run(e.left(), i, j, v))
                addUnique(out, x);
            for (const auto& x : run(e.right(), i, j, v))
                addUnique(out, x);
            break;
        case Srem::Kind::Star:
            if (i == j)
                out.push_back(v);
            // every iteration consumes at least one element
            for (std::size_t k = i + 1; k <= j; ++k)
                for (const auto& mid : run(e.left(), i, k, v))
                    for (const auto& fin : run(e, k, j, mid))
                        addUnique(out, fin);
            break;
        case Srem::Kind::Window:
            if (j - i <= e.windowSize())
                out = run(e.left(), i, j, v);
            break;
        }
        return out;
    }

    struct Key {
        const void* node;
        std::size_t i, j;
        Valuation v;
        bool operator==(const Key& o) const { return node == o.node && i == o.i && j == o.j && v == o.v; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const
        {
            std::size_t h = std::hash<const void*>{}(k.node);
            h = hashCombine(h, k.i * 131 + k.j);
            return hashCombine(h, k.v.hash());
        }
    };

    std::span<const Event> s_;
    std::unordered_map<Key, std::vector<Valuation>, KeyHash> memo_;
};

}  // namespace

DerivationResult derive(const Srem& e, std::span<const Event> s, const Valuation& v)
{
    Deriver d(s);
    return DerivationResult{d.run(e, 0, s.size(), v)};
}

bool accepts(const Srem& e, std::span<const Event> s)
{
    return !derive(e, s, Valuation{}).empty();
}

}  // namespace sracer
