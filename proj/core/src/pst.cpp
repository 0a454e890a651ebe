// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "sracer/forecast.hpp"

namespace sracer {

namespace {

Context reversed(Context c)
{
    std::reverse(c.begin(), c.end());
    return c;
}

}  // namespace

Pst::Pst(std::size_t alphabetSize, std::size_t maxOrder) : alphabet_(alphabetSize), maxOrder_(maxOrder)
{
    if (alphabetSize == 0)
        throw Error("a prediction suffix tree needs a non-empty alphabet");
    nodes_.emplace(Context{}, std::vector<double>(alphabetSize, 1.0 / static_cast<double>(alphabetSize)));
}

void Pst::set(const Context& context, std::vector<double> distribution)
{
    if (distribution.size() != alphabet_)
        throw Error("distribution size does not match the alphabet");
    if (context.size() > maxOrder_)
        throw Error("context longer than the maximum order");
    for (Symbol s : context)
        if (s >= alphabet_)
            throw Error("context symbol outside the alphabet");
    Context key = reversed(context);
    if (!key.empty()) {
        Context parent(key.begin(), key.end() - 1);
        if (!nodes_.count(parent))
            throw Error("context " + std::to_string(context.size()) + " symbols long lacks its suffix");
    }
    nodes_[key] = std::move(distribution);
}

bool Pst::contains(const Context& context) const
{
    return nodes_.count(reversed(context)) > 0;
}

const std::vector<double>& Pst::at(const Context& context) const
{
    auto it = nodes_.find(reversed(context));
    if (it == nodes_.end())
        throw Error("no such context in the tree");
    return it->second;
}

std::vector<Context> Pst::contexts() const
{
    std::vector<Context> out;
    for (const auto& [k, _] : nodes_)
        out.push_back(reversed(k));
    std::stable_sort(out.begin(), out.end(),
                     [](const Context& a, const Context& b) { return a.size() < b.size(); });
    return out;
}

Context Pst::deepestContext(std::span<const Symbol> recent) const
{
    Context key;
    Context best;
    for (std::size_t d = 1; d <= std::min(maxOrder_, recent.size()); ++d) {
        key.push_back(recent[recent.size() - d]);
        if (!nodes_.count(key))
            break;
        best = key;
    }
    return reversed(best);
}

const std::vector<double>& Pst::predict(std::span<const Symbol> recent) const
{
    Context key;
    const std::vector<double>* best = &nodes_.at(key);
    for (std::size_t d = 1; d <= std::min(maxOrder_, recent.size()); ++d) {
        key.push_back(recent[recent.size() - d]);
        auto it = nodes_.find(key);
        if (it == nodes_.end())
            break;
        best = &it->second;
    }
    return *best;
}

Pst learnPst(std::span<const Symbol> symbols, std::size_t alphabetSize, const PstParams& params)
{
    const std::size_t m = params.maxOrder;
    const std::size_t n = symbols.size();
    if (n < m + 1)
        throw InsufficientData("learning needs at least " + std::to_string(m + 1) + " symbols, got " +
                               std::to_string(n));
    if (params.gamma < 0 || params.gamma > 1 || params.r < 1 || params.pMin < 0 || params.alpha < 0)
        throw Error("tree parameters out of range");
    for (Symbol s : symbols)
        if (s >= alphabetSize)
            throw Error("training symbol outside the alphabet");

    // next-symbol counts per context, keyed newest symbol first
    std::map<Context, std::vector<std::size_t>> counts;
    for (std::size_t j = 0; j < n; ++j) {
        Context key;
        for (std::size_t len = 0; len <= std::min(m, j); ++len) {
            if (len > 0)
                key.push_back(symbols[j - len]);
            auto& c = counts[key];
            if (c.empty())
                c.assign(alphabetSize, 0);
            ++c[symbols[j]];
        }
    }
    auto total = [&](const Context& key) -> std::size_t {
        auto it = counts.find(key);
        if (it == counts.end())
            return 0;
        std::size_t t = 0;
        for (auto c : it->second)
            t += c;
        return t;
    };
    auto frequency = [&](const Context& key) {
        return static_cast<double>(total(key)) / static_cast<double>(n - key.size());
    };
    auto conditional = [&](const Context& key) {
        std::vector<double> p(alphabetSize, 0.0);
        std::size_t t = total(key);
        if (t == 0)
            return p;
        const auto& c = counts.at(key);
        for (std::size_t s = 0; s < alphabetSize; ++s)
            p[s] = static_cast<double>(c[s]) / static_cast<double>(t);
        return p;
    };
    const double floor = params.gamma / static_cast<double>(alphabetSize);
    auto smoothed = [&](const Context& key) {
        auto p = conditional(key);
        for (auto& x : p)
            x = (1.0 - params.gamma) * x + floor;
        return p;
    };

    std::set<Context> tree{Context{}};
    std::deque<Context> candidates;
    for (Symbol s = 0; s < alphabetSize; ++s)
        if (m >= 1 && frequency(Context{s}) >= params.pMin && total(Context{s}) > 0)
            candidates.push_back(Context{s});
    while (!candidates.empty()) {
        Context key = candidates.front();
        candidates.pop_front();
        Context parent(key.begin(), key.end() - 1);
        auto p = conditional(key);
        auto q = conditional(parent);
        bool significant = false;
        for (std::size_t s = 0; s < alphabetSize && !significant; ++s) {
            if (p[s] < (1.0 + params.alpha) * floor || q[s] <= 0.0)
                continue;
            double ratio = p[s] / q[s];
            significant = ratio >= params.r || ratio <= 1.0 / params.r;
        }
        if (significant)
            for (Context k = key; !k.empty(); k.pop_back())
                tree.insert(k);
        if (key.size() < m)
            for (Symbol s = 0; s < alphabetSize; ++s) {
                Context longer = key;
                longer.push_back(s);
                if (total(longer) > 0 && frequency(longer) >= params.pMin)
                    candidates.push_back(std::move(longer));
            }
    }

    Pst t(alphabetSize, m);
    // shorter contexts first, so every suffix is in place before its extensions
    std::vector<Context> ordered(tree.begin(), tree.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const Context& a, const Context& b) { return a.size() < b.size(); });
    for (const auto& key : ordered)
        t.set(reversed(key), smoothed(key));
    return t;
}

double logLoss(const Pst& t, std::span<const Symbol> symbols)
{
    if (symbols.empty())
        throw InsufficientData("log-loss needs at least one symbol");
    double sum = 0.0;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const auto& p = t.predict(symbols.subspan(0, i));
        sum -= std::log2(p.at(symbols[i]));
    }
    return sum / static_cast<double>(symbols.size());
}

}  // namespace sracer
