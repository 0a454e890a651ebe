// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <deque>
#include <limits>
#include <map>
#include <set>

#include "detail.hpp"
#include "sracer/compiler.hpp"

namespace sracer {

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Fewest transitions from each state to some final state.
std::vector<std::size_t> distanceToFinal(const Sra& a)
{
    std::vector<std::vector<StateId>> preds(a.stateCount());
    for (const auto& t : a.transitions())
        preds[t.target].push_back(t.source);
    std::vector<std::size_t> dist(a.stateCount(), kUnreachable);
    std::deque<StateId> queue;
    for (StateId f : a.finals()) {
        dist[f] = 0;
        queue.push_back(f);
    }
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (StateId p : preds[q])
            if (dist[p] == kUnreachable) {
                dist[p] = dist[q] + 1;
                queue.push_back(p);
            }
    }
    return dist;
}

struct Node {
    StateId original;
    std::size_t depth;
    // last copy of each original register written on the trail from the root
    std::map<Register, Register> last;
};

}  // namespace

Unrolled unroll(const Sra& input, std::size_t w)
{
    if (w == 0)
        throw InvalidPattern("window size must be positive");
    Sra a = toSingleRegister(eliminateEpsilon(input));
    const auto dist = distanceToFinal(a);

    std::set<std::string> used;
    for (const auto& r : a.registers())
        used.insert(r.name());

    SraBuilder b;
    UnrollMaps maps;
    std::vector<Node> nodes;
    auto addNode = [&](Node n) {
        StateId id = b.addState(a.stateName(n.original) + "." + std::to_string(nodes.size()));
        if (a.isFinal(n.original))
            b.addFinal(id);
        maps.copyOfQ.push_back(n.original);
        nodes.push_back(std::move(n));
        return id;
    };
    b.setStart(addNode(Node{a.start(), 0, {}}));

    // Nodes are appended in breadth-first order, so a plain index scan visits them all.
    for (StateId id = 0; id < nodes.size(); ++id) {
        const std::size_t depth = nodes[id].depth;
        const StateId q = nodes[id].original;
        for (const auto& t : a.outgoing(q)) {
            if (dist[t.target] == kUnreachable || depth + 1 + dist[t.target] > w)
                continue;
            const auto last = nodes[id].last;
            auto bind = [&last](const Register& r) {
                auto it = last.find(r);
                return it == last.end() ? r : it->second;  // never written on this trail
            };
            Condition c = t.label->renamed(bind);
            for (const auto& r : c.registers())
                b.addRegister(r);
            Node child{t.target, depth + 1, last};
            std::vector<Register> writes;
            for (const auto& r : t.writes) {
                Register copy = detail::mintRegister(r.name(), used);
                maps.copyOfR.emplace(copy, r);
                child.last[r] = copy;
                writes.push_back(copy);
            }
            StateId to = addNode(std::move(child));
            b.addTransition(id, to, std::move(c), std::move(writes));
        }
    }
    SraFlags flags;
    flags.windowBound = w;
    Sra out = b.build(flags);
    for (const auto& r : out.registers())
        if (!maps.copyOfR.count(r))
            maps.copyOfR.emplace(r, r);
    return Unrolled{std::move(out), std::move(maps)};
}

}  // namespace sracer
