// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include "sracer/automaton.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

namespace sracer {

namespace {

std::vector<Register> sortedUnique(std::vector<Register> rs)
{
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    return rs;
}

}  // namespace

Sra::Sra() : Sra(1, 0, {}, {}, {}) {}

Sra::Sra(std::size_t stateCount, StateId start, std::vector<StateId> finals, std::vector<Register> registers,
         std::vector<Transition> transitions, SraFlags flags, std::vector<std::string> stateNames)
    : stateCount_(stateCount), start_(start), registers_(sortedUnique(std::move(registers))),
      names_(std::move(stateNames)), flags_(flags)
{
    if (stateCount_ == 0)
        throw InvalidAutomaton("an automaton needs at least one state");
    if (start_ >= stateCount_)
        throw InvalidAutomaton("start state out of range");
    if (!names_.empty() && names_.size() != stateCount_)
        throw InvalidAutomaton("state name count does not match state count");
    final_.assign(stateCount_, false);
    for (StateId f : finals) {
        if (f >= stateCount_)
            throw InvalidAutomaton("final state out of range");
        final_[f] = true;
    }
    for (StateId q = 0; q < stateCount_; ++q)
        if (final_[q])
            finals_.push_back(q);

    auto known = [&](const Register& r) { return std::binary_search(registers_.begin(), registers_.end(), r); };
    for (auto& t : transitions) {
        if (t.source >= stateCount_ || t.target >= stateCount_)
            throw InvalidAutomaton("transition endpoint out of range");
        t.writes = sortedUnique(std::move(t.writes));
        if (t.isEpsilon()) {
            if (!t.writes.empty())
                throw InvalidAutomaton("an epsilon transition cannot write registers");
            hasEpsilon_ = true;
        } else {
            for (const auto& r : t.label->registers())
                if (!known(r))
                    throw InvalidAutomaton("condition reads undeclared register " + r.name());
        }
        for (const auto& r : t.writes)
            if (!known(r))
                throw InvalidAutomaton("transition writes undeclared register " + r.name());
        if (t.writes.size() > 1)
            singleRegister_ = false;
    }
    std::stable_sort(transitions.begin(), transitions.end(),
                     [](const Transition& a, const Transition& b) { return a.source < b.source; });
    transitions_ = std::move(transitions);
    offsets_.assign(stateCount_ + 1, 0);
    for (const auto& t : transitions_)
        ++offsets_[t.source + 1];
    for (std::size_t q = 0; q < stateCount_; ++q)
        offsets_[q + 1] += offsets_[q];

    // Kahn's algorithm for acyclicity
    std::vector<std::size_t> indeg(stateCount_, 0);
    for (const auto& t : transitions_)
        ++indeg[t.target];
    std::vector<StateId> ready;
    for (StateId q = 0; q < stateCount_; ++q)
        if (indeg[q] == 0)
            ready.push_back(q);
    std::size_t seen = 0;
    while (!ready.empty()) {
        StateId q = ready.back();
        ready.pop_back();
        ++seen;
        for (const auto& t : outgoing(q))
            if (--indeg[t.target] == 0)
                ready.push_back(t.target);
    }
    acyclic_ = seen == stateCount_;

    if (flags_.deterministic && hasEpsilon_)
        throw InvalidAutomaton("an automaton with epsilon transitions cannot be flagged deterministic");
}

std::span<const Transition> Sra::outgoing(StateId q) const
{
    return std::span<const Transition>(transitions_.data() + offsets_[q], offsets_[q + 1] - offsets_[q]);
}

std::string Sra::stateName(StateId q) const
{
    if (q < names_.size() && !names_[q].empty())
        return names_[q];
    return "q" + std::to_string(q);
}

Sra Sra::withFlags(SraFlags flags) const
{
    Sra out = *this;
    out.flags_ = flags;
    if (flags.deterministic && hasEpsilon_)
        throw InvalidAutomaton("an automaton with epsilon transitions cannot be flagged deterministic");
    return out;
}

bool Sra::operator==(const Sra& other) const
{
    return stateCount_ == other.stateCount_ && start_ == other.start_ && finals_ == other.finals_ &&
           registers_ == other.registers_ && transitions_ == other.transitions_ && flags_ == other.flags_;
}

// ---------------------------------------------------------------- builder

StateId SraBuilder::addState(std::string name)
{
    names_.push_back(std::move(name));
    return static_cast<StateId>(names_.size() - 1);
}

void SraBuilder::addTransition(StateId from, StateId to, Condition label, std::vector<Register> writes)
{
    transitions_.push_back(Transition{from, to, std::move(label), std::move(writes)});
}

void SraBuilder::addEpsilon(StateId from, StateId to)
{
    transitions_.push_back(Transition{from, to, std::nullopt, {}});
}

Sra SraBuilder::build(SraFlags flags) const
{
    std::vector<Register> regs = registers_;
    for (const auto& t : transitions_) {
        regs.insert(regs.end(), t.writes.begin(), t.writes.end());
        if (t.label)
            for (const auto& r : t.label->registers())
                regs.push_back(r);
    }
    bool named = std::any_of(names_.begin(), names_.end(), [](const std::string& s) { return !s.empty(); });
    return Sra(std::max<std::size_t>(names_.size(), 1), start_, finals_, std::move(regs), transitions_, flags,
               named ? names_ : std::vector<std::string>{});
}

// ---------------------------------------------------------------- runs

std::vector<Configuration> successors(const Sra& a, const Configuration& c, const Event* next)
{
    std::vector<Configuration> out;
    for (const auto& t : a.outgoing(c.state)) {
        if (t.isEpsilon()) {
            if (!next)
                out.push_back(Configuration{c.index, t.target, c.valuation});
            continue;
        }
        if (!next || !satisfies(*t.label, *next, c.valuation))
            continue;
        Valuation v = t.writes.empty() ? c.valuation : c.valuation.with(t.writes, *next);
        out.push_back(Configuration{c.index + 1, t.target, std::move(v)});
    }
    return out;
}

namespace {

struct LiveKey {
    StateId state;
    Valuation v;
    bool operator==(const LiveKey& o) const { return state == o.state && v == o.v; }
};
struct LiveKeyHash {
    std::size_t operator()(const LiveKey& k) const { return hashCombine(k.state, k.v.hash()); }
};

class LiveSet {
public:
    explicit LiveSet(std::size_t cap) : cap_(cap) {}

    bool insert(StateId q, const Valuation& v)
    {
        if (!seen_.insert(LiveKey{q, v}).second)
            return false;
        items_.push_back({q, v});
        if (items_.size() > cap_)
            throw ConfigurationCapExceeded("live configuration set exceeded the cap of " + std::to_string(cap_));
        return true;
    }

    std::vector<std::pair<StateId, Valuation>>& items() { return items_; }

private:
    std::size_t cap_;
    std::unordered_set<LiveKey, LiveKeyHash> seen_;
    std::vector<std::pair<StateId, Valuation>> items_;
};

void closeUnderEpsilon(const Sra& a, LiveSet& set)
{
    if (!a.hasEpsilon())
        return;
    auto& items = set.items();
    for (std::size_t i = 0; i < items.size(); ++i) {
        StateId q = items[i].first;
        for (const auto& t : a.outgoing(q))
            if (t.isEpsilon()) {
                Valuation v = items[i].second;
                set.insert(t.target, v);
            }
    }
}

std::vector<std::pair<StateId, Valuation>> simulate(const Sra& a, std::span<const Event> s, const RunOptions& o,
                                                     std::vector<std::size_t>* widths)
{
    LiveSet cur(o.configurationCap);
    cur.insert(a.start(), Valuation{});
    closeUnderEpsilon(a, cur);
    if (widths)
        widths->push_back(cur.items().size());
    for (const auto& e : s) {
        LiveSet next(o.configurationCap);
        for (const auto& [q, v] : cur.items())
            for (const auto& t : a.outgoing(q)) {
                if (t.isEpsilon() || !satisfies(*t.label, e, v))
                    continue;
                next.insert(t.target, t.writes.empty() ? v : v.with(t.writes, e));
            }
        closeUnderEpsilon(a, next);
        cur = std::move(next);
        if (widths)
            widths->push_back(cur.items().size());
        if (cur.items().empty())
            break;
    }
    return std::move(cur.items());
}

}  // namespace

bool runAccepts(const Sra& a, std::span<const Event> s, const RunOptions& options)
{
    std::vector<std::size_t> widths;
    auto live = simulate(a, s, options, &widths);
    if (widths.size() != s.size() + 1)
        return false;  // the run set died early
    return std::any_of(live.begin(), live.end(), [&](const auto& c) { return a.isFinal(c.first); });
}

std::vector<std::size_t> runWidths(const Sra& a, std::span<const Event> s, const RunOptions& options)
{
    std::vector<std::size_t> widths;
    simulate(a, s, options, &widths);
    widths.resize(s.size() + 1, 0);
    return widths;
}

bool isDeterministic(const Sra& a, const DeterminismSample* sample)
{
    if (a.hasEpsilon())
        return false;
    for (StateId q = 0; q < a.stateCount(); ++q) {
        auto out = a.outgoing(q);
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = i + 1; j < out.size(); ++j) {
                const Condition& x = *out[i].label;
                const Condition& y = *out[j].label;
                if (syntacticallyExclusive(x, y))
                    continue;
                if (!sample || sample->universe.empty())
                    throw UnverifiableDeterminism("state " + a.stateName(q) + ": cannot show " + x.toString() +
                                                  " and " + y.toString() + " exclusive without a test universe");
                static const std::vector<Valuation> justEmpty{Valuation{}};
                const auto& vals = sample->valuations.empty() ? justEmpty : sample->valuations;
                for (const auto& u : sample->universe)
                    for (const auto& v : vals)
                        if (satisfies(x, u, v) && satisfies(y, u, v))
                            return false;
            }
    }
    return true;
}

// ---------------------------------------------------------------- export

namespace {

std::string dotEscape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string toDot(const Sra& a, const std::string& graphName)
{
    std::ostringstream os;
    os << "digraph \"" << dotEscape(graphName) << "\" {\n";
    os << "  rankdir=LR;\n";
    os << "  __start [shape=point];\n";
    for (StateId q = 0; q < a.stateCount(); ++q)
        os << "  s" << q << " [label=\"" << dotEscape(a.stateName(q)) << "\", shape="
           << (a.isFinal(q) ? "doublecircle" : "circle") << "];\n";
    os << "  __start -> s" << a.start() << ";\n";
    for (const auto& t : a.transitions()) {
        std::string label;
        if (t.isEpsilon()) {
            label = "ε";
        } else {
            label = t.label->toString();
            if (!t.writes.empty()) {
                label += " ↓ ";
                for (std::size_t i = 0; i < t.writes.size(); ++i)
                    label += (i ? "," : "") + t.writes[i].name();
            }
        }
        os << "  s" << t.source << " -> s" << t.target << " [label=\"" << dotEscape(label) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

SraStats statsOf(const Sra& a)
{
    SraStats s;
    s.states = a.stateCount();
    s.transitions = a.transitions().size();
    s.registers = a.registers().size();
    for (const auto& t : a.transitions())
        if (t.isEpsilon())
            ++s.epsilonTransitions;
    return s;
}

}  // namespace sracer
