// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include <functional>

namespace sracer::testing {

namespace {

Event reading(const char* type, std::int64_t id, std::int64_t value)
{
    return Event{{"type", std::string(type)}, {"id", id}, {"value", value}};
}

Condition on(const std::string& name) { return Condition::atom(pred(name), {std::nullopt}); }

Condition with(const std::string& name, const std::string& r)
{
    return Condition::atom(pred(name), {std::nullopt, Register(r)});
}

PredicateLibrary buildSensorLibrary()
{
    PredicateLibrary lib;
    lib.add(parsePredicateDecl("pred TypeIsT(x): x.type = \"T\""));
    lib.add(parsePredicateDecl("pred TypeIsH(x): x.type = \"H\""));
    lib.add(parsePredicateDecl("pred EqualId(x, y): x.id = y.id"));
    return lib;
}

PredicateLibrary buildSmallLibrary()
{
    PredicateLibrary lib;
    lib.add(parsePredicateDecl("pred IsT(x): x.type = \"T\""));
    lib.add(parsePredicateDecl("pred IsH(x): x.type = \"H\""));
    lib.add(parsePredicateDecl("pred Id1(x): x.id = 1"));
    lib.add(parsePredicateDecl("pred SameType(x, y): x.type = y.type"));
    lib.add(parsePredicateDecl("pred IsA(x): x.sym = \"a\""));
    lib.add(parsePredicateDecl("pred IsB(x): x.sym = \"b\""));
    return lib;
}

}  // namespace

std::vector<Event> sensorStream()
{
    return {reading("T", 1, 22), reading("T", 1, 24), reading("T", 2, 32),
            reading("H", 1, 70), reading("H", 1, 68), reading("T", 2, 33)};
}

const PredicateLibrary& sensorLibrary()
{
    static const PredicateLibrary lib = buildSensorLibrary();
    return lib;
}

const PredicateLibrary& smallLibrary()
{
    static const PredicateLibrary lib = buildSmallLibrary();
    return lib;
}

PredicateRef pred(const std::string& name)
{
    if (auto p = sensorLibrary().find(name))
        return p;
    if (auto p = smallLibrary().find(name))
        return p;
    if (auto p = e2Library().find(name))
        return p;
    throw UnknownPredicate(name);
}

Srem e1()
{
    return Srem::concat(Srem::concat(Srem::condWrite(on("TypeIsT"), Register("r1")), Srem::star(Srem::cond({}))),
                        Srem::cond(Condition::conj(on("TypeIsH"), with("EqualId", "r1"))));
}

Srem e3Body() { return toStreaming(e1()); }

Srem e3(std::size_t w) { return Srem::window(e3Body(), w); }

const PredicateLibrary& e2Library()
{
    static const PredicateLibrary lib = [] {
        PredicateLibrary l;
        l.add(parsePredicateDecl("pred Phi1(x): x.type = \"T\" & x.value < -40"));
        l.add(parsePredicateDecl("pred Phi2(x): x.type = \"T\" & x.value > 50"));
        l.add(parsePredicateDecl("pred Phi3(x, y): x.type = \"T\" & x.id = y.id"));
        return l;
    }();
    return lib;
}

Srem e2()
{
    Register r1("r1");
    return Srem::concat(Srem::alt(Srem::condWrite(on("Phi1"), r1), Srem::condWrite(on("Phi2"), r1)),
                        Srem::cond(with("Phi3", "r1")));
}

Sra sensorSra()
{
    SraBuilder b;
    StateId qs = b.addState("qs"), q1 = b.addState("q1"), qf = b.addState("qf");
    b.setStart(qs);
    b.addFinal(qf);
    b.addTransition(qs, q1, on("TypeIsT"), {Register("r1")});
    b.addTransition(q1, q1, Condition::top());
    b.addTransition(q1, qf, Condition::conj(on("TypeIsH"), with("EqualId", "r1")));
    return b.build();
}

Sra sameTypeSra()
{
    // store the first element of the pair, skip freely around it, then see the same type
    SraBuilder b;
    StateId qs = b.addState("qs"), q1 = b.addState("q1"), qf = b.addState("qf");
    b.setStart(qs);
    b.addFinal(qf);
    b.addTransition(qs, qs, Condition::top());
    b.addTransition(qs, q1, Condition::top(), {Register("r1")});
    b.addTransition(q1, q1, Condition::top());
    b.addTransition(q1, qf, with("SameType", "r1"));
    b.addTransition(qf, qf, Condition::top());
    return b.build();
}

Sra twoSymbolDfa()
{
    SraBuilder b;
    StateId s0 = b.addState("0"), s1 = b.addState("1"), s2 = b.addState("2");
    b.setStart(s0);
    b.addFinal(s2);
    b.addTransition(s0, s1, on("IsA"));
    b.addTransition(s0, s0, on("IsB"));
    b.addTransition(s1, s1, on("IsA"));
    b.addTransition(s1, s2, on("IsB"));
    b.addTransition(s2, s1, on("IsA"));
    b.addTransition(s2, s0, on("IsB"));
    SraFlags flags;
    flags.deterministic = true;
    flags.complete = true;
    return b.build(flags);
}

SymbolMap twoSymbols() { return SymbolMap({on("IsA"), on("IsB")}); }

Pst twoSymbolTree()
{
    constexpr Symbol a = 0, b = 1;
    Pst t(2, 3);
    t.set({}, {0.5, 0.5});
    t.set({a}, {0.7, 0.3});
    t.set({b}, {0.5, 0.5});
    t.set({a, a}, {0.75, 0.25});
    t.set({b, a}, {0.6, 0.4});
    return t;
}

Event symbolEvent(char sym) { return Event{{"sym", std::string(1, sym)}}; }

std::vector<Event> universe4()
{
    return {Event{{"type", std::string("T")}, {"id", std::int64_t{1}}},
            Event{{"type", std::string("T")}, {"id", std::int64_t{2}}},
            Event{{"type", std::string("H")}, {"id", std::int64_t{1}}},
            Event{{"type", std::string("H")}, {"id", std::int64_t{2}}}};
}

std::vector<std::vector<Event>> allStrings(const std::vector<Event>& universe, std::size_t lo, std::size_t hi)
{
    std::vector<std::vector<Event>> out;
    std::vector<std::vector<Event>> layer{{}};
    for (std::size_t n = 0; n <= hi; ++n) {
        if (n >= lo)
            out.insert(out.end(), layer.begin(), layer.end());
        if (n == hi)
            break;
        std::vector<std::vector<Event>> next;
        next.reserve(layer.size() * universe.size());
        for (const auto& s : layer)
            for (const auto& u : universe) {
                next.push_back(s);
                next.back().push_back(u);
            }
        layer = std::move(next);
    }
    return out;
}

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

Register randomRegister(std::mt19937_64& rng, const RandomSremOptions& o)
{
    return Register("r" + std::to_string(1 + pick(rng, o.registers)));
}

Condition randomAtom(std::mt19937_64& rng, const RandomSremOptions& o)
{
    switch (pick(rng, o.registers ? 6 : 4)) {
    case 0:
        return on("IsT");
    case 1:
        return on("IsH");
    case 2:
        return on("Id1");
    case 3:
        return Condition::top();
    case 4:
        return with("EqualId", randomRegister(rng, o).name());
    default:
        return with("SameType", randomRegister(rng, o).name());
    }
}

Condition randomConditionAt(std::mt19937_64& rng, const RandomSremOptions& o, int budget)
{
    if (budget == 0)
        return randomAtom(rng, o);
    switch (pick(rng, 6)) {
    case 0:
        return Condition::negate(randomConditionAt(rng, o, budget - 1));
    case 1:
        return Condition::conj(randomConditionAt(rng, o, budget - 1), randomConditionAt(rng, o, budget - 1));
    case 2:
        return Condition::disj(randomConditionAt(rng, o, budget - 1), randomConditionAt(rng, o, budget - 1));
    default:
        return randomAtom(rng, o);
    }
}

Srem randomLeaf(std::mt19937_64& rng, const RandomSremOptions& o)
{
    std::size_t k = pick(rng, 20);
    if (k == 0)
        return Srem::epsilon();
    if (k == 1)
        return Srem::empty();
    Condition c = randomConditionAt(rng, o, 1);
    if (o.registers && k < 9)
        return Srem::condWrite(c, randomRegister(rng, o));
    return Srem::cond(c);
}

Srem randomSremAt(std::mt19937_64& rng, const RandomSremOptions& o, std::size_t depthLeft)
{
    if (depthLeft <= 1)
        return randomLeaf(rng, o);
    switch (pick(rng, 7)) {
    case 0:
    case 1:
        return Srem::concat(randomSremAt(rng, o, depthLeft - 1), randomSremAt(rng, o, depthLeft - 1));
    case 2:
    case 3:
        return Srem::alt(randomSremAt(rng, o, depthLeft - 1), randomSremAt(rng, o, depthLeft - 1));
    case 4:
        return Srem::star(randomSremAt(rng, o, depthLeft - 1));
    default:
        return randomLeaf(rng, o);
    }
}

}  // namespace

Condition randomCondition(std::mt19937_64& rng, const RandomSremOptions& o) { return randomConditionAt(rng, o, 2); }

Srem randomSrem(std::mt19937_64& rng, const RandomSremOptions& o) { return randomSremAt(rng, o, o.maxDepth); }

std::vector<Condition> randomConditions(std::mt19937_64& rng, std::size_t n)
{
    RandomSremOptions o;
    std::vector<Condition> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(randomCondition(rng, o));
    return out;
}

std::vector<std::size_t> matchIndices(const Srem& e, std::span<const Event> s)
{
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k <= s.size(); ++k)
        for (std::size_t m = 0; m <= k; ++m)
            if (accepts(e, s.subspan(m, k - m))) {
                out.push_back(k);
                break;
            }
    return out;
}

bool inConcat(const Language& a, const Language& b, std::span<const Event> s)
{
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (a(s.first(i)) && b(s.subspan(i)))
            return true;
    return false;
}

bool inStar(const Language& a, std::span<const Event> s)
{
    if (s.empty())
        return true;
    for (std::size_t i = 1; i <= s.size(); ++i)
        if (a(s.first(i)) && inStar(a, s.subspan(i)))
            return true;
    return false;
}

std::vector<double> bruteForceWaitingTime(const SymbolicDfa& dfa, const Pst& t, StateId q, const Context& history,
                                          std::size_t horizon)
{
    std::vector<double> masses(horizon, 0.0);
    std::function<void(StateId, Context&, double, std::size_t)> walk = [&](StateId at, Context& h, double p,
                                                                            std::size_t n) {
        if (n > 0 && dfa.isFinal(at)) {
            masses[n - 1] += p;
            return;
        }
        if (n == horizon)
            return;
        const auto& dist = t.predict(h);
        double norm = 0.0;
        for (Symbol s : dfa.enabled(at))
            norm += dist[s];
        if (norm <= 0.0)
            return;
        for (Symbol s : dfa.enabled(at)) {
            h.push_back(s);
            walk(*dfa.next(at, s), h, p * dist[s] / norm, n + 1);
            h.pop_back();
        }
    };
    Context h = history;
    walk(q, h, 1.0, 0);
    return masses;
}

}  // namespace sracer::testing
