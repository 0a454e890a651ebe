// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "sracer/compiler.hpp"

namespace sracer {
namespace {

using testing::sensorSra;
using testing::sensorStream;

std::vector<std::size_t> engineMatches(const Sra& a, std::span<const Event> s, EngineOptions o = {})
{
    StreamEngine engine(std::make_shared<const Sra>(a), o);
    std::vector<std::size_t> out;
    if (engine.emptyMatch())
        out.push_back(0);
    for (const auto& e : s)
        if (engine.step(e))
            out.push_back(engine.consumed());
    return out;
}

TEST(Sra, Validation)
{
    EXPECT_THROW(Sra(2, 5, {}, {}, {}), InvalidAutomaton);
    EXPECT_THROW(Sra(2, 0, {3}, {}, {}), InvalidAutomaton);
    Transition bad{0, 7, Condition::top(), {}};
    EXPECT_THROW(Sra(2, 0, {}, {}, {bad}), InvalidAutomaton);
}

TEST(Sra, Properties)
{
    Sra a = sensorSra();
    EXPECT_EQ(a.stateCount(), 3u);
    EXPECT_EQ(a.transitions().size(), 3u);
    EXPECT_EQ(a.registers(), (std::vector<Register>{Register("r1")}));
    EXPECT_FALSE(a.hasEpsilon());
    EXPECT_TRUE(a.isSingleRegister());
    EXPECT_FALSE(a.isUnrolled());
    EXPECT_EQ(a.outgoing(1).size(), 2u);
    EXPECT_EQ(a.stateName(0), "qs");
}

TEST(Run, SuccessorsFollowTheExampleRun)
{
    Sra a = sensorSra();
    const auto s = sensorStream();
    auto first = successors(a, Configuration{1, 0, {}}, &s[0]);
    Configuration expected{2, 1, Valuation{}.with(Register("r1"), s[0])};
    EXPECT_NE(std::find(first.begin(), first.end(), expected), first.end());

    Configuration at3{3, 1, Valuation{}.with(Register("r1"), s[0])};
    auto third = successors(a, at3, &s[2]);
    Configuration loop{4, 1, Valuation{}.with(Register("r1"), s[0])};
    EXPECT_NE(std::find(third.begin(), third.end(), loop), third.end());

    Configuration at4{4, 1, Valuation{}.with(Register("r1"), s[0])};
    auto fourth = successors(a, at4, &s[3]);
    Configuration done{5, 2, Valuation{}.with(Register("r1"), s[0])};
    EXPECT_NE(std::find(fourth.begin(), fourth.end(), done), fourth.end());
}

TEST(Run, EpsilonMovesIgnoreInput)
{
    SraBuilder b;
    StateId p = b.addState(), q = b.addState();
    b.addEpsilon(p, q);
    Sra a = b.build();
    auto out = successors(a, Configuration{3, p, {}}, nullptr);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0], (Configuration{3, q, {}}));
    const auto s = sensorStream();
    EXPECT_TRUE(successors(a, Configuration{3, p, {}}, &s[0]).empty());
}

TEST(Run, Acceptance)
{
    const auto s = sensorStream();
    EXPECT_TRUE(runAccepts(sensorSra(), std::span(s).first(4)));
    EXPECT_TRUE(runAccepts(sensorSra(), std::span(s).first(5)));
    EXPECT_FALSE(runAccepts(sensorSra(), std::span(s).first(3)));
    SraBuilder b;
    b.addFinal(b.addState());
    EXPECT_TRUE(runAccepts(b.build(), {}));
}

TEST(Run, SameTypeNeedsARepeat)
{
    Sra a = testing::sameTypeSra();
    const auto u = testing::universe4();
    std::vector<Event> distinct{u[0], u[2]};  // T then H
    EXPECT_FALSE(runAccepts(a, distinct));
    std::vector<Event> repeat{u[0], u[2], u[1]};  // T, H, T
    EXPECT_TRUE(runAccepts(a, repeat));
    for (const auto& str : testing::allStrings(u, 0, 4)) {
        bool twoSame = false;
        for (std::size_t i = 0; i < str.size(); ++i)
            for (std::size_t j = i + 1; j < str.size(); ++j)
                twoSame = twoSame || *str[i].get("type") == *str[j].get("type");
        EXPECT_EQ(runAccepts(a, str), twoSame);
    }
}

TEST(Run, CapIsEnforced)
{
    Sra a = testing::sameTypeSra();
    const auto s = sensorStream();
    RunOptions tiny;
    tiny.configurationCap = 2;
    EXPECT_THROW(runAccepts(a, s, tiny), ConfigurationCapExceeded);
}

TEST(Determinism, Checks)
{
    const auto s = sensorStream();
    DeterminismSample sample{s, {Valuation{}.with(Register("r1"), s[0])}};
    EXPECT_FALSE(isDeterministic(sensorSra(), &sample));
    EXPECT_THROW(isDeterministic(sensorSra()), UnverifiableDeterminism);
    SraBuilder b;
    StateId p = b.addState(), q = b.addState();
    b.addTransition(p, q, Condition::top());
    EXPECT_TRUE(isDeterministic(b.build()));
    EXPECT_TRUE(isDeterministic(determinize(testing::e3(3))));
}

TEST(Engine, SensorStreamMatches)
{
    const auto s = sensorStream();
    Sra a = compileStreaming(testing::e1());
    EXPECT_EQ(engineMatches(a, s), (std::vector<std::size_t>{4, 5}));
    EXPECT_EQ(engineMatches(a, s), testing::matchIndices(testing::e1(), s));
}

TEST(Engine, EmptyPatternNeverMatches)
{
    const auto s = sensorStream();
    EXPECT_TRUE(engineMatches(compileStreaming(Srem::empty()), s).empty());
}

TEST(Engine, EpsilonMatchesEverywhere)
{
    const auto s = sensorStream();
    Sra a = compileStreaming(Srem::epsilon());
    EXPECT_EQ(engineMatches(a, s), (std::vector<std::size_t>{1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(testing::matchIndices(Srem::epsilon(), s), (std::vector<std::size_t>{1, 2, 3, 4, 5, 6}));
    EngineOptions o;
    o.reportEmptyMatch = true;
    EXPECT_EQ(engineMatches(a, s, o).front(), 0u);
}

TEST(Engine, RejectsEpsilonAutomata)
{
    EXPECT_THROW(StreamEngine(std::make_shared<const Sra>(compile(testing::e1()))), InvalidAutomaton);
}

TEST(Engine, DeterministicSingleRun)
{
    Sra d = determinizeStreaming(testing::e3(3));
    StreamEngine engine(std::make_shared<const Sra>(d));
    for (const auto& e : sensorStream()) {
        engine.step(e);
        EXPECT_EQ(engine.liveCount(), 1u);
        EXPECT_TRUE(engine.currentState().has_value());
        const auto& st = engine.lastStep();
        EXPECT_LE(st.conditionEvaluations, st.outgoing);
        EXPECT_LE(st.registerReads, st.registers);
    }
}

TEST(Dot, SensorAutomaton)
{
    std::string dot = toDot(sensorSra());
    EXPECT_NE(dot.find("doublecircle"), std::string::npos);
    EXPECT_NE(dot.find("label=\"qf\", shape=doublecircle"), std::string::npos);
    EXPECT_NE(dot.find("↓ r1"), std::string::npos);
    std::size_t edges = 0;
    for (std::size_t at = dot.find("->"); at != std::string::npos; at = dot.find("->", at + 2))
        ++edges;
    EXPECT_EQ(edges, 4u);  // three transitions plus the start marker
}

TEST(Dot, NoTransitions)
{
    SraBuilder b;
    b.addState("lonely");
    std::string dot = toDot(b.build());
    EXPECT_NE(dot.find("lonely"), std::string::npos);
    std::size_t edges = 0;
    for (std::size_t at = dot.find("->"); at != std::string::npos; at = dot.find("->", at + 2))
        ++edges;
    EXPECT_EQ(edges, 1u);
}

TEST(Dot, MintermLabels)
{
    Sra d = determinize(testing::e3(2));
    std::string dot = toDot(d);
    for (const auto& t : d.transitions())
        EXPECT_NE(dot.find(t.label->toString()), std::string::npos);
}

TEST(Stats, Counts)
{
    SraStats st = statsOf(compile(testing::e1()));
    EXPECT_GT(st.epsilonTransitions, 0u);
    EXPECT_EQ(st.registers, 1u);
}

}  // namespace
}  // namespace sracer
