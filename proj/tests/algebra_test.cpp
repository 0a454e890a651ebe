// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "sracer/algebra.hpp"
#include "sracer/pattern.hpp"

namespace sracer {
namespace {

using testing::pred;
using testing::sensorStream;

Condition on(const char* name) { return Condition::atom(pred(name), {std::nullopt}); }
Condition eqId(const char* r) { return Condition::atom(pred("EqualId"), {std::nullopt, Register(r)}); }

TEST(Values, CompareAcrossNumericKinds)
{
    EXPECT_TRUE(compareValues(Value{std::int64_t{3}}, CmpOp::Eq, Value{3.0}));
    EXPECT_TRUE(compareValues(Value{std::int64_t{3}}, CmpOp::Lt, Value{3.5}));
    EXPECT_TRUE(compareValues(Value{std::string("a")}, CmpOp::Lt, Value{std::string("b")}));
    EXPECT_FALSE(compareValues(Value{std::string("3")}, CmpOp::Eq, Value{std::int64_t{3}}));
    EXPECT_TRUE(compareValues(Value{std::string("3")}, CmpOp::Ne, Value{std::int64_t{3}}));
    EXPECT_FALSE(compareValues(Value{std::string("3")}, CmpOp::Lt, Value{std::int64_t{3}}));
}

TEST(Event, AttributesAndEquality)
{
    Event e{{"type", std::string("T")}, {"id", std::int64_t{1}}};
    ASSERT_NE(e.get("type"), nullptr);
    EXPECT_EQ(std::get<std::string>(*e.get("type")), "T");
    EXPECT_EQ(e.get("missing"), nullptr);
    Event same{{"type", std::string("T")}, {"id", std::int64_t{1}}};
    EXPECT_EQ(e, same);
    EXPECT_EQ(e.hash(), same.hash());
    EXPECT_FALSE((e == Event{{"type", std::string("H")}, {"id", std::int64_t{1}}}));
}

TEST(Valuation, WithIsPersistent)
{
    const auto s = sensorStream();
    Valuation empty;
    Valuation v = empty.with(Register("r1"), s[0]);
    EXPECT_FALSE(empty.defined(Register("r1")));
    ASSERT_TRUE(v.defined(Register("r1")));
    EXPECT_EQ(*v.get(Register("r1")), s[0]);
    std::vector<Register> both{Register("r1"), Register("r2")};
    Valuation w = v.with(both, s[2]);
    EXPECT_EQ(*w.get(Register("r1")), s[2]);
    EXPECT_EQ(*w.get(Register("r2")), s[2]);
    EXPECT_EQ(w.size(), 2u);
}

TEST(Condition, TopHoldsEverywhere)
{
    for (const auto& e : sensorStream())
        EXPECT_TRUE(evaluateCondition(Condition::top(), e, Valuation{}));
}

TEST(Condition, EqualIdAgainstStoredElement)
{
    const auto s = sensorStream();
    Valuation v = Valuation{}.with(Register("r1"), s[0]);
    EXPECT_TRUE(evaluateCondition(eqId("r1"), s[3], v));   // (H,1,70) vs (T,1,22)
    EXPECT_FALSE(evaluateCondition(eqId("r1"), s[2], v));  // (T,2,32) vs (T,1,22)
}

TEST(Condition, EmptyRegisterIsStrictOrFalse)
{
    const auto s = sensorStream();
    EXPECT_THROW(evaluateCondition(eqId("r1"), s[0], Valuation{}), UnboundRegister);
    EXPECT_FALSE(satisfies(eqId("r1"), s[0], Valuation{}));
    EXPECT_TRUE(satisfies(Condition::negate(eqId("r1")), s[0], Valuation{}));
}

TEST(Condition, RegistersInFirstUseOrder)
{
    Condition c = Condition::conj(Condition::atom(pred("EqualId"), {std::nullopt, Register("r2")}),
                                  Condition::disj(eqId("r1"), eqId("r2")));
    EXPECT_EQ(c.registers(), (std::vector<Register>{Register("r2"), Register("r1")}));
    Condition renamed = c.renamed([](const Register& r) { return Register(r.name() + "x"); });
    EXPECT_EQ(renamed.registers(), (std::vector<Register>{Register("r2x"), Register("r1x")}));
}

TEST(Condition, ArityIsChecked)
{
    EXPECT_THROW(Condition::atom(pred("EqualId"), {std::nullopt}), ArityMismatch);
}

TEST(Condition, TextRoundTrip)
{
    std::mt19937_64 rng(7);
    PredicateLibrary lib;
    lib.merge(testing::sensorLibrary());
    lib.merge(testing::smallLibrary());
    for (int i = 0; i < 200; ++i) {
        Condition c = testing::randomCondition(rng, {});
        EXPECT_EQ(parseCondition(c.toString(), lib), c) << c.toString();
    }
}

TEST(Minterms, TwoConditionsInOrder)
{
    Condition f1 = on("TypeIsT"), f2 = eqId("r1");
    auto ms = mintermFamily({f1, f2});
    ASSERT_EQ(ms.size(), 4u);
    using L = std::vector<std::pair<Condition, bool>>;
    EXPECT_EQ(ms[0].literals, (L{{f1, true}, {f2, true}}));
    EXPECT_EQ(ms[1].literals, (L{{f1, false}, {f2, true}}));
    EXPECT_EQ(ms[2].literals, (L{{f1, true}, {f2, false}}));
    EXPECT_EQ(ms[3].literals, (L{{f1, false}, {f2, false}}));
}

TEST(Minterms, EmptySetIsTop)
{
    auto ms = minterms({});
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_EQ(ms[0].kind(), Condition::Kind::True);
}

TEST(Minterms, TopIsDropped)
{
    Condition f = on("TypeIsT");
    auto ms = minterms({Condition::top(), f});
    ASSERT_EQ(ms.size(), 2u);
    EXPECT_EQ(ms[0], f);
    EXPECT_EQ(ms[1], Condition::negate(f));
    // truth table over a small universe agrees with (f, !f)
    for (const auto& u : testing::universe4()) {
        EXPECT_EQ(satisfies(ms[0], u, Valuation{}), satisfies(f, u, Valuation{}));
        EXPECT_NE(satisfies(ms[0], u, Valuation{}), satisfies(ms[1], u, Valuation{}));
    }
}

TEST(Minterms, Entailment)
{
    Condition f1 = on("TypeIsT"), f2 = on("TypeIsH");
    Condition m = Condition::conj(f1, Condition::negate(f2));
    EXPECT_TRUE(entails(m, f1));
    EXPECT_FALSE(entails(m, f2));
    EXPECT_FALSE(entails(Condition::conj(Condition::negate(f1), Condition::negate(f2)), f1));
    EXPECT_TRUE(entails(m, Condition::top()));
    EXPECT_THROW(entails(Condition::disj(f1, f2), f1), NotAMinterm);
}

TEST(Minterms, ExactlyOneHoldsOnSmallGrid)
{
    std::mt19937_64 rng(11);
    const auto universe = testing::universe4();
    std::vector<Valuation> valuations{Valuation{}};
    for (const auto& a : universe) {
        valuations.push_back(Valuation{}.with(Register("r1"), a));
        for (const auto& b : universe)
            valuations.push_back(Valuation{}.with(Register("r1"), a).with(Register("r2"), b));
    }
    for (std::size_t n = 0; n <= 4; ++n) {
        auto cs = testing::randomConditions(rng, n);
        auto ms = minterms(cs);
        for (const auto& u : universe)
            for (const auto& v : valuations) {
                int holding = 0;
                for (const auto& m : ms)
                    holding += satisfies(m, u, v);
                EXPECT_EQ(holding, 1);
            }
    }
}

TEST(Minterms, SyntacticExclusivity)
{
    Condition f1 = on("TypeIsT"), f2 = on("TypeIsH");
    EXPECT_TRUE(syntacticallyExclusive(f1, Condition::negate(f1)));
    EXPECT_TRUE(syntacticallyExclusive(Condition::conj(f1, f2), Condition::conj(Condition::negate(f1), f2)));
    EXPECT_FALSE(syntacticallyExclusive(f1, f2));
}

TEST(PredicateLibrary, RejectsDuplicates)
{
    PredicateLibrary lib;
    lib.add(attrIs("A", "type", std::string("T")));
    EXPECT_THROW(lib.add(attrIs("A", "type", std::string("H"))), DuplicatePredicate);
    EXPECT_NE(lib.find("A"), nullptr);
    EXPECT_EQ(lib.find("B"), nullptr);
}

TEST(PredicateLibrary, AttributeShorthands)
{
    const auto s = sensorStream();
    auto hot = attrCmp("Hot", "value", CmpOp::Gt, std::int64_t{50});
    const Event* args[] = {&s[3]};
    EXPECT_TRUE((*hot)(args));
    const Event* cold[] = {&s[0]};
    EXPECT_FALSE((*hot)(cold));
    auto same = attrsEq("SameId", "id");
    const Event* pair[] = {&s[0], &s[1]};
    EXPECT_TRUE((*same)(pair));
}

}  // namespace
}  // namespace sracer
