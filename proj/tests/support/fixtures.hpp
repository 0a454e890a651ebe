// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

// Shared fixtures and reference procedures for the tests. The reference
// procedures here are deliberately naive: enumeration and direct recursion
// over definitions, independent of the automata under test.

#ifndef SRACER_TESTS_FIXTURES_HPP_
#define SRACER_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sracer/automaton.hpp"
#include "sracer/forecast.hpp"
#include "sracer/pattern.hpp"

namespace sracer::testing {

// ---- the sensor example

// (type, id, value) for indices 1..6.
std::vector<Event> sensorStream();
// TypeIsT, TypeIsH, EqualId.
const PredicateLibrary& sensorLibrary();
PredicateRef pred(const std::string& name);  // from sensorLibrary or smallLibrary

Srem e1();
Srem e3Body();
Srem e3(std::size_t w);
// (phi1 -> r1 + phi2 -> r1) ; phi3(~, r1)
Srem e2();
const PredicateLibrary& e2Library();

// qs -TypeIsT->r1-> q1, q1 -TRUE-> q1, q1 -(TypeIsH & EqualId(~,r1))-> qf
Sra sensorSra();
// accepts strings with two elements of the same type
Sra sameTypeSra();

// ---- forecasting example: the two-symbol automaton and tree

// Three states 0 (start), 1, 2 (final); symbol a = IsA(~), b = IsB(~).
Sra twoSymbolDfa();
SymbolMap twoSymbols();
Pst twoSymbolTree();
Event symbolEvent(char sym);

// ---- a small universe for exhaustive checks

// Four events: types T/H crossed with ids 1/2.
std::vector<Event> universe4();
// IsT, IsH, Id1, SameType(x, y), and IsA/IsB over the sym attribute.
const PredicateLibrary& smallLibrary();

// All strings over `universe` of length lo..hi, shortest first.
std::vector<std::vector<Event>> allStrings(const std::vector<Event>& universe, std::size_t lo, std::size_t hi);

struct RandomSremOptions {
    std::size_t maxDepth = 4;
    std::size_t registers = 2;
};

Condition randomCondition(std::mt19937_64& rng, const RandomSremOptions& o);
Srem randomSrem(std::mt19937_64& rng, const RandomSremOptions& o);
std::vector<Condition> randomConditions(std::mt19937_64& rng, std::size_t n);

// Indices k (1-based) such that some suffix s[m..k] is accepted by e,
// including the empty suffix when the oracle accepts it.
std::vector<std::size_t> matchIndices(const Srem& e, std::span<const Event> s);

// Set-algebra references over languages given as membership tests.
using Language = std::function<bool(std::span<const Event>)>;
bool inConcat(const Language& a, const Language& b, std::span<const Event> s);
bool inStar(const Language& a, std::span<const Event> s);

// Brute-force waiting time: enumerate every symbol string up to H, weight by
// the tree's chained predictions, bucket by first visit to a final state.
std::vector<double> bruteForceWaitingTime(const SymbolicDfa& dfa, const Pst& t, StateId q, const Context& history,
                                          std::size_t horizon);

}  // namespace sracer::testing

#endif  // SRACER_TESTS_FIXTURES_HPP_
