// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SRACER_AUTOMATON_HPP_
#define SRACER_AUTOMATON_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sracer/algebra.hpp"

namespace sracer {

using StateId = std::uint32_t;

struct Transition {
    StateId source = 0;
    StateId target = 0;
    std::optional<Condition> label;  // nullopt: epsilon
    std::vector<Register> writes;    // sorted, distinct

    bool isEpsilon() const { return !label.has_value(); }
    bool operator==(const Transition&) const = default;
};

// Properties established by construction rather than recomputed.
struct SraFlags {
    bool deterministic = false;
    bool complete = false;
    std::optional<std::size_t> windowBound;

    bool operator==(const SraFlags&) const = default;
};

class Sra {
public:
    Sra();  // one non-final state, nothing else
    Sra(std::size_t stateCount, StateId start, std::vector<StateId> finals, std::vector<Register> registers,
        std::vector<Transition> transitions, SraFlags flags = {}, std::vector<std::string> stateNames = {});

    std::size_t stateCount() const { return stateCount_; }
    StateId start() const { return start_; }
    bool isFinal(StateId q) const { return final_[q]; }
    const std::vector<StateId>& finals() const { return finals_; }
    const std::vector<Register>& registers() const { return registers_; }
    // grouped by source state, in insertion order within a source
    const std::vector<Transition>& transitions() const { return transitions_; }
    std::span<const Transition> outgoing(StateId q) const;
    std::string stateName(StateId q) const;
    const std::vector<std::string>& stateNames() const { return names_; }
    const SraFlags& flags() const { return flags_; }

    bool hasEpsilon() const { return hasEpsilon_; }
    bool isSingleRegister() const { return singleRegister_; }
    bool isUnrolled() const { return acyclic_; }  // transition graph is acyclic
    bool isDeterministicFlag() const { return flags_.deterministic; }
    std::optional<std::size_t> windowBound() const { return flags_.windowBound; }

    Sra withFlags(SraFlags flags) const;

    bool operator==(const Sra& other) const;

private:
    std::size_t stateCount_ = 1;
    StateId start_ = 0;
    std::vector<StateId> finals_;
    std::vector<bool> final_;
    std::vector<Register> registers_;
    std::vector<Transition> transitions_;
    std::vector<std::size_t> offsets_;
    std::vector<std::string> names_;
    SraFlags flags_;
    bool hasEpsilon_ = false;
    bool singleRegister_ = true;
    bool acyclic_ = true;
};

class SraBuilder {
public:
    StateId addState(std::string name = {});
    void setStart(StateId q) { start_ = q; }
    void addFinal(StateId q) { finals_.push_back(q); }
    void addRegister(const Register& r) { registers_.push_back(r); }
    void addTransition(StateId from, StateId to, Condition label, std::vector<Register> writes = {});
    void addEpsilon(StateId from, StateId to);
    std::size_t stateCount() const { return names_.size(); }

    // Registers referenced by transitions are added automatically.
    Sra build(SraFlags flags = {}) const;

private:
    std::vector<std::string> names_;
    StateId start_ = 0;
    std::vector<StateId> finals_;
    std::vector<Register> registers_;
    std::vector<Transition> transitions_;
};

struct Configuration {
    std::size_t index = 1;  // next element to consume, 1-based
    StateId state = 0;
    Valuation valuation;

    bool operator==(const Configuration&) const = default;
};

// One-step successors. With `next` absent only epsilon moves are taken,
// with `next` present only moves that consume it.
std::vector<Configuration> successors(const Sra& a, const Configuration& c, const Event* next);

struct RunOptions {
    std::size_t configurationCap = 100000;
};

bool runAccepts(const Sra& a, std::span<const Event> s, const RunOptions& options = {});

// Live configuration-set sizes after each consumed element (index 0: before
// the first element), epsilon closure included.
std::vector<std::size_t> runWidths(const Sra& a, std::span<const Event> s, const RunOptions& options = {});

struct DeterminismSample {
    std::vector<Event> universe;
    std::vector<Valuation> valuations;
};

// Pairwise exclusivity of outgoing conditions, syntactic where possible and
// otherwise by evaluation over the sample.
bool isDeterministic(const Sra& a, const DeterminismSample* sample = nullptr);

struct EngineOptions {
    std::size_t configurationCap = 100000;
    bool reportEmptyMatch = false;
};

struct StepStats {
    std::size_t conditionEvaluations = 0;
    std::size_t registerReads = 0;
    std::size_t outgoing = 0;    // c: transitions leaving the state of the single run
    std::size_t registers = 0;   // k: registers of the automaton
};

class StreamEngine {
public:
    explicit StreamEngine(std::shared_ptr<const Sra> automaton, EngineOptions options = {});

    // Consumes one event; true iff some live configuration is final afterwards.
    bool step(const Event& t);

    // True before any event iff the empty suffix matches and reporting it is enabled.
    bool emptyMatch() const;

    std::size_t consumed() const { return consumed_; }
    std::size_t liveCount() const { return live_.size(); }
    const StepStats& lastStep() const { return stats_; }
    const Sra& automaton() const { return *a_; }
    // Only meaningful for deterministic automata: the state of the single run.
    std::optional<StateId> currentState() const;
    std::vector<std::pair<StateId, Valuation>> live() const { return live_; }

private:
    bool stepDeterministic(const Event& t);
    bool stepNondeterministic(const Event& t);

    std::shared_ptr<const Sra> a_;
    EngineOptions options_;
    std::vector<std::pair<StateId, Valuation>> live_;
    std::vector<std::vector<Register>> readSets_;  // registers read at each state
    std::size_t consumed_ = 0;
    StepStats stats_;
};

// Free-function spelling of StreamEngine::step.
inline bool streamStep(StreamEngine& engine, const Event& t) { return engine.step(t); }

std::string toDot(const Sra& a, const std::string& graphName = "sra");

struct SraStats {
    std::size_t states = 0;
    std::size_t transitions = 0;
    std::size_t registers = 0;
    std::size_t epsilonTransitions = 0;
};
SraStats statsOf(const Sra& a);

}  // namespace sracer

#endif  // SRACER_AUTOMATON_HPP_
