// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SRACER_FORECAST_HPP_
#define SRACER_FORECAST_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sracer/automaton.hpp"

namespace sracer {

using Symbol = std::uint32_t;

// a, b, ..., z, then s26, s27, ...
std::string symbolName(Symbol s);
std::optional<Symbol> parseSymbolName(std::string_view name);

// Distinct transition labels of a deterministic automaton, numbered in order
// of first appearance.
class SymbolMap {
public:
    SymbolMap() = default;
    explicit SymbolMap(std::vector<Condition> labels);
    static SymbolMap fromAutomaton(const Sra& d);

    std::optional<Symbol> symbolOf(const Condition& label) const;
    const Condition& labelOf(Symbol s) const { return labels_.at(s); }
    const std::vector<Condition>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }

private:
    std::vector<Condition> labels_;
};

// Throws NotDeterministic, or NoTransition when no label holds for an element.
std::vector<Symbol> symbolize(const Sra& d, const SymbolMap& map, std::span<const Event> s);

// The automaton with every label replaced by its symbol.
class SymbolicDfa {
public:
    SymbolicDfa(const Sra& d, const SymbolMap& map);

    StateId start() const { return start_; }
    std::size_t stateCount() const { return final_.size(); }
    std::size_t alphabetSize() const { return alphabet_; }
    bool isFinal(StateId q) const { return final_[q]; }
    std::optional<StateId> next(StateId q, Symbol s) const;
    // symbols with a move out of q, ascending
    const std::vector<Symbol>& enabled(StateId q) const { return enabled_[q]; }

private:
    StateId start_ = 0;
    std::size_t alphabet_ = 0;
    std::vector<bool> final_;
    std::vector<std::map<Symbol, StateId>> delta_;
    std::vector<std::vector<Symbol>> enabled_;
};

using Context = std::vector<Symbol>;  // oldest symbol first

struct PstParams {
    std::size_t maxOrder = 5;  // m
    double pMin = 0.001;
    double r = 1.05;
    double gamma = 0.01;
    double alpha = 0.0;
};

// Prediction suffix tree. Contexts are suffix-closed and include the empty one.
class Pst {
public:
    // Starts with the root alone, uniform.
    Pst(std::size_t alphabetSize, std::size_t maxOrder);

    // Every proper suffix of the context must already be present.
    void set(const Context& context, std::vector<double> distribution);

    std::size_t alphabetSize() const { return alphabet_; }
    std::size_t maxOrder() const { return maxOrder_; }
    std::size_t size() const { return nodes_.size(); }
    bool contains(const Context& context) const;
    const std::vector<double>& at(const Context& context) const;
    std::vector<Context> contexts() const;  // shortest first

    // Distribution of the deepest context that is a suffix of `recent`.
    const std::vector<double>& predict(std::span<const Symbol> recent) const;
    Context deepestContext(std::span<const Symbol> recent) const;

private:
    std::size_t alphabet_;
    std::size_t maxOrder_;
    std::map<Context, std::vector<double>> nodes_;  // keyed by the reversed context
};

// Throws InsufficientData when the sequence is shorter than m + 1.
Pst learnPst(std::span<const Symbol> symbols, std::size_t alphabetSize, const PstParams& params = {});

// Mean negative log2 probability of each symbol given its predecessors.
double logLoss(const Pst& t, std::span<const Symbol> symbols);

struct WaitingTimeOptions {
    std::size_t horizon = 32;
    double floor = 1e-12;  // paths below this probability go to the residual
};

struct WaitingTimeDistribution {
    StateId state = 0;
    Context context;
    std::vector<double> masses;  // masses[n - 1] = P(W = n)
    double residual = 0.0;
};

// First-passage distribution into a final state from `state`, with symbols
// drawn from the tree given the history `context`. The tree's distribution is
// renormalized over the symbols that have a move out of the current state.
WaitingTimeDistribution waitingTime(const SymbolicDfa& dfa, const Pst& t, StateId state, const Context& context,
                                    const WaitingTimeOptions& options = {});
// Checks that d is deterministic and complete first.
WaitingTimeDistribution waitingTime(const Sra& d, const SymbolMap& map, const Pst& t, StateId state,
                                    const Context& context, const WaitingTimeOptions& options = {});

// Earliest step with the largest mass, 1-based.
std::size_t forecastRegression(const WaitingTimeDistribution& wd);

enum class Classification { Positive, Negative };
Classification forecastClassification(const WaitingTimeDistribution& wd, std::size_t w, double threshold);

}  // namespace sracer

#endif  // SRACER_FORECAST_HPP_
