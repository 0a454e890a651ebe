// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SRACER_PATTERN_HPP_
#define SRACER_PATTERN_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sracer/algebra.hpp"

namespace sracer {

// Symbolic regular expression with memory. Immutable, cheap to copy.
class Srem {
public:
    enum class Kind { Empty, Epsilon, Cond, CondWrite, Concat, Or, Star, Window };

    Srem();  // Empty

    static Srem empty();
    static Srem epsilon();
    static Srem cond(Condition c);
    static Srem condWrite(Condition c, Register r);
    static Srem concat(Srem a, Srem b);
    static Srem alt(Srem a, Srem b);
    static Srem star(Srem a);
    static Srem window(Srem body, std::size_t w);

    Kind kind() const;
    const Condition& condition() const;  // Cond, CondWrite
    const Register& target() const;      // CondWrite
    const Srem& left() const;            // Concat, Or; body of Star and Window
    const Srem& right() const;           // Concat, Or
    std::size_t windowSize() const;      // Window

    bool containsWindow() const;
    const void* identity() const { return node_.get(); }
    std::size_t hash() const;
    bool operator==(const Srem& other) const;

private:
    struct Node;
    explicit Srem(std::shared_ptr<const Node> n);
    std::shared_ptr<const Node> node_;
};

// Every register written or read anywhere in e, sorted.
std::vector<Register> regTop(const Srem& e);
// Registers written by some CondWrite in e, sorted.
std::vector<Register> writtenRegisters(const Srem& e);
std::vector<PredicateRef> predicatesOf(const Srem& e);
std::size_t depth(const Srem& e);

// ⊤* · e. A windowed e keeps its window, which then bounds the match body only.
Srem toStreaming(const Srem& e);

// ---- concrete syntax

struct PatternFile {
    PredicateLibrary library;
    Srem expression;
};

// Predicate declarations (`pred Name(x, y): x.id = y.id`, one per line) followed
// by one expression. `base` supplies predicates declared elsewhere.
PatternFile parsePatternFile(std::string_view text, const PredicateLibrary* base = nullptr);
Srem parse(std::string_view text, const PredicateLibrary& library);
Condition parseCondition(std::string_view text, const PredicateLibrary& library);
PredicateRef parsePredicateDecl(std::string_view text);

std::string unparse(const Srem& e);
// Declarations of every predicate e uses, then the expression.
std::string unparsePatternFile(const Srem& e);

// ---- derivation oracle

struct DerivationResult {
    std::vector<Valuation> valuations;

    bool empty() const { return valuations.empty(); }
    bool contains(const Valuation& v) const;
};

DerivationResult derive(const Srem& e, std::span<const Event> s, const Valuation& v);
bool accepts(const Srem& e, std::span<const Event> s);

}  // namespace sracer

#endif  // SRACER_PATTERN_HPP_
