// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SRACER_SERIALIZE_HPP_
#define SRACER_SERIALIZE_HPP_

#include <string>
#include <string_view>

#include "sracer/automaton.hpp"
#include "sracer/forecast.hpp"

namespace sracer {

// JSON documents. Conditions are written in pattern syntax and predicates as
// their declarations, so every predicate must carry its source. Errors throw
// SerializationError.

std::string serializeAutomaton(const Sra& a);
// `base` resolves predicates that the document does not declare.
Sra deserializeAutomaton(std::string_view text, const PredicateLibrary* base = nullptr);

std::string serializePst(const Pst& t);
Pst deserializePst(std::string_view text);

// A learned forecasting model: deterministic automaton, its symbols, the tree.
struct Model {
    Sra dsra;
    SymbolMap symbols;
    Pst pst;
};

std::string serializeModel(const Model& m);
Model deserializeModel(std::string_view text);

}  // namespace sracer

#endif  // SRACER_SERIALIZE_HPP_
