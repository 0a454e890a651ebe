// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SRACER_COMPILER_HPP_
#define SRACER_COMPILER_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "sracer/automaton.hpp"
#include "sracer/pattern.hpp"

namespace sracer {

// Thompson-style construction. Every sub-automaton shares the register set
// regTop(e). Throws WindowedInput when e contains a window.
Sra compile(const Srem& e);

Sra eliminateEpsilon(const Sra& a);

// Registers become partition blocks b1..bw; states pair an original state with
// the partition that tells which original registers share a block.
Sra toSingleRegister(const Sra& a);

struct ClosureOptions {
    bool renameRegisters = true;  // otherwise a shared register throws RegisterCollision
};

Sra unionOf(const Sra& a, const Sra& b, const ClosureOptions& options = {});
Sra concatOf(const Sra& a, const Sra& b, const ClosureOptions& options = {});
Sra intersect(const Sra& a, const Sra& b, const ClosureOptions& options = {});
Sra starOf(const Sra& a);

struct UnrollMaps {
    std::vector<StateId> copyOfQ;              // unrolled state -> original state
    std::map<Register, Register> copyOfR;      // unrolled register -> original register
};

struct Unrolled {
    Sra automaton;
    UnrollMaps maps;
};

// Tree-shaped automaton for the runs of length <= w. Expects an epsilon-free,
// single-register input.
Unrolled unroll(const Sra& a, std::size_t w);

// Powerset construction with minterm labels, over reachable subsets only.
// Throws NotUnrolled on a cyclic input.
Sra determinize(const Sra& unrolled);
// Throws NotWindowed unless e is a window.
Sra determinize(const Srem& windowed);

// Adds a dead state so that every (state, element, valuation) has a move.
Sra complete(const Sra& deterministic);
Sra completeAndComplement(const Sra& deterministic);
Sra completeAndComplement(const Srem& windowed);

// State elimination over a generalized automaton with expression labels.
Srem sraToSrem(const Sra& a);

// compile, eliminateEpsilon, toSingleRegister, unroll.
Sra compileWindowed(const Srem& windowed);

// Automaton for the streaming form of e: it is in a final state after element
// k iff some suffix ending at k matches e. Epsilon-free.
Sra compileStreaming(const Srem& e);

// Deterministic streaming automaton for a windowed expression. Runs started at
// different positions write disjoint register banks (position mod w), which
// keeps the register contents of concurrent runs apart.
Sra determinizeStreaming(const Srem& windowed);

struct Stage {
    std::string name;
    Sra automaton;
};

// Intermediate automata of the pipeline for e, for inspection.
std::vector<Stage> pipelineStages(const Srem& e);

}  // namespace sracer

#endif  // SRACER_COMPILER_HPP_
