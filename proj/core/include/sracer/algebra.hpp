// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SRACER_ALGEBRA_HPP_
#define SRACER_ALGEBRA_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sracer/error.hpp"

namespace sracer {

// Attribute values: categorical text, integers, reals.
using Value = std::variant<std::string, std::int64_t, double>;

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

// Ints and reals compare numerically; text compares lexicographically.
// Text against a number is unordered: only Ne holds.
bool compareValues(const Value& lhs, CmpOp op, const Value& rhs);
std::string valueToString(const Value& v);
const char* cmpOpSymbol(CmpOp op);

class Event {
public:
    using Attribute = std::pair<std::string, Value>;

    Event();
    explicit Event(std::vector<Attribute> attributes);
    Event(std::initializer_list<Attribute> attributes);

    const Value* get(std::string_view name) const;
    const std::vector<Attribute>& attributes() const;
    std::size_t hash() const;
    std::string toString() const;

    bool operator==(const Event& other) const;

private:
    struct Data;
    std::shared_ptr<const Data> data_;
};

// The name doubles as the opaque id; uniqueness is by name inside one scope.
class Register {
public:
    Register() = default;
    explicit Register(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }

    auto operator<=>(const Register&) const = default;
    bool operator==(const Register&) const = default;

private:
    std::string name_;
};

// Partial map Register -> Event; absent entries are the empty register.
class Valuation {
public:
    Valuation() = default;

    const Event* get(const Register& r) const;
    bool defined(const Register& r) const { return get(r) != nullptr; }
    Valuation with(const Register& r, const Event& u) const;
    Valuation with(std::span<const Register> rs, const Event& u) const;

    const std::vector<std::pair<Register, Event>>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::size_t hash() const;
    std::string toString() const;

    bool operator==(const Valuation& other) const { return entries_ == other.entries_; }

private:
    std::vector<std::pair<Register, Event>> entries_;  // sorted by register
};

class Predicate {
public:
    using Evaluator = std::function<bool(std::span<const Event* const>)>;

    // `source` is the declaration text in pattern syntax; predicates without
    // one cannot be serialized.
    Predicate(std::string name, std::size_t arity, Evaluator evaluator, std::string source = {});

    const std::string& name() const { return name_; }
    std::size_t arity() const { return arity_; }
    const std::string& source() const { return source_; }
    bool operator()(std::span<const Event* const> args) const { return evaluator_(args); }

private:
    std::string name_;
    std::size_t arity_;
    Evaluator evaluator_;
    std::string source_;
};

using PredicateRef = std::shared_ptr<const Predicate>;

// The unary relation that holds for every element.
PredicateRef truePredicate();

class PredicateLibrary {
public:
    void add(PredicateRef p);  // throws DuplicatePredicate
    PredicateRef find(std::string_view name) const;
    std::vector<PredicateRef> all() const;
    void merge(const PredicateLibrary& other);

private:
    std::map<std::string, PredicateRef, std::less<>> preds_;
};

// Predicates over attribute comparisons. Argument 0 is the first parameter.
struct AttrOperand {
    std::optional<std::size_t> param;  // nullopt: constant
    std::string attribute;
    Value constant;
};

struct AttrExpr {
    enum class Kind { True, Compare, Not, And, Or };
    Kind kind = Kind::True;
    AttrOperand lhs, rhs;
    CmpOp op = CmpOp::Eq;
    std::vector<AttrExpr> children;
};

bool evalAttrExpr(const AttrExpr& e, std::span<const Event* const> args);
std::string attrExprToString(const AttrExpr& e, const std::vector<std::string>& params);

PredicateRef makeAttrPredicate(std::string name, std::vector<std::string> params, AttrExpr body);

// Shorthands used all over the tests and examples.
//   attrIs("TypeIsT", "type", "T")       x.type = "T"
//   attrCmp("Hot", "value", Gt, 50)      x.value > 50
//   attrsEq("EqualId", "id")             x.id = y.id
PredicateRef attrIs(std::string name, std::string attribute, Value constant);
PredicateRef attrCmp(std::string name, std::string attribute, CmpOp op, Value constant);
PredicateRef attrsEq(std::string name, std::string attribute);

class Condition {
public:
    enum class Kind { True, Atom, Not, And, Or };
    // nullopt stands for the current element ~
    using Arg = std::optional<Register>;

    Condition();  // True

    static Condition top();
    static Condition atom(PredicateRef p, std::vector<Arg> args);
    static Condition negate(Condition c);
    static Condition conj(Condition a, Condition b);
    static Condition conj(std::vector<Condition> cs);  // no flattening; 0 -> True, 1 -> itself
    static Condition disj(Condition a, Condition b);
    static Condition disj(std::vector<Condition> cs);

    Kind kind() const;
    const PredicateRef& predicate() const;
    const std::vector<Arg>& args() const;
    const std::vector<Condition>& children() const;

    // Register selection: distinct registers read by atoms, in first-use order.
    std::vector<Register> registers() const;
    Condition renamed(const std::function<Register(const Register&)>& f) const;

    std::string toString() const;  // pattern syntax
    std::size_t hash() const;
    bool operator==(const Condition& other) const;

private:
    struct Node;
    explicit Condition(std::shared_ptr<const Node> n);
    std::shared_ptr<const Node> node_;
};

// Strict compatibility: throws UnboundRegister on an empty register.
bool evaluateCondition(const Condition& c, const Event& current, const Valuation& v);
// Total reading: an atom whose register is empty does not hold.
bool satisfies(const Condition& c, const Event& current, const Valuation& v);
// Same, with register contents supplied by the caller.
using RegisterResolver = std::function<const Event*(const Register&)>;
bool satisfies(const Condition& c, const Event& current, const RegisterResolver& resolve);

// One element of a minterm family: every input condition, positive or negated.
struct Minterm {
    std::vector<std::pair<Condition, bool>> literals;  // (condition, positive)

    Condition condition() const;
    bool entails(const Condition& c) const;
};

std::vector<Minterm> mintermFamily(const std::vector<Condition>& conditions);
std::vector<Condition> minterms(const std::vector<Condition>& conditions);
// True iff c is a positive conjunct of the minterm (True is always entailed).
bool entails(const Condition& minterm, const Condition& c);
// Two conditions are syntactically exclusive when one carries a literal the
// other carries negated.
bool syntacticallyExclusive(const Condition& a, const Condition& b);

struct ConditionHash {
    std::size_t operator()(const Condition& c) const { return c.hash(); }
};
struct EventHash {
    std::size_t operator()(const Event& e) const { return e.hash(); }
};
struct ValuationHash {
    std::size_t operator()(const Valuation& v) const { return v.hash(); }
};

inline std::size_t hashCombine(std::size_t seed, std::size_t v)
{
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace sracer

#endif  // SRACER_ALGEBRA_HPP_
