// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include "sracer/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sracer {

namespace {

std::size_t hashValue(const Value& v)
{
    std::size_t h = std::hash<std::size_t>{}(v.index());
    std::visit([&](const auto& x) { h = hashCombine(h, std::hash<std::decay_t<decltype(x)>>{}(x)); }, v);
    return h;
}

std::string quoteText(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string literalToString(const Value& v)
{
    if (const auto* s = std::get_if<std::string>(&v))
        return quoteText(*s);
    if (const auto* i = std::get_if<std::int64_t>(&v))
        return std::to_string(*i);
    std::ostringstream os;
    os.precision(17);
    os << std::get<double>(v);
    std::string s = os.str();
    if (s.find_first_of(".eEn") == std::string::npos)  // keep it a real on re-parse
        s += ".0";
    return s;
}

}  // namespace

bool compareValues(const Value& lhs, CmpOp op, const Value& rhs)
{
    const auto* ls = std::get_if<std::string>(&lhs);
    const auto* rs = std::get_if<std::string>(&rhs);
    int c = 0;
    if (ls && rs) {
        c = ls->compare(*rs);
    } else if (ls || rs) {
        return op == CmpOp::Ne;
    } else if (std::holds_alternative<std::int64_t>(lhs) && std::holds_alternative<std::int64_t>(rhs)) {
        auto a = std::get<std::int64_t>(lhs), b = std::get<std::int64_t>(rhs);
        c = a < b ? -1 : (a > b ? 1 : 0);
    } else {
        auto num = [](const Value& v) {
            if (const auto* i = std::get_if<std::int64_t>(&v))
                return static_cast<double>(*i);
            return std::get<double>(v);
        };
        double a = num(lhs), b = num(rhs);
        if (std::isnan(a) || std::isnan(b))
            return op == CmpOp::Ne;
        c = a < b ? -1 : (a > b ? 1 : 0);
    }
    switch (op) {
    case CmpOp::Eq: return c == 0;
    case CmpOp::Ne: return c != 0;
    case CmpOp::Lt: return c < 0;
    case CmpOp::Le: return c <= 0;
    case CmpOp::Gt: return c > 0;
    case CmpOp::Ge: return c >= 0;
    }
    return false;
}

std::string valueToString(const Value& v)
{
    if (const auto* s = std::get_if<std::string>(&v))
        return *s;
    return literalToString(v);
}

const char* cmpOpSymbol(CmpOp op)
{
    switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    }
    return "?";
}

// ---------------------------------------------------------------- Event

struct Event::Data {
    std::vector<Attribute> attrs;
    std::size_t hash = 0;
};

Event::Event() : Event(std::vector<Attribute>{}) {}

Event::Event(std::initializer_list<Attribute> attributes)
    : Event(std::vector<Attribute>(attributes)) {}

Event::Event(std::vector<Attribute> attributes)
{
    std::sort(attributes.begin(), attributes.end(),
              [](const Attribute& a, const Attribute& b) { return a.first < b.first; });
    std::size_t h = 0x51ed;
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        if (attributes[i].first.empty())
            throw InvalidEvent("event attribute with empty name");
        if (i > 0 && attributes[i].first == attributes[i - 1].first)
            throw InvalidEvent("duplicate event attribute '" + attributes[i].first + "'");
        h = hashCombine(h, std::hash<std::string>{}(attributes[i].first));
        h = hashCombine(h, hashValue(attributes[i].second));
    }
    auto d = std::make_shared<Data>();
    d->attrs = std::move(attributes);
    d->hash = h;
    data_ = std::move(d);
}

const Value* Event::get(std::string_view name) const
{
    const auto& a = data_->attrs;
    auto it = std::lower_bound(a.begin(), a.end(), name,
                               [](const Attribute& x, std::string_view n) { return x.first < n; });
    if (it == a.end() || it->first != name)
        return nullptr;
    return &it->second;
}

const std::vector<Event::Attribute>& Event::attributes() const { return data_->attrs; }

std::size_t Event::hash() const { return data_->hash; }

bool Event::operator==(const Event& other) const
{
    if (data_ == other.data_)
        return true;
    return data_->hash == other.data_->hash && data_->attrs == other.data_->attrs;
}

std::string Event::toString() const
{
    std::string s = "{";
    bool first = true;
    for (const auto& [k, v] : data_->attrs) {
        if (!first)
            s += ", ";
        first = false;
        s += k + "=" + literalToString(v);
    }
    return s + "}";
}

// ---------------------------------------------------------------- Valuation

const Event* Valuation::get(const Register& r) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), r,
                               [](const auto& e, const Register& x) { return e.first < x; });
    if (it == entries_.end() || it->first != r)
        return nullptr;
    return &it->second;
}

Valuation Valuation::with(const Register& r, const Event& u) const
{
    Valuation out = *this;
    auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), r,
                               [](const auto& e, const Register& x) { return e.first < x; });
    if (it != out.entries_.end() && it->first == r)
        it->second = u;
    else
        out.entries_.insert(it, {r, u});
    return out;
}

Valuation Valuation::with(std::span<const Register> rs, const Event& u) const
{
    Valuation out = *this;
    for (const auto& r : rs) {
        auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), r,
                                   [](const auto& e, const Register& x) { return e.first < x; });
        if (it != out.entries_.end() && it->first == r)
            it->second = u;
        else
            out.entries_.insert(it, {r, u});
    }
    return out;
}

std::size_t Valuation::hash() const
{
    std::size_t h = 0x7a1;
    for (const auto& [r, e] : entries_) {
        h = hashCombine(h, std::hash<std::string>{}(r.name()));
        h = hashCombine(h, e.hash());
    }
    return h;
}

std::string Valuation::toString() const
{
    if (entries_.empty())
        return "#";
    std::string s = "[";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i)
            s += ", ";
        s += entries_[i].first.name() + "<-" + entries_[i].second.toString();
    }
    return s + "]";
}

// ---------------------------------------------------------------- Predicates

Predicate::Predicate(std::string name, std::size_t arity, Evaluator evaluator, std::string source)
    : name_(std::move(name)), arity_(arity), evaluator_(std::move(evaluator)), source_(std::move(source))
{
    if (arity_ == 0)
        throw ArityMismatch("predicate '" + name_ + "' must have arity >= 1");
}

PredicateRef truePredicate()
{
    static const PredicateRef top = std::make_shared<Predicate>(
        "TRUE", 1, [](std::span<const Event* const>) { return true; });
    return top;
}

void PredicateLibrary::add(PredicateRef p)
{
    auto [it, inserted] = preds_.emplace(p->name(), p);
    if (!inserted)
        throw DuplicatePredicate("predicate '" + p->name() + "' declared twice");
}

PredicateRef PredicateLibrary::find(std::string_view name) const
{
    auto it = preds_.find(name);
    return it == preds_.end() ? nullptr : it->second;
}

std::vector<PredicateRef> PredicateLibrary::all() const
{
    std::vector<PredicateRef> out;
    for (const auto& [_, p] : preds_)
        out.push_back(p);
    return out;
}

void PredicateLibrary::merge(const PredicateLibrary& other)
{
    for (const auto& [name, p] : other.preds_) {
        auto it = preds_.find(name);
        if (it == preds_.end())
            preds_.emplace(name, p);
        else if (it->second != p && it->second->source() != p->source())
            throw DuplicatePredicate("conflicting declarations of '" + name + "'");
    }
}

bool evalAttrExpr(const AttrExpr& e, std::span<const Event* const> args)
{
    switch (e.kind) {
    case AttrExpr::Kind::True:
        return true;
    case AttrExpr::Kind::Compare: {
        auto resolve = [&](const AttrOperand& o) -> const Value* {
            if (!o.param)
                return &o.constant;
            return args[*o.param]->get(o.attribute);
        };
        const Value* l = resolve(e.lhs);
        const Value* r = resolve(e.rhs);
        if (!l || !r)
            return false;
        return compareValues(*l, e.op, *r);
    }
    case AttrExpr::Kind::Not:
        return !evalAttrExpr(e.children.at(0), args);
    case AttrExpr::Kind::And:
        for (const auto& c : e.children)
            if (!evalAttrExpr(c, args))
                return false;
        return true;
    case AttrExpr::Kind::Or:
        for (const auto& c : e.children)
            if (evalAttrExpr(c, args))
                return true;
        return false;
    }
    return false;
}

std::string attrExprToString(const AttrExpr& e, const std::vector<std::string>& params)
{
    auto operand = [&](const AttrOperand& o) {
        if (o.param)
            return params.at(*o.param) + "." + o.attribute;
        return literalToString(o.constant);
    };
    auto child = [&](const AttrExpr& c) {
        std::string s = attrExprToString(c, params);
        if (c.kind == AttrExpr::Kind::And || c.kind == AttrExpr::Kind::Or)
            return "(" + s + ")";
        return s;
    };
    switch (e.kind) {
    case AttrExpr::Kind::True:
        return "TRUE";
    case AttrExpr::Kind::Compare:
        return operand(e.lhs) + " " + cmpOpSymbol(e.op) + " " + operand(e.rhs);
    case AttrExpr::Kind::Not:
        return "!" + child(e.children.at(0));
    case AttrExpr::Kind::And:
    case AttrExpr::Kind::Or: {
        std::string s;
        for (std::size_t i = 0; i < e.children.size(); ++i) {
            if (i)
                s += e.kind == AttrExpr::Kind::And ? " & " : " | ";
            s += child(e.children[i]);
        }
        return s;
    }
    }
    return {};
}

namespace {

void checkParams(const AttrExpr& e, std::size_t n)
{
    for (const auto* o : {&e.lhs, &e.rhs})
        if (e.kind == AttrExpr::Kind::Compare && o->param && *o->param >= n)
            throw ArityMismatch("attribute operand refers to parameter " + std::to_string(*o->param));
    for (const auto& c : e.children)
        checkParams(c, n);
}

}  // namespace

PredicateRef makeAttrPredicate(std::string name, std::vector<std::string> params, AttrExpr body)
{
    checkParams(body, params.size());
    std::string source = "pred " + name + "(";
    for (std::size_t i = 0; i < params.size(); ++i)
        source += (i ? ", " : "") + params[i];
    source += "): " + attrExprToString(body, params);
    std::size_t arity = params.size();
    return std::make_shared<Predicate>(
        std::move(name), arity,
        [body = std::move(body)](std::span<const Event* const> args) { return evalAttrExpr(body, args); },
        std::move(source));
}

PredicateRef attrCmp(std::string name, std::string attribute, CmpOp op, Value constant)
{
    AttrExpr e;
    e.kind = AttrExpr::Kind::Compare;
    e.lhs.param = 0;
    e.lhs.attribute = std::move(attribute);
    e.op = op;
    e.rhs.constant = std::move(constant);
    return makeAttrPredicate(std::move(name), {"x"}, std::move(e));
}

PredicateRef attrIs(std::string name, std::string attribute, Value constant)
{
    return attrCmp(std::move(name), std::move(attribute), CmpOp::Eq, std::move(constant));
}

PredicateRef attrsEq(std::string name, std::string attribute)
{
    AttrExpr e;
    e.kind = AttrExpr::Kind::Compare;
    e.lhs.param = 0;
    e.lhs.attribute = attribute;
    e.rhs.param = 1;
    e.rhs.attribute = std::move(attribute);
    return makeAttrPredicate(std::move(name), {"x", "y"}, std::move(e));
}

// ---------------------------------------------------------------- Condition

struct Condition::Node {
    Kind kind = Kind::True;
    PredicateRef pred;
    std::vector<Arg> args;
    std::vector<Condition> children;
    std::size_t hash = 0;
};

Condition::Condition() : Condition(top()) {}

Condition::Condition(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

Condition Condition::top()
{
    static const Condition t = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::True;
        n->hash = 0x7e57;
        return Condition(std::shared_ptr<const Node>(std::move(n)));
    }();
    return t;
}

Condition Condition::atom(PredicateRef p, std::vector<Arg> args)
{
    if (!p)
        throw UnknownPredicate("null predicate");
    if (args.size() != p->arity())
        throw ArityMismatch("predicate '" + p->name() + "' expects " + std::to_string(p->arity()) +
                            " arguments, got " + std::to_string(args.size()));
    if (p == truePredicate())
        return top();
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    std::size_t h = hashCombine(0xa70, std::hash<std::string>{}(p->name()));
    for (const auto& a : args)
        h = hashCombine(h, a ? std::hash<std::string>{}(a->name()) : 0x7);
    n->pred = std::move(p);
    n->args = std::move(args);
    n->hash = h;
    return Condition(std::move(n));
}

Condition Condition::negate(Condition c)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Not;
    n->hash = hashCombine(0x4e07, c.hash());
    n->children.push_back(std::move(c));
    return Condition(std::move(n));
}

namespace {

template <typename Make>
Condition nary(std::vector<Condition> cs, std::size_t seed, Make&& make)
{
    std::size_t h = seed;
    for (const auto& c : cs)
        h = hashCombine(h, c.hash());
    return make(std::move(cs), h);
}

}  // namespace

Condition Condition::conj(Condition a, Condition b) { return conj(std::vector<Condition>{std::move(a), std::move(b)}); }

Condition Condition::conj(std::vector<Condition> cs)
{
    if (cs.empty())
        return top();
    if (cs.size() == 1)
        return cs.front();
    return nary(std::move(cs), 0xa2d, [](std::vector<Condition> v, std::size_t h) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::And;
        n->children = std::move(v);
        n->hash = h;
        return Condition(std::move(n));
    });
}

Condition Condition::disj(Condition a, Condition b) { return disj(std::vector<Condition>{std::move(a), std::move(b)}); }

Condition Condition::disj(std::vector<Condition> cs)
{
    if (cs.empty())
        throw InvalidPattern("empty disjunction");
    if (cs.size() == 1)
        return cs.front();
    return nary(std::move(cs), 0x0e5, [](std::vector<Condition> v, std::size_t h) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Or;
        n->children = std::move(v);
        n->hash = h;
        return Condition(std::move(n));
    });
}

Condition::Kind Condition::kind() const { return node_->kind; }
const PredicateRef& Condition::predicate() const { return node_->pred; }
const std::vector<Condition::Arg>& Condition::args() const { return node_->args; }
const std::vector<Condition>& Condition::children() const { return node_->children; }
std::size_t Condition::hash() const { return node_->hash; }

bool Condition::operator==(const Condition& other) const
{
    if (node_ == other.node_)
        return true;
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (a.hash != b.hash || a.kind != b.kind)
        return false;
    if (a.kind == Kind::Atom)
        return a.pred->name() == b.pred->name() && a.args == b.args;
    return a.children == b.children;
}

std::vector<Register> Condition::registers() const
{
    std::vector<Register> out;
    std::function<void(const Condition&)> walk = [&](const Condition& c) {
        for (const auto& a : c.args())
            if (a && std::find(out.begin(), out.end(), *a) == out.end())
                out.push_back(*a);
        for (const auto& ch : c.children())
            walk(ch);
    };
    walk(*this);
    return out;
}

Condition Condition::renamed(const std::function<Register(const Register&)>& f) const
{
    switch (kind()) {
    case Kind::True:
        return *this;
    case Kind::Atom: {
        std::vector<Arg> args = node_->args;
        for (auto& a : args)
            if (a)
                a = f(*a);
        return atom(node_->pred, std::move(args));
    }
    case Kind::Not:
        return negate(children()[0].renamed(f));
    case Kind::And:
    case Kind::Or: {
        std::vector<Condition> cs;
        for (const auto& c : children())
            cs.push_back(c.renamed(f));
        return kind() == Kind::And ? conj(std::move(cs)) : disj(std::move(cs));
    }
    }
    return *this;
}

std::string Condition::toString() const
{
    auto child = [](const Condition& c) {
        std::string s = c.toString();
        if (c.kind() == Kind::And || c.kind() == Kind::Or)
            return "(" + s + ")";
        return s;
    };
    switch (kind()) {
    case Kind::True:
        return "TRUE";
    case Kind::Atom: {
        std::string s = node_->pred->name() + "(";
        for (std::size_t i = 0; i < node_->args.size(); ++i) {
            if (i)
                s += ", ";
            s += node_->args[i] ? node_->args[i]->name() : "~";
        }
        return s + ")";
    }
    case Kind::Not:
        return "!" + child(children()[0]);
    case Kind::And:
    case Kind::Or: {
        std::string s;
        for (std::size_t i = 0; i < children().size(); ++i) {
            if (i)
                s += kind() == Kind::And ? " & " : " | ";
            const auto& c = children()[i];
            // conjunctions inside a disjunction bind tighter and stay bare
            if (kind() == Kind::Or && c.kind() == Kind::And)
                s += c.toString();
            else
                s += child(c);
        }
        return s;
    }
    }
    return {};
}

namespace {

template <typename Lookup>
bool evalCondition(const Condition& c, const Event& current, const Lookup& lookup)
{
    switch (c.kind()) {
    case Condition::Kind::True:
        return true;
    case Condition::Kind::Atom: {
        const auto& args = c.args();
        const Event* resolved[8];
        std::vector<const Event*> big;
        const Event** buf = resolved;
        if (args.size() > 8) {
            big.resize(args.size());
            buf = big.data();
        }
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (!args[i]) {
                buf[i] = &current;
                continue;
            }
            buf[i] = lookup(*args[i]);
            if (!buf[i])
                return false;
        }
        return (*c.predicate())(std::span<const Event* const>(buf, args.size()));
    }
    case Condition::Kind::Not:
        return !evalCondition(c.children()[0], current, lookup);
    case Condition::Kind::And:
        for (const auto& ch : c.children())
            if (!evalCondition(ch, current, lookup))
                return false;
        return true;
    case Condition::Kind::Or:
        for (const auto& ch : c.children())
            if (evalCondition(ch, current, lookup))
                return true;
        return false;
    }
    return false;
}

}  // namespace

bool evaluateCondition(const Condition& c, const Event& current, const Valuation& v)
{
    // checked up front so short-circuiting cannot hide an ill-sequenced read
    for (const auto& r : c.registers())
        if (!v.defined(r))
            throw UnboundRegister("condition " + c.toString() + " reads empty register " + r.name());
    return satisfies(c, current, v);
}

bool satisfies(const Condition& c, const Event& current, const Valuation& v)
{
    return evalCondition(c, current, [&v](const Register& r) { return v.get(r); });
}

bool satisfies(const Condition& c, const Event& current, const RegisterResolver& resolve)
{
    return evalCondition(c, current, resolve);
}

}  // namespace sracer
