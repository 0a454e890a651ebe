// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include "sracer/pattern.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sracer {

struct Srem::Node {
    Kind kind = Kind::Empty;
    Condition cond;
    Register reg;
    std::vector<Srem> kids;
    std::size_t w = 0;
    bool hasWindow = false;
    std::size_t hash = 0;
};

namespace {

bool isTopStar(const Srem& e)
{
    return e.kind() == Srem::Kind::Star && e.left().kind() == Srem::Kind::Cond &&
           e.left().condition().kind() == Condition::Kind::True;
}

}  // namespace

Srem::Srem() : Srem(empty()) {}

Srem::Srem(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

Srem Srem::empty()
{
    static const Srem e = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Empty;
        n->hash = 0xe0;
        return Srem(std::shared_ptr<const Node>(std::move(n)));
    }();
    return e;
}

Srem Srem::epsilon()
{
    static const Srem e = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Epsilon;
        n->hash = 0xe1;
        return Srem(std::shared_ptr<const Node>(std::move(n)));
    }();
    return e;
}

Srem Srem::cond(Condition c)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Cond;
    n->hash = hashCombine(0xc0, c.hash());
    n->cond = std::move(c);
    return Srem(std::move(n));
}

Srem Srem::condWrite(Condition c, Register r)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::CondWrite;
    n->hash = hashCombine(hashCombine(0xc1, c.hash()), std::hash<std::string>{}(r.name()));
    n->cond = std::move(c);
    n->reg = std::move(r);
    return Srem(std::move(n));
}

Srem Srem::concat(Srem a, Srem b)
{
    // the streaming wrapper is the one place a window may sit under another node
    bool streamingWindow = isTopStar(a) && b.kind() == Kind::Window;
    if ((a.containsWindow() || b.containsWindow()) && !streamingWindow)
        throw InvalidPattern("a window may only appear as the outermost operator");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Concat;
    n->hash = hashCombine(hashCombine(0xcc, a.hash()), b.hash());
    n->hasWindow = streamingWindow;
    n->kids = {std::move(a), std::move(b)};
    return Srem(std::move(n));
}

Srem Srem::alt(Srem a, Srem b)
{
    if (a.containsWindow() || b.containsWindow())
        throw InvalidPattern("a window may only appear as the outermost operator");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Or;
    n->hash = hashCombine(hashCombine(0x0b, a.hash()), b.hash());
    n->kids = {std::move(a), std::move(b)};
    return Srem(std::move(n));
}

Srem Srem::star(Srem a)
{
    if (a.containsWindow())
        throw InvalidPattern("a window may only appear as the outermost operator");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Star;
    n->hash = hashCombine(0x57, a.hash());
    n->kids = {std::move(a)};
    return Srem(std::move(n));
}

Srem Srem::window(Srem body, std::size_t w)
{
    if (w < 1)
        throw InvalidPattern("window size must be at least 1");
    if (body.containsWindow())
        throw InvalidPattern("nested windows are not allowed");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Window;
    n->hash = hashCombine(hashCombine(0x3d, body.hash()), w);
    n->hasWindow = true;
    n->w = w;
    n->kids = {std::move(body)};
    return Srem(std::move(n));
}

Srem::Kind Srem::kind() const { return node_->kind; }
const Condition& Srem::condition() const { return node_->cond; }
const Register& Srem::target() const { return node_->reg; }
const Srem& Srem::left() const { return node_->kids.at(0); }
const Srem& Srem::right() const { return node_->kids.at(1); }
std::size_t Srem::windowSize() const { return node_->w; }
bool Srem::containsWindow() const { return node_->hasWindow; }
std::size_t Srem::hash() const { return node_->hash; }

bool Srem::operator==(const Srem& other) const
{
    if (node_ == other.node_)
        return true;
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (a.hash != b.hash || a.kind != b.kind || a.w != b.w)
        return false;
    switch (a.kind) {
    case Kind::Empty:
    case Kind::Epsilon:
        return true;
    case Kind::Cond:
        return a.cond == b.cond;
    case Kind::CondWrite:
        return a.cond == b.cond && a.reg == b.reg;
    default:
        return a.kids == b.kids;
    }
}

namespace {

void walk(const Srem& e, const std::function<void(const Srem&)>& f)
{
    f(e);
    switch (e.kind()) {
    case Srem::Kind::Concat:
    case Srem::Kind::Or:
        walk(e.left(), f);
        walk(e.right(), f);
        break;
    case Srem::Kind::Star:
    case Srem::Kind::Window:
        walk(e.left(), f);
        break;
    default:
        break;
    }
}

}  // namespace

std::vector<Register> regTop(const Srem& e)
{
    std::set<Register> rs;
    walk(e, [&](const Srem& x) {
        if (x.kind() == Srem::Kind::Cond || x.kind() == Srem::Kind::CondWrite)
            for (auto& r : x.condition().registers())
                rs.insert(r);
        if (x.kind() == Srem::Kind::CondWrite)
            rs.insert(x.target());
    });
    return {rs.begin(), rs.end()};
}

std::vector<Register> writtenRegisters(const Srem& e)
{
    std::set<Register> rs;
    walk(e, [&](const Srem& x) {
        if (x.kind() == Srem::Kind::CondWrite)
            rs.insert(x.target());
    });
    return {rs.begin(), rs.end()};
}

std::vector<PredicateRef> predicatesOf(const Srem& e)
{
    std::vector<PredicateRef> out;
    std::function<void(const Condition&)> visit = [&](const Condition& c) {
        if (c.kind() == Condition::Kind::Atom) {
            const auto& p = c.predicate();
            if (std::none_of(out.begin(), out.end(), [&](const PredicateRef& q) { return q->name() == p->name(); }))
                out.push_back(p);
        }
        for (const auto& ch : c.children())
            visit(ch);
    };
    walk(e, [&](const Srem& x) {
        if (x.kind() == Srem::Kind::Cond || x.kind() == Srem::Kind::CondWrite)
            visit(x.condition());
    });
    return out;
}

std::size_t depth(const Srem& e)
{
    switch (e.kind()) {
    case Srem::Kind::Concat:
    case Srem::Kind::Or:
        return 1 + std::max(depth(e.left()), depth(e.right()));
    case Srem::Kind::Star:
    case Srem::Kind::Window:
        return 1 + depth(e.left());
    default:
        return 1;
    }
}

Srem toStreaming(const Srem& e)
{
    return Srem::concat(Srem::star(Srem::cond(Condition::top())), e);
}

// ---------------------------------------------------------------- unparse

namespace {

int precedence(const Srem& e)
{
    switch (e.kind()) {
    case Srem::Kind::Window: return 0;
    case Srem::Kind::Or: return 1;
    case Srem::Kind::Concat: return 2;
    case Srem::Kind::CondWrite:
    case Srem::Kind::Star: return 3;
    default: return 4;
    }
}

std::string condText(const Condition& c)
{
    std::string s = c.toString();
    if (c.kind() == Condition::Kind::And || c.kind() == Condition::Kind::Or)
        return "(" + s + ")";
    return s;
}

std::string unparseAt(const Srem& e, int needed)
{
    std::string s;
    switch (e.kind()) {
    case Srem::Kind::Empty: s = "NONE"; break;
    case Srem::Kind::Epsilon: s = "EPS"; break;
    case Srem::Kind::Cond: s = condText(e.condition()); break;
    case Srem::Kind::CondWrite: s = condText(e.condition()) + " -> " + e.target().name(); break;
    case Srem::Kind::Concat: s = unparseAt(e.left(), 2) + " ; " + unparseAt(e.right(), 3); break;
    case Srem::Kind::Or: s = unparseAt(e.left(), 1) + " + " + unparseAt(e.right(), 2); break;
    case Srem::Kind::Star: s = unparseAt(e.left(), 4) + "*"; break;
    case Srem::Kind::Window: s = unparseAt(e.left(), 1) + " within " + std::to_string(e.windowSize()); break;
    }
    if (precedence(e) < needed)
        return "(" + s + ")";
    return s;
}

}  // namespace

std::string unparse(const Srem& e) { return unparseAt(e, 0); }

std::string unparsePatternFile(const Srem& e)
{
    std::string out;
    for (const auto& p : predicatesOf(e)) {
        if (p->source().empty())
            throw SerializationError("predicate '" + p->name() + "' has no declaration text");
        out += p->source() + "\n";
    }
    return out + unparse(e) + "\n";
}

}  // namespace sracer
