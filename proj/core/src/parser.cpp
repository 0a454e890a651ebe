// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <set>

#include "sracer/pattern.hpp"

namespace sracer {

namespace {

enum class Tok {
    Ident, Int, Real, Text,
    LParen, RParen, Comma, Semi, Plus, Star, Arrow, Amp, Bar, Bang, Tilde, Dot, Colon,
    Eq, Ne, Lt, Le, Gt, Ge,
    Newline, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, col;
};

std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto push = [&](Tok k, std::string t, std::size_t l, std::size_t c) { out.push_back({k, std::move(t), l, c}); };
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        std::size_t l = line, cl = col;
        if (c == '\n') {
            push(Tok::Newline, "\n", l, cl);
            advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n')
                advance(1);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            push(Tok::Ident, std::string(src.substr(i, j - i)), l, cl);
            advance(j - i);
            continue;
        }
        bool negNumber = c == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1]));
        if (std::isdigit(static_cast<unsigned char>(c)) || negNumber) {
            std::size_t j = i + 1;
            bool real = false;
            while (j < src.size()) {
                char d = src[j];
                if (std::isdigit(static_cast<unsigned char>(d))) {
                    ++j;
                } else if ((d == '.' || d == 'e' || d == 'E') && j + 1 < src.size()) {
                    real = true;
                    ++j;
                    if ((d == 'e' || d == 'E') && (src[j] == '-' || src[j] == '+'))
                        ++j;
                } else {
                    break;
                }
            }
            push(real ? Tok::Real : Tok::Int, std::string(src.substr(i, j - i)), l, cl);
            advance(j - i);
            continue;
        }
        if (c == '"') {
            std::string s;
            std::size_t j = i + 1;
            bool closed = false;
            while (j < src.size()) {
                if (src[j] == '\\' && j + 1 < src.size()) {
                    s += src[j + 1];
                    j += 2;
                } else if (src[j] == '"') {
                    closed = true;
                    ++j;
                    break;
                } else if (src[j] == '\n') {
                    break;
                } else {
                    s += src[j++];
                }
            }
            if (!closed)
                throw SyntaxError("unterminated string literal", l, cl);
            push(Tok::Text, std::move(s), l, cl);
            advance(j - i);
            continue;
        }
        auto two = src.substr(i, 2);
        struct Sym {
            std::string_view s;
            Tok k;
        };
        static const Sym syms[] = {
            {"->", Tok::Arrow}, {"!=", Tok::Ne}, {"<=", Tok::Le}, {">=", Tok::Ge}, {"==", Tok::Eq},
            {"(", Tok::LParen}, {")", Tok::RParen}, {",", Tok::Comma}, {";", Tok::Semi}, {"+", Tok::Plus},
            {"*", Tok::Star}, {"&", Tok::Amp}, {"|", Tok::Bar}, {"!", Tok::Bang}, {"~", Tok::Tilde},
            {".", Tok::Dot}, {":", Tok::Colon}, {"=", Tok::Eq}, {"<", Tok::Lt}, {">", Tok::Gt},
        };
        bool matched = false;
        for (const auto& sym : syms) {
            if ((sym.s.size() == 2 && two == sym.s) || (sym.s.size() == 1 && c == sym.s[0])) {
                push(sym.k, std::string(sym.s), l, cl);
                advance(sym.s.size());
                matched = true;
                break;
            }
        }
        if (!matched)
            throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
    }
    push(Tok::End, "", line, col);
    return out;
}

bool isKeyword(const std::string& s)
{
    return s == "TRUE" || s == "EPS" || s == "NONE" || s == "within" || s == "pred";
}

class Parser {
public:
    Parser(std::vector<Token> toks, const PredicateLibrary& lib) : toks_(std::move(toks)), lib_(lib) {}

    std::size_t pos = 0;

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos + k, toks_.size() - 1)]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool atIdent(std::string_view s) const { return at(Tok::Ident) && peek().text == s; }

    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().line, peek().col); }

    const Token& expect(Tok k, const char* what)
    {
        if (!at(k))
            fail(std::string("expected ") + what + (at(Tok::End) ? " but reached end of input" : " near '" + peek().text + "'"));
        return toks_[pos++];
    }

    void skipNewlines()
    {
        while (at(Tok::Newline))
            ++pos;
    }

    // ---- predicate declarations

    PredicateRef declaration()
    {
        expect(Tok::Ident, "'pred'");
        const Token& name = expect(Tok::Ident, "predicate name");
        if (isKeyword(name.text))
            throw SyntaxError("reserved word '" + name.text + "' used as predicate name", name.line, name.col);
        expect(Tok::LParen, "'('");
        std::vector<std::string> params;
        while (!at(Tok::RParen)) {
            if (!params.empty())
                expect(Tok::Comma, "','");
            const Token& p = expect(Tok::Ident, "parameter name");
            if (std::find(params.begin(), params.end(), p.text) != params.end())
                throw SyntaxError("duplicate parameter '" + p.text + "'", p.line, p.col);
            params.push_back(p.text);
        }
        expect(Tok::RParen, "')'");
        if (params.empty())
            fail("predicate '" + name.text + "' needs at least one parameter");
        expect(Tok::Colon, "':'");
        AttrExpr body = declOr(params);
        if (!at(Tok::Newline) && !at(Tok::End))
            fail("unexpected '" + peek().text + "' after predicate body");
        return makeAttrPredicate(name.text, params, std::move(body));
    }

    AttrExpr declOr(const std::vector<std::string>& ps)
    {
        AttrExpr first = declAnd(ps);
        if (!at(Tok::Bar))
            return first;
        AttrExpr e;
        e.kind = AttrExpr::Kind::Or;
        e.children.push_back(std::move(first));
        while (at(Tok::Bar)) {
            ++pos;
            e.children.push_back(declAnd(ps));
        }
        return e;
    }

    AttrExpr declAnd(const std::vector<std::string>& ps)
    {
        AttrExpr first = declNot(ps);
        if (!at(Tok::Amp))
            return first;
        AttrExpr e;
        e.kind = AttrExpr::Kind::And;
        e.children.push_back(std::move(first));
        while (at(Tok::Amp)) {
            ++pos;
            e.children.push_back(declNot(ps));
        }
        return e;
    }

    AttrExpr declNot(const std::vector<std::string>& ps)
    {
        if (at(Tok::Bang)) {
            ++pos;
            AttrExpr e;
            e.kind = AttrExpr::Kind::Not;
            e.children.push_back(declNot(ps));
            return e;
        }
        if (at(Tok::LParen)) {
            ++pos;
            AttrExpr e = declOr(ps);
            expect(Tok::RParen, "')'");
            return e;
        }
        if (atIdent("TRUE")) {
            ++pos;
            return AttrExpr{};
        }
        AttrExpr e;
        e.kind = AttrExpr::Kind::Compare;
        e.lhs = operand(ps);
        switch (peek().kind) {
        case Tok::Eq: e.op = CmpOp::Eq; break;
        case Tok::Ne: e.op = CmpOp::Ne; break;
        case Tok::Lt: e.op = CmpOp::Lt; break;
        case Tok::Le: e.op = CmpOp::Le; break;
        case Tok::Gt: e.op = CmpOp::Gt; break;
        case Tok::Ge: e.op = CmpOp::Ge; break;
        default: fail("expected a comparison operator");
        }
        ++pos;
        e.rhs = operand(ps);
        if (!e.lhs.param && !e.rhs.param)
            fail("a comparison needs at least one attribute operand");
        return e;
    }

    AttrOperand operand(const std::vector<std::string>& ps)
    {
        AttrOperand o;
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Text:
            o.constant = t.text;
            ++pos;
            return o;
        case Tok::Int: {
            std::int64_t v = 0;
            auto r = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (r.ec != std::errc() || r.ptr != t.text.data() + t.text.size())
                fail("bad integer literal '" + t.text + "'");
            o.constant = v;
            ++pos;
            return o;
        }
        case Tok::Real: {
            try {
                std::size_t used = 0;
                o.constant = std::stod(t.text, &used);
                if (used != t.text.size())
                    fail("bad real literal '" + t.text + "'");
            } catch (const std::logic_error&) {
                fail("bad real literal '" + t.text + "'");
            }
            ++pos;
            return o;
        }
        case Tok::Ident: {
            auto it = std::find(ps.begin(), ps.end(), t.text);
            if (it == ps.end())
                fail("'" + t.text + "' is not a parameter of this predicate");
            ++pos;
            expect(Tok::Dot, "'.' after parameter");
            o.param = static_cast<std::size_t>(it - ps.begin());
            o.attribute = expect(Tok::Ident, "attribute name").text;
            return o;
        }
        default:
            fail("expected an attribute or a literal");
        }
    }

    // ---- conditions

    Condition condOr()
    {
        std::vector<Condition> cs{condAnd()};
        while (at(Tok::Bar)) {
            ++pos;
            cs.push_back(condAnd());
        }
        return cs.size() == 1 ? cs[0] : Condition::disj(std::move(cs));
    }

    Condition condAnd()
    {
        std::vector<Condition> cs{condNot()};
        while (at(Tok::Amp)) {
            ++pos;
            cs.push_back(condNot());
        }
        return cs.size() == 1 ? cs[0] : Condition::conj(std::move(cs));
    }

    Condition condNot()
    {
        if (at(Tok::Bang)) {
            ++pos;
            return Condition::negate(condNot());
        }
        if (at(Tok::LParen)) {
            ++pos;
            Condition c = condOr();
            expect(Tok::RParen, "')'");
            return c;
        }
        if (atIdent("TRUE")) {
            ++pos;
            return Condition::top();
        }
        const Token& name = expect(Tok::Ident, "a condition");
        if (isKeyword(name.text))
            throw SyntaxError("unexpected '" + name.text + "' inside a condition", name.line, name.col);
        PredicateRef p = lib_.find(name.text);
        if (!p)
            throw UnknownPredicate(std::to_string(name.line) + ":" + std::to_string(name.col) +
                                   ": unknown predicate '" + name.text + "'");
        expect(Tok::LParen, "'(' after predicate name");
        std::vector<Condition::Arg> args;
        while (!at(Tok::RParen)) {
            if (!args.empty())
                expect(Tok::Comma, "','");
            if (at(Tok::Tilde)) {
                ++pos;
                args.emplace_back(std::nullopt);
            } else {
                const Token& r = expect(Tok::Ident, "'~' or a register");
                if (isKeyword(r.text))
                    throw SyntaxError("reserved word '" + r.text + "' used as register", r.line, r.col);
                args.emplace_back(Register(r.text));
                reads_.push_back({r.text, r.line, r.col});
            }
        }
        expect(Tok::RParen, "')'");
        if (args.size() != p->arity())
            throw SyntaxError("predicate '" + p->name() + "' takes " + std::to_string(p->arity()) +
                                  " arguments, got " + std::to_string(args.size()),
                              name.line, name.col);
        return Condition::atom(p, std::move(args));
    }

    // ---- expressions

    Srem expression()
    {
        Srem e = alternation();
        if (atIdent("within")) {
            ++pos;
            const Token& w = expect(Tok::Int, "window size");
            long long n = 0;
            auto r = std::from_chars(w.text.data(), w.text.data() + w.text.size(), n);
            if (r.ec != std::errc() || n < 1)
                throw SyntaxError("window size must be a positive integer", w.line, w.col);
            e = Srem::window(e, static_cast<std::size_t>(n));
        }
        return e;
    }

    Srem alternation()
    {
        Srem e = concatenation();
        while (at(Tok::Plus)) {
            ++pos;
            e = Srem::alt(e, concatenation());
        }
        return e;
    }

    Srem concatenation()
    {
        Srem e = postfix();
        while (at(Tok::Semi)) {
            ++pos;
            e = Srem::concat(e, postfix());
        }
        return e;
    }

    Srem postfix()
    {
        Srem e = primary();
        for (;;) {
            if (at(Tok::Star)) {
                ++pos;
                e = Srem::star(e);
            } else if (at(Tok::Arrow)) {
                const Token& arrow = peek();
                ++pos;
                if (e.kind() != Srem::Kind::Cond)
                    throw SyntaxError("'->' applies to a condition only", arrow.line, arrow.col);
                const Token& r = expect(Tok::Ident, "register after '->'");
                if (isKeyword(r.text))
                    throw SyntaxError("reserved word '" + r.text + "' used as register", r.line, r.col);
                e = Srem::condWrite(e.condition(), Register(r.text));
                writes_.insert(r.text);
            } else {
                return e;
            }
        }
    }

    Srem primary()
    {
        if (atIdent("EPS")) {
            ++pos;
            return Srem::epsilon();
        }
        if (atIdent("NONE")) {
            ++pos;
            return Srem::empty();
        }
        if (atIdent("within"))
            fail("'within' may only close the whole pattern");
        if (!at(Tok::LParen))
            return Srem::cond(condOr());
        // a parenthesis opens either a condition group or a sub-expression
        std::size_t save = pos;
        auto readMark = reads_.size();
        try {
            return Srem::cond(condOr());
        } catch (const SyntaxError& condErr) {
            pos = save;
            reads_.resize(readMark);
            try {
                ++pos;
                Srem e = alternation();
                if (atIdent("within"))
                    fail("'within' may only close the whole pattern");
                expect(Tok::RParen, "')'");
                return e;
            } catch (const SyntaxError& exprErr) {
                bool condFurther = condErr.line() > exprErr.line() ||
                                   (condErr.line() == exprErr.line() && condErr.column() > exprErr.column());
                if (condFurther)
                    throw condErr;
                throw;
            }
        }
    }

    void checkRegisters() const
    {
        for (const auto& r : reads_)
            if (!writes_.count(r.name))
                throw UnknownRegister(std::to_string(r.line) + ":" + std::to_string(r.col) + ": register '" +
                                      r.name + "' is read but never written");
    }

private:
    struct Read {
        std::string name;
        std::size_t line, col;
    };

    std::vector<Token> toks_;
    const PredicateLibrary& lib_;
    std::vector<Read> reads_;
    std::set<std::string> writes_;
};

}  // namespace

PatternFile parsePatternFile(std::string_view text, const PredicateLibrary* base)
{
    PatternFile out;
    if (base)
        out.library.merge(*base);
    Parser p(tokenize(text), out.library);
    p.skipNewlines();
    while (p.atIdent("pred")) {
        std::size_t line = p.peek().line, col = p.peek().col;
        PredicateRef decl = p.declaration();
        try {
            out.library.add(decl);
        } catch (const DuplicatePredicate&) {
            throw SyntaxError("predicate '" + decl->name() + "' declared twice", line, col);
        }
        p.skipNewlines();
    }
    // newlines are insignificant inside the expression
    std::vector<Token> rest;
    for (std::size_t i = p.pos; i < 1u << 31; ++i) {
        const Token& t = p.peek(i - p.pos);
        if (t.kind != Tok::Newline)
            rest.push_back(t);
        if (t.kind == Tok::End)
            break;
    }
    Parser q(std::move(rest), out.library);
    if (q.at(Tok::End))
        q.fail("expected a pattern expression");
    out.expression = q.expression();
    if (!q.at(Tok::End))
        q.fail("unexpected '" + q.peek().text + "' after the pattern");
    q.checkRegisters();
    return out;
}

Srem parse(std::string_view text, const PredicateLibrary& library)
{
    return parsePatternFile(text, &library).expression;
}

Condition parseCondition(std::string_view text, const PredicateLibrary& library)
{
    std::vector<Token> toks;
    for (auto& t : tokenize(text))
        if (t.kind != Tok::Newline)
            toks.push_back(std::move(t));
    Parser p(std::move(toks), library);
    Condition c = p.condOr();
    if (!p.at(Tok::End))
        p.fail("unexpected '" + p.peek().text + "' after the condition");
    return c;
}

PredicateRef parsePredicateDecl(std::string_view text)
{
    PredicateLibrary none;
    Parser p(tokenize(text), none);
    p.skipNewlines();
    if (!p.atIdent("pred"))
        p.fail("expected 'pred'");
    PredicateRef decl = p.declaration();
    p.skipNewlines();
    if (!p.at(Tok::End))
        p.fail("unexpected text after the declaration");
    return decl;
}

}  // namespace sracer
