// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include "sracer/serialize.hpp"

#include <map>

#include "json.hpp"
#include "sracer/pattern.hpp"

namespace sracer {

using nlohmann::ordered_json;

namespace {

constexpr int kVersion = 1;

void collectPredicates(const Condition& c, std::map<std::string, PredicateRef>& out)
{
    if (c.kind() == Condition::Kind::Atom) {
        out.emplace(c.predicate()->name(), c.predicate());
        return;
    }
    for (const auto& ch : c.children())
        collectPredicates(ch, out);
}

ordered_json predicatesJson(const Sra& a)
{
    std::map<std::string, PredicateRef> preds;
    for (const auto& t : a.transitions())
        if (t.label)
            collectPredicates(*t.label, preds);
    ordered_json out = ordered_json::array();
    for (const auto& [name, p] : preds) {
        if (p->source().empty())
            throw SerializationError("predicate " + name + " has no declaration and cannot be saved");
        out.push_back(p->source());
    }
    return out;
}

ordered_json automatonJson(const Sra& a)
{
    ordered_json j;
    j["format"] = "sracer-automaton";
    j["version"] = kVersion;
    j["predicates"] = predicatesJson(a);
    j["states"] = a.stateCount();
    if (!a.stateNames().empty())
        j["names"] = a.stateNames();
    j["start"] = a.start();
    j["finals"] = a.finals();
    ordered_json regs = ordered_json::array();
    for (const auto& r : a.registers())
        regs.push_back(r.name());
    j["registers"] = regs;
    ordered_json flags;
    flags["deterministic"] = a.flags().deterministic;
    flags["complete"] = a.flags().complete;
    if (a.flags().windowBound)
        flags["window"] = *a.flags().windowBound;
    j["flags"] = flags;
    ordered_json ts = ordered_json::array();
    for (const auto& t : a.transitions()) {
        ordered_json x;
        x["from"] = t.source;
        x["to"] = t.target;
        x["label"] = t.label ? ordered_json(t.label->toString()) : ordered_json(nullptr);
        ordered_json w = ordered_json::array();
        for (const auto& r : t.writes)
            w.push_back(r.name());
        x["writes"] = w;
        ts.push_back(x);
    }
    j["transitions"] = ts;
    return j;
}

PredicateLibrary libraryOf(const ordered_json& j, const PredicateLibrary* base)
{
    PredicateLibrary lib;
    if (base)
        lib.merge(*base);
    for (const auto& src : j.at("predicates")) {
        PredicateRef p = parsePredicateDecl(src.get<std::string>());
        if (PredicateRef known = lib.find(p->name())) {
            if (known->source() != p->source())
                throw SerializationError("predicate " + p->name() + " is declared differently");
            continue;
        }
        lib.add(p);
    }
    return lib;
}

Sra automatonFrom(const ordered_json& j, const PredicateLibrary& lib)
{
    if (j.at("format") != "sracer-automaton")
        throw SerializationError("not an automaton document");
    if (j.at("version") != kVersion)
        throw SerializationError("unsupported automaton version " + j.at("version").dump());
    std::vector<Register> regs;
    for (const auto& r : j.at("registers"))
        regs.emplace_back(r.get<std::string>());
    std::vector<Transition> ts;
    for (const auto& x : j.at("transitions")) {
        Transition t;
        t.source = x.at("from").get<StateId>();
        t.target = x.at("to").get<StateId>();
        if (!x.at("label").is_null())
            t.label = parseCondition(x.at("label").get<std::string>(), lib);
        for (const auto& r : x.at("writes"))
            t.writes.emplace_back(r.get<std::string>());
        ts.push_back(std::move(t));
    }
    SraFlags flags;
    const auto& f = j.at("flags");
    flags.deterministic = f.at("deterministic").get<bool>();
    flags.complete = f.at("complete").get<bool>();
    if (f.contains("window"))
        flags.windowBound = f.at("window").get<std::size_t>();
    std::vector<std::string> names;
    if (j.contains("names"))
        names = j.at("names").get<std::vector<std::string>>();
    return Sra(j.at("states").get<std::size_t>(), j.at("start").get<StateId>(),
               j.at("finals").get<std::vector<StateId>>(), std::move(regs), std::move(ts), flags, std::move(names));
}

ordered_json pstJson(const Pst& t)
{
    ordered_json j;
    j["format"] = "sracer-pst";
    j["version"] = kVersion;
    j["alphabet"] = t.alphabetSize();
    j["maxOrder"] = t.maxOrder();
    ordered_json nodes = ordered_json::array();
    for (const auto& c : t.contexts()) {
        ordered_json n;
        ordered_json ctx = ordered_json::array();
        for (Symbol s : c)
            ctx.push_back(symbolName(s));
        n["context"] = ctx;
        n["p"] = t.at(c);
        nodes.push_back(n);
    }
    j["nodes"] = nodes;
    return j;
}

Pst pstFrom(const ordered_json& j)
{
    if (j.at("format") != "sracer-pst")
        throw SerializationError("not a prediction suffix tree document");
    if (j.at("version") != kVersion)
        throw SerializationError("unsupported tree version " + j.at("version").dump());
    Pst t(j.at("alphabet").get<std::size_t>(), j.at("maxOrder").get<std::size_t>());
    for (const auto& n : j.at("nodes")) {
        Context c;
        for (const auto& s : n.at("context")) {
            auto sym = parseSymbolName(s.get<std::string>());
            if (!sym)
                throw SerializationError("bad symbol " + s.dump());
            c.push_back(*sym);
        }
        t.set(c, n.at("p").get<std::vector<double>>());
    }
    return t;
}

template <typename F>
auto guarded(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const SerializationError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw SerializationError(e.what());
    } catch (const Error& e) {
        throw SerializationError(e.what());
    }
}

}  // namespace

std::string serializeAutomaton(const Sra& a)
{
    return automatonJson(a).dump(2) + "\n";
}

Sra deserializeAutomaton(std::string_view text, const PredicateLibrary* base)
{
    return guarded([&] {
        auto j = ordered_json::parse(text);
        return automatonFrom(j, libraryOf(j, base));
    });
}

std::string serializePst(const Pst& t)
{
    return pstJson(t).dump(2) + "\n";
}

Pst deserializePst(std::string_view text)
{
    return guarded([&] { return pstFrom(ordered_json::parse(text)); });
}

std::string serializeModel(const Model& m)
{
    ordered_json j;
    j["format"] = "sracer-model";
    j["version"] = kVersion;
    j["dsra"] = automatonJson(m.dsra);
    ordered_json syms = ordered_json::array();
    for (std::size_t i = 0; i < m.symbols.size(); ++i) {
        ordered_json s;
        s["symbol"] = symbolName(static_cast<Symbol>(i));
        s["label"] = m.symbols.labelOf(static_cast<Symbol>(i)).toString();
        syms.push_back(s);
    }
    j["symbols"] = syms;
    j["pst"] = pstJson(m.pst);
    return j.dump(2) + "\n";
}

Model deserializeModel(std::string_view text)
{
    return guarded([&] {
        auto j = ordered_json::parse(text);
        if (j.at("format") != "sracer-model")
            throw SerializationError("not a model document");
        if (j.at("version") != kVersion)
            throw SerializationError("unsupported model version " + j.at("version").dump());
        const auto& dj = j.at("dsra");
        PredicateLibrary lib = libraryOf(dj, nullptr);
        Sra d = automatonFrom(dj, lib);
        std::vector<Condition> labels;
        for (const auto& s : j.at("symbols")) {
            auto sym = parseSymbolName(s.at("symbol").get<std::string>());
            if (!sym || *sym != labels.size())
                throw SerializationError("symbols must be listed in order");
            labels.push_back(parseCondition(s.at("label").get<std::string>(), lib));
        }
        return Model{std::move(d), SymbolMap(std::move(labels)), pstFrom(j.at("pst"))};
    });
}

}  // namespace sracer
