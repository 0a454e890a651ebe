// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

// sracer: compile patterns, recognize them over event streams, learn and
// emit forecasts. Output is JSONL (or JSON documents) on stdout; diagnostics
// go to stderr.

#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sracer/automaton.hpp"
#include "sracer/compiler.hpp"
#include "sracer/forecast.hpp"
#include "sracer/io.hpp"
#include "sracer/pattern.hpp"
#include "sracer/serialize.hpp"

namespace {

using namespace sracer;

enum Exit : int {
    kOk = 0,
    kInput = 1,
    kParse = 2,
    kPipeline = 3,
    kCap = 4,
    kInsufficient = 5,
};

std::string slurp(const std::string& path)
{
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in)
        throw InvalidEvent("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw InvalidEvent("cannot write " + path);
    out << text;
}

struct PatternOptions {
    std::string path;
    std::size_t window = 0;  // 0: as written
};

Srem loadPattern(const PatternOptions& o)
{
    PatternFile f = parsePatternFile(slurp(o.path));
    Srem e = f.expression;
    if (o.window > 0)
        e = Srem::window(e.kind() == Srem::Kind::Window ? e.left() : e, o.window);
    return e;
}

void addPatternOptions(CLI::App* cmd, PatternOptions& o)
{
    cmd->add_option("pattern", o.path, "Pattern file (predicate declarations, then one expression)")->required();
    cmd->add_option("-w,--window", o.window, "Wrap the expression in a window of this many events");
}

struct InputOptions {
    std::string path = "-";
    std::string format;  // jsonl | csv; default from the file extension
    std::string schema;
    bool strict = false;
};

void addInputOptions(CLI::App* cmd, InputOptions& o)
{
    cmd->add_option("-i,--input", o.path, "Event stream, '-' for stdin")->capture_default_str();
    cmd->add_option("--format", o.format, "jsonl or csv (default: from the file extension)")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    cmd->add_option("--schema", o.schema, "Attribute types, e.g. type=text,id=int,value=real");
    cmd->add_flag("--strict", o.strict, "Stop at the first malformed line instead of skipping it");
}

// Calls `f` for each well-formed event; malformed lines are reported on stderr.
template <typename F>
void forEachEvent(const InputOptions& o, F&& f)
{
    StreamFormat fmt = o.format.empty() ? formatFromPath(o.path)
                                        : (o.format == "csv" ? StreamFormat::Csv : StreamFormat::Jsonl);
    SchemaHints hints = parseSchemaHints(o.schema);
    std::ifstream file;
    if (o.path != "-") {
        file.open(o.path);
        if (!file)
            throw InvalidEvent("cannot open " + o.path);
    }
    std::istream& in = o.path == "-" ? std::cin : file;
    EventReader reader(in, fmt, hints);
    std::size_t skipped = 0;
    while (auto r = reader.next()) {
        if (!r->event) {
            if (o.strict)
                throw InvalidEvent("line " + std::to_string(r->line) + ": " + r->error);
            std::cerr << "sracer: line " << r->line << ": " << r->error << " (skipped)\n";
            ++skipped;
            continue;
        }
        f(*r->event);
    }
    if (skipped)
        std::cerr << "sracer: skipped " << skipped << " malformed line(s)\n";
}

void printStats(const std::string& stage, const Sra& a)
{
    SraStats s = statsOf(a);
    std::cerr << stage << ": " << s.states << " states, " << s.transitions << " transitions, " << s.registers
              << " registers\n";
}

// ---------------------------------------------------------------- commands

struct CompileOptions {
    PatternOptions pattern;
    std::string stage = "sra";
    std::string out;
    std::string dot;
    bool stats = false;
};

Sra buildStage(const Srem& e, const std::string& stage)
{
    if (stage == "sra")
        return e.kind() == Srem::Kind::Window ? compileWindowed(e) : compile(e);
    if (stage == "efree")
        return eliminateEpsilon(compile(e));
    if (stage == "single")
        return toSingleRegister(eliminateEpsilon(compile(e)));
    if (stage == "unrolled" || stage == "nsra-unrolled")
        return compileWindowed(e);
    if (stage == "streaming")
        return compileStreaming(e);
    if (stage == "dsra") {
        if (e.kind() != Srem::Kind::Window)
            throw NotWindowed("only windowed expressions can be determinized; "
                              "automata with registers are not closed under determinization");
        return determinize(e);
    }
    if (stage == "dsra-streaming")
        return determinizeStreaming(e);
    if (stage == "complement")
        return completeAndComplement(e);
    throw InvalidPattern("unknown stage " + stage);
}

int runCompile(const CompileOptions& o)
{
    Srem e = loadPattern(o.pattern);
    if (o.stats)
        for (const auto& s : pipelineStages(e))
            printStats(s.name, s.automaton);
    Sra a = buildStage(e, o.stage);
    printStats(o.stage, a);
    emit(o.out, serializeAutomaton(a));
    if (!o.dot.empty())
        emit(o.dot, toDot(a, o.stage));
    return kOk;
}

struct RecognizeOptions {
    PatternOptions pattern;
    InputOptions input;
    std::size_t cap = 100000;
    bool deterministic = false;
    bool reportEmpty = false;
};

int runRecognize(const RecognizeOptions& o)
{
    Srem e = loadPattern(o.pattern);
    auto a = std::make_shared<const Sra>(o.deterministic ? determinizeStreaming(e) : compileStreaming(e));
    StreamEngine engine(a, EngineOptions{o.cap, o.reportEmpty});
    if (engine.emptyMatch())
        std::cout << "{\"index\":0}\n";
    forEachEvent(o.input, [&](const Event& ev) {
        if (engine.step(ev))
            std::cout << "{\"index\":" << engine.consumed() << "}\n";
    });
    return kOk;
}

struct DeterminizeOptions {
    PatternOptions pattern;
    std::string out;
    std::string dot;
    bool streaming = false;
};

int runDeterminize(const DeterminizeOptions& o)
{
    Srem e = loadPattern(o.pattern);
    Sra d = o.streaming ? determinizeStreaming(e) : determinize(e);
    printStats("dsra", d);
    emit(o.out, serializeAutomaton(d));
    if (!o.dot.empty())
        emit(o.dot, toDot(d, "dsra"));
    return kOk;
}

int runComplement(const DeterminizeOptions& o)
{
    Srem e = loadPattern(o.pattern);
    Sra c = completeAndComplement(e);
    printStats("complement", c);
    emit(o.out, serializeAutomaton(c));
    if (!o.dot.empty())
        emit(o.dot, toDot(c, "complement"));
    return kOk;
}

struct ToSremOptions {
    std::string automaton;
};

int runToSrem(const ToSremOptions& o)
{
    Sra a = deserializeAutomaton(slurp(o.automaton));
    std::cout << unparsePatternFile(sraToSrem(a)) << "\n";
    return kOk;
}

struct LearnOptions {
    PatternOptions pattern;
    InputOptions input;
    PstParams params;
    bool anchored = false;
    std::string out;
};

int runLearn(const LearnOptions& o)
{
    Srem e = loadPattern(o.pattern);
    Sra d = o.anchored ? complete(determinize(e)) : determinizeStreaming(e);
    SymbolMap symbols = SymbolMap::fromAutomaton(d);
    std::vector<Event> events;
    forEachEvent(o.input, [&](const Event& ev) { events.push_back(ev); });
    std::vector<Symbol> seq;
    if (o.anchored) {
        // the anchored automaton restarts after every window-sized chunk
        const std::size_t w = e.windowSize();
        for (std::size_t i = 0; i < events.size(); i += w) {
            std::size_t n = std::min(w, events.size() - i);
            auto part = symbolize(d, symbols, std::span<const Event>(events).subspan(i, n));
            seq.insert(seq.end(), part.begin(), part.end());
        }
    } else {
        seq = symbolize(d, symbols, events);
    }
    Pst t = learnPst(seq, std::max<std::size_t>(symbols.size(), 1), o.params);
    std::cerr << "learned: " << symbols.size() << " symbols, " << t.size() << " contexts from " << seq.size()
              << " events\n";
    emit(o.out, serializeModel(Model{std::move(d), std::move(symbols), std::move(t)}));
    return kOk;
}

struct ForecastOptions {
    std::string model;
    InputOptions input;
    std::size_t horizon = 32;
    std::size_t classifyWindow = 0;  // 0: the horizon
    double threshold = 0.5;
    bool dist = false;
};

int runForecast(const ForecastOptions& o)
{
    Model m = deserializeModel(slurp(o.model));
    if (!m.dsra.isDeterministicFlag())
        throw NotDeterministic("the model's automaton is not deterministic");
    SymbolicDfa dfa(m.dsra, m.symbols);
    const std::size_t w = o.classifyWindow ? o.classifyWindow : o.horizon;
    if (w > o.horizon)
        throw InvalidPattern("--classify-window cannot exceed --horizon");
    StateId q = m.dsra.start();
    Valuation v;
    Context history;
    std::size_t index = 0;
    forEachEvent(o.input, [&](const Event& ev) {
        ++index;
        const Transition* taken = nullptr;
        for (const auto& t : m.dsra.outgoing(q))
            if (satisfies(*t.label, ev, v)) {
                taken = &t;
                break;
            }
        if (!taken)
            throw NoTransition("no transition for element " + std::to_string(index));
        if (!taken->writes.empty())
            v = v.with(taken->writes, ev);
        q = taken->target;
        history.push_back(*m.symbols.symbolOf(*taken->label));
        if (history.size() > m.pst.maxOrder())
            history.erase(history.begin());

        auto wd = waitingTime(dfa, m.pst, q, history, WaitingTimeOptions{o.horizon, 1e-12});
        nlohmann::ordered_json j;
        j["index"] = index;
        j["state"] = q;
        j["final"] = m.dsra.isFinal(q);
        if (o.dist)
            j["dist"] = wd.masses;
        j["regression"] = forecastRegression(wd);
        j["classification"] =
            forecastClassification(wd, w, o.threshold) == Classification::Positive ? "positive" : "negative";
        std::cout << j.dump() << "\n";
    });
    return kOk;
}

struct OracleOptions {
    PatternOptions pattern;
    InputOptions input;
    std::size_t generate = 0;
    std::uint64_t seed = 1;
    bool whole = false;
};

int runOracle(const OracleOptions& o)
{
    if (o.generate > 0) {
        // Random events shaped like the sensor example: (type, id, value).
        std::mt19937_64 rng(o.seed);
        std::uniform_int_distribution<int> type(0, 1), id(1, 2), value(0, 99);
        for (std::size_t i = 0; i < o.generate; ++i) {
            Event ev{{"type", std::string(type(rng) ? "H" : "T")},
                     {"id", std::int64_t{id(rng)}},
                     {"value", std::int64_t{value(rng)}}};
            std::cout << eventToJson(ev) << "\n";
        }
        return kOk;
    }
    if (o.pattern.path.empty())
        throw InvalidPattern("oracle needs a pattern unless --generate is given");
    Srem e = loadPattern(o.pattern);
    std::vector<Event> events;
    forEachEvent(o.input, [&](const Event& ev) { events.push_back(ev); });
    if (o.whole) {
        std::cout << "{\"accepts\":" << (accepts(e, events) ? "true" : "false") << "}\n";
        return kOk;
    }
    // index k matches when some suffix ending at k is in the language
    for (std::size_t k = 1; k <= events.size(); ++k)
        for (std::size_t m = 0; m <= k; ++m)
            if (accepts(e, std::span<const Event>(events).subspan(m, k - m))) {
                std::cout << "{\"index\":" << k << "}\n";
                break;
            }
    return kOk;
}

int classify(const std::exception& e)
{
    if (dynamic_cast<const ConfigurationCapExceeded*>(&e))
        return kCap;
    if (dynamic_cast<const InsufficientData*>(&e))
        return kInsufficient;
    if (dynamic_cast<const SyntaxError*>(&e) || dynamic_cast<const UnknownPredicate*>(&e) ||
        dynamic_cast<const UnknownRegister*>(&e) || dynamic_cast<const ArityMismatch*>(&e) ||
        dynamic_cast<const DuplicatePredicate*>(&e))
        return kParse;
    if (dynamic_cast<const InvalidEvent*>(&e) || dynamic_cast<const SerializationError*>(&e))
        return kInput;
    return kPipeline;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Symbolic regular expressions with memory: recognition and forecasting over event streams"};
    app.require_subcommand(1);

    CompileOptions compileOpts;
    auto* compileCmd = app.add_subcommand("compile", "Compile a pattern and print an automaton stage as JSON");
    addPatternOptions(compileCmd, compileOpts.pattern);
    compileCmd
        ->add_option("--stage", compileOpts.stage,
                     "sra | efree | single | unrolled | streaming | dsra | dsra-streaming | complement")
        ->capture_default_str();
    compileCmd->add_option("-o,--out", compileOpts.out, "Output file (default stdout)");
    compileCmd->add_option("--dot", compileOpts.dot, "Also write a Graphviz rendering here");
    compileCmd->add_flag("--stats", compileOpts.stats, "Print the size of every pipeline stage");

    RecognizeOptions recognizeOpts;
    auto* recognizeCmd = app.add_subcommand("recognize", "Report the indices at which the pattern matches");
    addPatternOptions(recognizeCmd, recognizeOpts.pattern);
    addInputOptions(recognizeCmd, recognizeOpts.input);
    recognizeCmd->add_option("--cap", recognizeOpts.cap, "Live configuration cap")->capture_default_str();
    recognizeCmd->add_flag("--deterministic", recognizeOpts.deterministic,
                           "Run a deterministic automaton (windowed patterns only)");
    recognizeCmd->add_flag("--report-empty", recognizeOpts.reportEmpty,
                           "Report index 0 when the empty string matches");

    DeterminizeOptions determinizeOpts;
    auto* determinizeCmd = app.add_subcommand("determinize", "Deterministic automaton of a windowed pattern");
    addPatternOptions(determinizeCmd, determinizeOpts.pattern);
    determinizeCmd->add_option("-o,--out", determinizeOpts.out, "Output file (default stdout)");
    determinizeCmd->add_option("--dot", determinizeOpts.dot, "Also write a Graphviz rendering here");
    determinizeCmd->add_flag("--streaming", determinizeOpts.streaming,
                             "Build the automaton that matches at every position of a stream");

    DeterminizeOptions complementOpts;
    auto* complementCmd = app.add_subcommand("complement", "Complement of a windowed pattern");
    addPatternOptions(complementCmd, complementOpts.pattern);
    complementCmd->add_option("-o,--out", complementOpts.out, "Output file (default stdout)");
    complementCmd->add_option("--dot", complementOpts.dot, "Also write a Graphviz rendering here");

    ToSremOptions toSremOpts;
    auto* toSremCmd = app.add_subcommand("to-srem", "Translate an automaton document back to a pattern");
    toSremCmd->add_option("automaton", toSremOpts.automaton, "Automaton JSON, '-' for stdin")->required();

    LearnOptions learnOpts;
    auto* learnCmd = app.add_subcommand("learn", "Learn a forecasting model from a training stream");
    addPatternOptions(learnCmd, learnOpts.pattern);
    addInputOptions(learnCmd, learnOpts.input);
    learnCmd->add_option("-m,--order", learnOpts.params.maxOrder, "Maximum context length")->capture_default_str();
    learnCmd->add_option("--pmin", learnOpts.params.pMin, "Minimum context frequency")->capture_default_str();
    learnCmd->add_option("--ratio", learnOpts.params.r, "Prediction ratio threshold")->capture_default_str();
    learnCmd->add_option("--gamma", learnOpts.params.gamma, "Smoothing mass")->capture_default_str();
    learnCmd->add_option("--alpha", learnOpts.params.alpha, "Significance margin")->capture_default_str();
    learnCmd->add_flag("--anchored", learnOpts.anchored,
                       "Use the plain window automaton, restarted every window, instead of the streaming one");
    learnCmd->add_option("-o,--out", learnOpts.out, "Model file (default stdout)");

    ForecastOptions forecastOpts;
    auto* forecastCmd = app.add_subcommand("forecast", "Emit a forecast after every event");
    forecastCmd->add_option("model", forecastOpts.model, "Model written by 'learn'")->required();
    addInputOptions(forecastCmd, forecastOpts.input);
    forecastCmd->add_option("--horizon", forecastOpts.horizon, "Steps ahead")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    forecastCmd->add_option("--classify-window", forecastOpts.classifyWindow,
                            "Steps summed for classification (default: the horizon)");
    forecastCmd->add_option("--threshold", forecastOpts.threshold, "Classification threshold")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    forecastCmd->add_flag("--dist", forecastOpts.dist, "Include the waiting-time distribution");

    OracleOptions oracleOpts;
    auto* oracleCmd = app.add_subcommand("oracle", "Reference membership by derivation, or test data generation");
    oracleCmd->add_option("pattern", oracleOpts.pattern.path, "Pattern file");
    oracleCmd->add_option("-w,--window", oracleOpts.pattern.window, "Wrap the expression in a window");
    addInputOptions(oracleCmd, oracleOpts.input);
    oracleCmd->add_flag("--whole", oracleOpts.whole, "Test the whole stream instead of every suffix");
    oracleCmd->add_option("--generate", oracleOpts.generate, "Print this many random events instead");
    oracleCmd->add_option("--seed", oracleOpts.seed, "Seed for --generate")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compileCmd)
            return runCompile(compileOpts);
        if (*recognizeCmd)
            return runRecognize(recognizeOpts);
        if (*determinizeCmd)
            return runDeterminize(determinizeOpts);
        if (*complementCmd)
            return runComplement(complementOpts);
        if (*toSremCmd)
            return runToSrem(toSremOpts);
        if (*learnCmd)
            return runLearn(learnOpts);
        if (*forecastCmd)
            return runForecast(forecastOpts);
        if (*oracleCmd)
            return runOracle(oracleOpts);
    } catch (const std::exception& e) {
        std::cerr << "sracer: " << e.what() << "\n";
        return classify(e);
    }
    return kOk;
}
