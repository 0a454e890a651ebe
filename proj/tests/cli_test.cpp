// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "json.hpp"
#include "sracer/compiler.hpp"
#include "sracer/io.hpp"
#include "sracer/serialize.hpp"

namespace sracer {
namespace {

namespace fs = std::filesystem;

const std::string kCli = SRACER_CLI;
const std::string kData = SRACER_DATA;

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

std::string readFile(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void writeFile(const fs::path& p, const std::string& text)
{
    std::ofstream out(p);
    out << text;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("sracer-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) + "-" +
                std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Result run(const std::string& args)
    {
        fs::path out = dir_ / "stdout", err = dir_ / "stderr";
        std::string cmd = kCli + " " + args + " > " + out.string() + " 2> " + err.string();
        int status = std::system(cmd.c_str());
        Result r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = readFile(out);
        r.err = readFile(err);
        return r;
    }

    fs::path path(const std::string& name) const { return dir_ / name; }

    fs::path dir_;
};

TEST_F(Cli, RecognizeSensorPatternJsonl)
{
    auto r = run("recognize " + kData + "/e1.srem -i " + kData + "/sensors.jsonl");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "{\"index\":4}\n{\"index\":5}\n");
}

TEST_F(Cli, RecognizeSensorPatternCsv)
{
    auto r = run("recognize " + kData + "/e1.srem -i " + kData + "/sensors.csv");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "{\"index\":4}\n{\"index\":5}\n");
}

TEST_F(Cli, RecognizeWindowedAgreesWithOracle)
{
    auto oracle = run("oracle " + kData + "/e3.srem -i " + kData + "/sensors.jsonl");
    EXPECT_EQ(oracle.code, 0) << oracle.err;
    EXPECT_EQ(oracle.out, "{\"index\":4}\n");
    auto nfa = run("recognize " + kData + "/e3.srem -i " + kData + "/sensors.jsonl");
    EXPECT_EQ(nfa.out, oracle.out);
    auto dfa = run("recognize " + kData + "/e3.srem --deterministic -i " + kData + "/sensors.jsonl");
    EXPECT_EQ(dfa.out, oracle.out);
}

TEST_F(Cli, RecognizeAgreesWithOracleOnGeneratedStreams)
{
    for (int seed = 1; seed <= 5; ++seed) {
        auto gen = run("oracle --generate 12 --seed " + std::to_string(seed));
        ASSERT_EQ(gen.code, 0) << gen.err;
        writeFile(path("s.jsonl"), gen.out);
        for (const std::string& pattern : {kData + "/e1.srem", kData + "/e3.srem"}) {
            auto oracle = run("oracle " + pattern + " -i " + path("s.jsonl").string());
            auto rec = run("recognize " + pattern + " -i " + path("s.jsonl").string());
            EXPECT_EQ(rec.out, oracle.out) << "seed " << seed << " " << pattern;
        }
    }
}

TEST_F(Cli, EmptyPatternMatchesNothing)
{
    writeFile(path("none.srem"), "NONE\n");
    auto r = run("recognize " + path("none.srem").string() + " -i " + kData + "/sensors.jsonl");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "");
    auto c = run("compile " + path("none.srem").string());
    EXPECT_EQ(c.code, 0);
    Sra a = deserializeAutomaton(c.out);
    for (const auto& s : testing::allStrings(testing::universe4(), 0, 3))
        EXPECT_FALSE(runAccepts(a, s));
}

TEST_F(Cli, CompileDeterministicStage)
{
    auto r = run("compile " + kData + "/e1.srem --stage dsra --window 3");
    ASSERT_EQ(r.code, 0) << r.err;
    Sra d = deserializeAutomaton(r.out);
    EXPECT_TRUE(d.isDeterministicFlag());
    EXPECT_TRUE(isDeterministic(d));
}

TEST_F(Cli, CompileDeterministicNeedsWindow)
{
    auto r = run("compile " + kData + "/e1.srem --stage dsra");
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("determiniz"), std::string::npos) << r.err;
}

TEST_F(Cli, ParseErrorsExitTwo)
{
    writeFile(path("bad.srem"), "pred A(x): x.t = 1\nA(~) ; (A(~)\n");
    EXPECT_EQ(run("compile " + path("bad.srem").string()).code, 2);
    writeFile(path("reg.srem"), "pred E(x, y): x.id = y.id\nE(~, r1)\n");
    EXPECT_EQ(run("compile " + path("reg.srem").string()).code, 2);
}

TEST_F(Cli, InputErrorsExitOne)
{
    EXPECT_EQ(run("recognize " + kData + "/e1.srem -i " + path("missing.jsonl").string()).code, 1);
    writeFile(path("bad.jsonl"), "{\"type\":\"T\",\"id\":1}\nnot json\n");
    auto lax = run("recognize " + kData + "/e1.srem -i " + path("bad.jsonl").string());
    EXPECT_EQ(lax.code, 0);
    EXPECT_NE(lax.err.find("line 2"), std::string::npos);
    EXPECT_EQ(run("recognize " + kData + "/e1.srem --strict -i " + path("bad.jsonl").string()).code, 1);
}

TEST_F(Cli, CapExitsFour)
{
    auto r = run("recognize " + kData + "/e1.srem --cap 1 -i " + kData + "/sensors.jsonl");
    EXPECT_EQ(r.code, 4);
}

TEST_F(Cli, ToSremRoundTrip)
{
    auto c = run("compile " + kData + "/e1.srem -o " + path("a.json").string());
    ASSERT_EQ(c.code, 0) << c.err;
    auto back = run("to-srem " + path("a.json").string());
    ASSERT_EQ(back.code, 0) << back.err;
    Srem e = parsePatternFile(back.out).expression;
    Srem original = parsePatternFile(readFile(kData + "/e1.srem")).expression;
    for (const auto& s : testing::allStrings(testing::universe4(), 0, 4))
        EXPECT_EQ(accepts(e, s), accepts(original, s));
}

TEST_F(Cli, ComplementPartitions)
{
    auto d = run("determinize " + kData + "/e3.srem");
    auto c = run("complement " + kData + "/e3.srem --dot " + path("c.dot").string());
    ASSERT_EQ(c.code, 0) << c.err;
    Sra a = deserializeAutomaton(d.out), b = deserializeAutomaton(c.out);
    for (const auto& s : testing::allStrings(testing::universe4(), 0, 4))
        EXPECT_NE(runAccepts(a, s), runAccepts(b, s));
    EXPECT_NE(readFile(path("c.dot")).find("digraph"), std::string::npos);
}

TEST_F(Cli, LearnNormalizedAndReloadable)
{
    std::string one = readFile(kData + "/sensors.jsonl");
    std::string many;
    for (int i = 0; i < 200; ++i)
        many += one;
    writeFile(path("train.jsonl"), many);
    auto r = run("learn " + kData + "/e3.srem -m 2 -i " + path("train.jsonl").string() + " -o " +
                 path("model.json").string());
    ASSERT_EQ(r.code, 0) << r.err;
    std::string text = readFile(path("model.json"));
    Model m = deserializeModel(text);
    for (const auto& c : m.pst.contexts()) {
        double sum = 0;
        for (double p : m.pst.at(c))
            sum += p;
        EXPECT_NEAR(sum, 1.0, 1e-12);
    }
    EXPECT_EQ(serializeModel(m), text);
    auto f = run("forecast " + path("model.json").string() + " -i " + kData + "/sensors.jsonl");
    EXPECT_EQ(f.code, 0) << f.err;
    EXPECT_EQ(std::count(f.out.begin(), f.out.end(), '\n'), 6);
}

TEST_F(Cli, LearnNeedsData)
{
    auto r = run("learn " + kData + "/e3.srem -m 10 -i " + kData + "/sensors.jsonl");
    EXPECT_EQ(r.code, 5) << r.err;
}

TEST_F(Cli, ForecastTwoSymbolModel)
{
    writeFile(path("model.json"),
              serializeModel(Model{testing::twoSymbolDfa(), testing::twoSymbols(), testing::twoSymbolTree()}));
    writeFile(path("ab.jsonl"), "{\"sym\":\"a\"}\n{\"sym\":\"a\"}\n{\"sym\":\"b\"}\n{\"sym\":\"b\"}\n");
    auto r = run("forecast " + path("model.json").string() + " --dist --classify-window 2 --threshold 0.4 -i " +
                 path("ab.jsonl").string());
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::vector<nlohmann::json> recs;
    for (std::string line; std::getline(lines, line);)
        recs.push_back(nlohmann::json::parse(line));
    ASSERT_EQ(recs.size(), 4u);
    // after "a a": state 1 with context aa
    EXPECT_EQ(recs[1]["state"], 1);
    EXPECT_NEAR(recs[1]["dist"][0].get<double>(), 0.25, 1e-9);
    EXPECT_NEAR(recs[1]["dist"][1].get<double>(), 0.1875, 1e-9);
    EXPECT_EQ(recs[1]["regression"], 1);
    EXPECT_EQ(recs[1]["classification"], "positive");
    EXPECT_EQ(recs[2]["final"], true);

    auto again = run("forecast " + path("model.json").string() + " --dist --classify-window 2 --threshold 0.4 -i " +
                     path("ab.jsonl").string());
    EXPECT_EQ(again.out, r.out);

    // horizon 1 from state 0 cannot reach the final state
    auto h1 = run("forecast " + path("model.json").string() + " --horizon 1 --threshold 0.01 -i " +
                  path("ab.jsonl").string());
    ASSERT_EQ(h1.code, 0) << h1.err;
    std::istringstream l2(h1.out);
    std::vector<nlohmann::json> recs2;
    for (std::string line; std::getline(l2, line);)
        recs2.push_back(nlohmann::json::parse(line));
    ASSERT_EQ(recs2.size(), 4u);
    EXPECT_EQ(recs2[3]["state"], 0);
    EXPECT_EQ(recs2[3]["classification"], "negative");
}

TEST_F(Cli, CompileStatsAndDot)
{
    auto r = run("compile " + kData + "/e3.srem --stage dsra --stats --dot " + path("d.dot").string());
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("unroll:"), std::string::npos) << r.err;
    EXPECT_NE(readFile(path("d.dot")).find("doublecircle"), std::string::npos);
}

}  // namespace
}  // namespace sracer
