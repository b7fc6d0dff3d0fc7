/* test_cli.cc -- end-to-end runs of the command-line tool */

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <unistd.h>

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include "kleene/equivalence.hh"
#include "kleene/syntax.hh"
#include "support.hh"

using namespace kleene;

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args, const std::string& input = "")
{
    std::string cmd = std::string(KLEENE_CLI) + " " + args + " 2>/dev/null";
    std::string tmp;
    if (!input.empty()) {
        tmp = "/tmp/kleene_cli_input_" + std::to_string(::getpid());
        std::ofstream(tmp) << input;
        cmd += " < " + tmp;
    }
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;)
        out.append(buf, n);
    int st = pclose(p);
    if (!tmp.empty())
        std::remove(tmp.c_str());
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string q(const std::string& s) { return "'" + s + "'"; }

std::string golden(const std::string& name)
{
    std::ifstream in(std::string(KLEENE_GOLDEN_DIR) + "/" + name);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmpfile(const std::string& tag)
{
    return "/tmp/kleene_cli_" + tag + "_" + std::to_string(::getpid());
}

}  // namespace

TEST_CASE("check")
{
    Run r = run("check " + q("0*") + " " + q("1"));
    CHECK(r.status == 0);
    CHECK(r.out.find("equivalent") == 0);

    r = run("check " + q("(a+b)*") + " " + q("a*(b a)*"));
    CHECK(r.status == 1);
    CHECK(r.out == "inequivalent\nwitness: b\n");

    CHECK(run("check --alphabet a,b " + q("a + c") + " " + q("a")).status == 2);
    CHECK(run("check " + q("(a") + " " + q("a")).status == 2);
    CHECK(run("check --state-budget 1 " + q("(ab+b)*ba") + " " + q("(b+ab)*ba")).status == 0);
}

TEST_CASE("check with a certificate")
{
    Run r = run("check --certificate " + q("(a+b)*") + " " + q("(a*b)*a*"));
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["equivalent"] == true);
    CHECK(j["relation"].size() > 0);

    r = run("check --certificate " + q("a") + " " + q("b"));
    CHECK(r.status == 1);
    CHECK(nlohmann::json::parse(r.out)["witness"] == "a");
}

TEST_CASE("check in kat mode")
{
    std::string decl = "--mode kat --actions p,q --tests a,b ";
    Run r = run("check " + decl + q("(a (b p + !b q))* !a") + " " + q("(a b p)* (!a + !b) (a q (a b p)* (!a + !b))* !a"));
    CHECK(r.status == 0);
    r = run("check " + decl + q("a p") + " " + q("p"));
    CHECK(r.status == 1);
    CHECK(r.out == "inequivalent\nwitness: !a!b . p . !a!b\n");
    CHECK(run("check " + decl + q("!p") + " " + q("p")).status == 2);
    CHECK(run("check --mode kat " + q("p") + " " + q("p")).status == 2);
}

TEST_CASE("build")
{
    CHECK(run("build --congruence aci " + q("(ab+b)*ba")).out.find("states: 14\n") == 0);
    CHECK(run("build --congruence simplify " + q("(ab+b)*ba")).out.find("states: 5\n") == 0);
    CHECK(run("build " + q("0")).out.find("states: 1\n") == 0);
    CHECK(run("build --congruence aci --state-budget 3 " + q("(ab+b)*ba")).status == 3);
    CHECK(run("build --mode kat --actions p --tests a,b " + q("a + b p")).out.find("states: 3\n") == 0);
}

TEST_CASE("build artifacts")
{
    std::string path = tmpfile("odd");
    Run r = run("build --format json -o " + path + " " + q("b* a (b + a b* a)*"));
    CHECK(r.status == 0);
    CHECK(r.out == "states: 2\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto j = nlohmann::json::parse(ss.str());
    CHECK(j["states"].size() == 2);
    std::remove(path.c_str());

    Run dot = run("build --format dot " + q("a*"));
    CHECK(dot.out.find("doublecircle") != std::string::npos);
}

TEST_CASE("solve")
{
    std::string path = tmpfile("a2e");
    std::ofstream(path) << golden("a2e.json");
    for (const char* m : {"block", "elimination"}) {
        Run s1 = run("solve --method " + std::string(m) + " --state s1 " + path);
        REQUIRE(s1.status == 0);
        std::string e = s1.out.substr(0, s1.out.size() - 1);
        CHECK(run("check " + q(e) + " " + q("(a b* a + b)* a b*")).status == 0);
        Run s2 = run("solve --method " + std::string(m) + " --state s2 " + path);
        CHECK(run("check " + q(s2.out.substr(0, s2.out.size() - 1)) + " " + q("(b + a b* a)*")).status == 0);
    }
    std::remove(path.c_str());

    Run loop = run("solve -", R"({"alphabet":["a"],"states":["q"],"accepting":["q"],"transitions":[{"from":"q","letter":"a","to":"q"}]})");
    REQUIRE(loop.status == 0);
    CHECK(equivalent(parse_regex(loop.out.substr(0, loop.out.size() - 1)), parse_regex("a*")));

    CHECK(run("solve -", "{\"alphabet\": 3}").status == 2);
    CHECK(run("solve -", "not json").status == 2);
}

TEST_CASE("build, solve and check round trip")
{
    std::mt19937 rng(233);
    std::string path = tmpfile("rt");
    for (int i = 0; i < 10; ++i) {
        RegExp e = testing::random_regex_upto(rng, 8);
        std::string text = print(e);
        REQUIRE(run("build --alphabet a,b --format json -o " + path + " " + q(text)).status == 0);
        Run s = run("solve " + path);
        REQUIRE(s.status == 0);
        INFO(text << " -> " << s.out);
        CHECK(run("check --alphabet a,b " + q(s.out.substr(0, s.out.size() - 1)) + " " + q(text)).status == 0);
    }
    std::remove(path.c_str());
}

TEST_CASE("derive")
{
    Run r = run("derive --word a " + q("(ab+b)*"));
    CHECK(r.status == 0);
    CHECK(r.out == "(1 b + 0) (a b + b)*\nb (b + a b)*\n");
    CHECK(run("derive --alphabet a,b --word c " + q("a")).status == 2);
}

TEST_CASE("oracle")
{
    CHECK(run("oracle --max-len 1 " + q("(a+b)*")).out == "ε\na\nb\n");
    CHECK(run("oracle --max-len 3 " + q("0")).out == "");
    Run g = run("oracle --mode kat --actions p --tests a --max-len 1 " + q("a p"));
    CHECK(g.out == "a . p . !a\na . p . a\n");
}

TEST_CASE("hoare")
{
    std::string decl = "--actions p --tests b,c ";
    CHECK(run("hoare " + decl + q("b") + " " + q("b p c + !b p") + " " + q("c")).status == 0);
    Run r = run("hoare " + decl + q("1") + " " + q("p") + " " + q("0"));
    CHECK(r.status == 1);
    CHECK(r.out.find("invalid") == 0);
}

TEST_CASE("upto")
{
    Run r = run("upto -", R"([["(a+b)*", "(a*b)*a*"], ["(a+b)*", "(a*b)(a*b)*a* + a*"]])");
    CHECK(r.status == 0);
    CHECK(r.out == "0: Verified\n1: Verified\n");
    Run u = run("upto -", R"([["a", "b"]])");
    CHECK(u.status == 1);
    CHECK(u.out.find("0: Unknown") == 0);
    CHECK(run("upto -", R"([["a"]])").status == 2);
    CHECK(run("upto -", "{").status == 2);
}

TEST_CASE("outputs are deterministic")
{
    for (const std::string args : {"build --format json " + q("(ab+b)*ba"), "check --certificate " + q("(a+b)*") + " " + q("(a*b)*a*"),
                                   "oracle --max-len 3 " + q("(ab+b)*")}) {
        CHECK(run(args).out == run(args).out);
    }
    CHECK(run("build --format json " + q("b* a (b + a b* a)*")).out == golden("odd_a_build.json"));
}
