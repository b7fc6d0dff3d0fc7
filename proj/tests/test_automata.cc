/* test_automata.cc -- DFAs, Brzozowski construction, bisimulation */

#include <fstream>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "kleene/automata.hh"
#include "kleene/derivatives.hh"
#include "kleene/oracle.hh"
#include "support.hh"

using namespace kleene;

namespace {

const Alphabet ab({"a", "b"});

Dfa odd_a()
{
    Dfa d;
    d.alphabet = ab;
    State x1 = d.add_state("x1", false), x2 = d.add_state("x2", true);
    d.set_trans(x1, "a", x2);
    d.set_trans(x1, "b", x1);
    d.set_trans(x2, "a", x1);
    d.set_trans(x2, "b", x2);
    return d;
}

// s1..s3 followed by t1, t2 in one automaton
Dfa coinduction_pair()
{
    Dfa d;
    d.alphabet = ab;
    State s1 = d.add_state("s1", false), s2 = d.add_state("s2", false), s3 = d.add_state("s3", true);
    State t1 = d.add_state("t1", false), t2 = d.add_state("t2", true);
    d.set_trans(s1, "a", s2);
    d.set_trans(s1, "b", s3);
    d.set_trans(s2, "a", s2);
    d.set_trans(s2, "b", s3);
    d.set_trans(s3, "a", s3);
    d.set_trans(s3, "b", s3);
    d.set_trans(t1, "a", t1);
    d.set_trans(t1, "b", t2);
    d.set_trans(t2, "a", t2);
    d.set_trans(t2, "b", t2);
    return d;
}

Dfa exercise_xu()
{
    Dfa d;
    d.alphabet = ab;
    State x = d.add_state("x", false), y = d.add_state("y", true), z = d.add_state("z", true);
    State u = d.add_state("u", false), v = d.add_state("v", true), w = d.add_state("w", true);
    for (const Symbol a : {"a", "b"}) {
        d.set_trans(x, a, y);
        d.set_trans(y, a, z);
        d.set_trans(z, a, z);
        d.set_trans(v, a, w);
        d.set_trans(w, a, v);
    }
    d.set_trans(u, "a", v);
    d.set_trans(u, "b", w);
    return d;
}

Dfa random_dfa(std::mt19937& rng, std::size_t n)
{
    Dfa d;
    d.alphabet = ab;
    std::uniform_int_distribution<std::size_t> st(0, n - 1);
    std::bernoulli_distribution acc(0.4);
    for (std::size_t i = 0; i < n; ++i)
        d.add_state("r" + std::to_string(i), acc(rng));
    for (std::size_t i = 0; i < n; ++i)
        for (const Symbol a : {"a", "b"})
            d.set_trans(i, a, st(rng));
    return d;
}

// Disjoint union of two automata over the same alphabet; the second's states are shifted.
Dfa disjoint(const Dfa& x, const Dfa& y)
{
    Dfa d;
    d.alphabet = x.alphabet;
    for (State s = 0; s < x.size(); ++s)
        d.add_state("l" + x.names[s], x.accepting[s]);
    for (State s = 0; s < y.size(); ++s)
        d.add_state("r" + y.names[s], y.accepting[s]);
    for (State s = 0; s < x.size(); ++s)
        for (std::size_t a = 0; a < x.alphabet.size(); ++a)
            d.set_trans(s, x.alphabet[a], x.next(s, a));
    for (State s = 0; s < y.size(); ++s)
        for (std::size_t a = 0; a < y.alphabet.size(); ++a)
            d.set_trans(x.size() + s, y.alphabet[a], x.size() + y.next(s, a));
    return d;
}

// Full bisimilarity by partition refinement.
std::vector<std::size_t> classes(const Dfa& d)
{
    std::vector<std::size_t> cls(d.size());
    for (State s = 0; s < d.size(); ++s)
        cls[s] = d.accepting[s];
    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> sig;
        std::vector<std::size_t> next(d.size());
        for (State s = 0; s < d.size(); ++s) {
            std::vector<std::size_t> key{cls[s]};
            for (std::size_t a = 0; a < d.alphabet.size(); ++a)
                key.push_back(cls[d.next(s, a)]);
            next[s] = sig.emplace(key, sig.size()).first->second;
        }
        if (std::set<std::size_t>(next.begin(), next.end()).size() ==
            std::set<std::size_t>(cls.begin(), cls.end()).size())
            return next;
        cls = next;
    }
}

}  // namespace

TEST_CASE("eval on the odd-a automaton")
{
    Dfa d = odd_a();
    CHECK(eval(d, 0, {"b", "a", "b"}));
    CHECK_FALSE(eval(d, 0, {"a", "a"}));
    CHECK(eval(d, 0, {}) == d.output(0));
    CHECK(eval(d, 1, {}) == d.output(1));
    CHECK_THROWS(eval(d, 7, {}));
    CHECK_THROWS(eval(d, 0, {"c"}));
    for (const auto& w : testing::all_words({"a", "b"}, 6)) {
        auto as = std::count(w.begin(), w.end(), "a");
        CHECK(eval(d, 0, w) == (as % 2 == 1));
    }
}

TEST_CASE("state counts of the running example")
{
    RegExp e = parse_regex("(ab+b)*ba", ab);
    BuildResult aci = brzozowski_build(e, ab, Level::ACI);
    BuildResult simp = brzozowski_build(e, ab, Level::SIMPLIFY);
    CHECK(aci.dfa.size() == 14);
    CHECK(simp.dfa.size() == 5);
    CHECK(std::count(aci.dfa.accepting.begin(), aci.dfa.accepting.end(), true) == 2);

    // the accepting ACI states are the classes of e_ba and e_bba
    State ba = aci.initial, bba = aci.initial;
    for (const Symbol a : {"b", "a"})
        ba = aci.dfa.next(ba, a);
    for (const Symbol a : {"b", "b", "a"})
        bba = aci.dfa.next(bba, a);
    CHECK(ba != bba);
    CHECK(aci.dfa.accepting[ba]);
    CHECK(aci.dfa.accepting[bba]);
}

TEST_CASE("construction basics")
{
    BuildResult z = brzozowski_build(RegExp::zero(), ab, Level::SIMPLIFY);
    REQUIRE(z.dfa.size() == 1);
    CHECK_FALSE(z.dfa.accepting[0]);
    CHECK(z.dfa.next(0, "a") == 0);
    CHECK(z.dfa.next(0, "b") == 0);
    CHECK(z.dfa.names[0] == "q0");

    CHECK_THROWS_AS(brzozowski_build(parse_regex("(ab+b)*ba", ab), ab, Level::ACI, 5), BudgetExceeded);
    CHECK_THROWS_AS(brzozowski_build(parse_regex("a c", Alphabet({"a", "c"})), ab, Level::ACI), UndeclaredSymbol);
}

TEST_CASE("constructed automata recognize the expression")
{
    std::mt19937 rng(73);
    auto all = testing::all_words({"a", "b"}, 6);
    for (int i = 0; i < 100; ++i) {
        RegExp e = testing::random_regex_upto(rng, 10);
        for (Level lv : {Level::ACI, Level::SIMPLIFY}) {
            BuildResult r = brzozowski_build(e, ab, lv);
            r.dfa.validate();
            REQUIRE(r.dfa.labels);
            for (State s = 0; s < r.dfa.size(); ++s) {
                const RegExp& lab = (*r.dfa.labels)[s];
                CHECK(r.dfa.accepting[s] == output(lab));
                for (const Symbol a : {"a", "b"})
                    CHECK((*r.dfa.labels)[r.dfa.next(s, a)] == norm(derive(lab, a), lv));
            }
            for (const auto& w : all) {
                INFO(print(e) << " on " << render_word(w));
                CHECK(eval(r.dfa, r.initial, w) == testing::matches(e, w));
            }
        }
    }
}

TEST_CASE("decide_bisim on the coinduction example")
{
    Dfa d = coinduction_pair();
    BisimCertificate c = decide_bisim(d, 0, d, 3);
    REQUIRE(c.bisimilar);
    std::set<StatePair> rel(c.relation.begin(), c.relation.end());
    CHECK(rel == std::set<StatePair>{{0, 3}, {1, 3}, {2, 4}});
    CHECK(check_bisimulation(d, d, c.relation));
}

TEST_CASE("decide_bisim on the exercise automata")
{
    Dfa d = exercise_xu();
    BisimCertificate c = decide_bisim(d, d.state_index("x"), d, d.state_index("u"));
    REQUIRE(c.bisimilar);
    std::set<StatePair> rel(c.relation.begin(), c.relation.end());
    auto st = [&](const char* n) { return d.state_index(n); };
    CHECK(rel == std::set<StatePair>{{st("x"), st("u")}, {st("y"), st("v")}, {st("y"), st("w")},
                                     {st("z"), st("v")}, {st("z"), st("w")}});
    CHECK(check_bisimulation(d, d, c.relation));
}

TEST_CASE("decide_bisim basics")
{
    Dfa d = coinduction_pair();
    BisimCertificate diag = decide_bisim(d, 0, d, 0);
    REQUIRE(diag.bisimilar);
    for (const auto& [x, y] : diag.relation)
        CHECK(x == y);
    CHECK(diag.relation.size() == 3);

    BisimCertificate no = decide_bisim(d, 0, d, 2);
    REQUIRE_FALSE(no.bisimilar);
    CHECK(no.witness.empty());

    Dfa other = odd_a();
    other.alphabet = Alphabet({"a", "c"});
    CHECK_THROWS(decide_bisim(d, 0, other, 0));
}

TEST_CASE("check_bisimulation")
{
    Dfa d = coinduction_pair();
    CHECK(check_bisimulation(d, d, {}));
    CHECK(check_bisimulation(d, d, {{0, 3}, {1, 3}, {2, 4}}));
    CHECK_FALSE(check_bisimulation(d, d, {{0, 3}, {1, 3}}));
    CHECK_FALSE(check_bisimulation(d, d, {{0, 4}}));
}

TEST_CASE("check_homomorphism")
{
    Dfa d = coinduction_pair();
    CHECK(check_homomorphism(d, d, {0, 1, 2, 3, 4}));
    CHECK(check_homomorphism(d, d, {3, 3, 4, 3, 4}));
    CHECK_FALSE(check_homomorphism(d, d, {4, 3, 4, 3, 4}));

    // the quotient from the ACI automaton onto the SIMPLIFY one
    std::mt19937 rng(79);
    for (int i = 0; i < 30; ++i) {
        RegExp e = testing::random_regex_upto(rng, 8);
        BuildResult aci = brzozowski_build(e, ab, Level::ACI);
        BuildResult simp = brzozowski_build(e, ab, Level::SIMPLIFY);
        std::map<RegExp, State> idx;
        for (State s = 0; s < simp.dfa.size(); ++s)
            idx[(*simp.dfa.labels)[s]] = s;
        std::vector<State> h;
        for (State s = 0; s < aci.dfa.size(); ++s)
            h.push_back(idx.at(norm((*aci.dfa.labels)[s], Level::SIMPLIFY)));
        INFO(print(e));
        CHECK(check_homomorphism(aci.dfa, simp.dfa, h));
        for (const auto& w : testing::all_words({"a", "b"}, 4))
            for (State s = 0; s < aci.dfa.size(); ++s)
                CHECK(eval(aci.dfa, s, w) == eval(simp.dfa, h[s], w));
    }
}

TEST_CASE("coinduction agrees with bounded comparison on random automata")
{
    std::mt19937 rng(83);
    for (int i = 0; i < 200; ++i) {
        std::uniform_int_distribution<std::size_t> n(1, 8);
        Dfa d1 = random_dfa(rng, n(rng)), d2 = random_dfa(rng, n(rng));
        BisimCertificate c = decide_bisim(d1, 0, d2, 0);
        bool agree = true;
        for (const auto& w : testing::all_words({"a", "b"}, std::min<std::size_t>(2 * d1.size() * d2.size(), 10)))
            agree = agree && eval(d1, 0, w) == eval(d2, 0, w);
        CHECK(c.bisimilar == agree);
        if (c.bisimilar) {
            CHECK(check_bisimulation(d1, d2, c.relation));
            // contained in full bisimilarity
            Dfa u = disjoint(d1, d2);
            auto cls = classes(u);
            for (const auto& [x, y] : c.relation)
                CHECK(cls[x] == cls[d1.size() + y]);
        } else {
            CHECK(eval(d1, 0, c.witness) != eval(d2, 0, c.witness));
        }
    }
}

TEST_CASE("returned relation is the smallest bisimulation")
{
    std::mt19937 rng(89);
    for (int i = 0; i < 100; ++i) {
        Dfa d1 = random_dfa(rng, 5), d2 = random_dfa(rng, 4);
        BisimCertificate c = decide_bisim(d1, 0, d2, 0);
        if (!c.bisimilar)
            continue;
        // pairs reachable from (0, 0) by a common word
        std::set<StatePair> reach{{0, 0}};
        std::vector<StatePair> todo{{0, 0}};
        while (!todo.empty()) {
            auto [x, y] = todo.back();
            todo.pop_back();
            for (const Symbol a : {"a", "b"})
                if (reach.insert({d1.next(x, a), d2.next(y, a)}).second)
                    todo.push_back({d1.next(x, a), d2.next(y, a)});
        }
        CHECK(std::set<StatePair>(c.relation.begin(), c.relation.end()) == reach);
    }
}

TEST_CASE("ACI and SIMPLIFY constructions are bisimilar")
{
    std::mt19937 rng(97);
    for (int i = 0; i < 100; ++i) {
        RegExp e = testing::random_regex_upto(rng, 10);
        BuildResult x = brzozowski_build(e, ab, Level::ACI);
        BuildResult y = brzozowski_build(e, ab, Level::SIMPLIFY);
        CHECK(decide_bisim(x.dfa, x.initial, y.dfa, y.initial).bisimilar);
    }
}

TEST_CASE("JSON export and import")
{
    Dfa d = odd_a();
    d.initial = 0;
    std::ifstream in(KLEENE_GOLDEN_DIR "/odd_a.json");
    REQUIRE(in);
    std::stringstream golden;
    golden << in.rdbuf();
    CHECK(export_json(d) == golden.str());
    CHECK(import_json(golden.str()) == d);

    std::mt19937 rng(101);
    for (int i = 0; i < 30; ++i) {
        BuildResult r = brzozowski_build(testing::random_regex_upto(rng, 10), ab, Level::SIMPLIFY);
        r.dfa.initial = r.initial;
        std::string js = export_json(r.dfa);
        Dfa back = import_json(js);
        CHECK(back == r.dfa);
        CHECK(export_json(back) == js);
    }
}

TEST_CASE("JSON schema errors name the offending field")
{
    auto path_of = [](const std::string& text) -> std::string {
        try {
            import_json(text);
        } catch (const SchemaError& e) {
            return e.path();
        }
        return "no error";
    };
    CHECK(path_of("{") == "$");
    CHECK(path_of(R"({"states":["x"],"accepting":[],"transitions":[]})") == "$.alphabet");
    CHECK(path_of(R"({"alphabet":["a"],"states":["x"],"accepting":["y"],"transitions":[]})") == "$.accepting[0]");
    CHECK(path_of(R"({"alphabet":["a"],"states":["x"],"accepting":[],"transitions":[{"from":"x","letter":"a","to":"z"}]})") ==
          "$.transitions[0].to");
    CHECK(path_of(R"({"alphabet":["a"],"states":["x"],"accepting":[],"transitions":[]})") == "$.transitions");
}

TEST_CASE("DOT export")
{
    Dfa d = odd_a();
    std::string dot = export_dot(d);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("x2") != std::string::npos);
}
