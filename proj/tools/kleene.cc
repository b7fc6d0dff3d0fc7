/* kleene.cc -- command-line front end */

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kleene/automata.hh"
#include "kleene/derivatives.hh"
#include "kleene/equivalence.hh"
#include "kleene/kat.hh"
#include "kleene/oracle.hh"
#include "kleene/solver.hh"
#include "kleene/syntax.hh"

using namespace kleene;
using nlohmann::ordered_json;

namespace {

enum Exit { HOLDS = 0, REFUTED = 1, INPUT_ERROR = 2, BUDGET = 3 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string mode = "ka";
    std::vector<std::string> alphabet, actions, tests;
    std::string congruence = "simplify";
    std::string method = "block";
    std::size_t max_len = 4;
    std::string format = "text";
    bool certificate = false;
    std::size_t state_budget = default_state_budget;
};

std::string slurp(std::istream& in)
{
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// "-" stands for standard input
std::string arg_text(const std::string& s)
{
    if (s != "-")
        return s;
    std::string t = slurp(std::cin);
    while (!t.empty() && (t.back() == '\n' || t.back() == '\r'))
        t.pop_back();
    return t;
}

std::string file_text(const std::string& path)
{
    if (path == "-")
        return slurp(std::cin);
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    return slurp(in);
}

bool kat_mode(const Config& c)
{
    if (c.mode == "kat")
        return true;
    if (c.mode != "ka")
        throw InputError("unknown mode " + c.mode);
    return false;
}

Level level_of(const Config& c)
{
    if (c.congruence == "aci")
        return Level::ACI;
    if (c.congruence == "simplify")
        return Level::SIMPLIFY;
    throw InputError("unknown congruence " + c.congruence);
}

StarMethod method_of(const Config& c)
{
    if (c.method == "block")
        return StarMethod::BLOCK;
    if (c.method == "elimination")
        return StarMethod::ELIMINATION;
    throw InputError("unknown method " + c.method);
}

KatSignature signature(const Config& c)
{
    if (c.actions.empty())
        throw InputError("kat mode needs --actions");
    return {c.actions, c.tests};
}

RegExp regex(const std::string& text, const Config& c)
{
    if (c.alphabet.empty())
        return parse_regex(text);
    return parse_regex(text, Alphabet(c.alphabet));
}

// Letters for a pair of expressions when no alphabet is declared.
Alphabet alphabet_for(const Config& c, const std::vector<RegExp>& es)
{
    if (!c.alphabet.empty())
        return Alphabet(c.alphabet);
    std::vector<Symbol> ls;
    for (const auto& e : es)
        for (const auto& a : letters(e))
            ls.push_back(a);
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    if (ls.empty())
        ls.push_back("a");
    return Alphabet(ls);
}

int cmd_check(const std::string& e_text, const std::string& f_text, const Config& c)
{
    if (kat_mode(c)) {
        KatSignature sig = signature(c);
        KatExp e = parse_kat(arg_text(e_text), sig);
        KatExp f = parse_kat(arg_text(f_text), sig);
        KatEquivResult r = kat_decide_equiv(e, f, sig, c.state_budget);
        if (c.certificate) {
            ordered_json j;
            j["equivalent"] = r.equivalent;
            if (r.equivalent) {
                ordered_json rel = ordered_json::array();
                for (const auto& [x, y] : r.relation)
                    rel.push_back({print(x), print(y)});
                j["relation"] = rel;
            } else {
                j["witness"] = render_guarded(r.witness, sig.tests);
            }
            std::cout << j.dump(2) << "\n";
        } else if (r.equivalent) {
            std::cout << "equivalent\nrelation size: " << r.relation.size() << "\n";
        } else {
            std::cout << "inequivalent\nwitness: " << render_guarded(r.witness, sig.tests) << "\n";
        }
        return r.equivalent ? HOLDS : REFUTED;
    }

    RegExp e = regex(arg_text(e_text), c);
    RegExp f = regex(arg_text(f_text), c);
    EquivResult r = c.alphabet.empty() ? decide_equiv(e, f) : decide_equiv(e, f, Alphabet(c.alphabet));
    if (c.certificate) {
        ordered_json j;
        j["equivalent"] = r.equivalent;
        if (r.equivalent) {
            ordered_json rel = ordered_json::array();
            for (const auto& [x, y] : r.relation)
                rel.push_back({print(x), print(y)});
            j["relation"] = rel;
        } else {
            j["witness"] = render_word(r.witness);
        }
        std::cout << j.dump(2) << "\n";
    } else if (r.equivalent) {
        std::cout << "equivalent\nrelation size: " << r.relation.size() << "\n";
    } else {
        std::cout << "inequivalent\nwitness: " << render_word(r.witness) << "\n";
    }
    return r.equivalent ? HOLDS : REFUTED;
}

void emit(const std::string& artifact, const std::string& out_path, std::size_t states)
{
    if (out_path.empty()) {
        std::cerr << "states: " << states << "\n";
        std::cout << artifact;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw InputError("cannot write " + out_path);
    out << artifact;
    std::cout << "states: " << states << "\n";
}

int cmd_build(const std::string& text, const std::string& out_path, const Config& c)
{
    if (kat_mode(c)) {
        KatSignature sig = signature(c);
        KatBuildResult r = kat_build(parse_kat(arg_text(text), sig), sig, c.state_budget);
        if (c.format == "json") {
            emit(export_json(r.dfa), out_path, r.dfa.size());
        } else if (c.format == "text") {
            std::cout << "states: " << r.dfa.size() << "\n";
            for (State s = 0; s < r.dfa.size(); ++s)
                std::cout << r.dfa.names[s] << "  " << print((*r.dfa.labels)[s]) << "\n";
        } else {
            throw InputError("format " + c.format + " is not available in kat mode");
        }
        return HOLDS;
    }

    RegExp e = regex(arg_text(text), c);
    Alphabet sigma = alphabet_for(c, {e});
    BuildResult r = brzozowski_build(e, sigma, level_of(c), c.state_budget);
    r.dfa.initial = r.initial;
    if (c.format == "json") {
        emit(export_json(r.dfa), out_path, r.dfa.size());
    } else if (c.format == "dot") {
        emit(export_dot(r.dfa), out_path, r.dfa.size());
    } else if (c.format == "text") {
        std::cout << "states: " << r.dfa.size() << "\n";
        for (State s = 0; s < r.dfa.size(); ++s)
            std::cout << r.dfa.names[s] << (r.dfa.accepting[s] ? " * " : "   ") << print((*r.dfa.labels)[s]) << "\n";
    } else {
        throw InputError("unknown format " + c.format);
    }
    return HOLDS;
}

int cmd_solve(const std::string& path, const std::string& state, const Config& c)
{
    Dfa d = import_json(file_text(path));
    State s = 0;
    if (!state.empty())
        s = d.state_index(state);
    else if (d.initial)
        s = *d.initial;
    std::cout << print(solve(d, s, method_of(c))) << "\n";
    return HOLDS;
}

int cmd_derive(const std::string& text, const std::string& word, const Config& c)
{
    RegExp e = regex(arg_text(text), c);
    Word w;
    if (!c.alphabet.empty()) {
        Alphabet sigma(c.alphabet);
        if (sigma.single_char()) {
            for (char ch : word)
                w.push_back(std::string(1, ch));
        } else {
            std::istringstream in(word);
            for (std::string tok; in >> tok;)
                w.push_back(tok);
        }
        for (const auto& a : w)
            if (!sigma.contains(a))
                throw UndeclaredSymbol(a);
    } else {
        for (char ch : word)
            if (ch != ' ')
                w.push_back(std::string(1, ch));
    }
    RegExp raw = word_derive(e, w);
    std::cout << print(raw) << "\n" << print(norm(raw, level_of(c))) << "\n";
    return HOLDS;
}

int cmd_oracle(const std::string& text, const Config& c)
{
    if (kat_mode(c)) {
        KatSignature sig = signature(c);
        std::set<GuardedString> g = glang_upto(parse_kat(arg_text(text), sig), sig, c.max_len);
        std::vector<GuardedString> v(g.begin(), g.end());
        std::stable_sort(v.begin(), v.end(),
                         [](const GuardedString& x, const GuardedString& y) { return x.length() < y.length(); });
        for (const auto& s : v)
            std::cout << render_guarded(s, sig.tests) << "\n";
        return HOLDS;
    }
    for (const auto& w : render_words(lang_upto(regex(arg_text(text), c), c.max_len)))
        std::cout << w << "\n";
    return HOLDS;
}

int cmd_hoare(const std::string& pre, const std::string& prog, const std::string& post, const Config& c)
{
    Config kc = c;
    kc.mode = "kat";
    KatSignature sig = signature(kc);
    HoareTriple t{parse_test(arg_text(pre), sig), parse_kat(arg_text(prog), sig), parse_test(arg_text(post), sig)};
    KatExp bad = KatExp::prod(KatExp::test(t.pre), KatExp::prod(t.prog, KatExp::test(BoolExp::neg(t.post))));
    KatEquivResult r = kat_decide_equiv(bad, KatExp::zero(), sig, c.state_budget);
    if (r.equivalent) {
        std::cout << "valid\n";
        return HOLDS;
    }
    std::cout << "invalid\nwitness: " << render_guarded(r.witness, sig.tests) << "\n";
    return REFUTED;
}

int cmd_upto(const std::string& path, const Config& c)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(file_text(path));
    } catch (const nlohmann::json::parse_error& ex) {
        throw InputError(std::string("malformed JSON: ") + ex.what());
    }
    if (!j.is_array())
        throw InputError("expected a JSON list of expression pairs");
    UptoCandidate r;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
            throw InputError("each pair must be a list of two expression strings");
        r.pairs.emplace_back(regex(p[0].get<std::string>(), c), regex(p[1].get<std::string>(), c));
    }
    std::vector<UptoVerdict> vs;
    if (c.alphabet.empty())
        vs = verify_upto(r);
    else
        vs = verify_upto(r, Alphabet(c.alphabet));
    bool all = true;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const UptoVerdict& v = vs[i];
        std::cout << i << ": ";
        switch (v.kind) {
        case UptoVerdict::Verified:
            std::cout << "Verified";
            break;
        case UptoVerdict::OutputMismatch:
            std::cout << "OutputMismatch";
            break;
        case UptoVerdict::Unknown:
            std::cout << "Unknown (letter " << v.letter << ": " << print(v.open_pair->first) << " vs "
                      << print(v.open_pair->second) << ")";
            break;
        }
        std::cout << "\n";
        all = all && v.kind == UptoVerdict::Verified;
    }
    return all ? HOLDS : REFUTED;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Kleene algebra toolkit: equivalence, automata, equations, KAT"};
    app.require_subcommand(1);
    Config cfg;
    std::string alphabet, actions, tests;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--mode", cfg.mode, "ka or kat")->check(CLI::IsMember({"ka", "kat"}));
        sub->add_option("--alphabet", alphabet, "comma-separated letters");
        sub->add_option("--actions", actions, "comma-separated actions (kat)");
        sub->add_option("--tests", tests, "comma-separated primitive tests (kat)");
        sub->add_option("--congruence", cfg.congruence, "aci or simplify")->check(CLI::IsMember({"aci", "simplify"}));
        sub->add_option("--state-budget", cfg.state_budget, "maximum number of states")->check(CLI::PositiveNumber);
    };

    std::string e_text, f_text, out_path, path, state, word, pre, prog, post;

    auto* check = app.add_subcommand("check", "decide equivalence of two expressions");
    common(check);
    check->add_option("e", e_text)->required();
    check->add_option("f", f_text)->required();
    check->add_flag("--certificate", cfg.certificate, "print the relation or witness as JSON");

    auto* build = app.add_subcommand("build", "build the derivative automaton");
    common(build);
    build->add_option("e", e_text)->required();
    build->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json", "dot"}));
    build->add_option("-o,--output", out_path, "write the automaton here");

    auto* solve_cmd = app.add_subcommand("solve", "expression for a state of an automaton (JSON)");
    common(solve_cmd);
    solve_cmd->add_option("automaton", path)->required();
    solve_cmd->add_option("--state", state);
    solve_cmd->add_option("--method", cfg.method)->check(CLI::IsMember({"block", "elimination"}));

    auto* derive_cmd = app.add_subcommand("derive", "derivative with respect to a word");
    common(derive_cmd);
    derive_cmd->add_option("e", e_text)->required();
    derive_cmd->add_option("--word", word)->required();

    auto* oracle = app.add_subcommand("oracle", "bounded language");
    common(oracle);
    oracle->add_option("e", e_text)->required();
    oracle->add_option("--max-len", cfg.max_len);

    auto* hoare = app.add_subcommand("hoare", "check a Hoare triple {pre} prog {post}");
    common(hoare);
    hoare->add_option("pre", pre)->required();
    hoare->add_option("prog", prog)->required();
    hoare->add_option("post", post)->required();

    auto* upto = app.add_subcommand("upto", "verify a bisimulation up to congruence (JSON list of pairs)");
    common(upto);
    upto->add_option("relation", path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : INPUT_ERROR;
    }

    cfg.alphabet = split_list(alphabet);
    cfg.actions = split_list(actions);
    cfg.tests = split_list(tests);

    try {
        if (*check)
            return cmd_check(e_text, f_text, cfg);
        if (*build)
            return cmd_build(e_text, out_path, cfg);
        if (*solve_cmd)
            return cmd_solve(path, state, cfg);
        if (*derive_cmd)
            return cmd_derive(e_text, word, cfg);
        if (*oracle)
            return cmd_oracle(e_text, cfg);
        if (*hoare)
            return cmd_hoare(pre, prog, post, cfg);
        if (*upto)
            return cmd_upto(path, cfg);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BUDGET;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return INPUT_ERROR;
    }
    return INPUT_ERROR;
}
