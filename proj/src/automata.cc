/* automata.cc -- deterministic automata, Brzozowski construction and bisimilarity */

#include "kleene/automata.hh"

#include <deque>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace kleene {

namespace {
constexpr State no_state = std::numeric_limits<State>::max();
}

State Dfa::next(State s, const Symbol& a) const
{
    return next(s, alphabet.index_of(a));
}

State Dfa::state_index(const std::string& name) const
{
    for (State s = 0; s < names.size(); ++s)
        if (names[s] == name)
            return s;
    throw std::out_of_range("unknown state '" + name + "'");
}

State Dfa::add_state(const std::string& name, bool accept)
{
    names.push_back(name);
    accepting.push_back(accept);
    trans.emplace_back(alphabet.size(), no_state);
    return names.size() - 1;
}

void Dfa::set_trans(State from, const Symbol& a, State to)
{
    if (from >= size() || to >= size())
        throw std::out_of_range("transition references an unknown state");
    trans[from][alphabet.index_of(a)] = to;
}

void Dfa::validate() const
{
    if (accepting.size() != names.size() || trans.size() != names.size())
        throw std::logic_error("inconsistent automaton tables");
    for (State s = 0; s < size(); ++s) {
        if (trans[s].size() != alphabet.size())
            throw std::logic_error("state '" + names[s] + "' has a malformed transition row");
        for (std::size_t a = 0; a < alphabet.size(); ++a)
            if (trans[s][a] >= size())
                throw std::logic_error("state '" + names[s] + "' has no transition on '" + alphabet[a] + "'");
    }
    if (initial && *initial >= size())
        throw std::logic_error("initial state out of range");
}

bool operator==(const Dfa& a, const Dfa& b)
{
    // labels are provenance only and do not take part in equality
    return a.alphabet == b.alphabet && a.names == b.names && a.accepting == b.accepting &&
           a.trans == b.trans && a.initial == b.initial;
}

bool eval(const Dfa& d, State s, const Word& w)
{
    if (s >= d.size())
        throw std::out_of_range("unknown state " + std::to_string(s));
    for (const auto& a : w) {
        if (!d.alphabet.contains(a))
            throw UndeclaredSymbol(a);
        s = d.next(s, d.alphabet.index_of(a));
    }
    return d.output(s);
}

// ---------------------------------------------------------------------------
// Brzozowski construction

BuildResult brzozowski_build(const RegExp& e, const Alphabet& alphabet, Level level, std::size_t budget)
{
    for (const auto& a : letters(e))
        if (!alphabet.contains(a))
            throw UndeclaredSymbol(a);

    Dfa d;
    d.alphabet = alphabet;
    d.labels.emplace();
    std::unordered_map<RegExp, State, RegExpHash> index;
    std::deque<State> todo;

    auto intern = [&](const RegExp& x) -> State {
        auto it = index.find(x);
        if (it != index.end())
            return it->second;
        if (d.size() >= budget)
            throw BudgetExceeded(budget);
        State s = d.add_state("q" + std::to_string(d.size()), output(x));
        d.labels->push_back(x);
        index.emplace(x, s);
        todo.push_back(s);
        return s;
    };

    State init = intern(norm(e, level));
    while (!todo.empty()) {
        State s = todo.front();
        todo.pop_front();
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            RegExp label = (*d.labels)[s];
            State t = intern(norm(derive(label, alphabet[a]), level));
            d.trans[s][a] = t;
        }
    }
    d.initial = init;
    return {std::move(d), init};
}

BuildResult brzozowski_build(const RegExp& e, Level level, std::size_t budget)
{
    std::vector<Symbol> ls = letters(e);
    if (ls.empty())
        throw std::invalid_argument("expression has no letters; an alphabet must be given");
    return brzozowski_build(e, Alphabet(ls), level, budget);
}

// ---------------------------------------------------------------------------
// Bisimilarity

namespace {

struct PairHash {
    std::size_t operator()(const StatePair& p) const
    {
        return std::hash<std::size_t>{}(p.first) * 1000003u ^ std::hash<std::size_t>{}(p.second);
    }
};

}  // namespace

BisimCertificate decide_bisim(const Dfa& d1, State s1, const Dfa& d2, State s2)
{
    if (!(d1.alphabet == d2.alphabet))
        throw std::invalid_argument("automata are over different alphabets");
    if (s1 >= d1.size() || s2 >= d2.size())
        throw std::out_of_range("unknown state in bisimilarity query");

    struct Entry {
        StatePair pair;
        std::size_t parent;
        std::size_t letter;
    };
    std::vector<Entry> entries{{{s1, s2}, no_state, 0}};
    std::deque<std::size_t> todo{0};
    std::unordered_map<StatePair, bool, PairHash> seen;
    std::vector<StatePair> rel;

    while (!todo.empty()) {
        std::size_t id = todo.front();
        todo.pop_front();
        StatePair p = entries[id].pair;
        if (seen.count(p))
            continue;
        if (d1.output(p.first) != d2.output(p.second)) {
            Word w;
            for (std::size_t cur = id; entries[cur].parent != no_state; cur = entries[cur].parent)
                w.push_back(d1.alphabet[entries[cur].letter]);
            return BisimCertificate::Distinguished(Word(w.rbegin(), w.rend()));
        }
        seen.emplace(p, true);
        rel.push_back(p);
        for (std::size_t a = 0; a < d1.alphabet.size(); ++a) {
            entries.push_back({{d1.next(p.first, a), d2.next(p.second, a)}, id, a});
            todo.push_back(entries.size() - 1);
        }
    }
    return BisimCertificate::Bisimilar(std::move(rel));
}

bool check_bisimulation(const Dfa& d1, const Dfa& d2, const std::vector<StatePair>& r)
{
    if (!(d1.alphabet == d2.alphabet))
        return false;
    std::set<StatePair> rs(r.begin(), r.end());
    for (auto [s, t] : r) {
        if (s >= d1.size() || t >= d2.size())
            return false;
        if (d1.output(s) != d2.output(t))
            return false;
        for (std::size_t a = 0; a < d1.alphabet.size(); ++a)
            if (!rs.count({d1.next(s, a), d2.next(t, a)}))
                return false;
    }
    return true;
}

bool check_homomorphism(const Dfa& d1, const Dfa& d2, const std::vector<State>& h)
{
    if (!(d1.alphabet == d2.alphabet) || h.size() != d1.size())
        return false;
    for (State s = 0; s < d1.size(); ++s) {
        if (h[s] >= d2.size() || d2.output(h[s]) != d1.output(s))
            return false;
        for (std::size_t a = 0; a < d1.alphabet.size(); ++a)
            if (d2.next(h[s], a) != h[d1.next(s, a)])
                return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Serialization

std::string export_json(const Dfa& d)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["alphabet"] = d.alphabet.symbols();
    j["states"] = d.names;
    ordered_json acc = ordered_json::array();
    for (State s = 0; s < d.size(); ++s)
        if (d.accepting[s])
            acc.push_back(d.names[s]);
    j["accepting"] = acc;
    ordered_json tr = ordered_json::array();
    for (State s = 0; s < d.size(); ++s) {
        for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
            ordered_json t;
            t["from"] = d.names[s];
            t["letter"] = d.alphabet[a];
            t["to"] = d.names[d.trans[s][a]];
            tr.push_back(std::move(t));
        }
    }
    j["transitions"] = tr;
    if (d.initial)
        j["initial"] = d.names[*d.initial];
    return j.dump(2) + "\n";
}

namespace {

const nlohmann::json& field(const nlohmann::json& obj, const std::string& key, const std::string& path)
{
    auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaError(path + "." + key, "missing field");
    return *it;
}

std::string string_at(const nlohmann::json& v, const std::string& path)
{
    if (!v.is_string())
        throw SchemaError(path, "expected a string");
    return v.get<std::string>();
}

std::vector<std::string> strings_at(const nlohmann::json& v, const std::string& path)
{
    if (!v.is_array())
        throw SchemaError(path, "expected an array");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(string_at(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

Dfa import_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw SchemaError("$", std::string("malformed JSON: ") + ex.what());
    }
    if (!j.is_object())
        throw SchemaError("$", "expected an object");

    Dfa d;
    std::vector<std::string> letters = strings_at(field(j, "alphabet", "$"), "$.alphabet");
    try {
        d.alphabet = Alphabet(letters);
    } catch (const std::invalid_argument& ex) {
        throw SchemaError("$.alphabet", ex.what());
    }

    std::vector<std::string> states = strings_at(field(j, "states", "$"), "$.states");
    if (states.empty())
        throw SchemaError("$.states", "at least one state is required");
    std::map<std::string, State> index;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (!index.emplace(states[i], i).second)
            throw SchemaError("$.states[" + std::to_string(i) + "]", "duplicate state '" + states[i] + "'");
        d.add_state(states[i], false);
    }
    auto lookup = [&](const std::string& name, const std::string& path) {
        auto it = index.find(name);
        if (it == index.end())
            throw SchemaError(path, "unknown state '" + name + "'");
        return it->second;
    };

    std::vector<std::string> acc = strings_at(field(j, "accepting", "$"), "$.accepting");
    for (std::size_t i = 0; i < acc.size(); ++i)
        d.accepting[lookup(acc[i], "$.accepting[" + std::to_string(i) + "]")] = true;

    const nlohmann::json& tr = field(j, "transitions", "$");
    if (!tr.is_array())
        throw SchemaError("$.transitions", "expected an array");
    for (std::size_t i = 0; i < tr.size(); ++i) {
        std::string path = "$.transitions[" + std::to_string(i) + "]";
        if (!tr[i].is_object())
            throw SchemaError(path, "expected an object");
        State from = lookup(string_at(field(tr[i], "from", path), path + ".from"), path + ".from");
        std::string a = string_at(field(tr[i], "letter", path), path + ".letter");
        if (!d.alphabet.contains(a))
            throw SchemaError(path + ".letter", "letter '" + a + "' is not in the alphabet");
        State to = lookup(string_at(field(tr[i], "to", path), path + ".to"), path + ".to");
        State& slot = d.trans[from][d.alphabet.index_of(a)];
        if (slot != no_state && slot != to)
            throw SchemaError(path, "second transition from '" + states[from] + "' on '" + a + "'");
        slot = to;
    }
    for (State s = 0; s < d.size(); ++s)
        for (std::size_t a = 0; a < d.alphabet.size(); ++a)
            if (d.trans[s][a] == no_state)
                throw SchemaError("$.transitions", "no transition from '" + states[s] + "' on '" +
                                                       d.alphabet[a] + "'");

    if (auto it = j.find("initial"); it != j.end() && !it->is_null())
        d.initial = lookup(string_at(*it, "$.initial"), "$.initial");
    return d;
}

namespace {

std::string dot_id(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string export_dot(const Dfa& d)
{
    std::ostringstream os;
    os << "digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (State s = 0; s < d.size(); ++s)
        os << "  " << dot_id(d.names[s]) << " [shape=" << (d.accepting[s] ? "doublecircle" : "circle") << "];\n";
    if (d.initial)
        os << "  __start [shape=point];\n  __start -> " << dot_id(d.names[*d.initial]) << ";\n";
    for (State s = 0; s < d.size(); ++s) {
        std::map<State, std::string> edges;
        for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
            std::string& lbl = edges[d.trans[s][a]];
            if (!lbl.empty())
                lbl += ", ";
            lbl += d.alphabet[a];
        }
        for (const auto& [t, lbl] : edges)
            os << "  " << dot_id(d.names[s]) << " -> " << dot_id(d.names[t]) << " [label=" << dot_id(lbl) << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace kleene
