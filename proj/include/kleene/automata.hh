/* automata.hh -- deterministic automata, Brzozowski construction and bisimilarity */

#ifndef KLEENE_AUTOMATA_HH
#define KLEENE_AUTOMATA_HH

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kleene/derivatives.hh"
#include "kleene/syntax.hh"

namespace kleene {

using State = std::size_t;
using StatePair = std::pair<State, State>;

/// Raised when a construction exceeds its configured state budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(std::size_t budget)
        : std::runtime_error("state budget of " + std::to_string(budget) + " exceeded") {}
};

/// Raised for malformed automaton descriptions; the message names the offending field.
class SchemaError : public std::runtime_error {
public:
    SchemaError(const std::string& path, const std::string& msg)
        : std::runtime_error(path + ": " + msg), path_(path) {}
    const std::string& path() const { return path_; }
private:
    std::string path_;
};

inline constexpr std::size_t default_state_budget = 100000;

struct Dfa {
    Alphabet alphabet;
    std::vector<std::string> names;
    std::vector<bool> accepting;
    std::vector<std::vector<State>> trans;   // trans[state][letter index]
    std::optional<std::vector<RegExp>> labels;
    std::optional<State> initial;

    std::size_t size() const { return names.size(); }
    bool output(State s) const { return accepting.at(s); }
    State next(State s, std::size_t letter) const { return trans.at(s).at(letter); }
    State next(State s, const Symbol& a) const;
    State state_index(const std::string& name) const;

    /// Appends a fresh state and returns it; transitions must be filled in by the caller.
    State add_state(const std::string& name, bool accept);
    void set_trans(State from, const Symbol& a, State to);
    /// Throws std::logic_error unless every state has a valid successor for every letter.
    void validate() const;

    friend bool operator==(const Dfa& a, const Dfa& b);
};

bool eval(const Dfa& d, State s, const Word& w);

struct BuildResult {
    Dfa dfa;
    State initial;
};

BuildResult brzozowski_build(const RegExp& e, const Alphabet& alphabet, Level level,
                             std::size_t budget = default_state_budget);
/// Alphabet taken from the letters of e.
BuildResult brzozowski_build(const RegExp& e, Level level, std::size_t budget = default_state_budget);

struct BisimCertificate {
    bool bisimilar = false;
    std::vector<StatePair> relation;   // pairs (state of d1, state of d2), in discovery order
    Word witness;

    static BisimCertificate Bisimilar(std::vector<StatePair> r) { return {true, std::move(r), {}}; }
    static BisimCertificate Distinguished(Word w) { return {false, {}, std::move(w)}; }
};

BisimCertificate decide_bisim(const Dfa& d1, State s1, const Dfa& d2, State s2);
bool check_bisimulation(const Dfa& d1, const Dfa& d2, const std::vector<StatePair>& r);
bool check_homomorphism(const Dfa& d1, const Dfa& d2, const std::vector<State>& h);

std::string export_json(const Dfa& d);
Dfa import_json(const std::string& text);
std::string export_dot(const Dfa& d);

}  // namespace kleene

#endif /* KLEENE_AUTOMATA_HH */
