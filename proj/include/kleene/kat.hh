/* kat.hh -- Kleene algebra with tests: derivatives, automata, equivalence, program encodings */

#ifndef KLEENE_KAT_HH
#define KLEENE_KAT_HH

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kleene/automata.hh"
#include "kleene/derivatives.hh"
#include "kleene/oracle.hh"
#include "kleene/syntax.hh"

namespace kleene {

/// Membership vector indexed by atom.
using AtomSet = std::vector<bool>;

BoolExp norm_bool(const BoolExp& b);
KatExp norm_kat(const KatExp& e, Level level);

AtomSet kat_E(const KatExp& e, const KatSignature& sig);
bool kat_E_contains(const KatExp& e, Atom alpha, const KatSignature& sig);
KatExp kat_D(const KatExp& e, Atom alpha, const Symbol& p, const KatSignature& sig);

struct KatDfa {
    KatSignature sig;
    std::vector<std::string> names;
    std::vector<AtomSet> output;
    /// trans[state][atom * |P| + action index]
    std::vector<std::vector<State>> trans;
    std::optional<std::vector<KatExp>> labels;

    std::size_t size() const { return names.size(); }
    State next(State s, Atom alpha, std::size_t action) const
    {
        return trans.at(s).at(alpha * sig.actions.size() + action);
    }
};

struct KatBuildResult {
    KatDfa dfa;
    State initial;
};

KatBuildResult kat_build(const KatExp& e, const KatSignature& sig, std::size_t budget = default_state_budget);

/// Whether the guarded string is accepted from state s.
bool kat_eval(const KatDfa& d, State s, const GuardedString& g);

struct KatEquivResult {
    bool equivalent = false;
    std::vector<std::pair<KatExp, KatExp>> relation;
    GuardedString witness;
};

KatEquivResult kat_decide_equiv(const KatExp& e, const KatExp& f, const KatSignature& sig,
                                std::size_t budget = default_state_budget);
KatEquivResult kat_decide_leq(const KatExp& e, const KatExp& f, const KatSignature& sig);

// Program constructs
KatExp while_(const BoolExp& b, const KatExp& e);
KatExp ite(const BoolExp& b, const KatExp& e, const KatExp& f);
/// One-armed conditional: if b then e (else skip).
KatExp its(const BoolExp& b, const KatExp& e);

struct HoareTriple {
    BoolExp pre;
    KatExp prog;
    BoolExp post;
};

/// {b} e {c} as b e !c = 0.
bool hoare_check(const HoareTriple& t, const KatSignature& sig);
/// {b} e {c} as b e <= e c.
bool hoare_check_leq(const HoareTriple& t, const KatSignature& sig);
/// {b} e {c} as b e = b e c.
bool hoare_check_eq(const HoareTriple& t, const KatSignature& sig);

/// The conjunction of literals describing an atom, as a product of tests.
KatExp atom_exp(Atom alpha, const KatSignature& sig);
/// Sum of the atoms satisfying b, ordered as in normal forms and left-nested.
KatExp expand_tests(const BoolExp& b, const KatSignature& sig);

std::string export_json(const KatDfa& d);

}  // namespace kleene

#endif /* KLEENE_KAT_HH */
