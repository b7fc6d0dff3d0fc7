/* oracle.hh -- bounded denotational semantics (word languages, guarded strings, relations) */

#ifndef KLEENE_ORACLE_HH
#define KLEENE_ORACLE_HH

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kleene/syntax.hh"

namespace kleene {

/// All words of the language of an expression up to a length bound.
struct BoundedLang {
    std::size_t max_len = 0;
    std::set<Word> words;

    bool contains(const Word& w) const { return words.count(w) != 0; }
    /// Restriction to words of length <= n.
    BoundedLang truncate(std::size_t n) const;
    friend bool operator==(const BoundedLang&, const BoundedLang&) = default;
};

BoundedLang lang_upto(const RegExp& e, std::size_t n);

/// Words in shortlex order, the empty word rendered as "ε".
std::vector<std::string> render_words(const BoundedLang& l);
std::string render_word(const Word& w);

// ---------------------------------------------------------------------------
// Atoms and guarded strings

/// Truth assignment over the primitive tests; bit i is test i of the signature.
using Atom = std::uint32_t;

/// Largest |T| for which atoms are enumerated.
inline constexpr std::size_t default_max_tests = 10;

class TooManyTests : public std::runtime_error {
public:
    TooManyTests(std::size_t have, std::size_t cap)
        : std::runtime_error("too many primitive tests: " + std::to_string(have) +
                             " (limit " + std::to_string(cap) + ")") {}
};

/// All 2^|T| atoms in binary-counting order over the canonical test order
/// (the last declared test is the least significant position).
std::vector<Atom> atoms(const std::vector<Symbol>& tests, std::size_t max_tests = default_max_tests);
std::size_t atom_count(const std::vector<Symbol>& tests);
/// Whether test i (in declaration order) holds in atom alpha.
bool atom_has(Atom alpha, std::size_t test_index, std::size_t test_count);
Atom atom_of(const std::set<Symbol>& trueset, const std::vector<Symbol>& tests);
std::set<Symbol> trueset(Atom alpha, const std::vector<Symbol>& tests);

bool atom_sat(const BoolExp& b, Atom alpha, const std::vector<Symbol>& tests);

struct GuardedString {
    std::vector<Atom> atoms;      // n + 1 entries
    std::vector<Symbol> actions;  // n entries

    std::size_t length() const { return actions.size(); }
    friend bool operator==(const GuardedString&, const GuardedString&) = default;
    friend auto operator<=>(const GuardedString&, const GuardedString&) = default;
};

/// "a!b . p . ab" style rendering.
std::string render_atom(Atom alpha, const std::vector<Symbol>& tests);
std::string render_guarded(const GuardedString& g, const std::vector<Symbol>& tests);

std::set<GuardedString> glang_upto(const KatExp& e, const KatSignature& sig, std::size_t n);

// ---------------------------------------------------------------------------
// Relational interpretations

using Relation = std::set<std::pair<std::size_t, std::size_t>>;

struct RelInterp {
    std::size_t state_count = 1;
    std::map<Symbol, Relation> action_rel;
    std::map<Symbol, std::set<std::size_t>> test_sat;
};

Relation rel_sem(const RegExp& e, const RelInterp& interp);
Relation rel_sem(const KatExp& e, const RelInterp& interp);

/// The sharp interpretation on all words over the alphabet of length <= max_len:
/// letter a relates w to wa. State ids index into *words.
RelInterp sharp_interp(const Alphabet& alphabet, std::size_t max_len, std::vector<Word>* words);

}  // namespace kleene

#endif /* KLEENE_ORACLE_HH */
