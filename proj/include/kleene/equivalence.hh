/* equivalence.hh -- deciding equivalence of regular expressions, bisimulations up to congruence */

#ifndef KLEENE_EQUIVALENCE_HH
#define KLEENE_EQUIVALENCE_HH

#include <optional>
#include <utility>
#include <vector>

#include "kleene/syntax.hh"

namespace kleene {

using ExpPair = std::pair<RegExp, RegExp>;

struct EquivResult {
    bool equivalent = false;
    /// Pairs of SIMPLIFY normal forms; a bisimulation between the two Brzozowski automata.
    std::vector<ExpPair> relation;
    /// Shortest word in exactly one of the two languages (when inequivalent).
    Word witness;

    static EquivResult Equivalent(std::vector<ExpPair> r) { return {true, std::move(r), {}}; }
    static EquivResult Inequivalent(Word w) { return {false, {}, std::move(w)}; }
};

/// Explores derivative pairs over the given letters (the letters of e and f when omitted).
EquivResult decide_equiv(const RegExp& e, const RegExp& f);
EquivResult decide_equiv(const RegExp& e, const RegExp& f, const Alphabet& alphabet);
/// e <= f, decided as e + f = f.
EquivResult decide_leq(const RegExp& e, const RegExp& f);
EquivResult decide_leq(const RegExp& e, const RegExp& f, const Alphabet& alphabet);

bool equivalent(const RegExp& e, const RegExp& f);

// ---------------------------------------------------------------------------
// Bisimulation up to congruence

struct UptoCandidate {
    std::vector<ExpPair> pairs;
};

struct UptoVerdict {
    enum Kind { Verified, OutputMismatch, Unknown };
    Kind kind = Verified;
    /// For Unknown: the derivative pair that could not be closed and its letter.
    std::optional<ExpPair> open_pair;
    Symbol letter;
};

struct UptoOptions {
    std::size_t max_depth = 8;
    /// Safety net: re-check pairs reported Verified with decide_equiv.
    bool cross_check = true;
};

/// One verdict per pair of r, in order.
std::vector<UptoVerdict> verify_upto(const UptoCandidate& r, const Alphabet& alphabet,
                                     const UptoOptions& opts = {});
std::vector<UptoVerdict> verify_upto(const UptoCandidate& r, const UptoOptions& opts = {});

/// Whether e and f are related by the congruence generated by r and the semiring
/// identities used by the bounded closure procedure (sound, incomplete).
bool closes_upto(const RegExp& e, const RegExp& f, const UptoCandidate& r, std::size_t max_depth = 8);

}  // namespace kleene

#endif /* KLEENE_EQUIVALENCE_HH */
