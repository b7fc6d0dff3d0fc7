/* derivatives.hh -- Brzozowski derivatives and the ACI / SIMPLIFY normal forms */

#ifndef KLEENE_DERIVATIVES_HH
#define KLEENE_DERIVATIVES_HH

#include "kleene/syntax.hh"

namespace kleene {

enum class Level { ACI, SIMPLIFY };

/// A canonical representative of an expression's congruence class.
struct NormalForm {
    RegExp expr;
    Level level;

    friend bool operator==(const NormalForm& a, const NormalForm& b)
    {
        return a.level == b.level && a.expr == b.expr;
    }
};

bool output(const RegExp& e);
RegExp derive(const RegExp& e, const Symbol& a);
RegExp word_derive(const RegExp& e, const Word& w);

NormalForm normalize(const RegExp& e, Level level);
/// Shorthand for normalize(e, level).expr.
RegExp norm(const RegExp& e, Level level);

/// o(e) + a1 e_a1 + ... + an e_an over the alphabet order, as a right-nested sum.
RegExp fundamental_expansion(const RegExp& e, const Alphabet& alphabet);

}  // namespace kleene

#endif /* KLEENE_DERIVATIVES_HH */
