/* support.hh -- shared helpers for the test suites: generators, reference matchers */

#ifndef KLEENE_TESTS_SUPPORT_HH
#define KLEENE_TESTS_SUPPORT_HH

#include <random>
#include <set>
#include <string>
#include <vector>

#include "kleene/oracle.hh"
#include "kleene/syntax.hh"

namespace testing {

using namespace kleene;

// ---------------------------------------------------------------------------
// Random expressions.  size counts AST nodes.

inline RegExp random_regex(std::mt19937& rng, std::size_t size, const std::vector<Symbol>& sigma = {"a", "b"})
{
    std::uniform_int_distribution<int> pick(0, 9);
    if (size <= 1) {
        int k = pick(rng);
        if (k == 0)
            return RegExp::zero();
        if (k == 1)
            return RegExp::one();
        return RegExp::letter(sigma[k % sigma.size()]);
    }
    if (size == 2 || pick(rng) < 2)
        return RegExp::star(random_regex(rng, size - 1, sigma));
    std::uniform_int_distribution<std::size_t> split(1, size - 2);
    std::size_t l = split(rng);
    RegExp a = random_regex(rng, l, sigma), b = random_regex(rng, size - 1 - l, sigma);
    return pick(rng) < 5 ? RegExp::sum(a, b) : RegExp::prod(a, b);
}

/// A random expression whose size is drawn uniformly from [1, max_size].
inline RegExp random_regex_upto(std::mt19937& rng, std::size_t max_size, const std::vector<Symbol>& sigma = {"a", "b"})
{
    std::uniform_int_distribution<std::size_t> n(1, max_size);
    return random_regex(rng, n(rng), sigma);
}

inline BoolExp random_bool(std::mt19937& rng, std::size_t size, const std::vector<Symbol>& tests)
{
    std::uniform_int_distribution<int> pick(0, 9);
    if (size <= 1) {
        int k = pick(rng);
        if (k == 0)
            return BoolExp::zero();
        if (k == 1)
            return BoolExp::one();
        return BoolExp::prim(tests[k % tests.size()]);
    }
    if (size == 2 || pick(rng) < 3)
        return BoolExp::neg(random_bool(rng, size - 1, tests));
    std::uniform_int_distribution<std::size_t> split(1, size - 2);
    std::size_t l = split(rng);
    BoolExp a = random_bool(rng, l, tests), b = random_bool(rng, size - 1 - l, tests);
    return pick(rng) < 5 ? BoolExp::conj(a, b) : BoolExp::disj(a, b);
}

inline KatExp random_kat(std::mt19937& rng, std::size_t size, const KatSignature& sig)
{
    std::uniform_int_distribution<int> pick(0, 9);
    if (size <= 1) {
        if (pick(rng) < 4)
            return KatExp::test(random_bool(rng, 1 + pick(rng) % 3, sig.tests));
        return KatExp::act(sig.actions[pick(rng) % sig.actions.size()]);
    }
    if (size == 2 || pick(rng) < 2)
        return KatExp::star(random_kat(rng, size - 1, sig));
    std::uniform_int_distribution<std::size_t> split(1, size - 2);
    std::size_t l = split(rng);
    KatExp a = random_kat(rng, l, sig), b = random_kat(rng, size - 1 - l, sig);
    return pick(rng) < 5 ? KatExp::sum(a, b) : KatExp::prod(a, b);
}

// ---------------------------------------------------------------------------
// Reference matcher: positions reachable after reading a prefix of w.

inline std::set<std::size_t> ends(const RegExp& e, const Word& w, const std::set<std::size_t>& from)
{
    std::set<std::size_t> out;
    switch (e.op()) {
    case Op::Zero:
        break;
    case Op::One:
        out = from;
        break;
    case Op::Letter:
        for (auto i : from)
            if (i < w.size() && w[i] == e.symbol())
                out.insert(i + 1);
        break;
    case Op::Sum:
        out = ends(e.left(), w, from);
        for (auto i : ends(e.right(), w, from))
            out.insert(i);
        break;
    case Op::Prod:
        out = ends(e.right(), w, ends(e.left(), w, from));
        break;
    case Op::Star: {
        out = from;
        std::set<std::size_t> frontier = from;
        while (!frontier.empty()) {
            std::set<std::size_t> next;
            for (auto i : ends(e.inner(), w, frontier))
                if (out.insert(i).second)
                    next.insert(i);
            frontier = std::move(next);
        }
        break;
    }
    }
    return out;
}

inline bool matches(const RegExp& e, const Word& w)
{
    return ends(e, w, {0}).count(w.size()) != 0;
}

/// All words over sigma of length at most n, shortest first.
inline std::vector<Word> all_words(const std::vector<Symbol>& sigma, std::size_t n)
{
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= n; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (const auto& a : sigma) {
                Word w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        }
        begin = end;
    }
    return out;
}

inline bool agree_upto(const RegExp& e, const RegExp& f, const std::vector<Symbol>& sigma, std::size_t n)
{
    for (const auto& w : all_words(sigma, n))
        if (matches(e, w) != matches(f, w))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Reference guarded-string acceptance.  Test i is true in atom alpha iff bit
// (|T| - 1 - i) is set.

inline bool holds(const BoolExp& b, Atom alpha, const std::vector<Symbol>& tests)
{
    switch (b.op()) {
    case BOp::BZero: return false;
    case BOp::BOne: return true;
    case BOp::Prim: {
        std::size_t i = 0;
        while (tests[i] != b.symbol())
            ++i;
        return (alpha >> (tests.size() - 1 - i)) & 1u;
    }
    case BOp::BAnd: return holds(b.left(), alpha, tests) && holds(b.right(), alpha, tests);
    case BOp::BOr: return holds(b.left(), alpha, tests) || holds(b.right(), alpha, tests);
    case BOp::BNot: return !holds(b.inner(), alpha, tests);
    }
    return false;
}

inline std::set<std::size_t> gends(const KatExp& e, const GuardedString& g, const std::vector<Symbol>& tests,
                                   const std::set<std::size_t>& from)
{
    std::set<std::size_t> out;
    switch (e.op()) {
    case KOp::Test:
        for (auto i : from)
            if (holds(e.guard(), g.atoms[i], tests))
                out.insert(i);
        break;
    case KOp::Act:
        for (auto i : from)
            if (i < g.actions.size() && g.actions[i] == e.symbol())
                out.insert(i + 1);
        break;
    case KOp::KSum:
        out = gends(e.left(), g, tests, from);
        for (auto i : gends(e.right(), g, tests, from))
            out.insert(i);
        break;
    case KOp::KProd:
        out = gends(e.right(), g, tests, gends(e.left(), g, tests, from));
        break;
    case KOp::KStar: {
        out = from;
        std::set<std::size_t> frontier = from;
        while (!frontier.empty()) {
            std::set<std::size_t> next;
            for (auto i : gends(e.inner(), g, tests, frontier))
                if (out.insert(i).second)
                    next.insert(i);
            frontier = std::move(next);
        }
        break;
    }
    }
    return out;
}

inline bool gmatches(const KatExp& e, const GuardedString& g, const std::vector<Symbol>& tests)
{
    return gends(e, g, tests, {0}).count(g.actions.size()) != 0;
}

/// Every guarded string with at most n actions.
inline std::vector<GuardedString> all_guarded(const KatSignature& sig, std::size_t n)
{
    Atom count = Atom(1) << sig.tests.size();
    std::vector<GuardedString> out;
    for (Atom a = 0; a < count; ++a)
        out.push_back({{a}, {}});
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= n; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (const auto& p : sig.actions) {
                for (Atom a = 0; a < count; ++a) {
                    GuardedString g = out[i];
                    g.actions.push_back(p);
                    g.atoms.push_back(a);
                    out.push_back(std::move(g));
                }
            }
        }
        begin = end;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structural comparison with product chains flattened, so that x(yz) and (xy)z
// are identified.  Nothing else is identified.

struct Flat {
    Op op;
    Symbol sym;
    std::vector<Flat> kids;
    friend bool operator==(const Flat&, const Flat&) = default;
};

inline Flat flatten(const RegExp& e)
{
    Flat f{e.op(), {}, {}};
    switch (e.op()) {
    case Op::Zero:
    case Op::One:
        break;
    case Op::Letter:
        f.sym = e.symbol();
        break;
    case Op::Sum:
        f.kids = {flatten(e.left()), flatten(e.right())};
        break;
    case Op::Star:
        f.kids = {flatten(e.inner())};
        break;
    case Op::Prod:
        for (const RegExp* side : {&e.left(), &e.right()}) {
            Flat k = flatten(*side);
            if (k.op == Op::Prod)
                f.kids.insert(f.kids.end(), k.kids.begin(), k.kids.end());
            else
                f.kids.push_back(std::move(k));
        }
        break;
    }
    return f;
}

inline bool same_modulo_assoc(const RegExp& e, const RegExp& f)
{
    return flatten(e) == flatten(f);
}

}  // namespace testing

#endif /* KLEENE_TESTS_SUPPORT_HH */
