/* equivalence.cc -- equivalence decision and bisimulation up to congruence */

#include "kleene/equivalence.hh"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "kleene/derivatives.hh"

namespace kleene {

namespace {

std::vector<Symbol> merged_letters(const RegExp& e, const RegExp& f)
{
    std::vector<Symbol> a = letters(e), b = letters(f), out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

struct IdPairHash {
    std::size_t operator()(const std::pair<std::size_t, std::size_t>& p) const
    {
        return p.first * 0x9e3779b97f4a7c15ULL ^ p.second;
    }
};

EquivResult explore(const RegExp& e, const RegExp& f, const std::vector<Symbol>& sigma)
{
    std::vector<RegExp> left, right;
    std::unordered_map<RegExp, std::size_t, RegExpHash> lid, rid;
    auto intern = [](std::vector<RegExp>& v, std::unordered_map<RegExp, std::size_t, RegExpHash>& ids,
                     const RegExp& x) {
        auto [it, fresh] = ids.emplace(x, v.size());
        if (fresh)
            v.push_back(x);
        return it->second;
    };

    constexpr std::size_t root = std::numeric_limits<std::size_t>::max();
    struct Entry {
        std::size_t l, r, parent, letter;
    };
    std::vector<Entry> entries;
    entries.push_back({intern(left, lid, norm(e, Level::SIMPLIFY)),
                       intern(right, rid, norm(f, Level::SIMPLIFY)), root, 0});
    std::deque<std::size_t> todo{0};
    std::unordered_set<std::pair<std::size_t, std::size_t>, IdPairHash> seen;
    std::vector<ExpPair> rel;

    while (!todo.empty()) {
        std::size_t id = todo.front();
        todo.pop_front();
        Entry cur = entries[id];
        if (!seen.emplace(cur.l, cur.r).second)
            continue;
        const RegExp x = left[cur.l];
        const RegExp y = right[cur.r];
        if (output(x) != output(y)) {
            Word w;
            for (std::size_t k = id; entries[k].parent != root; k = entries[k].parent)
                w.push_back(sigma[entries[k].letter]);
            return EquivResult::Inequivalent(Word(w.rbegin(), w.rend()));
        }
        rel.emplace_back(x, y);
        for (std::size_t a = 0; a < sigma.size(); ++a) {
            std::size_t nl = intern(left, lid, norm(derive(x, sigma[a]), Level::SIMPLIFY));
            std::size_t nr = intern(right, rid, norm(derive(y, sigma[a]), Level::SIMPLIFY));
            if (seen.count({nl, nr}))
                continue;
            entries.push_back({nl, nr, id, a});
            todo.push_back(entries.size() - 1);
        }
    }
    return EquivResult::Equivalent(std::move(rel));
}

}  // namespace

EquivResult decide_equiv(const RegExp& e, const RegExp& f)
{
    return explore(e, f, merged_letters(e, f));
}

EquivResult decide_equiv(const RegExp& e, const RegExp& f, const Alphabet& alphabet)
{
    for (const auto& a : merged_letters(e, f))
        if (!alphabet.contains(a))
            throw UndeclaredSymbol(a);
    return explore(e, f, alphabet.symbols());
}

EquivResult decide_leq(const RegExp& e, const RegExp& f)
{
    return decide_equiv(RegExp::sum(e, f), f);
}

EquivResult decide_leq(const RegExp& e, const RegExp& f, const Alphabet& alphabet)
{
    return decide_equiv(RegExp::sum(e, f), f, alphabet);
}

bool equivalent(const RegExp& e, const RegExp& f)
{
    return decide_equiv(e, f).equivalent;
}

// ---------------------------------------------------------------------------
// Up-to congruence closure
//
// Expressions are compared through a semiring normal form: a set of monomials, each
// monomial a sequence of letters and starred normal forms.  The identities used to
// reach it (associativity, commutativity and idempotence of +, associativity of
// product, distributivity, units and annihilators, 0* = 1* = 1 and (1 + e)* = e*)
// all hold in every Kleene algebra, so equal normal forms are related by the
// congruence generated by any candidate relation.

namespace {

using Mono = std::vector<RegExp>;
using Poly = std::set<Mono>;

constexpr std::size_t max_monomials = 2048;
constexpr std::size_t call_budget = 50000;

struct TooLarge {};

RegExp to_regexp(const Poly& p)
{
    std::vector<RegExp> terms;
    for (const auto& m : p)
        terms.push_back(prod_of(m));
    return sum_of(terms);
}

Poly poly(const RegExp& e)
{
    switch (e.op()) {
    case Op::Zero: return {};
    case Op::One: return {Mono{}};
    case Op::Letter: return {Mono{e}};
    case Op::Sum: {
        Poly l = poly(e.left());
        Poly r = poly(e.right());
        l.insert(r.begin(), r.end());
        if (l.size() > max_monomials)
            throw TooLarge{};
        return l;
    }
    case Op::Prod: {
        Poly l = poly(e.left());
        Poly r = poly(e.right());
        if (l.size() * r.size() > max_monomials)
            throw TooLarge{};
        Poly out;
        for (const auto& x : l) {
            for (const auto& y : r) {
                Mono m = x;
                m.insert(m.end(), y.begin(), y.end());
                out.insert(std::move(m));
            }
        }
        return out;
    }
    case Op::Star: {
        Poly in = poly(e.inner());
        in.erase(Mono{});
        if (in.empty())
            return {Mono{}};
        return {Mono{RegExp::star(to_regexp(in))}};
    }
    }
    return {};
}

class Closure {
public:
    Closure(const UptoCandidate& r, std::size_t max_depth) : max_depth_(max_depth)
    {
        for (const auto& [e, f] : r.pairs) {
            try {
                Poly a = poly(e), b = poly(f);
                rel_.insert({a, b});
                rel_.insert({b, a});
            } catch (const TooLarge&) {
                // an oversized pair can only be matched syntactically
            }
        }
    }

    bool closes(const RegExp& e, const RegExp& f)
    {
        calls_ = 0;
        try {
            return closes(poly(e), poly(f), max_depth_);
        } catch (const TooLarge&) {
            return false;
        }
    }

private:
    bool closes(const Poly& a, const Poly& b, std::size_t depth)
    {
        if (a == b || rel_.count({a, b}))
            return true;
        if (depth == 0 || ++calls_ > call_budget)
            return false;

        if (a.size() == 1 && b.size() == 1)
            return closes_mono(*a.begin(), *b.begin(), depth);

        // Cover argument: if every summand on either side is related to some summand on
        // the other, both sums equal the sum over the related pairs (by idempotence).
        if (a.empty() || b.empty() || a.size() * b.size() > 256)
            return false;
        std::vector<Mono> as(a.begin(), a.end()), bs(b.begin(), b.end());
        std::vector<bool> acov(as.size(), false), bcov(bs.size(), false);
        for (std::size_t i = 0; i < as.size(); ++i) {
            for (std::size_t j = 0; j < bs.size(); ++j) {
                if (acov[i] && bcov[j])
                    continue;
                if (closes(Poly{as[i]}, Poly{bs[j]}, depth - 1)) {
                    acov[i] = true;
                    bcov[j] = true;
                }
            }
        }
        return std::all_of(acov.begin(), acov.end(), [](bool x) { return x; }) &&
               std::all_of(bcov.begin(), bcov.end(), [](bool x) { return x; });
    }

    bool closes_mono(const Mono& x, const Mono& y, std::size_t depth)
    {
        if (x.size() != y.size())
            return false;
        if (x.size() == 1) {
            if (x[0].is(Op::Star) && y[0].is(Op::Star))
                return closes(poly(x[0].inner()), poly(y[0].inner()), depth - 1);
            return false;
        }
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!closes(Poly{Mono{x[i]}}, Poly{Mono{y[i]}}, depth - 1))
                return false;
        return true;
    }

    std::set<std::pair<Poly, Poly>> rel_;
    std::size_t max_depth_;
    std::size_t calls_ = 0;
};

}  // namespace

bool closes_upto(const RegExp& e, const RegExp& f, const UptoCandidate& r, std::size_t max_depth)
{
    return Closure(r, max_depth).closes(e, f);
}

std::vector<UptoVerdict> verify_upto(const UptoCandidate& r, const Alphabet& alphabet, const UptoOptions& opts)
{
    Closure closure(r, opts.max_depth);
    std::vector<UptoVerdict> out;
    bool all_verified = true;
    for (const auto& [e, f] : r.pairs) {
        UptoVerdict v;
        if (output(e) != output(f)) {
            v.kind = UptoVerdict::OutputMismatch;
        } else {
            for (const auto& a : alphabet.symbols()) {
                RegExp ea = derive(e, a), fa = derive(f, a);
                if (!closure.closes(ea, fa)) {
                    v.kind = UptoVerdict::Unknown;
                    v.open_pair = ExpPair{norm(ea, Level::SIMPLIFY), norm(fa, Level::SIMPLIFY)};
                    v.letter = a;
                    break;
                }
            }
        }
        all_verified = all_verified && v.kind == UptoVerdict::Verified;
        out.push_back(std::move(v));
    }
    if (all_verified && opts.cross_check) {
        for (const auto& [e, f] : r.pairs)
            if (!decide_equiv(e, f, alphabet).equivalent)
                throw std::logic_error("up-to closure accepted a pair of inequivalent expressions");
    }
    return out;
}

std::vector<UptoVerdict> verify_upto(const UptoCandidate& r, const UptoOptions& opts)
{
    std::set<Symbol> ls;
    for (const auto& [e, f] : r.pairs) {
        for (const auto& a : letters(e))
            ls.insert(a);
        for (const auto& a : letters(f))
            ls.insert(a);
    }
    if (ls.empty()) {
        // no letters: only outputs matter
        std::vector<UptoVerdict> out;
        for (const auto& [e, f] : r.pairs) {
            UptoVerdict v;
            if (output(e) != output(f))
                v.kind = UptoVerdict::OutputMismatch;
            out.push_back(v);
        }
        return out;
    }
    return verify_upto(r, Alphabet({ls.begin(), ls.end()}), opts);
}

}  // namespace kleene
