/* oracle.cc -- bounded denotational semantics */

#include "kleene/oracle.hh"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace kleene {

BoundedLang BoundedLang::truncate(std::size_t n) const
{
    BoundedLang out;
    out.max_len = std::min(n, max_len);
    for (const auto& w : words)
        if (w.size() <= n)
            out.words.insert(w);
    return out;
}

namespace {

using WordSet = std::set<Word>;

WordSet concat(const WordSet& l, const WordSet& r, std::size_t n)
{
    WordSet out;
    for (const auto& x : l) {
        for (const auto& y : r) {
            if (x.size() + y.size() > n)
                continue;
            Word w = x;
            w.insert(w.end(), y.begin(), y.end());
            out.insert(std::move(w));
        }
    }
    return out;
}

WordSet lang(const RegExp& e, std::size_t n)
{
    switch (e.op()) {
    case Op::Zero: return {};
    case Op::One: return {Word{}};
    case Op::Letter:
        if (n == 0)
            return {};
        return {Word{e.symbol()}};
    case Op::Sum: {
        WordSet l = lang(e.left(), n);
        WordSet r = lang(e.right(), n);
        l.insert(r.begin(), r.end());
        return l;
    }
    case Op::Prod:
        return concat(lang(e.left(), n), lang(e.right(), n), n);
    case Op::Star: {
        WordSet base = lang(e.inner(), n);
        WordSet acc{Word{}};
        for (;;) {
            WordSet next = concat(base, acc, n);
            next.insert(Word{});
            if (next == acc)
                return acc;
            acc = std::move(next);
        }
    }
    }
    return {};
}

}  // namespace

BoundedLang lang_upto(const RegExp& e, std::size_t n)
{
    return BoundedLang{n, lang(e, n)};
}

std::string render_word(const Word& w)
{
    if (w.empty())
        return "ε";
    bool single = std::all_of(w.begin(), w.end(), [](const Symbol& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && !single)
            out += ' ';
        out += w[i];
    }
    return out;
}

std::vector<std::string> render_words(const BoundedLang& l)
{
    std::vector<Word> ws(l.words.begin(), l.words.end());
    std::stable_sort(ws.begin(), ws.end(),
                     [](const Word& a, const Word& b) { return a.size() < b.size(); });
    std::vector<std::string> out;
    out.reserve(ws.size());
    for (const auto& w : ws)
        out.push_back(render_word(w));
    return out;
}

// ---------------------------------------------------------------------------
// Atoms

std::size_t atom_count(const std::vector<Symbol>& tests)
{
    return std::size_t{1} << tests.size();
}

std::vector<Atom> atoms(const std::vector<Symbol>& tests, std::size_t max_tests)
{
    if (tests.size() > max_tests)
        throw TooManyTests(tests.size(), max_tests);
    std::vector<Atom> out(atom_count(tests));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<Atom>(i);
    return out;
}

bool atom_has(Atom alpha, std::size_t test_index, std::size_t test_count)
{
    return (alpha >> (test_count - 1 - test_index)) & 1U;
}

Atom atom_of(const std::set<Symbol>& trueset, const std::vector<Symbol>& tests)
{
    Atom a = 0;
    for (const auto& t : trueset) {
        auto it = std::find(tests.begin(), tests.end(), t);
        if (it == tests.end())
            throw UndeclaredSymbol(t);
        a |= Atom{1} << (tests.size() - 1 - static_cast<std::size_t>(it - tests.begin()));
    }
    return a;
}

std::set<Symbol> trueset(Atom alpha, const std::vector<Symbol>& tests)
{
    std::set<Symbol> out;
    for (std::size_t i = 0; i < tests.size(); ++i)
        if (atom_has(alpha, i, tests.size()))
            out.insert(tests[i]);
    return out;
}

bool atom_sat(const BoolExp& b, Atom alpha, const std::vector<Symbol>& tests)
{
    switch (b.op()) {
    case BOp::BZero: return false;
    case BOp::BOne: return true;
    case BOp::Prim: {
        auto it = std::find(tests.begin(), tests.end(), b.symbol());
        if (it == tests.end())
            throw UndeclaredSymbol(b.symbol());
        return atom_has(alpha, static_cast<std::size_t>(it - tests.begin()), tests.size());
    }
    case BOp::BAnd: return atom_sat(b.left(), alpha, tests) && atom_sat(b.right(), alpha, tests);
    case BOp::BOr: return atom_sat(b.left(), alpha, tests) || atom_sat(b.right(), alpha, tests);
    case BOp::BNot: return !atom_sat(b.inner(), alpha, tests);
    }
    return false;
}

std::string render_atom(Atom alpha, const std::vector<Symbol>& tests)
{
    if (tests.empty())
        return "⊤";
    bool single = std::all_of(tests.begin(), tests.end(), [](const Symbol& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < tests.size(); ++i) {
        if (i && !single)
            out += ' ';
        if (!atom_has(alpha, i, tests.size()))
            out += '!';
        out += tests[i];
    }
    return out;
}

std::string render_guarded(const GuardedString& g, const std::vector<Symbol>& tests)
{
    std::string out = render_atom(g.atoms.at(0), tests);
    for (std::size_t i = 0; i < g.actions.size(); ++i) {
        out += " . " + g.actions[i] + " . ";
        out += render_atom(g.atoms.at(i + 1), tests);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Guarded-string languages

namespace {

using GSet = std::set<GuardedString>;

GSet fuse(const GSet& l, const GSet& r, std::size_t n)
{
    std::map<Atom, std::vector<const GuardedString*>> by_first;
    for (const auto& y : r)
        by_first[y.atoms.front()].push_back(&y);
    GSet out;
    for (const auto& x : l) {
        auto it = by_first.find(x.atoms.back());
        if (it == by_first.end())
            continue;
        for (const GuardedString* y : it->second) {
            if (x.length() + y->length() > n)
                continue;
            GuardedString g = x;
            g.atoms.insert(g.atoms.end(), y->atoms.begin() + 1, y->atoms.end());
            g.actions.insert(g.actions.end(), y->actions.begin(), y->actions.end());
            out.insert(std::move(g));
        }
    }
    return out;
}

GSet glang(const KatExp& e, const KatSignature& sig, const std::vector<Atom>& at, std::size_t n)
{
    switch (e.op()) {
    case KOp::Test: {
        GSet out;
        for (Atom a : at)
            if (atom_sat(e.guard(), a, sig.tests))
                out.insert(GuardedString{{a}, {}});
        return out;
    }
    case KOp::Act: {
        GSet out;
        if (n == 0)
            return out;
        for (Atom a : at)
            for (Atom b : at)
                out.insert(GuardedString{{a, b}, {e.symbol()}});
        return out;
    }
    case KOp::KSum: {
        GSet l = glang(e.left(), sig, at, n);
        GSet r = glang(e.right(), sig, at, n);
        l.insert(r.begin(), r.end());
        return l;
    }
    case KOp::KProd:
        return fuse(glang(e.left(), sig, at, n), glang(e.right(), sig, at, n), n);
    case KOp::KStar: {
        GSet base = glang(e.inner(), sig, at, n);
        GSet unit;
        for (Atom a : at)
            unit.insert(GuardedString{{a}, {}});
        GSet acc = unit;
        for (;;) {
            GSet next = fuse(base, acc, n);
            next.insert(unit.begin(), unit.end());
            if (next == acc)
                return acc;
            acc = std::move(next);
        }
    }
    }
    return {};
}

}  // namespace

std::set<GuardedString> glang_upto(const KatExp& e, const KatSignature& sig, std::size_t n)
{
    return glang(e, sig, atoms(sig.tests), n);
}

// ---------------------------------------------------------------------------
// Relational semantics

namespace {

using Matrix = std::vector<std::vector<char>>;

Matrix identity(std::size_t n)
{
    Matrix m(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

Matrix from_relation(const Relation& r, std::size_t n)
{
    Matrix m(n, std::vector<char>(n, 0));
    for (auto [s, t] : r) {
        if (s >= n || t >= n)
            throw std::out_of_range("relation pair outside the state space");
        m[s][t] = 1;
    }
    return m;
}

Matrix join(Matrix a, const Matrix& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            a[i][j] = a[i][j] || b[i][j];
    return a;
}

Matrix compose(const Matrix& a, const Matrix& b)
{
    std::size_t n = a.size();
    Matrix m(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (b[k][j])
                        m[i][j] = 1;
    return m;
}

Matrix closure(Matrix m)
{
    std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (m[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (m[k][j])
                        m[i][j] = 1;
    return m;
}

Relation to_relation(const Matrix& m)
{
    Relation r;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m[i][j])
                r.emplace(i, j);
    return r;
}

const Relation& action_of(const RelInterp& interp, const Symbol& a)
{
    auto it = interp.action_rel.find(a);
    if (it == interp.action_rel.end())
        throw std::invalid_argument("interpretation does not define '" + a + "'");
    return it->second;
}

Matrix rel(const RegExp& e, const RelInterp& interp)
{
    std::size_t n = interp.state_count;
    switch (e.op()) {
    case Op::Zero: return Matrix(n, std::vector<char>(n, 0));
    case Op::One: return identity(n);
    case Op::Letter: return from_relation(action_of(interp, e.symbol()), n);
    case Op::Sum: return join(rel(e.left(), interp), rel(e.right(), interp));
    case Op::Prod: return compose(rel(e.left(), interp), rel(e.right(), interp));
    case Op::Star: return closure(rel(e.inner(), interp));
    }
    return {};
}

bool holds(const BoolExp& b, std::size_t s, const RelInterp& interp)
{
    switch (b.op()) {
    case BOp::BZero: return false;
    case BOp::BOne: return true;
    case BOp::Prim: {
        auto it = interp.test_sat.find(b.symbol());
        if (it == interp.test_sat.end())
            throw std::invalid_argument("interpretation does not define test '" + b.symbol() + "'");
        return it->second.count(s) != 0;
    }
    case BOp::BAnd: return holds(b.left(), s, interp) && holds(b.right(), s, interp);
    case BOp::BOr: return holds(b.left(), s, interp) || holds(b.right(), s, interp);
    case BOp::BNot: return !holds(b.inner(), s, interp);
    }
    return false;
}

Matrix krel(const KatExp& e, const RelInterp& interp)
{
    std::size_t n = interp.state_count;
    switch (e.op()) {
    case KOp::Test: {
        Matrix m(n, std::vector<char>(n, 0));
        for (std::size_t s = 0; s < n; ++s)
            m[s][s] = holds(e.guard(), s, interp);
        return m;
    }
    case KOp::Act: return from_relation(action_of(interp, e.symbol()), n);
    case KOp::KSum: return join(krel(e.left(), interp), krel(e.right(), interp));
    case KOp::KProd: return compose(krel(e.left(), interp), krel(e.right(), interp));
    case KOp::KStar: return closure(krel(e.inner(), interp));
    }
    return {};
}

}  // namespace

Relation rel_sem(const RegExp& e, const RelInterp& interp)
{
    return to_relation(rel(e, interp));
}

Relation rel_sem(const KatExp& e, const RelInterp& interp)
{
    return to_relation(krel(e, interp));
}

RelInterp sharp_interp(const Alphabet& alphabet, std::size_t max_len, std::vector<Word>* words_out)
{
    std::vector<Word> words{Word{}};
    for (std::size_t begin = 0, len = 0; len < max_len; ++len) {
        std::size_t end = words.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (const auto& a : alphabet.symbols()) {
                Word w = words[i];
                w.push_back(a);
                words.push_back(std::move(w));
            }
        }
        begin = end;
    }
    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < words.size(); ++i)
        index[words[i]] = i;

    RelInterp interp;
    interp.state_count = words.size();
    for (const auto& a : alphabet.symbols()) {
        Relation& r = interp.action_rel[a];
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (words[i].size() >= max_len)
                continue;
            Word w = words[i];
            w.push_back(a);
            r.emplace(i, index.at(w));
        }
    }
    if (words_out)
        *words_out = std::move(words);
    return interp;
}

}  // namespace kleene
