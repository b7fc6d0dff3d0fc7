/* kat.cc -- Kleene algebra with tests */

#include "kleene/kat.hh"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace kleene {

// ---------------------------------------------------------------------------
// Normal forms

namespace {

void collect_b(const BoolExp& b, BOp op, std::vector<BoolExp>& out)
{
    const BoolExp* cur = &b;
    while (cur->is(op)) {
        out.push_back(cur->left());
        cur = &cur->right();
    }
    out.push_back(*cur);
}

BoolExp chain(const std::vector<BoolExp>& xs, BOp op)
{
    BoolExp acc = xs.back();
    for (std::size_t i = xs.size() - 1; i-- > 0;)
        acc = op == BOp::BAnd ? BoolExp::conj(xs[i], acc) : BoolExp::disj(xs[i], acc);
    return acc;
}

BoolExp norm_junction(const BoolExp& l, const BoolExp& r, BOp op)
{
    // unit / absorbing element for op
    const BOp unit = op == BOp::BAnd ? BOp::BOne : BOp::BZero;
    const BOp absorb = op == BOp::BAnd ? BOp::BZero : BOp::BOne;
    std::vector<BoolExp> xs;
    collect_b(norm_bool(l), op, xs);
    collect_b(norm_bool(r), op, xs);
    std::vector<BoolExp> kept;
    for (auto& x : xs) {
        if (x.is(absorb))
            return x;
        if (!x.is(unit))
            kept.push_back(x);
    }
    if (kept.empty())
        return op == BOp::BAnd ? BoolExp::one() : BoolExp::zero();
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    for (const auto& x : kept) {
        if (x.is(BOp::BNot) && std::binary_search(kept.begin(), kept.end(), x.inner()))
            return op == BOp::BAnd ? BoolExp::zero() : BoolExp::one();
    }
    return kept.size() == 1 ? kept.front() : chain(kept, op);
}

void collect_k(const KatExp& e, std::vector<KatExp>& out)
{
    const KatExp* cur = &e;
    while (cur->is(KOp::KSum)) {
        out.push_back(cur->left());
        cur = &cur->right();
    }
    out.push_back(*cur);
}

}  // namespace

BoolExp norm_bool(const BoolExp& b)
{
    switch (b.op()) {
    case BOp::BZero:
    case BOp::BOne:
    case BOp::Prim:
        return b;
    case BOp::BNot: {
        BoolExp x = norm_bool(b.inner());
        if (x.is(BOp::BZero))
            return BoolExp::one();
        if (x.is(BOp::BOne))
            return BoolExp::zero();
        if (x.is(BOp::BNot))
            return x.inner();
        return BoolExp::neg(x);
    }
    case BOp::BAnd:
    case BOp::BOr:
        return norm_junction(b.left(), b.right(), b.op());
    }
    return b;
}

KatExp norm_kat(const KatExp& e, Level level)
{
    switch (e.op()) {
    case KOp::Test: {
        BoolExp b = norm_bool(e.guard());
        return b == e.guard() ? e : KatExp::test(b);
    }
    case KOp::Act:
        return e;
    case KOp::KStar:
        return KatExp::star(norm_kat(e.inner(), level));
    case KOp::KProd: {
        KatExp l = norm_kat(e.left(), level);
        KatExp r = norm_kat(e.right(), level);
        if (level == Level::SIMPLIFY) {
            if (l.is_zero())
                return l;
            if (l.is_one())
                return r;
        }
        return KatExp::prod(l, r);
    }
    case KOp::KSum: {
        std::vector<KatExp> xs;
        collect_k(norm_kat(e.left(), level), xs);
        collect_k(norm_kat(e.right(), level), xs);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        if (level == Level::SIMPLIFY) {
            xs.erase(std::remove_if(xs.begin(), xs.end(), [](const KatExp& x) { return x.is_zero(); }),
                     xs.end());
            if (xs.empty())
                return KatExp::zero();
        }
        KatExp acc = xs.back();
        for (std::size_t i = xs.size() - 1; i-- > 0;)
            acc = KatExp::sum(xs[i], acc);
        return acc;
    }
    }
    return e;
}

// ---------------------------------------------------------------------------
// Derivatives

bool kat_E_contains(const KatExp& e, Atom alpha, const KatSignature& sig)
{
    switch (e.op()) {
    case KOp::Test: return atom_sat(e.guard(), alpha, sig.tests);
    case KOp::Act: return false;
    case KOp::KSum: return kat_E_contains(e.left(), alpha, sig) || kat_E_contains(e.right(), alpha, sig);
    case KOp::KProd: return kat_E_contains(e.left(), alpha, sig) && kat_E_contains(e.right(), alpha, sig);
    case KOp::KStar: return true;
    }
    return false;
}

AtomSet kat_E(const KatExp& e, const KatSignature& sig)
{
    std::vector<Atom> at = atoms(sig.tests);
    AtomSet out(at.size(), false);
    for (Atom a : at)
        out[a] = kat_E_contains(e, a, sig);
    return out;
}

KatExp kat_D(const KatExp& e, Atom alpha, const Symbol& p, const KatSignature& sig)
{
    switch (e.op()) {
    case KOp::Test:
        return KatExp::zero();
    case KOp::Act:
        return e.symbol() == p ? KatExp::one() : KatExp::zero();
    case KOp::KSum:
        return KatExp::sum(kat_D(e.left(), alpha, p, sig), kat_D(e.right(), alpha, p, sig));
    case KOp::KProd: {
        KatExp first = KatExp::prod(kat_D(e.left(), alpha, p, sig), e.right());
        if (!kat_E_contains(e.left(), alpha, sig))
            return first;
        return KatExp::sum(first, kat_D(e.right(), alpha, p, sig));
    }
    case KOp::KStar:
        return KatExp::prod(kat_D(e.inner(), alpha, p, sig), e);
    }
    return KatExp::zero();
}

// ---------------------------------------------------------------------------
// Automata

namespace {

void check_signature(const KatSignature& sig)
{
    if (sig.tests.size() > default_max_tests)
        throw TooManyTests(sig.tests.size(), default_max_tests);
    for (const auto& p : sig.actions)
        if (sig.is_test(p))
            throw std::invalid_argument("identifier '" + p + "' declared both as action and test");
}

}  // namespace

KatBuildResult kat_build(const KatExp& e, const KatSignature& sig, std::size_t budget)
{
    check_signature(sig);
    std::vector<Atom> at = atoms(sig.tests);
    KatDfa d;
    d.sig = sig;
    d.labels.emplace();
    std::unordered_map<KatExp, State, KatExpHash> index;
    std::deque<State> todo;

    auto intern = [&](const KatExp& x) -> State {
        auto it = index.find(x);
        if (it != index.end())
            return it->second;
        if (d.size() >= budget)
            throw BudgetExceeded(budget);
        State s = d.size();
        d.names.push_back("q" + std::to_string(s));
        d.output.push_back(kat_E(x, sig));
        d.trans.emplace_back(at.size() * sig.actions.size(), 0);
        d.labels->push_back(x);
        index.emplace(x, s);
        todo.push_back(s);
        return s;
    };

    State init = intern(norm_kat(e, Level::SIMPLIFY));
    while (!todo.empty()) {
        State s = todo.front();
        todo.pop_front();
        for (Atom a : at) {
            for (std::size_t p = 0; p < sig.actions.size(); ++p) {
                KatExp label = (*d.labels)[s];
                d.trans[s][a * sig.actions.size() + p] =
                    intern(norm_kat(kat_D(label, a, sig.actions[p], sig), Level::SIMPLIFY));
            }
        }
    }
    return {std::move(d), init};
}

bool kat_eval(const KatDfa& d, State s, const GuardedString& g)
{
    for (std::size_t i = 0; i < g.actions.size(); ++i)
        s = d.next(s, g.atoms.at(i), d.sig.action_index(g.actions[i]));
    return d.output.at(s).at(g.atoms.back());
}

namespace {

struct IdPairHash {
    std::size_t operator()(const std::pair<std::size_t, std::size_t>& p) const
    {
        return p.first * 0x9e3779b97f4a7c15ULL ^ p.second;
    }
};

}  // namespace

KatEquivResult kat_decide_equiv(const KatExp& e, const KatExp& f, const KatSignature& sig, std::size_t budget)
{
    check_signature(sig);
    std::vector<Atom> at = atoms(sig.tests);
    const std::size_t np = sig.actions.size();

    std::vector<KatExp> left, right;
    std::vector<AtomSet> lout, rout;
    std::unordered_map<KatExp, std::size_t, KatExpHash> lid, rid;
    auto intern = [&](std::vector<KatExp>& v, std::vector<AtomSet>& outs,
                      std::unordered_map<KatExp, std::size_t, KatExpHash>& ids, const KatExp& x) {
        auto [it, fresh] = ids.emplace(x, v.size());
        if (fresh) {
            if (v.size() >= budget)
                throw BudgetExceeded(budget);
            v.push_back(x);
            outs.push_back(kat_E(x, sig));
        }
        return it->second;
    };

    constexpr std::size_t root = std::numeric_limits<std::size_t>::max();
    struct Entry {
        std::size_t l, r, parent, atom, action;
    };
    std::vector<Entry> entries;
    entries.push_back({intern(left, lout, lid, norm_kat(e, Level::SIMPLIFY)),
                       intern(right, rout, rid, norm_kat(f, Level::SIMPLIFY)), root, 0, 0});
    std::deque<std::size_t> todo{0};
    std::unordered_set<std::pair<std::size_t, std::size_t>, IdPairHash> seen;
    KatEquivResult res;

    while (!todo.empty()) {
        std::size_t id = todo.front();
        todo.pop_front();
        Entry cur = entries[id];
        if (!seen.emplace(cur.l, cur.r).second)
            continue;
        if (lout[cur.l] != rout[cur.r]) {
            Atom last = 0;
            for (Atom a : at) {
                if (lout[cur.l][a] != rout[cur.r][a]) {
                    last = a;
                    break;
                }
            }
            std::vector<Atom> as{last};
            std::vector<Symbol> ps;
            for (std::size_t k = id; entries[k].parent != root; k = entries[k].parent) {
                as.push_back(static_cast<Atom>(entries[k].atom));
                ps.push_back(sig.actions[entries[k].action]);
            }
            res.witness.atoms.assign(as.rbegin(), as.rend());
            res.witness.actions.assign(ps.rbegin(), ps.rend());
            res.equivalent = false;
            res.relation.clear();
            return res;
        }
        res.relation.emplace_back(left[cur.l], right[cur.r]);
        for (Atom a : at) {
            for (std::size_t p = 0; p < np; ++p) {
                const KatExp x = left[cur.l];
                const KatExp y = right[cur.r];
                std::size_t nl = intern(left, lout, lid, norm_kat(kat_D(x, a, sig.actions[p], sig), Level::SIMPLIFY));
                std::size_t nr = intern(right, rout, rid, norm_kat(kat_D(y, a, sig.actions[p], sig), Level::SIMPLIFY));
                if (seen.count({nl, nr}))
                    continue;
                entries.push_back({nl, nr, id, a, p});
                todo.push_back(entries.size() - 1);
            }
        }
    }
    res.equivalent = true;
    return res;
}

KatEquivResult kat_decide_leq(const KatExp& e, const KatExp& f, const KatSignature& sig)
{
    return kat_decide_equiv(KatExp::sum(e, f), f, sig);
}

// ---------------------------------------------------------------------------
// Programs

KatExp while_(const BoolExp& b, const KatExp& e)
{
    return KatExp::prod(KatExp::star(KatExp::prod(KatExp::test(b), e)), KatExp::test(BoolExp::neg(b)));
}

KatExp ite(const BoolExp& b, const KatExp& e, const KatExp& f)
{
    return KatExp::sum(KatExp::prod(KatExp::test(b), e), KatExp::prod(KatExp::test(BoolExp::neg(b)), f));
}

KatExp its(const BoolExp& b, const KatExp& e)
{
    return KatExp::sum(KatExp::prod(KatExp::test(b), e), KatExp::test(BoolExp::neg(b)));
}

bool hoare_check(const HoareTriple& t, const KatSignature& sig)
{
    KatExp lhs = KatExp::prod(KatExp::test(t.pre), KatExp::prod(t.prog, KatExp::test(BoolExp::neg(t.post))));
    return kat_decide_equiv(lhs, KatExp::zero(), sig).equivalent;
}

bool hoare_check_leq(const HoareTriple& t, const KatSignature& sig)
{
    KatExp be = KatExp::prod(KatExp::test(t.pre), t.prog);
    KatExp ec = KatExp::prod(t.prog, KatExp::test(t.post));
    return kat_decide_leq(be, ec, sig).equivalent;
}

bool hoare_check_eq(const HoareTriple& t, const KatSignature& sig)
{
    KatExp be = KatExp::prod(KatExp::test(t.pre), t.prog);
    KatExp bec = KatExp::prod(be, KatExp::test(t.post));
    return kat_decide_equiv(be, bec, sig).equivalent;
}

KatExp atom_exp(Atom alpha, const KatSignature& sig)
{
    if (sig.tests.empty())
        return KatExp::one();
    std::vector<KatExp> lits;
    for (std::size_t i = 0; i < sig.tests.size(); ++i) {
        BoolExp t = BoolExp::prim(sig.tests[i]);
        lits.push_back(KatExp::test(atom_has(alpha, i, sig.tests.size()) ? t : BoolExp::neg(t)));
    }
    KatExp acc = lits.front();
    for (std::size_t i = 1; i < lits.size(); ++i)
        acc = KatExp::prod(acc, lits[i]);
    return acc;
}

KatExp expand_tests(const BoolExp& b, const KatSignature& sig)
{
    std::vector<KatExp> terms;
    for (Atom a : atoms(sig.tests))
        if (atom_sat(b, a, sig.tests))
            terms.push_back(atom_exp(a, sig));
    if (terms.empty())
        return KatExp::zero();
    std::sort(terms.begin(), terms.end());
    KatExp acc = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i)
        acc = KatExp::sum(acc, terms[i]);
    return acc;
}

std::string export_json(const KatDfa& d)
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["actions"] = d.sig.actions;
    j["tests"] = d.sig.tests;
    j["states"] = d.names;
    ordered_json out = ordered_json::object();
    for (State s = 0; s < d.size(); ++s) {
        ordered_json as = ordered_json::array();
        for (Atom a = 0; a < d.output[s].size(); ++a)
            if (d.output[s][a])
                as.push_back(render_atom(a, d.sig.tests));
        out[d.names[s]] = as;
    }
    j["output"] = out;
    ordered_json tr = ordered_json::array();
    for (State s = 0; s < d.size(); ++s) {
        for (Atom a = 0; a < atom_count(d.sig.tests); ++a) {
            for (std::size_t p = 0; p < d.sig.actions.size(); ++p) {
                ordered_json t;
                t["from"] = d.names[s];
                t["atom"] = render_atom(a, d.sig.tests);
                t["action"] = d.sig.actions[p];
                t["to"] = d.names[d.next(s, a, p)];
                tr.push_back(std::move(t));
            }
        }
    }
    j["transitions"] = tr;
    return j.dump(2) + "\n";
}

}  // namespace kleene
