/* derivatives.cc -- Brzozowski derivatives and normal forms */

#include "kleene/derivatives.hh"

#include <algorithm>
#include <unordered_map>

namespace kleene {

bool output(const RegExp& e)
{
    return e.nullable();
}

RegExp derive(const RegExp& e, const Symbol& a)
{
    switch (e.op()) {
    case Op::Zero:
    case Op::One:
        return RegExp::zero();
    case Op::Letter:
        return e.symbol() == a ? RegExp::one() : RegExp::zero();
    case Op::Sum:
        return RegExp::sum(derive(e.left(), a), derive(e.right(), a));
    case Op::Prod: {
        RegExp first = RegExp::prod(derive(e.left(), a), e.right());
        if (!output(e.left()))
            return first;
        return RegExp::sum(first, derive(e.right(), a));
    }
    case Op::Star:
        return RegExp::prod(derive(e.inner(), a), e);
    }
    return RegExp::zero();
}

RegExp word_derive(const RegExp& e, const Word& w)
{
    RegExp cur = e;
    for (const auto& a : w)
        cur = derive(cur, a);
    return cur;
}

namespace {

constexpr std::size_t cache_limit = 1 << 18;

using Cache = std::unordered_map<RegExp, RegExp, RegExpHash>;

void collect_sum(const RegExp& e, std::vector<RegExp>& out)
{
    // e is normalized, so its sums form a right-leaning chain
    const RegExp* cur = &e;
    while (cur->is(Op::Sum)) {
        out.push_back(cur->left());
        cur = &cur->right();
    }
    out.push_back(*cur);
}

class Normalizer {
public:
    explicit Normalizer(Level level) : level_(level) {}

    RegExp run(const RegExp& e)
    {
        switch (e.op()) {
        case Op::Zero:
        case Op::One:
        case Op::Letter:
            return e;
        default:
            break;
        }
        Cache& cache = level_ == Level::ACI ? aci_cache() : simp_cache();
        if (auto it = cache.find(e); it != cache.end())
            return it->second;
        RegExp r = step(e);
        if (cache.size() > cache_limit)
            cache.clear();
        cache.emplace(e, r);
        return r;
    }

private:
    static Cache& aci_cache()
    {
        thread_local Cache c;
        return c;
    }
    static Cache& simp_cache()
    {
        thread_local Cache c;
        return c;
    }

    RegExp step(const RegExp& e)
    {
        switch (e.op()) {
        case Op::Star: {
            RegExp in = run(e.inner());
            return in == e.inner() ? e : RegExp::star(in);
        }
        case Op::Prod: {
            RegExp l = run(e.left());
            RegExp r = run(e.right());
            if (level_ == Level::SIMPLIFY) {
                if (l.is(Op::Zero))
                    return l;
                if (l.is(Op::One))
                    return r;
            }
            if (l == e.left() && r == e.right())
                return e;
            return RegExp::prod(l, r);
        }
        case Op::Sum: {
            std::vector<RegExp> terms;
            collect_sum(run(e.left()), terms);
            collect_sum(run(e.right()), terms);
            std::sort(terms.begin(), terms.end());
            terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
            if (level_ == Level::SIMPLIFY) {
                terms.erase(std::remove_if(terms.begin(), terms.end(),
                                           [](const RegExp& t) { return t.is(Op::Zero); }),
                            terms.end());
                if (terms.empty())
                    return RegExp::zero();
            }
            RegExp acc = terms.back();
            for (std::size_t i = terms.size() - 1; i-- > 0;)
                acc = RegExp::sum(terms[i], acc);
            return acc == e ? e : acc;
        }
        default:
            return e;
        }
    }

    Level level_;
};

}  // namespace

NormalForm normalize(const RegExp& e, Level level)
{
    return NormalForm{Normalizer(level).run(e), level};
}

RegExp norm(const RegExp& e, Level level)
{
    return Normalizer(level).run(e);
}

RegExp fundamental_expansion(const RegExp& e, const Alphabet& alphabet)
{
    std::vector<RegExp> terms{output(e) ? RegExp::one() : RegExp::zero()};
    for (const auto& a : alphabet.symbols())
        terms.push_back(RegExp::prod(RegExp::letter(a), derive(e, a)));
    RegExp acc = terms.back();
    for (std::size_t i = terms.size() - 1; i-- > 0;)
        acc = RegExp::sum(terms[i], acc);
    return acc;
}

}  // namespace kleene
