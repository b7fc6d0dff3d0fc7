/* syntax.cc -- expression trees, parser and printer */

#include "kleene/syntax.hh"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace kleene {

namespace {

std::size_t mix(std::size_t seed, std::size_t v)
{
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols))
{
    if (symbols_.empty())
        throw std::invalid_argument("alphabet must not be empty");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].empty())
            throw std::invalid_argument("alphabet symbol must not be empty");
        if (!index_.emplace(symbols_[i], i).second)
            throw std::invalid_argument("duplicate alphabet symbol '" + symbols_[i] + "'");
    }
}

std::size_t Alphabet::index_of(const Symbol& s) const
{
    auto it = index_.find(s);
    if (it == index_.end())
        throw UndeclaredSymbol(s);
    return it->second;
}

bool Alphabet::single_char() const
{
    return std::all_of(symbols_.begin(), symbols_.end(),
                       [](const Symbol& s) { return s.size() == 1; });
}

// ---------------------------------------------------------------------------
// RegExp

RegExp RegExp::make(Op op, Symbol sym, const RegExp* l, const RegExp* r)
{
    auto n = std::make_shared<Node>();
    n->op = op;
    n->sym = std::move(sym);
    std::size_t h = mix(0, static_cast<std::size_t>(op) + 1);
    h = mix(h, std::hash<std::string>{}(n->sym));
    n->size = 1;
    if (l) {
        n->kids[0] = *l;
        n->size += l->size();
        h = mix(h, l->hash());
    }
    if (r) {
        n->kids[1] = *r;
        n->size += r->size();
        h = mix(h, r->hash());
    }
    n->hash = h;
    switch (op) {
    case Op::One:
    case Op::Star: n->eps = true; break;
    case Op::Sum: n->eps = l->nullable() || r->nullable(); break;
    case Op::Prod: n->eps = l->nullable() && r->nullable(); break;
    default: n->eps = false; break;
    }
    return RegExp(std::shared_ptr<const Node>(std::move(n)));
}

RegExp RegExp::zero()
{
    static const RegExp z = make(Op::Zero, "", nullptr, nullptr);
    return z;
}

RegExp RegExp::one()
{
    static const RegExp o = make(Op::One, "", nullptr, nullptr);
    return o;
}

RegExp::RegExp() : RegExp(zero()) {}

RegExp RegExp::letter(const Symbol& a) { return make(Op::Letter, a, nullptr, nullptr); }
RegExp RegExp::sum(const RegExp& l, const RegExp& r) { return make(Op::Sum, "", &l, &r); }
RegExp RegExp::prod(const RegExp& l, const RegExp& r) { return make(Op::Prod, "", &l, &r); }
RegExp RegExp::star(const RegExp& e) { return make(Op::Star, "", &e, nullptr); }

bool operator==(const RegExp& a, const RegExp& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.hash() != b.hash() || a.op() != b.op() || a.size() != b.size())
        return false;
    switch (a.op()) {
    case Op::Zero:
    case Op::One:
        return true;
    case Op::Letter:
        return a.symbol() == b.symbol();
    case Op::Star:
        return a.inner() == b.inner();
    default:
        return a.left() == b.left() && a.right() == b.right();
    }
}

std::strong_ordering operator<=>(const RegExp& a, const RegExp& b)
{
    if (a.node_ == b.node_)
        return std::strong_ordering::equal;
    if (a.op() != b.op())
        return a.op() <=> b.op();
    switch (a.op()) {
    case Op::Zero:
    case Op::One:
        return std::strong_ordering::equal;
    case Op::Letter:
        return a.symbol() <=> b.symbol();
    case Op::Star:
        return a.inner() <=> b.inner();
    default:
        if (auto c = a.left() <=> b.left(); c != 0)
            return c;
        return a.right() <=> b.right();
    }
}

std::size_t size(const RegExp& e) { return e.size(); }

std::vector<Symbol> letters(const RegExp& e)
{
    std::set<Symbol> out;
    std::vector<const RegExp*> todo{&e};
    while (!todo.empty()) {
        const RegExp* x = todo.back();
        todo.pop_back();
        switch (x->op()) {
        case Op::Letter: out.insert(x->symbol()); break;
        case Op::Star: todo.push_back(&x->inner()); break;
        case Op::Sum:
        case Op::Prod:
            todo.push_back(&x->left());
            todo.push_back(&x->right());
            break;
        default: break;
        }
    }
    return {out.begin(), out.end()};
}

RegExp sum_of(const std::vector<RegExp>& es)
{
    if (es.empty())
        return RegExp::zero();
    RegExp acc = es.front();
    for (std::size_t i = 1; i < es.size(); ++i)
        acc = RegExp::sum(acc, es[i]);
    return acc;
}

RegExp prod_of(const std::vector<RegExp>& es)
{
    if (es.empty())
        return RegExp::one();
    RegExp acc = es.front();
    for (std::size_t i = 1; i < es.size(); ++i)
        acc = RegExp::prod(acc, es[i]);
    return acc;
}

// ---------------------------------------------------------------------------
// BoolExp

BoolExp BoolExp::make(BOp op, Symbol sym, const BoolExp* l, const BoolExp* r)
{
    auto n = std::make_shared<Node>();
    n->op = op;
    n->sym = std::move(sym);
    std::size_t h = mix(7, static_cast<std::size_t>(op) + 1);
    h = mix(h, std::hash<std::string>{}(n->sym));
    n->size = 1;
    if (l) {
        n->kids[0] = *l;
        n->size += l->size();
        h = mix(h, l->hash());
    }
    if (r) {
        n->kids[1] = *r;
        n->size += r->size();
        h = mix(h, r->hash());
    }
    n->hash = h;
    return BoolExp(std::shared_ptr<const Node>(std::move(n)));
}

BoolExp BoolExp::zero()
{
    static const BoolExp z = make(BOp::BZero, "", nullptr, nullptr);
    return z;
}

BoolExp BoolExp::one()
{
    static const BoolExp o = make(BOp::BOne, "", nullptr, nullptr);
    return o;
}

BoolExp::BoolExp() : BoolExp(zero()) {}

BoolExp BoolExp::prim(const Symbol& t) { return make(BOp::Prim, t, nullptr, nullptr); }
BoolExp BoolExp::conj(const BoolExp& l, const BoolExp& r) { return make(BOp::BAnd, "", &l, &r); }
BoolExp BoolExp::disj(const BoolExp& l, const BoolExp& r) { return make(BOp::BOr, "", &l, &r); }
BoolExp BoolExp::neg(const BoolExp& b) { return make(BOp::BNot, "", &b, nullptr); }

bool operator==(const BoolExp& a, const BoolExp& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.hash() != b.hash() || a.op() != b.op() || a.size() != b.size())
        return false;
    switch (a.op()) {
    case BOp::BZero:
    case BOp::BOne:
        return true;
    case BOp::Prim:
        return a.symbol() == b.symbol();
    case BOp::BNot:
        return a.inner() == b.inner();
    default:
        return a.left() == b.left() && a.right() == b.right();
    }
}

std::strong_ordering operator<=>(const BoolExp& a, const BoolExp& b)
{
    if (a.node_ == b.node_)
        return std::strong_ordering::equal;
    if (a.op() != b.op())
        return a.op() <=> b.op();
    switch (a.op()) {
    case BOp::BZero:
    case BOp::BOne:
        return std::strong_ordering::equal;
    case BOp::Prim:
        return a.symbol() <=> b.symbol();
    case BOp::BNot:
        return a.inner() <=> b.inner();
    default:
        if (auto c = a.left() <=> b.left(); c != 0)
            return c;
        return a.right() <=> b.right();
    }
}

std::size_t size(const BoolExp& b) { return b.size(); }

// ---------------------------------------------------------------------------
// KatExp

KatExp KatExp::make(KOp op, Symbol sym, BoolExp b, const KatExp* l, const KatExp* r)
{
    auto n = std::make_shared<Node>();
    n->op = op;
    n->sym = std::move(sym);
    std::size_t h = mix(13, static_cast<std::size_t>(op) + 1);
    h = mix(h, std::hash<std::string>{}(n->sym));
    n->size = 1;
    if (op == KOp::Test) {
        // A test counts as a leaf of the program tree plus its Boolean structure.
        n->size = b.size();
        h = mix(h, b.hash());
    }
    n->b = std::move(b);
    if (l) {
        n->kids[0] = *l;
        n->size += l->size();
        h = mix(h, l->hash());
    }
    if (r) {
        n->kids[1] = *r;
        n->size += r->size();
        h = mix(h, r->hash());
    }
    n->hash = h;
    return KatExp(std::shared_ptr<const Node>(std::move(n)));
}

KatExp::KatExp() : KatExp(test(BoolExp::zero())) {}

KatExp KatExp::test(const BoolExp& b) { return make(KOp::Test, "", b, nullptr, nullptr); }
KatExp KatExp::act(const Symbol& p) { return make(KOp::Act, p, BoolExp::zero(), nullptr, nullptr); }
KatExp KatExp::sum(const KatExp& l, const KatExp& r) { return make(KOp::KSum, "", BoolExp::zero(), &l, &r); }
KatExp KatExp::prod(const KatExp& l, const KatExp& r) { return make(KOp::KProd, "", BoolExp::zero(), &l, &r); }
KatExp KatExp::star(const KatExp& e) { return make(KOp::KStar, "", BoolExp::zero(), &e, nullptr); }

bool operator==(const KatExp& a, const KatExp& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.hash() != b.hash() || a.op() != b.op() || a.size() != b.size())
        return false;
    switch (a.op()) {
    case KOp::Test:
        return a.guard() == b.guard();
    case KOp::Act:
        return a.symbol() == b.symbol();
    case KOp::KStar:
        return a.inner() == b.inner();
    default:
        return a.left() == b.left() && a.right() == b.right();
    }
}

std::strong_ordering operator<=>(const KatExp& a, const KatExp& b)
{
    if (a.node_ == b.node_)
        return std::strong_ordering::equal;
    if (a.op() != b.op())
        return a.op() <=> b.op();
    switch (a.op()) {
    case KOp::Test:
        return a.guard() <=> b.guard();
    case KOp::Act:
        return a.symbol() <=> b.symbol();
    case KOp::KStar:
        return a.inner() <=> b.inner();
    default:
        if (auto c = a.left() <=> b.left(); c != 0)
            return c;
        return a.right() <=> b.right();
    }
}

std::size_t size(const KatExp& e) { return e.size(); }

bool KatSignature::is_action(const Symbol& s) const
{
    return std::find(actions.begin(), actions.end(), s) != actions.end();
}

bool KatSignature::is_test(const Symbol& s) const
{
    return std::find(tests.begin(), tests.end(), s) != tests.end();
}

std::size_t KatSignature::action_index(const Symbol& s) const
{
    auto it = std::find(actions.begin(), actions.end(), s);
    if (it == actions.end())
        throw UndeclaredSymbol(s);
    return static_cast<std::size_t>(it - actions.begin());
}

std::size_t KatSignature::test_index(const Symbol& s) const
{
    auto it = std::find(tests.begin(), tests.end(), s);
    if (it == tests.end())
        throw UndeclaredSymbol(s);
    return static_cast<std::size_t>(it - tests.begin());
}

bool KatSignature::single_char() const
{
    auto one = [](const Symbol& s) { return s.size() == 1; };
    return std::all_of(actions.begin(), actions.end(), one) && std::all_of(tests.begin(), tests.end(), one);
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { LParen, RParen, Plus, Star, Seq, Bang, Amp, Bar, Zero, One, Ident, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& s, bool split_chars)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < s.size() && s[i] != '\n')
                ++i;
            continue;
        }
        // U+00B7 MIDDLE DOT, UTF-8 encoded
        if (static_cast<unsigned char>(c) == 0xC2 && i + 1 < s.size() &&
            static_cast<unsigned char>(s[i + 1]) == 0xB7) {
            out.push_back({Tok::Seq, "·", i});
            i += 2;
            continue;
        }
        switch (c) {
        case '(': out.push_back({Tok::LParen, "(", i}); ++i; continue;
        case ')': out.push_back({Tok::RParen, ")", i}); ++i; continue;
        case '+': out.push_back({Tok::Plus, "+", i}); ++i; continue;
        case '*': out.push_back({Tok::Star, "*", i}); ++i; continue;
        case ';': out.push_back({Tok::Seq, ";", i}); ++i; continue;
        case '.': out.push_back({Tok::Seq, ".", i}); ++i; continue;
        case '!': out.push_back({Tok::Bang, "!", i}); ++i; continue;
        case '&': out.push_back({Tok::Amp, "&", i}); ++i; continue;
        case '|': out.push_back({Tok::Bar, "|", i}); ++i; continue;
        case '0': out.push_back({Tok::Zero, "0", i}); ++i; continue;
        case '1': out.push_back({Tok::One, "1", i}); ++i; continue;
        default: break;
        }
        if (ident_start(c)) {
            if (split_chars) {
                out.push_back({Tok::Ident, std::string(1, c), i});
                ++i;
                continue;
            }
            std::size_t j = i + 1;
            while (j < s.size() && ident_char(s[j]))
                ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        throw ParseError(i, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}
    const Token& peek() const { return toks_[i_]; }
    Token next() { return toks_[i_++]; }
    bool accept(Tok k)
    {
        if (peek().kind != k)
            return false;
        ++i_;
        return true;
    }
    void expect(Tok k, const char* what)
    {
        if (!accept(k))
            throw ParseError(peek().pos, std::string("expected ") + what + describe(peek()));
    }
    static std::string describe(const Token& t)
    {
        return t.kind == Tok::End ? " but reached end of input" : " but found '" + t.text + "'";
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

bool starts_atom(Tok k)
{
    return k == Tok::LParen || k == Tok::Zero || k == Tok::One || k == Tok::Ident || k == Tok::Bang;
}

// ---- KA parser ----

class RegexParser {
public:
    RegexParser(TokenStream& ts, const Alphabet* alphabet) : ts_(ts), alphabet_(alphabet) {}

    RegExp parse()
    {
        if (ts_.peek().kind == Tok::End)
            throw ParseError(ts_.peek().pos, "empty expression");
        RegExp e = expr();
        if (ts_.peek().kind != Tok::End)
            throw ParseError(ts_.peek().pos, "unexpected '" + ts_.peek().text + "'");
        return e;
    }

private:
    RegExp expr()
    {
        RegExp e = term();
        while (ts_.accept(Tok::Plus))
            e = RegExp::sum(e, term());
        return e;
    }

    RegExp term()
    {
        RegExp e = factor();
        for (;;) {
            if (ts_.accept(Tok::Seq)) {
                e = RegExp::prod(e, factor());
                continue;
            }
            if (!starts_atom(ts_.peek().kind))
                break;
            e = RegExp::prod(e, factor());
        }
        return e;
    }

    RegExp factor()
    {
        RegExp e = atom();
        while (ts_.accept(Tok::Star))
            e = RegExp::star(e);
        return e;
    }

    RegExp atom()
    {
        Token t = ts_.next();
        switch (t.kind) {
        case Tok::Zero: return RegExp::zero();
        case Tok::One: return RegExp::one();
        case Tok::Ident:
            if (alphabet_ && !alphabet_->contains(t.text))
                throw UndeclaredSymbol(t.text);
            return RegExp::letter(t.text);
        case Tok::LParen: {
            RegExp e = expr();
            ts_.expect(Tok::RParen, "')'");
            return e;
        }
        case Tok::Bang:
            throw ParseError(t.pos, "negation is only available for tests in KAT mode");
        default:
            throw ParseError(t.pos, "expected an expression" + TokenStream::describe(t));
        }
    }

    TokenStream& ts_;
    const Alphabet* alphabet_;
};

// ---- KAT parser ----

BoolExp to_bool(const KatExp& e, const char* ctx)
{
    switch (e.op()) {
    case KOp::Test: return e.guard();
    case KOp::KSum: return BoolExp::disj(to_bool(e.left(), ctx), to_bool(e.right(), ctx));
    case KOp::KProd: return BoolExp::conj(to_bool(e.left(), ctx), to_bool(e.right(), ctx));
    case KOp::Act:
        throw SortError(std::string(ctx) + " applied to action '" + e.symbol() + "'");
    default:
        throw SortError(std::string(ctx) + " applied to a starred expression");
    }
}

class KatParser {
public:
    KatParser(TokenStream& ts, const KatSignature& sig) : ts_(ts), sig_(sig) {}

    KatExp parse()
    {
        if (ts_.peek().kind == Tok::End)
            throw ParseError(ts_.peek().pos, "empty expression");
        KatExp e = expr();
        if (ts_.peek().kind != Tok::End)
            throw ParseError(ts_.peek().pos, "unexpected '" + ts_.peek().text + "'");
        return e;
    }

private:
    KatExp expr()
    {
        KatExp e = term();
        while (ts_.accept(Tok::Plus))
            e = KatExp::sum(e, term());
        return e;
    }

    KatExp term()
    {
        KatExp e = disj();
        for (;;) {
            if (ts_.accept(Tok::Seq)) {
                e = KatExp::prod(e, disj());
                continue;
            }
            if (!starts_atom(ts_.peek().kind))
                break;
            e = KatExp::prod(e, disj());
        }
        return e;
    }

    KatExp disj()
    {
        KatExp e = conj();
        while (ts_.accept(Tok::Bar)) {
            KatExp r = conj();
            e = KatExp::test(BoolExp::disj(to_bool(e, "'|'"), to_bool(r, "'|'")));
        }
        return e;
    }

    KatExp conj()
    {
        KatExp e = factor();
        while (ts_.accept(Tok::Amp)) {
            KatExp r = factor();
            e = KatExp::test(BoolExp::conj(to_bool(e, "'&'"), to_bool(r, "'&'")));
        }
        return e;
    }

    KatExp factor()
    {
        KatExp e = atom();
        while (ts_.accept(Tok::Star))
            e = KatExp::star(e);
        return e;
    }

    KatExp atom()
    {
        Token t = ts_.next();
        switch (t.kind) {
        case Tok::Zero: return KatExp::zero();
        case Tok::One: return KatExp::one();
        case Tok::Ident:
            if (sig_.is_test(t.text))
                return KatExp::test(BoolExp::prim(t.text));
            if (sig_.is_action(t.text))
                return KatExp::act(t.text);
            throw UndeclaredSymbol(t.text);
        case Tok::LParen: {
            KatExp e = expr();
            ts_.expect(Tok::RParen, "')'");
            return e;
        }
        case Tok::Bang:
            return KatExp::test(BoolExp::neg(to_bool(atom(), "negation")));
        default:
            throw ParseError(t.pos, "expected an expression" + TokenStream::describe(t));
        }
    }

    TokenStream& ts_;
    const KatSignature& sig_;
};

}  // namespace

RegExp parse_regex(const std::string& text, const Alphabet& alphabet)
{
    TokenStream ts(lex(text, alphabet.single_char()));
    return RegexParser(ts, &alphabet).parse();
}

RegExp parse_regex(const std::string& text)
{
    TokenStream ts(lex(text, true));
    return RegexParser(ts, nullptr).parse();
}

KatExp parse_kat(const std::string& text, const KatSignature& sig)
{
    for (const auto& p : sig.actions)
        if (sig.is_test(p))
            throw std::invalid_argument("identifier '" + p + "' declared both as action and test");
    TokenStream ts(lex(text, sig.single_char()));
    return KatParser(ts, sig).parse();
}

BoolExp parse_test(const std::string& text, const KatSignature& sig)
{
    return to_bool(parse_kat(text, sig), "test context");
}

// ---------------------------------------------------------------------------
// Printers

namespace {

int prec(const RegExp& e)
{
    switch (e.op()) {
    case Op::Sum: return 0;
    case Op::Prod: return 1;
    case Op::Star: return 2;
    default: return 3;
    }
}

void print_re(const RegExp& e, int min_prec, std::string& out)
{
    bool paren = prec(e) < min_prec;
    if (paren)
        out += '(';
    switch (e.op()) {
    case Op::Zero: out += '0'; break;
    case Op::One: out += '1'; break;
    case Op::Letter: out += e.symbol(); break;
    case Op::Sum:
        print_re(e.left(), 0, out);
        out += " + ";
        print_re(e.right(), 1, out);
        break;
    case Op::Prod:
        print_re(e.left(), 1, out);
        out += ' ';
        print_re(e.right(), 2, out);
        break;
    case Op::Star:
        print_re(e.inner(), 2, out);
        out += '*';
        break;
    }
    if (paren)
        out += ')';
}

// Boolean precedence: or 0, and 1, atoms (incl. negation) 2
int bprec(const BoolExp& b)
{
    switch (b.op()) {
    case BOp::BOr: return 0;
    case BOp::BAnd: return 1;
    default: return 2;
    }
}

void print_b(const BoolExp& b, int min_prec, std::string& out)
{
    bool paren = bprec(b) < min_prec;
    if (paren)
        out += '(';
    switch (b.op()) {
    case BOp::BZero: out += '0'; break;
    case BOp::BOne: out += '1'; break;
    case BOp::Prim: out += b.symbol(); break;
    case BOp::BOr:
        print_b(b.left(), 0, out);
        out += " | ";
        print_b(b.right(), 1, out);
        break;
    case BOp::BAnd:
        print_b(b.left(), 1, out);
        out += " & ";
        print_b(b.right(), 2, out);
        break;
    case BOp::BNot:
        out += '!';
        print_b(b.inner(), 2, out);
        break;
    }
    if (paren)
        out += ')';
}

// KAT precedence: sum 0, product 1, test-or 2, test-and 3, star 4, atoms 5
int kprec(const KatExp& e)
{
    switch (e.op()) {
    case KOp::KSum: return 0;
    case KOp::KProd: return 1;
    case KOp::KStar: return 4;
    case KOp::Test:
        if (e.guard().is(BOp::BOr))
            return 2;
        if (e.guard().is(BOp::BAnd))
            return 3;
        return 5;
    default: return 5;
    }
}

void print_k(const KatExp& e, int min_prec, std::string& out)
{
    bool paren = kprec(e) < min_prec;
    if (paren)
        out += '(';
    switch (e.op()) {
    case KOp::Test: print_b(e.guard(), 0, out); break;
    case KOp::Act: out += e.symbol(); break;
    case KOp::KSum:
        print_k(e.left(), 0, out);
        out += " + ";
        print_k(e.right(), 1, out);
        break;
    case KOp::KProd:
        print_k(e.left(), 1, out);
        out += ' ';
        print_k(e.right(), 2, out);
        break;
    case KOp::KStar:
        print_k(e.inner(), 4, out);
        out += '*';
        break;
    }
    if (paren)
        out += ')';
}

}  // namespace

std::string print(const RegExp& e)
{
    std::string out;
    print_re(e, 0, out);
    return out;
}

std::string print(const BoolExp& b)
{
    std::string out;
    print_b(b, 0, out);
    return out;
}

std::string print(const KatExp& e)
{
    std::string out;
    print_k(e, 0, out);
    return out;
}

}  // namespace kleene
