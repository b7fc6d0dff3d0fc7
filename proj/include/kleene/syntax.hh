/* syntax.hh -- expression trees for Kleene algebra (with tests), parser and printer */

#ifndef KLEENE_SYNTAX_HH
#define KLEENE_SYNTAX_HH

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace kleene {

using Symbol = std::string;
using Word = std::vector<Symbol>;

/// Raised on malformed expression text; carries the byte offset of the problem.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(pos) + ": " + msg), pos_(pos) {}
    std::size_t position() const { return pos_; }
private:
    std::size_t pos_;
};

/// Raised when an identifier is not part of the declared alphabet / signature.
class UndeclaredSymbol : public std::runtime_error {
public:
    explicit UndeclaredSymbol(const std::string& sym)
        : std::runtime_error("undeclared symbol '" + sym + "'"), sym_(sym) {}
    const std::string& symbol() const { return sym_; }
private:
    std::string sym_;
};

/// Raised when negation or a Boolean connective is applied to something that is not a test.
class SortError : public std::runtime_error {
public:
    explicit SortError(const std::string& msg) : std::runtime_error(msg) {}
};

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<Symbol> symbols);

    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    bool contains(const Symbol& s) const { return index_.count(s) != 0; }
    std::size_t index_of(const Symbol& s) const;
    const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
    /// True when every symbol is one character long, enabling "ab" as a product.
    bool single_char() const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

private:
    std::vector<Symbol> symbols_;
    std::unordered_map<Symbol, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Regular expressions

enum class Op : std::uint8_t { Zero, One, Letter, Sum, Prod, Star };

class RegExp {
public:
    RegExp();   // Zero

    static RegExp zero();
    static RegExp one();
    static RegExp letter(const Symbol& a);
    static RegExp sum(const RegExp& l, const RegExp& r);
    static RegExp prod(const RegExp& l, const RegExp& r);
    static RegExp star(const RegExp& e);

    Op op() const;
    bool is(Op o) const;
    const Symbol& symbol() const;
    const RegExp& left() const;
    const RegExp& right() const;
    const RegExp& inner() const;
    std::size_t size() const;
    std::size_t hash() const;
    /// Whether the empty word is in the language (cached at construction).
    bool nullable() const;

    friend bool operator==(const RegExp& a, const RegExp& b);
    friend std::strong_ordering operator<=>(const RegExp& a, const RegExp& b);

private:
    struct Node;
    struct Null {};
    explicit RegExp(Null) {}
    explicit RegExp(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static RegExp make(Op op, Symbol sym, const RegExp* l, const RegExp* r);
    std::shared_ptr<const Node> node_;
};

struct RegExp::Node {
    Op op;
    Symbol sym;
    RegExp kids[2];
    std::size_t size;
    std::size_t hash;
    bool eps;
    Node() : op(Op::Zero), kids{RegExp(Null{}), RegExp(Null{})}, size(1), hash(0), eps(false) {}
};

inline Op RegExp::op() const { return node_->op; }
inline bool RegExp::is(Op o) const { return node_->op == o; }
inline const Symbol& RegExp::symbol() const { return node_->sym; }
inline const RegExp& RegExp::left() const { return node_->kids[0]; }
inline const RegExp& RegExp::right() const { return node_->kids[1]; }
inline const RegExp& RegExp::inner() const { return node_->kids[0]; }
inline std::size_t RegExp::size() const { return node_->size; }
inline std::size_t RegExp::hash() const { return node_->hash; }
inline bool RegExp::nullable() const { return node_->eps; }

struct RegExpHash {
    std::size_t operator()(const RegExp& e) const { return e.hash(); }
};

RegExp parse_regex(const std::string& text, const Alphabet& alphabet);
/// Parses with the alphabet inferred from the text (single-character letters).
RegExp parse_regex(const std::string& text);
std::string print(const RegExp& e);
std::size_t size(const RegExp& e);
/// Letters occurring in e, sorted.
std::vector<Symbol> letters(const RegExp& e);
/// Sum of the given expressions, left-nested; Zero when empty.
RegExp sum_of(const std::vector<RegExp>& es);
/// Product of the given expressions, left-nested; One when empty.
RegExp prod_of(const std::vector<RegExp>& es);

// ---------------------------------------------------------------------------
// Kleene algebra with tests

enum class BOp : std::uint8_t { BZero, BOne, Prim, BAnd, BOr, BNot };

class BoolExp {
public:
    BoolExp();   // BZero

    static BoolExp zero();
    static BoolExp one();
    static BoolExp prim(const Symbol& t);
    static BoolExp conj(const BoolExp& l, const BoolExp& r);
    static BoolExp disj(const BoolExp& l, const BoolExp& r);
    static BoolExp neg(const BoolExp& b);

    BOp op() const;
    bool is(BOp o) const;
    const Symbol& symbol() const;
    const BoolExp& left() const;
    const BoolExp& right() const;
    const BoolExp& inner() const;
    std::size_t size() const;
    std::size_t hash() const;

    friend bool operator==(const BoolExp& a, const BoolExp& b);
    friend std::strong_ordering operator<=>(const BoolExp& a, const BoolExp& b);

private:
    struct Node;
    struct Null {};
    explicit BoolExp(Null) {}
    explicit BoolExp(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static BoolExp make(BOp op, Symbol sym, const BoolExp* l, const BoolExp* r);
    std::shared_ptr<const Node> node_;
};

struct BoolExp::Node {
    BOp op;
    Symbol sym;
    BoolExp kids[2];
    std::size_t size;
    std::size_t hash;
    Node() : op(BOp::BZero), kids{BoolExp(Null{}), BoolExp(Null{})}, size(1), hash(0) {}
};

inline BOp BoolExp::op() const { return node_->op; }
inline bool BoolExp::is(BOp o) const { return node_->op == o; }
inline const Symbol& BoolExp::symbol() const { return node_->sym; }
inline const BoolExp& BoolExp::left() const { return node_->kids[0]; }
inline const BoolExp& BoolExp::right() const { return node_->kids[1]; }
inline const BoolExp& BoolExp::inner() const { return node_->kids[0]; }
inline std::size_t BoolExp::size() const { return node_->size; }
inline std::size_t BoolExp::hash() const { return node_->hash; }

enum class KOp : std::uint8_t { Test, Act, KSum, KProd, KStar };

class KatExp {
public:
    KatExp();   // Test(BZero)

    static KatExp test(const BoolExp& b);
    static KatExp act(const Symbol& p);
    static KatExp sum(const KatExp& l, const KatExp& r);
    static KatExp prod(const KatExp& l, const KatExp& r);
    static KatExp star(const KatExp& e);
    static KatExp zero() { return test(BoolExp::zero()); }
    static KatExp one() { return test(BoolExp::one()); }

    KOp op() const;
    bool is(KOp o) const;
    const Symbol& symbol() const;
    const BoolExp& guard() const;
    const KatExp& left() const;
    const KatExp& right() const;
    const KatExp& inner() const;
    std::size_t size() const;
    std::size_t hash() const;
    bool is_zero() const { return is(KOp::Test) && guard().is(BOp::BZero); }
    bool is_one() const { return is(KOp::Test) && guard().is(BOp::BOne); }

    friend bool operator==(const KatExp& a, const KatExp& b);
    friend std::strong_ordering operator<=>(const KatExp& a, const KatExp& b);

private:
    struct Node;
    struct Null {};
    explicit KatExp(Null) {}
    explicit KatExp(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static KatExp make(KOp op, Symbol sym, BoolExp b, const KatExp* l, const KatExp* r);
    std::shared_ptr<const Node> node_;
};

struct KatExp::Node {
    KOp op;
    Symbol sym;
    BoolExp b;
    KatExp kids[2];
    std::size_t size;
    std::size_t hash;
    Node() : op(KOp::Test), kids{KatExp(Null{}), KatExp(Null{})}, size(1), hash(0) {}
};

inline KOp KatExp::op() const { return node_->op; }
inline bool KatExp::is(KOp o) const { return node_->op == o; }
inline const Symbol& KatExp::symbol() const { return node_->sym; }
inline const BoolExp& KatExp::guard() const { return node_->b; }
inline const KatExp& KatExp::left() const { return node_->kids[0]; }
inline const KatExp& KatExp::right() const { return node_->kids[1]; }
inline const KatExp& KatExp::inner() const { return node_->kids[0]; }
inline std::size_t KatExp::size() const { return node_->size; }
inline std::size_t KatExp::hash() const { return node_->hash; }

struct KatExpHash {
    std::size_t operator()(const KatExp& e) const { return e.hash(); }
};

/// Declared actions P and primitive tests T, each in canonical order.
struct KatSignature {
    std::vector<Symbol> actions;
    std::vector<Symbol> tests;

    bool is_action(const Symbol& s) const;
    bool is_test(const Symbol& s) const;
    std::size_t action_index(const Symbol& s) const;
    std::size_t test_index(const Symbol& s) const;
    bool single_char() const;
    friend bool operator==(const KatSignature&, const KatSignature&) = default;
};

KatExp parse_kat(const std::string& text, const KatSignature& sig);
BoolExp parse_test(const std::string& text, const KatSignature& sig);
std::string print(const KatExp& e);
std::string print(const BoolExp& b);
std::size_t size(const KatExp& e);
std::size_t size(const BoolExp& b);

}  // namespace kleene

#endif /* KLEENE_SYNTAX_HH */
