/* solver.cc -- equation systems over expressions and matrix star */

#include "kleene/solver.hh"

#include "kleene/derivatives.hh"
#include "kleene/equivalence.hh"

namespace kleene {

namespace {

std::vector<std::string> numbered(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(std::to_string(i));
    return out;
}

RegExp simp(const RegExp& e)
{
    return norm(e, Level::SIMPLIFY);
}

// Zero and One operands are dropped while building entries; every entry is then
// brought to SIMPLIFY normal form.
RegExp plus(const RegExp& x, const RegExp& y)
{
    if (x.is(Op::Zero))
        return y;
    if (y.is(Op::Zero))
        return x;
    return RegExp::sum(x, y);
}

RegExp times(const RegExp& x, const RegExp& y)
{
    if (x.is(Op::Zero) || y.is(Op::Zero))
        return RegExp::zero();
    if (x.is(Op::One))
        return y;
    if (y.is(Op::One))
        return x;
    return RegExp::prod(x, y);
}

}  // namespace

ExpMatrix::ExpMatrix(std::vector<std::string> index)
    : index_(std::move(index)), entries_(index_.size() * index_.size(), RegExp::zero())
{
}

ExpMatrix::ExpMatrix(std::size_t n) : ExpMatrix(numbered(n)) {}

ExpMatrix ExpMatrix::identity(const std::vector<std::string>& index)
{
    ExpMatrix m(index);
    for (std::size_t i = 0; i < m.dim(); ++i)
        m.at(i, i) = RegExp::one();
    return m;
}

ExpMatrix ExpMatrix::zeros(const std::vector<std::string>& index)
{
    return ExpMatrix(index);
}

ExpVector::ExpVector(std::vector<std::string> index)
    : index_(std::move(index)), entries_(index_.size(), RegExp::zero())
{
}

EquationSystem system_of(const Dfa& d)
{
    EquationSystem sys{ExpMatrix(d.names), ExpVector(d.names)};
    for (State s = 0; s < d.size(); ++s) {
        for (State t = 0; t < d.size(); ++t) {
            std::vector<RegExp> ls;
            for (std::size_t a = 0; a < d.alphabet.size(); ++a)
                if (d.next(s, a) == t)
                    ls.push_back(RegExp::letter(d.alphabet[a]));
            sys.matrix.at(s, t) = sum_of(ls);
        }
        sys.output.at(s) = d.output(s) ? RegExp::one() : RegExp::zero();
    }
    return sys;
}

ExpMatrix mat_add(const ExpMatrix& a, const ExpMatrix& b)
{
    if (a.index() != b.index())
        throw IndexMismatch();
    ExpMatrix out(a.index());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            out.at(i, j) = simp(plus(a.at(i, j), b.at(i, j)));
    return out;
}

ExpMatrix mat_mul(const ExpMatrix& a, const ExpMatrix& b)
{
    if (a.index() != b.index())
        throw IndexMismatch();
    ExpMatrix out(a.index());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            RegExp acc = RegExp::zero();
            for (std::size_t k = 0; k < a.dim(); ++k)
                acc = plus(acc, times(a.at(i, k), b.at(k, j)));
            out.at(i, j) = simp(acc);
        }
    }
    return out;
}

ExpVector mat_vec(const ExpMatrix& a, const ExpVector& v)
{
    if (a.index() != v.index())
        throw IndexMismatch();
    ExpVector out(a.index());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        RegExp acc = RegExp::zero();
        for (std::size_t k = 0; k < a.dim(); ++k)
            acc = plus(acc, times(a.at(i, k), v.at(k)));
        out.at(i) = simp(acc);
    }
    return out;
}

ExpVector vec_add(const ExpVector& a, const ExpVector& b)
{
    if (a.index() != b.index())
        throw IndexMismatch();
    ExpVector out(a.index());
    for (std::size_t i = 0; i < a.dim(); ++i)
        out.at(i) = simp(plus(a.at(i), b.at(i)));
    return out;
}

namespace {

ExpMatrix sub(const ExpMatrix& m, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1)
{
    // Only square blocks carry an index; rectangular ones are stored padded.
    std::size_t n = std::max(r1 - r0, c1 - c0);
    ExpMatrix out(n);
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = c0; j < c1; ++j)
            out.at(i - r0, j - c0) = m.at(i, j);
    return out;
}

// Rectangular block arithmetic on padded square storage: rows x cols are the live extents.
struct Block {
    ExpMatrix m;
    std::size_t rows, cols;
};

Block block(const ExpMatrix& m, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1)
{
    return {sub(m, r0, r1, c0, c1), r1 - r0, c1 - c0};
}

Block mul(const Block& a, const Block& b)
{
    Block out{ExpMatrix(std::max(a.rows, b.cols)), a.rows, b.cols};
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < b.cols; ++j) {
            RegExp acc = RegExp::zero();
            for (std::size_t k = 0; k < a.cols; ++k)
                acc = plus(acc, times(a.m.at(i, k), b.m.at(k, j)));
            out.m.at(i, j) = simp(acc);
        }
    }
    return out;
}

Block add(const Block& a, const Block& b)
{
    Block out{ExpMatrix(std::max(a.rows, a.cols)), a.rows, a.cols};
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            out.m.at(i, j) = simp(plus(a.m.at(i, j), b.m.at(i, j)));
    return out;
}

ExpMatrix star_block(const ExpMatrix& m);

Block star(const Block& b)
{
    ExpMatrix sq(b.rows);
    for (std::size_t i = 0; i < b.rows; ++i)
        for (std::size_t j = 0; j < b.rows; ++j)
            sq.at(i, j) = b.m.at(i, j);
    ExpMatrix s = star_block(sq);
    return {s, b.rows, b.rows};
}

ExpMatrix star_block(const ExpMatrix& m)
{
    std::size_t n = m.dim();
    ExpMatrix out(m.index());
    if (n == 0)
        return out;
    if (n == 1) {
        out.at(0, 0) = simp(RegExp::star(m.at(0, 0)));
        return out;
    }
    std::size_t h = (n + 1) / 2;
    Block S = block(m, 0, h, 0, h);
    Block T = block(m, 0, h, h, n);
    Block U = block(m, h, n, 0, h);
    Block V = block(m, h, n, h, n);

    Block Vs = star(V);
    Block Ss = star(S);
    Block top = star(add(S, mul(mul(T, Vs), U)));          // (S + T V* U)*
    Block bottom = star(add(V, mul(mul(U, Ss), T)));       // (V + U S* T)*
    Block tr = mul(mul(top, T), Vs);                        // (S + T V* U)* T V*
    Block bl = mul(mul(bottom, U), Ss);                     // (V + U S* T)* U S*

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i < h && j < h)
                out.at(i, j) = top.m.at(i, j);
            else if (i < h)
                out.at(i, j) = tr.m.at(i, j - h);
            else if (j < h)
                out.at(i, j) = bl.m.at(i - h, j);
            else
                out.at(i, j) = bottom.m.at(i - h, j - h);
        }
    }
    return out;
}

// Least solution s of s = M s + b, eliminating the last remaining index first.
std::vector<RegExp> eliminate(std::vector<std::vector<RegExp>> m, std::vector<RegExp> b)
{
    std::size_t n = b.size();
    std::vector<RegExp> loop(n);   // M(p,p)* at the time p was eliminated
    for (std::size_t p = n; p-- > 0;) {
        loop[p] = simp(RegExp::star(m[p][p]));
        for (std::size_t q = 0; q < p; ++q) {
            if (m[q][p].is(Op::Zero))
                continue;
            RegExp via = times(m[q][p], loop[p]);
            for (std::size_t r = 0; r < p; ++r)
                m[q][r] = simp(plus(m[q][r], times(via, m[p][r])));
            b[q] = simp(plus(b[q], times(via, b[p])));
        }
    }
    std::vector<RegExp> s(n);
    for (std::size_t p = 0; p < n; ++p) {
        RegExp acc = b[p];
        for (std::size_t r = 0; r < p; ++r)
            acc = plus(acc, times(m[p][r], s[r]));
        s[p] = simp(times(loop[p], acc));
    }
    return s;
}

ExpMatrix star_elimination(const ExpMatrix& m)
{
    std::size_t n = m.dim();
    std::vector<std::vector<RegExp>> rows(n, std::vector<RegExp>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rows[i][j] = m.at(i, j);
    ExpMatrix out(m.index());
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<RegExp> unit(n, RegExp::zero());
        unit[col] = RegExp::one();
        std::vector<RegExp> s = eliminate(rows, unit);
        for (std::size_t i = 0; i < n; ++i)
            out.at(i, col) = s[i];
    }
    return out;
}

}  // namespace

ExpMatrix mat_star(const ExpMatrix& m, StarMethod method)
{
    return method == StarMethod::BLOCK ? star_block(m) : star_elimination(m);
}

ExpVector solve_all(const Dfa& d, StarMethod method)
{
    EquationSystem sys = system_of(d);
    return mat_vec(mat_star(sys.matrix, method), sys.output);
}

RegExp solve(const Dfa& d, State s, StarMethod method)
{
    if (s >= d.size())
        throw std::out_of_range("unknown state " + std::to_string(s));
    return solve_all(d, method).at(s);
}

bool check_solution(const Dfa& d, const ExpVector& assignment)
{
    if (assignment.dim() != d.size())
        throw IndexMismatch();
    for (State s = 0; s < d.size(); ++s) {
        std::vector<RegExp> terms;
        for (std::size_t a = 0; a < d.alphabet.size(); ++a)
            terms.push_back(RegExp::prod(RegExp::letter(d.alphabet[a]), assignment.at(d.next(s, a))));
        terms.push_back(d.output(s) ? RegExp::one() : RegExp::zero());
        if (!decide_equiv(assignment.at(s), sum_of(terms), d.alphabet).equivalent)
            return false;
    }
    return true;
}

}  // namespace kleene
