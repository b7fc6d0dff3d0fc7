/* solver.hh -- automaton to expression: equation systems and matrices over expressions */

#ifndef KLEENE_SOLVER_HH
#define KLEENE_SOLVER_HH

#include <string>
#include <vector>

#include "kleene/automata.hh"
#include "kleene/syntax.hh"

namespace kleene {

/// Square matrix of expressions indexed by an ordered set Q (row-major).
class ExpMatrix {
public:
    ExpMatrix() = default;
    explicit ExpMatrix(std::vector<std::string> index);
    /// Indexed by 0..n-1 rendered as strings.
    explicit ExpMatrix(std::size_t n);

    std::size_t dim() const { return index_.size(); }
    const std::vector<std::string>& index() const { return index_; }
    const RegExp& at(std::size_t i, std::size_t j) const { return entries_.at(i * dim() + j); }
    RegExp& at(std::size_t i, std::size_t j) { return entries_.at(i * dim() + j); }

    /// The matrix with One on the diagonal and Zero elsewhere.
    static ExpMatrix identity(const std::vector<std::string>& index);
    static ExpMatrix zeros(const std::vector<std::string>& index);

private:
    std::vector<std::string> index_;
    std::vector<RegExp> entries_;
};

class ExpVector {
public:
    ExpVector() = default;
    explicit ExpVector(std::vector<std::string> index);

    std::size_t dim() const { return index_.size(); }
    const std::vector<std::string>& index() const { return index_; }
    const RegExp& at(std::size_t i) const { return entries_.at(i); }
    RegExp& at(std::size_t i) { return entries_.at(i); }

private:
    std::vector<std::string> index_;
    std::vector<RegExp> entries_;
};

class IndexMismatch : public std::invalid_argument {
public:
    IndexMismatch() : std::invalid_argument("matrix/vector indices do not match") {}
};

struct EquationSystem {
    ExpMatrix matrix;
    ExpVector output;
};

enum class StarMethod { BLOCK, ELIMINATION };

EquationSystem system_of(const Dfa& d);

ExpMatrix mat_add(const ExpMatrix& a, const ExpMatrix& b);
ExpMatrix mat_mul(const ExpMatrix& a, const ExpMatrix& b);
ExpVector mat_vec(const ExpMatrix& a, const ExpVector& v);
ExpVector vec_add(const ExpVector& a, const ExpVector& b);
ExpMatrix mat_star(const ExpMatrix& m, StarMethod method);

RegExp solve(const Dfa& d, State s, StarMethod method);
/// Solutions for every state at once, sharing one matrix star.
ExpVector solve_all(const Dfa& d, StarMethod method);
bool check_solution(const Dfa& d, const ExpVector& assignment);

}  // namespace kleene

#endif /* KLEENE_SOLVER_HH */
