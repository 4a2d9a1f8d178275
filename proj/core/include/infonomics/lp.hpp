#pragma once

// Dense two-phase simplex with Bland's rule. Instances here are tiny (a few
// hundred variables at most), so auditability beats speed: the same code runs
// over double and over exact rationals.

#include "infonomics/scalar.hpp"

#include <cstddef>
#include <vector>

namespace infonomics {

enum class Sense { LessEq, Equal, GreaterEq };
enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class T>
struct LpConstraint {
    std::vector<T> coef;
    Sense sense = Sense::Equal;
    T rhs{0};
};

// maximize objective . x  subject to constraints, x >= 0.
// An empty objective means a pure feasibility problem.
template <class T>
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<T> objective;
    std::vector<LpConstraint<T>> constraints;

    explicit LinearProgram(std::size_t n = 0) : num_vars(n) {}
    void add(std::vector<T> coef, Sense sense, T rhs);
};

template <class T>
struct LpOptions {
    T pivot_tol;      // entries with |a| <= pivot_tol are treated as zero
    T feasible_tol;   // phase-one optimum below -feasible_tol means infeasible
    std::size_t max_pivots = 100000;

    static LpOptions defaults() {
        if constexpr (ScalarTraits<T>::exact)
            return {T(0), T(0), 100000};
        else
            return {T(1e-11), T(1e-9), 100000};
    }
};

template <class T>
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    T value{0};
    std::vector<T> x;
    std::size_t pivots = 0;
};

template <class T>
LpSolution<T> solve_lp(const LinearProgram<T>& lp, const LpOptions<T>& opt = LpOptions<T>::defaults());

extern template struct LinearProgram<double>;
extern template struct LinearProgram<Rational>;
extern template LpSolution<double> solve_lp(const LinearProgram<double>&, const LpOptions<double>&);
extern template LpSolution<Rational> solve_lp(const LinearProgram<Rational>&, const LpOptions<Rational>&);

}  // namespace infonomics
