#include "infonomics/lp.hpp"

#include "infonomics/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace infonomics {

template <class T>
void LinearProgram<T>::add(std::vector<T> coef, Sense sense, T rhs) {
    if (coef.size() != num_vars) throw ValidationError("LP constraint has wrong width");
    constraints.push_back({std::move(coef), sense, std::move(rhs)});
}

namespace {

template <class T>
class Tableau {
public:
    // rows x (cols + 1); last column is the right-hand side.
    std::vector<std::vector<T>> a;
    std::vector<std::size_t> basis;
    std::size_t cols = 0;
    std::size_t pivots = 0;

    void pivot(std::size_t r, std::size_t c) {
        ++pivots;
        T inv = T(1) / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            T f = a[i][c];
            for (std::size_t j = 0; j <= cols; ++j)
                if (a[r][j] != 0) a[i][j] -= f * a[r][j];
            a[i][c] = 0;
        }
        basis[r] = c;
        if constexpr (!ScalarTraits<T>::exact) {
            // Round-off cleanup: flush specks and keep the basic solution nonnegative.
            for (auto& row : a) {
                for (auto& v : row)
                    if (std::abs(v) < 1e-14) v = 0;
                if (row[cols] < 0 && row[cols] > -1e-9) row[cols] = 0;
            }
        }
    }

    // Maximizes cost . x over columns flagged in `allowed`. Returns false when unbounded.
    bool optimize(const std::vector<T>& cost, const std::vector<bool>& allowed, const LpOptions<T>& opt) {
        for (;;) {
            if (pivots > opt.max_pivots) throw NumericalError("simplex pivot budget exhausted");
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols && enter == cols; ++j) {
                if (!allowed[j]) continue;
                T d = cost[j];
                for (std::size_t i = 0; i < a.size(); ++i)
                    if (a[i][j] != 0) d -= cost[basis[i]] * a[i][j];
                if (d > opt.pivot_tol) enter = j;
            }
            if (enter == cols) return true;
            std::size_t leave = ratio_test(enter, opt);
            if (leave == a.size()) return false;
            pivot(leave, enter);
        }
    }

    // Exact mode: minimum ratio, ties to the lowest basic index (Bland).
    // Floating mode: Harris two-pass test, which relaxes the bounds by the
    // feasibility tolerance and then takes the largest pivot among the rows
    // that fit, so a tiny pivot is never chosen over a sound one.
    std::size_t ratio_test(std::size_t enter, const LpOptions<T>& opt) const {
        std::size_t leave = a.size();
        if constexpr (ScalarTraits<T>::exact) {
            T best{0};
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (!(a[i][enter] > opt.pivot_tol)) continue;
                T ratio = a[i][cols] / a[i][enter];
                if (leave == a.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
        } else {
            const T relax = opt.feasible_tol;
            T bound = std::numeric_limits<T>::infinity();
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i][enter] > opt.pivot_tol) bound = std::min(bound, (a[i][cols] + relax) / a[i][enter]);
            T biggest{0};
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (!(a[i][enter] > opt.pivot_tol) || a[i][cols] / a[i][enter] > bound) continue;
                if (a[i][enter] > biggest) {
                    biggest = a[i][enter];
                    leave = i;
                }
            }
        }
        return leave;
    }

    T value(const std::vector<T>& cost) const {
        T v{0};
        for (std::size_t i = 0; i < a.size(); ++i) v += cost[basis[i]] * a[i][cols];
        return v;
    }
};

}  // namespace

template <class T>
LpSolution<T> solve_lp(const LinearProgram<T>& lp, const LpOptions<T>& opt) {
    const std::size_t n = lp.num_vars;
    const std::size_t m = lp.constraints.size();
    if (!lp.objective.empty() && lp.objective.size() != n) throw ValidationError("LP objective has wrong width");

    std::size_t n_slack = 0, n_art = 0;
    for (const auto& c : lp.constraints) {
        bool flip = c.rhs < 0;
        Sense s = c.sense;
        if (flip && s != Sense::Equal) s = (s == Sense::LessEq) ? Sense::GreaterEq : Sense::LessEq;
        if (s != Sense::Equal) ++n_slack;
        if (s != Sense::LessEq) ++n_art;
    }
    const std::size_t art_begin = n + n_slack;
    Tableau<T> t;
    t.cols = n + n_slack + n_art;
    t.a.assign(m, std::vector<T>(t.cols + 1, T(0)));
    t.basis.assign(m, 0);
    std::size_t next_slack = n, next_art = art_begin;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        bool flip = c.rhs < 0;
        Sense s = c.sense;
        if (flip && s != Sense::Equal) s = (s == Sense::LessEq) ? Sense::GreaterEq : Sense::LessEq;
        for (std::size_t j = 0; j < n; ++j) t.a[i][j] = flip ? T(-c.coef[j]) : c.coef[j];
        t.a[i][t.cols] = flip ? T(-c.rhs) : c.rhs;
        if (s == Sense::LessEq) {
            t.a[i][next_slack] = 1;
            t.basis[i] = next_slack++;
        } else {
            if (s == Sense::GreaterEq) t.a[i][next_slack++] = -1;
            t.a[i][next_art] = 1;
            t.basis[i] = next_art++;
        }
    }

    LpSolution<T> out;
    std::vector<bool> allowed(t.cols, true);
    if (n_art > 0) {
        std::vector<T> phase1(t.cols, T(0));
        for (std::size_t j = art_begin; j < t.cols; ++j) phase1[j] = -1;
        t.optimize(phase1, allowed, opt);
        if (t.value(phase1) < -opt.feasible_tol) {
            out.status = LpStatus::Infeasible;
            out.pivots = t.pivots;
            return out;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        for (std::size_t i = 0; i < t.a.size();) {
            if (t.basis[i] < art_begin) {
                ++i;
                continue;
            }
            // Largest available pivot; a barely-nonzero one would wreck the tableau.
            std::size_t col = art_begin;
            T biggest = opt.pivot_tol;
            for (std::size_t j = 0; j < art_begin; ++j)
                if (abs_value(t.a[i][j]) > biggest) {
                    col = j;
                    biggest = abs_value(t.a[i][j]);
                }
            if (col < art_begin) {
                t.pivot(i, col);
                ++i;
            } else {
                t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(i));
                t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
        for (std::size_t j = art_begin; j < t.cols; ++j) allowed[j] = false;
    }

    std::vector<T> cost(t.cols, T(0));
    for (std::size_t j = 0; j < lp.objective.size(); ++j) cost[j] = lp.objective[j];
    if (!t.optimize(cost, allowed, opt)) {
        out.status = LpStatus::Unbounded;
        out.pivots = t.pivots;
        return out;
    }
    out.status = LpStatus::Optimal;
    out.x.assign(n, T(0));
    for (std::size_t i = 0; i < t.a.size(); ++i)
        if (t.basis[i] < n) out.x[t.basis[i]] = t.a[i][t.cols];
    out.value = T(0);
    for (std::size_t j = 0; j < lp.objective.size(); ++j) out.value += lp.objective[j] * out.x[j];
    out.pivots = t.pivots;
    return out;
}

template struct LinearProgram<double>;
template struct LinearProgram<Rational>;
template LpSolution<double> solve_lp(const LinearProgram<double>&, const LpOptions<double>&);
template LpSolution<Rational> solve_lp(const LinearProgram<Rational>&, const LpOptions<Rational>&);

}  // namespace infonomics
