#include "infonomics/blackwell.hpp"

#include "infonomics/error.hpp"

#include <algorithm>
#include <cmath>

namespace infonomics {

template <class T>
DecisionProblem<T>::DecisionProblem(std::vector<std::string> a, Matrix<T> u) : actions(std::move(a)), utility(std::move(u)) {
    if (utility.empty()) throw ValidationError("decision problem has no actions");
    if (actions.size() != utility.size()) throw ValidationError("action labels do not match utility rows");
    for (const auto& row : utility) {
        if (row.size() != utility.front().size() || row.empty()) throw ValidationError("utility table is ragged");
        if constexpr (!ScalarTraits<T>::exact)
            for (const auto& v : row)
                if (!std::isfinite(v)) throw ValidationError("utility table has a non-finite entry");
    }
}

template <class T>
DecisionProblem<T>::DecisionProblem(Matrix<T> u) {
    // Name the actions before the table moves; argument order is unspecified.
    std::vector<std::string> a;
    for (std::size_t i = 0; i < u.size(); ++i) a.push_back("a" + std::to_string(i));
    *this = DecisionProblem(std::move(a), std::move(u));
}

namespace {

// Solves q M = target over row-stochastic M (rows = q's realizations).
template <class T>
std::optional<GarblingCertificate<T>> markov_solve(const Matrix<T>& q, const Matrix<T>& target,
                                                   const LpOptions<T>& opt) {
    const std::size_t ns = q.size();
    if (ns == 0 || target.size() != ns) throw ValidationError("signals disagree on the number of states");
    const std::size_t nr = q.front().size(), nc = target.front().size();
    const std::size_t nv = nr * nc;
    auto var = [nc](std::size_t r, std::size_t c) { return r * nc + c; };
    LinearProgram<T> lp(nv);
    for (std::size_t r = 0; r < nr; ++r) {
        std::vector<T> row(nv, T(0));
        for (std::size_t c = 0; c < nc; ++c) row[var(r, c)] = 1;
        lp.add(std::move(row), Sense::Equal, T(1));
    }
    for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t c = 0; c < nc; ++c) {
            std::vector<T> row(nv, T(0));
            for (std::size_t r = 0; r < nr; ++r) row[var(r, c)] = q[s][r];
            lp.add(std::move(row), Sense::Equal, target[s][c]);
        }
    lp.objective.resize(nv);
    // Convex weights favouring early cells pick a deterministic vertex; linear
    // weights tie between kernels that keep different coordinates.
    for (std::size_t k = 0; k < nv; ++k) lp.objective[k] = T(static_cast<long>((nv - k) * (nv - k)));
    auto sol = solve_lp(lp, opt);
    if (sol.status != LpStatus::Optimal) return std::nullopt;
    GarblingCertificate<T> cert;
    cert.kernel.assign(nr, std::vector<T>(nc));
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) cert.kernel[r][c] = sol.x[var(r, c)];
    for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t c = 0; c < nc; ++c) {
            T acc(0);
            for (std::size_t r = 0; r < nr; ++r) acc += q[s][r] * cert.kernel[r][c];
            cert.residual = std::max(cert.residual, std::abs(to_double(T(acc - target[s][c]))));
        }
    return cert;
}

template <class T>
T expected_utility(const std::vector<T>& weights, const std::vector<T>& utility_row) {
    T v(0);
    for (std::size_t s = 0; s < weights.size(); ++s) v += weights[s] * utility_row[s];
    return v;
}

}  // namespace

template <class T>
std::optional<GarblingCertificate<T>> garbling_test(const SignalStructure<T>& q, const SignalStructure<T>& p,
                                                    const LpOptions<T>& opt) {
    if (q.num_states() != p.num_states()) throw ValidationError("signals disagree on the number of states");
    return markov_solve(q.matrix, p.matrix, opt);
}

template <class T>
DecisionValue<T> decision_value(const std::vector<T>& prior, const SignalStructure<T>& signal,
                                const DecisionProblem<T>& problem) {
    if (prior.size() != signal.num_states() || problem.utility.front().size() != prior.size())
        throw ValidationError("prior, signal and decision problem disagree on the number of states");
    DecisionValue<T> out;
    for (std::size_t a = 0; a < problem.num_actions(); ++a) {
        T v = expected_utility(prior, problem.utility[a]);
        if (a == 0 || v > out.no_info) out.no_info = v;
    }
    for (std::size_t x = 0; x < signal.num_realizations(); ++x) {
        std::vector<T> joint(prior.size());
        for (std::size_t s = 0; s < prior.size(); ++s) joint[s] = prior[s] * signal.matrix[s][x];
        T best(0);
        for (std::size_t a = 0; a < problem.num_actions(); ++a) {
            T v = expected_utility(joint, problem.utility[a]);
            if (a == 0 || v > best) best = v;
        }
        out.gross += best;
    }
    out.value = out.gross - out.no_info;
    return out;
}

template <class T>
std::optional<Matrix<T>> feasible_test(const SignalStructure<T>& signal, const Matrix<T>& d, const LpOptions<T>& opt) {
    if (d.size() != signal.num_states()) throw ValidationError("action map needs one row per state");
    for (const auto& row : d) {
        if (row.size() != d.front().size() || row.empty()) throw ValidationError("action map is ragged");
        T total(0);
        for (const auto& v : row) {
            if (v < 0) throw ValidationError("action map has a negative entry");
            total += v;
        }
        if (abs_value(T(total - 1)) > T(1e-9)) throw ValidationError("action map rows must sum to 1");
    }
    auto cert = markov_solve(signal.matrix, d, opt);
    if (!cert) return std::nullopt;
    return cert->kernel;
}

template <class T>
std::optional<MpsCertificate<T>> mps_test(const BeliefDistribution<T>& f, const BeliefDistribution<T>& g,
                                          const LpOptions<T>& opt) {
    if (f.size() == 0 || g.size() == 0) throw ValidationError("empty belief distribution");
    const std::size_t dim = f.support.front().size();
    for (const auto& b : f.support)
        if (b.size() != dim) throw ValidationError("beliefs live on different simplices");
    for (const auto& b : g.support)
        if (b.size() != dim) throw ValidationError("beliefs live on different simplices");
    const std::size_t ng = g.size(), nf = f.size(), nv = ng * nf;
    auto var = [nf](std::size_t i, std::size_t j) { return i * nf + j; };
    LinearProgram<T> lp(nv);
    for (std::size_t i = 0; i < ng; ++i) {
        std::vector<T> row(nv, T(0));
        for (std::size_t j = 0; j < nf; ++j) row[var(i, j)] = 1;
        lp.add(std::move(row), Sense::Equal, T(1));
        // Barycenter of the spread equals the original point. The last coordinate
        // is implied by the others and the row sum.
        for (std::size_t k = 0; k + 1 < dim; ++k) {
            std::vector<T> bar(nv, T(0));
            for (std::size_t j = 0; j < nf; ++j) bar[var(i, j)] = f.support[j][k];
            lp.add(std::move(bar), Sense::Equal, g.support[i][k]);
        }
    }
    for (std::size_t j = 0; j < nf; ++j) {
        std::vector<T> row(nv, T(0));
        for (std::size_t i = 0; i < ng; ++i) row[var(i, j)] = g.weights[i];
        lp.add(std::move(row), Sense::Equal, f.weights[j]);
    }
    lp.objective.resize(nv);
    // Convex weights favouring early cells pick a deterministic vertex; linear
    // weights tie between kernels that keep different coordinates.
    for (std::size_t k = 0; k < nv; ++k) lp.objective[k] = T(static_cast<long>((nv - k) * (nv - k)));
    auto sol = solve_lp(lp, opt);
    if (sol.status != LpStatus::Optimal) return std::nullopt;
    MpsCertificate<T> cert;
    cert.kernel.assign(ng, std::vector<T>(nf));
    for (std::size_t i = 0; i < ng; ++i)
        for (std::size_t j = 0; j < nf; ++j) cert.kernel[i][j] = sol.x[var(i, j)];
    for (std::size_t j = 0; j < nf; ++j) {
        T push(0);
        for (std::size_t i = 0; i < ng; ++i) push += g.weights[i] * cert.kernel[i][j];
        cert.residual = std::max(cert.residual, std::abs(to_double(T(push - f.weights[j]))));
    }
    for (std::size_t i = 0; i < ng; ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            T bar(0);
            for (std::size_t j = 0; j < nf; ++j) bar += cert.kernel[i][j] * f.support[j][k];
            cert.residual = std::max(cert.residual, std::abs(to_double(T(bar - g.support[i][k]))));
        }
    return cert;
}

template <class T>
bool convex_order_test(const BeliefDistribution<T>& f, const BeliefDistribution<T>& g, const LpOptions<T>& opt) {
    return mps_test(f, g, opt).has_value();
}

template <class T>
BlackwellComparison<T> blackwell_compare(const std::vector<T>& prior, const SignalStructure<T>& first,
                                         const SignalStructure<T>& second, double gap_tol) {
    if (prior.size() != first.num_states() || prior.size() != second.num_states())
        throw ValidationError("prior and signals disagree on the number of states");
    BlackwellComparison<T> c;
    c.forward = garbling_test(first, second);
    c.reverse = garbling_test(second, first);
    c.first_dominates = c.forward.has_value();
    c.second_dominates = c.reverse.has_value();
    c.equivalent = c.first_dominates && c.second_dominates;
    c.incomparable = !c.first_dominates && !c.second_dominates;
    auto loose = LpOptions<T>::defaults();
    if constexpr (!ScalarTraits<T>::exact) loose.feasible_tol = gap_tol;
    if (c.first_dominates && !c.second_dominates) c.first_strictly = !garbling_test(second, first, loose).has_value();
    if (c.second_dominates && !c.first_dominates) c.second_strictly = !garbling_test(first, second, loose).has_value();
    return c;
}

#define INFONOMICS_BLACKWELL_INSTANTIATE(T)                                                                     \
    template struct DecisionProblem<T>;                                                                         \
    template std::optional<GarblingCertificate<T>> garbling_test(const SignalStructure<T>&,                     \
                                                                 const SignalStructure<T>&, const LpOptions<T>&); \
    template DecisionValue<T> decision_value(const std::vector<T>&, const SignalStructure<T>&,                  \
                                             const DecisionProblem<T>&);                                        \
    template std::optional<Matrix<T>> feasible_test(const SignalStructure<T>&, const Matrix<T>&,                \
                                                    const LpOptions<T>&);                                       \
    template std::optional<MpsCertificate<T>> mps_test(const BeliefDistribution<T>&, const BeliefDistribution<T>&, \
                                                       const LpOptions<T>&);                                    \
    template bool convex_order_test(const BeliefDistribution<T>&, const BeliefDistribution<T>&,                 \
                                    const LpOptions<T>&);                                                       \
    template BlackwellComparison<T> blackwell_compare(const std::vector<T>&, const SignalStructure<T>&,         \
                                                      const SignalStructure<T>&, double);

INFONOMICS_BLACKWELL_INSTANTIATE(double)
INFONOMICS_BLACKWELL_INSTANTIATE(Rational)

}  // namespace infonomics
