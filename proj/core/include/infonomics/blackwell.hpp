#pragma once

// Certificates for the Blackwell order. Every positive answer carries the
// Markov kernel that proves it, found by a small linear program.

#include "infonomics/lp.hpp"
#include "infonomics/signals.hpp"

#include <optional>
#include <string>
#include <vector>

namespace infonomics {

template <class T>
struct DecisionProblem {
    std::vector<std::string> actions;
    Matrix<T> utility;  // utility[action][state]

    DecisionProblem() = default;
    DecisionProblem(std::vector<std::string> actions, Matrix<T> utility);
    explicit DecisionProblem(Matrix<T> utility);
    std::size_t num_actions() const { return utility.size(); }
};

template <class T>
struct GarblingCertificate {
    Matrix<T> kernel;       // rows: realizations of the finer signal
    double residual = 0.0;  // max |Q M - P|
};

// Is p a garbling of q, i.e. is there a Markov M with q M = p?
// Among feasible kernels the LP prefers mass on earlier (row, column) cells,
// which makes the returned vertex deterministic.
template <class T>
std::optional<GarblingCertificate<T>> garbling_test(const SignalStructure<T>& q, const SignalStructure<T>& p,
                                                    const LpOptions<T>& opt = LpOptions<T>::defaults());

template <class T>
struct DecisionValue {
    T gross{0};    // sum_x P(x) max_a E[u(a, theta) | x]
    T no_info{0};  // max_a E_prior[u(a, theta)]
    T value{0};    // gross - no_info
};

template <class T>
DecisionValue<T> decision_value(const std::vector<T>& prior, const SignalStructure<T>& signal,
                                const DecisionProblem<T>& problem);

// Is the state-to-action map d (rows stochastic, d[state][action]) feasible under
// the signal? Returns the mixing kernel alpha[realization][action].
template <class T>
std::optional<Matrix<T>> feasible_test(const SignalStructure<T>& signal, const Matrix<T>& d,
                                       const LpOptions<T>& opt = LpOptions<T>::defaults());

template <class T>
struct MpsCertificate {
    // kernel[i][j]: probability that G's support point i spreads to F's point j.
    Matrix<T> kernel;
    double residual = 0.0;  // max violation of marginal and barycenter constraints
};

// Is F a mean-preserving spread of G?
template <class T>
std::optional<MpsCertificate<T>> mps_test(const BeliefDistribution<T>& f, const BeliefDistribution<T>& g,
                                          const LpOptions<T>& opt = LpOptions<T>::defaults());

// F dominates G in the convex order; decided through the spread certificate.
template <class T>
bool convex_order_test(const BeliefDistribution<T>& f, const BeliefDistribution<T>& g,
                       const LpOptions<T>& opt = LpOptions<T>::defaults());

template <class T>
struct BlackwellComparison {
    bool first_dominates = false;   // second is a garbling of first
    bool second_dominates = false;  // first is a garbling of second
    bool equivalent = false;
    bool incomparable = false;
    bool first_strictly = false;    // forward feasible, reverse infeasible under the gap guard
    bool second_strictly = false;
    std::optional<GarblingCertificate<T>> forward;  // kernel taking first to second
    std::optional<GarblingCertificate<T>> reverse;
};

// In float mode the reverse direction is re-tested at `gap_tol` before a
// strict ranking is reported.
template <class T>
BlackwellComparison<T> blackwell_compare(const std::vector<T>& prior, const SignalStructure<T>& first,
                                         const SignalStructure<T>& second, double gap_tol = 1e-7);

#define INFONOMICS_BLACKWELL_EXTERN(T)                                                                           \
    extern template struct DecisionProblem<T>;                                                                   \
    extern template std::optional<GarblingCertificate<T>> garbling_test(const SignalStructure<T>&,               \
                                                                        const SignalStructure<T>&,               \
                                                                        const LpOptions<T>&);                    \
    extern template DecisionValue<T> decision_value(const std::vector<T>&, const SignalStructure<T>&,            \
                                                    const DecisionProblem<T>&);                                  \
    extern template std::optional<Matrix<T>> feasible_test(const SignalStructure<T>&, const Matrix<T>&,          \
                                                           const LpOptions<T>&);                                 \
    extern template std::optional<MpsCertificate<T>> mps_test(const BeliefDistribution<T>&,                      \
                                                              const BeliefDistribution<T>&, const LpOptions<T>&); \
    extern template bool convex_order_test(const BeliefDistribution<T>&, const BeliefDistribution<T>&,           \
                                           const LpOptions<T>&);                                                 \
    extern template BlackwellComparison<T> blackwell_compare(const std::vector<T>&, const SignalStructure<T>&,   \
                                                             const SignalStructure<T>&, double);

INFONOMICS_BLACKWELL_EXTERN(double)
INFONOMICS_BLACKWELL_EXTERN(Rational)
#undef INFONOMICS_BLACKWELL_EXTERN

}  // namespace infonomics
