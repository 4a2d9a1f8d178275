#pragma once

// Finite signal structures, Bayes' rule, and distributions over posteriors.

#include "infonomics/scalar.hpp"

#include <cstddef>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace infonomics {

using Belief = std::vector<double>;

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
struct SignalStructure {
    std::vector<std::string> states;
    std::vector<std::string> realizations;
    Matrix<T> matrix;  // matrix[state][realization]

    SignalStructure() = default;
    // Validates shape, nonnegativity and unit row sums (within tol).
    SignalStructure(std::vector<std::string> states, std::vector<std::string> realizations, Matrix<T> matrix,
                    double tol = 1e-12);
    // Unlabeled structure: states s0.., realizations x0..
    explicit SignalStructure(Matrix<T> matrix, double tol = 1e-12);

    std::size_t num_states() const { return matrix.size(); }
    std::size_t num_realizations() const { return matrix.empty() ? 0 : matrix.front().size(); }
};

template <class T>
struct BeliefDistribution {
    Matrix<T> support;      // each row a belief over states
    std::vector<T> weights;

    std::size_t size() const { return weights.size(); }
    std::vector<T> mean() const;
};

template <class T>
void validate_belief(const std::vector<T>& belief, double tol = 1e-12);

template <class T>
std::vector<T> realization_probabilities(const std::vector<T>& prior, const SignalStructure<T>& sig);

// Throws ZeroProbabilityError when the realization has zero marginal probability.
template <class T>
std::vector<T> posterior_update(const std::vector<T>& prior, const SignalStructure<T>& sig, std::size_t realization);

// One support point per positive-probability realization; realizations with
// equal posteriors (within merge_tol) are merged.
template <class T>
BeliefDistribution<T> induced_posteriors(const std::vector<T>& prior, const SignalStructure<T>& sig,
                                         double merge_tol = 1e-10);

template <class T>
bool is_bayes_plausible(const std::vector<T>& prior, const BeliefDistribution<T>& dist, double tol = 1e-12);

// sigma(x | theta) = q_x(theta) tau(q_x) / p(theta); one realization per support point.
template <class T>
SignalStructure<T> signal_from_posteriors(const std::vector<T>& prior, const BeliefDistribution<T>& dist,
                                          double tol = 1e-12);

// True when the two distributions agree up to ordering of support points.
template <class T>
bool same_distribution(const BeliefDistribution<T>& a, const BeliefDistribution<T>& b, double tol = 1e-10);

template <class T>
SignalStructure<T> uninformative_signal(std::size_t num_states);

template <class T>
SignalStructure<T> revealing_signal(std::size_t num_states);

#define INFONOMICS_SIGNALS_EXTERN(T)                                                                          \
    extern template struct SignalStructure<T>;                                                                \
    extern template struct BeliefDistribution<T>;                                                             \
    extern template void validate_belief(const std::vector<T>&, double);                                      \
    extern template std::vector<T> realization_probabilities(const std::vector<T>&, const SignalStructure<T>&); \
    extern template std::vector<T> posterior_update(const std::vector<T>&, const SignalStructure<T>&, std::size_t); \
    extern template BeliefDistribution<T> induced_posteriors(const std::vector<T>&, const SignalStructure<T>&, double); \
    extern template bool is_bayes_plausible(const std::vector<T>&, const BeliefDistribution<T>&, double);     \
    extern template SignalStructure<T> signal_from_posteriors(const std::vector<T>&, const BeliefDistribution<T>&, \
                                                              double);                                        \
    extern template bool same_distribution(const BeliefDistribution<T>&, const BeliefDistribution<T>&, double); \
    extern template SignalStructure<T> uninformative_signal(std::size_t);                                     \
    extern template SignalStructure<T> revealing_signal(std::size_t);

INFONOMICS_SIGNALS_EXTERN(double)
INFONOMICS_SIGNALS_EXTERN(Rational)
#undef INFONOMICS_SIGNALS_EXTERN

// ---- fairness of binary scoring rules --------------------------------------

// Joint distribution over (covariate, group, type) with a binary score per covariate.
struct PopulationModel {
    // mass[c][g][theta], g in {0,1}, theta in {0,1}
    std::vector<std::array<std::array<double, 2>, 2>> mass;
    std::vector<int> score;  // score[c] in {0,1}

    void validate(double tol = 1e-12) const;
};

struct GroupRates {
    std::optional<double> base_rate;  // p_g = P(theta=1 | g)
    std::optional<double> fp;         // P(S=1 | theta=0, g)
    std::optional<double> fn;         // P(S=0 | theta=1, g)
    std::optional<double> ppv;        // P(theta=1 | S=1, g)
    std::optional<double> npv_complement;  // P(theta=1 | S=0, g)
    // |FP - p/(1-p) (1-PPV)/PPV (1-FN)|; empty when any factor is undefined.
    std::optional<double> identity_residual;
};

struct FairnessReport {
    std::array<GroupRates, 2> groups;
    // A criterion is reported only when both sides are defined.
    std::optional<bool> equal_fp;
    std::optional<bool> equal_fn;
    std::optional<bool> calibrated;
    bool base_rates_differ = false;
    // All three criteria hold although base rates differ; possible only at a
    // degenerate score (PPV = 1 or FP = 0 style edge cases).
    bool all_three_with_unequal_base_rates = false;
};

FairnessReport fairness_report(const PopulationModel& pop, double tol = 1e-12);

}  // namespace infonomics
