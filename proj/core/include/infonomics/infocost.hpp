#pragma once

// Entropy, KL divergence and information cost functionals. Natural logs.

#include "infonomics/error.hpp"
#include "infonomics/signals.hpp"

#include <functional>
#include <string>
#include <vector>

namespace infonomics {

double entropy(const std::vector<double>& p);
// Differential entropy of N(mu, var).
double entropy_gaussian(double var);

// D(p || q) = sum p ln(p/q). +infinity when p puts mass where q does not.
double kl(const std::vector<double>& p, const std::vector<double>& q);
double kl_gaussian_means(double mu_p, double mu_q, double var);

// Variance of the state under a belief; states take the given numeric values.
double belief_variance(const std::vector<double>& belief, const std::vector<double>& values);

// Expected reductions; both throw ValidationError when dist does not average to prior.
double cost_entropy_reduction(const std::vector<double>& prior, const BeliefDistribution<double>& dist,
                              double tol = 1e-9);
// State values default to 0, 1, ..., n-1.
double cost_variance_reduction(const std::vector<double>& prior, const BeliefDistribution<double>& dist,
                               std::vector<double> values = {}, double tol = 1e-9);

using BeliefFunction = std::function<double(const std::vector<double>&)>;

// D(p, q) = Phi(p) - Phi(q) + grad Phi(p) . (q - p), gradient by central
// differences along q - p. Throws ValidationError when Phi visibly fails
// concavity at the evaluation points.
double bregman(const BeliefFunction& phi, const std::vector<double>& p, const std::vector<double>& q,
               double step = 1e-6, double tol = 1e-9);
// Closed forms: entropy gives KL(q || p); variance gives (E_q - E_p)^2.
double bregman_entropy(const std::vector<double>& p, const std::vector<double>& q);
double bregman_variance(const std::vector<double>& p, const std::vector<double>& q,
                        const std::vector<double>& values);

// Piecewise-linear Phi on a grid over the first coordinate of a binary belief.
// Throws if the samples are not concave.
BeliefFunction binary_phi_from_table(std::vector<double> grid, std::vector<double> values, double tol = 1e-12);

enum class CostKind { EntropyReduction, VarianceReduction, BregmanOfPhi, Pst };

struct CostSpec {
    CostKind kind = CostKind::EntropyReduction;
    std::vector<double> state_values;  // variance reduction
    BeliefFunction phi;                // bregman-of-Phi
    Matrix<double> beta;               // PST coefficients beta[theta][theta']
    void validate(std::size_t num_states) const;
};

// Posterior-separable cost of a distribution over posteriors (all kinds but Pst).
double ups_cost(const CostSpec& spec, const std::vector<double>& prior, const BeliefDistribution<double>& dist);

// sum beta[t][t'] * KL(sigma_t || sigma_t'). Throws when a positive weight meets
// an infinite divergence.
double pst_cost(const SignalStructure<double>& signal, const Matrix<double>& beta);
// Same functional for X = theta + eps, eps ~ N(0, var_eps).
double pst_cost_gaussian(const std::vector<double>& thetas, const Matrix<double>& beta, double var_eps);

template <class T>
SignalStructure<T> product_signal(const SignalStructure<T>& a, const SignalStructure<T>& b) {
    if (a.num_states() != b.num_states()) throw ValidationError("product needs a shared state set");
    std::vector<std::string> labels;
    for (const auto& x : a.realizations)
        for (const auto& y : b.realizations) labels.push_back(x + "|" + y);
    Matrix<T> m(a.num_states());
    for (std::size_t s = 0; s < a.num_states(); ++s)
        for (const auto& pa : a.matrix[s])
            for (const auto& pb : b.matrix[s]) m[s].push_back(pa * pb);
    return SignalStructure<T>(a.states, std::move(labels), std::move(m));
}

// With probability alpha the realization of sigma, otherwise the null outcome.
template <class T>
SignalStructure<T> dilute(const SignalStructure<T>& sig, const T& alpha) {
    if (alpha < 0 || alpha > 1) throw ValidationError("dilution weight must lie in [0,1]");
    auto labels = sig.realizations;
    labels.push_back("null");
    Matrix<T> m = sig.matrix;
    for (auto& row : m) {
        for (auto& v : row) v *= alpha;
        row.push_back(T(1) - alpha);
    }
    return SignalStructure<T>(sig.states, std::move(labels), std::move(m));
}

}  // namespace infonomics
