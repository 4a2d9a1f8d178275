#pragma once

// Learning from iid signal streams: posterior paths, consistency and merging
// diagnostics, and the expected-disagreement ordering.

#include "infonomics/signals.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace infonomics {

struct LearningEnvironment {
    std::vector<double> params;   // numeric parameter values (grid)
    std::vector<double> prior;    // over params
    Matrix<double> density;       // density[theta][x] over finite realizations
    std::size_t truth = 0;        // index of the true parameter, for simulation
    std::size_t horizon = 0;

    void validate() const;
    std::size_t num_params() const { return params.size(); }
    std::size_t num_realizations() const { return density.empty() ? 0 : density.front().size(); }
    // Pairwise distinct rows.
    bool identified(double tol = 1e-12) const;
};

// Symmetric binary environment: two parameters with f_A = (q, 1-q), f_B = (1-q, q).
LearningEnvironment binary_environment(double q, double prior_a, std::size_t truth = 0, std::size_t horizon = 0);

// Row t is the posterior after the first t observations (row 0 is the prior).
// Updates run in log space. Throws when an observation has zero probability.
Matrix<double> sequential_posterior(const std::vector<double>& prior, const Matrix<double>& density,
                                    const std::vector<std::size_t>& observations);
Matrix<double> sequential_posterior(const LearningEnvironment& env, const std::vector<std::size_t>& observations);

// Draws `length` iid realizations from density[theta].
std::vector<std::size_t> sample_stream(const Matrix<double>& density, std::size_t theta, std::size_t length,
                                       std::uint64_t seed, std::uint64_t path);

struct QuantileRow {
    std::size_t t = 0;
    double q05 = 0.0, q50 = 0.0, q95 = 0.0;
};

struct ConsistencyReport {
    std::size_t n_paths = 0;
    std::size_t horizon = 0;
    double delta = 0.0;
    double fraction_concentrated = 0.0;  // share of paths with mass >= 1 - delta on the truth
    double mean_abs_g_error = 0.0;       // mean |E[g(theta) | X^T] - g(theta_0)|
    std::vector<QuantileRow> truth_mass; // posterior mass on the truth at checkpoints
};

// Paths are seeded from (seed, path index). Throws if the environment is not
// identified. `g` defaults to the identity on parameter values.
ConsistencyReport consistency_sim(const LearningEnvironment& env, std::size_t n_paths, std::size_t horizon,
                                  double delta, std::uint64_t seed,
                                  const std::function<double(double)>& g = nullptr);

struct MergingReport {
    std::size_t n_paths = 0;
    std::size_t horizon = 0;
    std::size_t depth = 0;
    // Sup over all events on the next `depth` realizations of the difference
    // between the two agents' predictive probabilities (total variation).
    std::vector<QuantileRow> discrepancy;
};

// Both agents see the same stream drawn under env.truth. Priors must share support.
MergingReport merging_sim(const LearningEnvironment& env, const std::vector<double>& prior2, std::size_t n_paths,
                          std::size_t horizon, std::uint64_t seed, std::size_t depth = 5);

struct KlsReport {
    double mu_a = 0.0, mu_b = 0.0;
    double mu_ab_x = 0.0, mu_ab_xt = 0.0;  // E_A[E_B(theta | X)], same for the garbled signal
    double mu_ba_x = 0.0, mu_ba_xt = 0.0;
    bool chain_ab = false;  // mu_a <= mu_ab(X) <= mu_ab(Xt) <= mu_b
    bool chain_ba = false;  // mu_a <= mu_ba(Xt) <= mu_ba(X) <= mu_b
    double garbling_residual = 0.0;
};

// Exact enumeration. Preconditions (throw ValidationError): both signals have
// MLRP in realization order, prior_b likelihood-ratio dominates prior_a, and
// xt is a garbling of x.
KlsReport kls_disagreement_check(const std::vector<double>& thetas, const std::vector<double>& prior_a,
                                 const std::vector<double>& prior_b, const SignalStructure<double>& x,
                                 const SignalStructure<double>& xt, double tol = 1e-12);

}  // namespace infonomics
