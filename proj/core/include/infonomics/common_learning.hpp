#pragma once

// Common q-belief of the parameter for two agents with private iid signals.
//
// Given the parameter, the agents' histories matter only through the multiset
// of per-period signal pairs, and each agent's posterior over that multiset
// depends only on their own counts. The belief operators are therefore exact on
// the finite space (theta, multiset of pairs), which is what gets enumerated.

#include "infonomics/signals.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace infonomics {

struct TwoAgentSignalModel {
    std::vector<std::string> thetas;
    std::vector<Matrix<double>> joint;  // joint[theta][i][j] = P(x1 = i, x2 = j | theta)

    void validate() const;
    std::size_t num_thetas() const { return joint.size(); }
    std::size_t num_x1() const { return joint.front().size(); }
    std::size_t num_x2() const { return joint.front().front().size(); }
    std::vector<double> marginal1(std::size_t theta) const;
    std::vector<double> marginal2(std::size_t theta) const;
};

// Per-period signals phi x psi, independent across agents given theta.
TwoAgentSignalModel independent_model(const Matrix<double>& phi, const Matrix<double>& psi);
// Both agents see the same realization.
TwoAgentSignalModel public_model(const Matrix<double>& phi);

// Email-game style structure: level m = 0 w.p. theta, m >= 1 w.p.
// eps (1-eps)^(m-1) (1-theta); agent 1 sees ceil(m/2), agent 2 sees floor(m/2).
// Levels above `levels` are lumped into the top level.
TwoAgentSignalModel email_twist_model(double theta_low, double theta_high, double eps, std::size_t levels);

struct ContagionDiagnostics {
    Matrix<double> m1;   // P(x2 = j | x1 = i)
    Matrix<double> m2;   // P(x1 = i | x2 = j)
    Matrix<double> m12;  // m1 * m2, a Markov chain on agent-1 signals
    double row_sum_error = 0.0;
    double stationarity_error = 0.0;  // |phi m12 - phi|_inf
};

// Rows for signals with zero marginal probability are left at zero.
ContagionDiagnostics contagion_diagnostics(const TwoAgentSignalModel& model, std::size_t theta);

struct CommonLearningOptions {
    std::size_t k_max = 50;
    std::size_t max_states = 6'000'000;
    double belief_tol = 1e-12;
};

struct CommonLearningReport {
    std::size_t theta = 0;
    std::size_t horizon = 0;
    double q = 0.0;
    std::size_t num_states = 0;
    // Exact probabilities under P_theta.
    double prob_individual1 = 0.0;  // B_1^q(theta)
    double prob_individual2 = 0.0;
    double prob_both = 0.0;         // B^q(theta)
    double prob_common = 0.0;       // C^q(theta)
    std::size_t categories = 0;     // signal pairs with positive probability
    bool stabilized = false;        // iteration cycled before k_max
    std::string label;              // truncation notes
    // Monte-Carlo over sampled histories (empty when n_paths == 0).
    std::size_t n_paths = 0;
    double sim_individual1 = 0.0, sim_individual2 = 0.0, sim_common = 0.0;
    std::vector<ContagionDiagnostics> diagnostics;  // one per theta
};

CommonLearningReport common_learning_sim(const TwoAgentSignalModel& model, const std::vector<double>& prior,
                                         std::size_t theta, std::size_t horizon, double q, std::size_t n_paths = 0,
                                         std::uint64_t seed = 0, const CommonLearningOptions& opt = {});

}  // namespace infonomics
