#pragma once

// Model uncertainty and misspecified learning: asymptotic beliefs under
// uncertain signal precision, Berk limits, and Berk-Nash equilibrium.

#include "infonomics/signals.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace infonomics {

// Two agents, binary parameter {A, B}, symmetric binary signal with unknown
// precision gamma drawn from a step density around gamma_i.
struct AcyModel {
    std::array<double, 2> prior_a{0.5, 0.5};
    std::array<double, 2> gamma{0.7, 0.8};
    double eps = 0.1;
    double lambda = 0.05;

    void validate() const;
    // lambda < |gamma_1 - gamma_2| and gamma_i - lambda/2 > 1/2.
    bool small_regime() const;
};

double acy_density(const AcyModel& m, std::size_t agent, double gamma);
// g(1 - rho) / g(rho)
double acy_likelihood_ratio(const AcyModel& m, std::size_t agent, double rho);
double acy_asymptotic_belief(const AcyModel& m, std::size_t agent, double rho);

struct AcyProfile {
    std::vector<double> rho;
    std::vector<double> belief1, belief2;
    std::vector<double> gap;  // |belief1 - belief2|
    bool small_regime = false;
    bool positive_everywhere = false;
};

// Throws ValidationError when the two agents share the same gamma.
AcyProfile acy_disagreement_profile(const AcyModel& m, const std::vector<double>& rho);

struct BerkLimit {
    std::vector<double> divergence;   // D(f* || f_theta), +inf allowed
    std::vector<std::size_t> argmin;  // ties within tol
};

// Throws NumericalError when every divergence is infinite.
BerkLimit berk_limit(const Matrix<double>& densities, const std::vector<double>& truth, double tol = 1e-12);

struct BerkSimulation {
    std::size_t n_paths = 0;
    std::size_t horizon = 0;
    double threshold = 0.0;
    double fraction = 0.0;                 // paths with argmin mass >= threshold at the horizon
    std::vector<double> final_argmin_mass; // per path
};

// Data drawn from `truth`; the agent updates a prior supported on `densities`.
BerkSimulation berk_simulation(const std::vector<double>& prior, const Matrix<double>& densities,
                               const std::vector<double>& truth, std::size_t horizon, std::size_t n_paths,
                               double threshold, std::uint64_t seed);

// Single agent with signals S, actions A, consequences Y and a misspecified
// family of consequence tables.
struct SubjectiveModel {
    std::vector<std::string> states, signals, actions, consequences, thetas;
    Matrix<double> prior;                       // prior[omega][s]
    std::vector<std::vector<std::size_t>> feedback;  // feedback[a][omega] -> y
    Matrix<double> utility;                     // utility[a][y]
    // q_theta[theta][s][a][y]
    std::vector<std::vector<Matrix<double>>> q_theta;

    void validate() const;
};

// Strategy sigma[s][a], rows stochastic.
using Strategy = Matrix<double>;

struct BerkNashReport {
    std::vector<Matrix<double>> objective;  // objective[s][a][y]
    std::vector<double> divergence;         // K(sigma, theta); +inf allowed
    std::vector<std::size_t> minimizers;    // Theta*(sigma)
    std::optional<std::vector<double>> mu;  // supporting belief over all thetas
    Matrix<double> payoff;                  // expected payoff[s][a] under mu (empty without one)
    bool equilibrium = false;
};

BerkNashReport berk_nash_check_single(const SubjectiveModel& m, const Strategy& sigma, double tol = 1e-12);

struct BerkNashEquilibrium {
    std::vector<std::size_t> action;  // pure action per signal
    BerkNashReport report;
};

std::vector<BerkNashEquilibrium> berk_nash_enumerate_single(const SubjectiveModel& m, double tol = 1e-12);

// Simultaneous-move game. Signal and action profiles are flattened row-major
// with player 0 most significant.
struct PlayerModel {
    std::vector<std::string> signals, actions, consequences, thetas;
    Matrix<double> utility;                          // utility[a_i][y_i]
    std::vector<std::vector<Matrix<double>>> q_theta;  // q_theta[theta][s_i][a_i][y_i]
    std::vector<std::vector<std::size_t>> feedback;  // feedback[action profile][omega] -> y_i
};

struct GameModel {
    std::vector<std::string> states;
    std::vector<PlayerModel> players;
    Matrix<double> prior;  // prior[omega][signal profile]

    void validate() const;
    std::size_t num_signal_profiles() const;
    std::size_t num_action_profiles() const;
};

GameModel as_game(const SubjectiveModel& m);

struct GameBerkNashReport {
    std::vector<BerkNashReport> players;
    bool equilibrium = false;
};

GameBerkNashReport berk_nash_check_game(const GameModel& g, const std::vector<Strategy>& profile, double tol = 1e-12);

}  // namespace infonomics
