#pragma once

// Rubinstein's email game on a truncated state space.
//
// State k = 0 is (a,0,0); for t >= 1, state 2t-1 is (b,t,t-1) and state 2t is
// (b,t,t). States run up to (b,T,T) with T = t_max + 1; that last state absorbs
// all remaining tail mass, so every block stays self-contained.

#include "infonomics/knowledge.hpp"

#include <string>
#include <vector>

namespace infonomics {

struct EmailGameParams {
    double p_b = 0.0;   // prior probability of parameter b
    double eps = 0.0;   // per-message loss probability
    double L = 0.0;
    double M = 0.0;
    int t_max = 1;      // types 0..t_max are certified

    void validate() const;  // 1-p > 1/2, L > M > 0, 0 < eps < 1, t_max >= 1
};

enum class EmailAction { A, B };

// u_i(own, opponent, parameter) for either player; the game is symmetric.
double email_payoff(const EmailGameParams& g, EmailAction own, EmailAction other, bool state_b);

PartitionModel<double> email_game_model(const EmailGameParams& g);

struct EmailInductionStep {
    int agent = 0;            // 0 for player 1, 1 for player 2
    int type = 0;
    double posterior_known;   // mass on states where the opponent's action is already pinned to A
    double worst_payoff_A;    // lower bound on E[u(A)] over unresolved opponent types
    double best_payoff_B;     // upper bound on E[u(B)]
    bool strict = false;      // worst_payoff_A > best_payoff_B
    bool assumed = false;     // player 1 of type 0 plays A by hypothesis
};

struct EmailGameEquilibrium {
    std::vector<EmailAction> player1;  // types 0..t_max
    std::vector<EmailAction> player2;
    std::vector<EmailInductionStep> steps;
    bool all_strict = false;
    int certified_through = 0;         // highest type certified for both players
    double z = 0.0;                    // eps / (eps + (1-eps) eps)
    double player2_type0_posterior = 0.0;  // posterior on (a,0,0) for player 2 of type 0
};

// Runs the induction s1(0), s2(0), s1(1), s2(1), ... up to t_max, starting from
// the hypothesis s1(0) = A (player 1 plays A when the parameter is a). At each step
// opponent types not yet resolved are treated adversarially, so "strict" means
// A is the unique best reply whatever those types do.
EmailGameEquilibrium email_game_equilibrium(const EmailGameParams& g);

}  // namespace infonomics
