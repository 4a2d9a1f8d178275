#include "infonomics/email_game.hpp"

#include "infonomics/error.hpp"

#include <algorithm>
#include <cmath>

namespace infonomics {

void EmailGameParams::validate() const {
    if (!(1.0 - p_b > 0.5) || !(p_b > 0.0)) throw ValidationError("email game needs 0 < p and 1 - p > 1/2");
    if (!(L > M && M > 0.0)) throw ValidationError("email game needs L > M > 0");
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("email game needs 0 < eps < 1");
    if (t_max < 1) throw ValidationError("email game needs t_max >= 1");
}

double email_payoff(const EmailGameParams& g, EmailAction own, EmailAction other, bool state_b) {
    if (own == EmailAction::A) return (!state_b && other == EmailAction::A) ? g.M : 0.0;
    if (other == EmailAction::A) return -g.L;
    return state_b ? g.M : 0.0;
}

namespace {

int last_state(const EmailGameParams& g) { return 2 * (g.t_max + 1); }

std::vector<double> email_prior(const EmailGameParams& g) {
    const int n = last_state(g) + 1;
    std::vector<double> prior(n);
    prior[0] = 1.0 - g.p_b;
    for (int k = 1; k < n - 1; ++k) prior[k] = g.p_b * g.eps * std::pow(1.0 - g.eps, k - 1);
    prior[n - 1] = g.p_b * std::pow(1.0 - g.eps, n - 2);
    return prior;
}

}  // namespace

PartitionModel<double> email_game_model(const EmailGameParams& g) {
    g.validate();
    const int T = g.t_max + 1;
    const int n = last_state(g) + 1;
    std::vector<std::string> labels(n);
    labels[0] = "(a,0,0)";
    for (int t = 1; t <= T; ++t) {
        labels[2 * t - 1] = "(b," + std::to_string(t) + "," + std::to_string(t - 1) + ")";
        labels[2 * t] = "(b," + std::to_string(t) + "," + std::to_string(t) + ")";
    }
    Partition p1{{0}}, p2{{0, 1}};
    for (int t = 1; t <= T; ++t) p1.push_back({std::size_t(2 * t - 1), std::size_t(2 * t)});
    for (int t = 1; t < T; ++t) p2.push_back({std::size_t(2 * t), std::size_t(2 * t + 1)});
    p2.push_back({std::size_t(2 * T)});
    return PartitionModel<double>(std::move(labels), email_prior(g), {p1, p2});
}

EmailGameEquilibrium email_game_equilibrium(const EmailGameParams& g) {
    g.validate();
    const auto prior = email_prior(g);
    const int n = static_cast<int>(prior.size());

    // Opponent type at each state, per player; resolved[player][type].
    auto type_of = [](int player, int k) {
        if (k == 0) return 0;
        return player == 0 ? (k + 1) / 2 : k / 2;
    };
    std::vector<std::vector<bool>> resolved(2, std::vector<bool>(g.t_max + 2, false));

    EmailGameEquilibrium out;
    out.z = g.eps / (g.eps + (1.0 - g.eps) * g.eps);
    out.player2_type0_posterior = prior[0] / (prior[0] + prior[1]);
    out.all_strict = true;

    auto step = [&](int player, int type) {
        EmailInductionStep s;
        s.agent = player;
        s.type = type;
        double mass = 0, known = 0, lo_a = 0, hi_b = 0;
        for (int k = 0; k < n; ++k) {
            if (type_of(player, k) != type) continue;
            const bool state_b = k > 0;
            const int opp_type = type_of(1 - player, k);
            const bool pinned = resolved[1 - player][opp_type];
            const double w = prior[k];
            mass += w;
            if (pinned) {
                known += w;
                lo_a += w * email_payoff(g, EmailAction::A, EmailAction::A, state_b);
                hi_b += w * email_payoff(g, EmailAction::B, EmailAction::A, state_b);
            } else {
                lo_a += w * std::min(email_payoff(g, EmailAction::A, EmailAction::A, state_b),
                                     email_payoff(g, EmailAction::A, EmailAction::B, state_b));
                hi_b += w * std::max(email_payoff(g, EmailAction::B, EmailAction::A, state_b),
                                     email_payoff(g, EmailAction::B, EmailAction::B, state_b));
            }
        }
        s.posterior_known = known / mass;
        s.worst_payoff_A = lo_a / mass;
        s.best_payoff_B = hi_b / mass;
        s.strict = s.worst_payoff_A > s.best_payoff_B;
        if (player == 0 && type == 0) {
            s.assumed = true;
            s.strict = true;
        }
        out.all_strict = out.all_strict && s.strict;
        if (s.strict) resolved[player][type] = true;
        out.steps.push_back(s);
        return s.strict;
    };

    out.certified_through = -1;
    for (int t = 0; t <= g.t_max; ++t) {
        bool ok1 = step(0, t);
        bool ok2 = step(1, t);
        out.player1.push_back(ok1 ? EmailAction::A : EmailAction::B);
        out.player2.push_back(ok2 ? EmailAction::A : EmailAction::B);
        if (ok1 && ok2 && out.certified_through == t - 1) out.certified_through = t;
    }
    return out;
}

}  // namespace infonomics
