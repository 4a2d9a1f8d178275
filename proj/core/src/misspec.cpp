#include "infonomics/misspec.hpp"

#include "infonomics/error.hpp"
#include "infonomics/learning.hpp"
#include "infonomics/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace infonomics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_stochastic(const std::vector<double>& row, const char* what) {
    double total = 0.0;
    for (double v : row) {
        if (!std::isfinite(v) || v < 0.0) throw ValidationError(std::string(what) + " has a negative entry");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ValidationError(std::string(what) + " does not sum to 1");
}

// Divergence with the convention 0 ln 0 = 0 and +inf on support violations.
double divergence(const std::vector<double>& p, const std::vector<double>& q) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) return kInf;
        d += p[i] * std::log(p[i] / q[i]);
    }
    return std::max(d, 0.0);
}

std::vector<std::size_t> argmin_set(const std::vector<double>& v, double tol) {
    double best = kInf;
    for (double x : v) best = std::min(best, x);
    std::vector<std::size_t> out;
    if (best == kInf) return out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] <= best + tol * (1.0 + std::abs(best))) out.push_back(i);
    return out;
}

// Everything Def.-style checks need once the objective tables are known.
struct AgentProblem {
    std::vector<Matrix<double>> objective;           // [s][a][y]
    Matrix<double> weight;                           // [s][a] = p_S(s) sigma(a | s)
    const Matrix<double>* sigma = nullptr;
    const Matrix<double>* utility = nullptr;         // [a][y]
    const std::vector<std::vector<Matrix<double>>>* q_theta = nullptr;
};

BerkNashReport evaluate(const AgentProblem& ap, double tol) {
    const auto& qt = *ap.q_theta;
    const auto& u = *ap.utility;
    const auto& sigma = *ap.sigma;
    const std::size_t ns = ap.objective.size(), na = u.size(), nth = qt.size();
    BerkNashReport r;
    r.objective = ap.objective;
    r.divergence.assign(nth, 0.0);
    for (std::size_t t = 0; t < nth; ++t)
        for (std::size_t s = 0; s < ns; ++s)
            for (std::size_t a = 0; a < na; ++a) {
                if (ap.weight[s][a] <= 0.0) continue;
                const double d = divergence(ap.objective[s][a], qt[t][s][a]);
                r.divergence[t] = d == kInf ? kInf : r.divergence[t] + ap.weight[s][a] * d;
            }
    r.minimizers = argmin_set(r.divergence, tol);
    if (r.minimizers.empty()) return r;

    // util[k][s][a]: expected payoff under the k-th minimizer.
    std::vector<Matrix<double>> util(r.minimizers.size(), Matrix<double>(ns, std::vector<double>(na, 0.0)));
    for (std::size_t k = 0; k < r.minimizers.size(); ++k)
        for (std::size_t s = 0; s < ns; ++s)
            for (std::size_t a = 0; a < na; ++a)
                for (std::size_t y = 0; y < u[a].size(); ++y) util[k][s][a] += qt[r.minimizers[k]][s][a][y] * u[a][y];

    LinearProgram<double> lp(r.minimizers.size());
    lp.add(std::vector<double>(r.minimizers.size(), 1.0), Sense::Equal, 1.0);
    for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t a = 0; a < na; ++a) {
            if (sigma[s][a] <= 0.0) continue;
            for (std::size_t b = 0; b < na; ++b) {
                if (b == a) continue;
                std::vector<double> row(r.minimizers.size());
                for (std::size_t k = 0; k < row.size(); ++k) row[k] = util[k][s][a] - util[k][s][b];
                lp.add(std::move(row), Sense::GreaterEq, -tol);
            }
        }
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) return r;
    std::vector<double> mu(nth, 0.0);
    for (std::size_t k = 0; k < r.minimizers.size(); ++k) mu[r.minimizers[k]] = std::max(sol.x[k], 0.0);
    r.payoff.assign(ns, std::vector<double>(na, 0.0));
    for (std::size_t k = 0; k < r.minimizers.size(); ++k)
        for (std::size_t s = 0; s < ns; ++s)
            for (std::size_t a = 0; a < na; ++a) r.payoff[s][a] += mu[r.minimizers[k]] * util[k][s][a];
    r.mu = std::move(mu);
    r.equilibrium = true;
    return r;
}

void check_strategy(const Strategy& sigma, std::size_t ns, std::size_t na) {
    if (sigma.size() != ns) throw ValidationError("strategy needs one row per signal");
    for (const auto& row : sigma) {
        if (row.size() != na) throw ValidationError("strategy row has the wrong number of actions");
        check_stochastic(row, "strategy row");
    }
}

void check_q_tables(const std::vector<std::vector<Matrix<double>>>& qt, std::size_t ns, std::size_t na, std::size_t ny) {
    if (qt.empty()) throw ValidationError("parameter set is empty");
    for (const auto& tab : qt) {
        if (tab.size() != ns) throw ValidationError("consequence table needs one block per signal");
        for (const auto& block : tab) {
            if (block.size() != na) throw ValidationError("consequence table needs one row per action");
            for (const auto& row : block) {
                if (row.size() != ny) throw ValidationError("consequence row has the wrong length");
                check_stochastic(row, "consequence row");
            }
        }
    }
}

}  // namespace

// ---- model uncertainty ----

void AcyModel::validate() const {
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("eps must lie in (0,1)");
    if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
    for (std::size_t i = 0; i < 2; ++i) {
        if (!(prior_a[i] > 0.0 && prior_a[i] < 1.0)) throw ValidationError("priors must lie in (0,1)");
        if (!(gamma[i] > 0.5 && gamma[i] < 1.0)) throw ValidationError("gamma must lie in (1/2,1)");
        if (gamma[i] - lambda / 2.0 < 0.0 || gamma[i] + lambda / 2.0 > 1.0)
            throw ValidationError("the high-density window must fit inside [0,1]");
    }
}

bool AcyModel::small_regime() const {
    return lambda < std::abs(gamma[0] - gamma[1]) && gamma[0] - lambda / 2.0 > 0.5 && gamma[1] - lambda / 2.0 > 0.5;
}

double acy_density(const AcyModel& m, std::size_t agent, double g) {
    m.validate();
    if (agent > 1) throw ValidationError("agent must be 0 or 1");
    const bool inside = g > m.gamma[agent] - m.lambda / 2.0 && g < m.gamma[agent] + m.lambda / 2.0;
    return inside ? m.eps + (1.0 - m.eps) / m.lambda : m.eps;
}

double acy_likelihood_ratio(const AcyModel& m, std::size_t agent, double rho) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw ValidationError("rho must lie in [0,1]");
    return acy_density(m, agent, 1.0 - rho) / acy_density(m, agent, rho);
}

double acy_asymptotic_belief(const AcyModel& m, std::size_t agent, double rho) {
    const double lr = acy_likelihood_ratio(m, agent, rho);
    const double pa = m.prior_a[agent];
    return 1.0 / (1.0 + (1.0 - pa) / pa * lr);
}

AcyProfile acy_disagreement_profile(const AcyModel& m, const std::vector<double>& rho) {
    m.validate();
    if (m.gamma[0] == m.gamma[1]) throw ValidationError("the agents' models must differ (gamma_1 != gamma_2)");
    AcyProfile p;
    p.rho = rho;
    p.small_regime = m.small_regime();
    p.positive_everywhere = true;
    for (double r : rho) {
        p.belief1.push_back(acy_asymptotic_belief(m, 0, r));
        p.belief2.push_back(acy_asymptotic_belief(m, 1, r));
        p.gap.push_back(std::abs(p.belief1.back() - p.belief2.back()));
        if (!(p.gap.back() > 0.0)) p.positive_everywhere = false;
    }
    return p;
}

// ---- Berk ----

BerkLimit berk_limit(const Matrix<double>& densities, const std::vector<double>& truth, double tol) {
    if (densities.empty()) throw ValidationError("no candidate densities");
    check_stochastic(truth, "true density");
    BerkLimit out;
    for (const auto& row : densities) {
        if (row.size() != truth.size()) throw ValidationError("candidate density has the wrong length");
        check_stochastic(row, "candidate density");
        out.divergence.push_back(divergence(truth, row));
    }
    out.argmin = argmin_set(out.divergence, tol);
    if (out.argmin.empty()) throw NumericalError("every candidate has infinite divergence from the truth");
    return out;
}

BerkSimulation berk_simulation(const std::vector<double>& prior, const Matrix<double>& densities,
                               const std::vector<double>& truth, std::size_t horizon, std::size_t n_paths,
                               double threshold, std::uint64_t seed) {
    if (prior.size() != densities.size()) throw ValidationError("prior does not match the candidate densities");
    check_stochastic(prior, "prior");
    const auto lim = berk_limit(densities, truth);
    BerkSimulation sim;
    sim.n_paths = n_paths;
    sim.horizon = horizon;
    sim.threshold = threshold;
    std::size_t hits = 0;
    for (std::size_t path = 0; path < n_paths; ++path) {
        const auto xs = sample_stream(Matrix<double>{truth}, 0, horizon, seed, path);
        const auto traj = sequential_posterior(prior, densities, xs);
        double mass = 0.0;
        for (auto k : lim.argmin) mass += traj.back()[k];
        sim.final_argmin_mass.push_back(mass);
        if (mass >= threshold) ++hits;
    }
    sim.fraction = n_paths ? static_cast<double>(hits) / static_cast<double>(n_paths) : 0.0;
    return sim;
}

// ---- Berk-Nash, single agent ----

void SubjectiveModel::validate() const {
    const std::size_t nw = states.size(), ns = signals.size(), na = actions.size(), ny = consequences.size();
    if (nw == 0 || ns == 0 || na == 0 || ny == 0) throw ValidationError("model sets must be non-empty");
    if (prior.size() != nw) throw ValidationError("prior needs one row per state");
    double total = 0.0;
    for (const auto& row : prior) {
        if (row.size() != ns) throw ValidationError("prior row needs one entry per signal");
        for (double v : row) {
            if (!std::isfinite(v) || v < 0.0) throw ValidationError("prior has a negative entry");
            total += v;
        }
    }
    if (std::abs(total - 1.0) > 1e-9) throw ValidationError("prior does not sum to 1");
    for (std::size_t s = 0; s < ns; ++s) {
        double ps = 0.0;
        for (std::size_t w = 0; w < nw; ++w) ps += prior[w][s];
        if (ps <= 0.0) throw ValidationError("every signal needs positive probability");
    }
    if (feedback.size() != na) throw ValidationError("feedback needs one row per action");
    for (const auto& row : feedback) {
        if (row.size() != nw) throw ValidationError("feedback row needs one entry per state");
        for (auto y : row)
            if (y >= ny) throw ValidationError("feedback maps to an unknown consequence");
    }
    if (utility.size() != na) throw ValidationError("utility needs one row per action");
    for (const auto& row : utility)
        if (row.size() != ny) throw ValidationError("utility row needs one entry per consequence");
    if (thetas.size() != q_theta.size()) throw ValidationError("parameter labels do not match the tables");
    check_q_tables(q_theta, ns, na, ny);
}

BerkNashReport berk_nash_check_single(const SubjectiveModel& m, const Strategy& sigma, double tol) {
    m.validate();
    const std::size_t nw = m.states.size(), ns = m.signals.size(), na = m.actions.size(), ny = m.consequences.size();
    check_strategy(sigma, ns, na);
    AgentProblem ap;
    ap.objective.assign(ns, Matrix<double>(na, std::vector<double>(ny, 0.0)));
    ap.weight.assign(ns, std::vector<double>(na, 0.0));
    for (std::size_t s = 0; s < ns; ++s) {
        double ps = 0.0;
        for (std::size_t w = 0; w < nw; ++w) ps += m.prior[w][s];
        for (std::size_t a = 0; a < na; ++a) {
            for (std::size_t w = 0; w < nw; ++w) ap.objective[s][a][m.feedback[a][w]] += m.prior[w][s] / ps;
            ap.weight[s][a] = ps * sigma[s][a];
        }
    }
    ap.sigma = &sigma;
    ap.utility = &m.utility;
    ap.q_theta = &m.q_theta;
    return evaluate(ap, tol);
}

std::vector<BerkNashEquilibrium> berk_nash_enumerate_single(const SubjectiveModel& m, double tol) {
    m.validate();
    const std::size_t ns = m.signals.size(), na = m.actions.size();
    std::vector<BerkNashEquilibrium> out;
    std::vector<std::size_t> act(ns, 0);
    for (;;) {
        Strategy sigma(ns, std::vector<double>(na, 0.0));
        for (std::size_t s = 0; s < ns; ++s) sigma[s][act[s]] = 1.0;
        auto rep = berk_nash_check_single(m, sigma, tol);
        if (rep.equilibrium) out.push_back({act, std::move(rep)});
        std::size_t pos = ns;
        while (pos > 0) {
            --pos;
            if (++act[pos] < na) break;
            act[pos] = 0;
            if (pos == 0) return out;
        }
        if (ns == 0) return out;
    }
}

// ---- Berk-Nash, games ----

namespace {

std::vector<std::size_t> decode(std::size_t flat, const std::vector<std::size_t>& sizes) {
    std::vector<std::size_t> out(sizes.size());
    for (std::size_t k = sizes.size(); k-- > 0;) {
        out[k] = flat % sizes[k];
        flat /= sizes[k];
    }
    return out;
}

}  // namespace

std::size_t GameModel::num_signal_profiles() const {
    std::size_t n = 1;
    for (const auto& p : players) n *= p.signals.size();
    return n;
}

std::size_t GameModel::num_action_profiles() const {
    std::size_t n = 1;
    for (const auto& p : players) n *= p.actions.size();
    return n;
}

void GameModel::validate() const {
    if (players.empty()) throw ValidationError("game needs at least one player");
    if (states.empty()) throw ValidationError("game needs at least one state");
    const std::size_t nsp = num_signal_profiles(), nap = num_action_profiles();
    if (prior.size() != states.size()) throw ValidationError("prior needs one row per state");
    double total = 0.0;
    for (const auto& row : prior) {
        if (row.size() != nsp) throw ValidationError("prior row needs one entry per signal profile");
        for (double v : row) {
            if (!std::isfinite(v) || v < 0.0) throw ValidationError("prior has a negative entry");
            total += v;
        }
    }
    if (std::abs(total - 1.0) > 1e-9) throw ValidationError("prior does not sum to 1");
    std::vector<std::size_t> sizes;
    for (const auto& p : players) sizes.push_back(p.signals.size());
    for (std::size_t i = 0; i < players.size(); ++i) {
        const auto& p = players[i];
        if (p.signals.empty() || p.actions.empty() || p.consequences.empty())
            throw ValidationError("player sets must be non-empty");
        std::vector<double> marginal(p.signals.size(), 0.0);
        for (const auto& row : prior)
            for (std::size_t sp = 0; sp < nsp; ++sp) marginal[decode(sp, sizes)[i]] += row[sp];
        for (double v : marginal)
            if (v <= 0.0) throw ValidationError("signal marginals must have full support");
        if (p.utility.size() != p.actions.size()) throw ValidationError("utility needs one row per action");
        for (const auto& row : p.utility)
            if (row.size() != p.consequences.size()) throw ValidationError("utility row has the wrong length");
        if (p.feedback.size() != nap) throw ValidationError("feedback needs one row per action profile");
        for (const auto& row : p.feedback) {
            if (row.size() != states.size()) throw ValidationError("feedback row needs one entry per state");
            for (auto y : row)
                if (y >= p.consequences.size()) throw ValidationError("feedback maps to an unknown consequence");
        }
        if (p.thetas.size() != p.q_theta.size()) throw ValidationError("parameter labels do not match the tables");
        check_q_tables(p.q_theta, p.signals.size(), p.actions.size(), p.consequences.size());
    }
}

GameModel as_game(const SubjectiveModel& m) {
    m.validate();
    GameModel g;
    g.states = m.states;
    g.prior = m.prior;
    PlayerModel p;
    p.signals = m.signals;
    p.actions = m.actions;
    p.consequences = m.consequences;
    p.thetas = m.thetas;
    p.utility = m.utility;
    p.q_theta = m.q_theta;
    p.feedback = m.feedback;
    g.players.push_back(std::move(p));
    return g;
}

GameBerkNashReport berk_nash_check_game(const GameModel& g, const std::vector<Strategy>& profile, double tol) {
    g.validate();
    const std::size_t n = g.players.size();
    if (profile.size() != n) throw ValidationError("profile needs one strategy per player");
    std::vector<std::size_t> ssizes, asizes;
    for (std::size_t i = 0; i < n; ++i) {
        check_strategy(profile[i], g.players[i].signals.size(), g.players[i].actions.size());
        ssizes.push_back(g.players[i].signals.size());
        asizes.push_back(g.players[i].actions.size());
    }
    const std::size_t nsp = g.num_signal_profiles(), nap = g.num_action_profiles(), nw = g.states.size();
    std::vector<std::vector<std::size_t>> sdec(nsp), adec(nap);
    for (std::size_t k = 0; k < nsp; ++k) sdec[k] = decode(k, ssizes);
    for (std::size_t k = 0; k < nap; ++k) adec[k] = decode(k, asizes);

    GameBerkNashReport rep;
    rep.equilibrium = true;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& pl = g.players[i];
        const std::size_t ns = pl.signals.size(), na = pl.actions.size(), ny = pl.consequences.size();
        AgentProblem ap;
        ap.objective.assign(ns, Matrix<double>(na, std::vector<double>(ny, 0.0)));
        ap.weight.assign(ns, std::vector<double>(na, 0.0));
        std::vector<double> ps(ns, 0.0);
        for (std::size_t w = 0; w < nw; ++w)
            for (std::size_t sp = 0; sp < nsp; ++sp) ps[sdec[sp][i]] += g.prior[w][sp];
        for (std::size_t w = 0; w < nw; ++w)
            for (std::size_t sp = 0; sp < nsp; ++sp) {
                const double pw = g.prior[w][sp];
                if (pw == 0.0) continue;
                const std::size_t si = sdec[sp][i];
                for (std::size_t ap_idx = 0; ap_idx < nap; ++ap_idx) {
                    double others = 1.0;
                    for (std::size_t j = 0; j < n && others > 0.0; ++j)
                        if (j != i) others *= profile[j][sdec[sp][j]][adec[ap_idx][j]];
                    if (others == 0.0) continue;
                    const std::size_t ai = adec[ap_idx][i];
                    ap.objective[si][ai][pl.feedback[ap_idx][w]] += others * pw / ps[si];
                }
            }
        for (std::size_t s = 0; s < ns; ++s)
            for (std::size_t a = 0; a < na; ++a) ap.weight[s][a] = ps[s] * profile[i][s][a];
        ap.sigma = &profile[i];
        ap.utility = &pl.utility;
        ap.q_theta = &pl.q_theta;
        rep.players.push_back(evaluate(ap, tol));
        rep.equilibrium = rep.equilibrium && rep.players.back().equilibrium;
    }
    return rep;
}

}  // namespace infonomics
