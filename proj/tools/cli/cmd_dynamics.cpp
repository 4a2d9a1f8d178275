// learn, misspec and persuade subcommands.

#include "commands.hpp"

#include "infonomics/common_learning.hpp"
#include "infonomics/learning.hpp"
#include "infonomics/misspec.hpp"
#include "infonomics/persuasion.hpp"

#include <algorithm>
#include <sstream>

namespace cli {

namespace {

using namespace infonomics;

void quantiles(const std::vector<QuantileRow>& rows, std::vector<std::vector<Json>>& out) {
    for (const auto& r : rows) out.push_back({Json(r.t), cell(r.q05), cell(r.q50), cell(r.q95)});
}

struct LearnOpts {
    std::string env, prior2;
    std::size_t paths = 200, horizon = 0, depth = 5;
    double delta = 0.01;
};

LearningEnvironment environment(const EnvironmentPayload& p) {
    return LearningEnvironment{p.params, p.prior, p.density, p.truth, p.horizon};
}

std::size_t horizon_of(const LearnOpts& o, const EnvironmentPayload& p) {
    std::size_t t = o.horizon ? o.horizon : p.horizon;
    if (t == 0) throw ValidationError("no horizon: pass --horizon or set one in the environment file");
    return t;
}

struct MisspecOpts {
    std::string model, strategy;
    std::size_t paths = 0;
};

std::vector<Strategy> parse_profile(const std::string& text) {
    std::vector<Strategy> profile;
    std::stringstream players(text);
    std::string player;
    while (std::getline(players, player, '|')) {
        Strategy s;
        std::stringstream rows(player);
        std::string row;
        while (std::getline(rows, row, ';')) s.push_back(as<double>(parse_list(row)));
        profile.push_back(std::move(s));
    }
    return profile;
}

void report_rows(Output& out, const std::string& prefix, const std::vector<std::string>& thetas,
                 const BerkNashReport& r) {
    std::vector<std::vector<Json>> rows;
    for (std::size_t t = 0; t < thetas.size(); ++t) {
        bool minimizer = std::find(r.minimizers.begin(), r.minimizers.end(), t) != r.minimizers.end();
        rows.push_back({Json(thetas[t]), cell(r.divergence[t]), Json(minimizer), r.mu ? cell((*r.mu)[t]) : Json(nullptr)});
    }
    out.table(prefix + "divergence", {"theta", "K(sigma, theta)", "minimizer", "mu"}, std::move(rows));
}

struct PersuadeOpts {
    std::string instance;
};

template <class T>
PersuasionInstance<T> instance_of(const PersuasionPayload& p) {
    return {p.states, as<T>(p.prior), p.actions, as<T>(p.u_receiver), as<T>(p.u_sender)};
}

template <class T>
void solve(const PersuasionPayload& p, Output& out) {
    auto sol = optimal_signal(instance_of<T>(p));
    out.field("value", cell(sol.value));
    out.field("no-information value", cell(sol.no_information_value));
    out.field("benefits from persuasion", sol.benefits);
    out.matrix("signal", "state \\ recommendation", p.states, sol.signal.realizations, sol.signal.matrix);
    std::vector<std::string> h{"recommendation", "probability", "action"};
    for (const auto& s : p.states) h.push_back("P(" + s + ")");
    std::vector<std::vector<Json>> rows;
    std::size_t k = 0;
    for (std::size_t x = 0; x < sol.realization_probability.size(); ++x) {
        if (!(sol.realization_probability[x] > 0)) continue;
        std::vector<Json> row{Json(sol.signal.realizations[x]), cell(sol.realization_probability[x]),
                              Json(p.actions[sol.posterior_action[k]])};
        for (const auto& v : sol.posteriors[k]) row.push_back(cell(v));
        rows.push_back(std::move(row));
        ++k;
    }
    out.table("posteriors", std::move(h), std::move(rows));
}

template <class T>
void envelope(const PersuasionPayload& p, Output& out) {
    auto inst = instance_of<T>(p);
    auto env = concavify_1d(inst);
    auto table = [&](const std::string& name, const std::vector<T>& mu, const std::vector<T>& v) {
        std::vector<std::vector<Json>> rows;
        for (std::size_t i = 0; i < mu.size(); ++i) rows.push_back({cell(mu[i]), cell(v[i])});
        out.table(name, {"P(" + p.states.front() + ")", "value"}, std::move(rows));
    };
    table("envelope", env.mu, env.value);
    table("sender value", env.raw_mu, env.raw_value);
    out.field("value at prior", cell(env(inst.prior.front())));
    out.field("no-information value", cell(sender_value(inst, inst.prior)));
}

}  // namespace

void add_learn(CLI::App& app, Globals& g) {
    auto* grp = app.add_subcommand("learn", "Learning from repeated signals");
    grp->require_subcommand(1);
    auto env = [](CLI::App& s, LearnOpts& o) {
        s.add_option("--env", o.env, "Environment file")->required()->check(CLI::ExistingFile);
    };
    auto sim = [env](CLI::App& s, LearnOpts& o) {
        env(s, o);
        s.add_option("--paths", o.paths, "Simulated paths")->capture_default_str();
        s.add_option("--horizon", o.horizon, "Observations per path (default: from the file)");
    };
    auto run = [](auto body) {
        return [body](Globals& g, LearnOpts& o, const std::string& label) {
            g.exact_unsupported(label);
            Output out(g.json, label);
            body(g, o, out);
            out.write(*g.out);
        };
    };
    leaf<LearnOpts>(
        *grp, "consistency", "Posterior concentration on the true parameter", g,
        [sim](CLI::App& s, LearnOpts& o) {
            sim(s, o);
            s.add_option("--delta", o.delta, "Mass tolerance")->capture_default_str();
        },
        run([](Globals& g, LearnOpts& o, Output& out) {
            auto p = expect<EnvironmentPayload>(g.model(o.env), o.env);
            auto r = consistency_sim(environment(p), o.paths, horizon_of(o, p), o.delta, g.seed);
            out.field("paths", r.n_paths);
            out.field("horizon", r.horizon);
            out.field("seed", g.seed);
            out.field("share concentrated", cell(r.fraction_concentrated));
            out.field("mean |E[theta | X] - theta0|", cell(r.mean_abs_g_error));
            std::vector<std::vector<Json>> rows;
            quantiles(r.truth_mass, rows);
            out.table("posterior mass on the truth", {"t", "q05", "median", "q95"}, std::move(rows));
        }));
    leaf<LearnOpts>(
        *grp, "merge", "Merging of two agents' predictions", g,
        [sim](CLI::App& s, LearnOpts& o) {
            sim(s, o);
            s.add_option("--prior2", o.prior2, "Second agent's prior, comma-separated")->required();
            s.add_option("--depth", o.depth, "Prediction depth")->capture_default_str();
        },
        run([](Globals& g, LearnOpts& o, Output& out) {
            auto p = expect<EnvironmentPayload>(g.model(o.env), o.env);
            auto prior2 = as<double>(parse_distribution(o.prior2, "prior2", g.load()));
            auto r = merging_sim(environment(p), prior2, o.paths, horizon_of(o, p), g.seed, o.depth);
            out.field("paths", r.n_paths);
            out.field("horizon", r.horizon);
            out.field("depth", r.depth);
            out.field("seed", g.seed);
            std::vector<std::vector<Json>> rows;
            quantiles(r.discrepancy, rows);
            out.table("predictive discrepancy", {"t", "q05", "median", "q95"}, std::move(rows));
        }));
    leaf<LearnOpts>(
        *grp, "kls", "Expected disagreement under more and less informative signals", g, env,
        run([](Globals& g, LearnOpts& o, Output& out) {
            auto p = expect<KlsPayload>(g.model(o.env), o.env);
            std::vector<std::string> states;
            for (double t : p.thetas) states.push_back(shortest_text(t));
            SignalStructure<double> x(states, p.x_realizations, p.x), xt(states, p.xt_realizations, p.xt);
            auto r = kls_disagreement_check(p.thetas, p.prior_a, p.prior_b, x, xt);
            out.field("mu_A", cell(r.mu_a));
            out.field("mu_B", cell(r.mu_b));
            out.field("E_A[E_B(theta | X)]", cell(r.mu_ab_x));
            out.field("E_A[E_B(theta | Xt)]", cell(r.mu_ab_xt));
            out.field("E_B[E_A(theta | X)]", cell(r.mu_ba_x));
            out.field("E_B[E_A(theta | Xt)]", cell(r.mu_ba_xt));
            out.field("chain A", r.chain_ab);
            out.field("chain B", r.chain_ba);
            out.field("garbling residual", cell(r.garbling_residual));
        }));
    leaf<LearnOpts>(
        *grp, "common", "Common learning of the parameter by two agents", g,
        [env](CLI::App& s, LearnOpts& o) {
            env(s, o);
            o.paths = 0;
            s.add_option("--paths", o.paths, "Monte-Carlo paths (default: from the file)");
            s.add_option("--horizon", o.horizon, "Periods (default: from the file)");
        },
        run([](Globals& g, LearnOpts& o, Output& out) {
            auto p = expect<CommonPayload>(g.model(o.env), o.env);
            TwoAgentSignalModel m;
            if (p.structure == "independent") m = independent_model(p.phi, p.psi);
            else if (p.structure == "public") m = public_model(p.phi);
            else m = email_twist_model(p.theta_low, p.theta_high, p.eps, p.levels);
            std::size_t paths = o.paths ? o.paths : p.paths;
            std::size_t horizon = o.horizon ? o.horizon : p.horizon;
            auto r = common_learning_sim(m, p.prior, p.theta, horizon, p.q, paths, g.seed);
            out.field("theta", m.thetas[r.theta]);
            out.field("horizon", r.horizon);
            out.field("q", cell(r.q));
            out.field("histories", r.num_states);
            out.field("P(agent 1 q-believes theta)", cell(r.prob_individual1));
            out.field("P(agent 2 q-believes theta)", cell(r.prob_individual2));
            out.field("P(both)", cell(r.prob_both));
            out.field("P(common q-belief)", cell(r.prob_common));
            out.field("stabilized", r.stabilized);
            if (!r.label.empty()) out.field("label", r.label);
            if (r.n_paths) {
                out.field("paths", r.n_paths);
                out.field("seed", g.seed);
                out.field("simulated agent 1", cell(r.sim_individual1));
                out.field("simulated agent 2", cell(r.sim_individual2));
                out.field("simulated common", cell(r.sim_common));
            }
            std::vector<std::vector<Json>> rows;
            for (std::size_t t = 0; t < r.diagnostics.size(); ++t)
                rows.push_back({Json(m.thetas[t]), cell(r.diagnostics[t].row_sum_error),
                                cell(r.diagnostics[t].stationarity_error)});
            out.table("contagion diagnostics", {"theta", "row-sum error", "stationarity error"}, std::move(rows));
        }));
}

void add_misspec(CLI::App& app, Globals& g) {
    auto* grp = app.add_subcommand("misspec", "Model uncertainty and misspecified learning");
    grp->require_subcommand(1);
    auto model = [](CLI::App& s, MisspecOpts& o) {
        s.add_option("--model", o.model, "Model file")->required()->check(CLI::ExistingFile);
    };
    auto run = [](auto body) {
        return [body](Globals& g, MisspecOpts& o, const std::string& label) {
            g.exact_unsupported(label);
            Output out(g.json, label);
            body(g, o, out);
            out.write(*g.out);
        };
    };
    leaf<MisspecOpts>(
        *grp, "acy", "Asymptotic disagreement under uncertain signal precision", g, model,
        run([](Globals& g, MisspecOpts& o, Output& out) {
            auto p = expect<AcyPayload>(g.model(o.model), o.model);
            auto rho = p.rho;
            if (rho.empty())
                for (int k = 1; k < 100; ++k) rho.push_back(k / 100.0);
            auto prof = acy_disagreement_profile(p.model, rho);
            std::vector<std::vector<Json>> rows;
            for (std::size_t i = 0; i < prof.rho.size(); ++i)
                rows.push_back({cell(prof.rho[i]), cell(prof.belief1[i]), cell(prof.belief2[i]), cell(prof.gap[i])});
            out.field("small regime", prof.small_regime);
            out.field("gap positive everywhere", prof.positive_everywhere);
            out.table("profile", {"rho", "agent 1", "agent 2", "gap"}, std::move(rows));
        }));
    leaf<MisspecOpts>(
        *grp, "berk", "Berk limit and simulated concentration", g,
        [model](CLI::App& s, MisspecOpts& o) {
            model(s, o);
            s.add_option("--paths", o.paths, "Simulated paths (default: from the file)");
        },
        run([](Globals& g, MisspecOpts& o, Output& out) {
            auto p = expect<BerkPayload>(g.model(o.model), o.model);
            auto lim = berk_limit(p.densities, p.truth);
            std::vector<std::vector<Json>> rows;
            for (std::size_t t = 0; t < lim.divergence.size(); ++t) {
                bool arg = std::find(lim.argmin.begin(), lim.argmin.end(), t) != lim.argmin.end();
                rows.push_back({Json(t), cell(lim.divergence[t]), Json(arg)});
            }
            out.table("limit", {"theta", "D(truth || f_theta)", "argmin"}, std::move(rows));
            auto sim = berk_simulation(p.prior, p.densities, p.truth, p.horizon, o.paths ? o.paths : p.paths,
                                       p.threshold, g.seed);
            out.field("paths", sim.n_paths);
            out.field("horizon", sim.horizon);
            out.field("seed", g.seed);
            out.field("threshold", cell(sim.threshold));
            out.field("share concentrated on argmin", cell(sim.fraction));
        }));
    leaf<MisspecOpts>(
        *grp, "bn-check", "Check a strategy (profile) for Berk-Nash equilibrium", g,
        [model](CLI::App& s, MisspecOpts& o) {
            model(s, o);
            s.add_option("--strategy", o.strategy,
                         "Rows per signal separated by ';', players by '|' (overrides the file)");
        },
        run([](Globals& g, MisspecOpts& o, Output& out) {
            auto m = g.model(o.model);
            if (const auto* single = std::get_if<SubjectivePayload>(&m)) {
                Strategy s = single->strategy;
                if (!o.strategy.empty()) {
                    auto prof = parse_profile(o.strategy);
                    if (prof.size() != 1) throw ValidationError("a single-agent model takes one strategy");
                    s = prof.front();
                }
                if (s.empty()) throw ValidationError("no strategy: pass --strategy or add one to the model file");
                auto r = berk_nash_check_single(single->model, s);
                report_rows(out, "", single->model.thetas, r);
                out.field("equilibrium", r.equilibrium);
                return;
            }
            auto game = expect<GamePayload>(m, o.model);
            auto profile = o.strategy.empty() ? game.profile : parse_profile(o.strategy);
            if (profile.empty()) throw ValidationError("no profile: pass --strategy or add one to the model file");
            auto r = berk_nash_check_game(game.model, profile);
            for (std::size_t i = 0; i < r.players.size(); ++i) {
                report_rows(out, "player " + std::to_string(i + 1) + " ", game.model.players[i].thetas, r.players[i]);
                out.field("player " + std::to_string(i + 1) + " best-responds", r.players[i].equilibrium);
            }
            out.field("equilibrium", r.equilibrium);
        }));
    leaf<MisspecOpts>(
        *grp, "bn-enum", "Enumerate pure Berk-Nash equilibria of a single-agent model", g, model,
        run([](Globals& g, MisspecOpts& o, Output& out) {
            auto p = expect<SubjectivePayload>(g.model(o.model), o.model);
            const auto& m = p.model;
            auto eqs = berk_nash_enumerate_single(m);
            std::vector<std::string> h;
            for (const auto& s : m.signals) h.push_back("action at " + s);
            for (const auto& t : m.thetas) h.push_back("mu(" + t + ")");
            std::vector<std::vector<Json>> rows;
            for (const auto& e : eqs) {
                std::vector<Json> row;
                for (auto a : e.action) row.push_back(m.actions[a]);
                for (std::size_t t = 0; t < m.thetas.size(); ++t)
                    row.push_back(e.report.mu ? cell((*e.report.mu)[t]) : Json(nullptr));
                rows.push_back(std::move(row));
            }
            out.field("pure equilibria", eqs.size());
            out.table("equilibria", std::move(h), std::move(rows));
        }));
}

void add_persuade(CLI::App& app, Globals& g) {
    auto* grp = app.add_subcommand("persuade", "Bayesian persuasion");
    grp->require_subcommand(1);
    auto inst = [](CLI::App& s, PersuadeOpts& o) {
        s.add_option("--instance", o.instance, "Persuasion instance file")->required()->check(CLI::ExistingFile);
    };
    leaf<PersuadeOpts>(*grp, "solve", "Sender-optimal signal", g, inst,
                       [](Globals& g, PersuadeOpts& o, const std::string& label) {
                           auto p = expect<PersuasionPayload>(g.model(o.instance), o.instance);
                           Output out(g.json, label);
                           g.exact ? solve<Rational>(p, out) : solve<double>(p, out);
                           out.write(*g.out);
                       });
    leaf<PersuadeOpts>(*grp, "envelope", "Concave envelope of the sender's value (binary states)", g, inst,
                       [](Globals& g, PersuadeOpts& o, const std::string& label) {
                           auto p = expect<PersuasionPayload>(g.model(o.instance), o.instance);
                           Output out(g.json, label);
                           g.exact ? envelope<Rational>(p, out) : envelope<double>(p, out);
                           out.write(*g.out);
                       });
}

}  // namespace cli
