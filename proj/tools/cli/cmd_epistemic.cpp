// knowledge, signals and orders subcommands.

#include "commands.hpp"

#include "infonomics/email_game.hpp"
#include "infonomics/knowledge.hpp"
#include "infonomics/orders.hpp"
#include "infonomics/signals.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cli {

namespace {

using namespace infonomics;

std::string event_text(const std::vector<std::string>& states, const EventSet& e) {
    std::string s = "{";
    bool first = true;
    for (auto k : event_indices(e)) {
        s += (first ? "" : ", ") + states[k];
        first = false;
    }
    return s + "}";
}

Json event_json(const std::vector<std::string>& states, const EventSet& e) {
    Json out = Json::array();
    for (auto k : event_indices(e)) out.push_back(states[k]);
    return out;
}

std::vector<std::string> split(const std::string& text, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

std::size_t find_label(const std::vector<std::string>& names, const std::string& label, const std::string& what) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == label) return i;
    throw ValidationError("unknown " + what + " '" + label + "'");
}

// knowledge ---------------------------------------------------------------

struct KnowledgeOpts {
    std::string model, op, event, state, agent, p;
};

template <class T>
void knowledge_op(const Globals& g, const KnowledgeOpts& o, const PartitionPayload& pay, Output& out) {
    auto m = to_partition_model<T>(pay);
    const auto& st = pay.states;
    auto need = [&](bool have, const char* flag) {
        if (!have) throw ValidationError("--op " + o.op + " needs " + flag);
    };
    EventSet a = m.empty_event();
    if (!o.event.empty()) a = m.event_from_labels(split(o.event));
    std::optional<std::size_t> state;
    if (!o.state.empty()) state = m.state_index(o.state);
    auto agent = [&] {
        need(!o.agent.empty(), "--agent");
        return find_label(pay.agents, o.agent, "agent");
    };
    auto p_value = [&] {
        need(!o.p.empty(), "--p");
        return parse_scalar<T>(o.p);
    };
    auto put_event = [&](const std::string& key, const EventSet& e) {
        out.field(key, g.json ? event_json(st, e) : Json(event_text(st, e)));
        if (state) out.field(key + " holds at " + st[*state], e.test(*state));
    };
    auto need_event = [&] { need(!o.event.empty(), "--event"); };

    if (o.op == "k") {
        need_event();
        std::size_t i = agent();
        out.field("agent", pay.agents[i]);
        put_event("K(A)", knowledge_operator(m, {i}, a));
    } else if (o.op == "mutual") {
        need_event();
        put_event("mutual knowledge", mutual_knowledge(m, a));
    } else if (o.op == "ck") {
        need_event();
        out.field("event", g.json ? event_json(st, a) : Json(event_text(st, a)));
        put_event("common knowledge", common_knowledge_iterated(m, a));
        if (state) {
            out.field("via meet", common_knowledge_via_meet(m, a, *state));
            out.field("via evident event", common_knowledge_via_evident(m, a, *state));
        }
    } else if (o.op == "meet") {
        std::vector<std::vector<Json>> rows;
        auto blocks = meet(m);
        for (std::size_t b = 0; b < blocks.size(); ++b)
            rows.push_back({Json(b + 1), Json(event_text(st, m.block_event(blocks[b]))), cell(m.mass(m.block_event(blocks[b])))});
        out.field("blocks", blocks.size());
        out.table("meet", {"block", "states", "mass"}, std::move(rows));
    } else if (o.op == "evident") {
        need_event();
        out.field("evident", is_evident(m, a));
        put_event("largest evident subset", largest_evident_subset(m, a));
    } else if (o.op == "posterior") {
        need_event();
        need(state.has_value(), "--state");
        std::vector<std::vector<Json>> rows;
        for (std::size_t i = 0; i < m.num_agents(); ++i)
            rows.push_back({Json(pay.agents[i]), Json(event_text(st, m.block_event(m.block_of(i, *state)))),
                            cell(event_posterior(m, i, a, *state))});
        out.table("posteriors", {"agent", "block", "P(A | block)"}, std::move(rows));
    } else if (o.op == "pbelief") {
        need_event();
        std::size_t i = agent();
        T p = p_value();
        out.field("agent", pay.agents[i]);
        out.field("p", cell(p));
        put_event("B^p(A)", p_belief(m, i, a, p));
    } else if (o.op == "cpbelief") {
        need_event();
        T p = p_value();
        out.field("p", cell(p));
        put_event("C^p(A)", common_p_belief(m, a, p));
        out.field("evident construction", g.json ? event_json(st, common_p_belief_evident(m, a, p))
                                                 : Json(event_text(st, common_p_belief_evident(m, a, p))));
    } else if (o.op == "agree") {
        need_event();
        need(state.has_value(), "--state");
        auto rep = agreement_check(m, a, *state);
        std::vector<std::vector<Json>> rows;
        for (std::size_t i = 0; i < rep.posteriors.size(); ++i) rows.push_back({Json(pay.agents[i]), cell(rep.posteriors[i])});
        out.table("posteriors", {"agent", "posterior"}, std::move(rows));
        out.field("posteriors common knowledge", rep.common_knowledge);
        out.field("posteriors equal", rep.posteriors_equal);
        out.field("violation", rep.violation);
    } else if (o.op == "dialogue") {
        need_event();
        need(state.has_value(), "--state");
        auto tr = gp_dialogue(m, a, *state);
        std::vector<std::string> headers{"round"};
        headers.insert(headers.end(), pay.agents.begin(), pay.agents.end());
        std::vector<std::vector<Json>> rows;
        for (std::size_t r = 0; r < tr.announcements.size(); ++r) {
            std::vector<Json> row{Json(r + 1)};
            for (const auto& v : tr.announcements[r]) row.push_back(cell(v));
            rows.push_back(std::move(row));
        }
        out.table("announcements", std::move(headers), std::move(rows));
        out.field("rounds to stable", tr.rounds_to_stable);
        out.field("agreed", tr.agreed);
    } else {
        throw ValidationError("unknown --op '" + o.op + "'");
    }
}

void email_op(const EmailPayload& p, Output& out) {
    EmailGameParams params{p.p_b, p.eps, p.L, p.M, p.t_max};
    auto eq = email_game_equilibrium(params);
    auto name = [](EmailAction a) { return a == EmailAction::A ? "A" : "B"; };
    std::vector<std::vector<Json>> rows;
    for (std::size_t t = 0; t < eq.player1.size(); ++t) rows.push_back({Json(t), Json(name(eq.player1[t])), Json(name(eq.player2[t]))});
    out.table("strategies", {"type", "player 1", "player 2"}, std::move(rows));
    std::vector<std::vector<Json>> steps;
    for (const auto& s : eq.steps)
        steps.push_back({Json(s.agent + 1), Json(s.type), cell(s.posterior_known), cell(s.worst_payoff_A),
                         cell(s.best_payoff_B), Json(s.strict), Json(s.assumed)});
    out.table("induction", {"player", "type", "P(opponent pinned)", "min E[u(A)]", "max E[u(B)]", "strict", "assumed"},
              std::move(steps));
    out.field("z", cell(eq.z));
    out.field("player 2 type 0 posterior", cell(eq.player2_type0_posterior));
    out.field("all strict", eq.all_strict);
    out.field("certified through", eq.certified_through);
}

// signals -----------------------------------------------------------------

struct SignalOpts {
    std::string signal, prior, realization, beliefs, model, save;
};

template <class T>
std::vector<T> signal_prior(const Globals& g, const SignalOpts& o, const SignalPayload& p) {
    RVec prior = p.prior;
    if (!o.prior.empty()) prior = parse_distribution(o.prior, "prior", g.load());
    if (prior.empty()) throw ValidationError("no prior: pass --prior or add one to the signal file");
    if (prior.size() != p.states.size()) throw ValidationError("prior length differs from the number of states");
    return as<T>(prior);
}

template <class T>
void signal_update(const Globals& g, const SignalOpts& o, Output& out) {
    auto pay = expect<SignalPayload>(g.model(o.signal), o.signal);
    auto sig = to_signal<T>(pay);
    auto prior = signal_prior<T>(g, o, pay);
    if (o.realization.empty()) throw ValidationError("--realization is required");
    std::size_t x = find_label(pay.realizations, o.realization, "realization");
    auto probs = realization_probabilities(prior, sig);
    auto post = posterior_update(prior, sig, x);
    out.field("realization", pay.realizations[x]);
    out.field("P(x)", cell(probs[x]));
    std::vector<std::vector<Json>> rows;
    for (std::size_t s = 0; s < post.size(); ++s) rows.push_back({Json(pay.states[s]), cell(prior[s]), cell(post[s])});
    out.table("belief", {"state", "prior", "posterior"}, std::move(rows));
}

template <class T>
void signal_induce(const Globals& g, const SignalOpts& o, Output& out) {
    auto pay = expect<SignalPayload>(g.model(o.signal), o.signal);
    auto sig = to_signal<T>(pay);
    auto prior = signal_prior<T>(g, o, pay);
    auto probs = realization_probabilities(prior, sig);
    std::vector<std::string> headers{"realization", "P(x)"};
    for (const auto& s : pay.states) headers.push_back("P(" + s + " | x)");
    std::vector<std::vector<Json>> rows;
    for (std::size_t x = 0; x < probs.size(); ++x) {
        std::vector<Json> row{Json(pay.realizations[x]), cell(probs[x])};
        if (probs[x] > 0)
            for (const auto& v : posterior_update(prior, sig, x)) row.push_back(cell(v));
        else
            for (std::size_t s = 0; s < pay.states.size(); ++s) row.push_back(nullptr);
        rows.push_back(std::move(row));
    }
    out.table("realizations", headers, std::move(rows));
    auto dist = induced_posteriors(prior, sig);
    std::vector<std::string> dh{"weight"};
    for (const auto& s : pay.states) dh.push_back(s);
    std::vector<std::vector<Json>> drows;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        std::vector<Json> row{cell(dist.weights[k])};
        for (const auto& v : dist.support[k]) row.push_back(cell(v));
        drows.push_back(std::move(row));
    }
    out.table("posterior distribution", dh, std::move(drows));
    out.field("Bayes plausible", is_bayes_plausible(prior, dist));
}

Rational to_rational(double x) { return exact_decimal(x); }
Rational to_rational(const Rational& x) { return x; }

template <class T>
void signal_construct(const Globals& g, const SignalOpts& o, Output& out) {
    auto pay = expect<BeliefsPayload>(g.model(o.beliefs), o.beliefs);
    auto dist = to_beliefs<T>(pay);
    std::vector<T> prior = pay.prior.empty() ? dist.mean() : as<T>(pay.prior);
    auto sig = signal_from_posteriors(prior, dist);
    SignalPayload res;
    res.states = pay.states;
    for (std::size_t k = 0; k < sig.num_realizations(); ++k) res.realizations.push_back("x" + std::to_string(k + 1));
    for (const auto& row : sig.matrix) {
        res.matrix.emplace_back();
        for (const auto& v : row) res.matrix.back().push_back(to_rational(v));
    }
    for (const auto& v : prior) res.prior.push_back(to_rational(v));
    out.matrix("signal", "state", res.states, res.realizations, sig.matrix);
    out.field("reproduces the distribution", same_distribution(induced_posteriors(prior, sig), dist));
    if (g.json) out.document("model", emit_model(Model{res}));
    if (!o.save.empty()) {
        std::ofstream f(o.save);
        if (!f) throw ValidationError("cannot write " + o.save);
        f << emit_model(Model{res}).dump(2) << '\n';
        out.field("saved", o.save);
    }
}

void signal_fairness(const Globals& g, const SignalOpts& o, Output& out) {
    auto pay = expect<PopulationPayload>(g.model(o.model), o.model);
    auto rep = fairness_report(PopulationModel{pay.mass, pay.score});
    std::vector<std::vector<Json>> rows;
    for (std::size_t k = 0; k < 2; ++k) {
        const auto& r = rep.groups[k];
        rows.push_back({Json(k), cell(r.base_rate), cell(r.fp), cell(r.fn), cell(r.ppv), cell(r.npv_complement),
                        cell(r.identity_residual)});
    }
    out.table("groups", {"group", "base rate", "FP", "FN", "PPV", "P(theta=1 | S=0)", "identity residual"},
              std::move(rows));
    out.field("equal FP", cell(rep.equal_fp));
    out.field("equal FN", cell(rep.equal_fn));
    out.field("calibrated", cell(rep.calibrated));
    out.field("base rates differ", rep.base_rates_differ);
    out.field("all three with unequal base rates", rep.all_three_with_unequal_base_rates);
}

// orders ------------------------------------------------------------------

struct OrderOpts {
    std::string model, model2, thresholds;
    double x = 0, x2 = 0;
    bool strict = false;
};

ConditionalFamily family_of(const FamilyPayload& p) { return ConditionalFamily(p.thetas, p.grid, p.rows); }

std::size_t grid_index(const std::vector<double>& grid, double v) {
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (std::abs(grid[i] - v) <= 1e-12) return i;
    throw ValidationError("value " + format_scalar(v) + " is not on the grid");
}

}  // namespace

void add_knowledge(CLI::App& app, Globals& g) {
    leaf<KnowledgeOpts>(
        app, "knowledge", "Knowledge, belief and agreement on a partition model", g,
        [](CLI::App& s, KnowledgeOpts& o) {
            s.add_option("--model", o.model, "Partition or email-game model file")->required()->check(CLI::ExistingFile);
            s.add_option("--op", o.op, "Operation")
                ->required()
                ->check(CLI::IsMember({"k", "mutual", "ck", "meet", "evident", "posterior", "pbelief", "cpbelief",
                                       "agree", "dialogue", "email"}));
            s.add_option("--event", o.event, "Comma-separated state labels");
            s.add_option("--state", o.state, "True state label");
            s.add_option("--agent", o.agent, "Agent name");
            s.add_option("--p", o.p, "Belief threshold, e.g. 1/2");
        },
        [](Globals& g, KnowledgeOpts& o, const std::string& label) {
            Output out(g.json, label + " " + o.op);
            auto model = g.model(o.model);
            if (o.op == "email") {
                g.exact_unsupported("knowledge --op email");
                email_op(expect<EmailPayload>(model, o.model), out);
            } else if (g.exact) {
                knowledge_op<Rational>(g, o, expect<PartitionPayload>(model, o.model), out);
            } else {
                knowledge_op<double>(g, o, expect<PartitionPayload>(model, o.model), out);
            }
            out.write(*g.out);
        });
}

void add_signals(CLI::App& app, Globals& g) {
    auto* grp = app.add_subcommand("signals", "Bayesian updating and signal constructions");
    grp->require_subcommand(1);
    auto signal_setup = [](CLI::App& s, SignalOpts& o) {
        s.add_option("--signal", o.signal, "Signal file")->required()->check(CLI::ExistingFile);
        s.add_option("--prior", o.prior, "Prior, comma-separated (overrides the file)");
    };
    leaf<SignalOpts>(
        *grp, "update", "Posterior after one realization", g,
        [signal_setup](CLI::App& s, SignalOpts& o) {
            signal_setup(s, o);
            s.add_option("--realization", o.realization, "Realization label")->required();
        },
        [](Globals& g, SignalOpts& o, const std::string& label) {
            Output out(g.json, label);
            g.exact ? signal_update<Rational>(g, o, out) : signal_update<double>(g, o, out);
            out.write(*g.out);
        });
    leaf<SignalOpts>(
        *grp, "induce", "Distribution of posteriors induced by a signal", g, signal_setup,
        [](Globals& g, SignalOpts& o, const std::string& label) {
            Output out(g.json, label);
            g.exact ? signal_induce<Rational>(g, o, out) : signal_induce<double>(g, o, out);
            out.write(*g.out);
        });
    leaf<SignalOpts>(
        *grp, "construct", "Signal inducing a Bayes-plausible distribution of beliefs", g,
        [](CLI::App& s, SignalOpts& o) {
            s.add_option("--beliefs", o.beliefs, "Beliefs file")->required()->check(CLI::ExistingFile);
            s.add_option("--save", o.save, "Write the constructed signal file here");
        },
        [](Globals& g, SignalOpts& o, const std::string& label) {
            Output out(g.json, label);
            g.exact ? signal_construct<Rational>(g, o, out) : signal_construct<double>(g, o, out);
            out.write(*g.out);
        });
    leaf<SignalOpts>(
        *grp, "fairness", "Error rates and calibration of a binary score across two groups", g,
        [](CLI::App& s, SignalOpts& o) {
            s.add_option("--model", o.model, "Population file")->required()->check(CLI::ExistingFile);
        },
        [](Globals& g, SignalOpts& o, const std::string& label) {
            g.exact_unsupported(label);
            Output out(g.json, label);
            signal_fairness(g, o, out);
            out.write(*g.out);
        });
}

void add_orders(CLI::App& app, Globals& g) {
    auto* grp = app.add_subcommand("orders", "Likelihood-ratio, stochastic and affiliation orders");
    grp->require_subcommand(1);
    auto run = [](auto body) {
        return [body](Globals& g, OrderOpts& o, const std::string& label) {
            g.exact_unsupported(label);
            Output out(g.json, label);
            body(g, o, out);
            out.write(*g.out);
        };
    };
    auto model = [](CLI::App& s, OrderOpts& o, const char* what) {
        s.add_option("--model", o.model, what)->required()->check(CLI::ExistingFile);
    };

    leaf<OrderOpts>(
        *grp, "mlrp", "Monotone likelihood ratio property of a family", g,
        [model](CLI::App& s, OrderOpts& o) {
            model(s, o, "Family file");
            s.add_flag("--strict", o.strict, "Require strict ratios");
        },
        run([](Globals& g, OrderOpts& o, Output& out) {
            auto fam = family_of(expect<FamilyPayload>(g.model(o.model), o.model));
            out.field("mlrp", mlrp_check(fam, o.strict));
            if (auto v = find_mlrp_violation(fam)) {
                out.field("violation thetas", Json::array({cell(fam.thetas[v->theta_hi]), cell(fam.thetas[v->theta_lo])}));
                out.field("violation x", Json::array({cell(fam.grid[v->x_hi]), cell(fam.grid[v->x_lo])}));
            }
        }));

    leaf<OrderOpts>(
        *grp, "affiliation", "Affiliation (MTP2) of a joint density", g,
        [model](CLI::App& s, OrderOpts& o) { model(s, o, "Joint density file"); },
        run([](Globals& g, OrderOpts& o, Output& out) {
            auto p = expect<JointPayload>(g.model(o.model), o.model);
            JointDensity j(p.dims, p.mass);
            out.field("affiliated", affiliation_check(j));
            out.field("affiliated (lattice check)", affiliation_check_lattice(j));
        }));

    leaf<OrderOpts>(
        *grp, "fosd", "First-order and likelihood-ratio dominance of two densities", g,
        [model](CLI::App& s, OrderOpts& o) {
            model(s, o, "Density file F");
            s.add_option("--model2", o.model2, "Density file G")->required()->check(CLI::ExistingFile);
        },
        run([](Globals& g, OrderOpts& o, Output& out) {
            auto f = expect<DensityPayload>(g.model(o.model), o.model);
            auto h = expect<DensityPayload>(g.model(o.model2), o.model2);
            FiniteDensity fd(f.grid, f.mass), hd(h.grid, h.mass);
            out.field("F fosd G", fosd_check(fd, hd));
            out.field("G fosd F", fosd_check(hd, fd));
            out.field("F lr-dominates G", lr_dominates(fd, hd));
            out.field("G lr-dominates F", lr_dominates(hd, fd));
        }));

    leaf<OrderOpts>(
        *grp, "favorable", "Is realization x more favorable than x2", g,
        [model](CLI::App& s, OrderOpts& o) {
            model(s, o, "Family file");
            s.add_option("--x", o.x, "Grid value x")->required();
            s.add_option("--x2", o.x2, "Grid value x2")->required();
        },
        run([](Globals& g, OrderOpts& o, Output& out) {
            auto p = expect<FamilyPayload>(g.model(o.model), o.model);
            auto fam = family_of(p);
            std::size_t x = grid_index(p.grid, o.x), x2 = grid_index(p.grid, o.x2);
            out.field("more favorable", more_favorable_check(fam, x, x2));
            if (!p.prior.empty()) {
                auto a = posterior_over_theta(p.prior, fam, x), b = posterior_over_theta(p.prior, fam, x2);
                std::vector<std::vector<Json>> rows;
                for (std::size_t t = 0; t < p.thetas.size(); ++t) rows.push_back({cell(p.thetas[t]), cell(a[t]), cell(b[t])});
                out.table("posteriors", {"theta", "P(theta | x)", "P(theta | x2)"}, std::move(rows));
                out.field("posteriors ordered by fosd", posterior_fosd_property(p.prior, fam));
            }
        }));

    leaf<OrderOpts>(
        *grp, "logconcave", "Log-concavity of a density on a grid", g,
        [model](CLI::App& s, OrderOpts& o) { model(s, o, "Density file"); },
        run([](Globals& g, OrderOpts& o, Output& out) {
            auto p = expect<DensityPayload>(g.model(o.model), o.model);
            out.field("log-concave", log_concavity_check(FiniteDensity(p.grid, p.mass)));
        }));

    leaf<OrderOpts>(
        *grp, "threshold", "Average quality of realizations accepted at each threshold", g,
        [model](CLI::App& s, OrderOpts& o) {
            model(s, o, "Family file with a prior");
            s.add_option("--thresholds", o.thresholds, "Comma-separated thresholds (default: the grid)");
        },
        run([](Globals& g, OrderOpts& o, Output& out) {
            auto p = expect<FamilyPayload>(g.model(o.model), o.model);
            if (p.prior.empty()) throw ValidationError("threshold needs a prior in the family file");
            std::vector<double> th = p.thresholds.empty() ? p.grid : p.thresholds;
            if (!o.thresholds.empty()) th = as<double>(parse_list(o.thresholds));
            auto rep = threshold_report(p.prior, family_of(p), th);
            std::vector<std::vector<Json>> rows;
            for (const auto& r : rep.rows) rows.push_back({cell(r.threshold), cell(r.acceptance_mass), cell(r.mean_quality)});
            out.table("thresholds", {"threshold", "accepted mass", "mean quality"}, std::move(rows));
            auto rev = find_threshold_reversal(rep);
            out.field("reversal", rev.has_value());
            if (rev) {
                out.field("lower threshold", cell(rev->lower_threshold));
                out.field("upper threshold", cell(rev->upper_threshold));
                out.field("lower mean", cell(rev->lower_mean));
                out.field("upper mean", cell(rev->upper_mean));
            }
        }));
}

}  // namespace cli
