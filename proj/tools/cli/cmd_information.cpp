// blackwell, gaussian and cost subcommands.

#include "commands.hpp"

#include "infonomics/blackwell.hpp"
#include "infonomics/gaussian.hpp"
#include "infonomics/infocost.hpp"

namespace cli {

namespace {

using namespace infonomics;

struct BlackwellOpts {
    std::string prior, sigma, sigma2, problem;
};

template <class T>
std::vector<T> prior_for(const Globals& g, const BlackwellOpts& o, const SignalPayload& first) {
    RVec prior = first.prior;
    if (!o.prior.empty()) prior = parse_distribution(o.prior, "prior", g.load());
    if (prior.empty()) throw ValidationError("no prior: pass --prior or add one to the first signal file");
    if (prior.size() != first.states.size()) throw ValidationError("prior length differs from the number of states");
    return as<T>(prior);
}

std::vector<std::string> numbered(const std::string& stem, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(stem + std::to_string(k + 1));
    return out;
}

template <class T>
void kernel(Output& out, const std::string& name, const SignalPayload& from, const SignalPayload& to,
            const GarblingCertificate<T>& c) {
    out.matrix(name, "from \\ to", from.realizations, to.realizations, c.kernel);
    out.field(name + " residual", cell(c.residual));
}

template <class T>
void compare(const Globals& g, const BlackwellOpts& o, Output& out) {
    auto a = expect<SignalPayload>(g.model(o.sigma), o.sigma);
    auto b = expect<SignalPayload>(g.model(o.sigma2), o.sigma2);
    auto r = blackwell_compare(prior_for<T>(g, o, a), to_signal<T>(a), to_signal<T>(b));
    out.field("sigma dominates sigma2", r.first_dominates);
    out.field("sigma2 dominates sigma", r.second_dominates);
    out.field("equivalent", r.equivalent);
    out.field("incomparable", r.incomparable);
    out.field("sigma strictly more informative", r.first_strictly);
    out.field("sigma2 strictly more informative", r.second_strictly);
    if (r.forward) kernel(out, "kernel sigma -> sigma2", a, b, *r.forward);
    if (r.reverse) kernel(out, "kernel sigma2 -> sigma", b, a, *r.reverse);
}

template <class T>
void garble(const Globals& g, const BlackwellOpts& o, Output& out) {
    auto a = expect<SignalPayload>(g.model(o.sigma), o.sigma);
    auto b = expect<SignalPayload>(g.model(o.sigma2), o.sigma2);
    auto c = garbling_test(to_signal<T>(a), to_signal<T>(b));
    out.field("sigma2 is a garbling of sigma", c.has_value());
    if (c) kernel(out, "kernel", a, b, *c);
}

template <class T>
void value(const Globals& g, const BlackwellOpts& o, Output& out) {
    auto a = expect<SignalPayload>(g.model(o.sigma), o.sigma);
    auto prob = expect<ProblemPayload>(g.model(o.problem), o.problem);
    auto prior = prior_for<T>(g, o, a);
    DecisionProblem<T> dp(prob.actions, as<T>(prob.utility));
    std::vector<std::vector<Json>> rows;
    auto add = [&](const std::string& name, const SignalPayload& s) {
        auto v = decision_value(prior, to_signal<T>(s), dp);
        rows.push_back({Json(name), cell(v.gross), cell(v.no_info), cell(v.value)});
    };
    add("sigma", a);
    if (!o.sigma2.empty()) add("sigma2", expect<SignalPayload>(g.model(o.sigma2), o.sigma2));
    out.table("decision value", {"signal", "with signal", "no information", "value"}, std::move(rows));
}

template <class T>
void dist_table(Output& out, const std::string& name, const std::vector<std::string>& states,
                const BeliefDistribution<T>& d) {
    std::vector<std::string> h{"point", "weight"};
    h.insert(h.end(), states.begin(), states.end());
    std::vector<std::vector<Json>> rows;
    for (std::size_t k = 0; k < d.size(); ++k) {
        std::vector<Json> row{Json(k + 1), cell(d.weights[k])};
        for (const auto& v : d.support[k]) row.push_back(cell(v));
        rows.push_back(std::move(row));
    }
    out.table(name, std::move(h), std::move(rows));
}

template <class T>
void mps(const Globals& g, const BlackwellOpts& o, Output& out) {
    auto a = expect<SignalPayload>(g.model(o.sigma), o.sigma);
    auto b = expect<SignalPayload>(g.model(o.sigma2), o.sigma2);
    auto prior = prior_for<T>(g, o, a);
    auto f = induced_posteriors(prior, to_signal<T>(a));
    auto h = induced_posteriors(prior, to_signal<T>(b));
    dist_table(out, "F (sigma)", a.states, f);
    dist_table(out, "G (sigma2)", a.states, h);
    auto c = mps_test(f, h);
    out.field("F is a mean-preserving spread of G", c.has_value());
    if (c) {
        out.matrix("spread kernel", "G \\ F", numbered("g", h.size()), numbered("f", f.size()), c->kernel);
        out.field("spread residual", cell(c->residual));
    }
}

struct GaussOpts {
    double mu = 0, var_theta = 1, var_eps = 1, x = 0, beta = 0.5, rho = 0, v = 1;
};

struct CostOpts {
    std::string belief, p, q, beliefs, kind = "entropy", signal, beta;
};

}  // namespace

void add_blackwell(CLI::App& app, Globals& g) {
    auto* grp = app.add_subcommand("blackwell", "Blackwell order certificates and decision values");
    grp->require_subcommand(1);
    auto pair = [](CLI::App& s, BlackwellOpts& o) {
        s.add_option("--prior", o.prior, "Prior, comma-separated (overrides the signal file)");
        s.add_option("--sigma", o.sigma, "First signal file")->required()->check(CLI::ExistingFile);
        s.add_option("--sigma2", o.sigma2, "Second signal file")->required()->check(CLI::ExistingFile);
    };
    auto dispatch = [](auto f_double, auto f_exact) {
        return [f_double, f_exact](Globals& g, BlackwellOpts& o, const std::string& label) {
            Output out(g.json, label);
            g.exact ? f_exact(g, o, out) : f_double(g, o, out);
            out.write(*g.out);
        };
    };
    leaf<BlackwellOpts>(*grp, "compare", "Rank two signals in the Blackwell order", g, pair,
                        dispatch(compare<double>, compare<Rational>));
    leaf<BlackwellOpts>(
        *grp, "garble", "Is sigma2 a garbling of sigma", g,
        [](CLI::App& s, BlackwellOpts& o) {
            s.add_option("--sigma", o.sigma, "Finer signal file")->required()->check(CLI::ExistingFile);
            s.add_option("--sigma2", o.sigma2, "Candidate garbling")->required()->check(CLI::ExistingFile);
        },
        dispatch(garble<double>, garble<Rational>));
    leaf<BlackwellOpts>(
        *grp, "value", "Value of information in a decision problem", g,
        [](CLI::App& s, BlackwellOpts& o) {
            s.add_option("--prior", o.prior, "Prior, comma-separated (overrides the signal file)");
            s.add_option("--sigma", o.sigma, "Signal file")->required()->check(CLI::ExistingFile);
            s.add_option("--sigma2", o.sigma2, "Optional second signal file")->check(CLI::ExistingFile);
            s.add_option("--problem", o.problem, "Decision problem file")->required()->check(CLI::ExistingFile);
        },
        dispatch(value<double>, value<Rational>));
    leaf<BlackwellOpts>(*grp, "mps", "Mean-preserving spread test on induced posteriors", g, pair,
                        dispatch(mps<double>, mps<Rational>));
}

void add_gaussian(CLI::App& app, Globals& g) {
    auto* grp = app.add_subcommand("gaussian", "Normal-normal updating and its applications");
    grp->require_subcommand(1);
    auto run = [](auto body) {
        return [body](Globals& g, GaussOpts& o, const std::string& label) {
            g.exact_unsupported(label);
            Output out(g.json, label);
            body(o, out);
            out.write(*g.out);
        };
    };
    auto variances = [](CLI::App& s, GaussOpts& o) {
        s.add_option("--var-theta", o.var_theta, "Prior variance of theta")->required();
        s.add_option("--var-eps", o.var_eps, "Noise variance")->required();
    };
    leaf<GaussOpts>(
        *grp, "posterior", "Posterior of theta after X = theta + eps", g,
        [variances](CLI::App& s, GaussOpts& o) {
            s.add_option("--mu", o.mu, "Prior mean")->required();
            variances(s, o);
            s.add_option("--x", o.x, "Observation")->required();
        },
        run([](GaussOpts& o, Output& out) {
            auto p = scalar_posterior({o.mu, o.var_theta, o.var_eps}, o.x);
            out.field("mean", cell(p.mean));
            out.field("variance", cell(p.variance));
        }));
    leaf<GaussOpts>(*grp, "career", "Equilibrium effort under career concerns", g, variances,
                    run([](GaussOpts& o, Output& out) {
                        out.field("effort", cell(career_concerns_effort(o.var_theta, o.var_eps)));
                    }));
    leaf<GaussOpts>(
        *grp, "coordination", "Linear equilibrium of the beauty contest", g,
        [variances](CLI::App& s, GaussOpts& o) {
            s.add_option("--mu", o.mu, "Prior mean")->required();
            variances(s, o);
            s.add_option("--beta", o.beta, "Coordination weight")->required();
        },
        run([](GaussOpts& o, Output& out) {
            auto e = coordination_equilibrium(o.mu, o.var_theta, o.var_eps, o.beta);
            out.field("c", cell(e.c));
            out.field("kappa", cell(e.kappa));
            out.field("fixed point residual", cell(e.fixed_point_residual));
        }));
    leaf<GaussOpts>(
        *grp, "datasharing", "Payments needed for two users to share correlated data", g,
        [](CLI::App& s, GaussOpts& o) {
            s.add_option("--rho", o.rho, "Correlation of the two types")->required();
            s.add_option("--v", o.v, "Prior variance")->required();
        },
        run([](GaussOpts& o, Output& out) {
            auto r = data_sharing_analysis(o.rho, o.v);
            std::vector<std::vector<Json>> rows;
            for (int a1 = 0; a1 < 2; ++a1)
                for (int a2 = 0; a2 < 2; ++a2)
                    rows.push_back({Json(a1), Json(a2), cell(r.variance[a1][a2][0]), cell(r.variance[a1][a2][1])});
            out.table("posterior variance", {"user 1 shares", "user 2 shares", "var theta1", "var theta2"},
                      std::move(rows));
            out.field("payment each (both share)", cell(r.both_share_payment_each));
            out.field("total (both share)", cell(r.both_share_total));
            out.field("total (one shares)", cell(r.one_share_total));
            out.field("rho^2 threshold", cell(r.rho2_threshold));
            out.field("sharing cheaper for both", r.sharing_cheaper_for_both);
        }));
}

void add_cost(CLI::App& app, Globals& g) {
    auto* grp = app.add_subcommand("cost", "Entropy, divergence and information cost functionals (nats)");
    grp->require_subcommand(1);
    auto run = [](auto body) {
        return [body](Globals& g, CostOpts& o, const std::string& label) {
            g.exact_unsupported(label);
            Output out(g.json, label);
            body(g, o, out);
            out.write(*g.out);
        };
    };
    leaf<CostOpts>(
        *grp, "entropy", "Shannon entropy of a belief", g,
        [](CLI::App& s, CostOpts& o) { s.add_option("--belief", o.belief, "Belief, comma-separated")->required(); },
        run([](Globals& g, CostOpts& o, Output& out) {
            out.field("entropy", cell(entropy(as<double>(parse_distribution(o.belief, "belief", g.load())))));
        }));
    leaf<CostOpts>(
        *grp, "kl", "Kullback-Leibler divergence D(p || q)", g,
        [](CLI::App& s, CostOpts& o) {
            s.add_option("--p", o.p, "First distribution")->required();
            s.add_option("--q", o.q, "Second distribution")->required();
        },
        run([](Globals& g, CostOpts& o, Output& out) {
            auto p = as<double>(parse_distribution(o.p, "p", g.load()));
            auto q = as<double>(parse_distribution(o.q, "q", g.load()));
            out.field("kl", cell(kl(p, q)));
        }));
    leaf<CostOpts>(
        *grp, "ups", "Uniformly posterior-separable cost of a belief distribution", g,
        [](CLI::App& s, CostOpts& o) {
            s.add_option("--beliefs", o.beliefs, "Beliefs file")->required()->check(CLI::ExistingFile);
            s.add_option("--kind", o.kind, "entropy or variance")
                ->check(CLI::IsMember({"entropy", "variance"}))
                ->capture_default_str();
        },
        run([](Globals& g, CostOpts& o, Output& out) {
            auto p = expect<BeliefsPayload>(g.model(o.beliefs), o.beliefs);
            auto dist = to_beliefs<double>(p);
            auto prior = p.prior.empty() ? dist.mean() : as<double>(p.prior);
            CostSpec spec;
            if (o.kind == "variance") {
                spec.kind = CostKind::VarianceReduction;
                spec.state_values = p.values;
            }
            out.field("kind", o.kind);
            out.field("cost", cell(ups_cost(spec, prior, dist)));
        }));
    leaf<CostOpts>(
        *grp, "pst", "Prior-independent cost from pairwise state divergences", g,
        [](CLI::App& s, CostOpts& o) {
            s.add_option("--signal", o.signal, "Signal file")->required()->check(CLI::ExistingFile);
            s.add_option("--beta", o.beta, "Beta matrix file")->required()->check(CLI::ExistingFile);
        },
        run([](Globals& g, CostOpts& o, Output& out) {
            auto sig = expect<SignalPayload>(g.model(o.signal), o.signal);
            auto beta = expect<BetaPayload>(g.model(o.beta), o.beta);
            if (beta.matrix.size() != sig.states.size())
                throw ValidationError("beta must be keyed to the signal's " + std::to_string(sig.states.size()) +
                                      " states");
            out.field("cost", cell(pst_cost(to_signal<double>(sig), beta.matrix)));
        }));
}

}  // namespace cli
