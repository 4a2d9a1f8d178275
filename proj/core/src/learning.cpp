#include "infonomics/learning.hpp"

#include "infonomics/blackwell.hpp"
#include "infonomics/error.hpp"
#include "infonomics/orders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace infonomics {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_prob_vector(const std::vector<double>& p, const char* what) {
    if (p.empty()) throw ValidationError(std::string(what) + " is empty");
    double total = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0) throw ValidationError(std::string(what) + " has a negative entry");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ValidationError(std::string(what) + " does not sum to 1");
}

void check_density(const Matrix<double>& density, std::size_t n_params) {
    if (density.size() != n_params) throw ValidationError("density needs one row per parameter");
    for (const auto& row : density) {
        if (row.size() != density.front().size()) throw ValidationError("density rows have different lengths");
        check_prob_vector(row, "density row");
    }
}

// Log-space belief that renormalizes to keep the maximum at zero.
class LogBelief {
public:
    explicit LogBelief(const std::vector<double>& prior) : lp_(prior.size()) {
        for (std::size_t i = 0; i < prior.size(); ++i) lp_[i] = prior[i] > 0.0 ? std::log(prior[i]) : kNegInf;
    }

    void update(const Matrix<double>& density, std::size_t x) {
        double top = kNegInf;
        for (std::size_t i = 0; i < lp_.size(); ++i) {
            const double f = density[i][x];
            lp_[i] = (f > 0.0 && lp_[i] != kNegInf) ? lp_[i] + std::log(f) : kNegInf;
            top = std::max(top, lp_[i]);
        }
        if (top == kNegInf) throw ZeroProbabilityError("observation has zero probability under the current belief");
        for (auto& v : lp_)
            if (v != kNegInf) v -= top;
    }

    std::vector<double> belief() const {
        std::vector<double> out(lp_.size());
        double total = 0.0;
        for (std::size_t i = 0; i < lp_.size(); ++i) total += out[i] = lp_[i] == kNegInf ? 0.0 : std::exp(lp_[i]);
        for (auto& v : out) v /= total;
        return out;
    }

private:
    std::vector<double> lp_;
};

double quantile(std::vector<double> v, double p) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::vector<std::size_t> checkpoints(std::size_t horizon) {
    std::vector<std::size_t> out;
    const std::size_t steps = std::min<std::size_t>(horizon, 10);
    for (std::size_t k = 0; k <= steps; ++k) out.push_back(steps == 0 ? 0 : horizon * k / steps);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

QuantileRow summarize(std::size_t t, const std::vector<double>& v) {
    return {t, quantile(v, 0.05), quantile(v, 0.5), quantile(v, 0.95)};
}

}  // namespace

void LearningEnvironment::validate() const {
    if (params.empty()) throw ValidationError("environment has no parameters");
    if (prior.size() != params.size()) throw ValidationError("prior does not match the parameter grid");
    check_prob_vector(prior, "prior");
    check_density(density, params.size());
    if (truth >= params.size()) throw ValidationError("true parameter index out of range");
}

bool LearningEnvironment::identified(double tol) const {
    for (std::size_t a = 0; a < density.size(); ++a)
        for (std::size_t b = 0; b < a; ++b) {
            double gap = 0.0;
            for (std::size_t x = 0; x < density[a].size(); ++x) gap = std::max(gap, std::abs(density[a][x] - density[b][x]));
            if (gap <= tol) return false;
        }
    return true;
}

LearningEnvironment binary_environment(double q, double prior_a, std::size_t truth, std::size_t horizon) {
    if (!(q >= 0.0 && q <= 1.0) || !(prior_a >= 0.0 && prior_a <= 1.0))
        throw ValidationError("q and the prior must lie in [0,1]");
    LearningEnvironment env;
    env.params = {1.0, 0.0};
    env.prior = {prior_a, 1.0 - prior_a};
    env.density = {{q, 1.0 - q}, {1.0 - q, q}};
    env.truth = truth;
    env.horizon = horizon;
    env.validate();
    return env;
}

Matrix<double> sequential_posterior(const std::vector<double>& prior, const Matrix<double>& density,
                                    const std::vector<std::size_t>& observations) {
    check_prob_vector(prior, "prior");
    check_density(density, prior.size());
    LogBelief b(prior);
    Matrix<double> out{b.belief()};
    out.reserve(observations.size() + 1);
    for (auto x : observations) {
        if (x >= density.front().size()) throw ValidationError("observation index out of range");
        b.update(density, x);
        out.push_back(b.belief());
    }
    return out;
}

Matrix<double> sequential_posterior(const LearningEnvironment& env, const std::vector<std::size_t>& observations) {
    env.validate();
    return sequential_posterior(env.prior, env.density, observations);
}

std::vector<std::size_t> sample_stream(const Matrix<double>& density, std::size_t theta, std::size_t length,
                                       std::uint64_t seed, std::uint64_t path) {
    if (theta >= density.size()) throw ValidationError("parameter index out of range");
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)};
    std::mt19937_64 rng(seq);
    std::discrete_distribution<std::size_t> draw(density[theta].begin(), density[theta].end());
    std::vector<std::size_t> out(length);
    for (auto& x : out) x = draw(rng);
    return out;
}

ConsistencyReport consistency_sim(const LearningEnvironment& env, std::size_t n_paths, std::size_t horizon,
                                  double delta, std::uint64_t seed, const std::function<double(double)>& g) {
    env.validate();
    if (!env.identified()) throw ValidationError("parameters are not identified: two densities coincide");
    if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0,1)");
    if (n_paths == 0) throw ValidationError("need at least one path");
    auto gf = g ? g : [](double v) { return v; };
    const auto cps = checkpoints(horizon);
    std::vector<std::vector<double>> at(cps.size());
    ConsistencyReport rep;
    rep.n_paths = n_paths;
    rep.horizon = horizon;
    rep.delta = delta;
    std::size_t hits = 0;
    double g_err = 0.0;
    for (std::size_t path = 0; path < n_paths; ++path) {
        const auto xs = sample_stream(env.density, env.truth, horizon, seed, path);
        LogBelief b(env.prior);
        std::size_t next = 0;
        for (std::size_t t = 0; t <= horizon; ++t) {
            if (t > 0) b.update(env.density, xs[t - 1]);
            if (next < cps.size() && cps[next] == t) at[next++].push_back(b.belief()[env.truth]);
        }
        const auto post = b.belief();
        if (post[env.truth] >= 1.0 - delta) ++hits;
        double eg = 0.0;
        for (std::size_t i = 0; i < post.size(); ++i) eg += post[i] * gf(env.params[i]);
        g_err += std::abs(eg - gf(env.params[env.truth]));
    }
    rep.fraction_concentrated = static_cast<double>(hits) / static_cast<double>(n_paths);
    rep.mean_abs_g_error = g_err / static_cast<double>(n_paths);
    for (std::size_t k = 0; k < cps.size(); ++k) rep.truth_mass.push_back(summarize(cps[k], at[k]));
    return rep;
}

namespace {

// Total variation between the two predictive laws of the next `depth` draws.
double predictive_gap(const std::vector<double>& b1, const std::vector<double>& b2, const Matrix<double>& density,
                      std::size_t depth) {
    const std::size_t nx = density.front().size();
    std::vector<std::size_t> seq(depth, 0);
    double tv = 0.0;
    for (;;) {
        double p1 = 0.0, p2 = 0.0;
        for (std::size_t i = 0; i < density.size(); ++i) {
            double lik = 1.0;
            for (auto x : seq) lik *= density[i][x];
            p1 += b1[i] * lik;
            p2 += b2[i] * lik;
        }
        tv += std::abs(p1 - p2);
        std::size_t pos = 0;
        while (pos < depth && ++seq[pos] == nx) seq[pos++] = 0;
        if (pos == depth) break;
    }
    return 0.5 * tv;
}

}  // namespace

MergingReport merging_sim(const LearningEnvironment& env, const std::vector<double>& prior2, std::size_t n_paths,
                          std::size_t horizon, std::uint64_t seed, std::size_t depth) {
    env.validate();
    if (prior2.size() != env.prior.size()) throw ValidationError("second prior does not match the parameter grid");
    check_prob_vector(prior2, "second prior");
    for (std::size_t i = 0; i < prior2.size(); ++i)
        if ((env.prior[i] > 0.0) != (prior2[i] > 0.0))
            throw ValidationError("priors are not mutually absolutely continuous");
    if (n_paths == 0) throw ValidationError("need at least one path");
    if (depth == 0 || std::pow(static_cast<double>(env.num_realizations()), static_cast<double>(depth)) > 1 << 20)
        throw ValidationError("event depth must be positive and keep the cylinder count below 2^20");
    const auto cps = checkpoints(horizon);
    std::vector<std::vector<double>> at(cps.size());
    for (std::size_t path = 0; path < n_paths; ++path) {
        const auto xs = sample_stream(env.density, env.truth, horizon, seed, path);
        LogBelief a(env.prior), b(prior2);
        std::size_t next = 0;
        for (std::size_t t = 0; t <= horizon; ++t) {
            if (t > 0) {
                a.update(env.density, xs[t - 1]);
                b.update(env.density, xs[t - 1]);
            }
            if (next < cps.size() && cps[next] == t)
                at[next++].push_back(predictive_gap(a.belief(), b.belief(), env.density, depth));
        }
    }
    MergingReport rep;
    rep.n_paths = n_paths;
    rep.horizon = horizon;
    rep.depth = depth;
    for (std::size_t k = 0; k < cps.size(); ++k) rep.discrepancy.push_back(summarize(cps[k], at[k]));
    return rep;
}

KlsReport kls_disagreement_check(const std::vector<double>& thetas, const std::vector<double>& prior_a,
                                 const std::vector<double>& prior_b, const SignalStructure<double>& x,
                                 const SignalStructure<double>& xt, double tol) {
    const std::size_t n = thetas.size();
    if (prior_a.size() != n || prior_b.size() != n || x.num_states() != n || xt.num_states() != n)
        throw ValidationError("parameters, priors and signals disagree on size");
    check_prob_vector(prior_a, "Ann's prior");
    check_prob_vector(prior_b, "Bob's prior");
    auto grid = [](std::size_t k) {
        std::vector<double> g(k);
        for (std::size_t i = 0; i < k; ++i) g[i] = static_cast<double>(i);
        return g;
    };
    if (!mlrp_check(ConditionalFamily(thetas, grid(x.num_realizations()), x.matrix), false, tol) ||
        !mlrp_check(ConditionalFamily(thetas, grid(xt.num_realizations()), xt.matrix), false, tol))
        throw ValidationError("signals must have MLRP in realization order");
    if (!lr_dominates(FiniteDensity(thetas, prior_b), FiniteDensity(thetas, prior_a), tol))
        throw ValidationError("Bob's prior must likelihood-ratio dominate Ann's");
    auto cert = garbling_test(x, xt);
    if (!cert) throw ValidationError("the second signal is not a garbling of the first");

    auto mean = [&](const std::vector<double>& p) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m += p[i] * thetas[i];
        return m;
    };
    // E_outer[E_inner(theta | realization)].
    auto cross = [&](const std::vector<double>& outer, const std::vector<double>& inner, const SignalStructure<double>& s) {
        double total = 0.0;
        for (std::size_t r = 0; r < s.num_realizations(); ++r) {
            double po = 0.0, pi = 0.0, num = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                po += outer[i] * s.matrix[i][r];
                pi += inner[i] * s.matrix[i][r];
                num += inner[i] * s.matrix[i][r] * thetas[i];
            }
            if (po == 0.0) continue;
            if (pi == 0.0) throw ZeroProbabilityError("a realization one agent expects has zero probability for the other");
            total += po * num / pi;
        }
        return total;
    };
    KlsReport r;
    r.mu_a = mean(prior_a);
    r.mu_b = mean(prior_b);
    r.mu_ab_x = cross(prior_a, prior_b, x);
    r.mu_ab_xt = cross(prior_a, prior_b, xt);
    r.mu_ba_x = cross(prior_b, prior_a, x);
    r.mu_ba_xt = cross(prior_b, prior_a, xt);
    r.garbling_residual = cert->residual;
    const double eps = std::max(tol, 1e-12);
    r.chain_ab = r.mu_a <= r.mu_ab_x + eps && r.mu_ab_x <= r.mu_ab_xt + eps && r.mu_ab_xt <= r.mu_b + eps;
    r.chain_ba = r.mu_a <= r.mu_ba_xt + eps && r.mu_ba_xt <= r.mu_ba_x + eps && r.mu_ba_x <= r.mu_b + eps;
    return r;
}

}  // namespace infonomics
