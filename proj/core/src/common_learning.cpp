#include "infonomics/common_learning.hpp"

#include "infonomics/error.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace infonomics {

namespace {

using Bits = boost::dynamic_bitset<>;

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Enumerates count vectors of length k summing to t, in lexicographic order.
void enumerate_counts(std::size_t k, std::size_t t, std::vector<std::vector<std::uint16_t>>& out) {
    std::vector<std::uint16_t> cur(k, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
        if (pos + 1 == k) {
            cur[pos] = static_cast<std::uint16_t>(left);
            out.push_back(cur);
            return;
        }
        for (std::size_t c = 0; c <= left; ++c) {
            cur[pos] = static_cast<std::uint16_t>(c);
            self(self, pos + 1, left - c);
        }
    };
    rec(rec, 0, t);
}

struct LiftedSpace {
    std::size_t n_multisets = 0;
    std::vector<double> mass;         // index theta * n_multisets + s
    std::vector<std::size_t> block1;  // per multiset
    std::vector<std::size_t> block2;
    std::size_t n_blocks1 = 0, n_blocks2 = 0;
    std::vector<std::vector<std::uint16_t>> counts;
    std::vector<std::pair<std::size_t, std::size_t>> cats;
};

Bits believes(const LiftedSpace& sp, const std::vector<std::size_t>& block, std::size_t n_blocks, const Bits& e,
              double q, double tol) {
    const std::size_t n = sp.n_multisets, total = sp.mass.size();
    std::vector<double> in(n_blocks, 0.0), all(n_blocks, 0.0);
    for (std::size_t st = 0; st < total; ++st) {
        const std::size_t b = block[st % n];
        all[b] += sp.mass[st];
        if (e.test(st)) in[b] += sp.mass[st];
    }
    Bits out(total);
    for (std::size_t st = 0; st < total; ++st) {
        const std::size_t b = block[st % n];
        if (all[b] > 0.0 && in[b] >= (q - tol) * all[b]) out.set(st);
    }
    return out;
}

double prob_given_theta(const LiftedSpace& sp, const Bits& e, std::size_t theta, double theta_mass) {
    double p = 0.0;
    for (std::size_t s = 0; s < sp.n_multisets; ++s) {
        const std::size_t st = theta * sp.n_multisets + s;
        if (e.test(st)) p += sp.mass[st];
    }
    return p / theta_mass;
}

}  // namespace

void TwoAgentSignalModel::validate() const {
    if (joint.size() < 2) throw ValidationError("need at least two parameter values");
    if (thetas.size() != joint.size()) throw ValidationError("parameter labels do not match the joint tables");
    const std::size_t n1 = joint.front().size();
    if (n1 == 0 || joint.front().front().empty()) throw ValidationError("empty signal table");
    const std::size_t n2 = joint.front().front().size();
    for (const auto& tab : joint) {
        if (tab.size() != n1) throw ValidationError("joint tables have different shapes");
        double total = 0.0;
        for (const auto& row : tab) {
            if (row.size() != n2) throw ValidationError("joint tables have different shapes");
            for (double v : row) {
                if (!std::isfinite(v) || v < 0.0) throw ValidationError("joint table has a negative entry");
                total += v;
            }
        }
        if (std::abs(total - 1.0) > 1e-9) throw ValidationError("joint table does not sum to 1");
    }
}

std::vector<double> TwoAgentSignalModel::marginal1(std::size_t theta) const {
    std::vector<double> out(num_x1(), 0.0);
    for (std::size_t i = 0; i < num_x1(); ++i)
        for (double v : joint.at(theta)[i]) out[i] += v;
    return out;
}

std::vector<double> TwoAgentSignalModel::marginal2(std::size_t theta) const {
    std::vector<double> out(num_x2(), 0.0);
    for (const auto& row : joint.at(theta))
        for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j];
    return out;
}

TwoAgentSignalModel independent_model(const Matrix<double>& phi, const Matrix<double>& psi) {
    if (phi.size() != psi.size()) throw ValidationError("marginal tables disagree on the number of parameters");
    TwoAgentSignalModel m;
    for (std::size_t t = 0; t < phi.size(); ++t) {
        m.thetas.push_back("t" + std::to_string(t));
        Matrix<double> tab(phi[t].size(), std::vector<double>(psi[t].size()));
        for (std::size_t i = 0; i < phi[t].size(); ++i)
            for (std::size_t j = 0; j < psi[t].size(); ++j) tab[i][j] = phi[t][i] * psi[t][j];
        m.joint.push_back(std::move(tab));
    }
    m.validate();
    return m;
}

TwoAgentSignalModel public_model(const Matrix<double>& phi) {
    TwoAgentSignalModel m;
    for (std::size_t t = 0; t < phi.size(); ++t) {
        m.thetas.push_back("t" + std::to_string(t));
        Matrix<double> tab(phi[t].size(), std::vector<double>(phi[t].size(), 0.0));
        for (std::size_t i = 0; i < phi[t].size(); ++i) tab[i][i] = phi[t][i];
        m.joint.push_back(std::move(tab));
    }
    m.validate();
    return m;
}

TwoAgentSignalModel email_twist_model(double theta_low, double theta_high, double eps, std::size_t levels) {
    if (!(theta_low >= 0.0 && theta_low < theta_high && theta_high <= 1.0))
        throw ValidationError("need 0 <= theta_low < theta_high <= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("eps must lie in (0,1)");
    if (levels < 1) throw ValidationError("need at least one nonzero level");
    TwoAgentSignalModel m;
    const std::size_t n1 = (levels + 1) / 2 + 1, n2 = levels / 2 + 1;
    for (double th : {theta_low, theta_high}) {
        m.thetas.push_back(fmt(th));
        Matrix<double> tab(n1, std::vector<double>(n2, 0.0));
        tab[0][0] = th;
        for (std::size_t lv = 1; lv <= levels; ++lv) {
            const double p = lv < levels ? eps * std::pow(1.0 - eps, static_cast<double>(lv - 1)) * (1.0 - th)
                                         : std::pow(1.0 - eps, static_cast<double>(levels - 1)) * (1.0 - th);
            tab[(lv + 1) / 2][lv / 2] += p;
        }
        m.joint.push_back(std::move(tab));
    }
    m.validate();
    return m;
}

ContagionDiagnostics contagion_diagnostics(const TwoAgentSignalModel& model, std::size_t theta) {
    model.validate();
    if (theta >= model.num_thetas()) throw ValidationError("parameter index out of range");
    const auto phi = model.marginal1(theta), psi = model.marginal2(theta);
    const auto& pi = model.joint[theta];
    const std::size_t n1 = model.num_x1(), n2 = model.num_x2();
    ContagionDiagnostics d;
    d.m1.assign(n1, std::vector<double>(n2, 0.0));
    d.m2.assign(n2, std::vector<double>(n1, 0.0));
    d.m12.assign(n1, std::vector<double>(n1, 0.0));
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            if (phi[i] > 0.0) d.m1[i][j] = pi[i][j] / phi[i];
            if (psi[j] > 0.0) d.m2[j][i] = pi[i][j] / psi[j];
        }
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            for (std::size_t k = 0; k < n1; ++k) d.m12[i][k] += d.m1[i][j] * d.m2[j][k];
    for (std::size_t i = 0; i < n1; ++i) {
        if (phi[i] == 0.0) continue;
        double s = 0.0;
        for (double v : d.m12[i]) s += v;
        d.row_sum_error = std::max(d.row_sum_error, std::abs(s - 1.0));
    }
    for (std::size_t k = 0; k < n1; ++k) {
        double v = 0.0;
        for (std::size_t i = 0; i < n1; ++i) v += phi[i] * d.m12[i][k];
        d.stationarity_error = std::max(d.stationarity_error, std::abs(v - phi[k]));
    }
    return d;
}

CommonLearningReport common_learning_sim(const TwoAgentSignalModel& model, const std::vector<double>& prior,
                                         std::size_t theta, std::size_t horizon, double q, std::size_t n_paths,
                                         std::uint64_t seed, const CommonLearningOptions& opt) {
    model.validate();
    const std::size_t nt = model.num_thetas();
    if (prior.size() != nt) throw ValidationError("prior does not match the parameter set");
    double ptot = 0.0;
    for (double v : prior) {
        if (!(v >= 0.0)) throw ValidationError("prior has a negative entry");
        ptot += v;
    }
    if (std::abs(ptot - 1.0) > 1e-9) throw ValidationError("prior does not sum to 1");
    if (theta >= nt || prior[theta] <= 0.0) throw ValidationError("true parameter must have positive prior mass");
    if (!(q > 0.0 && q <= 1.0)) throw ValidationError("q must lie in (0,1]");
    if (horizon == 0) throw ValidationError("horizon must be positive");
    if (horizon > std::numeric_limits<std::uint16_t>::max()) throw ValidationError("horizon too long");

    LiftedSpace sp;
    for (std::size_t i = 0; i < model.num_x1(); ++i)
        for (std::size_t j = 0; j < model.num_x2(); ++j)
            for (std::size_t t = 0; t < nt; ++t)
                if (model.joint[t][i][j] > 0.0) {
                    sp.cats.emplace_back(i, j);
                    break;
                }
    const std::size_t k = sp.cats.size();
    const double log_size = std::lgamma(static_cast<double>(horizon + k)) - std::lgamma(static_cast<double>(horizon + 1)) -
                            std::lgamma(static_cast<double>(k));
    if (log_size + std::log(static_cast<double>(nt)) > std::log(static_cast<double>(opt.max_states)))
        throw ValidationError("history space too large: " + fmt(std::exp(log_size)) + " multisets per parameter");
    enumerate_counts(k, horizon, sp.counts);
    const std::size_t n = sp.n_multisets = sp.counts.size();

    std::map<std::vector<std::uint16_t>, std::size_t> keys1, keys2;
    sp.block1.resize(n);
    sp.block2.resize(n);
    sp.mass.assign(nt * n, 0.0);
    const double log_t_fact = std::lgamma(static_cast<double>(horizon + 1));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::uint16_t> c1(model.num_x1(), 0), c2(model.num_x2(), 0);
        double log_coef = log_t_fact;
        for (std::size_t c = 0; c < k; ++c) {
            c1[sp.cats[c].first] += sp.counts[s][c];
            c2[sp.cats[c].second] += sp.counts[s][c];
            log_coef -= std::lgamma(sp.counts[s][c] + 1.0);
        }
        sp.block1[s] = keys1.try_emplace(std::move(c1), keys1.size()).first->second;
        sp.block2[s] = keys2.try_emplace(std::move(c2), keys2.size()).first->second;
        for (std::size_t t = 0; t < nt; ++t) {
            double lp = log_coef;
            for (std::size_t c = 0; c < k && lp > -std::numeric_limits<double>::infinity(); ++c) {
                if (sp.counts[s][c] == 0) continue;
                const double pc = model.joint[t][sp.cats[c].first][sp.cats[c].second];
                lp = pc > 0.0 ? lp + sp.counts[s][c] * std::log(pc) : -std::numeric_limits<double>::infinity();
            }
            sp.mass[t * n + s] = prior[t] * std::exp(lp);
        }
    }
    sp.n_blocks1 = keys1.size();
    sp.n_blocks2 = keys2.size();

    Bits f(nt * n);
    for (std::size_t s = 0; s < n; ++s) f.set(theta * n + s);
    const Bits b1 = believes(sp, sp.block1, sp.n_blocks1, f, q, opt.belief_tol);
    const Bits b2 = believes(sp, sp.block2, sp.n_blocks2, f, q, opt.belief_tol);
    Bits cur = b1 & b2;
    Bits acc = cur;
    std::vector<Bits> seen;
    CommonLearningReport rep;
    for (std::size_t level = 1;; ++level) {
        if (std::find(seen.begin(), seen.end(), cur) != seen.end()) {
            rep.stabilized = true;
            break;
        }
        if (level > opt.k_max) break;
        seen.push_back(cur);
        cur = believes(sp, sp.block1, sp.n_blocks1, cur, q, opt.belief_tol) &
              believes(sp, sp.block2, sp.n_blocks2, cur, q, opt.belief_tol);
        acc &= cur;
    }

    const double theta_mass = prior[theta];
    rep.theta = theta;
    rep.horizon = horizon;
    rep.q = q;
    rep.num_states = nt * n;
    rep.categories = k;
    rep.prob_individual1 = prob_given_theta(sp, b1 & f, theta, theta_mass);
    rep.prob_individual2 = prob_given_theta(sp, b2 & f, theta, theta_mass);
    rep.prob_both = prob_given_theta(sp, b1 & b2 & f, theta, theta_mass);
    rep.prob_common = prob_given_theta(sp, acc & f, theta, theta_mass);
    rep.label = "exact on the history space; k_max=" + std::to_string(opt.k_max) +
                (rep.stabilized ? "" : "; iteration did not cycle, common set is an outer bound");
    for (std::size_t t = 0; t < nt; ++t) rep.diagnostics.push_back(contagion_diagnostics(model, t));

    if (n_paths > 0) {
        std::map<std::vector<std::uint16_t>, std::size_t> index;
        for (std::size_t s = 0; s < n; ++s) index.emplace(sp.counts[s], s);
        std::vector<double> w(k);
        for (std::size_t c = 0; c < k; ++c) w[c] = model.joint[theta][sp.cats[c].first][sp.cats[c].second];
        std::size_t h1 = 0, h2 = 0, hc = 0;
        for (std::size_t path = 0; path < n_paths; ++path) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)};
            std::mt19937_64 rng(seq);
            std::discrete_distribution<std::size_t> draw(w.begin(), w.end());
            std::vector<std::uint16_t> cnt(k, 0);
            for (std::size_t t = 0; t < horizon; ++t) ++cnt[draw(rng)];
            const std::size_t st = theta * n + index.at(cnt);
            h1 += b1.test(st);
            h2 += b2.test(st);
            hc += acc.test(st);
        }
        const double np = static_cast<double>(n_paths);
        rep.n_paths = n_paths;
        rep.sim_individual1 = h1 / np;
        rep.sim_individual2 = h2 / np;
        rep.sim_common = hc / np;
    }
    return rep;
}

}  // namespace infonomics
