#include "infonomics/infocost.hpp"

#include "infonomics/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace infonomics {

namespace {

void check_distribution(const std::vector<double>& p, const char* what) {
    if (p.empty()) throw ValidationError(std::string(what) + " is empty");
    double total = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0) throw ValidationError(std::string(what) + " has a negative entry");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ValidationError(std::string(what) + " does not sum to 1");
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void check_plausible(const std::vector<double>& prior, const BeliefDistribution<double>& dist, double tol) {
    check_distribution(prior, "prior");
    if (dist.size() == 0) throw ValidationError("empty distribution over posteriors");
    for (const auto& q : dist.support)
        if (q.size() != prior.size()) throw ValidationError("posterior has the wrong dimension");
    if (!is_bayes_plausible(prior, dist, tol)) throw ValidationError("distribution over posteriors is not Bayes-plausible");
}

std::vector<double> default_values(std::size_t n, std::vector<double> values) {
    if (values.empty()) {
        values.resize(n);
        for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<double>(i);
    }
    if (values.size() != n) throw ValidationError("state values do not match the number of states");
    return values;
}

}  // namespace

double entropy(const std::vector<double>& p) {
    check_distribution(p, "belief");
    double h = 0.0;
    for (double v : p) h -= xlogx(v);
    return h;
}

double entropy_gaussian(double var) {
    if (!(var > 0.0)) throw ValidationError("variance must be positive");
    return 0.5 * std::log(2.0 * std::numbers::pi * var) + 0.5;
}

double kl(const std::vector<double>& p, const std::vector<double>& q) {
    check_distribution(p, "first distribution");
    check_distribution(q, "second distribution");
    if (p.size() != q.size()) throw ValidationError("distributions have different sizes");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
        d += p[i] * std::log(p[i] / q[i]);
    }
    return std::max(d, 0.0);
}

double kl_gaussian_means(double mu_p, double mu_q, double var) {
    if (!(var > 0.0)) throw ValidationError("variance must be positive");
    return (mu_q - mu_p) * (mu_q - mu_p) / (2.0 * var);
}

double belief_variance(const std::vector<double>& belief, const std::vector<double>& values) {
    if (belief.size() != values.size()) throw ValidationError("state values do not match the belief");
    double m = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < belief.size(); ++i) {
        m += belief[i] * values[i];
        m2 += belief[i] * values[i] * values[i];
    }
    return std::max(m2 - m * m, 0.0);
}

double cost_entropy_reduction(const std::vector<double>& prior, const BeliefDistribution<double>& dist, double tol) {
    check_plausible(prior, dist, tol);
    double c = entropy(prior);
    for (std::size_t k = 0; k < dist.size(); ++k) c -= dist.weights[k] * entropy(dist.support[k]);
    return std::max(c, 0.0);
}

double cost_variance_reduction(const std::vector<double>& prior, const BeliefDistribution<double>& dist,
                               std::vector<double> values, double tol) {
    check_plausible(prior, dist, tol);
    values = default_values(prior.size(), std::move(values));
    double c = belief_variance(prior, values);
    for (std::size_t k = 0; k < dist.size(); ++k) c -= dist.weights[k] * belief_variance(dist.support[k], values);
    return std::max(c, 0.0);
}

double bregman(const BeliefFunction& phi, const std::vector<double>& p, const std::vector<double>& q, double step,
               double tol) {
    check_distribution(p, "base belief");
    check_distribution(q, "target belief");
    if (p.size() != q.size()) throw ValidationError("beliefs have different sizes");
    auto along = [&](double t) {
        std::vector<double> r(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] + t * (q[i] - p[i]);
        return r;
    };
    bool interior_back = true;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] - step * (q[i] - p[i]) < 0.0) interior_back = false;
    const double fp = phi(p), fq = phi(q);
    // Directional derivative of Phi at p toward q.
    const double slope = interior_back ? (phi(along(step)) - phi(along(-step))) / (2.0 * step)
                                       : (phi(along(step)) - fp) / step;
    const double d = fp - fq + slope;
    const double mid = phi(along(0.5));
    if (mid < 0.5 * (fp + fq) - tol || d < -std::max(tol, 10.0 * step))
        throw ValidationError("Phi is not concave at the evaluation points");
    return std::max(d, 0.0);
}

double bregman_entropy(const std::vector<double>& p, const std::vector<double>& q) { return kl(q, p); }

double bregman_variance(const std::vector<double>& p, const std::vector<double>& q, const std::vector<double>& values) {
    check_distribution(p, "base belief");
    check_distribution(q, "target belief");
    if (p.size() != values.size() || q.size() != values.size())
        throw ValidationError("state values do not match the beliefs");
    double mp = 0.0, mq = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        mp += p[i] * values[i];
        mq += q[i] * values[i];
    }
    return (mq - mp) * (mq - mp);
}

BeliefFunction binary_phi_from_table(std::vector<double> grid, std::vector<double> values, double tol) {
    if (grid.size() < 2 || grid.size() != values.size()) throw ValidationError("Phi table needs matching grid and values");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1])) throw ValidationError("Phi grid must be strictly increasing");
    if (grid.front() > 0.0 || grid.back() < 1.0) throw ValidationError("Phi grid must cover [0,1]");
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double left = (values[i] - values[i - 1]) / (grid[i] - grid[i - 1]);
        const double right = (values[i + 1] - values[i]) / (grid[i + 1] - grid[i]);
        if (right > left + tol) throw ValidationError("Phi samples are not concave");
    }
    return [grid = std::move(grid), values = std::move(values)](const std::vector<double>& b) {
        if (b.size() != 2) throw ValidationError("tabulated Phi needs a binary belief");
        const double x = std::clamp(b[0], grid.front(), grid.back());
        auto it = std::upper_bound(grid.begin(), grid.end(), x);
        std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - grid.begin()), grid.size() - 1);
        std::size_t lo = hi - 1;
        const double w = (x - grid[lo]) / (grid[hi] - grid[lo]);
        return (1.0 - w) * values[lo] + w * values[hi];
    };
}

void CostSpec::validate(std::size_t n) const {
    switch (kind) {
        case CostKind::EntropyReduction:
            break;
        case CostKind::VarianceReduction:
            if (!state_values.empty() && state_values.size() != n)
                throw ValidationError("state values do not match the number of states");
            break;
        case CostKind::BregmanOfPhi:
            if (!phi) throw ValidationError("Bregman cost needs a Phi function");
            break;
        case CostKind::Pst:
            if (beta.size() != n) throw ValidationError("beta must be square in the number of states");
            for (const auto& row : beta) {
                if (row.size() != n) throw ValidationError("beta must be square in the number of states");
                for (double b : row)
                    if (!(b >= 0.0) || !std::isfinite(b)) throw ValidationError("beta entries must be nonnegative");
            }
            break;
    }
}

double ups_cost(const CostSpec& spec, const std::vector<double>& prior, const BeliefDistribution<double>& dist) {
    spec.validate(prior.size());
    switch (spec.kind) {
        case CostKind::EntropyReduction:
            return cost_entropy_reduction(prior, dist);
        case CostKind::VarianceReduction:
            return cost_variance_reduction(prior, dist, spec.state_values);
        case CostKind::BregmanOfPhi: {
            check_plausible(prior, dist, 1e-9);
            double c = 0.0;
            for (std::size_t k = 0; k < dist.size(); ++k) c += dist.weights[k] * bregman(spec.phi, prior, dist.support[k]);
            return c;
        }
        case CostKind::Pst:
            break;
    }
    throw ValidationError("PST cost is defined on signals; use pst_cost");
}

double pst_cost(const SignalStructure<double>& signal, const Matrix<double>& beta) {
    CostSpec spec;
    spec.kind = CostKind::Pst;
    spec.beta = beta;
    spec.validate(signal.num_states());
    double c = 0.0;
    for (std::size_t a = 0; a < signal.num_states(); ++a)
        for (std::size_t b = 0; b < signal.num_states(); ++b) {
            if (a == b || beta[a][b] == 0.0) continue;
            const double d = kl(signal.matrix[a], signal.matrix[b]);
            if (std::isinf(d)) throw ValidationError("a weighted pair of states is perfectly distinguishable; cost is infinite");
            c += beta[a][b] * d;
        }
    return c;
}

double pst_cost_gaussian(const std::vector<double>& thetas, const Matrix<double>& beta, double var_eps) {
    if (!(var_eps > 0.0)) throw ValidationError("noise variance must be positive");
    CostSpec spec;
    spec.kind = CostKind::Pst;
    spec.beta = beta;
    spec.validate(thetas.size());
    double c = 0.0;
    for (std::size_t a = 0; a < thetas.size(); ++a)
        for (std::size_t b = 0; b < thetas.size(); ++b)
            if (a != b) c += beta[a][b] * kl_gaussian_means(thetas[a], thetas[b], var_eps);
    return c;
}

}  // namespace infonomics
