#include "infonomics/gaussian.hpp"

#include "infonomics/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

namespace infonomics {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(what) + " must be positive and finite");
}

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& m) {
    Eigen::MatrixXd out(m.size(), m.size());
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m.size(); ++c) out(r, c) = m[r][c];
    return out;
}

}  // namespace

void ScalarGaussianModel::validate() const {
    if (!std::isfinite(mu)) throw ValidationError("prior mean must be finite");
    require_positive(var_theta, "prior variance");
    require_positive(var_eps, "noise variance");
}

GaussianPosterior scalar_posterior(const ScalarGaussianModel& m, double x) {
    m.validate();
    if (!std::isfinite(x)) throw ValidationError("observation must be finite");
    const double total = m.var_theta + m.var_eps;
    return {(m.var_eps * m.mu + m.var_theta * x) / total, m.var_theta * m.var_eps / total};
}

void JointGaussian::validate() const {
    const std::size_t n = mean.size();
    if (n < 2) throw ValidationError("joint Gaussian needs at least two coordinates");
    if (split == 0 || split >= n) throw ValidationError("split must leave both blocks non-empty");
    if (cov.size() != n) throw ValidationError("covariance dimension does not match the mean");
    for (std::size_t r = 0; r < n; ++r) {
        if (cov[r].size() != n) throw ValidationError("covariance is not square");
        for (std::size_t c = 0; c < n; ++c) {
            if (!std::isfinite(cov[r][c])) throw ValidationError("covariance has a non-finite entry");
            if (std::abs(cov[r][c] - cov[c][r]) > 1e-12 * (1.0 + std::abs(cov[r][c])))
                throw ValidationError("covariance is not symmetric");
        }
    }
}

MultivariatePosterior multivariate_posterior(const JointGaussian& j, const std::vector<double>& z2,
                                             double max_condition) {
    j.validate();
    const Eigen::Index n = static_cast<Eigen::Index>(j.mean.size());
    const Eigen::Index k = static_cast<Eigen::Index>(j.split);
    const Eigen::Index m = n - k;
    if (static_cast<Eigen::Index>(z2.size()) != m) throw ValidationError("observation has the wrong dimension");

    const Eigen::MatrixXd s = to_eigen(j.cov);
    const Eigen::MatrixXd s11 = s.topLeftCorner(k, k);
    const Eigen::MatrixXd s12 = s.topRightCorner(k, m);
    const Eigen::MatrixXd s22 = s.bottomRightCorner(m, m);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s22, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff(), hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > max_condition)
        throw NumericalError("observed covariance block is singular or ill-conditioned");
    Eigen::LLT<Eigen::MatrixXd> llt(s22);
    if (llt.info() != Eigen::Success) throw NumericalError("Cholesky factorization failed");

    Eigen::VectorXd dev(m);
    for (Eigen::Index i = 0; i < m; ++i) dev(i) = z2[i] - j.mean[k + i];
    const Eigen::VectorXd shift = s12 * llt.solve(dev);
    const Eigen::MatrixXd post = s11 - s12 * llt.solve(s12.transpose());

    MultivariatePosterior out;
    out.mean.resize(k);
    out.cov.assign(k, std::vector<double>(k));
    for (Eigen::Index r = 0; r < k; ++r) {
        out.mean[r] = j.mean[r] + shift(r);
        for (Eigen::Index c = 0; c < k; ++c) out.cov[r][c] = 0.5 * (post(r, c) + post(c, r));
    }
    return out;
}

double career_concerns_effort(double var_theta, double var_eps) {
    require_positive(var_theta, "type variance");
    require_positive(var_eps, "noise variance");
    return var_theta / (var_theta + var_eps);
}

CoordinationEquilibrium coordination_equilibrium(double mu, double var_theta, double var_eps, double beta) {
    if (!std::isfinite(mu)) throw ValidationError("prior mean must be finite");
    require_positive(var_theta, "prior variance");
    require_positive(var_eps, "noise variance");
    if (!(beta > 0.0 && beta < 1.0)) throw ValidationError("beta must lie in (0,1)");
    const double denom = var_eps + var_theta * (1.0 - beta);
    CoordinationEquilibrium eq;
    eq.c = var_theta * (1.0 - beta) / denom;
    eq.kappa = var_eps / denom * mu;
    // Best reply to a_j = c x_j + kappa is ((1-beta) + beta c) E[theta|x] + beta kappa,
    // with E[theta|x] = w x + (1-w) mu.
    const double w = var_theta / (var_theta + var_eps);
    const double slope = (1.0 - beta + beta * eq.c) * w;
    const double intercept = (1.0 - beta + beta * eq.c) * (1.0 - w) * mu + beta * eq.kappa;
    eq.fixed_point_residual = std::max(std::abs(slope - eq.c), std::abs(intercept - eq.kappa));
    return eq;
}

DataSharingReport data_sharing_analysis(double rho, double v) {
    if (!(rho > -1.0 && rho < 1.0)) throw ValidationError("rho must lie in (-1,1)");
    require_positive(v, "privacy weight");
    DataSharingReport r;
    r.rho = rho;
    r.v = v;
    // Coordinates: theta_1, theta_2, X_1, X_2.
    const std::vector<std::vector<double>> cov = {
        {1.0, rho, 1.0, rho}, {rho, 1.0, rho, 1.0}, {1.0, rho, 2.0, rho}, {rho, 1.0, rho, 2.0}};
    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) {
            std::vector<std::size_t> shared;
            if (a1) shared.push_back(2);
            if (a2) shared.push_back(3);
            if (shared.empty()) {
                r.variance[a1][a2] = {1.0, 1.0};
                continue;
            }
            JointGaussian jg;
            std::vector<std::size_t> order = {0, 1};
            order.insert(order.end(), shared.begin(), shared.end());
            for (auto a : order) {
                jg.mean.push_back(0.0);
                std::vector<double> row;
                for (auto b : order) row.push_back(cov[a][b]);
                jg.cov.push_back(std::move(row));
            }
            jg.split = 2;
            auto post = multivariate_posterior(jg, std::vector<double>(shared.size(), 0.0));
            r.variance[a1][a2] = {post.cov[0][0], post.cov[1][1]};
        }
    const double r2 = rho * rho;
    r.both_share_payment_each = v * (2.0 - r2) * (2.0 - r2) / (2.0 * (4.0 - r2));
    r.both_share_total = 2.0 * r.both_share_payment_each;
    r.one_share_total = v / 2.0;
    r.rho2_threshold = (7.0 - std::sqrt(17.0)) / 4.0;
    r.sharing_cheaper_for_both = r.both_share_total <= r.one_share_total;
    return r;
}

}  // namespace infonomics
