#pragma once

// Gaussian conditioning and three applications built on it.

#include <array>
#include <cstddef>
#include <vector>

namespace infonomics {

struct ScalarGaussianModel {
    double mu = 0.0;
    double var_theta = 1.0;
    double var_eps = 1.0;
    void validate() const;
};

struct GaussianPosterior {
    double mean = 0.0;
    double variance = 0.0;
};

// X = theta + eps with independent normal noise.
GaussianPosterior scalar_posterior(const ScalarGaussianModel& m, double x);

// Coordinates [0, split) form Z1; the rest form the observed block Z2.
struct JointGaussian {
    std::vector<double> mean;
    std::vector<std::vector<double>> cov;
    std::size_t split = 1;
    void validate() const;
};

struct MultivariatePosterior {
    std::vector<double> mean;
    std::vector<std::vector<double>> cov;
};

// Throws NumericalError when the observed block is singular or its condition
// number exceeds `max_condition`.
MultivariatePosterior multivariate_posterior(const JointGaussian& j, const std::vector<double>& z2,
                                             double max_condition = 1e12);

// Equilibrium effort in the career-concerns model with quadratic cost.
double career_concerns_effort(double var_theta, double var_eps);

struct CoordinationEquilibrium {
    double c = 0.0;
    double kappa = 0.0;
    double fixed_point_residual = 0.0;  // distance to the best reply of (c, kappa)
};

CoordinationEquilibrium coordination_equilibrium(double mu, double var_theta, double var_eps, double beta);

struct DataSharingReport {
    double rho = 0.0;
    double v = 0.0;
    // variance[a1][a2][i]: platform's posterior variance of theta_i under the profile.
    std::array<std::array<std::array<double, 2>, 2>, 2> variance{};
    double both_share_payment_each = 0.0;
    double both_share_total = 0.0;
    double one_share_total = 0.0;
    double rho2_threshold = 0.0;
    bool sharing_cheaper_for_both = false;  // both_share_total <= one_share_total
};

DataSharingReport data_sharing_analysis(double rho, double v);

}  // namespace infonomics
