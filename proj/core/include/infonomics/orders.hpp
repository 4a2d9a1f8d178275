#pragma once

// Stochastic orders on finite grids: likelihood-ratio dominance, MLRP,
// affiliation, first-order dominance, favorableness, log-concavity.
//
// Weak inequalities tolerate a slack of `tol` (default 1e-12) so that float
// round-off does not produce false negatives.

#include "infonomics/signals.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace infonomics {

struct FiniteDensity {
    std::vector<double> grid;  // strictly increasing
    std::vector<double> mass;  // nonnegative, sums to 1

    FiniteDensity() = default;
    FiniteDensity(std::vector<double> grid, std::vector<double> mass, double tol = 1e-12);
    bool everywhere_positive(double floor = 1e-15) const;
};

// Joint density on a product grid; coordinates ordered by index. Row-major:
// the last coordinate varies fastest.
struct JointDensity {
    std::vector<std::size_t> dims;
    std::vector<double> mass;

    JointDensity() = default;
    JointDensity(std::vector<std::size_t> dims, std::vector<double> mass, double tol = 1e-12);
    std::size_t size() const { return mass.size(); }
    std::vector<std::size_t> unravel(std::size_t flat) const;
    std::size_t ravel(const std::vector<std::size_t>& idx) const;
};

// One density over a shared realization grid per parameter value.
struct ConditionalFamily {
    std::vector<double> thetas;  // strictly increasing
    std::vector<double> grid;    // strictly increasing
    Matrix<double> rows;         // rows[theta][x]

    ConditionalFamily() = default;
    ConditionalFamily(std::vector<double> thetas, std::vector<double> grid, Matrix<double> rows, double tol = 1e-12);
};

bool lr_dominates(const FiniteDensity& f, const FiniteDensity& g, double tol = 1e-12);

struct MlrpViolation {
    std::size_t theta_hi, theta_lo, x_hi, x_lo;
};

bool mlrp_check(const ConditionalFamily& fam, bool strict = false, double tol = 1e-12);
std::optional<MlrpViolation> find_mlrp_violation(const ConditionalFamily& fam, double tol = 1e-12);

// Pairwise test: for every pair of coordinates and every fixing of the others,
// the 2-D slice is TP2 in cross-product form.
bool affiliation_check(const JointDensity& joint, double tol = 1e-12);
// Brute force over all pairs z, z': f(z v z') f(z ^ z') >= f(z) f(z').
bool affiliation_check_lattice(const JointDensity& joint, double tol = 1e-12);

// Joint of (theta, x) with theta as the first coordinate.
JointDensity joint_from_family(const std::vector<double>& prior, const ConditionalFamily& fam);

// F first-order dominates G: CDF_F <= CDF_G pointwise.
bool fosd_check(const FiniteDensity& f, const FiniteDensity& g, double tol = 1e-12);

// Posterior over theta is FOSD-increasing in the realization.
bool posterior_fosd_property(const std::vector<double>& prior, const ConditionalFamily& fam, double tol = 1e-12);
std::vector<double> posterior_over_theta(const std::vector<double>& prior, const ConditionalFamily& fam, std::size_t x);

// x is more favorable than x' (prior-free likelihood-ratio criterion).
bool more_favorable_check(const ConditionalFamily& fam, std::size_t x, std::size_t x_prime, double tol = 1e-12);

// Second differences of ln f are nonpositive; needs equal spacing and positive mass.
bool log_concavity_check(const FiniteDensity& density, double tol = 1e-12);

struct ThresholdRow {
    double threshold = 0;
    double acceptance_mass = 0;
    std::optional<double> mean_quality;  // empty when nothing is accepted
};

struct ThresholdReport {
    std::vector<double> posterior_means;  // E[theta | x] per realization
    std::vector<double> realization_mass;
    std::vector<ThresholdRow> rows;
};

// Accept every report (realization) at or above the threshold. Thresholding on
// the posterior mean instead could never produce a reversal.
ThresholdReport threshold_report(const std::vector<double>& prior, const ConditionalFamily& fam,
                                 const std::vector<double>& thresholds);

// A pair of thresholds t' < t with E[theta | accepted at t'] > E[theta | accepted at t].
struct ThresholdReversal {
    double lower_threshold, upper_threshold;
    double lower_mean, upper_mean;
};
std::optional<ThresholdReversal> find_threshold_reversal(const ThresholdReport& report, double margin = 1e-9);

// Quality levels 1..levels; the report equals quality w.p. p_exact, otherwise
// quality -/+ shift with equal probability. Realizations run from 1-shift to levels+shift.
ConditionalFamily editor_signal(std::size_t levels = 9, double p_exact = 0.8, int shift = 2);

// Additive-noise family: x = theta + noise on a common grid, discretized from a density.
ConditionalFamily additive_family(const std::vector<double>& thetas, const std::vector<double>& grid,
                                  const std::function<double(double)>& noise_density);

}  // namespace infonomics
