#include "infonomics/error.hpp"
#include "infonomics/signals.hpp"

#include <cmath>

namespace infonomics {

void PopulationModel::validate(double tol) const {
    if (mass.empty()) throw ValidationError("population table is empty");
    if (score.size() != mass.size()) throw ValidationError("score must have one entry per covariate");
    double total = 0;
    for (std::size_t c = 0; c < mass.size(); ++c) {
        if (score[c] != 0 && score[c] != 1) throw ValidationError("score values must be 0 or 1");
        for (const auto& g : mass[c])
            for (double v : g) {
                if (v < 0) throw ValidationError("population table has a negative entry");
                total += v;
            }
    }
    if (std::abs(total - 1.0) > tol) throw ValidationError("population table does not sum to 1");
}

namespace {

std::optional<double> ratio(double num, double den) {
    if (den <= 0) return std::nullopt;
    return num / den;
}

std::optional<bool> equal(const std::optional<double>& a, const std::optional<double>& b, double tol) {
    if (!a || !b) return std::nullopt;
    return std::abs(*a - *b) <= tol;
}

}  // namespace

FairnessReport fairness_report(const PopulationModel& pop, double tol) {
    pop.validate();
    FairnessReport r;
    for (int g = 0; g < 2; ++g) {
        // joint[s][theta] within group g
        double joint[2][2] = {{0, 0}, {0, 0}};
        for (std::size_t c = 0; c < pop.mass.size(); ++c)
            for (int th = 0; th < 2; ++th) joint[pop.score[c]][th] += pop.mass[c][g][th];
        const double g_mass = joint[0][0] + joint[0][1] + joint[1][0] + joint[1][1];
        const double theta1 = joint[0][1] + joint[1][1];
        const double theta0 = joint[0][0] + joint[1][0];
        const double s1 = joint[1][0] + joint[1][1];
        const double s0 = joint[0][0] + joint[0][1];
        GroupRates& gr = r.groups[g];
        gr.base_rate = ratio(theta1, g_mass);
        gr.fp = ratio(joint[1][0], theta0);
        gr.fn = ratio(joint[0][1], theta1);
        gr.ppv = ratio(joint[1][1], s1);
        gr.npv_complement = ratio(joint[0][1], s0);
        if (gr.base_rate && gr.fp && gr.fn && gr.ppv && *gr.base_rate < 1 && *gr.ppv > 0) {
            const double p = *gr.base_rate;
            const double rhs = p / (1 - p) * (1 - *gr.ppv) / *gr.ppv * (1 - *gr.fn);
            gr.identity_residual = std::abs(*gr.fp - rhs);
        }
    }
    r.equal_fp = equal(r.groups[0].fp, r.groups[1].fp, tol);
    r.equal_fn = equal(r.groups[0].fn, r.groups[1].fn, tol);
    auto c1 = equal(r.groups[0].ppv, r.groups[1].ppv, tol);
    auto c0 = equal(r.groups[0].npv_complement, r.groups[1].npv_complement, tol);
    if (c1 && c0) r.calibrated = *c1 && *c0;
    else if (c1 && !*c1) r.calibrated = false;
    else if (c0 && !*c0) r.calibrated = false;
    if (r.groups[0].base_rate && r.groups[1].base_rate)
        r.base_rates_differ = std::abs(*r.groups[0].base_rate - *r.groups[1].base_rate) > tol;
    r.all_three_with_unequal_base_rates = r.base_rates_differ && r.equal_fp.value_or(false) &&
                                          r.equal_fn.value_or(false) && r.calibrated.value_or(false);
    return r;
}

}  // namespace infonomics
