#include "infonomics/orders.hpp"

#include "infonomics/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace infonomics {

namespace {

void check_increasing(const std::vector<double>& v, const char* what) {
    if (v.empty()) throw ValidationError(std::string(what) + " is empty");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) throw ValidationError(std::string(what) + " must be strictly increasing");
}

void check_distribution(const std::vector<double>& m, double tol, const char* what) {
    double total = 0;
    for (double v : m) {
        if (!(v >= 0)) throw ValidationError(std::string(what) + " has a negative or NaN entry");
        total += v;
    }
    if (std::abs(total - 1.0) > tol) throw ValidationError(std::string(what) + " does not sum to 1");
}

// a*d >= b*c up to slack
bool tp2(double a, double d, double b, double c, double tol) { return a * d - b * c >= -tol; }

}  // namespace

FiniteDensity::FiniteDensity(std::vector<double> g, std::vector<double> m, double tol)
    : grid(std::move(g)), mass(std::move(m)) {
    check_increasing(grid, "density grid");
    if (mass.size() != grid.size()) throw ValidationError("density mass and grid differ in length");
    check_distribution(mass, tol, "density mass");
}

bool FiniteDensity::everywhere_positive(double floor) const {
    return std::all_of(mass.begin(), mass.end(), [&](double v) { return v >= floor; });
}

JointDensity::JointDensity(std::vector<std::size_t> d, std::vector<double> m, double tol)
    : dims(std::move(d)), mass(std::move(m)) {
    if (dims.empty()) throw ValidationError("joint density needs at least one coordinate");
    std::size_t n = 1;
    for (auto k : dims) {
        if (k == 0) throw ValidationError("joint density has an empty coordinate");
        n *= k;
    }
    if (mass.size() != n) throw ValidationError("joint density mass does not match its dimensions");
    check_distribution(mass, tol, "joint density");
}

std::vector<std::size_t> JointDensity::unravel(std::size_t flat) const {
    std::vector<std::size_t> idx(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        idx[k] = flat % dims[k];
        flat /= dims[k];
    }
    return idx;
}

std::size_t JointDensity::ravel(const std::vector<std::size_t>& idx) const {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + idx[k];
    return flat;
}

ConditionalFamily::ConditionalFamily(std::vector<double> t, std::vector<double> g, Matrix<double> r, double tol)
    : thetas(std::move(t)), grid(std::move(g)), rows(std::move(r)) {
    check_increasing(thetas, "parameter grid");
    check_increasing(grid, "realization grid");
    if (rows.size() != thetas.size()) throw ValidationError("family needs one row per parameter");
    for (const auto& row : rows) {
        if (row.size() != grid.size()) throw ValidationError("family row does not match the realization grid");
        check_distribution(row, tol, "family row");
    }
}

bool lr_dominates(const FiniteDensity& f, const FiniteDensity& g, double tol) {
    if (f.grid != g.grid) throw ValidationError("densities live on different grids");
    for (std::size_t z = 0; z < f.mass.size(); ++z)
        for (std::size_t zp = 0; zp < z; ++zp)
            if (!tp2(f.mass[z], g.mass[zp], f.mass[zp], g.mass[z], tol)) return false;
    return true;
}

std::optional<MlrpViolation> find_mlrp_violation(const ConditionalFamily& fam, double tol) {
    const auto& r = fam.rows;
    for (std::size_t th = 0; th < r.size(); ++th)
        for (std::size_t tl = 0; tl < th; ++tl)
            for (std::size_t x = 0; x < fam.grid.size(); ++x)
                for (std::size_t xp = 0; xp < x; ++xp)
                    if (!tp2(r[th][x], r[tl][xp], r[tl][x], r[th][xp], tol)) return MlrpViolation{th, tl, x, xp};
    return std::nullopt;
}

bool mlrp_check(const ConditionalFamily& fam, bool strict, double tol) {
    if (!strict) return !find_mlrp_violation(fam, tol).has_value();
    const auto& r = fam.rows;
    for (std::size_t th = 0; th < r.size(); ++th)
        for (std::size_t tl = 0; tl < th; ++tl)
            for (std::size_t x = 0; x < fam.grid.size(); ++x)
                for (std::size_t xp = 0; xp < x; ++xp)
                    if (!(r[th][x] * r[tl][xp] - r[tl][x] * r[th][xp] > tol)) return false;
    return true;
}

bool affiliation_check(const JointDensity& joint, double tol) {
    const std::size_t n = joint.dims.size();
    if (n < 2) throw ValidationError("affiliation needs at least two coordinates");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t flat = 0; flat < joint.size(); ++flat) {
                auto idx = joint.unravel(flat);
                if (idx[i] != 0 || idx[j] != 0) continue;  // one visit per conditioning cell
                for (std::size_t a = 1; a < joint.dims[i]; ++a)
                    for (std::size_t ap = 0; ap < a; ++ap)
                        for (std::size_t b = 1; b < joint.dims[j]; ++b)
                            for (std::size_t bp = 0; bp < b; ++bp) {
                                auto at = [&](std::size_t u, std::size_t v) {
                                    idx[i] = u;
                                    idx[j] = v;
                                    return joint.mass[joint.ravel(idx)];
                                };
                                if (!tp2(at(a, b), at(ap, bp), at(a, bp), at(ap, b), tol)) return false;
                            }
            }
    return true;
}

bool affiliation_check_lattice(const JointDensity& joint, double tol) {
    const std::size_t n = joint.dims.size();
    for (std::size_t p = 0; p < joint.size(); ++p)
        for (std::size_t q = p + 1; q < joint.size(); ++q) {
            auto z = joint.unravel(p), zp = joint.unravel(q);
            std::vector<std::size_t> hi(n), lo(n);
            for (std::size_t k = 0; k < n; ++k) {
                hi[k] = std::max(z[k], zp[k]);
                lo[k] = std::min(z[k], zp[k]);
            }
            if (!tp2(joint.mass[joint.ravel(hi)], joint.mass[joint.ravel(lo)], joint.mass[p], joint.mass[q], tol))
                return false;
        }
    return true;
}

JointDensity joint_from_family(const std::vector<double>& prior, const ConditionalFamily& fam) {
    if (prior.size() != fam.thetas.size()) throw ValidationError("prior does not match the parameter grid");
    std::vector<double> m;
    for (std::size_t t = 0; t < prior.size(); ++t)
        for (double v : fam.rows[t]) m.push_back(prior[t] * v);
    return JointDensity({prior.size(), fam.grid.size()}, std::move(m), 1e-9);
}

bool fosd_check(const FiniteDensity& f, const FiniteDensity& g, double tol) {
    if (f.grid != g.grid) throw ValidationError("densities live on different grids");
    double cf = 0, cg = 0;
    for (std::size_t k = 0; k < f.mass.size(); ++k) {
        cf += f.mass[k];
        cg += g.mass[k];
        if (cf > cg + tol) return false;
    }
    return true;
}

std::vector<double> posterior_over_theta(const std::vector<double>& prior, const ConditionalFamily& fam,
                                         std::size_t x) {
    if (prior.size() != fam.thetas.size()) throw ValidationError("prior does not match the parameter grid");
    std::vector<double> post(prior.size());
    double total = 0;
    for (std::size_t t = 0; t < prior.size(); ++t) total += post[t] = prior[t] * fam.rows[t][x];
    if (!(total > 0)) throw ZeroProbabilityError("realization has zero marginal probability");
    for (auto& v : post) v /= total;
    return post;
}

bool posterior_fosd_property(const std::vector<double>& prior, const ConditionalFamily& fam, double tol) {
    std::vector<FiniteDensity> post;
    for (std::size_t x = 0; x < fam.grid.size(); ++x)
        post.emplace_back(fam.thetas, posterior_over_theta(prior, fam, x), 1e-9);
    for (std::size_t x = 1; x < post.size(); ++x)
        for (std::size_t xp = 0; xp < x; ++xp)
            if (!fosd_check(post[x], post[xp], tol)) return false;
    return true;
}

bool more_favorable_check(const ConditionalFamily& fam, std::size_t x, std::size_t xp, double tol) {
    if (x >= fam.grid.size() || xp >= fam.grid.size()) throw ValidationError("unknown realization");
    const auto& r = fam.rows;
    for (std::size_t th = 0; th < r.size(); ++th)
        for (std::size_t tl = 0; tl < th; ++tl)
            if (!tp2(r[th][x], r[tl][xp], r[tl][x], r[th][xp], tol)) return false;
    return true;
}

bool log_concavity_check(const FiniteDensity& d, double tol) {
    const auto& g = d.grid;
    if (g.size() >= 3) {
        const double h = g[1] - g[0];
        for (std::size_t k = 2; k < g.size(); ++k)
            if (std::abs((g[k] - g[k - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
                throw ValidationError("log-concavity test needs an equally spaced grid");
    }
    for (double v : d.mass)
        if (!(v > 0)) throw ValidationError("log-concavity test needs strictly positive mass");
    for (std::size_t k = 1; k + 1 < d.mass.size(); ++k) {
        double second = std::log(d.mass[k + 1]) + std::log(d.mass[k - 1]) - 2.0 * std::log(d.mass[k]);
        if (second > tol) return false;
    }
    return true;
}

ThresholdReport threshold_report(const std::vector<double>& prior, const ConditionalFamily& fam,
                                 const std::vector<double>& thresholds) {
    if (prior.size() != fam.thetas.size()) throw ValidationError("prior does not match the parameter grid");
    ThresholdReport rep;
    const std::size_t nx = fam.grid.size();
    rep.posterior_means.assign(nx, 0.0);
    rep.realization_mass.assign(nx, 0.0);
    std::vector<double> weighted(nx, 0.0);  // sum_theta prior f theta
    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t t = 0; t < prior.size(); ++t) {
            rep.realization_mass[x] += prior[t] * fam.rows[t][x];
            weighted[x] += prior[t] * fam.rows[t][x] * fam.thetas[t];
        }
        rep.posterior_means[x] =
            rep.realization_mass[x] > 0 ? weighted[x] / rep.realization_mass[x] : std::nan("");
    }
    for (double th : thresholds) {
        ThresholdRow row;
        row.threshold = th;
        double w = 0;
        for (std::size_t x = 0; x < nx; ++x)
            if (rep.realization_mass[x] > 0 && fam.grid[x] >= th) {
                row.acceptance_mass += rep.realization_mass[x];
                w += weighted[x];
            }
        if (row.acceptance_mass > 0) row.mean_quality = w / row.acceptance_mass;
        rep.rows.push_back(row);
    }
    return rep;
}

std::optional<ThresholdReversal> find_threshold_reversal(const ThresholdReport& report, double margin) {
    std::optional<ThresholdReversal> best;
    const auto& r = report.rows;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (!(r[i].threshold < r[j].threshold) || !r[i].mean_quality || !r[j].mean_quality) continue;
            double gap = *r[i].mean_quality - *r[j].mean_quality;
            if (gap > margin && (!best || gap > best->lower_mean - best->upper_mean))
                best = ThresholdReversal{r[i].threshold, r[j].threshold, *r[i].mean_quality, *r[j].mean_quality};
        }
    return best;
}

ConditionalFamily editor_signal(std::size_t levels, double p_exact, int shift) {
    if (levels < 1 || shift < 1 || !(p_exact >= 0 && p_exact <= 1))
        throw ValidationError("editor signal needs levels >= 1, shift >= 1, p_exact in [0,1]");
    std::vector<double> thetas, grid;
    for (std::size_t q = 1; q <= levels; ++q) thetas.push_back(static_cast<double>(q));
    const int lo = 1 - shift, hi = static_cast<int>(levels) + shift;
    for (int x = lo; x <= hi; ++x) grid.push_back(x);
    Matrix<double> rows(levels, std::vector<double>(grid.size(), 0.0));
    const double side = (1.0 - p_exact) / 2.0;
    for (std::size_t q = 0; q < levels; ++q) {
        int x = static_cast<int>(q + 1);
        rows[q][x - lo] = p_exact;
        rows[q][x - shift - lo] += side;
        rows[q][x + shift - lo] += side;
    }
    return ConditionalFamily(std::move(thetas), std::move(grid), std::move(rows));
}

ConditionalFamily additive_family(const std::vector<double>& thetas, const std::vector<double>& grid,
                                  const std::function<double(double)>& noise_density) {
    Matrix<double> rows;
    for (double th : thetas) {
        std::vector<double> row;
        double total = 0;
        for (double x : grid) {
            row.push_back(noise_density(x - th));
            total += row.back();
        }
        if (!(total > 0)) throw ValidationError("noise density vanishes on the grid");
        for (auto& v : row) v /= total;
        rows.push_back(std::move(row));
    }
    return ConditionalFamily(thetas, grid, std::move(rows), 1e-9);
}

}  // namespace infonomics
