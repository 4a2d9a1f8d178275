#include "infonomics/persuasion.hpp"

#include "infonomics/error.hpp"

#include <algorithm>
#include <cmath>

namespace infonomics {

namespace {

template <class T>
T expect(const std::vector<T>& belief, const std::vector<T>& row) {
    T v(0);
    for (std::size_t i = 0; i < belief.size(); ++i) v += belief[i] * row[i];
    return v;
}

// Equality up to the scalar's default tolerance (exact for rationals).
template <class T>
bool near(const T& a, const T& b) {
    if constexpr (ScalarTraits<T>::exact) {
        return a == b;
    } else {
        return std::abs(a - b) <= 1e-12 * (1.0 + std::max(std::abs(a), std::abs(b)));
    }
}

template <class T>
std::vector<T> binary_belief(const T& mu) {
    return {mu, T(1) - mu};
}

}  // namespace

template <class T>
void PersuasionInstance<T>::validate() const {
    const std::size_t ns = states.size(), na = actions.size();
    if (ns == 0 || na == 0) throw ValidationError("instance needs states and actions");
    if (prior.size() != ns) throw ValidationError("prior needs one entry per state");
    validate_belief(prior);
    for (const auto* tab : {&u_receiver, &u_sender}) {
        if (tab->size() != na) throw ValidationError("utility tables need one row per action");
        for (const auto& row : *tab) {
            if (row.size() != ns) throw ValidationError("utility row needs one entry per state");
            if constexpr (!ScalarTraits<T>::exact)
                for (const auto& v : row)
                    if (!std::isfinite(v)) throw ValidationError("utility table has a non-finite entry");
        }
    }
}

template <class T>
std::size_t receiver_action(const PersuasionInstance<T>& inst, const std::vector<T>& belief) {
    if (belief.size() != inst.states.size()) throw ValidationError("belief has the wrong dimension");
    validate_belief(belief);
    std::size_t best = 0;
    T best_r = expect(belief, inst.u_receiver[0]), best_s = expect(belief, inst.u_sender[0]);
    for (std::size_t a = 1; a < inst.actions.size(); ++a) {
        const T r = expect(belief, inst.u_receiver[a]);
        const T s = expect(belief, inst.u_sender[a]);
        const bool tie = near(r, best_r);
        if ((!tie && r > best_r) || (tie && s > best_s && !near(s, best_s))) {
            best = a;
            best_r = r;
            best_s = s;
        }
    }
    return best;
}

template <class T>
T sender_value(const PersuasionInstance<T>& inst, const std::vector<T>& belief) {
    return expect(belief, inst.u_sender[receiver_action(inst, belief)]);
}

template <class T>
T Envelope<T>::operator()(const T& m) const {
    if (m < 0 || m > 1) throw ValidationError("mu must lie in [0,1]");
    for (std::size_t k = 0; k + 1 < mu.size(); ++k)
        if (m <= mu[k + 1]) {
            if (mu[k + 1] == mu[k]) return std::max(value[k], value[k + 1]);
            const T w = (m - mu[k]) / (mu[k + 1] - mu[k]);
            return value[k] + w * (value[k + 1] - value[k]);
        }
    return value.back();
}

template <class T>
Envelope<T> concavify_1d(const PersuasionInstance<T>& inst) {
    inst.validate();
    if (inst.states.size() != 2) throw ValidationError("concavification is implemented for two states");
    // Receiver indifference points: mu (r_a0 - r_b0) + (1 - mu)(r_a1 - r_b1) = 0.
    std::vector<T> pts = {T(0), T(1)};
    const auto& ur = inst.u_receiver;
    for (std::size_t a = 0; a < ur.size(); ++a)
        for (std::size_t b = a + 1; b < ur.size(); ++b) {
            const T d0 = ur[a][0] - ur[b][0], d1 = ur[a][1] - ur[b][1];
            const T den = d0 - d1;
            if (den == 0) continue;
            const T m = -d1 / den;
            if (m > 0 && m < 1) pts.push_back(m);
        }
    std::sort(pts.begin(), pts.end());
    std::vector<T> uniq;
    for (const auto& p : pts)
        if (uniq.empty() || !near(p, uniq.back())) uniq.push_back(p);

    Envelope<T> env;
    env.raw_mu = uniq;
    for (const auto& m : uniq) env.raw_value.push_back(sender_value(inst, binary_belief(m)));
    // Between breakpoints the value is affine, and sender-preferred tie-breaking
    // makes it upper semicontinuous, so the breakpoints carry the whole hull.
    std::vector<std::pair<T, T>> cand;
    for (std::size_t k = 0; k < uniq.size(); ++k) cand.emplace_back(uniq[k], env.raw_value[k]);

    // Upper hull by a monotone chain.
    std::vector<std::pair<T, T>> hull;
    for (const auto& p : cand) {
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& a = hull.back();
            const T cross = (a.first - o.first) * (p.second - o.second) - (a.second - o.second) * (p.first - o.first);
            if (cross >= 0) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    for (const auto& [m, v] : hull) {
        env.mu.push_back(m);
        env.value.push_back(v);
    }
    return env;
}

template <class T>
PersuasionSolution<T> optimal_signal(const PersuasionInstance<T>& inst) {
    inst.validate();
    const std::size_t ns = inst.states.size(), na = inst.actions.size(), nv = ns * na;
    auto var = [ns](std::size_t a, std::size_t s) { return a * ns + s; };
    LinearProgram<T> lp(nv);
    lp.objective.assign(nv, T(0));
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t s = 0; s < ns; ++s) lp.objective[var(a, s)] = inst.prior[s] * inst.u_sender[a][s];
    for (std::size_t s = 0; s < ns; ++s) {
        std::vector<T> row(nv, T(0));
        for (std::size_t a = 0; a < na; ++a) row[var(a, s)] = 1;
        lp.add(std::move(row), Sense::Equal, T(1));
    }
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < na; ++b) {
            if (a == b) continue;
            std::vector<T> row(nv, T(0));
            for (std::size_t s = 0; s < ns; ++s)
                row[var(a, s)] = inst.prior[s] * (inst.u_receiver[a][s] - inst.u_receiver[b][s]);
            lp.add(std::move(row), Sense::GreaterEq, T(0));
        }
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) throw NumericalError("persuasion LP did not reach an optimum");

    PersuasionSolution<T> out;
    out.status = sol.status;
    out.value = sol.value;
    out.no_information_value = sender_value(inst, inst.prior);
    out.benefits = out.value > out.no_information_value && !near(out.value, out.no_information_value);
    Matrix<T> m(ns, std::vector<T>(na));
    for (std::size_t s = 0; s < ns; ++s) {
        T total(0);
        for (std::size_t a = 0; a < na; ++a) {
            T v = sol.x[var(a, s)];
            // Entries at the LP's feasibility noise level would otherwise show up
            // as recommendations with meaningless posteriors.
            if (v < 0 || (!ScalarTraits<T>::exact && v < T(LpOptions<T>::defaults().feasible_tol))) v = 0;
            m[s][a] = v;
            total += v;
        }
        if constexpr (!ScalarTraits<T>::exact)
            for (auto& v : m[s]) v /= total;
    }
    out.signal = SignalStructure<T>(inst.states, inst.actions, std::move(m), 1e-9);
    out.realization_probability = realization_probabilities(inst.prior, out.signal);
    for (std::size_t a = 0; a < na; ++a) {
        if (out.realization_probability[a] <= T(ScalarTraits<T>::default_tol())) continue;
        out.posteriors.push_back(posterior_update(inst.prior, out.signal, a));
        out.posterior_action.push_back(a);
    }
    return out;
}

#define INFONOMICS_PERSUASION_INSTANTIATE(T)                                                     \
    template struct PersuasionInstance<T>;                                                       \
    template struct Envelope<T>;                                                                 \
    template std::size_t receiver_action(const PersuasionInstance<T>&, const std::vector<T>&);   \
    template T sender_value(const PersuasionInstance<T>&, const std::vector<T>&);                \
    template Envelope<T> concavify_1d(const PersuasionInstance<T>&);                             \
    template PersuasionSolution<T> optimal_signal(const PersuasionInstance<T>&);

INFONOMICS_PERSUASION_INSTANTIATE(double)
INFONOMICS_PERSUASION_INSTANTIATE(Rational)

}  // namespace infonomics
