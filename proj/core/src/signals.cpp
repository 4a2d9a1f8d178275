#include "infonomics/signals.hpp"

#include "infonomics/error.hpp"

#include <algorithm>

namespace infonomics {

namespace {

template <class T>
bool close(const T& a, const T& b, double tol) {
    return abs_value(T(a - b)) <= T(tol);
}

template <class T>
bool close(const std::vector<T>& a, const std::vector<T>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!close(a[i], b[i], tol)) return false;
    return true;
}

std::vector<std::string> default_labels(const char* prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

}  // namespace

template <class T>
SignalStructure<T>::SignalStructure(std::vector<std::string> st, std::vector<std::string> re, Matrix<T> m, double tol)
    : states(std::move(st)), realizations(std::move(re)), matrix(std::move(m)) {
    if (matrix.empty()) throw ValidationError("signal has no states");
    if (states.size() != matrix.size()) throw ValidationError("signal state labels do not match matrix rows");
    if (realizations.size() != matrix.front().size() || realizations.empty())
        throw ValidationError("signal realization labels do not match matrix columns");
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        if (matrix[i].size() != realizations.size()) throw ValidationError("signal matrix is ragged");
        T total(0);
        for (const auto& v : matrix[i]) {
            if (v < 0) throw ValidationError("signal matrix has a negative entry in row " + states[i]);
            total += v;
        }
        if (!close(total, T(1), tol)) throw ValidationError("signal row " + states[i] + " does not sum to 1");
    }
}

template <class T>
SignalStructure<T>::SignalStructure(Matrix<T> m, double tol) {
    // Labels first: argument order is unspecified, so building them inside a
    // delegating call could read the matrix after it was moved from.
    auto st = default_labels("s", m.size());
    auto re = default_labels("x", m.empty() ? 0 : m.front().size());
    *this = SignalStructure(std::move(st), std::move(re), std::move(m), tol);
}

template <class T>
std::vector<T> BeliefDistribution<T>::mean() const {
    if (support.empty()) throw ValidationError("empty belief distribution");
    std::vector<T> out(support.front().size(), T(0));
    for (std::size_t k = 0; k < support.size(); ++k)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += weights[k] * support[k][i];
    return out;
}

template <class T>
void validate_belief(const std::vector<T>& belief, double tol) {
    if (belief.empty()) throw ValidationError("empty belief");
    T total(0);
    for (const auto& v : belief) {
        if (v < 0) throw ValidationError("belief has a negative entry");
        total += v;
    }
    if (!close(total, T(1), tol)) throw ValidationError("belief does not sum to 1");
}

template <class T>
std::vector<T> realization_probabilities(const std::vector<T>& prior, const SignalStructure<T>& sig) {
    if (prior.size() != sig.num_states()) throw ValidationError("prior and signal disagree on the number of states");
    std::vector<T> out(sig.num_realizations(), T(0));
    for (std::size_t i = 0; i < prior.size(); ++i)
        for (std::size_t x = 0; x < out.size(); ++x) out[x] += prior[i] * sig.matrix[i][x];
    return out;
}

template <class T>
std::vector<T> posterior_update(const std::vector<T>& prior, const SignalStructure<T>& sig, std::size_t realization) {
    if (prior.size() != sig.num_states()) throw ValidationError("prior and signal disagree on the number of states");
    if (realization >= sig.num_realizations()) throw ValidationError("unknown realization");
    std::vector<T> out(prior.size());
    T total(0);
    for (std::size_t i = 0; i < prior.size(); ++i) {
        out[i] = prior[i] * sig.matrix[i][realization];
        total += out[i];
    }
    if (!(total > 0))
        throw ZeroProbabilityError("realization " + sig.realizations[realization] + " has zero probability");
    for (auto& v : out) v /= total;
    return out;
}

template <class T>
BeliefDistribution<T> induced_posteriors(const std::vector<T>& prior, const SignalStructure<T>& sig,
                                         double merge_tol) {
    auto px = realization_probabilities(prior, sig);
    BeliefDistribution<T> out;
    for (std::size_t x = 0; x < px.size(); ++x) {
        if (!(px[x] > 0)) continue;
        auto post = posterior_update(prior, sig, x);
        auto it = std::find_if(out.support.begin(), out.support.end(),
                               [&](const std::vector<T>& b) { return close(b, post, merge_tol); });
        if (it == out.support.end()) {
            out.support.push_back(std::move(post));
            out.weights.push_back(px[x]);
        } else {
            out.weights[static_cast<std::size_t>(it - out.support.begin())] += px[x];
        }
    }
    return out;
}

template <class T>
bool is_bayes_plausible(const std::vector<T>& prior, const BeliefDistribution<T>& dist, double tol) {
    if (dist.support.size() != dist.weights.size() || dist.support.empty()) return false;
    T total(0);
    for (const auto& w : dist.weights) {
        if (w < 0) return false;
        total += w;
    }
    if (!close(total, T(1), tol)) return false;
    for (const auto& b : dist.support)
        if (b.size() != prior.size()) return false;
    return close(dist.mean(), prior, tol);
}

template <class T>
SignalStructure<T> signal_from_posteriors(const std::vector<T>& prior, const BeliefDistribution<T>& dist,
                                          double tol) {
    for (const auto& p : prior)
        if (!(p > 0)) throw ValidationError("signal construction needs an interior prior");
    if (!is_bayes_plausible(prior, dist, tol)) throw ValidationError("distribution is not Bayes-plausible");
    Matrix<T> m(prior.size(), std::vector<T>(dist.size()));
    for (std::size_t i = 0; i < prior.size(); ++i)
        for (std::size_t k = 0; k < dist.size(); ++k) m[i][k] = dist.support[k][i] * dist.weights[k] / prior[i];
    // Absorb rounding so rows are stochastic to the last bit in float mode.
    if constexpr (!ScalarTraits<T>::exact) {
        for (auto& row : m) {
            T s = sum(row);
            for (auto& v : row) v /= s;
        }
    }
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < dist.size(); ++k) labels.push_back("q" + std::to_string(k));
    return SignalStructure<T>(default_labels("s", prior.size()), labels, std::move(m), std::max(tol, 1e-12));
}

template <class T>
bool same_distribution(const BeliefDistribution<T>& a, const BeliefDistribution<T>& b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < b.size() && !found; ++j) {
            if (used[j]) continue;
            if (close(a.support[i], b.support[j], tol) && close(a.weights[i], b.weights[j], tol)) {
                used[j] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

template <class T>
SignalStructure<T> uninformative_signal(std::size_t n) {
    return SignalStructure<T>(Matrix<T>(n, std::vector<T>{T(1)}));
}

template <class T>
SignalStructure<T> revealing_signal(std::size_t n) {
    Matrix<T> m(n, std::vector<T>(n, T(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return SignalStructure<T>(std::move(m));
}

#define INFONOMICS_SIGNALS_INSTANTIATE(T)                                                                    \
    template struct SignalStructure<T>;                                                                      \
    template struct BeliefDistribution<T>;                                                                   \
    template void validate_belief(const std::vector<T>&, double);                                            \
    template std::vector<T> realization_probabilities(const std::vector<T>&, const SignalStructure<T>&);      \
    template std::vector<T> posterior_update(const std::vector<T>&, const SignalStructure<T>&, std::size_t);  \
    template BeliefDistribution<T> induced_posteriors(const std::vector<T>&, const SignalStructure<T>&, double); \
    template bool is_bayes_plausible(const std::vector<T>&, const BeliefDistribution<T>&, double);           \
    template SignalStructure<T> signal_from_posteriors(const std::vector<T>&, const BeliefDistribution<T>&,  \
                                                       double);                                              \
    template bool same_distribution(const BeliefDistribution<T>&, const BeliefDistribution<T>&, double);     \
    template SignalStructure<T> uninformative_signal(std::size_t);                                           \
    template SignalStructure<T> revealing_signal(std::size_t);

INFONOMICS_SIGNALS_INSTANTIATE(double)
INFONOMICS_SIGNALS_INSTANTIATE(Rational)

}  // namespace infonomics
