#include "infonomics/knowledge.hpp"

#include "infonomics/error.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace infonomics {

template <class T>
PartitionModel<T>::PartitionModel(std::vector<std::string> states, std::vector<T> prior,
                                  std::vector<Partition> partitions, PartitionModelOptions options)
    : states_(std::move(states)), prior_(std::move(prior)), partitions_(std::move(partitions)) {
    const std::size_t n = states_.size();
    const T tol(options.tol);
    if (n == 0) throw ValidationError("partition model has no states");
    if (prior_.size() != n) throw ValidationError("prior length differs from the number of states");
    {
        auto sorted = states_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ValidationError("duplicate state label");
    }
    T total(0);
    for (const auto& p : prior_) {
        if (p < 0) throw ValidationError("prior has a negative entry");
        total += p;
    }
    if (abs_value(T(total - 1)) > tol) throw ValidationError("prior does not sum to 1");
    if (partitions_.empty()) throw ValidationError("partition model has no agents");

    block_index_.assign(partitions_.size(), std::vector<std::size_t>(n, n));
    for (std::size_t i = 0; i < partitions_.size(); ++i) {
        for (std::size_t b = 0; b < partitions_[i].size(); ++b) {
            auto& block = partitions_[i][b];
            if (block.empty()) throw ValidationError("agent " + std::to_string(i) + " has an empty block");
            std::sort(block.begin(), block.end());
            T block_mass(0);
            for (auto s : block) {
                if (s >= n) throw ValidationError("block refers to an unknown state");
                if (block_index_[i][s] != n)
                    throw ValidationError("agent " + std::to_string(i) + " has overlapping blocks");
                block_index_[i][s] = b;
                block_mass += prior_[s];
            }
            if (options.require_positive_blocks && !(block_mass > 0))
                throw ValidationError("agent " + std::to_string(i) +
                                      " has a block with zero prior mass (each block must be positive)");
        }
        for (std::size_t s = 0; s < n; ++s)
            if (block_index_[i][s] == n)
                throw ValidationError("agent " + std::to_string(i) + "'s partition does not cover state " +
                                      states_[s]);
    }
}

template <class T>
const Partition& PartitionModel<T>::partition(std::size_t agent) const {
    if (agent >= partitions_.size()) throw ValidationError("unknown agent " + std::to_string(agent));
    return partitions_[agent];
}

template <class T>
std::size_t PartitionModel<T>::block_index(std::size_t agent, std::size_t state) const {
    if (agent >= partitions_.size()) throw ValidationError("unknown agent " + std::to_string(agent));
    if (state >= states_.size()) throw ValidationError("unknown state " + std::to_string(state));
    return block_index_[agent][state];
}

template <class T>
const Block& PartitionModel<T>::block_of(std::size_t agent, std::size_t state) const {
    return partitions_[agent][block_index(agent, state)];
}

template <class T>
std::size_t PartitionModel<T>::state_index(const std::string& label) const {
    auto it = std::find(states_.begin(), states_.end(), label);
    if (it == states_.end()) throw ValidationError("unknown state label '" + label + "'");
    return static_cast<std::size_t>(it - states_.begin());
}

template <class T>
EventSet PartitionModel<T>::event(const std::vector<std::size_t>& indices) const {
    EventSet e(num_states());
    for (auto s : indices) {
        if (s >= num_states()) throw ValidationError("event refers to an unknown state");
        e.set(s);
    }
    return e;
}

template <class T>
EventSet PartitionModel<T>::event_from_labels(const std::vector<std::string>& labels) const {
    EventSet e(num_states());
    for (const auto& l : labels) e.set(state_index(l));
    return e;
}

template <class T>
T PartitionModel<T>::mass(const EventSet& e) const {
    T m(0);
    for (auto s = e.find_first(); s != EventSet::npos; s = e.find_next(s)) m += prior_[s];
    return m;
}

std::vector<std::size_t> event_indices(const EventSet& e) {
    std::vector<std::size_t> out;
    for (auto s = e.find_first(); s != EventSet::npos; s = e.find_next(s)) out.push_back(s);
    return out;
}

namespace {

template <class T>
void check_event(const PartitionModel<T>& m, const EventSet& a) {
    if (a.size() != m.num_states()) throw ValidationError("event size differs from the state space");
}

template <class T>
EventSet knows(const PartitionModel<T>& m, std::size_t agent, const EventSet& a) {
    EventSet out(m.num_states());
    for (const auto& block : m.partition(agent)) {
        bool inside = std::all_of(block.begin(), block.end(), [&](std::size_t s) { return a.test(s); });
        if (inside)
            for (auto s : block) out.set(s);
    }
    return out;
}

// P(A | block), or nullopt-like flag for null blocks.
template <class T>
bool block_posterior(const PartitionModel<T>& m, const Block& block, const EventSet& a, T& out) {
    T num(0), den(0);
    for (auto s : block) {
        den += m.prior()[s];
        if (a.test(s)) num += m.prior()[s];
    }
    if (!(den > 0)) return false;
    out = num / den;
    return true;
}

template <class T>
EventSet believes(const PartitionModel<T>& m, std::size_t agent, const EventSet& a, const T& p) {
    EventSet out(m.num_states());
    for (const auto& block : m.partition(agent)) {
        T q;
        if (!block_posterior(m, block, a, q))
            throw ZeroProbabilityError("p-belief conditions on a block with zero prior mass");
        if (q >= p)
            for (auto s : block) out.set(s);
    }
    return out;
}

template <class T>
EventSet everyone_believes(const PartitionModel<T>& m, const EventSet& a, const T& p) {
    EventSet out = m.full_event();
    for (std::size_t i = 0; i < m.num_agents(); ++i) out &= believes(m, i, a, p);
    return out;
}

}  // namespace

template <class T>
EventSet knowledge_operator(const PartitionModel<T>& m, const std::vector<std::size_t>& agents, const EventSet& a) {
    check_event(m, a);
    if (agents.empty()) throw ValidationError("knowledge operator needs at least one agent");
    EventSet out = m.full_event();
    for (auto i : agents) {
        if (i >= m.num_agents()) throw ValidationError("unknown agent " + std::to_string(i));
        out &= knows(m, i, a);
    }
    return out;
}

template <class T>
EventSet mutual_knowledge(const PartitionModel<T>& m, const EventSet& a) {
    std::vector<std::size_t> all(m.num_agents());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return knowledge_operator(m, all, a);
}

template <class T>
EventSet common_knowledge_iterated(const PartitionModel<T>& m, const EventSet& a) {
    check_event(m, a);
    EventSet cur = mutual_knowledge(m, a);
    for (;;) {
        EventSet next = mutual_knowledge(m, cur);
        if (next == cur) return cur;
        cur = std::move(next);
    }
}

template <class T>
Partition meet(const PartitionModel<T>& m) {
    const std::size_t n = m.num_states();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < m.num_agents(); ++i)
        for (const auto& block : m.partition(i))
            for (auto s : block) {
                auto r1 = find(block.front()), r2 = find(s);
                if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
            }
    std::vector<std::size_t> slot(n, n);
    Partition out;
    for (std::size_t s = 0; s < n; ++s) {
        auto r = find(s);
        if (slot[r] == n) {
            slot[r] = out.size();
            out.emplace_back();
        }
        out[slot[r]].push_back(s);
    }
    return out;
}

template <class T>
bool common_knowledge_via_meet(const PartitionModel<T>& m, const EventSet& a, std::size_t state) {
    check_event(m, a);
    if (state >= m.num_states()) throw ValidationError("unknown state");
    for (const auto& block : meet(m))
        if (std::find(block.begin(), block.end(), state) != block.end())
            return std::all_of(block.begin(), block.end(), [&](std::size_t s) { return a.test(s); });
    return false;
}

template <class T>
bool is_evident(const PartitionModel<T>& m, const EventSet& a) {
    check_event(m, a);
    return a.is_subset_of(mutual_knowledge(m, a));
}

template <class T>
EventSet largest_evident_subset(const PartitionModel<T>& m, const EventSet& a) {
    check_event(m, a);
    // Peel off states whose information cell (for some agent) leaves the set.
    EventSet e = mutual_knowledge(m, a);
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto s = e.find_first(); s != EventSet::npos; s = e.find_next(s)) {
            for (std::size_t i = 0; i < m.num_agents() && e.test(s); ++i) {
                const auto& block = m.block_of(i, s);
                if (!std::all_of(block.begin(), block.end(), [&](std::size_t t) { return e.test(t); })) {
                    for (auto t : block) e.reset(t);
                    changed = true;
                }
            }
        }
    }
    return e;
}

template <class T>
bool common_knowledge_via_evident(const PartitionModel<T>& m, const EventSet& a, std::size_t state) {
    if (state >= m.num_states()) throw ValidationError("unknown state");
    return largest_evident_subset(m, a).test(state);
}

template <class T>
T event_posterior(const PartitionModel<T>& m, std::size_t agent, const EventSet& a, std::size_t state) {
    check_event(m, a);
    T q;
    if (!block_posterior(m, m.block_of(agent, state), a, q))
        throw ZeroProbabilityError("information cell has zero prior mass");
    return q;
}

template <class T>
EventSet p_belief(const PartitionModel<T>& m, std::size_t agent, const EventSet& a, const T& p) {
    check_event(m, a);
    if (p < 0 || p > 1) throw ValidationError("p must lie in [0,1]");
    if (agent >= m.num_agents()) throw ValidationError("unknown agent " + std::to_string(agent));
    return believes(m, agent, a, p);
}

template <class T>
EventSet common_p_belief(const PartitionModel<T>& m, const EventSet& a, const T& p) {
    check_event(m, a);
    if (p < 0 || p > 1) throw ValidationError("p must lie in [0,1]");
    std::vector<EventSet> seen;
    EventSet cur = everyone_believes(m, a, p);
    EventSet acc = cur;
    while (std::find(seen.begin(), seen.end(), cur) == seen.end()) {
        if (seen.size() > 100000) throw NumericalError("common p-belief iteration did not cycle");
        seen.push_back(cur);
        cur = everyone_believes(m, cur, p);
        acc &= cur;
    }
    return acc;
}

template <class T>
EventSet common_p_belief_evident(const PartitionModel<T>& m, const EventSet& a, const T& p) {
    check_event(m, a);
    if (p < 0 || p > 1) throw ValidationError("p must lie in [0,1]");
    EventSet e = everyone_believes(m, a, p);
    for (;;) {
        EventSet next = e & everyone_believes(m, e, p);
        if (next == e) return e;
        e = std::move(next);
    }
}

template <class T>
AgreementReport<T> agreement_check(const PartitionModel<T>& m, const EventSet& a, std::size_t state,
                                   const T& tol) {
    check_event(m, a);
    if (m.num_agents() < 2) throw ValidationError("agreement needs at least two agents");
    AgreementReport<T> r;
    for (std::size_t i = 0; i < m.num_agents(); ++i) r.posteriors.push_back(event_posterior(m, i, a, state));
    // The event "each agent i's posterior is q_i".
    EventSet e = m.full_event();
    for (std::size_t i = 0; i < m.num_agents(); ++i)
        for (const auto& block : m.partition(i)) {
            T q;
            bool defined = block_posterior(m, block, a, q);
            if (!defined || abs_value(T(q - r.posteriors[i])) > tol)
                for (auto s : block) e.reset(s);
        }
    r.common_knowledge = common_knowledge_via_meet(m, e, state);
    r.posteriors_equal = true;
    for (const auto& q : r.posteriors)
        if (abs_value(T(q - r.posteriors.front())) > tol) r.posteriors_equal = false;
    r.violation = r.common_knowledge && !r.posteriors_equal;
    return r;
}

template <class T>
DialogueTranscript<T> gp_dialogue(const PartitionModel<T>& m, const EventSet& a, std::size_t state,
                                  std::size_t max_rounds) {
    check_event(m, a);
    const std::size_t n = m.num_states(), k = m.num_agents();
    if (k < 2) throw ValidationError("the dialogue needs at least two agents");
    if (state >= n) throw ValidationError("unknown state");
    const T tol = ScalarTraits<T>::default_tol();

    std::vector<std::size_t> cls(n, 0);  // public information: states sharing a class are indistinguishable
    std::size_t num_classes = 1;
    std::vector<std::vector<T>> rounds;
    DialogueTranscript<T> out;
    for (std::size_t r = 1; r <= max_rounds; ++r) {
        std::vector<std::vector<T>> q(n, std::vector<T>(k));
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t i = 0; i < k; ++i) {
                Block info;
                for (auto t : m.block_of(i, s))
                    if (cls[t] == cls[s]) info.push_back(t);
                if (!block_posterior(m, info, a, q[s][i]))
                    throw ZeroProbabilityError("dialogue reached an information set with zero mass");
            }
        rounds.push_back(q[state]);

        std::vector<std::size_t> next(n, n);
        std::vector<std::size_t> reps;
        for (std::size_t s = 0; s < n; ++s) {
            for (auto rep : reps) {
                if (cls[rep] != cls[s]) continue;
                bool same = true;
                for (std::size_t i = 0; i < k && same; ++i) same = abs_value(T(q[rep][i] - q[s][i])) <= tol;
                if (same) {
                    next[s] = next[rep];
                    break;
                }
            }
            if (next[s] == n) {
                next[s] = reps.size();
                reps.push_back(s);
            }
        }
        if (reps.size() == num_classes) {
            out.rounds_to_stable = r;
            break;
        }
        cls = std::move(next);
        num_classes = reps.size();
    }
    if (out.rounds_to_stable == 0) throw NumericalError("dialogue did not stabilize within max_rounds");

    auto differs = [&](const std::vector<T>& x, const std::vector<T>& y) {
        for (std::size_t i = 0; i < k; ++i)
            if (abs_value(T(x[i] - y[i])) > tol) return true;
        return false;
    };
    std::size_t last = 0;
    for (std::size_t r = 1; r < rounds.size(); ++r)
        if (differs(rounds[r], rounds[r - 1])) last = r;
    out.announcements.assign(rounds.begin(), rounds.begin() + static_cast<std::ptrdiff_t>(last + 1));
    const auto& fin = out.announcements.back();
    out.agreed = std::all_of(fin.begin(), fin.end(), [&](const T& x) { return abs_value(T(x - fin.front())) <= tol; });
    return out;
}

#define INFONOMICS_KNOWLEDGE_INSTANTIATE(T)                                                               \
    template class PartitionModel<T>;                                                                     \
    template EventSet knowledge_operator(const PartitionModel<T>&, const std::vector<std::size_t>&,       \
                                         const EventSet&);                                                \
    template EventSet mutual_knowledge(const PartitionModel<T>&, const EventSet&);                        \
    template EventSet common_knowledge_iterated(const PartitionModel<T>&, const EventSet&);               \
    template Partition meet(const PartitionModel<T>&);                                                    \
    template bool common_knowledge_via_meet(const PartitionModel<T>&, const EventSet&, std::size_t);      \
    template bool is_evident(const PartitionModel<T>&, const EventSet&);                                  \
    template EventSet largest_evident_subset(const PartitionModel<T>&, const EventSet&);                  \
    template bool common_knowledge_via_evident(const PartitionModel<T>&, const EventSet&, std::size_t);   \
    template T event_posterior(const PartitionModel<T>&, std::size_t, const EventSet&, std::size_t);      \
    template EventSet p_belief(const PartitionModel<T>&, std::size_t, const EventSet&, const T&);         \
    template EventSet common_p_belief(const PartitionModel<T>&, const EventSet&, const T&);               \
    template EventSet common_p_belief_evident(const PartitionModel<T>&, const EventSet&, const T&);       \
    template AgreementReport<T> agreement_check(const PartitionModel<T>&, const EventSet&, std::size_t,   \
                                                const T&);                                                \
    template DialogueTranscript<T> gp_dialogue(const PartitionModel<T>&, const EventSet&, std::size_t,    \
                                               std::size_t);

INFONOMICS_KNOWLEDGE_INSTANTIATE(double)
INFONOMICS_KNOWLEDGE_INSTANTIATE(Rational)

}  // namespace infonomics
