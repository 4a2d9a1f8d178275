#pragma once

// Finite partition models: knowledge and p-belief operators, the meet, common
// knowledge (three constructions), agreement, and the Geanakoplos-Polemarchakis
// dialogue.

#include "infonomics/scalar.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace infonomics {

using EventSet = boost::dynamic_bitset<>;
using Block = std::vector<std::size_t>;
using Partition = std::vector<Block>;

struct PartitionModelOptions {
    // Every block must carry positive prior mass. Switching this off admits
    // models with null blocks; conditioning on such a block then throws.
    bool require_positive_blocks = true;
    double tol = 1e-12;
};

template <class T>
class PartitionModel {
public:
    PartitionModel(std::vector<std::string> states, std::vector<T> prior, std::vector<Partition> partitions,
                   PartitionModelOptions options = {});

    std::size_t num_states() const { return states_.size(); }
    std::size_t num_agents() const { return partitions_.size(); }
    const std::vector<std::string>& states() const { return states_; }
    const std::vector<T>& prior() const { return prior_; }
    const Partition& partition(std::size_t agent) const;
    const Block& block_of(std::size_t agent, std::size_t state) const;
    std::size_t block_index(std::size_t agent, std::size_t state) const;

    std::size_t state_index(const std::string& label) const;
    EventSet event(const std::vector<std::size_t>& indices) const;
    EventSet event_from_labels(const std::vector<std::string>& labels) const;
    EventSet empty_event() const { return EventSet(num_states()); }
    EventSet full_event() const { return ~EventSet(num_states()); }
    EventSet block_event(const Block& b) const { return event(b); }

    T mass(const EventSet& e) const;

private:
    std::vector<std::string> states_;
    std::vector<T> prior_;
    std::vector<Partition> partitions_;
    std::vector<std::vector<std::size_t>> block_index_;  // [agent][state]
};

std::vector<std::size_t> event_indices(const EventSet& e);

template <class T>
EventSet knowledge_operator(const PartitionModel<T>& m, const std::vector<std::size_t>& agents, const EventSet& a);

// K(A): every agent knows A.
template <class T>
EventSet mutual_knowledge(const PartitionModel<T>& m, const EventSet& a);

template <class T>
EventSet common_knowledge_iterated(const PartitionModel<T>& m, const EventSet& a);

// Finest common coarsening. Blocks sorted by their smallest state.
template <class T>
Partition meet(const PartitionModel<T>& m);

template <class T>
bool common_knowledge_via_meet(const PartitionModel<T>& m, const EventSet& a, std::size_t state);

template <class T>
bool is_evident(const PartitionModel<T>& m, const EventSet& a);

// Largest evident event contained in K(A); A is common knowledge exactly there.
template <class T>
EventSet largest_evident_subset(const PartitionModel<T>& m, const EventSet& a);

template <class T>
bool common_knowledge_via_evident(const PartitionModel<T>& m, const EventSet& a, std::size_t state);

template <class T>
T event_posterior(const PartitionModel<T>& m, std::size_t agent, const EventSet& a, std::size_t state);

template <class T>
EventSet p_belief(const PartitionModel<T>& m, std::size_t agent, const EventSet& a, const T& p);

// Intersection of the iterates A^k = cap_i B_i^p(A^{k-1}). The iterates need not
// be nested, so iteration runs until an iterate repeats.
template <class T>
EventSet common_p_belief(const PartitionModel<T>& m, const EventSet& a, const T& p);

// Largest evident p-belief event inside cap_i B_i^p(A).
template <class T>
EventSet common_p_belief_evident(const PartitionModel<T>& m, const EventSet& a, const T& p);

template <class T>
struct AgreementReport {
    std::vector<T> posteriors;
    bool common_knowledge = false;
    bool posteriors_equal = false;
    bool violation = false;
};

template <class T>
AgreementReport<T> agreement_check(const PartitionModel<T>& m, const EventSet& a, std::size_t state,
                                   const T& tol = ScalarTraits<T>::default_tol());

template <class T>
struct DialogueTranscript {
    // announcements[r][i]: agent i's announced posterior in round r+1 at the true
    // state, trimmed after the last round in which it changed.
    std::vector<std::vector<T>> announcements;
    // Rounds until the public partition stopped refining (the last of these
    // rounds reveals nothing new anywhere in the model).
    std::size_t rounds_to_stable = 0;
    bool agreed = false;
};

template <class T>
DialogueTranscript<T> gp_dialogue(const PartitionModel<T>& m, const EventSet& a, std::size_t state,
                                  std::size_t max_rounds = 1000);

#define INFONOMICS_KNOWLEDGE_EXTERN(T)                                                                     \
    extern template class PartitionModel<T>;                                                               \
    extern template EventSet knowledge_operator(const PartitionModel<T>&, const std::vector<std::size_t>&, \
                                                const EventSet&);                                          \
    extern template EventSet mutual_knowledge(const PartitionModel<T>&, const EventSet&);                  \
    extern template EventSet common_knowledge_iterated(const PartitionModel<T>&, const EventSet&);         \
    extern template Partition meet(const PartitionModel<T>&);                                              \
    extern template bool common_knowledge_via_meet(const PartitionModel<T>&, const EventSet&, std::size_t); \
    extern template bool is_evident(const PartitionModel<T>&, const EventSet&);                            \
    extern template EventSet largest_evident_subset(const PartitionModel<T>&, const EventSet&);            \
    extern template bool common_knowledge_via_evident(const PartitionModel<T>&, const EventSet&, std::size_t); \
    extern template T event_posterior(const PartitionModel<T>&, std::size_t, const EventSet&, std::size_t); \
    extern template EventSet p_belief(const PartitionModel<T>&, std::size_t, const EventSet&, const T&);   \
    extern template EventSet common_p_belief(const PartitionModel<T>&, const EventSet&, const T&);         \
    extern template EventSet common_p_belief_evident(const PartitionModel<T>&, const EventSet&, const T&); \
    extern template AgreementReport<T> agreement_check(const PartitionModel<T>&, const EventSet&,          \
                                                       std::size_t, const T&);                             \
    extern template DialogueTranscript<T> gp_dialogue(const PartitionModel<T>&, const EventSet&,           \
                                                      std::size_t, std::size_t);

INFONOMICS_KNOWLEDGE_EXTERN(double)
INFONOMICS_KNOWLEDGE_EXTERN(Rational)
#undef INFONOMICS_KNOWLEDGE_EXTERN

}  // namespace infonomics
