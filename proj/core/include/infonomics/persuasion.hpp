#pragma once

// Bayesian persuasion with a single receiver and finite states and actions.

#include "infonomics/lp.hpp"
#include "infonomics/signals.hpp"

#include <string>
#include <vector>

namespace infonomics {

template <class T>
struct PersuasionInstance {
    std::vector<std::string> states;
    std::vector<T> prior;
    std::vector<std::string> actions;
    Matrix<T> u_receiver;  // [action][state]
    Matrix<T> u_sender;    // [action][state]

    void validate() const;
};

// Receiver-optimal action; ties go to the sender's preferred action, then to
// the lowest action index.
template <class T>
std::size_t receiver_action(const PersuasionInstance<T>& inst, const std::vector<T>& belief);

template <class T>
T sender_value(const PersuasionInstance<T>& inst, const std::vector<T>& belief);

// Piecewise-affine concave envelope over mu = P(first state), binary states only.
template <class T>
struct Envelope {
    std::vector<T> mu;     // hull vertices, increasing, first 0 and last 1
    std::vector<T> value;
    std::vector<T> raw_mu;     // breakpoints of the sender's value function
    std::vector<T> raw_value;  // its values there

    T operator()(const T& m) const;
};

template <class T>
Envelope<T> concavify_1d(const PersuasionInstance<T>& inst);

template <class T>
struct PersuasionSolution {
    T value{0};
    T no_information_value{0};      // sender_value at the prior
    bool benefits = false;          // value strictly above the no-information value
    SignalStructure<T> signal;      // realizations are action recommendations
    std::vector<T> realization_probability;
    Matrix<T> posteriors;           // one per realization with positive probability
    std::vector<std::size_t> posterior_action;
    LpStatus status = LpStatus::Optimal;
};

// Maximizes the sender's payoff over obedient action recommendations.
// Throws NumericalError if the LP does not reach an optimum.
template <class T>
PersuasionSolution<T> optimal_signal(const PersuasionInstance<T>& inst);

#define INFONOMICS_PERSUASION_EXTERN(T)                                                                  \
    extern template struct PersuasionInstance<T>;                                                        \
    extern template struct Envelope<T>;                                                                  \
    extern template std::size_t receiver_action(const PersuasionInstance<T>&, const std::vector<T>&);    \
    extern template T sender_value(const PersuasionInstance<T>&, const std::vector<T>&);                 \
    extern template Envelope<T> concavify_1d(const PersuasionInstance<T>&);                              \
    extern template PersuasionSolution<T> optimal_signal(const PersuasionInstance<T>&);

INFONOMICS_PERSUASION_EXTERN(double)
INFONOMICS_PERSUASION_EXTERN(Rational)
#undef INFONOMICS_PERSUASION_EXTERN

}  // namespace infonomics
