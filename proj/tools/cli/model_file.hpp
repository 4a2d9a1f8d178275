#pragma once
// Versioned JSON model files. Every file carries "format": 1 and a "kind";
// unknown fields are rejected, probability vectors within tolerance of the
// simplex are renormalized with a warning, and each payload is checked
// against the library's own invariants before a command sees it.

#include "infonomics/error.hpp"
#include "infonomics/knowledge.hpp"
#include "infonomics/misspec.hpp"
#include "infonomics/scalar.hpp"
#include "infonomics/signals.hpp"

#include <json.hpp>

#include <array>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace cli {

using infonomics::Matrix;
using infonomics::Rational;
using RVec = std::vector<Rational>;
using RMat = Matrix<Rational>;
using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// Schema or invariant failure; exits like any other validation error.
class ModelError : public infonomics::ValidationError {
public:
    using infonomics::ValidationError::ValidationError;
};

struct LoadOptions {
    double tol = 1e-6;              // largest simplex deviation repaired by renormalizing
    std::ostream* warnings = nullptr;
};

struct PartitionPayload {
    std::vector<std::string> states;
    RVec prior;
    std::vector<std::string> agents;
    std::vector<infonomics::Partition> partitions;
};

struct EmailPayload {
    double p_b = 0, eps = 0, L = 0, M = 0;
    int t_max = 1;
};

struct SignalPayload {
    std::vector<std::string> states, realizations;
    RMat matrix;
    RVec prior;  // optional
};

struct BeliefsPayload {
    std::vector<std::string> states;
    RVec prior;  // optional; must equal the barycenter when present
    RMat support;
    RVec weights;
    std::vector<double> values;  // optional numeric state values
};

struct PopulationPayload {
    std::vector<std::string> covariates;
    // mass[c][group][theta]
    std::vector<std::array<std::array<double, 2>, 2>> mass;
    std::vector<int> score;
};

struct FamilyPayload {
    std::vector<double> thetas, grid;
    Matrix<double> rows;
    std::vector<double> prior;       // optional
    std::vector<double> thresholds;  // optional
};

struct DensityPayload {
    std::vector<double> grid, mass;
};

struct JointPayload {
    std::vector<std::size_t> dims;
    std::vector<double> mass;
};

struct ProblemPayload {
    std::vector<std::string> actions;
    RMat utility;  // [action][state]
};

struct BetaPayload {
    std::vector<std::string> states;
    Matrix<double> matrix;
};

struct EnvironmentPayload {
    std::vector<double> params, prior;
    Matrix<double> density;
    std::vector<std::string> realizations;
    std::size_t truth = 0, horizon = 0;
};

struct KlsPayload {
    std::vector<double> thetas, prior_a, prior_b;
    std::vector<std::string> x_realizations, xt_realizations;
    Matrix<double> x, xt;
};

struct CommonPayload {
    std::string structure;  // independent | public | email_twist
    Matrix<double> phi, psi;
    double theta_low = 0, theta_high = 0, eps = 0;
    std::size_t levels = 0;
    std::vector<double> prior;
    std::size_t theta = 0, horizon = 0, paths = 0;
    double q = 0;
};

struct AcyPayload {
    infonomics::AcyModel model;
    std::vector<double> rho;  // optional grid
};

struct BerkPayload {
    std::vector<double> prior, truth;
    Matrix<double> densities;
    std::size_t horizon = 0, paths = 0;
    double threshold = 0;
};

struct SubjectivePayload {
    infonomics::SubjectiveModel model;
    infonomics::Strategy strategy;  // optional
};

struct GamePayload {
    infonomics::GameModel model;
    std::vector<infonomics::Strategy> profile;  // optional
};

struct PersuasionPayload {
    std::vector<std::string> states, actions;
    RVec prior;
    RMat u_receiver, u_sender;  // [action][state]
};

using Model = std::variant<PartitionPayload, EmailPayload, SignalPayload, BeliefsPayload, PopulationPayload,
                           FamilyPayload, DensityPayload, JointPayload, ProblemPayload, BetaPayload,
                           EnvironmentPayload, KlsPayload, CommonPayload, AcyPayload, BerkPayload,
                           SubjectivePayload, GamePayload, PersuasionPayload>;

std::string kind_name(const Model& m);

Model parse_model(const std::string& path, const LoadOptions& opt = {});
Model parse_model_text(const std::string& text, const std::string& name, const LoadOptions& opt = {});
Json emit_model(const Model& m);

template <class P>
P expect(const Model& m, const std::string& path) {
    if (const auto* p = std::get_if<P>(&m)) return *p;
    throw ModelError(path + ": wrong model kind '" + kind_name(m) + "' for this command");
}

// Typed views used by the commands.
template <class T>
std::vector<T> as(const RVec& v);
template <class T>
Matrix<T> as(const RMat& m);

template <class T>
infonomics::PartitionModel<T> to_partition_model(const PartitionPayload& p);
template <class T>
infonomics::SignalStructure<T> to_signal(const SignalPayload& p);
template <class T>
infonomics::BeliefDistribution<T> to_beliefs(const BeliefsPayload& p);

// Exact decimal for a double: the shortest text that round-trips.
Rational exact_decimal(double x);
std::string shortest_text(double x);

// Comma-separated numbers from the command line, e.g. "3/10,7/10".
RVec parse_list(const std::string& text);
// Same, renormalized onto the simplex under the load policy.
RVec parse_distribution(const std::string& text, const std::string& what, const LoadOptions& opt);

}  // namespace cli
