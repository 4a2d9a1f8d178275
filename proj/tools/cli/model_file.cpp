#include "model_file.hpp"

#include "infonomics/email_game.hpp"
#include "infonomics/common_learning.hpp"
#include "infonomics/learning.hpp"
#include "infonomics/orders.hpp"
#include "infonomics/persuasion.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

namespace cli {

namespace {

using infonomics::to_double;

struct Context {
    std::string file;
    LoadOptions opt;
};

// A position in the parsed document. Object nodes remember which keys were
// read so that leftovers can be reported as unknown fields.
class Node {
public:
    Node(const Json& j, std::string path, std::shared_ptr<const Context> ctx)
        : j_(&j), path_(std::move(path)), ctx_(std::move(ctx)), seen_(std::make_shared<std::set<std::string>>()) {}

    const std::string& path() const { return path_; }
    const Context& ctx() const { return *ctx_; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ModelError(ctx_->file + ": " + (path_.empty() ? std::string("/") : path_) + ": " + msg);
    }

    bool has(const std::string& key) const {
        require_object();
        return j_->contains(key);
    }

    Node at(const std::string& key) const {
        require_object();
        auto it = j_->find(key);
        if (it == j_->end()) fail("missing field '" + key + "'");
        seen_->insert(key);
        return Node(*it, path_ + "/" + key, ctx_);
    }

    void done() const {
        require_object();
        for (auto it = j_->begin(); it != j_->end(); ++it)
            if (!seen_->count(it.key())) Node(it.value(), path_ + "/" + it.key(), ctx_).fail("unknown field");
    }

    std::vector<Node> items() const {
        if (!j_->is_array()) fail("expected an array");
        std::vector<Node> out;
        for (std::size_t i = 0; i < j_->size(); ++i) out.emplace_back((*j_)[i], path_ + "/" + std::to_string(i), ctx_);
        return out;
    }

    std::vector<std::pair<std::string, Node>> members() const {
        require_object();
        std::vector<std::pair<std::string, Node>> out;
        for (auto it = j_->begin(); it != j_->end(); ++it)
            out.emplace_back(it.key(), Node(it.value(), path_ + "/" + it.key(), ctx_));
        return out;
    }

    Rational rational() const {
        try {
            if (j_->is_number_integer()) return Rational(j_->get<long long>());
            if (j_->is_number_unsigned()) return Rational(j_->get<unsigned long long>());
            if (j_->is_number_float()) return exact_decimal(j_->get<double>());
            if (j_->is_string()) return infonomics::parse_rational(j_->get<std::string>());
        } catch (const ModelError&) {
            throw;
        } catch (const infonomics::ValidationError& e) {
            fail(e.what());
        }
        fail("expected a number");
    }

    double real() const {
        if (j_->is_number()) return j_->get<double>();
        if (j_->is_string()) {
            try {
                return infonomics::parse_double(j_->get<std::string>());
            } catch (const infonomics::ValidationError& e) {
                fail(e.what());
            }
        }
        fail("expected a number");
    }

    std::size_t index() const {
        if (j_->is_number_unsigned()) return j_->get<std::size_t>();
        if (j_->is_number_integer() && j_->get<long long>() >= 0) return static_cast<std::size_t>(j_->get<long long>());
        fail("expected a nonnegative integer");
    }

    std::string label() const {
        if (j_->is_string()) return j_->get<std::string>();
        if (j_->is_number_integer() || j_->is_number_unsigned()) return j_->dump();
        fail("expected a label");
    }

    // A label from `names`, or a 0-based index into it.
    std::size_t resolve(const std::vector<std::string>& names, const std::string& what) const {
        if (j_->is_string()) {
            for (std::size_t i = 0; i < names.size(); ++i)
                if (names[i] == j_->get<std::string>()) return i;
            fail("unknown " + what + " '" + j_->get<std::string>() + "'");
        }
        std::size_t i = index();
        if (i >= names.size()) fail(what + " index out of range");
        return i;
    }

    RVec rationals() const {
        RVec v;
        for (const auto& n : items()) v.push_back(n.rational());
        return v;
    }
    std::vector<double> reals() const {
        std::vector<double> v;
        for (const auto& n : items()) v.push_back(n.real());
        return v;
    }
    std::vector<std::string> labels() const {
        std::vector<std::string> v;
        for (const auto& n : items()) v.push_back(n.label());
        return v;
    }
    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> v;
        for (const auto& n : items()) v.push_back(n.index());
        return v;
    }
    RMat rational_rows() const {
        RMat m;
        for (const auto& n : items()) m.push_back(n.rationals());
        return m;
    }
    Matrix<double> real_rows() const {
        Matrix<double> m;
        for (const auto& n : items()) m.push_back(n.reals());
        return m;
    }

private:
    void require_object() const {
        if (!j_->is_object()) fail("expected an object");
    }

    const Json* j_;
    std::string path_;
    std::shared_ptr<const Context> ctx_;
    std::shared_ptr<std::set<std::string>> seen_;
};

void warn(const Context& ctx, const std::string& msg) {
    if (ctx.opt.warnings) *ctx.opt.warnings << "warning: " << ctx.file << ": " << msg << '\n';
}

// Puts a probability vector on the simplex. Exact sums off by anything, and
// float sums off by more than round-off, are repaired only within the load
// tolerance and always with a warning.
template <class T>
void normalize(std::vector<T>& v, const Node& where, const std::string& what = "") {
    if (v.empty()) where.fail("empty probability vector");
    T total(0);
    for (const auto& x : v) {
        if (x < 0) where.fail("negative probability");
        total += x;
    }
    const double dev = std::abs(to_double(total) - 1.0);
    const bool off = infonomics::ScalarTraits<T>::exact ? total != 1 : dev > 1e-12;
    if (!off) return;
    const std::string name = what.empty() ? where.path() : what;
    // Compared with a hair of slack so a deviation of exactly tol, written in
    // decimal, is not lost to binary round-off.
    if (dev > where.ctx().opt.tol * (1 + 1e-9) || !(total > 0))
        where.fail("sums to " + infonomics::format_scalar(to_double(total)) + ", not 1");
    for (auto& x : v) x /= total;
    warn(where.ctx(), name + " sums to " + infonomics::format_scalar(to_double(total)) + "; renormalized");
}

template <class T>
void normalize_rows(Matrix<T>& m, const Node& where) {
    auto rows = where.items();
    for (std::size_t i = 0; i < m.size(); ++i) normalize(m[i], rows[i]);
}

// Normalizes a table as one distribution over all of its cells.
template <class T>
void normalize_total(Matrix<T>& m, const Node& where) {
    std::vector<T> flat;
    for (const auto& row : m) flat.insert(flat.end(), row.begin(), row.end());
    normalize(flat, where);
    std::size_t k = 0;
    for (auto& row : m)
        for (auto& x : row) x = flat[k++];
}

template <class F>
void check_invariants(const Node& root, F&& f) {
    try {
        f();
    } catch (const ModelError&) {
        throw;
    } catch (const infonomics::ValidationError& e) {
        throw ModelError(root.ctx().file + ": invariant violated: " + e.what());
    }
}

void check_width(const Node& n, std::size_t got, std::size_t want, const std::string& what) {
    if (got != want) n.fail("expected " + std::to_string(want) + " " + what + ", found " + std::to_string(got));
}

template <class Row>
void check_rows(const Node& n, const std::vector<Row>& m, std::size_t rows, std::size_t cols, const std::string& what) {
    check_width(n, m.size(), rows, "rows");
    auto items = n.items();
    for (std::size_t i = 0; i < m.size(); ++i) check_width(items[i], m[i].size(), cols, what);
}

PartitionPayload read_partition(const Node& r) {
    PartitionPayload p;
    p.states = r.at("states").labels();
    auto prior = r.at("prior");
    p.prior = prior.rationals();
    check_width(prior, p.prior.size(), p.states.size(), "prior entries");
    normalize(p.prior, prior);
    for (const auto& [agent, blocks] : r.at("partitions").members()) {
        p.agents.push_back(agent);
        infonomics::Partition part;
        for (const auto& b : blocks.items()) {
            infonomics::Block block;
            for (const auto& s : b.items()) {
                auto label = s.label();
                std::size_t k = 0;
                while (k < p.states.size() && p.states[k] != label) ++k;
                if (k == p.states.size()) s.fail("unknown state '" + label + "'");
                block.push_back(k);
            }
            part.push_back(std::move(block));
        }
        p.partitions.push_back(std::move(part));
    }
    r.done();
    check_invariants(r, [&] { to_partition_model<Rational>(p); });
    return p;
}

EmailPayload read_email(const Node& r) {
    EmailPayload p;
    p.p_b = r.at("p_b").real();
    p.eps = r.at("eps").real();
    p.L = r.at("L").real();
    p.M = r.at("M").real();
    p.t_max = static_cast<int>(r.at("t_max").index());
    r.done();
    check_invariants(r, [&] { infonomics::EmailGameParams{p.p_b, p.eps, p.L, p.M, p.t_max}.validate(); });
    return p;
}

SignalPayload read_signal_body(const Node& r, std::vector<std::string> states) {
    SignalPayload p;
    if (r.has("states")) p.states = r.at("states").labels();
    else p.states = std::move(states);
    auto m = r.at("matrix");
    p.matrix = m.rational_rows();
    if (r.has("realizations")) p.realizations = r.at("realizations").labels();
    else if (!p.matrix.empty())
        for (std::size_t k = 0; k < p.matrix.front().size(); ++k) p.realizations.push_back("x" + std::to_string(k + 1));
    if (p.states.empty())
        for (std::size_t k = 0; k < p.matrix.size(); ++k) p.states.push_back("s" + std::to_string(k + 1));
    check_rows(m, p.matrix, p.states.size(), p.realizations.size(), "realizations");
    normalize_rows(p.matrix, m);
    return p;
}

SignalPayload read_signal(const Node& r) {
    SignalPayload p = read_signal_body(r, {});
    if (r.has("prior")) {
        auto prior = r.at("prior");
        p.prior = prior.rationals();
        check_width(prior, p.prior.size(), p.states.size(), "prior entries");
        normalize(p.prior, prior);
    }
    r.done();
    check_invariants(r, [&] { to_signal<Rational>(p); });
    return p;
}

BeliefsPayload read_beliefs(const Node& r) {
    BeliefsPayload p;
    p.states = r.at("states").labels();
    auto support = r.at("support");
    p.support = support.rational_rows();
    auto rows = support.items();
    for (std::size_t i = 0; i < p.support.size(); ++i) {
        check_width(rows[i], p.support[i].size(), p.states.size(), "belief entries");
        normalize(p.support[i], rows[i]);
    }
    auto weights = r.at("weights");
    p.weights = weights.rationals();
    check_width(weights, p.weights.size(), p.support.size(), "weights");
    normalize(p.weights, weights);
    if (r.has("prior")) {
        auto prior = r.at("prior");
        p.prior = prior.rationals();
        check_width(prior, p.prior.size(), p.states.size(), "prior entries");
        normalize(p.prior, prior);
    }
    if (r.has("values")) {
        auto values = r.at("values");
        p.values = values.reals();
        check_width(values, p.values.size(), p.states.size(), "state values");
    }
    r.done();
    check_invariants(r, [&] {
        auto dist = to_beliefs<Rational>(p);
        if (!p.prior.empty() && !infonomics::is_bayes_plausible(p.prior, dist))
            throw infonomics::ValidationError("the beliefs do not average to the prior (Bayes plausibility)");
    });
    return p;
}

PopulationPayload read_population(const Node& r) {
    PopulationPayload p;
    auto mass = r.at("mass");
    Matrix<double> flat;
    for (const auto& c : mass.items()) {
        auto groups = c.items();
        if (groups.size() != 2) c.fail("expected two groups");
        std::array<std::array<double, 2>, 2> cell{};
        for (std::size_t g = 0; g < 2; ++g) {
            auto v = groups[g].reals();
            check_width(groups[g], v.size(), 2, "entries (theta = 0, 1)");
            cell[g] = {v[0], v[1]};
        }
        p.mass.push_back(cell);
        flat.push_back({cell[0][0], cell[0][1], cell[1][0], cell[1][1]});
    }
    normalize_total(flat, mass);
    for (std::size_t c = 0; c < flat.size(); ++c) p.mass[c] = {{{flat[c][0], flat[c][1]}, {flat[c][2], flat[c][3]}}};
    auto score = r.at("score");
    for (const auto& s : score.items()) p.score.push_back(static_cast<int>(s.index()));
    if (r.has("covariates")) p.covariates = r.at("covariates").labels();
    else
        for (std::size_t c = 0; c < p.mass.size(); ++c) p.covariates.push_back("c" + std::to_string(c + 1));
    check_width(score, p.score.size(), p.mass.size(), "scores");
    r.done();
    check_invariants(r, [&] { infonomics::PopulationModel{p.mass, p.score}.validate(); });
    return p;
}

FamilyPayload read_family(const Node& r) {
    FamilyPayload p;
    p.thetas = r.at("thetas").reals();
    p.grid = r.at("grid").reals();
    auto rows = r.at("rows");
    p.rows = rows.real_rows();
    check_rows(rows, p.rows, p.thetas.size(), p.grid.size(), "grid points");
    normalize_rows(p.rows, rows);
    if (r.has("prior")) {
        auto prior = r.at("prior");
        p.prior = prior.reals();
        check_width(prior, p.prior.size(), p.thetas.size(), "prior entries");
        normalize(p.prior, prior);
    }
    if (r.has("thresholds")) p.thresholds = r.at("thresholds").reals();
    r.done();
    check_invariants(r, [&] { infonomics::ConditionalFamily(p.thetas, p.grid, p.rows); });
    return p;
}

DensityPayload read_density(const Node& r) {
    DensityPayload p;
    p.grid = r.at("grid").reals();
    auto mass = r.at("mass");
    p.mass = mass.reals();
    check_width(mass, p.mass.size(), p.grid.size(), "masses");
    normalize(p.mass, mass);
    r.done();
    check_invariants(r, [&] { infonomics::FiniteDensity(p.grid, p.mass); });
    return p;
}

JointPayload read_joint(const Node& r) {
    JointPayload p;
    p.dims = r.at("dims").indices();
    auto mass = r.at("mass");
    p.mass = mass.reals();
    normalize(p.mass, mass);
    r.done();
    check_invariants(r, [&] { infonomics::JointDensity(p.dims, p.mass); });
    return p;
}

ProblemPayload read_problem(const Node& r) {
    ProblemPayload p;
    p.actions = r.at("actions").labels();
    auto u = r.at("utility");
    p.utility = u.rational_rows();
    check_width(u, p.utility.size(), p.actions.size(), "utility rows");
    auto rows = u.items();
    for (std::size_t a = 0; a < p.utility.size(); ++a)
        check_width(rows[a], p.utility[a].size(), p.utility.front().size(), "states");
    r.done();
    return p;
}

BetaPayload read_beta(const Node& r) {
    BetaPayload p;
    auto m = r.at("matrix");
    p.matrix = m.real_rows();
    if (r.has("states")) p.states = r.at("states").labels();
    else
        for (std::size_t k = 0; k < p.matrix.size(); ++k) p.states.push_back("s" + std::to_string(k + 1));
    check_rows(m, p.matrix, p.states.size(), p.states.size(), "columns (beta is square)");
    for (const auto& row : p.matrix)
        for (double v : row)
            if (v < 0) m.fail("beta has a negative coefficient");
    r.done();
    return p;
}

EnvironmentPayload read_environment(const Node& r) {
    EnvironmentPayload p;
    p.params = r.at("params").reals();
    auto prior = r.at("prior");
    p.prior = prior.reals();
    check_width(prior, p.prior.size(), p.params.size(), "prior entries");
    normalize(p.prior, prior);
    auto d = r.at("density");
    p.density = d.real_rows();
    if (r.has("realizations")) p.realizations = r.at("realizations").labels();
    else if (!p.density.empty())
        for (std::size_t k = 0; k < p.density.front().size(); ++k) p.realizations.push_back(std::to_string(k));
    check_rows(d, p.density, p.params.size(), p.realizations.size(), "realizations");
    normalize_rows(p.density, d);
    if (r.has("truth")) p.truth = r.at("truth").index();
    if (r.has("horizon")) p.horizon = r.at("horizon").index();
    r.done();
    check_invariants(r, [&] {
        infonomics::LearningEnvironment{p.params, p.prior, p.density, p.truth, p.horizon}.validate();
    });
    return p;
}

KlsPayload read_kls(const Node& r) {
    KlsPayload p;
    p.thetas = r.at("thetas").reals();
    for (auto [key, vec] : {std::pair{"prior_a", &p.prior_a}, std::pair{"prior_b", &p.prior_b}}) {
        auto n = r.at(key);
        *vec = n.reals();
        check_width(n, vec->size(), p.thetas.size(), "prior entries");
        normalize(*vec, n);
    }
    std::vector<std::string> states;
    for (double t : p.thetas) states.push_back(shortest_text(t));
    auto xn = r.at("x"), xtn = r.at("xt");
    auto x = read_signal_body(xn, states);
    auto xt = read_signal_body(xtn, states);
    xn.done();
    xtn.done();
    p.x_realizations = x.realizations;
    p.xt_realizations = xt.realizations;
    p.x = as<double>(x.matrix);
    p.xt = as<double>(xt.matrix);
    r.done();
    return p;
}

CommonPayload read_common(const Node& r) {
    CommonPayload p;
    auto s = r.at("signals");
    p.structure = s.at("type").label();
    if (p.structure == "independent") {
        auto phi = s.at("phi"), psi = s.at("psi");
        p.phi = phi.real_rows();
        p.psi = psi.real_rows();
        normalize_rows(p.phi, phi);
        normalize_rows(p.psi, psi);
    } else if (p.structure == "public") {
        auto phi = s.at("phi");
        p.phi = phi.real_rows();
        normalize_rows(p.phi, phi);
    } else if (p.structure == "email_twist") {
        p.theta_low = s.at("theta_low").real();
        p.theta_high = s.at("theta_high").real();
        p.eps = s.at("eps").real();
        p.levels = s.at("levels").index();
    } else {
        s.at("type").fail("expected independent, public or email_twist");
    }
    s.done();
    auto prior = r.at("prior");
    p.prior = prior.reals();
    normalize(p.prior, prior);
    p.theta = r.at("theta").index();
    p.horizon = r.at("horizon").index();
    p.q = r.at("q").real();
    if (r.has("paths")) p.paths = r.at("paths").index();
    r.done();
    check_invariants(r, [&] {
        infonomics::TwoAgentSignalModel m;
        if (p.structure == "independent") m = infonomics::independent_model(p.phi, p.psi);
        else if (p.structure == "public") m = infonomics::public_model(p.phi);
        else m = infonomics::email_twist_model(p.theta_low, p.theta_high, p.eps, p.levels);
        if (p.prior.size() != m.num_thetas())
            throw infonomics::ValidationError("prior must have one entry per parameter value");
        if (p.theta >= m.num_thetas()) throw infonomics::ValidationError("theta index out of range");
        if (!(p.q > 0 && p.q <= 1)) throw infonomics::ValidationError("q must lie in (0, 1]");
    });
    return p;
}

AcyPayload read_acy(const Node& r) {
    AcyPayload p;
    for (auto [key, arr] : {std::pair{"prior_a", &p.model.prior_a}, std::pair{"gamma", &p.model.gamma}}) {
        auto n = r.at(key);
        auto v = n.reals();
        check_width(n, v.size(), 2, "entries (one per agent)");
        *arr = {v[0], v[1]};
    }
    p.model.eps = r.at("eps").real();
    p.model.lambda = r.at("lambda").real();
    if (r.has("rho")) p.rho = r.at("rho").reals();
    r.done();
    check_invariants(r, [&] { p.model.validate(); });
    return p;
}

BerkPayload read_berk(const Node& r) {
    BerkPayload p;
    auto prior = r.at("prior");
    p.prior = prior.reals();
    normalize(p.prior, prior);
    auto dens = r.at("densities");
    p.densities = dens.real_rows();
    auto truth = r.at("truth");
    p.truth = truth.reals();
    normalize(p.truth, truth);
    check_rows(dens, p.densities, p.prior.size(), p.truth.size(), "outcomes");
    normalize_rows(p.densities, dens);
    p.horizon = r.at("horizon").index();
    p.paths = r.at("paths").index();
    p.threshold = r.at("threshold").real();
    r.done();
    if (!(p.threshold > 0 && p.threshold <= 1)) r.fail("threshold must lie in (0, 1]");
    return p;
}

infonomics::Strategy read_strategy(const Node& n, std::size_t signals, std::size_t actions) {
    auto s = n.real_rows();
    check_rows(n, s, signals, actions, "actions");
    normalize_rows(s, n);
    return s;
}

std::vector<std::vector<std::size_t>> read_feedback(const Node& n, const std::vector<std::string>& consequences,
                                                    std::size_t rows, std::size_t states) {
    std::vector<std::vector<std::size_t>> fb;
    for (const auto& row : n.items()) {
        std::vector<std::size_t> r;
        for (const auto& y : row.items()) r.push_back(y.resolve(consequences, "consequence"));
        check_width(row, r.size(), states, "states");
        fb.push_back(std::move(r));
    }
    check_width(n, fb.size(), rows, "feedback rows");
    return fb;
}

std::vector<Matrix<double>> read_q_theta_entry(const Node& n, std::size_t signals, std::size_t actions,
                                               std::size_t consequences) {
    std::vector<Matrix<double>> out;
    for (const auto& s : n.items()) {
        auto m = s.real_rows();
        check_rows(s, m, actions, consequences, "consequences");
        normalize_rows(m, s);
        out.push_back(std::move(m));
    }
    check_width(n, out.size(), signals, "signal tables");
    return out;
}

SubjectivePayload read_subjective(const Node& r) {
    SubjectivePayload p;
    auto& m = p.model;
    m.states = r.at("states").labels();
    m.signals = r.at("signals").labels();
    m.actions = r.at("actions").labels();
    m.consequences = r.at("consequences").labels();
    m.thetas = r.at("thetas").labels();
    auto prior = r.at("prior");
    m.prior = prior.real_rows();
    check_rows(prior, m.prior, m.states.size(), m.signals.size(), "signals");
    normalize_total(m.prior, prior);
    m.feedback = read_feedback(r.at("feedback"), m.consequences, m.actions.size(), m.states.size());
    auto u = r.at("utility");
    m.utility = u.real_rows();
    check_rows(u, m.utility, m.actions.size(), m.consequences.size(), "consequences");
    auto q = r.at("q_theta");
    for (const auto& t : q.items())
        m.q_theta.push_back(read_q_theta_entry(t, m.signals.size(), m.actions.size(), m.consequences.size()));
    check_width(q, m.q_theta.size(), m.thetas.size(), "parameter tables");
    if (r.has("strategy")) p.strategy = read_strategy(r.at("strategy"), m.signals.size(), m.actions.size());
    r.done();
    check_invariants(r, [&] { m.validate(); });
    return p;
}

GamePayload read_game(const Node& r) {
    GamePayload p;
    auto& g = p.model;
    g.states = r.at("states").labels();
    auto players = r.at("players").items();
    std::size_t signal_profiles = 1, action_profiles = 1;
    for (const auto& pn : players) {
        infonomics::PlayerModel pl;
        pl.signals = pn.at("signals").labels();
        pl.actions = pn.at("actions").labels();
        signal_profiles *= pl.signals.size();
        action_profiles *= pl.actions.size();
        g.players.push_back(std::move(pl));
    }
    for (std::size_t i = 0; i < players.size(); ++i) {
        const auto& pn = players[i];
        auto& pl = g.players[i];
        pl.consequences = pn.at("consequences").labels();
        pl.thetas = pn.at("thetas").labels();
        auto u = pn.at("utility");
        pl.utility = u.real_rows();
        check_rows(u, pl.utility, pl.actions.size(), pl.consequences.size(), "consequences");
        auto q = pn.at("q_theta");
        for (const auto& t : q.items())
            pl.q_theta.push_back(read_q_theta_entry(t, pl.signals.size(), pl.actions.size(), pl.consequences.size()));
        check_width(q, pl.q_theta.size(), pl.thetas.size(), "parameter tables");
        pl.feedback = read_feedback(pn.at("feedback"), pl.consequences, action_profiles, g.states.size());
        pn.done();
    }
    auto prior = r.at("prior");
    g.prior = prior.real_rows();
    check_rows(prior, g.prior, g.states.size(), signal_profiles, "signal profiles");
    normalize_total(g.prior, prior);
    if (r.has("profile")) {
        auto prof = r.at("profile").items();
        check_width(r.at("profile"), prof.size(), g.players.size(), "strategies");
        for (std::size_t i = 0; i < prof.size(); ++i)
            p.profile.push_back(read_strategy(prof[i], g.players[i].signals.size(), g.players[i].actions.size()));
    }
    r.done();
    check_invariants(r, [&] { g.validate(); });
    return p;
}

PersuasionPayload read_persuasion(const Node& r) {
    PersuasionPayload p;
    p.states = r.at("states").labels();
    p.actions = r.at("actions").labels();
    auto prior = r.at("prior");
    p.prior = prior.rationals();
    check_width(prior, p.prior.size(), p.states.size(), "prior entries");
    normalize(p.prior, prior);
    for (auto [key, m] : {std::pair{"u_receiver", &p.u_receiver}, std::pair{"u_sender", &p.u_sender}}) {
        auto n = r.at(key);
        *m = n.rational_rows();
        check_rows(n, *m, p.actions.size(), p.states.size(), "states");
    }
    r.done();
    check_invariants(r, [&] {
        infonomics::PersuasionInstance<Rational>{p.states, p.prior, p.actions, p.u_receiver, p.u_sender}.validate();
    });
    return p;
}

Model read_root(const Json& doc, const std::string& name, const LoadOptions& opt) {
    auto ctx = std::make_shared<const Context>(Context{name, opt});
    Node root(doc, "", ctx);
    auto fmt = root.at("format");
    if (fmt.index() != static_cast<std::size_t>(kFormatVersion))
        fmt.fail("unsupported format version (expected " + std::to_string(kFormatVersion) + ")");
    const std::string kind = root.at("kind").label();
    if (kind == "partition") return read_partition(root);
    if (kind == "email") return read_email(root);
    if (kind == "signal") return read_signal(root);
    if (kind == "beliefs") return read_beliefs(root);
    if (kind == "population") return read_population(root);
    if (kind == "family") return read_family(root);
    if (kind == "density") return read_density(root);
    if (kind == "joint") return read_joint(root);
    if (kind == "problem") return read_problem(root);
    if (kind == "beta") return read_beta(root);
    if (kind == "environment") return read_environment(root);
    if (kind == "kls") return read_kls(root);
    if (kind == "common") return read_common(root);
    if (kind == "acy") return read_acy(root);
    if (kind == "berk") return read_berk(root);
    if (kind == "subjective") return read_subjective(root);
    if (kind == "game") return read_game(root);
    if (kind == "persuasion") return read_persuasion(root);
    root.at("kind").fail("unknown model kind '" + kind + "'");
}

// Emission ----------------------------------------------------------------

Json num(const Rational& r) {
    if (denominator(r) == 1 && abs(numerator(r)) < boost::multiprecision::cpp_int(1) << 62)
        return numerator(r).convert_to<long long>();
    double d = to_double(r);
    if (exact_decimal(d) == r) return d;
    return infonomics::format_scalar(r);
}

Json nums(const RVec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(num(x));
    return out;
}

Json nums(const RMat& m) {
    Json out = Json::array();
    for (const auto& row : m) out.push_back(nums(row));
    return out;
}

Json header(const char* kind) {
    Json j;
    j["format"] = kFormatVersion;
    j["kind"] = kind;
    return j;
}

struct Emitter {
    Json operator()(const PartitionPayload& p) const {
        Json j = header("partition");
        j["states"] = p.states;
        j["prior"] = nums(p.prior);
        Json parts = Json::object();
        for (std::size_t i = 0; i < p.agents.size(); ++i) {
            Json blocks = Json::array();
            for (const auto& b : p.partitions[i]) {
                Json block = Json::array();
                for (auto s : b) block.push_back(p.states[s]);
                blocks.push_back(block);
            }
            parts[p.agents[i]] = blocks;
        }
        j["partitions"] = parts;
        return j;
    }
    Json operator()(const EmailPayload& p) const {
        Json j = header("email");
        j["p_b"] = p.p_b;
        j["eps"] = p.eps;
        j["L"] = p.L;
        j["M"] = p.M;
        j["t_max"] = p.t_max;
        return j;
    }
    Json operator()(const SignalPayload& p) const {
        Json j = header("signal");
        j["states"] = p.states;
        j["realizations"] = p.realizations;
        j["matrix"] = nums(p.matrix);
        if (!p.prior.empty()) j["prior"] = nums(p.prior);
        return j;
    }
    Json operator()(const BeliefsPayload& p) const {
        Json j = header("beliefs");
        j["states"] = p.states;
        if (!p.prior.empty()) j["prior"] = nums(p.prior);
        j["support"] = nums(p.support);
        j["weights"] = nums(p.weights);
        if (!p.values.empty()) j["values"] = p.values;
        return j;
    }
    Json operator()(const PopulationPayload& p) const {
        Json j = header("population");
        j["covariates"] = p.covariates;
        Json mass = Json::array();
        for (const auto& c : p.mass) mass.push_back({{c[0][0], c[0][1]}, {c[1][0], c[1][1]}});
        j["mass"] = mass;
        j["score"] = p.score;
        return j;
    }
    Json operator()(const FamilyPayload& p) const {
        Json j = header("family");
        j["thetas"] = p.thetas;
        j["grid"] = p.grid;
        j["rows"] = p.rows;
        if (!p.prior.empty()) j["prior"] = p.prior;
        if (!p.thresholds.empty()) j["thresholds"] = p.thresholds;
        return j;
    }
    Json operator()(const DensityPayload& p) const {
        Json j = header("density");
        j["grid"] = p.grid;
        j["mass"] = p.mass;
        return j;
    }
    Json operator()(const JointPayload& p) const {
        Json j = header("joint");
        j["dims"] = p.dims;
        j["mass"] = p.mass;
        return j;
    }
    Json operator()(const ProblemPayload& p) const {
        Json j = header("problem");
        j["actions"] = p.actions;
        j["utility"] = nums(p.utility);
        return j;
    }
    Json operator()(const BetaPayload& p) const {
        Json j = header("beta");
        j["states"] = p.states;
        j["matrix"] = p.matrix;
        return j;
    }
    Json operator()(const EnvironmentPayload& p) const {
        Json j = header("environment");
        j["params"] = p.params;
        j["prior"] = p.prior;
        j["density"] = p.density;
        j["realizations"] = p.realizations;
        j["truth"] = p.truth;
        j["horizon"] = p.horizon;
        return j;
    }
    Json operator()(const KlsPayload& p) const {
        Json j = header("kls");
        j["thetas"] = p.thetas;
        j["prior_a"] = p.prior_a;
        j["prior_b"] = p.prior_b;
        j["x"] = {{"realizations", p.x_realizations}, {"matrix", p.x}};
        j["xt"] = {{"realizations", p.xt_realizations}, {"matrix", p.xt}};
        return j;
    }
    Json operator()(const CommonPayload& p) const {
        Json j = header("common");
        Json s;
        s["type"] = p.structure;
        if (p.structure == "email_twist") {
            s["theta_low"] = p.theta_low;
            s["theta_high"] = p.theta_high;
            s["eps"] = p.eps;
            s["levels"] = p.levels;
        } else {
            s["phi"] = p.phi;
            if (p.structure == "independent") s["psi"] = p.psi;
        }
        j["signals"] = s;
        j["prior"] = p.prior;
        j["theta"] = p.theta;
        j["horizon"] = p.horizon;
        j["q"] = p.q;
        j["paths"] = p.paths;
        return j;
    }
    Json operator()(const AcyPayload& p) const {
        Json j = header("acy");
        j["prior_a"] = p.model.prior_a;
        j["gamma"] = p.model.gamma;
        j["eps"] = p.model.eps;
        j["lambda"] = p.model.lambda;
        if (!p.rho.empty()) j["rho"] = p.rho;
        return j;
    }
    Json operator()(const BerkPayload& p) const {
        Json j = header("berk");
        j["prior"] = p.prior;
        j["densities"] = p.densities;
        j["truth"] = p.truth;
        j["horizon"] = p.horizon;
        j["paths"] = p.paths;
        j["threshold"] = p.threshold;
        return j;
    }
    Json operator()(const SubjectivePayload& p) const {
        const auto& m = p.model;
        Json j = header("subjective");
        j["states"] = m.states;
        j["signals"] = m.signals;
        j["actions"] = m.actions;
        j["consequences"] = m.consequences;
        j["thetas"] = m.thetas;
        j["prior"] = m.prior;
        j["feedback"] = m.feedback;
        j["utility"] = m.utility;
        j["q_theta"] = m.q_theta;
        if (!p.strategy.empty()) j["strategy"] = p.strategy;
        return j;
    }
    Json operator()(const GamePayload& p) const {
        Json j = header("game");
        j["states"] = p.model.states;
        Json players = Json::array();
        for (const auto& pl : p.model.players) {
            Json o;
            o["signals"] = pl.signals;
            o["actions"] = pl.actions;
            o["consequences"] = pl.consequences;
            o["thetas"] = pl.thetas;
            o["utility"] = pl.utility;
            o["q_theta"] = pl.q_theta;
            o["feedback"] = pl.feedback;
            players.push_back(o);
        }
        j["players"] = players;
        j["prior"] = p.model.prior;
        if (!p.profile.empty()) j["profile"] = p.profile;
        return j;
    }
    Json operator()(const PersuasionPayload& p) const {
        Json j = header("persuasion");
        j["states"] = p.states;
        j["prior"] = nums(p.prior);
        j["actions"] = p.actions;
        j["u_receiver"] = nums(p.u_receiver);
        j["u_sender"] = nums(p.u_sender);
        return j;
    }
};

}  // namespace

std::string kind_name(const Model& m) { return emit_model(m)["kind"].get<std::string>(); }

Model parse_model_text(const std::string& text, const std::string& name, const LoadOptions& opt) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Byte offset to line and column.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') ++line, col = 1;
            else ++col;
        }
        throw ModelError(name + ":" + std::to_string(line) + ":" + std::to_string(col) + ": syntax error: " +
                         e.what());
    }
    return read_root(doc, name, opt);
}

Model parse_model(const std::string& path, const LoadOptions& opt) {
    std::ifstream in(path);
    if (!in) throw ModelError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model_text(ss.str(), path, opt);
}

Json emit_model(const Model& m) { return std::visit(Emitter{}, m); }

template <>
std::vector<double> as<double>(const RVec& v) {
    std::vector<double> out;
    for (const auto& x : v) out.push_back(to_double(x));
    return out;
}
template <>
std::vector<Rational> as<Rational>(const RVec& v) {
    return v;
}
template <class T>
Matrix<T> as(const RMat& m) {
    Matrix<T> out;
    for (const auto& row : m) out.push_back(as<T>(row));
    return out;
}
template Matrix<double> as<double>(const RMat&);
template Matrix<Rational> as<Rational>(const RMat&);

template <class T>
infonomics::PartitionModel<T> to_partition_model(const PartitionPayload& p) {
    return infonomics::PartitionModel<T>(p.states, as<T>(p.prior), p.partitions);
}

template <class T>
infonomics::SignalStructure<T> to_signal(const SignalPayload& p) {
    return infonomics::SignalStructure<T>(p.states, p.realizations, as<T>(p.matrix));
}

template <class T>
infonomics::BeliefDistribution<T> to_beliefs(const BeliefsPayload& p) {
    infonomics::BeliefDistribution<T> d{as<T>(p.support), as<T>(p.weights)};
    for (const auto& b : d.support) infonomics::validate_belief(b);
    return d;
}

template infonomics::PartitionModel<double> to_partition_model(const PartitionPayload&);
template infonomics::PartitionModel<Rational> to_partition_model(const PartitionPayload&);
template infonomics::SignalStructure<double> to_signal(const SignalPayload&);
template infonomics::SignalStructure<Rational> to_signal(const SignalPayload&);
template infonomics::BeliefDistribution<double> to_beliefs(const BeliefsPayload&);
template infonomics::BeliefDistribution<Rational> to_beliefs(const BeliefsPayload&);

std::string shortest_text(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw infonomics::ValidationError("cannot format number");
    return std::string(buf, end);
}

Rational exact_decimal(double x) {
    if (!std::isfinite(x)) throw infonomics::ValidationError("non-finite number");
    return infonomics::parse_rational(shortest_text(x));
}

RVec parse_list(const std::string& text) {
    RVec out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(infonomics::parse_rational(item));
    if (out.empty()) throw infonomics::ValidationError("empty list");
    return out;
}

RVec parse_distribution(const std::string& text, const std::string& what, const LoadOptions& opt) {
    auto ctx = std::make_shared<const Context>(Context{"command line", opt});
    Json dummy = Json::array();
    Node where(dummy, "/" + what, ctx);
    RVec v = parse_list(text);
    normalize(v, where, what);
    return v;
}

}  // namespace cli
