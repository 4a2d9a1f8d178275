#pragma once

#include "model_file.hpp"
#include "output.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <string>

namespace cli {

struct Globals {
    std::uint64_t seed = 0;
    bool json = false;
    bool exact = false;
    double tol = 1e-6;
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;
    std::function<void()> action;

    LoadOptions load() const { return {tol, err}; }
    Model model(const std::string& path) const { return parse_model(path, load()); }
    void warn(const std::string& msg) const { *err << "warning: " << msg << '\n'; }
    void exact_unsupported(const std::string& cmd) const {
        if (exact) warn("--exact has no effect on '" + cmd + "'; running in floating point");
    }
};

// Registers a leaf subcommand whose body runs after parsing succeeds. `Opts`
// holds the option storage and lives as long as the app.
template <class Opts, class Setup, class Body>
CLI::App* leaf(CLI::App& parent, const std::string& name, const std::string& about, Globals& g, Setup setup,
               Body body) {
    auto opts = std::make_shared<Opts>();
    auto* sub = parent.add_subcommand(name, about);
    setup(*sub, *opts);
    const std::string label = parent.get_parent() ? parent.get_name() + " " + name : name;
    sub->callback([&g, opts, body, label] { g.action = [&g, opts, body, label] { body(g, *opts, label); }; });
    return sub;
}

void add_knowledge(CLI::App& app, Globals& g);
void add_signals(CLI::App& app, Globals& g);
void add_orders(CLI::App& app, Globals& g);
void add_blackwell(CLI::App& app, Globals& g);
void add_gaussian(CLI::App& app, Globals& g);
void add_cost(CLI::App& app, Globals& g);
void add_learn(CLI::App& app, Globals& g);
void add_misspec(CLI::App& app, Globals& g);
void add_persuade(CLI::App& app, Globals& g);

// Parses argv, dispatches, and maps failures to exit codes:
// 2 usage, 3 validation, 4 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cli
