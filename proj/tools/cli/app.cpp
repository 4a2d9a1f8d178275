#include "commands.hpp"

#include "infonomics/error.hpp"

#include <exception>

namespace cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Globals g;
    g.out = &out;
    g.err = &err;

    CLI::App app{"Computations for information economics: knowledge, signals, orders, Blackwell comparisons,\n"
                 "Gaussian updating, information costs, learning, misspecification and persuasion.",
                 "infonomics"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--seed", g.seed, "Master seed for simulation commands")->capture_default_str();
    app.add_flag("--json", g.json, "Emit one machine-readable JSON record");
    app.add_flag("--exact", g.exact, "Exact rational arithmetic where supported");
    app.add_option("--tol", g.tol, "Largest probability-sum deviation repaired by renormalizing")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    add_knowledge(app, g);
    add_signals(app, g);
    add_orders(app, g);
    add_blackwell(app, g);
    add_gaussian(app, g);
    add_cost(app, g);
    add_learn(app, g);
    add_misspec(app, g);
    add_persuade(app, g);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (g.action) g.action();
        return 0;
    } catch (const infonomics::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const infonomics::NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 4;
    }
}

}  // namespace cli
