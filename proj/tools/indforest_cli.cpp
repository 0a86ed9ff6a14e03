// Command-line front end: bound computation, Table reproduction, kinetic
// traces, forest simulation on concrete graphs, and oracle checks.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "indforest/bounds.hpp"
#include "indforest/forest.hpp"
#include "indforest/oracle.hpp"

using json = nlohmann::ordered_json;
using namespace indforest;

namespace {

int g_precision = 6;

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", g_precision, x);
    return buf;
}

json report_json(const BoundReport& rep) {
    return json{{"r", rep.r},
                {"p0", rep.p0},
                {"xi", rep.xi},
                {"Xi", rep.Xi},
                {"subcritical", rep.subcritical},
                {"terms",
                 {{"root", rep.root_term},
                  {"integral", rep.integral_term},
                  {"white", rep.white_term},
                  {"ratio_limit", rep.ratio_limit}}}};
}

void print_report_text(const BoundReport& rep) {
    std::cout << "r = " << rep.r << "\n"
              << "p0 = " << fmt(rep.p0) << "\n"
              << "xi = " << fmt(rep.xi) << "\n"
              << "Xi = " << fmt(rep.Xi) << "\n"
              << "subcritical = " << (rep.subcritical ? "true" : "false") << "\n"
              << "root_term = " << fmt(rep.root_term) << "\n"
              << "integral_term = " << fmt(rep.integral_term) << "\n"
              << "white_term = " << fmt(rep.white_term) << "\n"
              << "ratio_limit = " << fmt(rep.ratio_limit) << "\n";
}

int cmd_bound(int r, std::optional<double> p0, bool as_json, const OdeOptions& opts) {
    BoundReport rep;
    if (p0) {
        rep = xi_of_p0(r, *p0, opts);
    } else {
        rep = optimize_p0(r, opts).report;
    }
    if (as_json) std::cout << report_json(rep).dump() << "\n";
    else print_report_text(rep);
    return 0;
}

int cmd_table(int r_min, int r_max, bool as_json, const OdeOptions& opts) {
    auto rows = table(r_min, r_max, opts);
    if (as_json) {
        json arr = json::array();
        for (const auto& rep : rows) arr.push_back(report_json(rep));
        std::cout << arr.dump() << "\n";
    } else {
        std::printf("%4s %10s %10s %10s\n", "r", "p0", "xi", "Xi");
        for (const auto& rep : rows)
            std::printf("%4d %10s %10s %10s\n", rep.r, fmt(rep.p0).c_str(),
                        fmt(rep.xi).c_str(), fmt(rep.Xi).c_str());
    }
    return 0;
}

int cmd_trace(const std::string& mode, int r, double p0, double p, int steps,
              const OdeOptions& opts) {
    auto row = [](std::initializer_list<double> xs) {
        bool first = true;
        for (double x : xs) {
            if (!first) std::cout << ',';
            first = false;
            std::cout << fmt(x);
        }
        std::cout << '\n';
    };
    if (mode == "ode") {
        OdeSolution sol = integrate(r, p0, opts);
        std::cout << "x,w,b,q,s,t,b_integral_so_far\n";
        for (std::size_t i = 0; i < sol.grid.size(); ++i) {
            const auto& [x, st] = sol.grid[i];
            row({x, st.w, st.b, st.q, st.s, st.t, sol.b_running[i]});
        }
        return 0;
    }
    TrajectoryMode m = mode == "exact" ? TrajectoryMode::Exact : TrajectoryMode::Linearized;
    Trajectory traj = iterate(r, p0, p, steps, m);
    std::cout << "step,w,b,q,s,t\n";
    for (const auto& [i, st] : traj.points) row({i, st.w, st.b, st.q, st.s, st.t});
    return 0;
}

int cmd_simulate(int r, int n, int steps, double p0, double p, std::uint64_t seed,
                 int runs, const std::string& fixture_name, const std::string& graph_file) {
    Graph g;
    if (!graph_file.empty()) {
        std::ifstream in(graph_file);
        if (!in) throw std::invalid_argument("cannot open graph file " + graph_file);
        g = read_graph(in);
        r = g.degree(0);
    } else if (!fixture_name.empty()) {
        g = fixture(fixture_name);
        r = 3;
    } else {
        g = generate_regular(n, r, seed);
    }

    AlgorithmParams params{steps, p0, p, seed};
    json out;
    out["n"] = g.vertex_count();
    out["r"] = r;
    out["params"] = {{"N", steps}, {"p0", p0}, {"p", p}, {"seed", seed}};
    if (runs <= 1) {
        auto res = run(g, params);
        out["forest_size"] = res.forest_count;
        out["pbar_size"] = res.pruned_count;
        out["wbar_size"] = res.harvested_count;
        out["repairs"] = res.repairs_count;
        out["fraction"] =
            static_cast<double>(res.forest_count) / g.vertex_count();
    } else {
        auto stats = empirical_forest_fraction([&](int) -> const Graph& { return g; },
                                               params, runs);
        out["runs"] = runs;
        out["fraction"] = {{"mean", stats.forest_fraction.mean},
                           {"stddev", stats.forest_fraction.stddev},
                           {"min", stats.forest_fraction.min},
                           {"max", stats.forest_fraction.max}};
        out["repairs_fraction"] = {{"mean", stats.repairs_fraction.mean},
                                   {"stddev", stats.repairs_fraction.stddev},
                                   {"min", stats.repairs_fraction.min},
                                   {"max", stats.repairs_fraction.max}};
        out["pbar_fraction"] = {{"mean", stats.pruned_fraction.mean},
                                {"stddev", stats.pruned_fraction.stddev}};
    }
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_oracle(const std::string& check, int r, int i, double p0, double p,
               long long samples, std::uint64_t seed) {
    json out;
    out["check"] = check;
    out["r"] = r;
    out["i"] = i;
    out["p0"] = p0;
    out["p"] = p;
    bool pass = false;
    const double kExactTol = 1e-12;

    if (check == "initial") {
        EnumerationSpec spec{r, 0, p0, p};
        auto sp = exact_single(spec);
        KineticState st = initial_state(r, p0);
        double err = std::max(std::abs(sp.w - st.w), std::abs(sp.b - st.b));
        pass = err < 1e-15;
        out["max_error"] = err;
        out["measured"] = {{"w", sp.w}, {"b", sp.b}};
        out["expected"] = {{"w", st.w}, {"b", st.b}};
    } else if (check == "step") {
        EnumerationSpec spec{r, i, p0, p};
        auto sp = exact_single(spec);
        KineticState st = initial_state(r, p0);
        for (int k = 0; k < i; ++k) st = step_exact(st, r, p);
        double err = std::max(std::abs(sp.w - st.w), std::abs(sp.b - st.b));
        pass = err < kExactTol;
        out["max_error"] = err;
        out["measured"] = {{"w", sp.w}, {"b", sp.b}};
        out["expected"] = {{"w", st.w}, {"b", st.b}};
    } else if (check == "independence") {
        auto d = independence_check(r, i, p0, p);
        if (!d) {
            out["skipped"] = "zero-probability conditioning event";
            pass = true;
        } else {
            pass = *d < kExactTol;
            out["max_error"] = *d;
        }
    } else if (check == "cor41") {
        double d = factorization_check_cor41(r, i, p0, p);
        pass = d < kExactTol;
        out["max_error"] = d;
    } else if (check == "cor42" || check == "cor43" || check == "cor44") {
        std::vector<TransitionCheck> checks =
            check == "cor42" ? check_cor42(r, p0, p)
          : check == "cor43" ? check_cor43(r, p0, p)
                             : check_cor44(r, p0, p, samples, seed);
        pass = true;
        double worst = 0.0;
        json details = json::array();
        for (const auto& c : checks) {
            double err = std::abs(c.measured - c.expected);
            bool ok = c.stderr_ > 0.0 ? err <= 4.0 * c.stderr_ : err < kExactTol;
            pass = pass && ok;
            worst = std::max(worst, err);
            details.push_back({{"name", c.name},
                               {"measured", c.measured},
                               {"expected", c.expected},
                               {"stderr", c.stderr_},
                               {"pass", ok}});
        }
        out["max_error"] = worst;
        out["details"] = details;
        if (check == "cor44") {
            out["samples"] = samples;
            out["seed"] = seed;
        }
    } else {
        throw std::invalid_argument("unknown oracle check '" + check + "'");
    }
    out["pass"] = pass;
    std::cout << out.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Induced-forest lower bounds for regular graphs with large girth"};
    app.require_subcommand(1);
    app.add_option("--precision", g_precision, "significant digits for numeric output")
        ->capture_default_str();

    OdeOptions opts;
    auto add_tols = [&](CLI::App* sub) {
        sub->add_option("--rel-tol", opts.rel_tol);
        sub->add_option("--abs-tol", opts.abs_tol);
        sub->add_option("--tail-tol", opts.tail_tol);
    };

    // bound
    auto* bound = app.add_subcommand("bound", "lower-bound constant for one r");
    int b_r = 3;
    double b_p0 = -1.0;
    bool b_json = false;
    bound->add_option("--r", b_r, "degree (>= 3)")->required();
    auto* b_p0_opt = bound->add_option("--p0", b_p0, "evaluate at this p0 instead of optimizing");
    bound->add_flag("--json", b_json);
    add_tols(bound);

    // table
    auto* tab = app.add_subcommand("table", "bounds for a range of degrees");
    int t_min = 3, t_max = 10;
    bool t_json = false;
    tab->add_option("--r-min", t_min)->required();
    tab->add_option("--r-max", t_max)->required();
    tab->add_flag("--json", t_json);
    add_tols(tab);

    // trace
    auto* tr = app.add_subcommand("trace", "CSV trajectory of (w,b,q,s,t)");
    std::string tr_mode;
    int tr_r = 3, tr_steps = 100;
    double tr_p0 = 0.1, tr_p = 0.05;
    tr->add_option("--mode", tr_mode)->required()
        ->check(CLI::IsMember({"exact", "linearized", "ode"}));
    tr->add_option("--r", tr_r)->required();
    tr->add_option("--p0", tr_p0)->required();
    tr->add_option("--p", tr_p);
    tr->add_option("--steps", tr_steps);
    add_tols(tr);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run the forest-growing algorithm");
    int s_r = 3, s_n = 1000, s_steps = 10, s_runs = 1;
    double s_p0 = 0.1, s_p = 0.05;
    std::uint64_t s_seed = 1;
    std::string s_fixture, s_graph;
    sim->add_option("--r", s_r);
    sim->add_option("--n", s_n);
    sim->add_option("--steps", s_steps);
    sim->add_option("--p0", s_p0)->required();
    sim->add_option("--p", s_p)->required();
    sim->add_option("--seed", s_seed);
    sim->add_option("--runs", s_runs);
    sim->add_option("--fixture", s_fixture)->check(CLI::IsMember({"petersen", "heawood", "mcgee"}));
    sim->add_option("--graph", s_graph, "graph file in 'n m' / 'u v' text format");

    // oracle
    auto* orc = app.add_subcommand("oracle", "exact / Monte-Carlo verification checks");
    std::string o_check;
    int o_r = 3, o_i = 1;
    double o_p0 = 0.2, o_p = 0.1;
    long long o_samples = 1000000;
    std::uint64_t o_seed = 1;
    orc->add_option("--check", o_check)->required()
        ->check(CLI::IsMember({"initial", "step", "independence", "cor41", "cor42", "cor43", "cor44"}));
    orc->add_option("--r", o_r);
    orc->add_option("--i", o_i);
    orc->add_option("--p0", o_p0);
    orc->add_option("--p", o_p);
    orc->add_option("--samples", o_samples);
    orc->add_option("--seed", o_seed);

    try {
        app.parse(argc, argv);
        if (bound->parsed())
            return cmd_bound(b_r, b_p0_opt->count() ? std::optional<double>(b_p0) : std::nullopt,
                             b_json, opts);
        if (tab->parsed()) return cmd_table(t_min, t_max, t_json, opts);
        if (tr->parsed()) return cmd_trace(tr_mode, tr_r, tr_p0, tr_p, tr_steps, opts);
        if (sim->parsed())
            return cmd_simulate(s_r, s_n, s_steps, s_p0, s_p, s_seed, s_runs, s_fixture, s_graph);
        if (orc->parsed()) return cmd_oracle(o_check, o_r, o_i, o_p0, o_p, o_samples, o_seed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IntegrationFailure& e) {
        std::cerr << "integration failure: " << e.what() << "\n";
        return 3;
    } catch (const HorizonExceeded& e) {
        std::cerr << "horizon exceeded: " << e.what() << "\n";
        return 3;
    } catch (const BudgetExceeded& e) {
        std::cerr << "enumeration budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const OptimizationFailure& e) {
        std::cerr << "optimization failure: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateStateError& e) {
        std::cerr << "degenerate state: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
