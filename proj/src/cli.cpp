#include "ysys/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "ysys/contfrac.hpp"
#include "ysys/dilog.hpp"
#include "ysys/errors.hpp"
#include "ysys/geometry.hpp"
#include "ysys/json_io.hpp"
#include "ysys/schedule.hpp"
#include "ysys/seeds.hpp"
#include "ysys/solutions.hpp"
#include "ysys/svg_render.hpp"
#include "ysys/tsystems.hpp"
#include "ysys/ysystems.hpp"

namespace ysys {

namespace {

int log_level() {
    const char* e = std::getenv("YSYS_LOG");
    if (e == nullptr) return 0;
    const std::string s(e);
    if (s == "debug") return 2;
    if (s == "info") return 1;
    return 0;
}

void say(int lvl, const std::string& msg) {
    if (log_level() >= lvl) std::cerr << "[ysys] " << msg << "\n";
}

struct Options {
    std::string system = "rsg";
    std::vector<int> n;
    std::string mode = "exact";
    unsigned seed = 1;
    int seeds = 1;
    std::string window;
    std::string json_path;
    std::string svg_path;
};

void add_n(CLI::App* cmd, Options& o) {
    cmd->add_option("--n", o.n, "input sequence n_1,n_2,...")
        ->delimiter(',')
        ->required();
}
void add_system(CLI::App* cmd, Options& o) {
    cmd->add_option("--system", o.system,
                    "family kind: rsg (plain polygon) or sg (punctured)")
        ->check(CLI::IsMember({"rsg", "sg"}));
}
void add_mode(CLI::App* cmd, Options& o) {
    cmd->add_option("--mode", o.mode, "value arithmetic")
        ->check(CLI::IsMember({"exact", "float"}));
}
void add_seed(CLI::App* cmd, Options& o) {
    cmd->add_option("--seed", o.seed, "RNG seed for coefficient draws");
}
void add_seeds(CLI::App* cmd, Options& o) {
    cmd->add_option("--seeds", o.seeds,
                    "number of consecutive seeds to verify")
        ->check(CLI::PositiveNumber);
}
void add_window(CLI::App* cmd, Options& o) {
    cmd->add_option("--window", o.window,
                    "time window LO..HI (default sized to the family)");
}
void add_json(CLI::App* cmd, Options& o) {
    cmd->add_option("--json", o.json_path,
                    "write the JSON report here instead of stdout");
}
void add_svg(CLI::App* cmd, Options& o, bool required) {
    CLI::Option* opt =
        cmd->add_option("--svg", o.svg_path, "write an SVG picture here");
    if (required) opt->required();
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw RejectedInput("cannot open output file " + path);
    f << content;
}

bool is_sg(const Options& o) { return o.system == "sg"; }

ContinuedFractionTable make_table(const Options& o) {
    return build_table(InputSequence{o.n});
}

std::pair<long, long> parse_window(const std::string& s) {
    const size_t pos = s.find("..");
    if (pos == std::string::npos)
        throw RejectedInput("--window expects LO..HI");
    try {
        return {std::stol(s.substr(0, pos)), std::stol(s.substr(pos + 2))};
    } catch (const std::exception&) {
        throw RejectedInput("--window expects integer bounds LO..HI");
    }
}

/** User window if given, else [-2 max p, max(4r, min_hi) + 2 max p]. */
std::pair<long, long> window_for(const Options& o,
                                 const ContinuedFractionTable& t,
                                 long min_hi = 0) {
    if (!o.window.empty()) return parse_window(o.window);
    const long pad = 2 * t.max_p();
    return {-pad, std::max(4 * t.r_l(1), min_hi) + pad};
}

long claimed_period(const ContinuedFractionTable& t, bool punctured) {
    const long r = t.r_l(1);
    if (punctured) return (r % 2 == 0) ? 2 * r : 4 * r;
    return (t.F() == 1 && t.n(1) == 3) ? r : 2 * r;
}

std::vector<ExactPositiveRational> exact_seed_values(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<ExactPositiveRational> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        out.emplace_back(random_positive_rational(rng));
    return out;
}

std::vector<Float64Positive> float_seed_values(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<Float64Positive> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        out.emplace_back(random_positive_rational(rng).get_d());
    return out;
}

// ---------------------------------------------------------------- commands

void cmd_cf(const Options& o) {
    write_out(o.json_path, dump_stable(table_json(make_table(o))));
}

LabeledTriangulation initial_triangulation(const ContinuedFractionTable& t,
                                           bool sg) {
    return sg ? LabeledTriangulation::build_sg(t)
              : LabeledTriangulation::build_rsg(t);
}

void cmd_triangulate(const Options& o) {
    const ContinuedFractionTable t = make_table(o);
    const LabeledTriangulation g = initial_triangulation(t, is_sg(o));
    g.validate();
    say(1, "triangulation of the " + std::to_string(g.r()) + "-gon built");
    if (!o.svg_path.empty()) write_out(o.svg_path, render_svg(g, t));
    if (o.svg_path.empty() || !o.json_path.empty())
        write_out(o.json_path, dump_stable(triangulation_json(g)));
}

void cmd_render(const Options& o) {
    const ContinuedFractionTable t = make_table(o);
    const LabeledTriangulation g = initial_triangulation(t, is_sg(o));
    g.validate();
    write_out(o.svg_path, render_svg(g, t));
}

void cmd_run(const Options& o) {
    const ContinuedFractionTable t = make_table(o);
    const bool sg = is_sg(o);
    const LabeledTriangulation g0 = initial_triangulation(t, sg);
    const MutationSchedule sched = derive_schedule(g0, t, sg);
    const auto [lo, hi] = window_for(o, t);
    say(1, "running over [" + std::to_string(lo) + ", " + std::to_string(hi) +
               "]");
    if (o.mode == "float") {
        const auto tr =
            run(g0, sched, float_seed_values(g0.size(), o.seed), lo, hi);
        write_out(o.json_path, dump_stable(trajectory_json(tr)));
    } else {
        const auto tr =
            run(g0, sched, exact_seed_values(g0.size(), o.seed), lo, hi);
        write_out(o.json_path, dump_stable(trajectory_json(tr)));
    }
}

nlohmann::json run_verify(const std::string& sub, const Options& o) {
    const ContinuedFractionTable t = make_table(o);
    const bool sg = is_sg(o);
    const LabeledTriangulation g0 = initial_triangulation(t, sg);
    const MutationSchedule sched = derive_schedule(g0, t, sg);
    const bool all = (sub == "all");
    const long per2 = 2 * claimed_period(t, sg);

    nlohmann::json out;
    out["system"] = o.system;
    out["n"] = o.n;
    out["mode"] = o.mode;
    out["seed"] = o.seed;

    const auto coefficient_run = [&](long lo, long hi, auto&& use) {
        if (o.mode == "float")
            use(run(g0, sched, float_seed_values(g0.size(), o.seed), lo, hi));
        else
            use(run(g0, sched, exact_seed_values(g0.size(), o.seed), lo, hi));
    };

    if (all || sub == "ysystem") {
        say(1, "verifying the multiplicative relations");
        const RelationSet rs = generate_relations(t, sg);
        const auto [lo, hi] = window_for(o, t);
        coefficient_run(lo, hi, [&](const auto& tr) {
            out["ysystem"] = relation_report_json(verify_relations(tr, rs));
        });
    }
    if (all || sub == "periodicity") {
        say(1, "verifying periodicity and minimality");
        const auto [lo, hi] = window_for(o, t, per2);
        coefficient_run(lo, hi, [&](const auto& tr) {
            out["periodicity"] = period_report_json(verify_periodicity(tr));
        });
    }
    if (all || sub == "tsystem") {
        say(1, "verifying the additive relations");
        const TRelationSet rs = generate_t_relations(t, sg);
        const auto [lo, hi] = window_for(o, t, per2);
        if (o.mode == "float") {
            const auto xtr = run_x(
                g0, sched, float_seed_values(g0.size(), o.seed), lo, hi);
            out["tsystem"] = t_relation_report_json(verify_t(xtr, rs));
            out["tsystem_periodicity"] =
                period_report_json(verify_t_periodicity(xtr));
        } else {
            const auto xtr = run_x(
                g0, sched, exact_seed_values(g0.size(), o.seed), lo, hi);
            out["tsystem"] = t_relation_report_json(verify_t(xtr, rs));
            out["tsystem_periodicity"] =
                period_report_json(verify_t_periodicity(xtr));
        }
    }
    if (all || sub == "dilog") {
        say(1, "verifying the dilogarithm identities");
        out["dilog"] = nlohmann::json::array();
        for (int i = 0; i < o.seeds; ++i) {
            const unsigned s = o.seed + static_cast<unsigned>(i);
            nlohmann::json entry = dilog_report_json(dilog_identity_check(t, sg, s));
            entry["seed"] = s;
            out["dilog"].push_back(std::move(entry));
        }
    }
    if (all || sub == "crossratio") {
        if (sg) {
            if (!all)
                throw RejectedInput(
                    "the cross-ratio solution exists for the plain family"
                    " only (--system rsg)");
            out["crossratio"] = "skipped: plain families only";
        } else {
            say(1, "verifying the cross-ratio solution");
            out["crossratio"] = nlohmann::json::array();
            for (int i = 0; i < o.seeds; ++i) {
                const unsigned s = o.seed + static_cast<unsigned>(i);
                nlohmann::json entry =
                    cross_ratio_report_json(cross_ratio_check(t, s));
                entry["seed"] = s;
                out["crossratio"].push_back(std::move(entry));
            }
        }
    }
    return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{
        "construct, run, and verify polygon realizations of sine-Gordon"
        " Y-systems"};
    app.require_subcommand(1);
    Options o;

    CLI::App* cf = app.add_subcommand(
        "cf", "continued-fraction data of an input sequence");
    add_n(cf, o);
    add_json(cf, o);
    cf->callback([&o] { cmd_cf(o); });

    CLI::App* tri = app.add_subcommand(
        "triangulate", "build and audit the time-zero triangulation");
    add_n(tri, o);
    add_system(tri, o);
    add_json(tri, o);
    add_svg(tri, o, false);
    tri->callback([&o] { cmd_triangulate(o); });

    CLI::App* rn = app.add_subcommand(
        "run", "evolve a coefficient trajectory over a time window");
    add_n(rn, o);
    add_system(rn, o);
    add_mode(rn, o);
    add_seed(rn, o);
    add_window(rn, o);
    add_json(rn, o);
    rn->callback([&o] { cmd_run(o); });

    CLI::App* verify =
        app.add_subcommand("verify", "machine-check the identity families");
    verify->require_subcommand(1);
    const std::vector<std::pair<std::string, std::string>> subs = {
        {"ysystem", "multiplicative relations on coefficients"},
        {"tsystem", "additive relations on cluster variables"},
        {"periodicity", "full-period return with minimality"},
        {"dilog", "dilogarithm sum and sign-census identities"},
        {"crossratio", "closed-form cross-ratio solution (plain only)"},
        {"all", "every check that applies to the family"},
    };
    for (const auto& [name, desc] : subs) {
        CLI::App* s = verify->add_subcommand(name, desc);
        add_n(s, o);
        add_system(s, o);
        add_mode(s, o);
        add_seed(s, o);
        add_seeds(s, o);
        add_window(s, o);
        add_json(s, o);
        const std::string sub = name;
        s->callback(
            [&o, sub] { write_out(o.json_path, dump_stable(run_verify(sub, o))); });
    }

    CLI::App* render = app.add_subcommand(
        "render", "SVG picture of the time-zero triangulation");
    add_n(render, o);
    add_system(render, o);
    add_svg(render, o, true);
    render->callback([&o] { cmd_render(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const RejectedInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace ysys
