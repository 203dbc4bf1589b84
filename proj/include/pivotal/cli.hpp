#pragma once

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "instances.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "solver.hpp"

namespace pivotal {

namespace cli_detail {

struct config {
    std::string input = "-";
    std::string rule = "value";
    std::string scalar = "f64";
    double tol = 1e-9;
    bool tol_given = false;
    double factor = 2.0;
    std::string format = "text";
    bool with_trace = false;
    std::string x_text;
    std::string y_text;
    long long gen_k = 0;
    long long gen_n = 0;
    unsigned long long gen_seed = 0;
    long long gen_lo = -9;
    long long gen_hi = 9;
    int gen_id = 0;
    int bench_count = 25;
    unsigned long long seed_base = 1;
};

inline std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open '" + path + "'");
        ss << in.rdbuf();
    }
    return ss.str();
}

// --tol wins; otherwise PIVOTAL_LP_TOL overrides the built-in default.
inline bool resolve_tol(config& cfg, std::ostream& err) {
    if (cfg.tol_given) return true;
    const char* env = std::getenv("PIVOTAL_LP_TOL");
    if (!env) return true;
    const std::string text(env);
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size() || !(v >= 0) || !std::isfinite(v)) throw std::invalid_argument(text);
        cfg.tol = v;
        return true;
    } catch (const std::exception&) {
        err << "invalid PIVOTAL_LP_TOL value '" << text << "'\n";
        return false;
    }
}

// The rational scalar always runs exact; tol applies to f64 only.
template <class T>
solve_options<T> make_options(const config& cfg) {
    solve_options<T> opts;
    if (cfg.rule == "index") opts.rule.order = minor_order::ascending_index;
    opts.iteration_cap_factor = cfg.factor;
    opts.trace_enabled = cfg.with_trace;
    if constexpr (std::is_same_v<T, double>) opts.tol = tolerance<double>{cfg.tol};
    return opts;
}

template <class T>
std::vector<T> parse_vector(const std::string& text) {
    std::vector<T> vals;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty component in '" + text + "'");
        vals.push_back(parse_scalar<T>(item));
    }
    return vals;
}

inline int solve_exit_code(solve_status s) {
    switch (s) {
        case solve_status::trivial_optimum:
        case solve_status::optimum: return 0;
        case solve_status::no_solution: return 1;
        default: return 3;
    }
}

template <class T>
int cmd_solve(const config& cfg, std::ostream& out, std::ostream& err) {
    lp_instance<T> inst;
    try {
        inst = parse_instance<T>(read_input(cfg.input));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    auto rep = solve(inst, make_options<T>(cfg));
    if (cfg.format == "json") {
        out << serialize_report(rep, report_format::json) << '\n';
    } else {
        if (cfg.with_trace && !rep.trace.empty()) out << serialize_trace(rep.trace);
        out << serialize_report(rep, report_format::text);
    }
    return solve_exit_code(rep.status);
}

template <class T>
int cmd_verify(const config& cfg, std::ostream& out, std::ostream& err) {
    try {
        auto inst = parse_instance<T>(read_input(cfg.input));
        auto x = parse_vector<T>(cfg.x_text);
        auto y = parse_vector<T>(cfg.y_text);
        if (x.size() != inst.n || y.size() != inst.k) {
            err << "error: expected " << inst.n << " components in x and " << inst.k << " in y\n";
            return 2;
        }
        T tol(0);
        if constexpr (std::is_same_v<T, double>) tol = cfg.tol;
        else tol = rational_from_token(scalar_traits<double>::str(cfg.tol));
        auto rep = verify_certificate(inst, x, y, tol);
        if (cfg.format == "json") {
            out << "{\"primal_feasibility\":" << scalar_traits<T>::json(rep.primal_feasibility)
                << ",\"dual_feasibility\":" << scalar_traits<T>::json(rep.dual_feasibility)
                << ",\"duality_gap\":" << scalar_traits<T>::json(rep.duality_gap)
                << ",\"complementarity\":" << scalar_traits<T>::json(rep.complementarity)
                << ",\"pass\":" << (rep.pass ? "true" : "false") << "}\n";
        } else {
            out << serialize_certificate(rep);
        }
        return rep.pass ? 0 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

template <class T>
int cmd_oracle(const config& cfg, std::ostream& out, std::ostream& err) {
    try {
        auto inst = parse_instance<T>(read_input(cfg.input));
        auto oc = brute_force_solve(inst);
        const bool opt = oc.status == oracle_status::optimal;
        if (cfg.format == "json") {
            out << "{\"status\":\"" << oracle_status_name(oc.status) << "\"";
            out << ",\"objective\":";
            if (opt) out << scalar_traits<T>::json(oc.objective);
            else out << "null";
            out << ",\"x\":";
            if (opt) {
                out << '[';
                for (std::size_t j = 0; j < oc.x.size(); ++j)
                    out << (j ? "," : "") << scalar_traits<T>::json(oc.x[j]);
                out << ']';
            } else {
                out << "null";
            }
            out << ",\"vertices_examined\":" << oc.vertices_examined << "}\n";
        } else {
            out << "status: " << oracle_status_name(oc.status) << '\n';
            if (opt) {
                out << "objective: " << scalar_traits<T>::str(oc.objective) << '\n';
                out << "x:";
                for (const auto& v : oc.x) out << ' ' << scalar_traits<T>::str(v);
                out << '\n';
            }
            out << "vertices examined: " << oc.vertices_examined << '\n';
        }
        return opt ? 0 : 1;
    } catch (const combinatorial_limit& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

// Generation always uses the rational scalar so emitted text is exact.
inline int cmd_gen(const config& cfg, const std::string& kind, std::ostream& out, std::ostream& err) {
    try {
        lp_instance<rational> inst;
        if (kind == "klee-minty") {
            if (cfg.gen_n < 1) throw std::invalid_argument("--n must be at least 1");
            inst = klee_minty<rational>(static_cast<std::size_t>(cfg.gen_n));
        } else if (kind == "random") {
            if (cfg.gen_k < 1 || cfg.gen_n < 1) throw std::invalid_argument("--k and --n must be at least 1");
            inst = random_instance<rational>(static_cast<std::size_t>(cfg.gen_k),
                                             static_cast<std::size_t>(cfg.gen_n), cfg.gen_seed,
                                             cfg.gen_lo, cfg.gen_hi);
        } else {
            inst = canned_example<rational>(cfg.gen_id).instance;
        }
        out << serialize_instance(inst);
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

inline std::string iteration_token(const solve_report<double>& rep) {
    if (rep.status == solve_status::iteration_limit_exceeded) return "cap";
    if (rep.status == solve_status::numerical_breakdown) return "breakdown";
    return std::to_string(rep.iterations);
}

// The f64 oracle's absolute tolerances are calibrated for small-magnitude
// data; rows whose entries exceed this bound skip the agreement check.
inline bool oracle_scale_ok(const lp_instance<double>& inst) {
    double mx = 0;
    for (std::size_t i = 0; i < inst.k; ++i)
        for (std::size_t j = 0; j < inst.n; ++j) mx = std::max(mx, std::fabs(inst.A(i, j)));
    for (const auto& v : inst.b) mx = std::max(mx, std::fabs(v));
    for (const auto& v : inst.f) mx = std::max(mx, std::fabs(v));
    return mx <= 1e4 && inst.k + inst.n <= 24;
}

inline std::string agreement_verdict(const lp_instance<double>& inst,
                                     const std::vector<const solve_report<double>*>& reports) {
    if (!oracle_scale_ok(inst)) return "n/a(scale)";
    auto oc = brute_force_solve(inst);
    bool any_terminated = false;
    for (const auto* rep : reports) {
        if (rep->status == solve_status::optimum || rep->status == solve_status::trivial_optimum) {
            any_terminated = true;
            auto cert = verify_certificate(inst, rep->x, rep->y, 1e-6);
            if (!cert.pass) return "finding(certificate)";
            if (oc.status != oracle_status::optimal) return "finding(status)";
            if (std::fabs(*rep->primal_objective - oc.objective) > 1e-6) return "finding(objective)";
        } else if (rep->status == solve_status::no_solution) {
            any_terminated = true;
            if (oc.status == oracle_status::optimal) return "finding(status)";
        }
    }
    return any_terminated ? "ok" : "-";
}

inline int cmd_bench(const config& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.bench_count < 0) {
        err << "error: --count must be nonnegative\n";
        return 2;
    }
    struct row_item {
        std::string name;
        lp_instance<double> inst;
    };
    std::vector<row_item> items;
    for (int id = 1; id <= 5; ++id)
        items.push_back({"example" + std::to_string(id), canned_example<double>(id).instance});
    for (std::size_t n = 1; n <= 8; ++n)
        items.push_back({"klee-minty n=" + std::to_string(n), klee_minty<double>(n)});
    for (int i = 0; i < cfg.bench_count; ++i) {
        const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(i);
        auto [k, n] = random_dims(seed);
        items.push_back({"random seed=" + std::to_string(seed) + " k=" + std::to_string(k) +
                             " n=" + std::to_string(n),
                         random_instance<double>(k, n, seed)});
    }

    config value_cfg = cfg;
    value_cfg.rule = "value";
    config index_cfg = cfg;
    index_cfg.rule = "index";
    const auto value_opts = make_options<double>(value_cfg);
    const auto index_opts = make_options<double>(index_cfg);

    double sum_value = 0, sum_index = 0;
    int solved_value = 0, solved_index = 0, findings = 0;
    for (const auto& item : items) {
        auto value_rep = solve(item.inst, value_opts);
        auto index_rep = solve(item.inst, index_opts);
        auto verdict = agreement_verdict(item.inst, {&value_rep, &index_rep});
        if (verdict.rfind("finding", 0) == 0) ++findings;
        const char* status = status_name(value_rep.status);
        std::string status_text = value_rep.status == index_rep.status
                                      ? std::string(status)
                                      : std::string(status) + "/" + status_name(index_rep.status);
        out << item.name << ": value=" << iteration_token(value_rep)
            << " index=" << iteration_token(index_rep) << " status=" << status_text
            << " oracle=" << verdict << '\n';
        if (value_rep.status == solve_status::optimum || value_rep.status == solve_status::trivial_optimum) {
            sum_value += value_rep.iterations;
            ++solved_value;
        }
        if (index_rep.status == solve_status::optimum || index_rep.status == solve_status::trivial_optimum) {
            sum_index += index_rep.iterations;
            ++solved_index;
        }
    }
    char line[160];
    std::snprintf(line, sizeof line, "means over solved rows: value=%.2f (%d rows) index=%.2f (%d rows)",
                  solved_value ? sum_value / solved_value : 0.0, solved_value,
                  solved_index ? sum_index / solved_index : 0.0, solved_index);
    out << line << '\n';
    out << "findings: " << findings << '\n';
    return 0;
}

inline CLI::App* deepest_parsed(CLI::App* app) {
    while (!app->get_subcommands().empty()) app = app->get_subcommands().back();
    return app;
}

}  // namespace cli_detail

// In-process entry point; args exclude the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using cli_detail::config;
    CLI::App app{"Linear program solver built on compact complementary GJ+ pivoting", "pivotal-lp"};
    app.require_subcommand(1);
    config cfg;
    std::vector<CLI::Option*> tol_opts;

    auto add_common = [&](CLI::App* c, bool with_rule) {
        c->add_option("input", cfg.input, "instance file, or - for standard input");
        if (with_rule)
            c->add_option("--rule", cfg.rule, "minor column ordering")
                ->check(CLI::IsMember({"value", "index"}))
                ->capture_default_str();
        c->add_option("--scalar", cfg.scalar, "arithmetic kind")
            ->check(CLI::IsMember({"f64", "rational"}))
            ->capture_default_str();
        tol_opts.push_back(c->add_option("--tol", cfg.tol, "sign tolerance for the f64 scalar; the rational scalar is always exact")
                               ->capture_default_str());
        c->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
    };

    auto* solve_cmd = app.add_subcommand("solve", "solve an instance and print the report");
    add_common(solve_cmd, true);
    solve_cmd->add_option("--max-iter-factor", cfg.factor, "iteration cap as a multiple of k+n")
        ->capture_default_str();
    solve_cmd->add_flag("--trace", cfg.with_trace, "include the per-step trace");

    auto* trace_cmd = app.add_subcommand("trace", "solve and print every intermediate table");
    add_common(trace_cmd, true);
    trace_cmd->add_option("--max-iter-factor", cfg.factor, "iteration cap as a multiple of k+n")
        ->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "check a primal/dual certificate against an instance");
    add_common(verify_cmd, false);
    verify_cmd->add_option("--x", cfg.x_text, "comma-separated primal vector")->required();
    verify_cmd->add_option("--y", cfg.y_text, "comma-separated dual vector")->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "solve by exhaustive vertex enumeration");
    add_common(oracle_cmd, false);

    auto* gen_cmd = app.add_subcommand("gen", "emit an instance in the text format");
    gen_cmd->require_subcommand(1);
    auto* gen_km = gen_cmd->add_subcommand("klee-minty", "worst-case cube family");
    gen_km->add_option("--n", cfg.gen_n, "dimension")->required();
    auto* gen_random = gen_cmd->add_subcommand("random", "seeded integer instance");
    gen_random->add_option("--k", cfg.gen_k, "constraint count")->required();
    gen_random->add_option("--n", cfg.gen_n, "variable count")->required();
    gen_random->add_option("--seed", cfg.gen_seed, "seed")->required();
    gen_random->add_option("--lo", cfg.gen_lo, "smallest entry")->capture_default_str();
    gen_random->add_option("--hi", cfg.gen_hi, "largest entry")->capture_default_str();
    auto* gen_example = gen_cmd->add_subcommand("example", "canned example");
    gen_example->add_option("--id", cfg.gen_id, "example id (1..5)")->required();

    auto* bench_cmd = app.add_subcommand("bench", "compare ordering rules across instance families");
    bench_cmd->add_option("--count", cfg.bench_count, "random instances in the batch")->capture_default_str();
    bench_cmd->add_option("--seed-base", cfg.seed_base, "first random seed")->capture_default_str();
    bench_cmd->add_option("--max-iter-factor", cfg.factor, "iteration cap as a multiple of k+n")
        ->capture_default_str();
    tol_opts.push_back(bench_cmd->add_option("--tol", cfg.tol, "sign tolerance")->capture_default_str());

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << cli_detail::deepest_parsed(&app)->help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << cli_detail::deepest_parsed(&app)->help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    for (const auto* opt : tol_opts) cfg.tol_given = cfg.tol_given || opt->count() > 0;
    if (!cli_detail::resolve_tol(cfg, err)) return 2;
    const bool exact = cfg.scalar == "rational";

    if (app.got_subcommand(solve_cmd) || app.got_subcommand(trace_cmd)) {
        if (app.got_subcommand(trace_cmd)) cfg.with_trace = true;
        return exact ? cli_detail::cmd_solve<rational>(cfg, out, err)
                     : cli_detail::cmd_solve<double>(cfg, out, err);
    }
    if (app.got_subcommand(verify_cmd))
        return exact ? cli_detail::cmd_verify<rational>(cfg, out, err)
                     : cli_detail::cmd_verify<double>(cfg, out, err);
    if (app.got_subcommand(oracle_cmd))
        return exact ? cli_detail::cmd_oracle<rational>(cfg, out, err)
                     : cli_detail::cmd_oracle<double>(cfg, out, err);
    if (app.got_subcommand(gen_cmd)) {
        std::string kind = gen_cmd->get_subcommands().front()->get_name();
        return cli_detail::cmd_gen(cfg, kind, out, err);
    }
    return cli_detail::cmd_bench(cfg, out, err);
}

}  // namespace pivotal
