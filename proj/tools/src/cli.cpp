#include "greenroute/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "greenroute/compare.hpp"
#include "greenroute/encoding.hpp"
#include "greenroute/exact.hpp"
#include "greenroute/instance_io.hpp"
#include "greenroute/instgen.hpp"
#include "greenroute/sa.hpp"

namespace greenroute::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void print_breakdown(std::ostream& out, const ObjectiveBreakdown& b) {
    out << "objective " << format_double(b.total) << "\n"
        << "  tare_term " << format_double(b.tare_term) << "\n"
        << "  payload_term " << format_double(b.payload_term) << "\n"
        << "  speed_term " << format_double(b.speed_term) << "\n"
        << "  fuel_proxy " << format_double(b.fuel_proxy) << "\n"
        << "  emission " << format_double(b.emission) << "\n";
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot write " + path);
    file << text;
    if (!file) throw std::ios_base::failure("write failed: " + path);
}

struct GenerateArgs {
    GenSpec spec;
    int fleet = 0;
    std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
    GenSpec spec = a.spec;
    if (a.fleet > 0) spec.fleet_size = a.fleet;
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const Instance inst = generate(spec);
    std::ostringstream text;
    write_instance(text, inst);
    write_output(a.out, text.str(), out);
    if (!a.out.empty() && a.out != "-") {
        double demand = 0.0;
        for (NodeId c = 1; c <= inst.customers(); ++c) demand += inst.nodes[static_cast<std::size_t>(c)].demand;
        out << a.out << ": " << inst.customers() << " customers, " << inst.fleet_size << " vehicles, demand "
            << format_double(demand) << ", seed " << spec.seed << "\n";
    }
    return kOk;
}

struct SolveArgs {
    std::string instance;
    std::string method = "sa";
    std::uint64_t seed = 1;
    double max_seconds = 1800.0;
    std::string out;
    std::string trace;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
    const Instance inst = load_instance(a.instance);
    SolutionFile file;
    file.fields["method"] = a.method;
    int code = kOk;

    if (a.method == "sa") {
        SAConfig cfg;
        cfg.seed = a.seed;
        const AnnealResult result = anneal(inst, cfg);
        if (!a.trace.empty()) {
            std::ofstream trace(a.trace);
            if (!trace) throw std::ios_base::failure("cannot write " + a.trace);
            write_trace_csv(trace, result.trace);
        }
        file.fields["seed"] = std::to_string(a.seed);
        if (result.status == AnnealStatus::Solved) {
            file.fields["status"] = "solved";
        } else {
            file.fields["status"] = "unsolved";
            err << "no feasible solution found\n";
            return kInfeasible;
        }
        file.encoded = encode(result.solution, inst);
        file.fields["objective"] = format_double(result.objective.total);
    } else {
        const ExactResult result = solve_exact(inst, a.max_seconds);
        file.fields["status"] = to_string(result.status);
        file.fields["proven"] = result.proven ? "true" : "false";
        if (!result.has_solution()) {
            err << "exact: " << to_string(result.status) << " after " << result.nodes_explored << " nodes\n";
            return kInfeasible;
        }
        file.encoded = encode(result.solution, inst);
        file.fields["objective"] = format_double(result.optimum.total);
    }

    std::ostringstream text;
    write_solution_file(text, file);
    write_output(a.out, text.str(), out);
    if (!a.out.empty() && a.out != "-") {
        out << a.out << ": " << file.fields["status"] << ", objective " << file.fields["objective"] << "\n";
    }
    return code;
}

int cmd_evaluate(const std::string& instance_path, const std::string& solution_path, std::ostream& out) {
    const Instance inst = load_instance(instance_path);
    const SolutionFile file = load_solution_file(solution_path);
    const Solution sol = decode(file.encoded, inst);

    print_breakdown(out, evaluate(inst, sol));
    if (auto it = file.fields.find("objective"); it != file.fields.end()) {
        double reported = 0.0;
        try {
            reported = std::stod(it->second);
        } catch (const std::exception&) {
            throw InputError("solution file: objective is not a number");
        }
        const double total = evaluate(inst, sol).total;
        if (std::abs(total - reported) > 1e-9 * std::max(1.0, std::abs(total))) {
            out << "reported objective " << it->second << " differs from recomputed value\n";
        }
    }

    const ViolationReport report = check_feasibility(inst, sol);
    for (const auto& note : report.diagnostics) out << "note: " << note << "\n";
    if (report.feasible()) {
        out << "feasible\n";
        return kOk;
    }
    out << "infeasible: " << report.violations.size() << " violation(s)\n";
    for (const auto& v : report.violations) {
        out << "  " << to_string(v.kind);
        if (v.route >= 0) out << " route " << v.route;
        if (v.node >= 0) out << " node " << v.node;
        if (v.excess != 0.0) out << " excess " << format_double(v.excess);
        if (!v.detail.empty()) out << ": " << v.detail;
        out << "\n";
    }
    return kInfeasible;
}

int cmd_export(const std::string& instance_path, const std::string& out_path, std::ostream& out) {
    const Instance inst = load_instance(instance_path);
    write_output(out_path, export_milp(inst), out);
    return kOk;
}

struct CompareArgs {
    std::vector<int> sizes{5, 6, 7, 8, 9};
    int trials = 4;
    std::uint64_t seed = 1;
    double budget = 1800.0;
    std::string out_dir = "compare";
    int jobs = 1;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
    CompareOptions opts;
    opts.sizes = a.sizes;
    opts.trials = a.trials;
    opts.seed = a.seed;
    opts.exact_budget_s = a.budget;
    opts.jobs = a.jobs;
    const std::filesystem::path dir(a.out_dir);
    opts.plot_dir = dir / "plots";
    std::filesystem::create_directories(dir);

    const auto rows = run_compare(opts);
    const auto csv_path = dir / "compare.csv";
    std::ofstream csv(csv_path);
    if (!csv) throw std::ios_base::failure("cannot write " + csv_path.string());
    write_compare_csv(csv, rows);

    double gap_sum = 0.0, gap_max = 0.0;
    int gaps = 0, failures = 0;
    for (const auto& r : rows) {
        if (!r.note.empty()) ++failures;
        if (r.gap_pct && r.exact_proven) {
            gap_sum += *r.gap_pct;
            gap_max = std::max(gap_max, *r.gap_pct);
            ++gaps;
        }
    }
    out << csv_path.string() << ": " << rows.size() << " rows";
    if (gaps > 0) out << ", mean gap " << format_double(gap_sum / gaps) << "%, max gap " << format_double(gap_max) << "%";
    if (failures > 0) out << ", " << failures << " with notes";
    out << "\n";
    return failures == 0 ? kOk : kInfeasible;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fuel-aware vehicle routing with time windows and speed brackets", "greenroute"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");

    GenerateArgs gen;
    auto* generate_cmd = app.add_subcommand("generate", "Write a random instance");
    generate_cmd->add_option("--customers,-n", gen.spec.customers, "Number of customers")->required();
    generate_cmd->add_option("--seed", gen.spec.seed, "Random seed")->envname("GREENROUTE_SEED");
    generate_cmd->add_option("--out,-o", gen.out, "Instance file (stdout if omitted)");
    generate_cmd->add_option("--fleet", gen.fleet, "Number of vehicles");
    generate_cmd->add_option("--area", gen.spec.area, "Side of the square service area (km)");
    generate_cmd->add_option("--horizon", gen.spec.horizon, "End of the planning day (h)");
    generate_cmd->add_option("--demand-min", gen.spec.demand_min);
    generate_cmd->add_option("--demand-max", gen.spec.demand_max);
    generate_cmd->add_option("--window-min", gen.spec.window_min, "Shortest time window (h)");
    generate_cmd->add_option("--window-max", gen.spec.window_max, "Longest time window (h)");
    generate_cmd->add_option("--service-min", gen.spec.service_min, "Shortest service time (h)");
    generate_cmd->add_option("--service-max", gen.spec.service_max, "Longest service time (h)");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
    solve_cmd->add_option("--instance,-i", solve.instance, "Instance file")->required();
    solve_cmd->add_option("--method,-m", solve.method)->check(CLI::IsMember({"sa", "exact"}));
    solve_cmd->add_option("--seed", solve.seed, "Annealing seed")->envname("GREENROUTE_SEED");
    solve_cmd->add_option("--max-seconds", solve.max_seconds, "Time budget of the exact solver")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--out,-o", solve.out, "Solution file (stdout if omitted)");
    solve_cmd->add_option("--trace", solve.trace, "Annealing trace CSV");

    std::string eval_instance, eval_solution;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score and check a solution");
    evaluate_cmd->add_option("--instance,-i", eval_instance)->required();
    evaluate_cmd->add_option("--solution,-s", eval_solution)->required();

    std::string export_instance, export_out;
    auto* export_cmd = app.add_subcommand("export", "Write the MILP in LP format");
    export_cmd->add_option("--instance,-i", export_instance)->required();
    export_cmd->add_option("--out,-o", export_out, "LP file (stdout if omitted)");

    CompareArgs cmp;
    auto* compare_cmd = app.add_subcommand("compare", "Exact solver against annealing on random instances");
    compare_cmd->add_option("--sizes", cmp.sizes, "Customer counts")->delimiter(',')->check(CLI::PositiveNumber);
    compare_cmd->add_option("--trials", cmp.trials, "Instances per size")->check(CLI::PositiveNumber);
    compare_cmd->add_option("--seed", cmp.seed)->envname("GREENROUTE_SEED");
    compare_cmd->add_option("--budget-exact", cmp.budget, "Exact time budget per instance (s)")
        ->check(CLI::PositiveNumber);
    compare_cmd->add_option("--out-dir", cmp.out_dir, "Directory for compare.csv and plots/");
    compare_cmd->add_option("--jobs,-j", cmp.jobs, "Instances solved concurrently")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (*generate_cmd) return cmd_generate(gen, out);
        if (*solve_cmd) return cmd_solve(solve, out, err);
        if (*evaluate_cmd) return cmd_evaluate(eval_instance, eval_solution, out);
        if (*export_cmd) return cmd_export(export_instance, export_out, out);
        if (*compare_cmd) return cmd_compare(cmp, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const GenerationError& e) {
        err << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    }
    return kUsage;
}

}  // namespace greenroute::cli
