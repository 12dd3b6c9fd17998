#include <doctest.h>

#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "../support/fixtures.hpp"
#include "greenroute/cli.hpp"
#include "greenroute/compare.hpp"
#include "greenroute/encoding.hpp"
#include "greenroute/instance_io.hpp"

using namespace greenroute;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "greenroute");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("greenroute_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("generate writes a reloadable, deterministic file") {
    TempDir dir;
    const Run a = run_cli({"generate", "--customers", "5", "--seed", "7", "--out", dir / "a.txt"});
    CHECK(a.code == 0);
    CHECK(a.out.find("a.txt") != std::string::npos);
    const Run b = run_cli({"generate", "--customers", "5", "--seed", "7", "--out", dir / "b.txt"});
    CHECK(b.code == 0);
    CHECK(slurp(dir / "a.txt") == slurp(dir / "b.txt"));
    const Instance inst = load_instance(dir / "a.txt");
    CHECK(inst.customers() == 5);
    std::ostringstream again;
    write_instance(again, inst);
    CHECK(again.str() == slurp(dir / "a.txt"));
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({"generate", "--customers", "0"}).code == 2);
    CHECK(run_cli({"generate"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"solve", "--instance", "x", "--method", "tabu"}).code == 2);
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("missing files exit with 3") {
    CHECK(run_cli({"solve", "--instance", "/nonexistent/inst.txt"}).code == 3);
    CHECK(run_cli({"export", "--instance", "/nonexistent/inst.txt"}).code == 3);
}

TEST_CASE("solve, then evaluate") {
    TempDir dir;
    REQUIRE(run_cli({"generate", "-n", "5", "--seed", "11", "-o", dir / "i.txt"}).code == 0);

    const Run sa = run_cli({"solve", "-i", dir / "i.txt", "-m", "sa", "--seed", "3", "-o", dir / "s.txt", "--trace",
                        dir / "t.csv"});
    REQUIRE(sa.code == 0);
    CHECK(fs::exists(dir / "t.csv"));
    const Run sa_again = run_cli({"solve", "-i", dir / "i.txt", "-m", "sa", "--seed", "3", "-o", dir / "s2.txt"});
    CHECK(slurp(dir / "s.txt") == slurp(dir / "s2.txt"));

    const Run eval = run_cli({"evaluate", "-i", dir / "i.txt", "-s", dir / "s.txt"});
    CHECK(eval.code == 0);
    CHECK(eval.out.find("feasible") != std::string::npos);
    CHECK(eval.out.find("differs") == std::string::npos);

    const Instance inst = load_instance(dir / "i.txt");
    const SolutionFile file = load_solution_file(dir / "s.txt");
    const double reported = std::stod(file.fields.at("objective"));
    const double recomputed = evaluate(inst, decode(file.encoded, inst)).total;
    CHECK(std::abs(reported - recomputed) <= 1e-9 * recomputed);

    const Run exact = run_cli({"solve", "-i", dir / "i.txt", "-m", "exact", "-o", dir / "e.txt"});
    CHECK(exact.code == 0);
    const SolutionFile ef = load_solution_file(dir / "e.txt");
    CHECK(ef.fields.at("status") == "optimal");
    CHECK(ef.fields.at("proven") == "true");
    CHECK(std::stod(ef.fields.at("objective")) <= reported * (1 + 1e-12));
}

TEST_CASE("exact with a short budget is unproven") {
    TempDir dir;
    REQUIRE(run_cli({"generate", "-n", "16", "--seed", "4", "-o", dir / "i.txt"}).code == 0);
    const Run r = run_cli({"solve", "-i", dir / "i.txt", "-m", "exact", "--max-seconds", "0.05", "-o", dir / "e.txt"});
    if (r.code == 0) {
        CHECK(load_solution_file(dir / "e.txt").fields.at("proven") == "false");
    } else {
        CHECK(r.code == 1);
        CHECK(r.err.find("unknown") != std::string::npos);
    }
}

TEST_CASE("evaluate flags a duplicated customer") {
    TempDir dir;
    REQUIRE(run_cli({"generate", "-n", "3", "--seed", "2", "-o", dir / "i.txt"}).code == 0);
    std::ofstream(dir / "s.txt") << "0,1-1,1-2,1-1,1-4,1\n";
    const Run r = run_cli({"evaluate", "-i", dir / "i.txt", "-s", dir / "s.txt"});
    CHECK(r.code == 1);
    CHECK(r.out.find("assignment") != std::string::npos);

    std::ofstream(dir / "bad.txt") << "0,1-1,x-4,1\n";
    const Run bad = run_cli({"evaluate", "-i", dir / "i.txt", "-s", dir / "bad.txt"});
    CHECK(bad.code == 3);
    CHECK(bad.err.find("token 2") != std::string::npos);
}

TEST_CASE("evaluate the hand instance") {
    TempDir dir;
    save_instance(dir / "h.txt", testing::hand_instance());
    std::ofstream(dir / "s.txt") << "0,1-1,1-2,1\n";
    const Run r = run_cli({"evaluate", "-i", dir / "h.txt", "-s", dir / "s.txt"});
    CHECK(r.code == 0);
    CHECK(r.out.find("objective 74.5\n") != std::string::npos);
}

TEST_CASE("export writes an LP file") {
    TempDir dir;
    REQUIRE(run_cli({"generate", "-n", "3", "--seed", "2", "-o", dir / "i.txt"}).code == 0);
    REQUIRE(run_cli({"export", "-i", dir / "i.txt", "-o", dir / "m.lp"}).code == 0);
    const std::string lp = slurp(dir / "m.lp");
    CHECK(lp.find("Minimize") != std::string::npos);
    CHECK(lp.find("Subject To") != std::string::npos);
    CHECK(lp.find("Binaries") != std::string::npos);
    CHECK(lp.rfind("End\n") == lp.size() - 4);
}

TEST_CASE("compare writes rows and plots") {
    TempDir dir;
    const Run r = run_cli({"compare", "--sizes", "4,5", "--trials", "2", "--budget-exact", "30", "--out-dir", dir / "c",
                       "--jobs", "2"});
    CHECK(r.code == 0);
    std::istringstream csv(slurp(dir / "c/compare.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "instance_id,n,exact_objective,exact_time_s,exact_proven,sa_objective,sa_time_s,gap_pct,"
                  "time_decrease_pct,note");
    int rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 4);
    for (const char* id : {"n4_t0", "n4_t1", "n5_t0", "n5_t1"}) {
        const std::string svg = slurp(dir / (std::string("c/plots/") + id + ".svg"));
        CHECK(svg.find("<svg") == 0);
        CHECK(svg.find("polyline") != std::string::npos);
    }
}

TEST_CASE("seed falls back to GREENROUTE_SEED") {
    TempDir dir;
    ::setenv("GREENROUTE_SEED", "21", 1);
    const Run a = run_cli({"generate", "-n", "4", "-o", dir / "a.txt"});
    ::unsetenv("GREENROUTE_SEED");
    const Run b = run_cli({"generate", "-n", "4", "--seed", "21", "-o", dir / "b.txt"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(slurp(dir / "a.txt") == slurp(dir / "b.txt"));
}

TEST_CASE("compare rows from one instance") {
    const Instance inst = testing::make_instance({{10, 0, 1}, {0, 10, 1}, {-5, 3, 1}}, 2);
    AnnealTrace trace;
    const CompareRow row = compare_instance("x", inst, 1, 10, &trace);
    CHECK(row.exact_proven);
    REQUIRE(row.gap_pct.has_value());
    CHECK(*row.gap_pct >= -1e-9);
    CHECK(!trace.rows.empty());
    std::ostringstream svg;
    write_convergence_svg(svg, trace, "x");
    CHECK(svg.str().find("</svg>") != std::string::npos);
}
