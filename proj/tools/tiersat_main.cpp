// Command-line front end: solve one instance, run a suite, analyze results,
// profile clause usage against variable centrality, or generate instances.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tiersat/gen.hpp"
#include "tiersat/harness.hpp"
#include "tiersat/solver.hpp"

namespace fs = std::filesystem;
using namespace tiersat;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --instances takes either a directory (all *.cnf inside, sorted) or a text
// file with one instance path per line.
std::vector<std::string> collect_instances(const std::string& arg) {
    std::vector<std::string> out;
    if (fs::is_directory(arg)) {
        for (const auto& e : fs::directory_iterator(arg))
            if (e.is_regular_file() && e.path().extension() == ".cnf")
                out.push_back(e.path().string());
        std::sort(out.begin(), out.end());
    } else {
        std::istringstream is(read_file(arg));
        std::string line;
        while (std::getline(is, line)) {
            size_t b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos || line[b] == '#') continue;
            size_t e = line.find_last_not_of(" \t\r");
            out.push_back(line.substr(b, e - b + 1));
        }
    }
    if (out.empty()) throw std::runtime_error("no instances found in " + arg);
    return out;
}

int cmd_solve(const std::string& path, const std::vector<std::string>& policy_flags,
              double timeout_s, const std::string& stats_out) {
    Formula f = parse_dimacs_file(path);
    PolicyConfig cfg = PolicyConfig::from_flags(policy_flags);
    Solver s(f, cfg);
    SolveBudget budget;
    if (timeout_s > 0)
        budget.max_wall_ms =
            std::max<uint64_t>(1, static_cast<uint64_t>(timeout_s * 1000.0));
    SolveResult res = s.solve(budget);
    if (!stats_out.empty()) s.instr().write_rows_csv(stats_out);
    switch (res.status) {
        case Status::Sat: {
            std::printf("s SATISFIABLE\n");
            std::string line = "v";
            for (int v = 1; v <= f.num_vars; ++v) {
                line += ' ';
                line += std::to_string(res.model[v] ? v : -v);
                if (line.size() > 72) {
                    std::printf("%s\n", line.c_str());
                    line = "v";
                }
            }
            line += " 0";
            std::printf("%s\n", line.c_str());
            return 10;
        }
        case Status::Unsat:
            std::printf("s UNSATISFIABLE\n");
            return 20;
        case Status::Unknown:
            std::printf("s UNKNOWN\n");
            return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tiered learned-clause store SAT solver"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "solve one DIMACS CNF instance");
    std::string solve_path, stats_out;
    double solve_timeout = 0.0;
    solve->add_option("cnf", solve_path, "input file")->required();
    solve->add_option("--timeout", solve_timeout, "wall-clock limit in seconds (0 = none)");
    solve->add_option("--stats-out", stats_out, "write the periodic statistics CSV here");
    solve->allow_extras();

    // suite
    auto* suite = app.add_subcommand("suite", "run a config x instance matrix");
    std::string su_instances, su_configs, su_out;
    double su_timeout = 60.0;
    int su_jobs = 1;
    uint64_t su_seed = 1;
    suite->add_option("--instances", su_instances, "directory of .cnf files or a list file")
        ->required();
    suite->add_option("--configs", su_configs, "file with one flag line per config")->required();
    suite->add_option("--timeout", su_timeout, "per-run wall-clock limit in seconds");
    suite->add_option("--jobs", su_jobs, "worker threads");
    suite->add_option("--seed", su_seed, "seed for configs that do not set one");
    suite->add_option("--out", su_out, "results CSV (appended to, crash-safe)")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "summarize a results CSV");
    std::string an_results, an_outdir = ".";
    bool an_par2 = false, an_cactus = false, an_hist = false;
    analyze->add_option("--results", an_results, "results CSV from `suite`")->required();
    analyze->add_flag("--par2", an_par2, "emit par2.csv");
    analyze->add_flag("--cactus", an_cactus, "emit cactus_<config>.csv per config");
    analyze->add_flag("--perm-histogram", an_hist,
                      "emit permanent-store size histogram and tagging CSVs");
    analyze->add_option("--out-dir", an_outdir, "output directory");

    // profile
    auto* profile = app.add_subcommand("profile", "clause usage vs. variable centrality");
    std::vector<std::string> pr_paths;
    std::string pr_out = "profile.csv";
    uint64_t pr_budget = 50000;
    int pr_bins = 20;
    profile->add_option("cnf", pr_paths, "input files")->required();
    profile->add_option("--out", pr_out, "output CSV (one block per instance)");
    profile->add_option("--budget", pr_budget, "conflict budget per instance");
    profile->add_option("--bins", pr_bins, "number of equal-width centrality bins");
    profile->allow_extras();

    // gen
    auto* gen = app.add_subcommand("gen", "generate benchmark instances");
    auto* gr = gen->add_subcommand("random", "uniform random 3-CNF");
    int gr_vars = 20;
    int gr_clauses = 85;
    uint64_t gr_seed = 1;
    std::string gr_out;
    gr->add_option("--vars", gr_vars)->required();
    gr->add_option("--clauses", gr_clauses)->required();
    gr->add_option("--seed", gr_seed);
    gr->add_option("--out", gr_out, "output file (default stdout)");
    auto* gp = gen->add_subcommand("php", "pigeonhole instance");
    int gp_pigeons = 4, gp_holes = 3;
    std::string gp_out;
    gp->add_option("--pigeons", gp_pigeons)->required();
    gp->add_option("--holes", gp_holes)->required();
    gp->add_option("--out", gp_out, "output file (default stdout)");
    gen->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return cmd_solve(solve_path, solve->remaining(), solve_timeout, stats_out);
        if (*suite) {
            SuiteConfig sc;
            sc.instance_files = collect_instances(su_instances);
            sc.config_lines = parse_config_file(read_file(su_configs));
            if (sc.config_lines.empty()) throw std::runtime_error("no configs in " + su_configs);
            sc.timeout_s = su_timeout;
            sc.jobs = su_jobs;
            sc.seed = su_seed;
            sc.out_csv = su_out;
            auto results = run_suite(sc);
            size_t solved = 0, errors = 0;
            for (const auto& r : results) {
                if (r.status == RunStatus::Sat || r.status == RunStatus::Unsat) ++solved;
                if (r.status == RunStatus::Error) ++errors;
            }
            std::fprintf(stderr, "suite: %zu runs, %zu solved, %zu errors -> %s\n",
                         results.size(), solved, errors, su_out.c_str());
            return errors ? 1 : 0;
        }
        if (*analyze) {
            AnalyzeOptions opt;
            opt.par2 = an_par2;
            opt.cactus = an_cactus;
            opt.perm_histogram = an_hist;
            opt.out_dir = an_outdir;
            analyze_results(parse_results_csv(read_file(an_results)), opt);
            std::fprintf(stderr, "analyze: wrote outputs under %s\n", an_outdir.c_str());
            return 0;
        }
        if (*profile) {
            PolicyConfig cfg = PolicyConfig::from_flags(profile->remaining());
            std::ofstream out(pr_out);
            if (!out) throw std::runtime_error("cannot open " + pr_out);
            for (const auto& p : pr_paths) {
                Formula f = parse_dimacs_file(p);
                auto prof = usage_centrality_profile(f, cfg, pr_budget, pr_bins);
                out << "# " << p << "\n" << prof.to_csv();
            }
            std::fprintf(stderr, "profile: wrote %s\n", pr_out.c_str());
            return 0;
        }
        if (*gen) {
            Formula f;
            std::string out_path;
            if (*gr) {
                f = gen_random_3cnf(gr_vars, gr_clauses, gr_seed);
                out_path = gr_out;
            } else {
                f = gen_php(gp_pigeons, gp_holes);
                out_path = gp_out;
            }
            if (out_path.empty())
                std::cout << serialize_dimacs(f);
            else
                write_dimacs_file(f, out_path);
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
