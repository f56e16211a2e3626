#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tiersat/cnf.hpp"
#include "tiersat/instrumentation.hpp"
#include "tiersat/policy.hpp"

namespace tiersat {

enum class RunStatus : uint8_t { Sat, Unsat, Timeout, Error };

const char* run_status_name(RunStatus s);
RunStatus run_status_from_name(const std::string& s);

struct InstanceResult {
    std::string instance;
    std::string config;
    RunStatus status = RunStatus::Error;
    double wall_s = 0.0;
    double timeout_s = 0.0;
    bool model_verified = false;
    StatsRow final_row;
    std::string message; // ERROR rows carry the diagnostic
};

struct SuiteConfig {
    std::vector<std::string> instance_files;
    std::vector<std::string> config_lines; // one policy-flag line per configuration
    double timeout_s = 60.0;
    int jobs = 1;
    uint64_t seed = 1;        // default --seed for configs that do not set one
    std::string out_csv;      // when set, rows are appended as they complete
};

std::string results_csv_header();
std::string result_csv_row(const InstanceResult& r);
std::vector<InstanceResult> parse_results_csv(const std::string& text);

// Solve every (instance, config) pair under the timeout.  SAT answers are
// model-checked before being recorded; a failed check aborts the process.
// Per-instance problems (unreadable file, bad flags) become ERROR rows.
std::vector<InstanceResult> run_suite(const SuiteConfig& sc);

// Penalized average runtime: (sum of solved wall times + 2*T*unsolved) / N.
// Throws on an empty result set.
double par2(const std::vector<InstanceResult>& one_config, double timeout_s);

// Solved instances ranked by time: (1, fastest), (2, next), ...
std::vector<std::pair<int, double>> cactus_series(const std::vector<InstanceResult>& one_config);

// true iff every clause of f has a literal satisfied by the full model.
bool verify_model(const Formula& f, const std::vector<bool>& model);

// Strip '#' comments and blank lines; returns one config line per entry.
std::vector<std::string> parse_config_file(const std::string& text);
std::vector<std::string> split_flag_line(const std::string& line);

struct AnalyzeOptions {
    bool par2 = true;
    bool cactus = true;
    bool perm_histogram = true;
    std::string out_dir = ".";
    uint64_t lc_core_threshold = 150000; // baseline terminal |Core| above this tags "LC"
    uint64_t moderate_core_threshold = 20000;
};

// Emits par2.csv, cactus_<config>.csv, perm_hist.csv, perm_summary.csv,
// lc_tags.csv and plots.gp under out_dir.
void analyze_results(const std::vector<InstanceResult>& rows, const AnalyzeOptions& opt);

} // namespace tiersat
