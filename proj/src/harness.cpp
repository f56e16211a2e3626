#include "tiersat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tiersat/solver.hpp"

namespace tiersat {

namespace fs = std::filesystem;

const char* run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Sat: return "SAT";
        case RunStatus::Unsat: return "UNSAT";
        case RunStatus::Timeout: return "TIMEOUT";
        case RunStatus::Error: return "ERROR";
    }
    return "?";
}

RunStatus run_status_from_name(const std::string& s) {
    if (s == "SAT") return RunStatus::Sat;
    if (s == "UNSAT") return RunStatus::Unsat;
    if (s == "TIMEOUT") return RunStatus::Timeout;
    if (s == "ERROR") return RunStatus::Error;
    throw std::invalid_argument("bad status: " + s);
}

namespace {

std::string no_commas(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    return s;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

} // namespace

std::string results_csv_header() {
    return "instance,config,status,wall_s,timeout_s,verified," + stats_csv_header() + ",message";
}

std::string result_csv_row(const InstanceResult& r) {
    std::ostringstream os;
    os << no_commas(r.instance) << ',' << no_commas(r.config) << ',' << run_status_name(r.status)
       << ',' << fmt(r.wall_s) << ',' << fmt(r.timeout_s) << ',' << (r.model_verified ? 1 : 0)
       << ',' << stats_row_csv(r.final_row) << ',' << no_commas(r.message);
    return os.str();
}

std::vector<InstanceResult> parse_results_csv(const std::string& text) {
    std::vector<InstanceResult> out;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (first) {
            first = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> f;
        size_t start = 0;
        for (size_t i = 0; i <= line.size(); ++i)
            if (i == line.size() || line[i] == ',') {
                f.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        if (f.size() != 16) throw std::invalid_argument("bad results row: " + line);
        InstanceResult r;
        r.instance = f[0];
        r.config = f[1];
        r.status = run_status_from_name(f[2]);
        r.wall_s = std::stod(f[3]);
        r.timeout_s = std::stod(f[4]);
        r.model_verified = f[5] == "1";
        r.final_row.conflict_no = std::stoull(f[6]);
        r.final_row.core = std::stoull(f[7]);
        r.final_row.tier2 = std::stoull(f[8]);
        r.final_row.local = std::stoull(f[9]);
        r.final_row.learned_total = std::stoull(f[10]);
        r.final_row.perm_fraction = std::stod(f[11]);
        r.final_row.hc_admitted = std::stoull(f[12]);
        r.final_row.ct = std::stod(f[13]);
        r.final_row.aux_emitted = std::stoull(f[14]);
        r.message = f[15];
        out.push_back(std::move(r));
    }
    return out;
}

bool verify_model(const Formula& f, const std::vector<bool>& model) {
    if (static_cast<int>(model.size()) < f.num_vars + 1) return false;
    for (const Clause& c : f.clauses) {
        bool sat = false;
        for (Lit l : c.lits)
            if (model[l.var()] != l.neg()) {
                sat = true;
                break;
            }
        if (!sat) return false;
    }
    return true;
}

std::vector<std::string> split_flag_line(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> parse_config_file(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        // trim
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(b, e - b + 1));
    }
    return out;
}

namespace {

InstanceResult run_one(const SuiteConfig& sc, const std::string& path,
                       const std::string& cfg_line) {
    InstanceResult r;
    r.instance = path;
    r.config = cfg_line;
    r.timeout_s = sc.timeout_s;
    try {
        Formula f = parse_dimacs_file(path);
        auto tokens = split_flag_line(cfg_line);
        PolicyConfig cfg = PolicyConfig::from_flags(tokens);
        if (std::find(tokens.begin(), tokens.end(), "--seed") == tokens.end()) cfg.seed = sc.seed;
        Solver s(f, cfg);
        SolveBudget budget;
        budget.max_wall_ms =
            std::max<uint64_t>(1, static_cast<uint64_t>(std::llround(sc.timeout_s * 1000.0)));
        SolveResult out = s.solve(budget);
        r.wall_s = out.stats.wall_s;
        r.final_row = out.final_row;
        switch (out.status) {
            case Status::Sat:
                if (!verify_model(f, out.model)) {
                    std::fprintf(stderr,
                                 "FATAL: model verification failed on %s with config '%s'\n",
                                 path.c_str(), cfg_line.c_str());
                    std::abort();
                }
                r.model_verified = true;
                r.status = RunStatus::Sat;
                break;
            case Status::Unsat:
                r.status = RunStatus::Unsat;
                break;
            case Status::Unknown:
                r.status = RunStatus::Timeout;
                r.wall_s = std::max(r.wall_s, sc.timeout_s);
                break;
        }
    } catch (const std::exception& e) {
        r.status = RunStatus::Error;
        r.message = e.what();
    }
    return r;
}

} // namespace

std::vector<InstanceResult> run_suite(const SuiteConfig& sc) {
    if (sc.timeout_s <= 0) throw std::invalid_argument("timeout must be positive");
    struct Task {
        size_t ci, ii;
    };
    std::vector<Task> tasks;
    for (size_t ci = 0; ci < sc.config_lines.size(); ++ci)
        for (size_t ii = 0; ii < sc.instance_files.size(); ++ii) tasks.push_back({ci, ii});
    std::vector<InstanceResult> results(tasks.size());

    std::ofstream csv;
    std::mutex csv_mu;
    const bool csv_on = !sc.out_csv.empty();
    if (csv_on) {
        bool have_rows = fs::exists(sc.out_csv) && fs::file_size(sc.out_csv) > 0;
        csv.open(sc.out_csv, std::ios::app);
        if (!csv) throw std::runtime_error("cannot open results file " + sc.out_csv);
        if (!have_rows) {
            csv << results_csv_header() << '\n';
            csv.flush();
        }
    }

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            InstanceResult r =
                run_one(sc, sc.instance_files[tasks[t].ii], sc.config_lines[tasks[t].ci]);
            if (csv_on) {
                std::lock_guard<std::mutex> g(csv_mu);
                csv << result_csv_row(r) << '\n';
                csv.flush(); // crash-safe: each finished row reaches the file
            }
            results[t] = std::move(r);
        }
    };
    const int jobs = std::max(1, sc.jobs);
    std::vector<std::thread> pool;
    for (int i = 1; i < jobs; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return results;
}

double par2(const std::vector<InstanceResult>& one_config, double timeout_s) {
    if (one_config.empty()) throw std::invalid_argument("par2 of an empty result set");
    double sum = 0.0;
    size_t unsolved = 0;
    for (const auto& r : one_config) {
        if (r.status == RunStatus::Sat || r.status == RunStatus::Unsat)
            sum += r.wall_s;
        else
            ++unsolved;
    }
    return (sum + 2.0 * timeout_s * static_cast<double>(unsolved)) /
           static_cast<double>(one_config.size());
}

std::vector<std::pair<int, double>> cactus_series(const std::vector<InstanceResult>& one_config) {
    std::vector<double> times;
    for (const auto& r : one_config)
        if (r.status == RunStatus::Sat || r.status == RunStatus::Unsat) times.push_back(r.wall_s);
    std::sort(times.begin(), times.end());
    std::vector<std::pair<int, double>> out;
    out.reserve(times.size());
    for (size_t i = 0; i < times.size(); ++i) out.emplace_back(static_cast<int>(i) + 1, times[i]);
    return out;
}

namespace {

std::string sanitize_filename(const std::string& s) {
    std::string out;
    for (char c : s)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') ? c : '_';
    // collapse runs of underscores and drop leading punctuation for readability
    std::string dedup;
    for (char c : out)
        if (c != '_' || dedup.empty() || dedup.back() != '_') dedup += c;
    size_t b = dedup.find_first_not_of("_-");
    if (b != std::string::npos && b > 0) dedup.erase(0, b);
    return dedup.empty() ? "config" : dedup;
}

} // namespace

void analyze_results(const std::vector<InstanceResult>& rows, const AnalyzeOptions& opt) {
    fs::create_directories(opt.out_dir);
    std::vector<std::string> configs;
    std::map<std::string, std::vector<InstanceResult>> by_cfg;
    for (const auto& r : rows) {
        if (!by_cfg.count(r.config)) configs.push_back(r.config);
        by_cfg[r.config].push_back(r);
    }

    auto open_out = [&](const std::string& name) {
        std::ofstream out(fs::path(opt.out_dir) / name);
        if (!out) throw std::runtime_error("cannot write " + name + " under " + opt.out_dir);
        return out;
    };

    std::vector<std::string> cactus_files;
    if (opt.par2) {
        auto out = open_out("par2.csv");
        out << "config,instances,solved,par2\n";
        for (const auto& c : configs) {
            const auto& rs = by_cfg[c];
            size_t solved = 0;
            for (const auto& r : rs)
                if (r.status == RunStatus::Sat || r.status == RunStatus::Unsat) ++solved;
            double t = rs.empty() ? 0.0 : rs.front().timeout_s;
            out << no_commas(c) << ',' << rs.size() << ',' << solved << ',' << fmt(par2(rs, t))
                << '\n';
        }
    }
    if (opt.cactus) {
        std::map<std::string, int> used;
        for (const auto& c : configs) {
            std::string base = sanitize_filename(c);
            int n = used[base]++;
            std::string name = "cactus_" + base + (n ? "_" + std::to_string(n + 1) : "") + ".csv";
            auto out = open_out(name);
            out << "k,time_s\n";
            for (auto [k, t] : cactus_series(by_cfg[c])) out << k << ',' << fmt(t) << '\n';
            cactus_files.push_back(name);
        }
    }
    if (opt.perm_histogram) {
        const uint64_t edges[] = {0, 1000, 5000, 10000, 20000, 50000, 100000, 150000};
        const size_t ne = std::size(edges);
        auto out = open_out("perm_hist.csv");
        out << "config,bucket_lo,bucket_hi,count\n";
        for (const auto& c : configs) {
            std::vector<uint64_t> count(ne, 0);
            for (const auto& r : by_cfg[c]) {
                if (r.status == RunStatus::Error) continue;
                size_t b = 0;
                while (b + 1 < ne && r.final_row.core >= edges[b + 1]) ++b;
                ++count[b];
            }
            for (size_t b = 0; b < ne; ++b) {
                out << no_commas(c) << ',' << edges[b] << ',';
                if (b + 1 < ne)
                    out << edges[b + 1];
                else
                    out << "inf";
                out << ',' << count[b] << '\n';
            }
        }
        auto summary = open_out("perm_summary.csv");
        summary << "config,rows,moderate_core,very_large_core,mean_final_core,"
                   "mean_perm_fraction\n";
        for (const auto& c : configs) {
            uint64_t total = 0, moderate = 0, very_large = 0;
            double core_sum = 0.0, frac_sum = 0.0;
            for (const auto& r : by_cfg[c]) {
                if (r.status == RunStatus::Error) continue;
                ++total;
                if (r.final_row.core <= opt.moderate_core_threshold) ++moderate;
                if (r.final_row.core > opt.lc_core_threshold) ++very_large;
                core_sum += static_cast<double>(r.final_row.core);
                frac_sum += r.final_row.perm_fraction;
            }
            double denom = total ? static_cast<double>(total) : 1.0;
            summary << no_commas(c) << ',' << total << ',' << moderate << ',' << very_large
                    << ',' << fmt(core_sum / denom) << ',' << fmt(frac_sum / denom) << '\n';
        }
        // LC tagging from the first config as the baseline pass
        auto lc = open_out("lc_tags.csv");
        lc << "instance,final_core,lc\n";
        if (!configs.empty())
            for (const auto& r : by_cfg[configs.front()]) {
                if (r.status == RunStatus::Error) continue;
                lc << no_commas(r.instance) << ',' << r.final_row.core << ','
                   << (r.final_row.core > opt.lc_core_threshold ? 1 : 0) << '\n';
            }
    }
    {
        auto gp = open_out("plots.gp");
        gp << "# gnuplot script for the emitted CSV files\n"
              "set datafile separator ','\n"
              "set termoption noenhanced\n"
              "set terminal pngcairo size 1000,700\n"
              "set output 'cactus.png'\n"
              "set xlabel 'instances solved'\n"
              "set ylabel 'time (s)'\n"
              "set key left top\n";
        if (cactus_files.empty()) {
            gp << "# no cactus series emitted\n";
        } else {
            gp << "plot \\\n";
            for (size_t i = 0; i < cactus_files.size(); ++i)
                gp << "  '" << cactus_files[i] << "' every ::1 using 1:2 with linespoints title '"
                   << cactus_files[i] << (i + 1 < cactus_files.size() ? "', \\" : "'") << "\n";
        }
        gp << "set output 'par2.png'\n"
              "set style data histogram\n"
              "set style fill solid 0.6\n"
              "set ylabel 'PAR-2 (s)'\n"
              "set xtics rotate by -30\n"
              "plot 'par2.csv' every ::1 using 4:xtic(1) title 'PAR-2'\n";
    }
}

} // namespace tiersat
