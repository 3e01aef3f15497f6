// hamsim: seeded Monte Carlo driver for the on-line orientation pipeline.
//
// Runs trials of process -> orient -> classify -> fiveinout -> factor ->
// compress -> merge, writes a CSV/JSONL row per trial plus a per-n summary,
// and optionally runs the random-orientation baseline for comparison.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ham/json_io.hpp"
#include "ham/process.hpp"
#include "ham/sweep.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"on-line edge orientation / directed Hamilton cycle experiments"};

    ham::SweepConfig cfg;
    std::vector<int> n_list{3000};
    int trials = 10;
    uint64_t seed = 1;
    std::string mode = "graph";
    std::string preset = "desk";
    std::string out_dir;
    std::string format = "csv";
    int sat_threshold = 12;
    double step1_multiplier = 0.0;
    int oracle_max_n = 12;
    int jobs = 1;
    bool baseline = false;
    bool verbose_stage = false;
    bool dump_stages = false;

    app.add_option("--n", n_list, "vertex counts (repeatable)")->capture_default_str();
    app.add_option("--trials", trials, "trials per n")->capture_default_str();
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--mode", mode, "edge|graph")->check(CLI::IsMember({"edge", "graph"}))->capture_default_str();
    app.add_option("--preset", preset, "paper|desk")->check(CLI::IsMember({"paper", "desk"}))->capture_default_str();
    app.add_option("--sat-threshold", sat_threshold, "saturation threshold")->capture_default_str();
    app.add_option("--step1-multiplier", step1_multiplier, "Step I length multiplier (0 = preset default)");
    app.add_option("--out-dir", out_dir, "directory for results files");
    app.add_option("--format", format, "csv|jsonl|both")->check(CLI::IsMember({"csv", "jsonl", "both"}));
    app.add_option("--oracle-max-n", oracle_max_n, "exact oracle cutoff for the baseline")->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads")->capture_default_str();
    app.add_flag("--baseline", baseline, "also run the random-orientation baseline");
    app.add_flag("--verbose-stage", verbose_stage, "print per-trial stage lines");
    app.add_flag("--dump-stages", dump_stages, "write per-trial event/orientation dumps (needs --out-dir)");

    CLI11_PARSE(app, argc, argv);

    for (int n : n_list) {
        if (n < 3) {
            std::cerr << "error: --n must be >= 3\n";
            return 2;
        }
        cfg.n_list.push_back(static_cast<ham::Vertex>(n));
    }
    if (trials < 0) {
        std::cerr << "error: --trials must be >= 0\n";
        return 2;
    }
    cfg.trials = trials;
    cfg.master_seed = seed;
    cfg.mode = mode == "edge" ? ham::ProcessMode::edge_process : ham::ProcessMode::graph_process;
    cfg.preset = preset == "paper" ? ham::Preset::paper : ham::Preset::desk;
    cfg.sat_threshold = sat_threshold;
    cfg.step1_multiplier = step1_multiplier;
    cfg.jobs = jobs;
    cfg.with_baseline = baseline;
    cfg.oracle_max_n = static_cast<ham::Vertex>(oracle_max_n);

    ham::SweepOutput out;
    try {
        out = ham::run_sweep(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    if (verbose_stage) {
        for (const auto& r : out.trials) {
            std::cout << "n=" << r.n << " seed=" << r.seed << " m*=" << r.m_star
                      << " stage=" << ham::to_string(r.stage) << " success=" << (r.success ? 1 : 0);
            if (!r.fail_reason.empty()) std::cout << "  [" << r.fail_reason << "]";
            std::cout << '\n';
        }
    }
    std::cout << ham::summary_table(out.summary);
    if (baseline) {
        for (const auto& row : out.summary)
            std::cout << "baseline n=" << row.n << ": success=" << row.baseline_success_rate
                      << " certificate=" << row.baseline_certificate_rate << '\n';
    }

    if (!out_dir.empty()) {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec) {
            std::cerr << "error: cannot create " << out_dir << ": " << ec.message() << '\n';
            return 1;
        }
        auto write_file = [&](const fs::path& p, const std::string& body) {
            std::ofstream f(p, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot write " << p << '\n';
                exit(1);
            }
            f << body;
        };
        if (format == "csv" || format == "both") write_file(fs::path(out_dir) / "trials.csv", ham::sweep_csv(out.trials));
        if (format == "jsonl" || format == "both")
            write_file(fs::path(out_dir) / "trials.jsonl", ham::sweep_jsonl(out.trials, true));
        write_file(fs::path(out_dir) / "summary.csv", ham::summary_table(out.summary));
        if (baseline) {
            std::ostringstream bs;
            bs << "n,seed,m_star,certificate,success,ms_total\n";
            for (const auto& b : out.baselines)
                bs << b.n << ',' << b.seed << ',' << b.m_star << ',' << (b.certificate_ok ? 1 : 0) << ','
                   << (b.success ? 1 : 0) << ',' << static_cast<int64_t>(b.ms_total) << '\n';
            write_file(fs::path(out_dir) / "baseline.csv", bs.str());
        }
        if (dump_stages) {
            for (const auto& r : out.trials) {
                ham::ProcessConfig pc = ham::ProcessConfig::make(r.n, cfg.mode, r.seed, cfg.preset,
                                                                 cfg.sat_threshold, cfg.step1_multiplier);
                ham::ProcessRun run = ham::run_process(pc);
                ham::Orienter alg(pc, ham::make_stream(pc.seed, ham::RngStream::orient_coins));
                auto oriented = ham::orient_all(alg, run.events);
                fs::path dir = fs::path(out_dir) / ("trial_" + std::to_string(r.seed));
                fs::create_directories(dir, ec);
                std::ofstream ev(dir / "events.jsonl", std::ios::binary);
                ham::write_events_jsonl(ev, run.events);
                std::ofstream ori(dir / "oriented.jsonl", std::ios::binary);
                ham::write_oriented_jsonl(ori, oriented);
                write_file(dir / "typicality.json", ham::typicality_json(r.typicality));
                if (r.success) write_file(dir / "cycle.json", ham::cycle_json(r.cycle));
            }
        }
    }
    return 0;
}
