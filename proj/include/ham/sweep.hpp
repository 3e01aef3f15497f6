#pragma once

#include <array>
#include <string>
#include <vector>

#include "ham/trial.hpp"

namespace ham {

struct SweepConfig {
    std::vector<Vertex> n_list;
    int trials = 1;
    uint64_t master_seed = 1;
    ProcessMode mode = ProcessMode::graph_process;
    Preset preset = Preset::desk;
    int sat_threshold = 12;
    double step1_multiplier = 0.0;  // 0 = preset default
    int jobs = 1;
    bool with_baseline = false;
    Vertex oracle_max_n = 12;
};

struct SweepRow {
    Vertex n = 0;
    int trials = 0;
    double success_rate = 0;
    std::array<int, 7> stage_histogram{};
    double mean_mstar_ratio = 0;  // m* / (n/2 (log n + loglog n))
    double mean_factor_cycles = 0;
    double baseline_success_rate = 0;
    double baseline_certificate_rate = 0;
};

struct SweepOutput {
    std::vector<TrialResult> trials;
    std::vector<BaselineResult> baselines;
    std::vector<SweepRow> summary;
};

// Per-trial seed derivation: deterministic in (master seed, n, index).
uint64_t trial_seed(uint64_t master, Vertex n, int index);

// Runs trials (and optionally baselines) across the n list; trials are
// independent and may be dispatched to a worker pool, results are keyed by
// index so aggregation is order-independent.
SweepOutput run_sweep(const SweepConfig& cfg);

// CSV with the frozen column set, one row per trial in index order.
std::string sweep_csv(const std::vector<TrialResult>& results);
std::string sweep_jsonl(const std::vector<TrialResult>& results, bool include_timings = false);
std::string summary_table(const std::vector<SweepRow>& rows);

}  // namespace ham
