#include "ham/sweep.hpp"

#include <atomic>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include "ham/json_io.hpp"

namespace ham {

uint64_t trial_seed(uint64_t master, Vertex n, int index) {
    uint64_t x = master ^ (0xd1342543de82ef95ULL * (static_cast<uint64_t>(n) + 1));
    uint64_t a = Rng::splitmix64(x);
    x = a ^ (0xaf251af3b0f025b5ULL * (static_cast<uint64_t>(index) + 1));
    return Rng::splitmix64(x);
}

SweepOutput run_sweep(const SweepConfig& cfg) {
    SweepOutput out;
    struct Task {
        Vertex n;
        int index;
        uint64_t seed;
    };
    std::vector<Task> tasks;
    for (Vertex n : cfg.n_list)
        for (int i = 0; i < cfg.trials; ++i) tasks.push_back({n, i, trial_seed(cfg.master_seed, n, i)});

    out.trials.resize(tasks.size());
    if (cfg.with_baseline) out.baselines.resize(tasks.size());

    auto worker_body = [&](size_t ti) {
        const Task& t = tasks[ti];
        ProcessConfig pc = ProcessConfig::make(t.n, cfg.mode, t.seed, cfg.preset,
                                               cfg.sat_threshold, cfg.step1_multiplier);
        out.trials[ti] = run_trial(pc);
        if (cfg.with_baseline) out.baselines[ti] = run_baseline(pc, cfg.oracle_max_n);
    };

    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || tasks.size() <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i) worker_body(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    worker_body(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    // Per-n summary
    for (Vertex n : cfg.n_list) {
        SweepRow row;
        row.n = n;
        double denom = 0.5 * n * (std::log(static_cast<double>(n)) + std::log(std::log(static_cast<double>(n))));
        double cyc_sum = 0;
        int cyc_cnt = 0;
        int base_succ = 0, base_cert = 0, base_cnt = 0;
        for (size_t i = 0; i < tasks.size(); ++i) {
            if (tasks[i].n != n) continue;
            const TrialResult& r = out.trials[i];
            ++row.trials;
            row.success_rate += r.success ? 1 : 0;
            ++row.stage_histogram[static_cast<int>(r.stage)];
            row.mean_mstar_ratio += static_cast<double>(r.m_star) / denom;
            if (r.counters.factor_cycles > 0) {
                cyc_sum += static_cast<double>(r.counters.factor_cycles);
                ++cyc_cnt;
            }
            if (cfg.with_baseline) {
                const BaselineResult& b = out.baselines[i];
                ++base_cnt;
                base_succ += b.success ? 1 : 0;
                base_cert += b.certificate_ok ? 1 : 0;
            }
        }
        if (row.trials > 0) {
            row.success_rate /= row.trials;
            row.mean_mstar_ratio /= row.trials;
        }
        row.mean_factor_cycles = cyc_cnt > 0 ? cyc_sum / cyc_cnt : 0;
        if (base_cnt > 0) {
            row.baseline_success_rate = static_cast<double>(base_succ) / base_cnt;
            row.baseline_certificate_rate = static_cast<double>(base_cert) / base_cnt;
        }
        out.summary.push_back(row);
    }
    return out;
}

std::string sweep_csv(const std::vector<TrialResult>& results) {
    std::ostringstream os;
    os << csv_header() << '\n';
    for (const auto& r : results) os << csv_row(r) << '\n';
    return os.str();
}

std::string sweep_jsonl(const std::vector<TrialResult>& results, bool include_timings) {
    std::ostringstream os;
    for (const auto& r : results) os << trial_json(r, include_timings) << '\n';
    return os.str();
}

std::string summary_table(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "n,trials,success_rate,mean_mstar_ratio,mean_factor_cycles,"
          "stage_orient,stage_classify,stage_fiveinout,stage_factor,stage_compress,stage_merge,stage_done,"
          "baseline_success_rate,baseline_certificate_rate\n";
    for (const auto& r : rows) {
        os << r.n << ',' << r.trials << ',' << std::fixed << std::setprecision(4) << r.success_rate
           << ',' << r.mean_mstar_ratio << ',' << r.mean_factor_cycles;
        for (int s = 0; s < 7; ++s) os << ',' << r.stage_histogram[s];
        os << ',' << r.baseline_success_rate << ',' << r.baseline_certificate_rate << '\n';
    }
    return os.str();
}

}  // namespace ham
