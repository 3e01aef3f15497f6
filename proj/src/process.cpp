#include "ham/process.hpp"

#include <cassert>
#include <cmath>

namespace ham {

const char* to_string(ProcessMode m) {
    return m == ProcessMode::edge_process ? "edge" : "graph";
}

const char* to_string(Preset p) { return p == Preset::paper ? "paper" : "desk"; }

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::fresh: return "fresh";
        case EventKind::redundant_repeat: return "repeat";
        case EventKind::redundant_loop: return "loop";
    }
    return "?";
}

ProcessConfig ProcessConfig::make(Vertex n, ProcessMode mode, uint64_t seed, Preset preset,
                                  int sat_threshold, double step1_multiplier) {
    ProcessConfig cfg;
    cfg.n = n;
    cfg.mode = mode;
    cfg.seed = seed;
    cfg.preset = preset;
    cfg.sat_threshold = sat_threshold;
    cfg.out_in_size = std::max(1, sat_threshold / 2 - 1);
    cfg.blossom_threshold = sat_threshold;
    if (preset == Preset::paper) {
        // Step I spans the first 2 n loglog n edges; Step II runs until m*.
        double mult = step1_multiplier > 0 ? step1_multiplier : 2.0;
        double ll = std::max(std::log(std::log(static_cast<double>(n))), 1.0);
        cfg.step1_len = static_cast<Time>(std::ceil(mult * n * ll));
        cfg.step2_len = 0;
    } else {
        // Desk budgets: expected first-vertex count 2*sat + 4 makes
        // non-saturation a ~1e-4 event per vertex. Step II is sized so the
        // unconsumed A-A pool clears (1/3) n log n twice over: at desk n the
        // per-vertex pool degree is ~2 * 0.8 * log n, and vertices with no
        // clean out-arc (rate e^-degree) strand the rotation search when they
        // sit in small factor cycles.
        double mult = step1_multiplier > 0 ? step1_multiplier : 2.0 * sat_threshold + 4.0;
        cfg.step1_len = static_cast<Time>(std::ceil(mult * n));
        cfg.step2_len = static_cast<Time>(std::ceil(0.8 * n * std::log(static_cast<double>(n))));
    }
    cfg.max_rotations = 50LL * n;
    cfg.restarts = 3;
    return cfg;
}

EdgeEvent EdgeProcessSource::next() {
    EdgeEvent e;
    e.t = ++t_;
    e.first = static_cast<Vertex>(rng_.below(static_cast<uint64_t>(n_)));
    e.second = static_cast<Vertex>(rng_.below(static_cast<uint64_t>(n_)));
    e.kind = e.is_loop() ? EventKind::redundant_loop : EventKind::fresh;
    e.blue = false;
    return e;
}

GraphProcessSource::GraphProcessSource(Vertex n, Rng underlying, Rng coupling)
    : n_(n),
      total_pairs_(static_cast<int64_t>(n) * (n - 1) / 2),
      underlying_(underlying),
      coupling_(coupling) {}

// Unrank index i in [0, binom(n,2)) to the lexicographic pair (u, v), u < v.
static std::pair<Vertex, Vertex> unrank_pair(int64_t i, Vertex n) {
    double nn = static_cast<double>(n);
    auto u = static_cast<int64_t>((2 * nn - 1 - std::sqrt((2 * nn - 1) * (2 * nn - 1) - 8.0 * static_cast<double>(i))) / 2);
    if (u < 0) u = 0;
    auto base = [n](int64_t r) { return r * (2 * static_cast<int64_t>(n) - r - 1) / 2; };
    while (u > 0 && base(u) > i) --u;
    while (base(u + 1) <= i) ++u;
    auto v = static_cast<Vertex>(u + 1 + (i - base(u)));
    return {static_cast<Vertex>(u), v};
}

std::pair<Vertex, Vertex> GraphProcessSource::next_fresh_pair() {
    if (a_ >= total_pairs_) throw ProcessExhausted{};
    // Sparse Fisher-Yates: swap a uniform index from the untouched suffix into
    // position a_, so memory grows with draws rather than with binom(n,2).
    int64_t k = a_;
    int64_t j = k + static_cast<int64_t>(underlying_.below(static_cast<uint64_t>(total_pairs_ - k)));
    auto lookup = [&](int64_t idx) {
        auto it = fy_.find(idx);
        return it == fy_.end() ? idx : it->second;
    };
    int64_t vj = lookup(j);
    if (j != k) fy_[j] = lookup(k);
    return unrank_pair(vj, n_);
}

EdgeEvent GraphProcessSource::next() {
    EdgeEvent e;
    e.t = ++t_;
    double n2 = static_cast<double>(n_) * static_cast<double>(n_);
    double p_redundant = (2.0 * static_cast<double>(a_) + n_) / n2;
    if (coupling_.unit() < p_redundant) {
        double p_repeat = 2.0 * static_cast<double>(a_) / (2.0 * static_cast<double>(a_) + n_);
        if (coupling_.unit() < p_repeat) {
            const auto& pr = seen_[coupling_.below(static_cast<uint64_t>(seen_.size()))];
            e.first = pr.first;
            e.second = pr.second;
            e.kind = EventKind::redundant_repeat;
            e.blue = true;
        } else {
            e.first = e.second = static_cast<Vertex>(coupling_.below(static_cast<uint64_t>(n_)));
            e.kind = EventKind::redundant_loop;
            return e;
        }
    } else {
        auto pr = next_fresh_pair();
        seen_.push_back(pr);
        ++a_;
        e.first = pr.first;
        e.second = pr.second;
        e.kind = EventKind::fresh;
    }
    if (coupling_.coin()) std::swap(e.first, e.second);
    return e;
}

std::unique_ptr<EventSource> make_source(const ProcessConfig& cfg) {
    if (cfg.mode == ProcessMode::edge_process) {
        return std::make_unique<EdgeProcessSource>(cfg.n, make_stream(cfg.seed, RngStream::process_pairs));
    }
    return std::make_unique<GraphProcessSource>(cfg.n,
                                                make_stream(cfg.seed, RngStream::process_underlying),
                                                make_stream(cfg.seed, RngStream::process_coupling));
}

ProcessRun run_until_min_degree_2(EventSource& src, Vertex n) {
    assert(n >= 3);
    ProcessRun run;
    DegreeTracker deg(n);
    while (!deg.min_degree_two()) {
        EdgeEvent e = src.next();
        deg.add(e);
        run.events.push_back(e);
    }
    run.m_star = run.events.back().t;
    return run;
}

ProcessRun run_process(const ProcessConfig& cfg) {
    assert(cfg.n >= 3);
    auto src = make_source(cfg);
    ProcessRun run = run_until_min_degree_2(*src, cfg.n);
    Time horizon = cfg.horizon(run.m_star);
    while (static_cast<Time>(run.events.size()) < horizon) run.events.push_back(src->next());
    return run;
}

}  // namespace ham
