#include "ham/trial.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include "ham/compress.hpp"
#include "ham/factor.hpp"
#include "ham/fiveinout.hpp"
#include "ham/oracle.hpp"
#include "ham/orient.hpp"
#include "ham/process.hpp"

namespace ham {

const char* to_string(Stage s) {
    switch (s) {
        case Stage::orient: return "orient";
        case Stage::classify: return "classify";
        case Stage::fiveinout: return "fiveinout";
        case Stage::factor: return "factor";
        case Stage::compress: return "compress";
        case Stage::merge: return "merge";
        case Stage::done: return "done";
    }
    return "?";
}

namespace {

struct StageClock {
    using clock = std::chrono::steady_clock;
    clock::time_point t0 = clock::now();
    double lap() {
        auto t1 = clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        t0 = t1;
        return ms;
    }
};

Digraph oriented_digraph(const std::vector<OrientedEdge>& oriented, Vertex n) {
    Digraph d(n);
    for (const auto& oe : oriented) d.add_arc(oe.tail, oe.head, oe.blue);
    d.sort_arcs();
    return d;
}

// Vertices incident to two or more distinct unordered pairs that carry a blue
// copy (the measured form of the "at most one blue edge per vertex" claim).
int64_t blue_multiplicity_violations(const std::vector<EdgeEvent>& events, Vertex n) {
    std::set<std::pair<Vertex, Vertex>> blue_pairs;
    for (const auto& e : events) {
        if (!e.blue || e.is_loop()) continue;
        auto p = std::minmax(e.first, e.second);
        blue_pairs.insert({p.first, p.second});
    }
    std::vector<int32_t> cnt(n, 0);
    for (const auto& [u, v] : blue_pairs) {
        ++cnt[u];
        ++cnt[v];
    }
    int64_t bad = 0;
    for (Vertex v = 0; v < n; ++v) bad += cnt[v] >= 2 ? 1 : 0;
    return bad;
}

}  // namespace

TrialResult run_trial(const ProcessConfig& cfg) {
    TrialResult r;
    r.n = cfg.n;
    r.seed = cfg.seed;
    r.mode = cfg.mode;
    r.preset = cfg.preset;
    StageClock clock;
    StageClock total;

    ProcessRun run = run_process(cfg);
    r.m_star = run.m_star;
    r.horizon = static_cast<Time>(run.events.size());

    // orient
    Orienter alg(cfg, make_stream(cfg.seed, RngStream::orient_coins));
    std::vector<OrientedEdge> oriented = orient_all(alg, run.events);
    for (const auto& e : run.events) r.counters.blue_seen += e.blue ? 1 : 0;
    r.counters.blue_multiplicity_violations = blue_multiplicity_violations(run.events, cfg.n);
    r.stage = Stage::orient;
    r.stage_ms[static_cast<int>(Stage::orient)] = clock.lap();

    // classify
    r.stage = Stage::classify;
    Classification cls = classify_vertices(alg, cfg);
    r.typicality = typicality(cls, alg, run.events, oriented, cfg);
    r.counters.a_size = static_cast<int64_t>(cls.A.size());
    r.counters.b1_size = static_cast<int64_t>(cls.B1.size());
    r.counters.b2_size = static_cast<int64_t>(cls.B2.size());
    r.counters.violations = static_cast<int64_t>(cls.violations.size());
    r.stage_ms[static_cast<int>(Stage::classify)] = clock.lap();
    if (!cls.clean()) {
        std::ostringstream os;
        os << "classification violations (" << cls.violations.size() << "): " << cls.violation_reasons[0];
        r.fail_reason = os.str();
        r.ms_total = total.lap();
        return r;
    }

    // fiveinout
    r.stage = Stage::fiveinout;
    FiveInOutResult fr = build_five_in_out(alg, cls, cfg);
    r.stage_ms[static_cast<int>(Stage::fiveinout)] = clock.lap();
    if (!fr.ok()) {
        r.counters.deficit_vertices = static_cast<int64_t>(fr.deficit.size());
        std::ostringstream os;
        os << "construction deficit at " << fr.deficit.size() << " vertices (first v=" << fr.deficit[0] << ")";
        r.fail_reason = os.str();
        r.ms_total = total.lap();
        return r;
    }
    Bip bip = build_bip(*fr.fio, cls, cfg.n);
    for (const auto& e : bip.edges)
        if (e.blue && (!alg.in_A(e.u) || !alg.in_A(e.v))) ++r.counters.fiveinout_blue_incident_B;

    // factor
    r.stage = Stage::factor;
    Rng tau = make_stream(cfg.seed, RngStream::matching_tau);
    RandomizedFactorResult rf = randomized_perfect_matching(bip, tau);
    if (!rf.ok()) {
        std::ostringstream os;
        os << "no perfect matching (deficient set size " << rf.failure.witness.size()
           << ", matched " << rf.failure.size << "/" << cfg.n << ")";
        r.fail_reason = os.str();
        r.stage_ms[static_cast<int>(Stage::factor)] = clock.lap();
        r.ms_total = total.lap();
        return r;
    }
    OneFactor& factor = *rf.factor;
    r.counters.factor_cycles = static_cast<int64_t>(factor.cycles.size());
    for (const auto& a : factor.arc) r.counters.blue_in_factor += a.blue ? 1 : 0;
    FactorQuality fq = factor_quality(factor, bip.in_A_hat);
    r.stage_ms[static_cast<int>(Stage::factor)] = clock.lap();
    if (!fq.pass) {
        std::ostringstream os;
        os << "factor quality: cycles=" << fq.cycle_count << " (max " << fq.max_cycles
           << "), min A-hat fraction " << fq.min_sat_fraction;
        r.fail_reason = os.str();
        r.ms_total = total.lap();
        return r;
    }

    // compress
    r.stage = Stage::compress;
    CompressResult cr = compress_factor(factor, bip.in_A_hat);
    r.stage_ms[static_cast<int>(Stage::compress)] = clock.lap();
    if (!cr.ok()) {
        std::ostringstream os;
        os << "compression stuck at red vertex " << cr.stuck_at;
        r.fail_reason = os.str();
        r.ms_total = total.lap();
        return r;
    }
    const CompressedFactor& cf = *cr.factor;
    r.counters.compressed_size = static_cast<int64_t>(cf.working.size());

    // merge
    r.stage = Stage::merge;
    std::vector<PoolArc> pool;
    for (const auto& oe : oriented) {
        if (oe.t <= cfg.step1_len || !alg.in_A(oe.tail) || !alg.in_A(oe.head)) continue;
        assert(!std::binary_search(fr.fio->consumed.begin(), fr.fio->consumed.end(), oe.t));
        auto tt = cr.map.translate_tail(oe.tail);
        auto hh = cr.map.translate_head(oe.head);
        if (!tt || !hh || *tt == *hh) continue;
        pool.push_back({*tt, *hh, oe.t, oe.blue});
    }
    MergeResult mr = merge_to_hamilton(cf, pool, cfg, make_stream(cfg.seed, RngStream::merge_scan));
    r.counters.pool_size = mr.stats.pool_arcs;
    r.counters.pool_blue = mr.stats.pool_blue;
    r.counters.rotations = mr.stats.rotations;
    r.counters.joins = mr.stats.joins;
    r.counters.absorbs = mr.stats.absorbs;
    r.counters.restarts = mr.stats.restarts_used;
    r.counters.blue_eliminated = mr.stats.blue_eliminated;
    if (!mr.ok) {
        r.fail_reason = mr.fail_reason;
        r.stage_ms[static_cast<int>(Stage::merge)] = clock.lap();
        r.ms_total = total.lap();
        return r;
    }

    // decompress and always-on verification
    std::vector<Vertex> cycle = mr.cycle;
    std::vector<ArcMeta> arcs = mr.arcs;
    decompress_cycle(cycle, arcs, cr.map);
    Digraph d = oriented_digraph(oriented, cfg.n);
    VerifyResult v = verify_cycle(d, cycle, d.blue_only_pairs());
    r.stage_ms[static_cast<int>(Stage::merge)] = clock.lap();
    if (!v.ok) {
        r.fail_reason = "final cycle rejected by verifier: " + v.reason;
        r.ms_total = total.lap();
        return r;
    }
    r.stage = Stage::done;
    r.success = true;
    r.cycle = std::move(cycle);
    r.ms_total = total.lap();
    return r;
}

namespace {

// Rotation-extension Hamilton search on an arbitrary digraph: greedy path
// growth, rotations on a used-breakpoint walk when stuck. Returns a cycle on
// success. This is the baseline's "try hard" step; at m* a uniformly oriented
// graph almost never admits one.
bool baseline_path_search(const std::vector<std::vector<Vertex>>& out, Vertex n, int64_t budget) {
    if (n == 0) return false;
    std::vector<Vertex> path{0};
    std::vector<char> on_path(n, 0);
    on_path[0] = 1;
    std::vector<int32_t> pos(n, -1);
    pos[0] = 0;
    std::vector<char> used(n, 0);

    auto rebuild_pos = [&]() {
        std::fill(pos.begin(), pos.end(), -1);
        for (int32_t i = 0; i < static_cast<int32_t>(path.size()); ++i) pos[path[i]] = i;
    };

    while (budget-- > 0) {
        Vertex w = path.back();
        // extend
        bool moved = false;
        for (Vertex u : out[w]) {
            if (!on_path[u]) {
                path.push_back(u);
                on_path[u] = 1;
                pos[u] = static_cast<int32_t>(path.size()) - 1;
                std::fill(used.begin(), used.end(), 0);
                moved = true;
                break;
            }
        }
        if (moved) continue;
        const int32_t l = static_cast<int32_t>(path.size()) - 1;
        if (l == n - 1) {
            for (Vertex u : out[w])
                if (u == path[0]) return true;
        }
        // rotate: first admissible pivot pair with unused breaking points
        for (Vertex z : out[w]) {
            int32_t iz = pos[z];
            if (iz < 2 || iz > l - 1) continue;
            Vertex x = path[iz - 1];
            if (used[x]) continue;
            for (Vertex y2 : out[x]) {
                int32_t j = pos[y2];
                if (j < iz + 1 || j > l) continue;
                Vertex y = path[j - 1];
                if (used[y]) continue;
                used[x] = 1;
                used[y] = 1;
                std::vector<ArcMeta> dummy(l, ArcMeta{});
                rotate_path(path, dummy, iz - 1, j, {}, {});
                rebuild_pos();
                moved = true;
                break;
            }
            if (moved) break;
        }
        if (!moved) return false;  // no extension, no rotation: stuck
    }
    return false;
}

}  // namespace

BaselineResult run_baseline(const ProcessConfig& cfg, Vertex oracle_max_n) {
    BaselineResult b;
    b.n = cfg.n;
    b.seed = cfg.seed;
    StageClock total;

    auto src = make_source(cfg);
    ProcessRun run = run_until_min_degree_2(*src, cfg.n);
    b.m_star = run.m_star;

    Rng coins = make_stream(cfg.seed, RngStream::baseline_coins);
    Digraph d(cfg.n);
    for (const auto& e : run.events) {
        if (e.is_loop()) continue;
        if (coins.coin())
            d.add_arc(e.first, e.second, e.blue);
        else
            d.add_arc(e.second, e.first, e.blue);
    }
    d.sort_arcs();
    ForbiddenPairs forbidden = d.blue_only_pairs();

    // Local certificate: a Hamilton cycle needs a usable in- and out-arc at
    // every vertex; at m* some vertex has total degree 2, so a random
    // orientation fails here with probability 1/2 per such vertex.
    std::vector<std::vector<Vertex>> out(cfg.n);
    std::vector<int32_t> indeg(cfg.n, 0);
    for (Vertex u = 0; u < cfg.n; ++u) {
        Vertex prev = -1;
        for (const auto& a : d.adj[u]) {
            if (forbidden.count(pair_key(u, a.head, cfg.n))) continue;
            if (a.head == prev) continue;  // adjacency is sorted; dedup pairs
            prev = a.head;
            out[u].push_back(a.head);
            ++indeg[a.head];
        }
    }
    b.certificate_ok = true;
    for (Vertex v = 0; v < cfg.n; ++v)
        if (out[v].empty() || indeg[v] == 0) {
            b.certificate_ok = false;
            break;
        }
    if (!b.certificate_ok) {
        b.ms_total = total.lap();
        return b;
    }

    if (cfg.n <= oracle_max_n) {
        b.oracle_used = true;
        b.success = held_karp(d, forbidden).has_value();
    } else {
        b.success = baseline_path_search(out, cfg.n, 10LL * cfg.n);
    }
    b.ms_total = total.lap();
    return b;
}

}  // namespace ham
