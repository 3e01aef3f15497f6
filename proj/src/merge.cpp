#include "ham/merge.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <cstdlib>
#include <unordered_map>

namespace ham {

void rotate_path(std::vector<Vertex>& path, std::vector<ArcMeta>& arcs, int32_t i, int32_t j,
                 ArcMeta chord, ArcMeta back) {
    const int32_t l = static_cast<int32_t>(path.size()) - 1;
    assert(i >= 1 && i + 1 < j && j <= l);
    std::vector<Vertex> np;
    std::vector<ArcMeta> na;
    np.reserve(path.size());
    na.reserve(arcs.size());
    for (int32_t x = 0; x <= i; ++x) np.push_back(path[x]);
    for (int32_t x = 0; x < i; ++x) na.push_back(arcs[x]);
    na.push_back(chord);
    for (int32_t x = j; x <= l; ++x) np.push_back(path[x]);
    for (int32_t x = j; x < l; ++x) na.push_back(arcs[x]);
    na.push_back(back);
    for (int32_t x = i + 1; x <= j - 1; ++x) np.push_back(path[x]);
    for (int32_t x = i + 1; x < j - 1; ++x) na.push_back(arcs[x]);
    path.swap(np);
    arcs.swap(na);
}

namespace {

// Vertex-only rotation for BFS exploration; arc metadata is reconstructed by
// replaying the rotation chain only when a node commits.
void rotate_vertices(std::vector<Vertex>& path, int32_t i, int32_t j) {
    const int32_t l = static_cast<int32_t>(path.size()) - 1;
    std::vector<Vertex> np;
    np.reserve(path.size());
    for (int32_t x = 0; x <= i; ++x) np.push_back(path[x]);
    for (int32_t x = j; x <= l; ++x) np.push_back(path[x]);
    for (int32_t x = i + 1; x <= j - 1; ++x) np.push_back(path[x]);
    path.swap(np);
}

struct CleanArc {
    Vertex head;
    ArcMeta meta;
};

// Working state of the absorb/close engine, over dense indices [0, W).
struct Engine {
    int32_t W = 0;
    const std::vector<std::vector<CleanArc>>* out = nullptr;
    const std::unordered_map<int64_t, ArcMeta>* arc_of = nullptr;
    int64_t budget = 0;
    MergeStats* stats = nullptr;

    // cover structure; entries of vertices on the path are stale by design
    std::vector<Vertex> succ;
    std::vector<ArcMeta> succ_arc;
    std::vector<char> on_path;

    std::vector<Vertex> path;
    std::vector<ArcMeta> arcs;  // arcs[x]: path[x] -> path[x+1]

    const ArcMeta* clean(Vertex a, Vertex b) const {
        auto it = arc_of->find(static_cast<int64_t>(a) * W + b);
        return it == arc_of->end() ? nullptr : &it->second;
    }

    bool spanning() const { return static_cast<int32_t>(path.size()) == W; }

    void set_path(std::vector<Vertex> p, std::vector<ArcMeta> a) {
        path = std::move(p);
        arcs = std::move(a);
        for (Vertex v : path) on_path[v] = 1;
    }

    // Extends the path through the whole cycle containing c, entering at c and
    // stopping at c's cycle predecessor.
    void absorb(Vertex c, const ArcMeta& entry) {
        arcs.push_back(entry);
        Vertex u = c;
        do {
            on_path[u] = 1;
            path.push_back(u);
            if (succ[u] != c) arcs.push_back(succ_arc[u]);
            u = succ[u];
        } while (u != c);
        ++stats->absorbs;
    }

    void check_state() const {
#ifndef NDEBUG
        assert(path.size() == arcs.size() + 1);
        int32_t covered = static_cast<int32_t>(path.size());
        std::vector<char> seen(W, 0);
        for (Vertex v : path) assert(on_path[v]);
        for (Vertex v = 0; v < W; ++v) {
            if (on_path[v] || seen[v]) continue;
            Vertex u = v;
            do {
                assert(!on_path[u] && !seen[u]);
                seen[u] = 1;
                ++covered;
                u = succ[u];
            } while (u != v);
        }
        assert(covered == W);
#endif
    }
};

enum class SweepResult { closed, absorbed, exhausted };

// One breadth-first sweep over rotation-reachable endpoints; every endpoint
// is discovered at most once, and each rotation chain keeps its breaking
// points distinct (the banned list is per chain, since the segment structure
// of a path depends only on its own rotation history). Commits the first
// absorb or (when the path spans) close it finds; `exhausted` means the
// frontier or the rotation budget ran out with no commit.
SweepResult rotation_sweep(Engine& eng) {
    struct Node {
        Vertex endpoint;
        int32_t parent;  // index into nodes, -1 for the root
        int32_t i, j;    // rotation that produced this node
        ArcMeta chord, back;
        std::vector<Vertex> banned;  // breaking points used along this chain
    };
    constexpr size_t kMaxLevel = 2048;

    std::vector<Node> nodes;
    std::vector<char> discovered(eng.W, 0);
    std::vector<int32_t> level{0};
    nodes.push_back({eng.path.back(), -1, 0, 0, {}, {}, {}});
    discovered[eng.path.back()] = 1;

    std::vector<std::vector<Vertex>> level_paths{eng.path};
    const Vertex v0 = eng.path.front();

    auto replay = [&](int32_t node_idx, std::vector<Vertex>& p, std::vector<ArcMeta>& a) {
        std::vector<int32_t> chain;
        for (int32_t x = node_idx; x >= 0; x = nodes[x].parent) chain.push_back(x);
        p = eng.path;
        a = eng.arcs;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            const Node& nd = nodes[*it];
            if (nd.parent < 0) continue;
            rotate_path(p, a, nd.i, nd.j, nd.chord, nd.back);
        }
    };

    std::vector<int32_t> ppos(eng.W, -1);
    while (!level.empty()) {
        std::vector<int32_t> next;
        std::vector<std::vector<Vertex>> next_paths;
        for (size_t li = 0; li < level.size(); ++li) {
            const int32_t ni = level[li];
            const Vertex w = nodes[ni].endpoint;
            const auto& P = level_paths[li];
            const int32_t l = static_cast<int32_t>(P.size()) - 1;

            // Absorption first: any clean arc into an off-path vertex grows
            // the structure immediately. Entries whose resulting endpoint (the
            // entry's cycle predecessor) has no clean out-arcs are skipped;
            // such a commit would strand the path.
            for (const auto& ca : (*eng.out)[w]) {
                if (!eng.on_path[ca.head]) {
                    Vertex entry_pred = ca.head;
                    while (eng.succ[entry_pred] != ca.head) entry_pred = eng.succ[entry_pred];
                    if ((*eng.out)[entry_pred].empty()) continue;
                    std::vector<Vertex> p;
                    std::vector<ArcMeta> a;
                    replay(ni, p, a);
                    eng.set_path(std::move(p), std::move(a));
                    eng.absorb(ca.head, ca.meta);
                    return SweepResult::absorbed;
                }
            }
            if (eng.spanning()) {
                if (const ArcMeta* m = eng.clean(w, v0)) {
                    std::vector<Vertex> p;
                    std::vector<ArcMeta> a;
                    replay(ni, p, a);
                    p.push_back(v0);  // sentinel; the caller pops it
                    a.push_back(*m);
                    eng.set_path(std::move(p), std::move(a));
                    return SweepResult::closed;
                }
            }

            // copied: pushing children may reallocate `nodes`
            const std::vector<Vertex> banned = nodes[ni].banned;
            auto is_banned = [&banned](Vertex v) {
                for (Vertex b : banned)
                    if (b == v) return true;
                return false;
            };
            for (int32_t x = 0; x <= l; ++x) ppos[P[x]] = x;
            for (const auto& back : (*eng.out)[w]) {
                int32_t iz = ppos[back.head];  // position of v_{i+1}
                if (iz < 2 || iz > l - 1) continue;
                Vertex xv = P[iz - 1];
                if (is_banned(xv)) continue;
                for (const auto& chord : (*eng.out)[xv]) {
                    int32_t j = ppos[chord.head];
                    if (j < iz + 1 || j > l) continue;
                    Vertex y = P[j - 1];
                    if (discovered[y] || y == xv || is_banned(y)) continue;
                    if (eng.budget-- <= 0) {
                        for (int32_t x = 0; x <= l; ++x) ppos[P[x]] = -1;
                        return SweepResult::exhausted;
                    }
                    ++eng.stats->rotations;
                    discovered[y] = 1;
                    if (next.size() < kMaxLevel) {
                        Node child{y, ni, iz - 1, j, chord.meta, back.meta, banned};
                        child.banned.push_back(xv);
                        child.banned.push_back(y);
                        nodes.push_back(std::move(child));
                        next.push_back(static_cast<int32_t>(nodes.size()) - 1);
                        auto np = P;
                        rotate_vertices(np, iz - 1, j);
                        next_paths.push_back(std::move(np));
                    }
                }
            }
            for (int32_t x = 0; x <= l; ++x) ppos[P[x]] = -1;
        }
        if (std::getenv("HAM_MERGE_TRACE"))
            std::fprintf(stderr, "    level done: next=%zu pathlen=%zu budget=%lld\n", next.size(),
                         level_paths.empty() ? 0 : level_paths[0].size(), (long long)eng.budget);
        level = std::move(next);
        level_paths = std::move(next_paths);
    }
    return SweepResult::exhausted;
}

// Closes the engine's spanning path using clean arcs only; on success the
// path ends with a duplicated v_0.
bool close_spanning_path(Engine& eng) {
    return rotation_sweep(eng) == SweepResult::closed;
}

int32_t count_blue(const std::vector<ArcMeta>& arcs) {
    int32_t b = 0;
    for (const auto& a : arcs) b += a.blue ? 1 : 0;
    return b;
}

}  // namespace

MergeResult merge_to_hamilton(const CompressedFactor& cf, const std::vector<PoolArc>& pool,
                              const ProcessConfig& cfg, Rng rng) {
    MergeResult res;
    MergeStats& st = res.stats;

    const int32_t W = static_cast<int32_t>(cf.working.size());
    std::vector<int32_t> idx(cf.alive.size(), -1);
    for (int32_t i = 0; i < W; ++i) idx[cf.working[i]] = i;

    // Clean pool arcs, deduplicated per ordered pair (earliest copy wins);
    // pairs available only as blue copies are counted but never usable.
    std::vector<PoolArc> sorted = pool;
    std::sort(sorted.begin(), sorted.end(), [](const PoolArc& a, const PoolArc& b) { return a.t < b.t; });
    std::unordered_map<int64_t, ArcMeta> arc_of;
    std::unordered_map<int64_t, char> blue_only;
    for (const auto& pa : sorted) {
        int64_t key = static_cast<int64_t>(idx[pa.tail]) * W + idx[pa.head];
        if (pa.blue) {
            if (!arc_of.count(key)) blue_only.try_emplace(key, 1);
        } else {
            arc_of.try_emplace(key, ArcMeta{pa.t, false});
            blue_only.erase(key);
        }
    }
    st.pool_arcs = static_cast<int64_t>(arc_of.size());
    st.pool_blue = static_cast<int64_t>(blue_only.size());

    std::vector<Vertex> succ(W), pred(W);
    std::vector<ArcMeta> succ_arc(W);
    for (int32_t i = 0; i < W; ++i) {
        Vertex v = cf.working[i];
        int32_t s = idx[cf.successor[v]];
        succ[i] = s;
        succ_arc[i] = cf.arc[v];
        pred[s] = i;
    }

    std::vector<std::vector<CleanArc>> out(W);
    {
        std::vector<std::pair<int64_t, ArcMeta>> flat(arc_of.begin(), arc_of.end());
        std::sort(flat.begin(), flat.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [key, meta] : flat)
            out[static_cast<int32_t>(key / W)].push_back({static_cast<Vertex>(key % W), meta});
    }

    auto cycle_ids = [&](const std::vector<Vertex>& sc) {
        std::vector<int32_t> cid(W, -1);
        int32_t nc = 0;
        for (int32_t v = 0; v < W; ++v) {
            if (cid[v] >= 0) continue;
            for (Vertex u = v; cid[u] < 0; u = sc[u]) cid[u] = nc;
            ++nc;
        }
        return std::pair{cid, nc};
    };

    // Phase 1: greedy joins. A clean arc (v, w) across two cycles combines
    // them when the partner arc (w^-, v^+) is also available clean.
    std::vector<std::pair<Time, int64_t>> scan;
    scan.reserve(arc_of.size());
    for (const auto& [key, meta] : arc_of) scan.push_back({meta.t, key});
    std::sort(scan.begin(), scan.end());
    auto [cid, ncycles] = cycle_ids(succ);
    bool progress = true;
    while (progress && ncycles > 1) {
        progress = false;
        for (const auto& [t, key] : scan) {
            Vertex v = static_cast<Vertex>(key / W), w = static_cast<Vertex>(key % W);
            if (cid[v] == cid[w]) continue;
            Vertex vp = succ[v], wm = pred[w];
            auto it = arc_of.find(static_cast<int64_t>(wm) * W + vp);
            if (it == arc_of.end()) continue;
            succ[v] = w;
            succ_arc[v] = arc_of.at(key);
            pred[w] = v;
            succ[wm] = vp;
            succ_arc[wm] = it->second;
            pred[vp] = wm;
            ++st.joins;
            std::tie(cid, ncycles) = cycle_ids(succ);
            progress = true;
            if (ncycles == 1) break;
        }
    }

    // Phase 2: open the largest cycle into a path, then alternate rotation
    // sweeps with absorptions until the path spans and closes. Each restart
    // reopens the post-join cover at a different place.
    for (int attempt = 0; attempt <= cfg.restarts; ++attempt) {
        Engine eng;
        eng.W = W;
        eng.out = &out;
        eng.arc_of = &arc_of;
        eng.budget = cfg.max_rotations > 0 ? cfg.max_rotations : 50LL * W;
        eng.stats = &st;
        eng.succ = succ;
        eng.succ_arc = succ_arc;
        eng.on_path.assign(W, 0);
        if (attempt > 0) ++st.restarts_used;
        st.blue_in_closed_cycle = 0;
        st.blue_eliminated = 0;

        auto [cid2, nc2] = cycle_ids(succ);
        std::vector<int32_t> size_of(nc2, 0);
        for (int32_t v = 0; v < W; ++v) ++size_of[cid2[v]];
        int32_t giant = static_cast<int32_t>(std::max_element(size_of.begin(), size_of.end()) - size_of.begin());
        int32_t gsize = size_of[giant];

        Vertex start = -1;
        for (int32_t v = 0; v < W && start < 0; ++v)
            if (cid2[v] == giant) start = v;
        Vertex p = start;
        for (int32_t skip = static_cast<int32_t>(rng.below(static_cast<uint64_t>(gsize))); skip > 0; --skip)
            p = succ[p];
        // Opening choice, varied across restarts so attempts explore different
        // paths: first try breaking ahead of a blue arc (it leaves the
        // structure for free), then a break whose endpoint can absorb a small
        // cycle immediately, then the plain offset. Dead endpoints (no clean
        // out-arcs) are avoided when possible.
        Vertex blue_break = -1, absorb_ready = -1, live = -1;
        Vertex u = p;
        for (int32_t k = 0; k < gsize; ++k) {
            if (!out[u].empty()) {
                if (live < 0) live = u;
                if (blue_break < 0 && succ_arc[u].blue) blue_break = u;
                if (absorb_ready < 0 && nc2 > 1) {
                    for (const auto& ca : out[u])
                        if (cid2[ca.head] != giant) {
                            absorb_ready = u;
                            break;
                        }
                }
            }
            u = succ[u];
        }
        Vertex break_at = p;
        if (attempt == 0 && blue_break >= 0) break_at = blue_break;
        else if (absorb_ready >= 0) break_at = absorb_ready;
        else if (live >= 0) break_at = live;

        if (std::getenv("HAM_MERGE_TRACE")) {
            std::fprintf(stderr, "attempt %d: cycles=%d giant=%d break_at=%d outdeg(break)=%zu\n", attempt,
                         nc2, gsize, break_at, out[break_at].size());
        }
        if (nc2 == 1) {
            // Already a spanning cycle; only blue removal may remain.
            res.cycle.clear();
            res.arcs.clear();
            Vertex q = break_at;
            do {
                res.cycle.push_back(q);
                res.arcs.push_back(succ_arc[q]);
                q = succ[q];
            } while (q != break_at);
        } else {
            std::vector<Vertex> path;
            std::vector<ArcMeta> arcs;
            Vertex q = succ[break_at];
            path.push_back(q);
            while (q != break_at) {
                arcs.push_back(succ_arc[q]);
                q = succ[q];
                path.push_back(q);
            }
            eng.set_path(std::move(path), std::move(arcs));
            eng.check_state();

            bool closed = false;
            while (eng.budget > 0) {
                SweepResult r = rotation_sweep(eng);
                if (std::getenv("HAM_MERGE_TRACE"))
                    std::fprintf(stderr, "  sweep: result=%d pathlen=%zu/%d endpoint_outdeg=%zu\n", (int)r,
                                 eng.path.size(), W, out[eng.path.back()].size());
                if (r == SweepResult::closed) {
                    closed = true;
                    break;
                }
                if (r == SweepResult::exhausted) break;
                eng.check_state();  // absorbed; continue from the longer path
            }
            if (!closed) {
                res.fail_reason = "endpoint frontier or rotation budget exhausted";
                continue;
            }
            res.cycle = eng.path;
            res.cycle.pop_back();  // drop the duplicated v_0 sentinel
            res.arcs = eng.arcs;
        }

        // Phase 3: remove blue arcs from the closed cycle by re-rotation.
        // Arcs are tried round-robin: a stubborn one (its head poorly served
        // by pool in-arcs) often unlocks after the cycle is re-rotated by the
        // elimination of another.
        st.blue_in_closed_cycle = count_blue(res.arcs);
        bool progress2 = true;
        while (count_blue(res.arcs) > 0 && progress2) {
            progress2 = false;
            const int32_t L = static_cast<int32_t>(res.cycle.size());
            for (int32_t b = 0; b < L && !progress2; ++b) {
                if (!res.arcs[b].blue) continue;
                // Reopen as a path from the blue arc's head around to its tail.
                std::vector<Vertex> path;
                std::vector<ArcMeta> arcs;
                for (int32_t k = 1; k <= L; ++k) path.push_back(res.cycle[(b + k) % L]);
                for (int32_t k = 1; k < L; ++k) arcs.push_back(res.arcs[(b + k) % L]);
                Engine eb;
                eb.W = W;
                eb.out = &out;
                eb.arc_of = &arc_of;
                eb.budget = cfg.max_rotations > 0 ? cfg.max_rotations : 50LL * W;
                eb.stats = &st;
                eb.succ.assign(W, -1);
                eb.succ_arc.assign(W, {});
                eb.on_path.assign(W, 0);
                eb.set_path(std::move(path), std::move(arcs));
                if (!close_spanning_path(eb)) continue;
                ++st.blue_eliminated;
                res.cycle = eb.path;
                res.cycle.pop_back();
                res.arcs = eb.arcs;
                progress2 = true;
            }
        }
        if (count_blue(res.arcs) > 0) {
            res.fail_reason = "blue-elimination exhausted rotation budget";
            continue;
        }

        for (auto& v : res.cycle) v = cf.working[v];
        res.ok = true;
        res.fail_reason.clear();
        return res;
    }

    if (res.fail_reason.empty()) res.fail_reason = "merge failed";
    res.cycle.clear();
    res.arcs.clear();
    return res;
}

}  // namespace ham
