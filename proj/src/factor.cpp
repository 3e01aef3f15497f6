#include "ham/factor.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace ham {

namespace {

constexpr int32_t kInf = std::numeric_limits<int32_t>::max();

// Hopcroft-Karp on the bipartite double cover. Left/right are both [0, n).
struct HopcroftKarp {
    const Bip& bip;
    std::vector<int32_t> match_l, match_r;  // edge indices, -1 if free
    std::vector<int32_t> dist;

    explicit HopcroftKarp(const Bip& b)
        : bip(b), match_l(b.n, -1), match_r(b.n, -1), dist(b.n) {}

    bool bfs() {
        std::queue<Vertex> q;
        bool found = false;
        for (Vertex u = 0; u < bip.n; ++u) {
            if (match_l[u] < 0) {
                dist[u] = 0;
                q.push(u);
            } else {
                dist[u] = kInf;
            }
        }
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (int32_t ei : bip.adj[u]) {
                Vertex v = bip.edges[ei].v;
                int32_t me = match_r[v];
                if (me < 0) {
                    found = true;
                } else {
                    Vertex u2 = bip.edges[me].u;
                    if (dist[u2] == kInf) {
                        dist[u2] = dist[u] + 1;
                        q.push(u2);
                    }
                }
            }
        }
        return found;
    }

    bool dfs(Vertex u) {
        for (int32_t ei : bip.adj[u]) {
            Vertex v = bip.edges[ei].v;
            int32_t me = match_r[v];
            if (me < 0 || (dist[bip.edges[me].u] == dist[u] + 1 && dfs(bip.edges[me].u))) {
                match_l[u] = ei;
                match_r[v] = ei;
                return true;
            }
        }
        dist[u] = kInf;
        return false;
    }

    int32_t run() {
        int32_t size = 0;
        while (bfs())
            for (Vertex u = 0; u < bip.n; ++u)
                if (match_l[u] < 0 && dfs(u)) ++size;
        return size;
    }
};

}  // namespace

MatchingResult max_bipartite_matching(const Bip& bip) {
    HopcroftKarp hk(bip);
    MatchingResult res;
    res.size = hk.run();
    res.match_edge = hk.match_l;
    res.perfect = res.size == bip.n;
    if (!res.perfect) {
        // Hall witness: left vertices reachable from a free left vertex by
        // alternating paths; their neighborhood is fully matched into them.
        std::vector<char> seen(bip.n, 0);
        std::queue<Vertex> q;
        for (Vertex u = 0; u < bip.n; ++u)
            if (hk.match_l[u] < 0) {
                seen[u] = 1;
                q.push(u);
            }
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (int32_t ei : bip.adj[u]) {
                int32_t me = hk.match_r[bip.edges[ei].v];
                if (me >= 0 && !seen[bip.edges[me].u]) {
                    seen[bip.edges[me].u] = 1;
                    q.push(bip.edges[me].u);
                }
            }
        }
        for (Vertex u = 0; u < bip.n; ++u)
            if (seen[u]) res.witness.push_back(u);
    }
    return res;
}

void OneFactor::decompose() {
    const Vertex n = static_cast<Vertex>(successor.size());
    cycles.clear();
    cycle_of.assign(n, -1);
    for (Vertex v = 0; v < n; ++v) {
        if (cycle_of[v] >= 0) continue;
        int32_t id = static_cast<int32_t>(cycles.size());
        std::vector<Vertex> cyc;
        Vertex u = v;
        do {
            cycle_of[u] = id;
            cyc.push_back(u);
            u = successor[u];
        } while (u != v);
        cycles.push_back(std::move(cyc));
    }
}

RandomizedFactorResult randomized_perfect_matching(const Bip& bip, Rng& tau_rng) {
    // Uniform tau on A-hat*, identity elsewhere.
    const Vertex n = bip.n;
    std::vector<Vertex> tau(n);
    std::iota(tau.begin(), tau.end(), 0);
    const auto& ah = bip.A_hat;
    for (size_t i = ah.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(tau_rng.below(i));
        std::swap(tau[ah[i - 1]], tau[ah[j]]);
    }

    // Relabel the right side by tau and rebuild the adjacency in the relabeled
    // graph's own canonical order, so the matcher sees only tau(Gamma).
    Bip permuted;
    permuted.n = n;
    permuted.edges.reserve(bip.edges.size());
    for (const auto& e : bip.edges) {
        BipEdge pe = e;
        pe.v = tau[e.v];
        permuted.edges.push_back(pe);
    }
    std::vector<int32_t> order(permuted.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
        const auto& ea = permuted.edges[a];
        const auto& eb = permuted.edges[b];
        return ea.u != eb.u ? ea.u < eb.u : ea.v < eb.v;
    });
    permuted.adj.resize(n);
    for (int32_t ei : order) permuted.adj[permuted.edges[ei].u].push_back(ei);

    MatchingResult m = max_bipartite_matching(permuted);
    RandomizedFactorResult res;
    if (!m.perfect) {
        // The witness is tau-independent as a left set; report it as-is.
        res.failure = std::move(m);
        return res;
    }

    OneFactor f;
    f.successor.resize(n);
    f.arc.resize(n);
    for (Vertex u = 0; u < n; ++u) {
        const BipEdge& orig = bip.edges[m.match_edge[u]];  // indices preserved
        f.successor[u] = orig.v;                           // tau^{-1} pullback
        f.arc[u] = {orig.t, orig.blue};
    }
    f.decompose();
    res.factor = std::move(f);
    return res;
}

FactorQuality factor_quality(const OneFactor& factor, const std::vector<char>& in_A_hat) {
    FactorQuality q;
    const Vertex n = static_cast<Vertex>(factor.successor.size());
    q.cycle_count = static_cast<int64_t>(factor.cycles.size());
    q.max_cycles = 2.0 * std::log(static_cast<double>(n));
    bool proportion_ok = true;
    for (size_t i = 0; i < factor.cycles.size(); ++i) {
        const auto& c = factor.cycles[i];
        int64_t sat = 0;
        for (Vertex v : c) sat += in_A_hat[v] ? 1 : 0;
        int64_t need = (9 * static_cast<int64_t>(c.size()) + 9) / 10;  // ceil(9|C|/10)
        double frac = static_cast<double>(sat) / static_cast<double>(c.size());
        q.min_sat_fraction = std::min(q.min_sat_fraction, frac);
        if (sat < need && !q.witness_cycle) {
            q.witness_cycle = static_cast<int32_t>(i);
            proportion_ok = false;
        }
    }
    q.pass = proportion_ok && static_cast<double>(q.cycle_count) <= q.max_cycles;
    return q;
}

}  // namespace ham
