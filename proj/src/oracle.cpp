#include "ham/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace ham {

void Digraph::sort_arcs() {
    for (auto& l : adj)
        std::sort(l.begin(), l.end(), [](const Arc& a, const Arc& b) {
            return a.head != b.head ? a.head < b.head : a.blue < b.blue;
        });
}

ForbiddenPairs Digraph::blue_only_pairs() const {
    std::unordered_set<int64_t> has_clean, seen;
    for (Vertex u = 0; u < n; ++u)
        for (const Arc& a : adj[u]) {
            int64_t k = pair_key(u, a.head, n);
            seen.insert(k);
            if (!a.blue) has_clean.insert(k);
        }
    ForbiddenPairs res;
    for (int64_t k : seen)
        if (!has_clean.count(k)) res.insert(k);
    return res;
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
    for (const Arc& a : adj[u])
        if (a.head == v) return true;
    return false;
}

VerifyResult verify_cycle(const Digraph& d, const std::vector<Vertex>& cycle,
                          const ForbiddenPairs& forbidden) {
    if (cycle.empty()) return {false, "empty"};
    if (static_cast<Vertex>(cycle.size()) != d.n) return {false, "length"};
    std::vector<char> seen(d.n, 0);
    for (Vertex v : cycle) {
        if (v < 0 || v >= d.n) return {false, "out-of-range"};
        if (seen[v]) return {false, "duplicate"};
        seen[v] = 1;
    }
    for (size_t i = 0; i < cycle.size(); ++i) {
        Vertex u = cycle[i];
        Vertex v = cycle[(i + 1) % cycle.size()];
        if (!d.has_arc(u, v)) return {false, "missing-arc"};
        if (forbidden.count(pair_key(u, v, d.n))) return {false, "forbidden-arc"};
    }
    return {true, ""};
}

std::optional<std::vector<Vertex>> held_karp(const Digraph& d, const ForbiddenPairs& forbidden) {
    const Vertex n = d.n;
    if (n > 20) throw std::invalid_argument("held_karp: n > 20 refused");
    if (n == 0) return std::nullopt;
    if (n == 1) return std::nullopt;  // a loop is not a Hamilton cycle

    std::vector<uint32_t> usable(n, 0);
    for (Vertex u = 0; u < n; ++u)
        for (const auto& a : d.adj[u])
            if (!forbidden.count(pair_key(u, a.head, n))) usable[u] |= 1u << a.head;

    const uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    // dp[mask] = bitset of possible last vertices of a 0-started path on mask.
    std::vector<uint32_t> dp(static_cast<size_t>(full) + 1, 0);
    std::vector<uint8_t> parent(static_cast<size_t>(n) * (static_cast<size_t>(full) + 1), 0xff);
    dp[1] = 1;  // at vertex 0, mask {0}
    for (uint32_t mask = 1; mask <= full; ++mask) {
        if (!(mask & 1) || dp[mask] == 0) continue;
        uint32_t lasts = dp[mask];
        while (lasts) {
            Vertex u = static_cast<Vertex>(__builtin_ctz(lasts));
            lasts &= lasts - 1;
            uint32_t nexts = usable[u] & ~mask;
            while (nexts) {
                Vertex v = static_cast<Vertex>(__builtin_ctz(nexts));
                nexts &= nexts - 1;
                uint32_t m2 = mask | (1u << v);
                if (!(dp[m2] & (1u << v))) {
                    dp[m2] |= 1u << v;
                    parent[static_cast<size_t>(v) * (full + 1) + m2] = static_cast<uint8_t>(u);
                }
            }
        }
    }
    uint32_t closers = dp[full];
    Vertex last = -1;
    while (closers) {
        Vertex u = static_cast<Vertex>(__builtin_ctz(closers));
        closers &= closers - 1;
        if (usable[u] & 1u) {  // arc back to 0
            last = u;
            break;
        }
    }
    if (last < 0 || (n > 1 && last == 0)) return std::nullopt;

    std::vector<Vertex> cycle(n);
    uint32_t mask = full;
    Vertex u = last;
    for (Vertex i = n - 1; i >= 0; --i) {
        cycle[i] = u;
        uint8_t pu = parent[static_cast<size_t>(u) * (full + 1) + mask];
        mask &= ~(1u << u);
        u = pu == 0xff ? 0 : static_cast<Vertex>(pu);
    }
    return cycle;
}

}  // namespace ham
