#include <algorithm>
#include <map>
#include <numeric>

#include "doctest.h"
#include "ham/factor.hpp"

using namespace ham;

namespace {

Bip make_bip(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& arcs,
             const std::vector<Vertex>& a_hat) {
    Bip bip;
    bip.n = n;
    Time t = 1;
    for (auto [u, v] : arcs) bip.edges.push_back({u, v, t++, false});
    std::sort(bip.edges.begin(), bip.edges.end(), [](const BipEdge& a, const BipEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    bip.adj.resize(n);
    for (size_t i = 0; i < bip.edges.size(); ++i)
        bip.adj[bip.edges[i].u].push_back(static_cast<int32_t>(i));
    bip.in_A_hat.assign(n, 0);
    for (Vertex v : a_hat) bip.in_A_hat[v] = 1;
    bip.A_hat = a_hat;
    std::sort(bip.A_hat.begin(), bip.A_hat.end());
    return bip;
}

// Independent reference for Pi: delete non-A-hat vertices from every cycle.
std::vector<Vertex> project_factor(const std::vector<Vertex>& succ, const std::vector<char>& in_hat) {
    const Vertex n = static_cast<Vertex>(succ.size());
    std::vector<Vertex> pi(n, -1);
    for (Vertex v = 0; v < n; ++v) {
        if (!in_hat[v]) continue;
        Vertex u = succ[v];
        while (!in_hat[u]) u = succ[u];
        pi[v] = u;
    }
    return pi;
}

}  // namespace

TEST_CASE("a single directed cycle admits exactly its forced matching") {
    Bip bip = make_bip(3, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2});
    auto m = max_bipartite_matching(bip);
    REQUIRE(m.perfect);
    CHECK(bip.edges[m.match_edge[0]].v == 1);
    CHECK(bip.edges[m.match_edge[1]].v == 2);
    CHECK(bip.edges[m.match_edge[2]].v == 0);
}

TEST_CASE("K33 minus a perfect matching still has a perfect matching") {
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (Vertex u = 0; u < 3; ++u)
        for (Vertex v = 0; v < 3; ++v)
            if (u != v) arcs.push_back({u, v});
    Bip bip = make_bip(3, arcs, {0, 1, 2});
    auto m = max_bipartite_matching(bip);
    CHECK(m.perfect);
}

TEST_CASE("Hall violation yields a deficient-set witness") {
    // three left vertices whose OUT targets all collapse to right vertex 0
    Bip bip = make_bip(3, {{0, 0}, {1, 0}, {2, 0}}, {});
    auto m = max_bipartite_matching(bip);
    CHECK(!m.perfect);
    CHECK(m.size == 1);
    // witness: all three lefts compete for a single right vertex
    CHECK(m.witness.size() == 3);
}

TEST_CASE("empty A-hat reduces the randomized matcher to the deterministic one") {
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = 0; v < 4; ++v)
            if (v != ((u + 2) % 4)) arcs.push_back({u, v});
    Bip bip = make_bip(4, arcs, {});
    auto det = max_bipartite_matching(bip);
    REQUIRE(det.perfect);
    Rng tau(123);
    auto rnd = randomized_perfect_matching(bip, tau);
    REQUIRE(rnd.ok());
    for (Vertex u = 0; u < 4; ++u) CHECK(rnd.factor->successor[u] == bip.edges[det.match_edge[u]].v);
}

TEST_CASE("matching failure propagates through the randomized matcher") {
    Bip bip = make_bip(3, {{0, 0}, {1, 0}, {2, 0}}, {0});
    Rng tau(5);
    auto rnd = randomized_perfect_matching(bip, tau);
    CHECK(!rnd.ok());
    CHECK(rnd.failure.size == 1);
    CHECK(!rnd.failure.witness.empty());
}

TEST_CASE("factor cycles equal the permutation's cycle structure") {
    OneFactor f;
    f.successor = {1, 0, 3, 4, 2, 5};
    f.arc.resize(6);
    f.decompose();
    REQUIRE(f.cycles.size() == 3);
    std::vector<size_t> sizes;
    for (const auto& c : f.cycles) sizes.push_back(c.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{1, 2, 3});
    for (Vertex v = 0; v < 6; ++v) CHECK(f.cycle_of[v] == f.cycle_of[f.successor[v]]);
}

TEST_CASE("Pi commutes with permutations fixing the complement of A-hat") {
    // sigma . Pi(phi) = Pi(sigma . phi), checked by enumeration on random
    // factors over 8 vertices with sigma acting on A-hat only.
    Rng rng(2718);
    for (int trial = 0; trial < 2000; ++trial) {
        const Vertex n = 8;
        std::vector<Vertex> succ(n);
        std::iota(succ.begin(), succ.end(), 0);
        for (Vertex i = n - 1; i > 0; --i)
            std::swap(succ[i], succ[static_cast<Vertex>(rng.below(i + 1))]);
        std::vector<char> in_hat(n, 0);
        std::vector<Vertex> hat;
        for (Vertex v = 0; v < n; ++v)
            if (rng.coin()) {
                in_hat[v] = 1;
                hat.push_back(v);
            }
        // every cycle needs an A-hat vertex for Pi to preserve structure
        bool ok = true;
        std::vector<char> seen(n, 0);
        for (Vertex v = 0; v < n && ok; ++v) {
            if (seen[v]) continue;
            bool has = false;
            for (Vertex u = v; !seen[u]; u = succ[u]) {
                seen[u] = 1;
                has = has || in_hat[u];
            }
            ok = has;
        }
        if (!ok || hat.size() < 2) continue;

        // sigma: random permutation of A-hat, identity elsewhere
        std::vector<Vertex> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::vector<Vertex> perm = hat;
        for (size_t i = perm.size() - 1; i > 0; --i)
            std::swap(perm[i], perm[static_cast<size_t>(rng.below(i + 1))]);
        for (size_t i = 0; i < hat.size(); ++i) sigma[hat[i]] = perm[i];

        auto pi = project_factor(succ, in_hat);
        // sigma . phi means composing sigma after phi
        std::vector<Vertex> sigma_phi(n);
        for (Vertex v = 0; v < n; ++v) sigma_phi[v] = sigma[succ[v]];
        auto lhs = project_factor(sigma_phi, in_hat);
        for (Vertex v = 0; v < n; ++v) {
            if (!in_hat[v]) continue;
            CHECK(lhs[v] == sigma[pi[v]]);
        }
    }
}

TEST_CASE("the matcher is a fixed function of the relabeled graph") {
    std::vector<std::pair<Vertex, Vertex>> arcs;
    Rng rng(99);
    for (Vertex u = 0; u < 6; ++u)
        for (int k = 0; k < 3; ++k) arcs.push_back({u, static_cast<Vertex>(rng.below(6))});
    Bip bip = make_bip(6, arcs, {0, 1, 2, 3, 4, 5});
    auto m1 = max_bipartite_matching(bip);
    auto m2 = max_bipartite_matching(bip);
    CHECK(m1.match_edge == m2.match_edge);
}

TEST_CASE("identical tau stream reproduces the randomized factor") {
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (Vertex u = 0; u < 5; ++u)
        for (Vertex v = 0; v < 5; ++v) arcs.push_back({u, v});
    Bip bip = make_bip(5, arcs, {0, 1, 2, 3, 4});
    Rng t1(42), t2(42);
    auto a = randomized_perfect_matching(bip, t1);
    auto b = randomized_perfect_matching(bip, t2);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a.factor->successor == b.factor->successor);
}

TEST_CASE("quality: ceiling arithmetic rejects a 2-cycle with one outside vertex") {
    OneFactor f;
    f.successor = {1, 0, 3, 2};
    f.arc.resize(4);
    f.decompose();
    std::vector<char> in_hat{1, 0, 1, 1};  // vertex 1 outside A-hat
    auto q = factor_quality(f, in_hat);
    CHECK(!q.pass);
    REQUIRE(q.witness_cycle.has_value());
    CHECK(f.cycles[static_cast<size_t>(*q.witness_cycle)].size() == 2);
}

TEST_CASE("quality: a spanning cycle inside A-hat passes") {
    OneFactor f;
    f.successor = {1, 2, 3, 4, 0};
    f.arc.resize(5);
    f.decompose();
    std::vector<char> in_hat(5, 1);
    auto q = factor_quality(f, in_hat);
    CHECK(q.pass);
    CHECK(q.cycle_count == 1);
    CHECK(q.min_sat_fraction == doctest::Approx(1.0));
}

TEST_CASE("randomized matching spreads over the A-hat permutations") {
    // Small smoke version of the uniformity law: the k=3 family whose
    // projected factor ranges over S_3.
    const Vertex k = 3;
    const Vertex n = k + 2;  // vertices k, k+1 are outside A-hat
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < k; ++v) arcs.push_back({u, v});
    arcs.push_back({0, k});      // right a* reachable only from left 0
    arcs.push_back({1, k + 1});  // right b* reachable only from left 1
    std::vector<Vertex> hat;
    for (Vertex v = 0; v < k; ++v) hat.push_back(v);
    Bip bip = make_bip(n, arcs, hat);

    Rng tau(20240901);
    std::map<std::vector<Vertex>, int> counts;
    const int N = 6000;
    for (int i = 0; i < N; ++i) {
        auto rf = randomized_perfect_matching(bip, tau);
        REQUIRE(rf.ok());
        auto pi = project_factor(rf.factor->successor, bip.in_A_hat);
        counts[std::vector<Vertex>(pi.begin(), pi.begin() + k)]++;
    }
    REQUIRE(counts.size() == 6);  // all of S_3 appears
    double expected = static_cast<double>(N) / 6.0;
    double chi2 = 0;
    for (const auto& [key, c] : counts) {
        double d = c - expected;
        chi2 += d * d / expected;
    }
    CHECK(chi2 < 20.5);  // p = 0.001 cutoff at dof 5; seed is fixed
}
