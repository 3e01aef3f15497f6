#pragma once

#include <optional>
#include <vector>

#include "ham/fiveinout.hpp"
#include "ham/rng.hpp"

namespace ham {

struct ArcMeta {
    Time t = 0;
    bool blue = false;
};

struct MatchingResult {
    bool perfect = false;
    int32_t size = 0;
    // For each left vertex, the matched edge index into bip.edges, or -1.
    std::vector<int32_t> match_edge;
    // When imperfect: a left set S with |N(S)| < |S| (Hall witness).
    std::vector<Vertex> witness;
};

// Deterministic maximum-cardinality matching (layered augmenting paths,
// vertices scanned in ascending id, neighbors in adjacency order). The
// determinism is load-bearing: the randomized matcher's law depends on the
// underlying matcher being a fixed function of the relabeled graph.
MatchingResult max_bipartite_matching(const Bip& bip);

// A directed 1-factor, i.e. a permutation of the working vertex set with its
// cycle decomposition and per-arc provenance.
struct OneFactor {
    std::vector<Vertex> successor;
    std::vector<ArcMeta> arc;  // arc[v] describes v -> successor[v]
    std::vector<std::vector<Vertex>> cycles;
    std::vector<int32_t> cycle_of;

    void decompose();  // fills cycles/cycle_of from successor
};

// Lemma 5.3 randomization: draw a uniform permutation tau of A-hat*, relabel,
// run the deterministic matcher, pull the matching back by tau^{-1}. On a
// bipartite graph whose law is tau-invariant this makes the A-hat-restricted
// permutation uniform, which bounds the cycle count.
struct RandomizedFactorResult {
    std::optional<OneFactor> factor;
    MatchingResult failure;  // populated when no perfect matching exists
    bool ok() const { return factor.has_value(); }
};

RandomizedFactorResult randomized_perfect_matching(const Bip& bip, Rng& tau_rng);

struct FactorQuality {
    int64_t cycle_count = 0;
    double max_cycles = 0;  // 2 log n
    double min_sat_fraction = 1.0;
    std::optional<int32_t> witness_cycle;  // first cycle violating the 9/10 rule
    bool pass = false;
};

// Proposition 5.2 checks: at most 2 log n cycles and at least ceil(9|C|/10)
// A-hat vertices on every cycle C.
FactorQuality factor_quality(const OneFactor& factor, const std::vector<char>& in_A_hat);

}  // namespace ham
