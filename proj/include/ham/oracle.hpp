#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "ham/events.hpp"

namespace ham {

// Arc-level forbidden set: an ordered pair is forbidden when no usable copy
// of it exists (for the pipeline: pairs whose every copy is blue).
using ForbiddenPairs = std::unordered_set<int64_t>;

inline int64_t pair_key(Vertex u, Vertex v, Vertex n) {
    return static_cast<int64_t>(u) * n + v;
}

struct Digraph {
    Vertex n = 0;
    struct Arc {
        Vertex head;
        bool blue;
    };
    std::vector<std::vector<Arc>> adj;  // parallel arcs kept with multiplicity

    explicit Digraph(Vertex n_) : n(n_), adj(n_) {}
    Digraph() = default;

    void add_arc(Vertex tail, Vertex head, bool blue = false) {
        if (tail == head) return;  // loops excluded
        adj[tail].push_back({head, blue});
    }

    void sort_arcs();

    // Pairs with no clean copy; the forbidden set for "avoid blue" queries.
    ForbiddenPairs blue_only_pairs() const;

    bool has_arc(Vertex u, Vertex v) const;
};

struct VerifyResult {
    bool ok = false;
    std::string reason;
};

// True iff `cycle` visits every vertex exactly once, every consecutive pair
// (including the wrap) is an arc of the digraph, and no pair is forbidden.
VerifyResult verify_cycle(const Digraph& d, const std::vector<Vertex>& cycle,
                          const ForbiddenPairs& forbidden);

// Exact directed Hamiltonicity by bitmask dynamic programming over subsets.
// Refuses n > 20 (memory: n * 2^n parent bytes, ~21 MB at the cap). Returns a
// Hamilton cycle avoiding forbidden pairs iff one exists; deterministic.
std::optional<std::vector<Vertex>> held_karp(const Digraph& d, const ForbiddenPairs& forbidden);

}  // namespace ham
