#pragma once

#include <optional>
#include <vector>

#include "ham/classify.hpp"
#include "ham/events.hpp"
#include "ham/orient.hpp"

namespace ham {

// The almost-5-in-5-out subgraph: per-vertex OUT/IN neighbor slot lists
// (size k for saturated and blossomed vertices, 1 for restricted ones) plus
// the event indices they consume. Slots keep their source event, so repeated
// targets are visible; the induced arc set is deduplicated in Bip.
struct FiveInOut {
    std::vector<std::vector<IncidentSlot>> out, in;
    std::vector<Time> consumed;  // sorted, unique

    int64_t arc_count() const {
        int64_t s = 0;
        for (const auto& v : out) s += static_cast<int64_t>(v.size());
        for (const auto& v : in) s += static_cast<int64_t>(v.size());
        return s;
    }
};

struct FiveInOutResult {
    std::optional<FiveInOut> fio;
    std::vector<Vertex> deficit;  // vertices that could not fill their slots
    bool ok() const { return fio.has_value(); }
};

// Requires a violation-free classification (checked by the caller). Saturated
// vertices draw from their first sat_threshold first-vertex Step I edges,
// skipping those whose second vertex is restricted; blossomed vertices draw
// from their first 2k A-B Step II edges; partially-blossomed and bud vertices
// get the two edges designated by their case.
FiveInOutResult build_five_in_out(const Orienter& alg, const Classification& cls,
                                  const ProcessConfig& cfg);

// Bipartite double cover of FIVEINOUT: left V, right V*, one undirected edge
// (u, v*) per directed arc u->v. Perfect matchings correspond to 1-factors.
struct BipEdge {
    Vertex u = 0;  // left
    Vertex v = 0;  // right (base id of v*)
    Time t = 0;
    bool blue = false;
};

struct Bip {
    Vertex n = 0;
    std::vector<BipEdge> edges;
    std::vector<std::vector<int32_t>> adj;  // left -> edge indices, heads ascending
    std::vector<char> in_A_hat;             // base-id membership of A-hat
    std::vector<Vertex> A_hat;              // sorted

    std::vector<int32_t> left_degree() const;
    std::vector<int32_t> right_degree() const;
};

Bip build_bip(const FiveInOut& fio, const Classification& cls, Vertex n);

}  // namespace ham
