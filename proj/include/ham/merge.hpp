#pragma once

#include <string>
#include <vector>

#include "ham/compress.hpp"
#include "ham/events.hpp"
#include "ham/rng.hpp"

namespace ham {

// An unconsumed Step II A-A oriented edge, translated into compressed ids.
struct PoolArc {
    Vertex tail = 0, head = 0;
    Time t = 0;
    bool blue = false;
};

struct MergeStats {
    int64_t pool_arcs = 0;       // distinct usable (clean) arcs
    int64_t pool_blue = 0;       // arcs available only as blue copies
    int32_t joins = 0;
    int32_t absorbs = 0;
    int32_t restarts_used = 0;
    int64_t rotations = 0;
    int32_t blue_in_closed_cycle = 0;  // before the elimination phase
    int32_t blue_eliminated = 0;
};

struct MergeResult {
    bool ok = false;
    std::vector<Vertex> cycle;  // compressed ids; arcs[i]: cycle[i] -> cycle[i+1 mod]
    std::vector<ArcMeta> arcs;
    std::string fail_reason;
    MergeStats stats;
};

// Joins the compressed factor's cycles into one directed Hamilton cycle using
// only clean pool arcs: greedy two-arc joins first, then rotation-extension
// (breadth-first over path endpoints, distinct breaking points) with cycle
// absorption and closing, and finally removal of any blue factor arcs from
// the closed cycle by re-rotation.
MergeResult merge_to_hamilton(const CompressedFactor& cf, const std::vector<PoolArc>& pool,
                              const ProcessConfig& cfg, Rng rng);

// One rotation of an open path, exposed for direct testing. The path is
// (v_0..v_l) with arcs[x] describing v_x -> v_{x+1}; pivots are the pool arcs
// (v_i, v_j) [chord] and (v_l, v_{i+1}) [back edge], 1 <= i and i+1 < j <= l.
// Produces (v_0..v_i, v_j..v_l, v_{i+1}..v_{j-1}); the new endpoint is
// v_{j-1} and v_i, v_{j-1} are the breaking points.
void rotate_path(std::vector<Vertex>& path, std::vector<ArcMeta>& arcs, int32_t i, int32_t j,
                 ArcMeta chord, ArcMeta back);

}  // namespace ham
