#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "ham/factor.hpp"

namespace ham {

// One compression step: (v_minus, v_red, v_plus) replaced by v_new, which
// takes the in-neighbors of v_minus and the out-neighbors of v_plus. The two
// hidden factor arcs are kept for lift-back.
struct CompressionRecord {
    Vertex v_minus = 0, v_red = 0, v_plus = 0, v_new = 0;
    ArcMeta in_arc, out_arc;  // (v_minus -> v_red), (v_red -> v_plus)
};

// Invertible record of the whole compression, plus the role-translation maps
// that carry pool arcs into the compressed id space. New ids are allocated
// past the original n, so plain vectors stay usable.
struct CompressionMap {
    Vertex orig_n = 0;
    Vertex id_cap = 0;  // one past the largest allocated id
    std::vector<CompressionRecord> records;
    std::unordered_map<Vertex, Vertex> tail_map, head_map;

    // Translation of a pool arc endpoint; nullopt when the endpoint was
    // swallowed (arcs out of v_minus / into v_plus / touching v_red are lost).
    std::optional<Vertex> translate_tail(Vertex v) const;
    std::optional<Vertex> translate_head(Vertex v) const;
};

// A 1-factor over the surviving id space.
struct CompressedFactor {
    std::vector<Vertex> working;     // alive ids, ascending
    std::vector<char> alive;         // indexed by id < id_cap
    std::vector<Vertex> successor;   // id-indexed; -1 when dead
    std::vector<ArcMeta> arc;        // meta of v -> successor[v]
    int64_t cycle_count = 0;
};

struct CompressResult {
    std::optional<CompressedFactor> factor;
    CompressionMap map;
    Vertex stuck_at = -1;  // red vertex on a 2-cycle, when compression fails
    bool ok() const { return factor.has_value(); }
};

// Repeatedly compresses the lowest-id red (non-A-hat) vertex until none
// remain. Requires the 9/10 proportion to have been checked, which rules out
// red 2-cycles; hitting one anyway is reported, not silently mangled.
CompressResult compress_factor(const OneFactor& factor, const std::vector<char>& in_A_hat);

// Expands compressed vertices back to their hidden segments, reverse record
// order. `cycle` visits each working vertex once; `arcs[i]` describes the arc
// cycle[i] -> cycle[i+1 mod]. Returns the cycle over original vertices.
void decompress_cycle(std::vector<Vertex>& cycle, std::vector<ArcMeta>& arcs,
                      const CompressionMap& map);

}  // namespace ham
