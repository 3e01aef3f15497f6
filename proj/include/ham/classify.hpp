#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ham/events.hpp"
#include "ham/orient.hpp"

namespace ham {

enum class VertexClass : uint8_t { saturated, blossom, partial, bud, violation };

// Priority-ordered subcases of partially-blossomed vertices.
enum class PartialCase : uint8_t { none, c1, c2, c3, c4, c5, c6 };

const char* to_string(VertexClass c);
const char* to_string(PartialCase c);

struct Classification {
    std::vector<VertexClass> cls;
    std::vector<PartialCase> pcase;
    std::vector<Vertex> A, B1, B2;
    std::vector<Vertex> violations;  // subset of B2; never silently dropped
    std::vector<std::string> violation_reasons;
    std::vector<char> in_B2;  // n-sized membership mask

    bool clean() const { return violations.empty(); }
};

// Post-hoc classification of every vertex at the trial horizon. A vertex is
// saturated (A), blossoms (B1: at least blossom_threshold A-B edges in
// Step II), or is restricted (B2: partially-blossomed, bud, or a violation of
// the exhaustiveness claim, which can happen at desk scale).
Classification classify_vertices(const Orienter& alg, const ProcessConfig& cfg);

struct TypicalityReport {
    // (i) |A| and |B1| against the n(1 - (loglog n)^12 / log^2 n) bounds
    bool i_ok = false;
    double class_bound = 0;  // the (loglog n)^12 / log^2 n * n quantity
    int64_t a_size = 0, b1_size = 0;
    // (ii) |B2| <= log^13 n
    bool ii_ok = false;
    double b2_bound = 0;
    int64_t b2_size = 0;
    // (iii) min degree 2 without Step II B-B edges
    bool iii_ok = false;
    int64_t deficient_without_bb = 0;
    // (iv) every restricted vertex partial or bud
    bool iv_ok = false;
    int64_t violation_count = 0;
    // (v) pairwise B2 distance >= 3 in the revealed graph
    bool v_ok = false;
    std::optional<std::pair<Vertex, Vertex>> close_pair;
    // (vi) at least (1/3) n log n unrevealed Step II A-A events
    bool vi_ok = false;
    int64_t unrevealed_aa = 0;
    double vi_bound = 0;

    bool typical() const { return i_ok && ii_ok && iii_ok && iv_ok && v_ok && vi_ok; }
};

TypicalityReport typicality(const Classification& cls, const Orienter& alg,
                            const std::vector<EdgeEvent>& events,
                            const std::vector<OrientedEdge>& oriented,
                            const ProcessConfig& cfg);

}  // namespace ham
