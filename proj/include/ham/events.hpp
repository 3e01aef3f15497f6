#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace ham {

using Vertex = int32_t;
using Time = int64_t;  // 1-based event index

enum class EventKind { fresh, redundant_repeat, redundant_loop };

// One step of the edge process: an ordered pair of vertices plus provenance.
// `blue` is true exactly for redundant repeats injected by the graph-process
// coupling; a blue event's unordered pair always occurred at some earlier t.
struct EdgeEvent {
    Time t = 0;
    Vertex first = 0;
    Vertex second = 0;
    EventKind kind = EventKind::fresh;
    bool blue = false;

    bool is_loop() const { return first == second; }
};

enum class ProcessMode { edge_process, graph_process };
enum class Preset { paper, desk };

const char* to_string(ProcessMode m);
const char* to_string(Preset p);
const char* to_string(EventKind k);

// Trial parameters. The paper preset is hitting-time exact: the trial spans
// e_1..e_{m*} with Step I the first ceil(2 n loglog n) events. The desk preset
// keeps every structural rule but swaps the asymptotic event counts (which are
// vacuous at desk-scale n) for explicit budgets: Step I long enough that
// saturation at `sat_threshold` is overwhelmingly likely, Step II long enough
// to supply the (1/3) n log n unrevealed A-A edges the merge phase consumes.
struct ProcessConfig {
    Vertex n = 0;
    ProcessMode mode = ProcessMode::edge_process;
    uint64_t seed = 0;
    Preset preset = Preset::desk;

    int sat_threshold = 12;   // first-vertex count that saturates a vertex
    int out_in_size = 5;      // |OUT| = |IN| for saturated/blossomed vertices
    int blossom_threshold = 12;  // A-B edge count that makes a B vertex blossom
    Time step1_len = 0;
    Time step2_len = 0;  // desk only; paper preset runs Step II until m*

    // Merge budgets (engineering bounds, not paper quantities).
    int64_t max_rotations = 0;  // per closure attempt; default 50 n
    int restarts = 3;

    static ProcessConfig make(Vertex n, ProcessMode mode, uint64_t seed, Preset preset,
                              int sat_threshold = 12, double step1_multiplier = 0.0);

    // Trial horizon given the realized hitting time m*.
    Time horizon(Time m_star) const {
        if (preset == Preset::paper) return m_star;
        Time budget = step1_len + step2_len;
        return m_star > budget ? m_star : budget;
    }
};

// Per-vertex degree in the underlying multigraph G_t. Loops contribute 0 and
// repeated edges count with multiplicity; the min-degree-2 predicate is
// monotone in t.
class DegreeTracker {
public:
    explicit DegreeTracker(Vertex n) : degree_(n, 0), deficient_(n) {}

    void add(const EdgeEvent& e) {
        if (e.is_loop()) return;
        bump(e.first);
        bump(e.second);
    }

    bool min_degree_two() const { return deficient_ == 0; }
    Vertex deficient_count() const { return deficient_; }
    int32_t degree(Vertex v) const { return degree_[v]; }

private:
    void bump(Vertex v) {
        if (++degree_[v] == 2) --deficient_;
    }

    std::vector<int32_t> degree_;
    Vertex deficient_;
};

}  // namespace ham
