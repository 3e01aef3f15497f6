#pragma once

#include <optional>
#include <vector>

#include "ham/events.hpp"
#include "ham/rng.hpp"

namespace ham {

enum class Dir : uint8_t { out, in };

inline Dir opposite(Dir d) { return d == Dir::out ? Dir::in : Dir::out; }

enum class Rule : uint8_t {
    step1_first,
    step1_second,
    step2_ab1,
    step2_ab2,
    step2_ab3,
    step2_ab4,
    step2_random,
    loop_skipped,
};

const char* to_string(Rule r);

struct OrientedEdge {
    Time t = 0;
    Vertex tail = 0;
    Vertex head = 0;
    bool blue = false;
    Rule rule = Rule::loop_skipped;
};

// An edge incident to a vertex, recorded with its realized direction there.
struct IncidentSlot {
    Time t = 0;
    Vertex other = 0;
    Dir dir = Dir::out;
    bool blue = false;
};

// The on-line algorithm: consumes events one at a time and emits an
// orientation immediately. Step I (t <= step1_len) alternates with respect to
// the first vertex until it saturates, then with respect to the second vertex
// of saturated-first edges. Step II continues the per-vertex alternation for
// A-B edges (rules 1-4) and orients A-A / B-B edges uniformly at random.
class Orienter {
public:
    Orienter(const ProcessConfig& cfg, Rng coins);

    // Returns nothing for loop events (consumed, no orientation).
    std::optional<OrientedEdge> step(const EdgeEvent& e);

    // Freezes A at the Step I/II boundary; called implicitly by step() but
    // needed explicitly when the stream ends inside Step I.
    void finish();

    Vertex n() const { return n_; }
    Time step1_len() const { return step1_len_; }
    int sat_threshold() const { return sat_threshold_; }

    bool in_A(Vertex v) const { return frozen_ ? in_A_[v] != 0 : saturated_[v] != 0; }
    bool saturated(Vertex v) const { return saturated_[v] != 0; }
    int32_t d1(Vertex v) const { return d1_[v]; }
    int32_t d2(Vertex v) const { return d2_[v]; }
    int32_t dab(Vertex v) const { return dab_[v]; }
    int32_t neglected_count(Vertex v) const { return neglected_count_[v]; }

    // First sat_threshold first-vertex Step I slots of v, in event order.
    const std::vector<IncidentSlot>& first_vertex_slots(Vertex v) const { return slots1_[v]; }
    // First two second-vertex-of-saturated Step I slots of v.
    const std::vector<IncidentSlot>& second_vertex_slots(Vertex v) const { return slots2_[v]; }
    // First max(2, 2k) A-B Step II slots of v (v on the B side).
    const std::vector<IncidentSlot>& ab_slots(Vertex v) const { return slotsAB_[v]; }
    // First neglected edge of v, if any.
    std::optional<IncidentSlot> first_neglected(Vertex v) const {
        if (neglected_first_[v].t == 0) return std::nullopt;
        return neglected_first_[v];
    }

    Dir parity_first(Vertex v) const { return parity1_[v]; }
    Dir parity_second(Vertex v) const { return parity2_[v]; }

private:
    OrientedEdge orient_step1(const EdgeEvent& e);
    OrientedEdge orient_step2(const EdgeEvent& e);

    Vertex n_;
    Time step1_len_;
    int sat_threshold_;
    size_t ab_cap_;
    Rng coins_;
    bool frozen_ = false;

    std::vector<int32_t> d1_, d2_, dab_, neglected_count_;
    std::vector<Dir> parity1_, parity2_;
    std::vector<char> saturated_, in_A_;
    std::vector<char> parity2ab_set_;
    std::vector<Dir> parity2ab_;
    std::vector<Rule> ab_rule_;
    std::vector<std::vector<IncidentSlot>> slots1_, slots2_, slotsAB_;
    std::vector<IncidentSlot> neglected_first_;
};

// Convenience: run the whole prefix through the algorithm.
std::vector<OrientedEdge> orient_all(Orienter& alg, const std::vector<EdgeEvent>& events);

}  // namespace ham
