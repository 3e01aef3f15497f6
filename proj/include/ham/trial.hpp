#pragma once

#include <array>
#include <string>
#include <vector>

#include "ham/classify.hpp"
#include "ham/events.hpp"
#include "ham/merge.hpp"

namespace ham {

enum class Stage : uint8_t { orient, classify, fiveinout, factor, compress, merge, done };

const char* to_string(Stage s);

struct TrialCounters {
    int64_t a_size = 0, b1_size = 0, b2_size = 0;
    int64_t violations = 0;
    int64_t deficit_vertices = 0;
    int64_t factor_cycles = 0;
    int64_t compressed_size = 0;
    int64_t pool_size = 0, pool_blue = 0;
    int64_t rotations = 0;
    int32_t joins = 0, absorbs = 0, restarts = 0;
    int64_t blue_seen = 0;       // blue events in the oriented prefix
    int64_t blue_in_factor = 0;  // blue arcs of the 1-factor
    int64_t fiveinout_blue_incident_B = 0;
    int64_t blue_multiplicity_violations = 0;  // vertices on >= 2 blue pairs
    int32_t blue_eliminated = 0;
};

struct TrialResult {
    Vertex n = 0;
    uint64_t seed = 0;
    ProcessMode mode = ProcessMode::edge_process;
    Preset preset = Preset::desk;
    Time m_star = 0;
    Time horizon = 0;
    Stage stage = Stage::orient;
    bool success = false;
    std::string fail_reason;
    std::vector<Vertex> cycle;  // original vertex ids, on success
    TypicalityReport typicality;
    TrialCounters counters;
    std::array<double, 7> stage_ms{};  // indexed by Stage
    double ms_total = 0;
};

// Executes process -> orient -> classify -> fiveinout -> factor -> compress
// -> merge -> verify. Failures are recorded as data (stage + reason), never
// thrown; `success` implies the emitted cycle re-verified against the oriented
// graph with all blue-only pairs forbidden.
TrialResult run_trial(const ProcessConfig& cfg);

struct BaselineResult {
    Vertex n = 0;
    uint64_t seed = 0;
    Time m_star = 0;
    bool certificate_ok = false;  // every vertex has a usable in- and out-arc
    bool oracle_used = false;
    bool success = false;
    double ms_total = 0;
};

// Same process, uniform-random orientation of every edge, Hamilton-cycle
// attempt at m*: the local in/out-degree certificate first, then the exact
// oracle for n <= oracle_max_n, otherwise a rotation-extension search.
BaselineResult run_baseline(const ProcessConfig& cfg, Vertex oracle_max_n = 12);

}  // namespace ham
