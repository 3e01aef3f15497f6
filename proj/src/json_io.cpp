#include "ham/json_io.hpp"

#include <ostream>
#include <sstream>

#include "json.hpp"

namespace ham {

using ordered_json = nlohmann::ordered_json;

void write_events_jsonl(std::ostream& os, const std::vector<EdgeEvent>& events) {
    for (const auto& e : events) {
        ordered_json j;
        j["t"] = e.t;
        j["u"] = e.first;
        j["v"] = e.second;
        j["kind"] = to_string(e.kind);
        os << j.dump() << '\n';
    }
}

void write_oriented_jsonl(std::ostream& os, const std::vector<OrientedEdge>& oriented) {
    for (const auto& oe : oriented) {
        ordered_json j;
        j["t"] = oe.t;
        j["tail"] = oe.tail;
        j["head"] = oe.head;
        j["blue"] = oe.blue;
        j["rule"] = to_string(oe.rule);
        os << j.dump() << '\n';
    }
}

static ordered_json typicality_to_json(const TypicalityReport& r) {
    ordered_json j;
    j["typical"] = r.typical();
    j["i"] = {{"ok", r.i_ok}, {"A", r.a_size}, {"B1", r.b1_size}, {"bound", r.class_bound}};
    j["ii"] = {{"ok", r.ii_ok}, {"B2", r.b2_size}, {"bound", r.b2_bound}};
    j["iii"] = {{"ok", r.iii_ok}, {"deficient_without_BB", r.deficient_without_bb}};
    j["iv"] = {{"ok", r.iv_ok}, {"violations", r.violation_count}};
    ordered_json v = {{"ok", r.v_ok}};
    if (r.close_pair) v["witness"] = {r.close_pair->first, r.close_pair->second};
    j["v"] = v;
    j["vi"] = {{"ok", r.vi_ok}, {"unrevealed_AA", r.unrevealed_aa}, {"bound", r.vi_bound}};
    return j;
}

std::string typicality_json(const TypicalityReport& r) { return typicality_to_json(r).dump(); }

std::string factor_json(const OneFactor& f) {
    ordered_json j;
    j["successor"] = f.successor;
    j["cycles"] = f.cycles.size();
    return j.dump();
}

std::string cycle_json(const std::vector<Vertex>& cycle) { return ordered_json(cycle).dump(); }

std::string trial_json(const TrialResult& r, bool include_timings) {
    ordered_json j;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["mode"] = to_string(r.mode);
    j["preset"] = to_string(r.preset);
    j["m_star"] = r.m_star;
    j["horizon"] = r.horizon;
    j["stage"] = to_string(r.stage);
    j["success"] = r.success;
    if (!r.fail_reason.empty()) j["fail_reason"] = r.fail_reason;
    const TrialCounters& c = r.counters;
    j["counters"] = ordered_json{{"A", c.a_size},
                                 {"B1", c.b1_size},
                                 {"B2", c.b2_size},
                                 {"violations", c.violations},
                                 {"deficit_vertices", c.deficit_vertices},
                                 {"factor_cycles", c.factor_cycles},
                                 {"compressed_size", c.compressed_size},
                                 {"pool_size", c.pool_size},
                                 {"pool_blue", c.pool_blue},
                                 {"rotations", c.rotations},
                                 {"joins", c.joins},
                                 {"absorbs", c.absorbs},
                                 {"restarts", c.restarts},
                                 {"blue_seen", c.blue_seen},
                                 {"blue_in_factor", c.blue_in_factor},
                                 {"fiveinout_blue_incident_B", c.fiveinout_blue_incident_B},
                                 {"blue_multiplicity_violations", c.blue_multiplicity_violations},
                                 {"blue_eliminated", c.blue_eliminated}};
    j["typicality"] = typicality_to_json(r.typicality);
    if (r.success) j["cycle"] = r.cycle;
    if (include_timings) {
        ordered_json ms;
        for (int s = 0; s <= static_cast<int>(Stage::done); ++s)
            ms[to_string(static_cast<Stage>(s))] = r.stage_ms[s];
        j["stage_ms"] = ms;
        j["ms_total"] = r.ms_total;
    }
    return j.dump();
}

std::string csv_header() {
    return "n,seed,mode,preset,m_star,stage,success,cycles_in_factor,A,B1,B2,blue_seen,blue_eliminated,ms_total";
}

std::string csv_row(const TrialResult& r) {
    std::ostringstream os;
    os << r.n << ',' << r.seed << ',' << to_string(r.mode) << ',' << to_string(r.preset) << ','
       << r.m_star << ',' << to_string(r.stage) << ',' << (r.success ? 1 : 0) << ','
       << r.counters.factor_cycles << ',' << r.counters.a_size << ',' << r.counters.b1_size << ','
       << r.counters.b2_size << ',' << r.counters.blue_seen << ',' << r.counters.blue_eliminated
       << ',' << static_cast<int64_t>(r.ms_total);
    return os.str();
}

}  // namespace ham
