#include "ham/orient.hpp"

#include <cassert>

namespace ham {

const char* to_string(Rule r) {
    switch (r) {
        case Rule::step1_first: return "stepI-first";
        case Rule::step1_second: return "stepI-second";
        case Rule::step2_ab1: return "stepII-AB-rule1";
        case Rule::step2_ab2: return "stepII-AB-rule2";
        case Rule::step2_ab3: return "stepII-AB-rule3";
        case Rule::step2_ab4: return "stepII-AB-rule4";
        case Rule::step2_random: return "stepII-random";
        case Rule::loop_skipped: return "loop-skipped";
    }
    return "?";
}

Orienter::Orienter(const ProcessConfig& cfg, Rng coins)
    : n_(cfg.n),
      step1_len_(cfg.step1_len),
      sat_threshold_(cfg.sat_threshold),
      ab_cap_(static_cast<size_t>(std::max(2, 2 * cfg.out_in_size))),
      coins_(coins),
      d1_(cfg.n, 0),
      d2_(cfg.n, 0),
      dab_(cfg.n, 0),
      neglected_count_(cfg.n, 0),
      parity1_(cfg.n, Dir::out),
      parity2_(cfg.n, Dir::in),
      saturated_(cfg.n, 0),
      in_A_(cfg.n, 0),
      parity2ab_set_(cfg.n, 0),
      parity2ab_(cfg.n, Dir::out),
      ab_rule_(cfg.n, Rule::step2_ab4),
      slots1_(cfg.n),
      slots2_(cfg.n),
      slotsAB_(cfg.n),
      neglected_first_(cfg.n) {}

void Orienter::finish() {
    if (!frozen_) {
        in_A_ = saturated_;
        frozen_ = true;
    }
}

std::optional<OrientedEdge> Orienter::step(const EdgeEvent& e) {
    if (e.t > step1_len_ && !frozen_) finish();
    if (e.is_loop()) return std::nullopt;
    return e.t <= step1_len_ ? orient_step1(e) : orient_step2(e);
}

// Builds the oriented edge from the direction realized at a reference vertex.
static OrientedEdge make_edge(const EdgeEvent& e, Vertex ref, Vertex other, Dir dir_at_ref, Rule rule) {
    OrientedEdge oe;
    oe.t = e.t;
    oe.blue = e.blue;
    oe.rule = rule;
    if (dir_at_ref == Dir::out) {
        oe.tail = ref;
        oe.head = other;
    } else {
        oe.tail = other;
        oe.head = ref;
    }
    return oe;
}

OrientedEdge Orienter::orient_step1(const EdgeEvent& e) {
    Vertex v = e.first, w = e.second;
    if (!saturated_[v]) {
        // Alternate with respect to the first vertex, starting from out. The
        // saturating appearance itself is still oriented by v's own parity.
        Dir d = parity1_[v];
        parity1_[v] = opposite(d);
        if (slots1_[v].size() < static_cast<size_t>(sat_threshold_))
            slots1_[v].push_back({e.t, w, d, e.blue});
        if (++d1_[v] >= sat_threshold_) saturated_[v] = 1;
        // At w this edge is oriented by neither of w's counters: neglected.
        if (neglected_count_[w]++ == 0) neglected_first_[w] = {e.t, v, opposite(d), e.blue};
        return make_edge(e, v, w, d, Rule::step1_first);
    }
    // First vertex saturated: alternate with respect to the second vertex,
    // starting from an in edge; this count is independent of w's first-vertex
    // alternation.
    Dir d = parity2_[w];
    parity2_[w] = opposite(d);
    ++d2_[w];
    if (slots2_[w].size() < 2) slots2_[w].push_back({e.t, v, d, e.blue});
    return make_edge(e, w, v, d, Rule::step1_second);
}

OrientedEdge Orienter::orient_step2(const EdgeEvent& e) {
    Vertex v = e.first, w = e.second;
    bool av = in_A_[v] != 0, aw = in_A_[w] != 0;
    if (av == aw) {
        Dir d = coins_.coin() ? Dir::out : Dir::in;
        return make_edge(e, v, w, d, Rule::step2_random);
    }
    Vertex b = av ? w : v;
    Vertex a = av ? v : w;
    if (!parity2ab_set_[b]) {
        // Continue the alternation of Step I, by the first applicable rule.
        if (d1_[b] >= 1) {
            parity2ab_[b] = parity1_[b];
            ab_rule_[b] = Rule::step2_ab1;
        } else if (d2_[b] >= 1) {
            parity2ab_[b] = parity2_[b];
            ab_rule_[b] = Rule::step2_ab2;
        } else if (neglected_count_[b] >= 1) {
            parity2ab_[b] = opposite(neglected_first_[b].dir);
            ab_rule_[b] = Rule::step2_ab3;
        } else {
            parity2ab_[b] = Dir::out;
            ab_rule_[b] = Rule::step2_ab4;
        }
        parity2ab_set_[b] = 1;
    }
    Dir d = parity2ab_[b];
    parity2ab_[b] = opposite(d);
    ++dab_[b];
    if (slotsAB_[b].size() < ab_cap_) slotsAB_[b].push_back({e.t, a, d, e.blue});
    return make_edge(e, b, a, d, ab_rule_[b]);
}

std::vector<OrientedEdge> orient_all(Orienter& alg, const std::vector<EdgeEvent>& events) {
    std::vector<OrientedEdge> out;
    out.reserve(events.size());
    for (const auto& e : events)
        if (auto oe = alg.step(e)) out.push_back(*oe);
    alg.finish();
    return out;
}

}  // namespace ham
