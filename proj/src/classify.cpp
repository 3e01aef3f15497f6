#include "ham/classify.hpp"

#include <cmath>
#include <queue>
#include <sstream>

namespace ham {

const char* to_string(VertexClass c) {
    switch (c) {
        case VertexClass::saturated: return "saturated";
        case VertexClass::blossom: return "blossom";
        case VertexClass::partial: return "partial";
        case VertexClass::bud: return "bud";
        case VertexClass::violation: return "violation";
    }
    return "?";
}

const char* to_string(PartialCase c) {
    switch (c) {
        case PartialCase::none: return "-";
        case PartialCase::c1: return "i";
        case PartialCase::c2: return "ii";
        case PartialCase::c3: return "iii";
        case PartialCase::c4: return "iv";
        case PartialCase::c5: return "v";
        case PartialCase::c6: return "vi";
    }
    return "?";
}

Classification classify_vertices(const Orienter& alg, const ProcessConfig& cfg) {
    const Vertex n = cfg.n;
    Classification out;
    out.cls.resize(n, VertexClass::violation);
    out.pcase.resize(n, PartialCase::none);
    out.in_B2.assign(n, 0);

    for (Vertex v = 0; v < n; ++v) {
        if (alg.in_A(v)) {
            out.cls[v] = VertexClass::saturated;
            out.A.push_back(v);
            continue;
        }
        int32_t d1 = alg.d1(v), d2 = alg.d2(v), dab = alg.dab(v);
        if (dab >= cfg.blossom_threshold) {
            out.cls[v] = VertexClass::blossom;
            out.B1.push_back(v);
            continue;
        }
        out.B2.push_back(v);
        out.in_B2[v] = 1;
        if (d1 + d2 + dab >= 2) {
            out.cls[v] = VertexClass::partial;
            // Pick the first satisfied case, in the paper's order.
            if (d1 >= 2) out.pcase[v] = PartialCase::c1;
            else if (d2 >= 2) out.pcase[v] = PartialCase::c2;
            else if (dab >= 2) out.pcase[v] = PartialCase::c3;
            else if (d1 == 1 && d2 == 1) out.pcase[v] = PartialCase::c4;
            else if (d1 == 1 && dab == 1) out.pcase[v] = PartialCase::c5;
            else out.pcase[v] = PartialCase::c6;
        } else if (dab == 1 && alg.neglected_count(v) >= 1) {
            out.cls[v] = VertexClass::bud;
        } else {
            out.cls[v] = VertexClass::violation;
            out.violations.push_back(v);
            std::ostringstream os;
            os << "v=" << v << " (d1,d2,dAB)=(" << d1 << "," << d2 << "," << dab
               << ") neglected=" << alg.neglected_count(v);
            out.violation_reasons.push_back(os.str());
        }
    }
    return out;
}

TypicalityReport typicality(const Classification& cls, const Orienter& alg,
                            const std::vector<EdgeEvent>& events,
                            const std::vector<OrientedEdge>& oriented,
                            const ProcessConfig& cfg) {
    const Vertex n = cfg.n;
    const Time step1 = cfg.step1_len;
    TypicalityReport r;

    double logn = std::log(static_cast<double>(n));
    double loglogn = std::log(logn);

    // (i), (ii): class sizes against the asymptotic bounds (often vacuous at
    // desk scale; raw counts are the useful part of the report there).
    r.a_size = static_cast<int64_t>(cls.A.size());
    r.b1_size = static_cast<int64_t>(cls.B1.size());
    r.b2_size = static_cast<int64_t>(cls.B2.size());
    r.class_bound = n * std::pow(loglogn, 12) / (logn * logn);
    r.i_ok = r.a_size >= n - r.class_bound && r.b1_size <= r.class_bound;
    r.b2_bound = std::pow(logn, 13);
    r.ii_ok = r.b2_size <= r.b2_bound;

    // (iii): min degree 2 when Step II B-B edges are removed.
    DegreeTracker deg(n);
    for (const auto& e : events) {
        if (e.is_loop()) continue;
        if (e.t > step1 && !alg.in_A(e.first) && !alg.in_A(e.second)) continue;
        deg.add(e);
    }
    r.deficient_without_bb = deg.deficient_count();
    r.iii_ok = deg.min_degree_two();

    // (iv)
    r.violation_count = static_cast<int64_t>(cls.violations.size());
    r.iv_ok = cls.violations.empty();

    // (v): pairwise distance >= 3 between restricted vertices, in the graph
    // induced by the revealed edges (saturated-first Step I edges, B2-incident
    // edges of either step, and B-incident Step II edges).
    std::vector<std::vector<Vertex>> adj(n);
    auto revealed = [&](const OrientedEdge& oe) {
        if (cls.in_B2[oe.tail] || cls.in_B2[oe.head]) return true;
        if (oe.t <= step1) return oe.rule == Rule::step1_second;
        return !alg.in_A(oe.tail) || !alg.in_A(oe.head);
    };
    for (const auto& oe : oriented) {
        if (revealed(oe)) {
            adj[oe.tail].push_back(oe.head);
            adj[oe.head].push_back(oe.tail);
        }
    }
    r.v_ok = true;
    std::vector<int8_t> mark(n, -1);
    for (Vertex s : cls.B2) {
        if (!r.v_ok) break;
        // BFS to depth 2
        std::vector<Vertex> touched;
        mark[s] = 0;
        touched.push_back(s);
        std::queue<std::pair<Vertex, int>> q;
        q.push({s, 0});
        while (!q.empty()) {
            auto [u, d] = q.front();
            q.pop();
            if (d == 2) continue;
            for (Vertex w : adj[u]) {
                if (mark[w] >= 0) continue;
                if (cls.in_B2[w]) {
                    r.v_ok = false;
                    r.close_pair = {s, w};
                    break;
                }
                mark[w] = static_cast<int8_t>(d + 1);
                touched.push_back(w);
                q.push({w, d + 1});
            }
            if (!r.v_ok) break;
        }
        for (Vertex u : touched) mark[u] = -1;
    }

    // (vi): Step II events with both endpoints in A; FIVEINOUT consumes only
    // Step I first-vertex slots and Step II A-B edges, so these stay unrevealed.
    r.unrevealed_aa = 0;
    for (const auto& e : events)
        if (e.t > step1 && !e.is_loop() && alg.in_A(e.first) && alg.in_A(e.second)) ++r.unrevealed_aa;
    r.vi_bound = n * logn / 3.0;
    r.vi_ok = static_cast<double>(r.unrevealed_aa) >= r.vi_bound;

    return r;
}

}  // namespace ham
