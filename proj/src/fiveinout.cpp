#include "ham/fiveinout.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace ham {

namespace {

// Splits a designated pair of slots into one out-edge and one in-edge by
// realized orientation. Returns false when both run the same way, which the
// orientation rules exclude; kept as a checked failure rather than UB.
bool assign_pair(const IncidentSlot& s1, const IncidentSlot& s2,
                 std::vector<IncidentSlot>& out, std::vector<IncidentSlot>& in) {
    if (s1.dir == s2.dir) return false;
    const IncidentSlot& o = s1.dir == Dir::out ? s1 : s2;
    const IncidentSlot& i = s1.dir == Dir::in ? s1 : s2;
    out.push_back(o);
    in.push_back(i);
    return true;
}

}  // namespace

FiveInOutResult build_five_in_out(const Orienter& alg, const Classification& cls,
                                  const ProcessConfig& cfg) {
    const Vertex n = cfg.n;
    const int k = cfg.out_in_size;
    FiveInOut fio;
    fio.out.resize(n);
    fio.in.resize(n);
    std::vector<Vertex> deficit;

    for (Vertex v = 0; v < n; ++v) {
        auto& out = fio.out[v];
        auto& in = fio.in[v];
        switch (cls.cls[v]) {
            case VertexClass::saturated: {
                // First sat_threshold first-vertex appearances, second vertex
                // not restricted; first k out-directed and first k in-directed.
                for (const auto& s : alg.first_vertex_slots(v)) {
                    if (cls.in_B2[s.other]) continue;
                    auto& side = s.dir == Dir::out ? out : in;
                    if (side.size() < static_cast<size_t>(k)) side.push_back(s);
                }
                if (out.size() < static_cast<size_t>(k) || in.size() < static_cast<size_t>(k))
                    deficit.push_back(v);
                break;
            }
            case VertexClass::blossom: {
                // First 2k A-B edges; alternation makes them k out, k in.
                const auto& slots = alg.ab_slots(v);
                for (size_t i = 0; i < slots.size() && i < static_cast<size_t>(2 * k); ++i) {
                    auto& side = slots[i].dir == Dir::out ? out : in;
                    side.push_back(slots[i]);
                }
                if (out.size() != static_cast<size_t>(k) || in.size() != static_cast<size_t>(k))
                    deficit.push_back(v);
                break;
            }
            case VertexClass::partial: {
                const auto& s1 = alg.first_vertex_slots(v);
                const auto& s2 = alg.second_vertex_slots(v);
                const auto& sab = alg.ab_slots(v);
                bool ok = true;
                switch (cls.pcase[v]) {
                    case PartialCase::c1: ok = assign_pair(s1[0], s1[1], out, in); break;
                    case PartialCase::c2: ok = assign_pair(s2[0], s2[1], out, in); break;
                    case PartialCase::c3: ok = assign_pair(sab[0], sab[1], out, in); break;
                    case PartialCase::c4: ok = assign_pair(s1[0], s2[0], out, in); break;
                    case PartialCase::c5: ok = assign_pair(s1[0], sab[0], out, in); break;
                    case PartialCase::c6: ok = assign_pair(s2[0], sab[0], out, in); break;
                    case PartialCase::none: ok = false; break;
                }
                if (!ok) deficit.push_back(v);
                break;
            }
            case VertexClass::bud: {
                // The unique A-B edge runs opposite to the first neglected
                // edge (rule 3), so the two supply one out and one in.
                auto neg = alg.first_neglected(v);
                if (!neg || !assign_pair(alg.ab_slots(v)[0], *neg, out, in)) deficit.push_back(v);
                break;
            }
            case VertexClass::violation:
                deficit.push_back(v);
                break;
        }
    }

    FiveInOutResult res;
    if (!deficit.empty()) {
        res.deficit = std::move(deficit);
        return res;
    }
    for (Vertex v = 0; v < n; ++v) {
        for (const auto& s : fio.out[v]) fio.consumed.push_back(s.t);
        for (const auto& s : fio.in[v]) fio.consumed.push_back(s.t);
    }
    std::sort(fio.consumed.begin(), fio.consumed.end());
    fio.consumed.erase(std::unique(fio.consumed.begin(), fio.consumed.end()), fio.consumed.end());
    res.fio = std::move(fio);
    return res;
}

Bip build_bip(const FiveInOut& fio, const Classification& cls, Vertex n) {
    Bip bip;
    bip.n = n;
    // Arc set of FIVEINOUT, deduplicated; a clean copy wins over a blue one.
    std::map<std::pair<Vertex, Vertex>, BipEdge> arcs;
    auto add = [&](Vertex tail, Vertex head, const IncidentSlot& s) {
        BipEdge e{tail, head, s.t, s.blue};
        auto [it, inserted] = arcs.try_emplace({tail, head}, e);
        if (!inserted && it->second.blue && !e.blue) it->second = e;
    };
    for (Vertex v = 0; v < n; ++v) {
        for (const auto& s : fio.out[v]) add(v, s.other, s);
        for (const auto& s : fio.in[v]) add(s.other, v, s);
    }
    bip.adj.resize(n);
    bip.edges.reserve(arcs.size());
    for (const auto& [key, e] : arcs) {
        bip.adj[e.u].push_back(static_cast<int32_t>(bip.edges.size()));
        bip.edges.push_back(e);
    }
    // map iteration is (u, v)-sorted, so adjacency lists are already ascending.

    bip.in_A_hat.assign(n, 0);
    for (Vertex v : cls.A) bip.in_A_hat[v] = 1;
    for (Vertex v : cls.B2)
        for (const auto& s : fio.out[v]) bip.in_A_hat[s.other] = 0;
    for (Vertex v = 0; v < n; ++v)
        if (bip.in_A_hat[v]) bip.A_hat.push_back(v);
    return bip;
}

std::vector<int32_t> Bip::left_degree() const {
    std::vector<int32_t> d(n, 0);
    for (const auto& e : edges) ++d[e.u];
    return d;
}

std::vector<int32_t> Bip::right_degree() const {
    std::vector<int32_t> d(n, 0);
    for (const auto& e : edges) ++d[e.v];
    return d;
}

}  // namespace ham
