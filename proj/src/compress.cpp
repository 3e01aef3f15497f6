#include "ham/compress.hpp"

#include <cassert>
#include <set>
#include <unordered_set>

namespace ham {

std::optional<Vertex> CompressionMap::translate_tail(Vertex v) const {
    for (;;) {
        auto it = tail_map.find(v);
        if (it == tail_map.end()) break;
        v = it->second;
        if (v < 0) return std::nullopt;
    }
    return v;
}

std::optional<Vertex> CompressionMap::translate_head(Vertex v) const {
    for (;;) {
        auto it = head_map.find(v);
        if (it == head_map.end()) break;
        v = it->second;
        if (v < 0) return std::nullopt;
    }
    return v;
}

CompressResult compress_factor(const OneFactor& factor, const std::vector<char>& in_A_hat) {
    const Vertex n = static_cast<Vertex>(factor.successor.size());
    CompressResult res;
    res.map.orig_n = n;

    std::set<Vertex> red;
    for (Vertex v = 0; v < n; ++v)
        if (!in_A_hat[v]) red.insert(v);

    // Capacity: each record removes three ids and allocates one, and the red
    // count strictly decreases, so at most |red| new ids are ever needed.
    const Vertex cap = n + static_cast<Vertex>(red.size());
    std::vector<Vertex> succ(cap, -1), pred(cap, -1);
    std::vector<ArcMeta> arc(cap);
    std::vector<char> alive(cap, 0), is_red(cap, 0);
    for (Vertex v = 0; v < n; ++v) {
        succ[v] = factor.successor[v];
        arc[v] = factor.arc[v];
        pred[factor.successor[v]] = v;
        alive[v] = 1;
        is_red[v] = in_A_hat[v] ? 0 : 1;
    }
    Vertex next_id = n;

    while (!red.empty()) {
        Vertex v = *red.begin();
        Vertex vm = pred[v], vp = succ[v];
        if (vm == vp || vm == v) {
            // Red vertex on a 2-cycle (or a red fixed point): no valid
            // compression exists. Possible only if the 9/10 precondition was
            // violated.
            res.stuck_at = v;
            return res;
        }
        Vertex p = next_id++;
        CompressionRecord rec;
        rec.v_minus = vm;
        rec.v_red = v;
        rec.v_plus = vp;
        rec.v_new = p;
        rec.in_arc = arc[vm];
        rec.out_arc = arc[v];
        res.map.records.push_back(rec);

        // Pool-arc translation: arcs into v_minus now enter p, arcs out of
        // v_plus now leave p; everything else touching the triple is lost.
        res.map.head_map[vm] = p;
        res.map.head_map[vp] = -1;
        res.map.head_map.try_emplace(v, -1);
        res.map.tail_map[vp] = p;
        res.map.tail_map[vm] = -1;
        res.map.tail_map.try_emplace(v, -1);

        Vertex before = pred[vm], after = succ[vp];
        ArcMeta into_p = arc[before];
        ArcMeta out_of_p = arc[vp];
        bool was_triangle = before == vp;  // 3-cycle collapses to a fixed point

        alive[vm] = alive[v] = alive[vp] = 0;
        red.erase(v);
        if (is_red[vm]) red.erase(vm);
        if (is_red[vp]) red.erase(vp);

        alive[p] = 1;
        is_red[p] = (is_red[vm] || is_red[vp]) ? 1 : 0;
        if (is_red[p]) red.insert(p);

        if (was_triangle) {
            succ[p] = p;
            pred[p] = p;
            arc[p] = out_of_p;
        } else {
            succ[before] = p;
            arc[before] = into_p;
            pred[p] = before;
            succ[p] = after;
            arc[p] = out_of_p;
            pred[after] = p;
        }
    }

    CompressedFactor cf;
    cf.alive = std::move(alive);
    cf.successor = std::move(succ);
    cf.arc = std::move(arc);
    res.map.id_cap = next_id;
    cf.successor.resize(next_id, -1);
    cf.alive.resize(next_id);
    cf.arc.resize(next_id);
    for (Vertex v = 0; v < next_id; ++v)
        if (cf.alive[v]) cf.working.push_back(v);
    // Cycle count for reporting (compression preserves it).
    {
        std::vector<char> seen(next_id, 0);
        for (Vertex v : cf.working) {
            if (seen[v]) continue;
            ++cf.cycle_count;
            for (Vertex u = v; !seen[u]; u = cf.successor[u]) seen[u] = 1;
        }
    }
    res.factor = std::move(cf);
    return res;
}

void decompress_cycle(std::vector<Vertex>& cycle, std::vector<ArcMeta>& arcs,
                      const CompressionMap& map) {
    assert(cycle.size() == arcs.size());
    for (auto it = map.records.rbegin(); it != map.records.rend(); ++it) {
        const auto& rec = *it;
        for (size_t i = 0; i < cycle.size(); ++i) {
            if (cycle[i] != rec.v_new) continue;
            // v_new expands in place to (v_minus, v_red, v_plus); the incoming
            // arc now targets v_minus and the outgoing arc leaves v_plus.
            cycle[i] = rec.v_minus;
            cycle.insert(cycle.begin() + static_cast<int64_t>(i) + 1, {rec.v_red, rec.v_plus});
            // The old arcs[i] shifts to position i+2, where it correctly
            // describes v_plus -> y; the hidden arcs fill positions i, i+1.
            arcs.insert(arcs.begin() + static_cast<int64_t>(i), {rec.in_arc, rec.out_arc});
            break;
        }
    }
}

}  // namespace ham
