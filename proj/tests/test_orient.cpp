#include <cstdlib>
#include <map>

#include "doctest.h"
#include "ham/orient.hpp"
#include "ham/process.hpp"

using namespace ham;

namespace {

ProcessConfig manual_config(Vertex n, int sat, Time step1_len) {
    ProcessConfig cfg;
    cfg.n = n;
    cfg.mode = ProcessMode::edge_process;
    cfg.seed = 1;
    cfg.preset = Preset::desk;
    cfg.sat_threshold = sat;
    cfg.out_in_size = std::max(1, sat / 2 - 1);
    cfg.blossom_threshold = sat;
    cfg.step1_len = step1_len;
    cfg.step2_len = 0;
    return cfg;
}

EdgeEvent ev(Time t, Vertex u, Vertex v) {
    EdgeEvent e;
    e.t = t;
    e.first = u;
    e.second = v;
    e.kind = u == v ? EventKind::redundant_loop : EventKind::fresh;
    return e;
}

}  // namespace

TEST_CASE("first-vertex alternation runs out, in, out") {
    auto cfg = manual_config(6, 12, 100);
    Orienter alg(cfg, Rng(1));
    auto e1 = alg.step(ev(1, 0, 1));
    auto e2 = alg.step(ev(2, 0, 2));
    auto e3 = alg.step(ev(3, 0, 3));
    REQUIRE(e1);
    REQUIRE(e2);
    REQUIRE(e3);
    CHECK(e1->tail == 0);  // out
    CHECK(e1->head == 1);
    CHECK(e2->tail == 2);  // in at 0
    CHECK(e2->head == 0);
    CHECK(e3->tail == 0);  // out again
    CHECK(e3->rule == Rule::step1_first);
}

TEST_CASE("12th appearance saturates; 13th is oriented by the second vertex, starting in") {
    auto cfg = manual_config(20, 12, 1000);
    Orienter alg(cfg, Rng(1));
    Time t = 1;
    for (int i = 0; i < 12; ++i) alg.step(ev(t++, 0, static_cast<Vertex>(1 + i)));
    CHECK(alg.saturated(0));
    CHECK(alg.d1(0) == 12);
    auto e = alg.step(ev(t++, 0, 15));
    REQUIRE(e);
    CHECK(e->rule == Rule::step1_second);
    CHECK(e->tail == 0);  // "in" with respect to the second vertex 15
    CHECK(e->head == 15);
    CHECK(alg.d2(15) == 1);
    CHECK(alg.d1(0) == 12);  // d1 no longer grows
}

TEST_CASE("the two Step I alternation counters are independent") {
    auto cfg = manual_config(20, 12, 1000);
    Orienter alg(cfg, Rng(1));
    Time t = 1;
    // vertex 3 appears once as a first vertex: out
    auto f = alg.step(ev(t++, 3, 9));
    REQUIRE(f);
    CHECK(f->tail == 3);
    // saturate vertex 0
    for (int i = 0; i < 12; ++i) alg.step(ev(t++, 0, static_cast<Vertex>(4 + (i % 3))));
    // (0, 3): second-vertex-of-saturated stream at 3 starts at in, not at the
    // continuation of 3's first-vertex alternation
    auto s1 = alg.step(ev(t++, 0, 3));
    REQUIRE(s1);
    CHECK(s1->rule == Rule::step1_second);
    CHECK(s1->head == 3);  // in at 3
    auto s2 = alg.step(ev(t++, 0, 3));
    REQUIRE(s2);
    CHECK(s2->tail == 3);  // second use of the stream: out
    CHECK(alg.parity_first(3) == Dir::in);  // untouched by the d2 stream
}

TEST_CASE("Step II continuation rules 1-4 fire as specified") {
    auto cfg = manual_config(8, 2, 6);
    Orienter alg(cfg, Rng(99));
    // Step I
    auto a1 = alg.step(ev(1, 1, 2));  // d1(1)=1, out at 1; neglected at 2 (in)
    CHECK(a1->tail == 1);
    alg.step(ev(2, 0, 5));  // d1(0)=1
    alg.step(ev(3, 0, 6));  // d1(0)=2: 0 saturated
    auto a4 = alg.step(ev(4, 0, 3));  // d2(3)=1, in at 3
    CHECK(a4->head == 3);
    alg.step(ev(5, 0, 4));            // d2(4)=1
    auto a6 = alg.step(ev(6, 0, 3));  // d2(3)=2, out at 3
    CHECK(a6->tail == 3);

    CHECK(alg.in_A(0));
    CHECK(!alg.in_A(1));

    // Rule 1: d1(1) = 1, Step I stopped after "out", so the A-B edge is in.
    auto r1 = alg.step(ev(7, 1, 0));
    REQUIRE(r1);
    CHECK(r1->rule == Rule::step2_ab1);
    CHECK(r1->head == 1);
    // Rule 2: d1(3)=0, d2(3)=2; the d2 stream continues (in, out -> next in).
    auto r2 = alg.step(ev(8, 0, 3));
    REQUIRE(r2);
    CHECK(r2->rule == Rule::step2_ab2);
    CHECK(r2->head == 3);
    // Rule 3: vertex 2 only has a neglected edge, oriented into 2: start out.
    auto r3 = alg.step(ev(9, 2, 0));
    REQUIRE(r3);
    CHECK(r3->rule == Rule::step2_ab3);
    CHECK(r3->tail == 2);
    // Rule 4: vertex 7 never appeared: start out.
    auto r4 = alg.step(ev(10, 7, 0));
    REQUIRE(r4);
    CHECK(r4->rule == Rule::step2_ab4);
    CHECK(r4->tail == 7);
    // B-B edges get the random rule.
    auto rr = alg.step(ev(11, 5, 6));
    REQUIRE(rr);
    CHECK(rr->rule == Rule::step2_random);
    // The A-B stream persists: second A-B edge at 1 flips to out, same tag.
    auto r1b = alg.step(ev(12, 0, 1));
    REQUIRE(r1b);
    CHECK(r1b->rule == Rule::step2_ab1);
    CHECK(r1b->tail == 1);
}

TEST_CASE("loops are consumed without orientation") {
    auto cfg = manual_config(5, 2, 10);
    Orienter alg(cfg, Rng(1));
    CHECK(!alg.step(ev(1, 2, 2)));
    CHECK(alg.d1(2) == 0);
    CHECK(alg.d2(2) == 0);
}

TEST_CASE("alternation balance: every stream has |out - in| <= 1") {
    auto cfg = ProcessConfig::make(80, ProcessMode::edge_process, 31337, Preset::desk, 4);
    auto run = run_process(cfg);
    Orienter alg(cfg, make_stream(cfg.seed, RngStream::orient_coins));

    std::map<Vertex, int> bal1, bal2, balAB;
    for (const auto& e : run.events) {
        auto oe = alg.step(e);
        if (!oe) continue;
        Vertex first = e.first, second = e.second;
        switch (oe->rule) {
            case Rule::step1_first:
                bal1[first] += oe->tail == first ? 1 : -1;
                CHECK(std::abs(bal1[first]) <= 1);
                break;
            case Rule::step1_second:
                bal2[second] += oe->tail == second ? 1 : -1;
                CHECK(std::abs(bal2[second]) <= 1);
                break;
            case Rule::step2_ab1:
            case Rule::step2_ab2:
            case Rule::step2_ab3:
            case Rule::step2_ab4: {
                Vertex b = alg.in_A(first) ? second : first;
                balAB[b] += oe->tail == b ? 1 : -1;
                CHECK(std::abs(balAB[b]) <= 1);
                break;
            }
            default:
                break;
        }
    }
}

TEST_CASE("a saturated vertex's first 2k first-vertex edges split k out, k in") {
    auto cfg = ProcessConfig::make(60, ProcessMode::edge_process, 777, Preset::desk, 6);
    auto run = run_process(cfg);
    Orienter alg(cfg, make_stream(cfg.seed, RngStream::orient_coins));
    orient_all(alg, run.events);
    for (Vertex v = 0; v < cfg.n; ++v) {
        if (!alg.saturated(v)) continue;
        const auto& slots = alg.first_vertex_slots(v);
        REQUIRE(static_cast<int>(slots.size()) == cfg.sat_threshold);
        for (int k = 1; 2 * k <= cfg.sat_threshold; ++k) {
            int out = 0;
            for (int i = 0; i < 2 * k; ++i) out += slots[i].dir == Dir::out ? 1 : 0;
            CHECK(out == k);
        }
        // realized directions match the parity prediction: alternate from out
        for (size_t i = 0; i < slots.size(); ++i)
            CHECK(slots[i].dir == (i % 2 == 0 ? Dir::out : Dir::in));
    }
}

TEST_CASE("rule tags partition events by step") {
    auto cfg = ProcessConfig::make(50, ProcessMode::graph_process, 4, Preset::desk, 4);
    auto run = run_process(cfg);
    Orienter alg(cfg, make_stream(cfg.seed, RngStream::orient_coins));
    auto oriented = orient_all(alg, run.events);
    for (const auto& oe : oriented) {
        if (oe.t <= cfg.step1_len)
            CHECK((oe.rule == Rule::step1_first || oe.rule == Rule::step1_second));
        else
            CHECK((oe.rule == Rule::step2_ab1 || oe.rule == Rule::step2_ab2 ||
                   oe.rule == Rule::step2_ab3 || oe.rule == Rule::step2_ab4 ||
                   oe.rule == Rule::step2_random));
    }
}
