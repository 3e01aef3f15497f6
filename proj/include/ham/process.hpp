#pragma once

#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ham/events.hpp"
#include "ham/rng.hpp"

namespace ham {

// Thrown by the graph-process source when all binom(n,2) edges have been
// consumed before the stopping rule was met.
struct ProcessExhausted : std::runtime_error {
    ProcessExhausted() : std::runtime_error("graph process exhausted all edges") {}
};

class EventSource {
public:
    virtual ~EventSource() = default;
    virtual EdgeEvent next() = 0;
};

// Random edge process: ordered pairs uniform over all n^2, with repetition.
class EdgeProcessSource final : public EventSource {
public:
    EdgeProcessSource(Vertex n, Rng rng) : n_(n), rng_(rng) {}

    EdgeEvent next() override;

private:
    Vertex n_;
    Rng rng_;
    Time t_ = 0;
};

// Random graph process (uniform missing edge each round) lifted to the edge
// process law: with probability (2 a_t + n)/n^2 the step emits a redundant
// event (a uniformly chosen already-seen edge, colored blue, or a uniform
// loop), otherwise it consumes one fresh edge from the underlying process.
class GraphProcessSource final : public EventSource {
public:
    GraphProcessSource(Vertex n, Rng underlying, Rng coupling);

    EdgeEvent next() override;

    int64_t distinct_edges() const { return a_; }

private:
    std::pair<Vertex, Vertex> next_fresh_pair();

    Vertex n_;
    int64_t total_pairs_;
    Rng underlying_;
    Rng coupling_;
    Time t_ = 0;
    int64_t a_ = 0;  // distinct non-loop edges so far
    std::vector<std::pair<Vertex, Vertex>> seen_;
    std::unordered_map<int64_t, int64_t> fy_;  // sparse Fisher-Yates state
};

struct ProcessRun {
    std::vector<EdgeEvent> events;
    Time m_star = 0;  // least t with min degree >= 2
};

// Runs the source until the multigraph reaches min degree 2 and the preset's
// event budget is exhausted; returns the full event prefix. Requires n >= 3.
ProcessRun run_process(const ProcessConfig& cfg);

// Exposed for tests: consume events until min degree >= 2 only.
ProcessRun run_until_min_degree_2(EventSource& src, Vertex n);

std::unique_ptr<EventSource> make_source(const ProcessConfig& cfg);

}  // namespace ham
