#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ham/classify.hpp"
#include "ham/factor.hpp"
#include "ham/orient.hpp"
#include "ham/trial.hpp"

namespace ham {

// JSON-lines event stream: {"t":..,"u":..,"v":..,"kind":"fresh|repeat|loop"}
void write_events_jsonl(std::ostream& os, const std::vector<EdgeEvent>& events);

// JSON-lines oriented stream: {"t":..,"tail":..,"head":..,"blue":..,"rule":..}
void write_oriented_jsonl(std::ostream& os, const std::vector<OrientedEdge>& oriented);

std::string typicality_json(const TypicalityReport& r);
std::string factor_json(const OneFactor& f);
std::string cycle_json(const std::vector<Vertex>& cycle);

// Deterministic payload; stage timings are appended only when requested since
// they vary run to run.
std::string trial_json(const TrialResult& r, bool include_timings = false);

std::string csv_header();
std::string csv_row(const TrialResult& r);

}  // namespace ham
