#pragma once

#include "netperc/degree.hpp"
#include "netperc/ebcm.hpp"
#include "netperc/percolation.hpp"
#include "netperc/simulate.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace netperc {

std::string to_json(const PercolationReport& report);
std::string to_json(const FinalSizeReport& report);
std::string to_json(const EnsembleSummary& summary);

/// Distribution spec document: {"family": ..., "params": {...}, "delta": ..., "k_min": ...};
/// custom pmfs carry {"params": {"pmf": [...]}}.
DegreeDistribution distribution_from_json(const std::string& text);
std::string distribution_to_json(const DegreeDistribution& dist, bool include_pmf = false);

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
void write_event_log_csv(std::ostream& out, const std::vector<Event>& events);

}  // namespace netperc
