#pragma once

#include "netperc/network.hpp"
#include "netperc/percolation.hpp"
#include "netperc/rng.hpp"

#include <cstdint>
#include <vector>

namespace netperc {

struct SimConfig {
    std::uint64_t seed = 0;
    int replicates = 1;
    double epidemic_cutoff_fraction = 0.05;  // outbreak is an epidemic above cutoff * N
    int threads = 0;                         // 0: hardware concurrency
    bool record_event_log = false;           // kept for replicate 0 only
};

enum class EventKind : std::uint8_t { infect, recover };

struct Event {
    double t;
    EventKind kind;
    VertexId vertex;
};

struct SimOutcome {
    std::int64_t final_size = 0;  // vertices ever infected
    std::int64_t peak_infectious = 0;
    double duration = 0.0;  // time of the last recovery
    std::vector<Event> event_log;
};

/// Exact continuous-time SIR via the Doob-Gillespie algorithm: every S-I edge
/// transmits at rate beta, every infectious vertex recovers at rate gamma,
/// starting from one uniformly chosen infectious vertex. Event-driven over a
/// priority queue of exponential firing times; candidates that have become
/// stale (target already infected) are discarded on pop.
SimOutcome gillespie_sir(const Network& net, const EpidemicParams& params, Rng& rng,
                         bool record_event_log = false);

struct EnsembleSummary {
    double epidemic_probability = 0.0;
    double standard_error = 0.0;        // binomial SE of epidemic_probability
    double major_mean_fraction = 0.0;   // mean final-size fraction over epidemic outcomes
    std::int64_t bin_width = 1;
    std::vector<std::pair<std::int64_t, std::int64_t>> histogram;  // [bin lower edge, count]
    int replicates = 0;
    std::vector<Event> event_log;  // replicate 0, when requested
};

/// Independent Gillespie replicates; replicate i uses the stream derived from
/// (seed, i), so the summary does not depend on thread scheduling.
EnsembleSummary run_ensemble(const Network& net, const EpidemicParams& params,
                             const SimConfig& config);

/// Same summary over repeated bond-percolation draws of the occupied component
/// holding a uniformly chosen vertex, for side-by-side comparison of the
/// static percolation picture with the Markovian dynamics.
EnsembleSummary percolation_ensemble(const Network& net, double transmissibility,
                                     const SimConfig& config);

}  // namespace netperc
