#include "netperc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <thread>

namespace netperc {

namespace {

enum class State : std::uint8_t { susceptible, infectious, recovered };

struct QueuedEvent {
    double t;
    std::uint64_t sequence;  // tie-break, keeps pop order fully deterministic
    VertexId source;
    VertexId target;  // == source for recoveries
};

struct LaterEvent {
    bool operator()(const QueuedEvent& a, const QueuedEvent& b) const {
        return a.t != b.t ? a.t > b.t : a.sequence > b.sequence;
    }
};

}  // namespace

SimOutcome gillespie_sir(const Network& net, const EpidemicParams& params, Rng& rng,
                         bool record_event_log) {
    validate(params);
    const auto n = static_cast<std::size_t>(net.vertex_count());
    if (n < 2) throw std::invalid_argument("gillespie_sir: need at least two vertices");
    const double beta = params.beta, gamma = params.gamma;

    std::vector<State> state(n, State::susceptible);
    std::vector<double> recovery_time(n, 0.0);
    std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, LaterEvent> queue;
    std::uint64_t sequence = 0;

    SimOutcome outcome;
    std::int64_t infectious = 0;

    const auto infect = [&](VertexId v, double now) {
        state[v] = State::infectious;
        ++infectious;
        ++outcome.final_size;
        outcome.peak_infectious = std::max(outcome.peak_infectious, infectious);
        if (record_event_log) outcome.event_log.push_back({now, EventKind::infect, v});
        const double recovery = now + rng.exponential(gamma);
        recovery_time[v] = recovery;
        queue.push({recovery, sequence++, v, v});
        if (beta <= 0.0) return;
        for (VertexId w : net.neighbors(v)) {
            if (state[w] != State::susceptible) continue;  // never returns to S
            const double firing = now + rng.exponential(beta);
            if (firing < recovery) queue.push({firing, sequence++, v, w});
        }
    };

    infect(static_cast<VertexId>(rng.uniform_below(n)), 0.0);

    while (!queue.empty() && infectious > 0) {
        const QueuedEvent event = queue.top();
        queue.pop();
        if (event.source == event.target) {  // recovery
            state[event.source] = State::recovered;
            --infectious;
            outcome.duration = event.t;
            if (record_event_log)
                outcome.event_log.push_back({event.t, EventKind::recover, event.source});
            continue;
        }
        // Transmission candidate: the source is still infectious (its firing
        // time was drawn below its recovery time), only the target may be stale.
        if (state[event.target] != State::susceptible) continue;
        infect(event.target, event.t);
    }
    return outcome;
}

namespace {

EnsembleSummary summarize(const Network& net, const SimConfig& config,
                          const std::vector<std::int64_t>& sizes) {
    const auto n = static_cast<double>(net.vertex_count());
    const auto cutoff =
        static_cast<std::int64_t>(config.epidemic_cutoff_fraction * n);

    EnsembleSummary summary;
    summary.replicates = static_cast<int>(sizes.size());
    std::int64_t epidemics = 0;
    double major_mass = 0.0;
    for (const auto size : sizes) {
        if (size > cutoff) {
            ++epidemics;
            major_mass += static_cast<double>(size);
        }
    }
    const double reps = static_cast<double>(sizes.size());
    summary.epidemic_probability = static_cast<double>(epidemics) / reps;
    summary.standard_error =
        std::sqrt(summary.epidemic_probability * (1.0 - summary.epidemic_probability) / reps);
    summary.major_mean_fraction =
        epidemics > 0 ? major_mass / (static_cast<double>(epidemics) * n) : 0.0;

    summary.bin_width = std::max<std::int64_t>(1, net.vertex_count() / 100);
    std::vector<std::pair<std::int64_t, std::int64_t>> hist;
    for (const auto size : sizes) {
        const std::int64_t edge = (size / summary.bin_width) * summary.bin_width;
        auto it = std::find_if(hist.begin(), hist.end(),
                               [&](const auto& bin) { return bin.first == edge; });
        if (it == hist.end())
            hist.emplace_back(edge, 1);
        else
            ++it->second;
    }
    std::sort(hist.begin(), hist.end());
    summary.histogram = std::move(hist);
    return summary;
}

template <typename PerReplicate>
EnsembleSummary ensemble(const Network& net, const SimConfig& config, const PerReplicate& run) {
    if (config.replicates < 1) throw std::invalid_argument("ensemble: replicates must be >= 1");
    if (!(config.epidemic_cutoff_fraction > 0.0 && config.epidemic_cutoff_fraction < 1.0))
        throw std::invalid_argument("ensemble: epidemic cutoff fraction must lie in (0,1)");
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(config.replicates), 0);

    int threads = config.threads;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, config.replicates);

    const auto worker = [&](int first, int past) {
        for (int i = first; i < past; ++i) {
            Rng rng = Rng::stream(config.seed, static_cast<std::uint64_t>(i));
            sizes[static_cast<std::size_t>(i)] = run(i, rng);
        }
    };
    if (threads == 1) {
        worker(0, config.replicates);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (config.replicates + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const int first = t * chunk;
            const int past = std::min(config.replicates, first + chunk);
            if (first < past) pool.emplace_back(worker, first, past);
        }
        for (auto& th : pool) th.join();
    }
    return summarize(net, config, sizes);
}

}  // namespace

EnsembleSummary run_ensemble(const Network& net, const EpidemicParams& params,
                             const SimConfig& config) {
    validate(params);
    std::vector<Event> log;
    auto summary = ensemble(net, config, [&](int replicate, Rng& rng) {
        const bool record = config.record_event_log && replicate == 0;
        SimOutcome outcome = gillespie_sir(net, params, rng, record);
        if (record) log = std::move(outcome.event_log);
        return outcome.final_size;
    });
    summary.event_log = std::move(log);
    return summary;
}

EnsembleSummary percolation_ensemble(const Network& net, double transmissibility,
                                     const SimConfig& config) {
    if (!(transmissibility >= 0.0 && transmissibility <= 1.0))
        throw std::domain_error("percolation_ensemble: transmissibility must lie in [0,1]");
    return ensemble(net, config, [&](int, Rng& rng) {
        return infected_component_size(net, transmissibility, rng);
    });
}

}  // namespace netperc
