#pragma once

#include "netperc/degree.hpp"
#include "netperc/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netperc {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;  // stored with first < second

/// Immutable simple undirected graph: normalized edge list plus a CSR
/// adjacency built once at construction. Safe to share across threads.
class Network {
  public:
    /// Validates simplicity (no loops, no parallel edges) and vertex range.
    static Network from_edges(std::int64_t n, std::vector<Edge> edges);

    std::int64_t vertex_count() const { return n_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::int64_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
    std::span<const VertexId> neighbors(VertexId v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

  private:
    Network(std::int64_t n, std::vector<Edge> edges, bool trusted);
    friend Network bond_percolate(const Network&, double, Rng&);
    friend struct GenerationResult;

    std::int64_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::int64_t> offsets_;
    std::vector<VertexId> adjacency_;
};

enum class GenMode {
    reject,  // whole-graph rejection of loops/parallel edges (uniform over realizations)
    erased,  // drop loops and parallel edges; approximate, for dense sequences
};

struct GenerationResult {
    Network network;
    int attempts = 0;  // stub-matching rounds, including the successful one

    static GenerationResult make(std::int64_t n, std::vector<Edge> edges, int attempts) {
        return GenerationResult{Network(n, std::move(edges), true), attempts};
    }
};

/// Configuration model: attach d_i stubs to vertex i, shuffle the stub
/// multiset and pair adjacent entries. In reject mode a non-simple outcome
/// discards the whole pairing and restarts; std::runtime_error carries the
/// attempt count once the budget is exhausted.
GenerationResult configuration_model(const DegreeSequence& seq, Rng& rng, int restart_budget = 100,
                                     GenMode mode = GenMode::reject);

struct ComponentReport {
    std::vector<VertexId> labels;       // per-vertex component id, dense, by first appearance
    std::vector<std::int64_t> sizes;    // per-component vertex counts
    std::vector<std::int64_t> edge_counts;
    std::vector<bool> cycle_flags;      // edges >= vertices, i.e. not a tree
    std::size_t largest = 0;            // index of the largest component
    double giant_fraction = 0.0;        // largest size / N
};

ComponentReport components(const Network& net);

/// Occupied subgraph: every edge kept independently with probability T, the
/// vertex set unchanged.
Network bond_percolate(const Network& net, double transmissibility, Rng& rng);

/// Percolates, picks a uniformly random vertex and returns the size of its
/// occupied component: the percolation-side final outbreak size.
std::int64_t infected_component_size(const Network& net, double transmissibility, Rng& rng);

/// Text format: header "N M" then one "u v" line per edge.
void save_edge_list(const Network& net, std::ostream& out);
Network load_edge_list(std::istream& in);

/// Binary format: magic "NPRC", little-endian u64 N, u64 M, then M (u32,u32) pairs.
void save_binary(const Network& net, std::ostream& out);
Network load_binary(std::istream& in);

void save_network(const Network& net, const std::string& path, bool binary);
Network load_network(const std::string& path);

}  // namespace netperc
