#include "netperc/network.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace netperc {

namespace {

std::uint64_t edge_key(const Edge& e) {
    return (static_cast<std::uint64_t>(e.first) << 32) | e.second;
}

Edge key_edge(std::uint64_t key) {
    return {static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xffffffffULL)};
}

}  // namespace

Network::Network(std::int64_t n, std::vector<Edge> edges, bool trusted)
    : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw std::invalid_argument("Network: negative vertex count");
    if (!trusted) {
        std::vector<std::uint64_t> keys;
        keys.reserve(edges_.size());
        for (auto& e : edges_) {
            if (e.first > e.second) std::swap(e.first, e.second);
            if (e.first == e.second) throw std::invalid_argument("Network: self-loop");
            if (e.second >= n_) throw std::invalid_argument("Network: vertex id out of range");
            keys.push_back(edge_key(e));
        }
        std::sort(keys.begin(), keys.end());
        if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
            throw std::invalid_argument("Network: parallel edge");
        for (std::size_t i = 0; i < keys.size(); ++i) edges_[i] = key_edge(keys[i]);
    }

    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& [u, v] : edges_) {
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    adjacency_.resize(static_cast<std::size_t>(offsets_.back()));
    std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges_) {
        adjacency_[static_cast<std::size_t>(cursor[u]++)] = v;
        adjacency_[static_cast<std::size_t>(cursor[v]++)] = u;
    }
}

Network Network::from_edges(std::int64_t n, std::vector<Edge> edges) {
    return Network(n, std::move(edges), false);
}

GenerationResult configuration_model(const DegreeSequence& seq, Rng& rng, int restart_budget,
                                     GenMode mode) {
    if (restart_budget < 1) throw std::invalid_argument("configuration_model: empty budget");
    if (seq.total_degree % 2 != 0)
        throw std::invalid_argument("configuration_model: odd total degree");

    const auto n = static_cast<std::int64_t>(seq.degrees.size());
    std::vector<VertexId> stubs;
    stubs.reserve(static_cast<std::size_t>(seq.total_degree));
    for (std::int64_t v = 0; v < n; ++v)
        stubs.insert(stubs.end(), static_cast<std::size_t>(seq.degrees[v]),
                     static_cast<VertexId>(v));

    if (stubs.empty()) return GenerationResult::make(n, {}, 1);  // isolated vertices only

    std::vector<std::uint64_t> keys;
    for (int attempt = 1; attempt <= restart_budget; ++attempt) {
        for (std::size_t i = stubs.size() - 1; i > 0; --i)
            std::swap(stubs[i], stubs[rng.uniform_below(i + 1)]);

        keys.clear();
        keys.reserve(stubs.size() / 2);
        bool loop_free = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            VertexId u = stubs[i], v = stubs[i + 1];
            if (u == v) {
                if (mode == GenMode::reject) {
                    loop_free = false;
                    break;
                }
                continue;  // erased: drop the loop
            }
            if (u > v) std::swap(u, v);
            keys.push_back(edge_key({u, v}));
        }
        if (!loop_free) continue;

        std::sort(keys.begin(), keys.end());
        if (mode == GenMode::reject) {
            if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) continue;
        } else {
            keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        }

        std::vector<Edge> edges;
        edges.reserve(keys.size());
        for (auto key : keys) edges.push_back(key_edge(key));
        return GenerationResult::make(n, std::move(edges), attempt);
    }
    throw std::runtime_error("configuration_model: no simple pairing after " +
                             std::to_string(restart_budget) +
                             " attempts; sequence too dense for rejection sampling "
                             "(consider erased mode)");
}

ComponentReport components(const Network& net) {
    const auto n = static_cast<std::size_t>(net.vertex_count());
    std::vector<VertexId> parent(n);
    std::vector<VertexId> rank_size(n, 1);
    for (std::size_t v = 0; v < n; ++v) parent[v] = static_cast<VertexId>(v);

    const auto find = [&](VertexId v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (const auto& [u, v] : net.edges()) {
        VertexId ru = find(u), rv = find(v);
        if (ru == rv) continue;
        if (rank_size[ru] < rank_size[rv]) std::swap(ru, rv);
        parent[rv] = ru;
        rank_size[ru] += rank_size[rv];
    }

    ComponentReport report;
    report.labels.assign(n, 0);
    std::vector<VertexId> dense(n, static_cast<VertexId>(-1));
    for (std::size_t v = 0; v < n; ++v) {
        const VertexId root = find(static_cast<VertexId>(v));
        if (dense[root] == static_cast<VertexId>(-1)) {
            dense[root] = static_cast<VertexId>(report.sizes.size());
            report.sizes.push_back(0);
        }
        report.labels[v] = dense[root];
        ++report.sizes[dense[root]];
    }
    report.edge_counts.assign(report.sizes.size(), 0);
    for (const auto& e : net.edges()) ++report.edge_counts[report.labels[e.first]];
    report.cycle_flags.resize(report.sizes.size());
    for (std::size_t c = 0; c < report.sizes.size(); ++c)
        report.cycle_flags[c] = report.edge_counts[c] >= report.sizes[c];
    if (!report.sizes.empty()) {
        report.largest = static_cast<std::size_t>(
            std::max_element(report.sizes.begin(), report.sizes.end()) - report.sizes.begin());
        report.giant_fraction =
            static_cast<double>(report.sizes[report.largest]) / static_cast<double>(n);
    }
    return report;
}

Network bond_percolate(const Network& net, double transmissibility, Rng& rng) {
    if (!(transmissibility >= 0.0 && transmissibility <= 1.0))
        throw std::domain_error("bond_percolate: transmissibility must lie in [0,1]");
    std::vector<Edge> kept;
    kept.reserve(static_cast<std::size_t>(
        static_cast<double>(net.edge_count()) * transmissibility * 1.05 + 64.0));
    for (const auto& e : net.edges())
        if (rng.bernoulli(transmissibility)) kept.push_back(e);
    return Network(net.vertex_count(), std::move(kept), true);
}

std::int64_t infected_component_size(const Network& net, double transmissibility, Rng& rng) {
    const Network occupied = bond_percolate(net, transmissibility, rng);
    const auto n = static_cast<std::size_t>(net.vertex_count());
    const auto start = static_cast<VertexId>(rng.uniform_below(n));

    std::vector<std::uint8_t> visited(n, 0);
    std::vector<VertexId> stack{start};
    visited[start] = 1;
    std::int64_t size = 0;
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        ++size;
        for (VertexId w : occupied.neighbors(v)) {
            if (!visited[w]) {
                visited[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return size;
}

void save_edge_list(const Network& net, std::ostream& out) {
    out << net.vertex_count() << ' ' << net.edge_count() << '\n';
    for (const auto& [u, v] : net.edges()) out << u << ' ' << v << '\n';
}

Network load_edge_list(std::istream& in) {
    std::int64_t n = 0, m = 0;
    if (!(in >> n >> m)) throw std::runtime_error("edge list: malformed header");
    std::vector<Edge> edges(static_cast<std::size_t>(m));
    for (auto& e : edges)
        if (!(in >> e.first >> e.second)) throw std::runtime_error("edge list: truncated");
    return Network::from_edges(n, std::move(edges));
}

namespace {
constexpr char kMagic[4] = {'N', 'P', 'R', 'C'};
// the NPRC fields are little-endian; raw writes below rely on it
static_assert(std::endian::native == std::endian::little);
}

void save_binary(const Network& net, std::ostream& out) {
    out.write(kMagic, 4);
    const auto n = static_cast<std::uint64_t>(net.vertex_count());
    const auto m = static_cast<std::uint64_t>(net.edge_count());
    out.write(reinterpret_cast<const char*>(&n), 8);
    out.write(reinterpret_cast<const char*>(&m), 8);
    for (const auto& [u, v] : net.edges()) {
        out.write(reinterpret_cast<const char*>(&u), 4);
        out.write(reinterpret_cast<const char*>(&v), 4);
    }
}

Network load_binary(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("binary network: bad magic");
    std::uint64_t n = 0, m = 0;
    in.read(reinterpret_cast<char*>(&n), 8);
    in.read(reinterpret_cast<char*>(&m), 8);
    if (!in) throw std::runtime_error("binary network: truncated header");
    std::vector<Edge> edges(m);
    for (auto& e : edges) {
        in.read(reinterpret_cast<char*>(&e.first), 4);
        in.read(reinterpret_cast<char*>(&e.second), 4);
    }
    if (!in) throw std::runtime_error("binary network: truncated edges");
    return Network::from_edges(static_cast<std::int64_t>(n), std::move(edges));
}

void save_network(const Network& net, const std::string& path, bool binary) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    binary ? save_binary(net, out) : save_edge_list(net, out);
    if (!out) throw std::runtime_error("failed writing " + path);
}

Network load_network(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw std::runtime_error("cannot open " + path);
    char magic[4] = {0, 0, 0, 0};
    probe.read(magic, 4);
    probe.close();
    std::ifstream in(path, std::ios::binary);
    if (std::memcmp(magic, kMagic, 4) == 0) return load_binary(in);
    return load_edge_list(in);
}

}  // namespace netperc
