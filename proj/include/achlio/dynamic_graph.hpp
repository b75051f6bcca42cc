#pragma once

#include "achlio/pattern.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace achlio {

// The growing simple graph G_i, adjacency kept as bitset rows so edge
// queries, common-neighbour tests and candidate masks are O(n/64).
// Single writer; concurrent readers are fine between mutations.
class DynamicGraph {
public:
    static constexpr int kMaxVerticesHost = 20000;

    explicit DynamicGraph(int n);

    int vertex_count() const { return n_; }
    int words() const { return words_; }
    long long edge_count() const { return edges_; }
    // Round index: one chosen edge per round, so it equals the edge count.
    long long round() const { return edges_; }
    long long max_edges() const { return static_cast<long long>(n_) * (n_ - 1) / 2; }

    bool has_edge(int u, int v) const {
        return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >>
                (static_cast<unsigned>(v) & 63u)) & 1u;
    }
    const std::uint64_t* row(int v) const {
        return bits_.data() + static_cast<std::size_t>(v) * words_;
    }
    int degree(int v) const { return deg_[v]; }

    void insert_edge(int u, int v);

    static DynamicGraph from_pattern(const Pattern& p);
    std::string to_text() const;

private:
    int n_;
    int words_;
    long long edges_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<int> deg_;
};

// Same text format as patterns, without the 12-vertex cap.
DynamicGraph parse_graph(const std::string& text);

// Linear index <-> unordered pair over {0..n-1}, used by the offer sampler.
long long pair_to_index(int n, int u, int v);
std::pair<int, int> pair_from_index(int n, long long idx);

} // namespace achlio
