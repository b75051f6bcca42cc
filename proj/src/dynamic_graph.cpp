#include "achlio/dynamic_graph.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace achlio {

DynamicGraph::DynamicGraph(int n) : n_(n), words_((n + 63) / 64) {
    if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    if (n > kMaxVerticesHost) throw std::invalid_argument("graph exceeds the host vertex cap");
    bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
    deg_.assign(n_, 0);
}

void DynamicGraph::insert_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    if (has_edge(u, v)) throw std::invalid_argument("duplicate edge");
    bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= 1ULL << (static_cast<unsigned>(v) & 63u);
    bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= 1ULL << (static_cast<unsigned>(u) & 63u);
    ++deg_[u];
    ++deg_[v];
    ++edges_;
}

DynamicGraph DynamicGraph::from_pattern(const Pattern& p) {
    DynamicGraph g(p.vertex_count());
    for (const auto& e : p.edges()) g.insert_edge(e.u, e.v);
    return g;
}

std::string DynamicGraph::to_text() const {
    std::ostringstream out;
    out << n_ << " " << edges_ << "\n";
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (has_edge(u, v)) out << u << " " << v << "\n";
    return out.str();
}

DynamicGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    long long nv = 0;
    long long ne = 0;
    long long seen = 0;
    DynamicGraph g(1);
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long a = 0;
        long long b = 0;
        std::string extra;
        if (!(ls >> a >> b) || (ls >> extra))
            throw std::invalid_argument("graph text: malformed line: '" + line + "'");
        if (!have_header) {
            nv = a;
            ne = b;
            if (nv < 1 || nv > DynamicGraph::kMaxVerticesHost)
                throw std::invalid_argument("graph text: vertex count out of range");
            if (ne < 0) throw std::invalid_argument("graph text: negative edge count");
            g = DynamicGraph(static_cast<int>(nv));
            have_header = true;
            continue;
        }
        if (a < 0 || b < 0 || a >= nv || b >= nv)
            throw std::invalid_argument("graph text: vertex index out of range");
        g.insert_edge(static_cast<int>(a), static_cast<int>(b));
        ++seen;
    }
    if (!have_header) throw std::invalid_argument("graph text: empty input");
    if (seen != ne) throw std::invalid_argument("graph text: edge count mismatch");
    return g;
}

long long pair_to_index(int n, int u, int v) {
    if (u > v) std::swap(u, v);
    return static_cast<long long>(u) * n - static_cast<long long>(u) * (u + 1) / 2 + (v - u - 1);
}

std::pair<int, int> pair_from_index(int n, long long idx) {
    // Initial guess from the quadratic, then an exact local correction.
    int u = static_cast<int>(n - 2 - std::floor((std::sqrt(8.0 * (static_cast<double>(n) * (n - 1) / 2 - 1 - static_cast<double>(idx)) + 1) - 1) / 2));
    if (u < 0) u = 0;
    if (u > n - 2) u = n - 2;
    auto row_start = [n](int r) {
        return static_cast<long long>(r) * n - static_cast<long long>(r) * (r + 1) / 2;
    };
    while (u > 0 && row_start(u) > idx) --u;
    while (u < n - 2 && row_start(u + 1) <= idx) ++u;
    const int v = static_cast<int>(idx - row_start(u)) + u + 1;
    return {u, v};
}

} // namespace achlio
