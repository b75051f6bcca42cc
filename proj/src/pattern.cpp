#include "achlio/pattern.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace achlio {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

int induced_edge_count(const Pattern& p, std::uint16_t subset) {
    int twice = 0;
    for (int v = 0; v < p.vertex_count(); ++v)
        if ((subset >> v) & 1u) twice += std::popcount(static_cast<unsigned>(p.row(v) & subset));
    return twice / 2;
}

} // namespace

Pattern::Pattern(int vertex_count, std::vector<Edge> edges, std::optional<Edge> marked_pair)
    : n_(vertex_count), edges_(std::move(edges)), marked_(marked_pair) {
    if (n_ < 1) fail("pattern needs at least one vertex");
    if (n_ > kMaxVertices) fail("pattern exceeds the 12-vertex cap");
    for (auto& e : edges_) {
        if (e.u == e.v) fail("pattern has a self-loop");
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= n_) fail("pattern edge endpoint out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        fail("pattern has a duplicate edge");
    for (const auto& e : edges_) {
        adj_[e.u] |= static_cast<std::uint16_t>(1u << e.v);
        adj_[e.v] |= static_cast<std::uint16_t>(1u << e.u);
    }
    if (marked_) {
        auto& m = *marked_;
        if (m.u > m.v) std::swap(m.u, m.v);
        if (m.u == m.v || m.u < 0 || m.v >= n_) fail("marked pair out of range");
        if (has_edge(m.u, m.v)) fail("marked pair must not be an edge");
    }
}

int Pattern::degree(int v) const { return std::popcount(static_cast<unsigned>(adj_[v])); }

Pattern Pattern::with_marked_pair(int u, int v) const {
    return Pattern(n_, edges_, make_edge(u, v));
}

Pattern Pattern::without_marked_pair() const { return Pattern(n_, edges_); }

Pattern Pattern::with_edge(int u, int v) const {
    auto es = edges_;
    es.push_back(make_edge(u, v));
    return Pattern(n_, std::move(es));
}

Pattern make_cycle(int t) {
    if (t < 3) fail("cycle needs t >= 3");
    std::vector<Edge> es;
    for (int i = 0; i < t; ++i) es.push_back(make_edge(i, (i + 1) % t));
    return Pattern(t, std::move(es));
}

Pattern make_clique(int t) {
    if (t < 1) fail("clique needs t >= 1");
    std::vector<Edge> es;
    for (int u = 0; u < t; ++u)
        for (int v = u + 1; v < t; ++v) es.push_back({u, v});
    return Pattern(t, std::move(es));
}

Pattern make_biclique(int a, int b) {
    if (a < 1 || b < 1) fail("biclique needs positive part sizes");
    std::vector<Edge> es;
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v) es.push_back({u, a + v});
    return Pattern(a + b, std::move(es));
}

Pattern make_path(int t) {
    if (t < 1) fail("path needs t >= 1");
    std::vector<Edge> es;
    for (int i = 0; i + 1 < t; ++i) es.push_back({i, i + 1});
    return Pattern(t, std::move(es));
}

Pattern parse_pattern(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> data;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        data.push_back(line);
    }
    if (data.empty()) fail("pattern text: empty input");

    auto parse_two = [](const std::string& s, const char* what) -> std::pair<long, long> {
        std::istringstream ls(s);
        long a = 0;
        long b = 0;
        std::string extra;
        if (!(ls >> a >> b) || (ls >> extra))
            fail(std::string("pattern text: malformed ") + what + " line: '" + s + "'");
        return {a, b};
    };

    const auto [nv, ne] = parse_two(data[0], "header");
    if (nv < 1 || nv > Pattern::kMaxVertices) fail("pattern text: vertex count out of range");
    if (ne < 0 || static_cast<std::size_t>(ne) + 1 != data.size())
        fail("pattern text: edge count does not match the number of edge lines");

    std::vector<Edge> es;
    for (std::size_t i = 1; i < data.size(); ++i) {
        const auto [u, v] = parse_two(data[i], "edge");
        if (u < 0 || v < 0 || u >= nv || v >= nv) fail("pattern text: vertex index out of range");
        if (u == v) fail("pattern text: self-loop");
        es.push_back(make_edge(static_cast<int>(u), static_cast<int>(v)));
    }
    std::sort(es.begin(), es.end());
    if (std::adjacent_find(es.begin(), es.end()) != es.end()) fail("pattern text: duplicate edge");
    return Pattern(static_cast<int>(nv), std::move(es));
}

std::string pattern_to_text(const Pattern& p) {
    std::ostringstream out;
    out << p.vertex_count() << " " << p.edge_count() << "\n";
    for (const auto& e : p.edges()) out << e.u << " " << e.v << "\n";
    return out.str();
}

namespace {

std::optional<Pattern> alias_pattern(const std::string& spec) {
    if (spec == "k33") return make_biclique(3, 3);
    if (spec == "k44") return make_biclique(4, 4);
    if (spec.size() < 2) return std::nullopt;
    const char kind = spec[0];
    const std::string digits = spec.substr(1);
    if (!std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c); }))
        return std::nullopt;
    const int t = std::stoi(digits);
    if (kind == 'c' && t >= 3 && t <= 12) return make_cycle(t);
    if (kind == 'k' && t >= 4 && t <= 10) return make_clique(t);
    if (kind == 'p' && t >= 3 && t <= 8) return make_path(t);
    return std::nullopt;
}

} // namespace

bool is_known_alias(const std::string& spec) { return alias_pattern(spec).has_value(); }

Pattern pattern_from_spec(const std::string& spec) {
    if (auto p = alias_pattern(spec)) return *p;
    std::ifstream in(spec);
    if (!in)
        fail("unknown pattern '" + spec +
             "' (not a builtin alias c3..c12/k4..k10/k33/k44/p3..p8, and not a readable file)");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pattern(buf.str());
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

// Per-vertex invariant: (degree, sorted neighbour degrees).  Isomorphisms
// must respect it.
using VertexSig = std::pair<int, std::vector<int>>;

std::vector<VertexSig> vertex_signatures(const Pattern& p) {
    std::vector<VertexSig> sig(p.vertex_count());
    for (int v = 0; v < p.vertex_count(); ++v) {
        sig[v].first = p.degree(v);
        for (int w = 0; w < p.vertex_count(); ++w)
            if (p.has_edge(v, w)) sig[v].second.push_back(p.degree(w));
        std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    return sig;
}

bool iso_backtrack(const Pattern& a, const Pattern& b, const std::vector<VertexSig>& sa,
                   const std::vector<VertexSig>& sb, std::vector<int>& map,
                   std::uint16_t used, int depth, const std::optional<Edge>& ma,
                   const std::optional<Edge>& mb) {
    const int n = a.vertex_count();
    if (depth == n) return true;
    for (int cand = 0; cand < n; ++cand) {
        if ((used >> cand) & 1u) continue;
        if (sa[depth] != sb[cand]) continue;
        bool ok = true;
        for (int prev = 0; prev < depth && ok; ++prev)
            if (a.has_edge(depth, prev) != b.has_edge(cand, map[prev])) ok = false;
        if (ok && ma) {
            // Marked pair must map onto marked pair (as a set).
            const bool depth_marked = depth == ma->u || depth == ma->v;
            const bool cand_marked = cand == mb->u || cand == mb->v;
            if (depth_marked != cand_marked) ok = false;
        }
        if (!ok) continue;
        map[depth] = cand;
        if (iso_backtrack(a, b, sa, sb, map, used | static_cast<std::uint16_t>(1u << cand),
                          depth + 1, ma, mb))
            return true;
    }
    return false;
}

bool isomorphic_impl(const Pattern& a, const Pattern& b, bool respect_marked) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    if (respect_marked && (!a.marked_pair() || !b.marked_pair()))
        fail("marked isomorphism requires marked pairs on both patterns");
    auto sa = vertex_signatures(a);
    auto sb = vertex_signatures(b);
    {
        auto ca = sa;
        auto cb = sb;
        std::sort(ca.begin(), ca.end());
        std::sort(cb.begin(), cb.end());
        if (ca != cb) return false;
    }
    std::vector<int> map(a.vertex_count(), -1);
    const std::optional<Edge> ma = respect_marked ? a.marked_pair() : std::optional<Edge>{};
    const std::optional<Edge> mb = respect_marked ? b.marked_pair() : std::optional<Edge>{};
    return iso_backtrack(a, b, sa, sb, map, 0, 0, ma, mb);
}

} // namespace

bool are_isomorphic(const Pattern& a, const Pattern& b) { return isomorphic_impl(a, b, false); }

bool are_isomorphic_marked(const Pattern& a, const Pattern& b) {
    return isomorphic_impl(a, b, true);
}

std::vector<std::vector<int>> enumerate_automorphisms(const Pattern& p, std::size_t cap) {
    const int n = p.vertex_count();
    const auto sig = vertex_signatures(p);
    std::vector<std::vector<int>> out;
    std::vector<int> map(n, -1);
    bool gave_up = false;

    auto rec = [&](auto&& self, std::uint16_t used, int depth) -> void {
        if (gave_up) return;
        if (depth == n) {
            if (out.size() == cap) {
                gave_up = true;
                return;
            }
            out.push_back(map);
            return;
        }
        for (int cand = 0; cand < n && !gave_up; ++cand) {
            if ((used >> cand) & 1u) continue;
            if (sig[depth] != sig[cand]) continue;
            bool ok = true;
            for (int prev = 0; prev < depth && ok; ++prev)
                if (p.has_edge(depth, prev) != p.has_edge(cand, map[prev])) ok = false;
            if (!ok) continue;
            map[depth] = cand;
            self(self, used | static_cast<std::uint16_t>(1u << cand), depth + 1);
        }
    };
    rec(rec, 0, 0);
    if (gave_up) return {};
    return out;
}

// Minimum edge mask over vertex relabelings that respect the vertex-signature
// blocks.  Any isomorphism maps equal-signature vertices to each other, so
// restricting to block permutations keeps the key canonical; the key is a
// real edge mask of the pattern, so equal keys imply isomorphism.
std::uint64_t canonical_key(const Pattern& p) {
    const int n = p.vertex_count();
    if (n > 8) fail("canonical_key only supports patterns with at most 8 vertices");

    auto sig = vertex_signatures(p);
    // Vertices grouped by signature; blocks ordered by signature value so the
    // block layout itself is isomorphism-invariant.
    std::map<VertexSig, std::vector<int>> blocks;
    for (int v = 0; v < n; ++v) blocks[sig[v]].push_back(v);

    // target position ranges, block by block
    std::vector<std::vector<int>> block_vertices;
    block_vertices.reserve(blocks.size());
    for (auto& [key, vs] : blocks) block_vertices.push_back(vs);

    auto pair_bit = [n](int u, int v) {
        if (u > v) std::swap(u, v);
        return u * n - u * (u + 1) / 2 + (v - u - 1);
    };

    std::uint64_t best = ~0ULL;
    std::vector<int> perm(n, -1);

    // Enumerate block-respecting relabelings: vertices of block i occupy the
    // i-th contiguous range of labels.
    auto rec = [&](auto&& self, std::size_t bi, int next_label) -> void {
        if (bi == block_vertices.size()) {
            std::uint64_t mask = 0;
            for (const auto& e : p.edges()) mask |= 1ULL << pair_bit(perm[e.u], perm[e.v]);
            best = std::min(best, mask);
            return;
        }
        auto vs = block_vertices[bi];
        std::sort(vs.begin(), vs.end());
        do {
            for (std::size_t i = 0; i < vs.size(); ++i) perm[vs[i]] = next_label + static_cast<int>(i);
            self(self, bi + 1, next_label + static_cast<int>(vs.size()));
        } while (std::next_permutation(vs.begin(), vs.end()));
    };
    rec(rec, 0, 0);
    return best;
}

// ---------------------------------------------------------------------------
// Deletion classes

PatternClass minus_edges(const Pattern& h, int k) {
    const int e = h.edge_count();
    if (k < 0 || k > e) fail("minus_edges: k out of range");
    PatternClass out{h.without_marked_pair(), k, {}, {}};

    const bool use_keys = h.vertex_count() <= 8;
    std::unordered_map<std::uint64_t, std::size_t> by_key;

    auto classify = [&](Pattern&& form) {
        if (use_keys) {
            const std::uint64_t key = canonical_key(form);
            auto [it, inserted] = by_key.try_emplace(key, out.forms.size());
            if (inserted) {
                out.forms.push_back(std::move(form));
                out.multiplicity.push_back(0);
            }
            ++out.multiplicity[it->second];
        } else {
            for (std::size_t i = 0; i < out.forms.size(); ++i) {
                if (are_isomorphic(out.forms[i], form)) {
                    ++out.multiplicity[i];
                    return;
                }
            }
            out.forms.push_back(std::move(form));
            out.multiplicity.push_back(1);
        }
    };

    std::vector<int> pick(k);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == k) {
            std::vector<Edge> kept;
            kept.reserve(e - k);
            int pi = 0;
            for (int i = 0; i < e; ++i) {
                if (pi < k && pick[pi] == i) {
                    ++pi;
                    continue;
                }
                kept.push_back(h.edges()[i]);
            }
            classify(Pattern(h.vertex_count(), std::move(kept)));
            return;
        }
        for (int i = start; i <= e - (k - depth); ++i) {
            pick[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Densities and balance

Rational edge_density(const Pattern& p) { return Rational(p.edge_count(), p.vertex_count()); }

Rational max_density(const Pattern& p) {
    const int n = p.vertex_count();
    Rational best(0);
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        const auto subset = static_cast<std::uint16_t>(s);
        const Rational d(induced_edge_count(p, subset), std::popcount(s));
        if (d > best) best = d;
    }
    return best;
}

bool is_balanced(const Pattern& p) {
    const int n = p.vertex_count();
    const long long e = p.edge_count();
    // e'/v' <= e/v for every induced subgraph; adding edges within a vertex
    // set only raises density, so induced subgraphs suffice.
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        const auto subset = static_cast<std::uint16_t>(s);
        const long long es = induced_edge_count(p, subset);
        const long long vs = std::popcount(s);
        if (es * n > e * vs) return false;
    }
    return true;
}

bool is_balanced_extension_pair(const Pattern& h1, const Pattern& h2) {
    if (!h1.marked_pair()) fail("is_balanced_extension_pair: H1 has no marked pair");
    const Edge m = *h1.marked_pair();
    if (h2.vertex_count() != h1.vertex_count() || h2.edge_count() != h1.edge_count() + 1 ||
        !h2.has_edge(m.u, m.v))
        fail("is_balanced_extension_pair: H2 is not H1 plus the marked edge");
    for (const auto& e : h1.edges())
        if (!h2.has_edge(e.u, e.v))
            fail("is_balanced_extension_pair: H2 is not H1 plus the marked edge");

    const int n = h1.vertex_count();
    if (n <= 2) return true;
    const long long e = h1.edge_count();
    const auto required = static_cast<std::uint16_t>((1u << m.u) | (1u << m.v));
    const auto full = static_cast<std::uint16_t>((1u << n) - 1);
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        const auto subset = static_cast<std::uint16_t>(s);
        if ((subset & required) != required || subset == full) continue;
        const int vs = std::popcount(s);
        if (vs <= 2) continue;  // e(H') = 0 there, trivially fine
        const long long es = induced_edge_count(h1, subset);
        if (es * (n - 2) > e * (vs - 2)) return false;
    }
    return true;
}

bool has_balanced_extension_property(const Pattern& h, int k) {
    const int e = h.edge_count();
    if (k < 1 || k > e) fail("has_balanced_extension_property: k out of range");

    std::vector<int> pick(k);
    bool all_ok = true;
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (!all_ok) return;
        if (depth == k) {
            std::vector<Edge> kept;
            kept.reserve(e - k);
            int pi = 0;
            for (int i = 0; i < e; ++i) {
                if (pi < k && pick[pi] == i) {
                    ++pi;
                    continue;
                }
                kept.push_back(h.edges()[i]);
            }
            for (int pi2 = 0; pi2 < k && all_ok; ++pi2) {
                const Edge restored = h.edges()[pick[pi2]];
                const Pattern h1(h.vertex_count(), kept, restored);
                if (!is_balanced_extension_pair(h1, h1.with_edge(restored.u, restored.v)))
                    all_ok = false;
            }
            return;
        }
        for (int i = start; i <= e - (k - depth) && all_ok; ++i) {
            pick[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return all_ok;
}

// ---------------------------------------------------------------------------
// Sequence constructions

namespace {

std::vector<Pattern> grow_sequence(int n, std::vector<Edge> start, std::vector<Edge> additions) {
    std::vector<Pattern> seq;
    seq.reserve(additions.size() + 1);
    std::vector<Edge> cur = std::move(start);
    for (std::size_t i = 0; i <= additions.size(); ++i) {
        std::optional<Edge> mark;
        if (i < additions.size()) mark = additions[i];
        seq.emplace_back(n, cur, mark);
        if (i < additions.size()) cur.push_back(additions[i]);
    }
    return seq;
}

} // namespace

std::vector<Pattern> build_clique_sequence(int t) {
    if (t < 4) fail("build_clique_sequence: t >= 4 required");
    if (t > Pattern::kMaxVertices) fail("build_clique_sequence: t exceeds the vertex cap");
    const int half = t / 2;
    std::vector<Edge> start;
    std::vector<Edge> large_part;  // within {half..t-1}, the ceil(t/2) side
    std::vector<Edge> small_part;  // within {0..half-1}
    for (int u = 0; u < t; ++u) {
        for (int v = u + 1; v < t; ++v) {
            if ((u < half) != (v < half))
                start.push_back({u, v});
            else
                (u >= half ? large_part : small_part).push_back({u, v});
        }
    }
    // Missing edges of the larger part first (each part lexicographically):
    // for odd t the all-lexicographic order breaks the extension-pair
    // condition at the first small-part edge, e.g. t = 5 with {0,1} added
    // first has the 4-vertex subset {0,1,u,v} at density 5/2 > 7/3.
    std::sort(large_part.begin(), large_part.end());
    std::sort(small_part.begin(), small_part.end());
    std::vector<Edge> additions = std::move(large_part);
    additions.insert(additions.end(), small_part.begin(), small_part.end());
    return grow_sequence(t, std::move(start), std::move(additions));
}

std::vector<Pattern> build_biclique_sequence(int t) {
    if (t < 3) fail("build_biclique_sequence: t >= 3 required");
    if (2 * t > Pattern::kMaxVertices) fail("build_biclique_sequence: 2t exceeds the vertex cap");

    std::vector<Edge> start;
    std::vector<Edge> additions;
    auto add_complete = [&](std::vector<Edge>& dst, const std::vector<int>& a,
                            const std::vector<int>& b) {
        for (int u : a)
            for (int v : b) dst.push_back(make_edge(u, v));
    };

    if (t % 2 == 0) {
        const int h = t / 2;
        std::vector<int> v1, v2, v3, v4;
        for (int i = 0; i < h; ++i) {
            v1.push_back(i);
            v2.push_back(h + i);
            v3.push_back(2 * h + i);
            v4.push_back(3 * h + i);
        }
        add_complete(start, v1, v2);
        add_complete(start, v1, v4);
        add_complete(start, v3, v2);
        // matching V3-V4, then the rest of V3 x V4 lexicographically
        for (int i = 0; i < h; ++i) additions.push_back(make_edge(v3[i], v4[i]));
        std::vector<Edge> rest;
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j)
                if (i != j) rest.push_back(make_edge(v3[i], v4[j]));
        std::sort(rest.begin(), rest.end());
        additions.insert(additions.end(), rest.begin(), rest.end());
        return grow_sequence(2 * t, std::move(start), std::move(additions));
    }

    const int k = t / 2;
    std::vector<int> v1, v2, v5, v6;
    for (int i = 0; i < k; ++i) {
        v1.push_back(i);
        v2.push_back(k + i);
        v5.push_back(2 * k + 2 + i);
        v6.push_back(3 * k + 2 + i);
    }
    const int v3 = 2 * k;
    const int v4 = 2 * k + 1;
    add_complete(start, v1, v2);
    add_complete(start, v5, v6);
    for (int x : v2) start.push_back(make_edge(v3, x));
    for (int x : v6) start.push_back(make_edge(v3, x));
    start.push_back(make_edge(v3, v4));
    for (int x : v1) start.push_back(make_edge(v4, x));
    for (int x : v5) start.push_back(make_edge(v4, x));
    // matching V1-V6, matching V5-V2, then the rest lexicographically
    for (int i = 0; i < k; ++i) additions.push_back(make_edge(v1[i], v6[i]));
    for (int i = 0; i < k; ++i) additions.push_back(make_edge(v5[i], v2[i]));
    std::vector<Edge> rest;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j) {
                rest.push_back(make_edge(v1[i], v6[j]));
                rest.push_back(make_edge(v5[i], v2[j]));
            }
    std::sort(rest.begin(), rest.end());
    additions.insert(additions.end(), rest.begin(), rest.end());
    return grow_sequence(2 * t, std::move(start), std::move(additions));
}

} // namespace achlio
