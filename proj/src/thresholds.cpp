#include "achlio/thresholds.hpp"

#include <bit>
#include <stdexcept>

namespace achlio {

namespace {

[[noreturn]] void domain(const std::string& msg) { throw std::domain_error(msg); }

void require_r(int r) {
    if (r < 2) domain("r >= 2 required");
}

} // namespace

int s_param(int t, int r) {
    if (t < 3) domain("s_param: t >= 3 required");
    require_r(r);
    const long long target = static_cast<long long>(r - 1) * t + 1;
    // power <= target/r (integer floor) is exactly power*r <= target, so the
    // loop exits with the maximal s such that r^s <= target.
    int s = 0;
    long long power = 1;
    while (power <= target / r) {
        power *= r;
        ++s;
    }
    return s;
}

Rational theta_general(int v, int e, int r, int s) {
    require_r(r);
    if (v < 1 || e < 1) domain("theta_general: pattern must have an edge");
    if (s < 0 || s > e - 1) domain("theta_general: s must lie in {0..e(H)-1}");
    const BigInt rs = bigint_pow(r, static_cast<unsigned>(s));
    const BigInt geometric = (rs - 1) / (r - 1);
    const BigInt num = rs * (v - 2) + 2;
    const BigInt den = rs * (e - s) + geometric;
    if (den <= 0) domain("theta_general: nonpositive denominator");
    return Rational(num, den);
}

Rational theta_general(const Pattern& h, int r, int s) {
    return theta_general(h.vertex_count(), h.edge_count(), r, s);
}

Rational theta_cycle(int t, int r) {
    if (t < 3) domain("theta_cycle: t >= 3 required");
    require_r(r);
    return Rational(static_cast<long long>(r) * (t - 2) + 2,
                    static_cast<long long>(r) * (t - 1) + 1);
}

Rational theta_clique(int t, int r) {
    if (t < 4) domain("theta_clique: t >= 4 required");
    require_r(r);
    return theta_general(t, t * (t - 1) / 2, r, s_param(t, r));
}

Rational theta_biclique(int t, int r) {
    if (t < 3) domain("theta_biclique: t >= 3 required");
    require_r(r);
    return theta_general(2 * t, t * t, r, s_param(t, r));
}

ThetaStar theta_star(const Pattern& h, int r) {
    require_r(r);
    const int n = h.vertex_count();
    if (n > 10) domain("theta_star: patterns above 10 vertices not supported");
    if (h.edge_count() < 1) domain("theta_star: pattern has no edge");

    std::optional<ThetaStar> best;
    for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
        int verts[Pattern::kMaxVertices];
        int v = 0;
        for (int i = 0; i < n; ++i)
            if ((subset >> i) & 1u) verts[v++] = i;
        std::vector<Edge> edges;
        for (int i = 0; i < v; ++i)
            for (int j = i + 1; j < v; ++j)
                if (h.has_edge(verts[i], verts[j])) edges.push_back({i, j});
        const int e = static_cast<int>(edges.size());
        if (e < 1) continue;
        for (int s = 0; s <= e - 1; ++s) {
            Rational theta = theta_general(v, e, r, s);
            if (!best || theta < best->theta)
                best = ThetaStar{std::move(theta), Pattern(v, edges), s};
        }
    }
    return *best;
}

std::vector<ExponentPair> exponent_sequence(const Rational& a, const Rational& b, int r, int s) {
    require_r(r);
    if (s < 1) domain("exponent_sequence: s >= 1 required");
    if (!(a > Rational(2))) domain("exponent_sequence: a > 2 required");
    if (!(b > Rational(0))) domain("exponent_sequence: b > 0 required");
    std::vector<ExponentPair> seq;
    seq.push_back({a, b});
    for (int k = s; k >= 1; --k) {
        const auto& [x, y] = seq.back();
        seq.push_back({Rational(2) + (x - Rational(2)) * Rational(r),
                       Rational(1) + y * Rational(r)});
    }
    return seq;
}

ExponentPair exponent_closed_form(const Rational& a, const Rational& b, int r, int s, int k) {
    require_r(r);
    if (k < 0 || k > s) domain("exponent_closed_form: k must lie in {0..s}");
    const BigInt rp = bigint_pow(r, static_cast<unsigned>(s - k));
    const BigInt geometric = (rp - 1) / (r - 1);
    return {Rational(rp) * (a - Rational(2)) + Rational(2),
            Rational(rp) * b + Rational(geometric)};
}

const char* family_name(Family f) {
    switch (f) {
        case Family::cycle: return "cycle";
        case Family::clique: return "clique";
        case Family::biclique: return "biclique";
        case Family::general: return "general";
    }
    return "unknown";
}

std::optional<Family> family_from_name(const std::string& name) {
    if (name == "cycle") return Family::cycle;
    if (name == "clique") return Family::clique;
    if (name == "biclique") return Family::biclique;
    if (name == "general") return Family::general;
    return std::nullopt;
}

namespace {

ThresholdReport make_report(Family family, int t, std::optional<Pattern> pattern, int r, int s,
                            Rational theta, int seq_a, int seq_b) {
    ThresholdReport rep;
    rep.family = family;
    rep.t = t;
    rep.pattern = std::move(pattern);
    rep.r = r;
    rep.s = s;
    rep.exponent = Rational(2) - theta;
    rep.theta = std::move(theta);
    if (seq_a > 2 && s >= 1) rep.sequence = exponent_sequence(seq_a, seq_b, r, s);
    return rep;
}

} // namespace

ThresholdReport threshold_report_cycle(int t, int r) {
    return make_report(Family::cycle, t, std::nullopt, r, 1, theta_cycle(t, r), t, t - 1);
}

ThresholdReport threshold_report_clique(int t, int r) {
    const int s = s_param(t, r);
    return make_report(Family::clique, t, std::nullopt, r, s, theta_clique(t, r), t,
                       t * (t - 1) / 2 - s);
}

ThresholdReport threshold_report_biclique(int t, int r) {
    const int s = s_param(t, r);
    return make_report(Family::biclique, t, std::nullopt, r, s, theta_biclique(t, r), 2 * t,
                       t * t - s);
}

ThresholdReport threshold_report_general(const Pattern& h, int r, int s) {
    return make_report(Family::general, 0, h, r, s, theta_general(h, r, s), h.vertex_count(),
                       h.edge_count() - s);
}

} // namespace achlio
