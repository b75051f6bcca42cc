#include "achlio/verify.hpp"

#include "achlio/pattern.hpp"
#include "achlio/thresholds.hpp"

#include <map>
#include <sstream>

namespace achlio {

namespace {

struct Ctx {
    VerifyOptions opt;
    VerificationReport report;
    std::map<std::pair<char, int>, Pattern> bases;             // ('k', t) / ('b', t)
    std::map<std::tuple<char, int, int>, PatternClass> minus;  // (kind, t, k)

    void add(std::string check, std::string family, int t, int r, bool passed, std::string lhs,
             std::string rhs, std::string witness = {}) {
        if (!passed) ++report.failures;
        report.records.push_back({std::move(check), std::move(family), t, r, passed,
                                  std::move(lhs), std::move(rhs), std::move(witness)});
    }

    const Pattern& base(char kind, int t) {
        auto it = bases.find({kind, t});
        if (it == bases.end())
            it = bases.emplace(std::pair{kind, t}, kind == 'k' ? make_clique(t)
                                                               : make_biclique(t, t))
                     .first;
        return it->second;
    }

    const PatternClass& minus_class(char kind, int t, int k) {
        auto it = minus.find({kind, t, k});
        if (it == minus.end()) it = minus.emplace(std::tuple{kind, t, k}, minus_edges(base(kind, t), k)).first;
        return it->second;
    }

    Rational clique_theta(int t, int r) {
        Rational th = theta_clique(t, r);
        if (opt.tamper_theta) th -= Rational(1, 10);
        return th;
    }
};

std::string frac(const Rational& q) { return q.str(); }

bool clique_strict_range(int t, int r) { return t >= 5 || (t == 4 && r >= 4); }

void check_s_lemmas(Ctx& c) {
    const int t_top = std::max(c.opt.t_max, c.opt.clique_t_max);
    for (int t = 3; t <= t_top; ++t) {
        for (int r = 2; r < c.opt.r_max; ++r) {
            const int s_here = s_param(t, r);
            const int s_next = s_param(t, r + 1);
            std::ostringstream w;
            w << "s(" << t << "," << r << ")=" << s_here << " vs s(" << t << "," << r + 1
              << ")=" << s_next;
            c.add("A1.s_nonincreasing_in_r", "s", t, r, s_here >= s_next, std::to_string(s_here),
                  std::to_string(s_next), w.str());
        }
    }
    for (int t = 4; t <= t_top; ++t) {
        for (int r = 2; r <= c.opt.r_max; ++r) {
            const int s = s_param(t, r);
            const bool strict = clique_strict_range(t, r);
            const bool ok = strict ? (2 * s < t) : (2 * s <= t);
            c.add("A2.s_le_half_t", "s", t, r, ok, std::to_string(2 * s), std::to_string(t),
                  strict ? "strict bound claimed" : "weak bound claimed");
        }
    }
}

void check_clique_lemmas(Ctx& c) {
    for (int t = 4; t <= c.opt.clique_t_max; ++t) {
        for (int r = 2; r <= c.opt.r_max; ++r) {
            const int s = s_param(t, r);
            const auto& cls = c.minus_class('k', t, s);
            int bad = -1;
            for (std::size_t i = 0; i < cls.forms.size(); ++i)
                if (!is_balanced(cls.forms[i])) bad = static_cast<int>(i);
            std::ostringstream w;
            w << cls.forms.size() << " deletion classes with s=" << s;
            if (bad >= 0) w << "; class " << bad << " not balanced";
            c.add("A3.minus_class_balanced", "clique", t, r, bad < 0,
                  std::to_string(cls.forms.size()), "all balanced", w.str());

            const bool ext = has_balanced_extension_property(c.base('k', t), s);
            c.add("A4.balanced_extension_property", "clique", t, r, ext, ext ? "holds" : "fails",
                  "holds", "k = s = " + std::to_string(s));
        }

        const auto seq = build_clique_sequence(t);
        bool all_pairs = true;
        std::size_t bad_idx = 0;
        for (std::size_t i = 0; i + 1 < seq.size() && all_pairs; ++i) {
            if (!is_balanced_extension_pair(seq[i], seq[i + 1].without_marked_pair())) {
                all_pairs = false;
                bad_idx = i;
            }
        }
        std::ostringstream w;
        w << "f = " << seq.size();
        if (!all_pairs) w << "; pair (H" << bad_idx + 1 << ", H" << bad_idx + 2 << ") fails";
        c.add("A5.sequence_extension_pairs", "clique", t, 0, all_pairs,
              std::to_string(seq.size() - 1), "all pairs balanced", w.str());
    }
}

void check_clique_inequalities(Ctx& c) {
    for (int t = 4; t <= c.opt.clique_t_max; ++t) {
        for (int r = 2; r <= c.opt.r_max; ++r) {
            const int s = s_param(t, r);
            const Rational theta = c.clique_theta(t, r);
            const long long choose2 = static_cast<long long>(t) * (t - 1) / 2;

            // Inequality A.1: theta * floor(t/2) <= 1 under its hypothesis.
            {
                const Rational lhs = theta * Rational(t / 2);
                const bool in_range = clique_strict_range(t, r);
                const bool holds = lhs <= Rational(1);
                std::string witness;
                if (!in_range)
                    witness = "outside stated hypothesis (needs t>=5, or t=4 with r>=4); value " +
                              std::string(holds ? "holds" : "does not hold") + " anyway";
                c.add("A.ineq1_theta_floor_half", "clique", t, r, in_range ? holds : true,
                      frac(lhs), "1", witness);
            }
            // Inequality A.2: (t-2) - (C(t,2)-s-1) theta > 0, all t>=4, r>=2.
            {
                const Rational lhs = Rational(t - 2) - Rational(choose2 - s - 1) * theta;
                c.add("A.ineq2_positive_power", "clique", t, r, lhs > Rational(0), frac(lhs),
                      "0 (strictly above)", "exponent of n in n^{t-2} p^{e-s-1}");
            }
            // Inequality A.3: (t-2) - (C(t,2)-s) theta < 0 under its hypothesis.
            {
                const Rational lhs = Rational(t - 2) - Rational(choose2 - s) * theta;
                const bool in_range = clique_strict_range(t, r);
                const bool holds = lhs < Rational(0);
                std::string witness = "exponent of n in n^{t-2} p^{e-s}";
                if (!in_range)
                    witness = "outside stated hypothesis (needs t>=5, or t=4 with r>=4); value " +
                              std::string(holds ? "is negative" : "is not negative") + " anyway";
                c.add("A.ineq3_negative_power", "clique", t, r, in_range ? holds : true, frac(lhs),
                      "0 (strictly below)", witness);
            }
        }
    }
}

void check_cycle_identities(Ctx& c) {
    for (int t = 3; t <= c.opt.t_max; ++t) {
        for (int r = 2; r <= c.opt.r_max; ++r) {
            const Rational theta = theta_cycle(t, r);
            const Rational lhs = Rational(t - 2) - Rational(t - 1) * theta;
            const Rational rhs = -Rational(t, static_cast<long long>(r) * (t - 1) + 1);
            c.add("C.negative_power_identity", "cycle", t, r, lhs == rhs && lhs < Rational(0),
                  frac(lhs), frac(rhs), "(t-2)-(t-1)theta = -t/(r(t-1)+1) < 0");
            const Rational pos = Rational(1) - theta;
            const Rational pos_ref = Rational(r - 1, static_cast<long long>(r) * (t - 1) + 1);
            c.add("C.positive_power_identity", "cycle", t, r, pos == pos_ref && pos > Rational(0),
                  frac(pos), frac(pos_ref), "1-theta = (r-1)/(r(t-1)+1) > 0");
        }
    }
}

void check_biclique_lemmas(Ctx& c) {
    const int brute_t_max = std::min(c.opt.t_max, Pattern::kMaxVertices / 2);
    for (int t = 3; t <= brute_t_max; ++t) {
        for (int r = 2; r <= c.opt.r_max; ++r) {
            const int s = s_param(t, r);
            const auto& cls = c.minus_class('b', t, s);
            std::vector<int> bad;
            for (std::size_t i = 0; i < cls.forms.size(); ++i)
                if (!is_balanced(cls.forms[i])) bad.push_back(static_cast<int>(i));

            bool ok = false;
            std::ostringstream w;
            w << cls.forms.size() << " deletion classes with s=" << s;
            if (t == 3 && r == 2) {
                // The single known exception: exactly K_{2,3} plus a pendant edge.
                const Pattern pendant(
                    6, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 5}});
                ok = bad.size() == 1 && are_isomorphic(cls.forms[bad[0]], pendant);
                if (ok) {
                    ++c.report.exception_sightings;
                    w << "; exactly one non-balanced class, isomorphic to K_{2,3}+pendant";
                } else {
                    w << "; expected exactly the K_{2,3}+pendant exception, found "
                      << bad.size() << " non-balanced classes";
                }
            } else {
                ok = bad.empty();
                if (!ok) {
                    ++c.report.exception_sightings;
                    w << "; unexpected non-balanced class " << bad[0];
                }
            }
            c.add("B1.minus_class_balanced", "biclique", t, r, ok,
                  std::to_string(cls.forms.size()),
                  (t == 3 && r == 2) ? "one known exception" : "all balanced", w.str());

            const bool ext = has_balanced_extension_property(c.base('b', t), s);
            c.add("B2.balanced_extension_property", "biclique", t, r, ext,
                  ext ? "holds" : "fails", "holds", "k = s = " + std::to_string(s));
        }
    }

    // The 4-partite (k,k,1,1) extension pair with its filled singleton edge.
    for (int k = 1; k <= 5; ++k) {
        std::vector<Edge> es;
        const int u = 2 * k;
        const int v = 2 * k + 1;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) es.push_back({i, k + j});
        for (int i = 0; i < k; ++i) {
            es.push_back(make_edge(i, v));      // (V1, V4)
            es.push_back(make_edge(u, k + i));  // (V3, V2)
        }
        const Pattern h1(2 * k + 2, es, Edge{u, v});
        const bool ok = is_balanced_extension_pair(h1, h1.with_edge(u, v));
        c.add("B3.pair_extension", "biclique", k, 0, ok, ok ? "holds" : "fails", "holds",
              "parts of size k=" + std::to_string(k) + " plus two singletons");
    }

    for (int t = 3; t <= brute_t_max; ++t) {
        const auto seq = build_biclique_sequence(t);
        bool all_pairs = true;
        std::size_t bad_idx = 0;
        for (std::size_t i = 0; i + 1 < seq.size() && all_pairs; ++i) {
            if (!is_balanced_extension_pair(seq[i], seq[i + 1].without_marked_pair())) {
                all_pairs = false;
                bad_idx = i;
            }
        }
        std::ostringstream w;
        w << "f = " << seq.size();
        if (!all_pairs) w << "; pair (H" << bad_idx + 1 << ", H" << bad_idx + 2 << ") fails";
        c.add(t % 2 == 0 ? "B4.sequence_extension_pairs_even" : "B5.sequence_extension_pairs_odd",
              "biclique", t, 0, all_pairs, std::to_string(seq.size() - 1), "all pairs balanced",
              w.str());
    }
}

void check_biclique_inequalities(Ctx& c) {
    for (int t = 3; t <= c.opt.t_max; ++t) {
        for (int r = 2; r <= c.opt.r_max; ++r) {
            const int s = s_param(t, r);
            const Rational theta = theta_biclique(t, r);
            {
                const Rational lhs = theta * Rational(t);
                c.add("B.ineq1_theta_two_over_t", "biclique", t, r, lhs < Rational(2), frac(lhs),
                      "2 (strictly below)", "-theta > -2/t");
            }
            {
                const Rational lhs =
                    Rational(2 * t - 2) - Rational(static_cast<long long>(t) * t - s - 1) * theta;
                c.add("B.ineq2_positive_power", "biclique", t, r, lhs > Rational(0), frac(lhs),
                      "0 (strictly above)", "exponent of n in n^{2t-2} p^{t^2-s-1}");
            }
            {
                const Rational lhs =
                    Rational(2 * t - 2) - Rational(static_cast<long long>(t) * t - s) * theta;
                c.add("B.ineq3_negative_power", "biclique", t, r, lhs < Rational(0), frac(lhs),
                      "0 (strictly below)", "exponent of n in n^{2t-2} p^{t^2-s}");
            }
        }
    }
}

} // namespace

VerificationReport verify_appendix(const VerifyOptions& opt) {
    Ctx c{opt, {}, {}, {}};
    check_s_lemmas(c);
    check_clique_lemmas(c);
    check_clique_inequalities(c);
    check_cycle_identities(c);
    check_biclique_lemmas(c);
    check_biclique_inequalities(c);
    if (c.report.exception_sightings != 1) {
        c.add("B1.exception_exactly_once", "biclique", 3, 2, false,
              std::to_string(c.report.exception_sightings), "1",
              "the K_{2,3}+pendant class must appear exactly once, at (t,r)=(3,2)");
    } else {
        c.add("B1.exception_exactly_once", "biclique", 3, 2, true, "1", "1",
              "the K_{2,3}+pendant class appears exactly once, at (t,r)=(3,2)");
    }
    return c.report;
}

} // namespace achlio
