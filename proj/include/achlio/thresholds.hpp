#pragma once

#include "achlio/pattern.hpp"
#include "achlio/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace achlio {

// Largest s with r^s <= (r-1)t + 1, by integer power comparison (no floating
// logarithms; exact at perfect powers like 3^2 = 9).
int s_param(int t, int r);

// theta(H, r, s) = (r^s (v-2) + 2) / (r^s (e - s) + (r^s - 1)/(r - 1)).
Rational theta_general(int v, int e, int r, int s);
Rational theta_general(const Pattern& h, int r, int s);

Rational theta_cycle(int t, int r);     // t >= 3, r >= 2; s = 1
Rational theta_clique(int t, int r);    // t >= 4, r >= 2; s = s_param
Rational theta_biclique(int t, int r);  // t >= 3, r >= 2; s = s_param

// Minimum of theta(H', r, s) over subgraphs H' with at least one edge and
// s in {0..e(H')-1}.  theta is decreasing in e' at fixed (v', s), so induced
// subgraphs dominate; the witness is the first minimizer in subset order.
struct ThetaStar {
    Rational theta;
    Pattern witness;
    int s = 0;
};
ThetaStar theta_star(const Pattern& h, int r);

struct ExponentPair {
    Rational x;
    Rational y;
};

// x_{k-1} = 2 + (x_k - 2) r, y_{k-1} = 1 + y_k r from (x_s, y_s) = (a, b);
// result[0] = (x_s, y_s), result[s] = (x_0, y_0).
std::vector<ExponentPair> exponent_sequence(const Rational& a, const Rational& b, int r, int s);

// Closed form x_k = r^(s-k) (a-2) + 2, y_k = r^(s-k) b + (r^(s-k)-1)/(r-1).
ExponentPair exponent_closed_form(const Rational& a, const Rational& b, int r, int s, int k);

enum class Family { cycle, clique, biclique, general };
const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

struct ThresholdReport {
    Family family = Family::general;
    int t = 0;                       // cycle/clique/biclique
    std::optional<Pattern> pattern;  // general
    int r = 2;
    int s = 0;
    Rational theta;
    Rational exponent;                   // 2 - theta
    std::vector<ExponentPair> sequence;  // empty when v(H) <= 2
};

ThresholdReport threshold_report_cycle(int t, int r);
ThresholdReport threshold_report_clique(int t, int r);
ThresholdReport threshold_report_biclique(int t, int r);
ThresholdReport threshold_report_general(const Pattern& h, int r, int s);

} // namespace achlio
