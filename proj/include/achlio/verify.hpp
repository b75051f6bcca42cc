#pragma once

#include "achlio/rational.hpp"

#include <string>
#include <vector>

namespace achlio {

// One exact check at one grid point.  r = 0 marks r-independent checks and
// t doubles as the lemma's own parameter for checks without a t (B3's k).
struct VerificationRecord {
    std::string check_id;
    std::string family;
    int t = 0;
    int r = 0;
    bool passed = true;
    std::string lhs;
    std::string rhs;
    std::string witness;
};

struct VerifyOptions {
    int t_max = 7;         // cycles and biclique inequalities
    int clique_t_max = 8;  // clique lemmas and inequalities
    int r_max = 5;
    // Biclique brute-force lemmas need 2t-vertex patterns, so they stop at
    // the 12-vertex cap regardless of t_max.
    bool tamper_theta = false;  // test hook: perturbs clique theta, must trip a failure
};

struct VerificationReport {
    std::vector<VerificationRecord> records;
    int failures = 0;
    // The K_{2,3}-plus-pendant exception class: how many (t, r) grid points
    // produced a non-balanced deletion form (must end up exactly 1, at (3,2)).
    int exception_sightings = 0;
};

VerificationReport verify_appendix(const VerifyOptions& opt);

} // namespace achlio
