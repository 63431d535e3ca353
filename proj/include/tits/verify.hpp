#pragma once

#include "tits/groups.hpp"
#include "tits/report.hpp"

namespace tits {

// L = 6 for rank <= 3, L = 4 above
int default_length_bound(int rank);

// Both alternating m-fold products of the representatives of s_i and s_j.
CheckRecord check_braid(const GroupModel& g, int i, int j);
// One record per pair; skipped pairs have m = infinity.
CheckRecord check_all_braids(const GroupModel& g);

struct SquareClass {
    std::string kind;  // coroot(-1) | identity | norm_coroot(u) | other
    bool in_s2 = false;
    bool order_two = false;  // square of the square is the identity
    bool in_kernel = false;  // lies in T_1 and maps to the identity
    std::string predicted;   // kind predicted from the root data
    Matrix square;
    nlohmann::json extra = nlohmann::json::object();
};

SquareClass classify_square(const GroupModel& g, int i);
// holds iff every square of a simple representative lies in S2
CheckRecord check_squares(const GroupModel& g);

CheckRecord verify_tits_axioms(const GroupModel& g, int length_bound);

// weyl_image(n_a n_b n_c) = s_a s_b s_c for all products of at most three simple representatives
CheckRecord check_weyl_image_multiplicative(const GroupModel& g);

}  // namespace tits
