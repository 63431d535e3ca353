#pragma once

#include "tits/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tits {

using Root = QVec;

enum class RootType { A, B, C, D, E6, E7, E8, F4, G2, BC };

std::string type_name(RootType t);
RootType parse_root_type(const std::string& s);

struct RootSystem {
    RootType type;
    int rank;
    std::vector<Root> roots;        // sorted lexicographically
    std::vector<Root> simple_roots;  // Bourbaki order

    std::size_t dim() const { return roots.empty() ? 0 : roots[0].size(); }
    bool contains(const Root& b) const;
    // b with b/2 not a root
    std::vector<Root> reduced() const;
    std::vector<Root> positive() const;
    bool is_positive(const Root& b) const;
    Root highest_root() const;
};

struct Rank2Subsystem {
    const RootSystem* ambient;
    std::vector<Root> members;
    std::pair<Root, Root> basis_pair;

    std::vector<Root> reduced() const;
};

RootSystem build_root_system(RootType type, int rank);
Root star_reduction(const Root& b, const RootSystem& phi);
Rank2Subsystem rank2_closed_subsystem(const RootSystem& phi, const Root& b, const Root& bp);
std::optional<std::vector<Root>> circular_order(const Rank2Subsystem& psi, const Root& b, const Root& bp);
// Independent re-check of the cone condition on a proposed order.
bool circular_order_valid(const Rank2Subsystem& psi, const std::vector<Root>& order);
Root reflect(const Root& b, const Root& c);
Root coroot(const Root& b);  // 2b/(b,b)

std::string root_to_string(const Root& b);  // e.g. "-e1-e2", "1/2(e1+...)" spelled per coordinate

// ε-coordinate helpers: e(i, d) is ε_i (1-based) in dimension d
Root eps(int i, int d);

}  // namespace tits

namespace tits {

// One (b, b') pair of the rank-2 circular-order table; `expected` empty means no order exists.
struct CircularSubcase {
    std::string name;
    Root b, bp;
    std::optional<std::vector<Root>> expected;
};

struct CircularCase {
    std::string label;  // echelonnage label
    RootType type;
    int rank;
    std::vector<CircularSubcase> subcases;
};

const std::vector<CircularCase>& circular_order_table();

// Equal up to global negation and reversal.
bool orders_equivalent(const std::vector<Root>& a, const std::vector<Root>& b);

struct CircularOutcome {
    std::string label, subcase;
    std::optional<std::vector<Root>> computed;
    bool matches;
    std::size_t reduced_count;
};
std::vector<CircularOutcome> run_circular_table(const std::string& label_filter = "");

}  // namespace tits
