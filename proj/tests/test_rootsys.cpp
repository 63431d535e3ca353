#include "tits/errors.hpp"
#include "tits/rootsys.hpp"

#include <doctest.h>

#include <set>

using namespace tits;

namespace {

// Closure oracle: start from the simple roots and apply simple reflections until stable.
std::set<Root> closure_from_simple(const RootSystem& rs) {
    std::set<Root> seen(rs.simple_roots.begin(), rs.simple_roots.end());
    std::vector<Root> queue(seen.begin(), seen.end());
    while (!queue.empty()) {
        Root c = queue.back();
        queue.pop_back();
        for (const auto& s : rs.simple_roots) {
            Root r = reflect(s, c);
            if (seen.insert(r).second) queue.push_back(r);
        }
    }
    // BC: doubles of short simple roots are not generated by reflections of nondivisible ones
    if (rs.type == RootType::BC) {
        std::set<Root> extra;
        for (const auto& r : seen)
            if (dot(r, r) == 1) extra.insert(Q(2) * r);
        seen.insert(extra.begin(), extra.end());
    }
    return seen;
}

}  // namespace

TEST_CASE("root system cardinalities and closure") {
    struct C {
        RootType t;
        int r;
        std::size_t count;
    };
    for (auto c : {C{RootType::A, 2, 6}, C{RootType::A, 4, 20}, C{RootType::B, 2, 8}, C{RootType::B, 3, 18},
                   C{RootType::C, 3, 18}, C{RootType::D, 4, 24}, C{RootType::BC, 3, 24}, C{RootType::BC, 1, 4},
                   C{RootType::E6, 6, 72}, C{RootType::E7, 7, 126}, C{RootType::E8, 8, 240}, C{RootType::F4, 4, 48},
                   C{RootType::G2, 2, 12}}) {
        auto rs = build_root_system(c.t, c.r);
        CAPTURE(type_name(c.t));
        CHECK(rs.roots.size() == c.count);
        auto cl = closure_from_simple(rs);
        CHECK(std::vector<Root>(cl.begin(), cl.end()) == rs.roots);
        for (const auto& b : rs.roots) CHECK(rs.contains(-b));
        bool has_double = false;
        for (const auto& b : rs.roots)
            if (rs.contains(Q(2) * b)) has_double = true;
        CHECK(has_double == (c.t == RootType::BC));
        CHECK(rs.positive().size() * 2 == rs.roots.size());
    }
}

TEST_CASE("A2 and B2 root sets") {
    auto a2 = build_root_system(RootType::A, 2);
    std::set<Root> expect;
    for (auto [i, j] : {std::pair{1, 2}, {2, 3}, {1, 3}}) {
        expect.insert(eps(i, 3) - eps(j, 3));
        expect.insert(eps(j, 3) - eps(i, 3));
    }
    CHECK(std::set<Root>(a2.roots.begin(), a2.roots.end()) == expect);
    auto b2 = build_root_system(RootType::B, 2);
    CHECK(b2.contains(eps(1, 2)));
    CHECK(b2.contains(eps(1, 2) - eps(2, 2)));
    CHECK(!b2.contains(Q(2) * eps(1, 2)));
}

TEST_CASE("illegal type/rank pairs are configuration errors") {
    CHECK_THROWS_AS(build_root_system(RootType::E6, 7), config_error);
    CHECK_THROWS_AS(build_root_system(RootType::G2, 3), config_error);
    CHECK_THROWS_AS(build_root_system(RootType::BC, 0), config_error);
    CHECK_THROWS_AS(parse_root_type("G2-matrix"), config_error);
}

TEST_CASE("star reduction") {
    auto bc3 = build_root_system(RootType::BC, 3);
    CHECK(star_reduction(Q(2) * eps(1, 3), bc3) == eps(1, 3));
    CHECK(star_reduction(eps(1, 3) - eps(2, 3), bc3) == eps(1, 3) - eps(2, 3));
    for (const auto& b : bc3.roots) {
        Root s = star_reduction(b, bc3);
        CHECK(star_reduction(s, bc3) == s);
        CHECK(!bc3.contains(Q(1, 2) * s));
    }
    CHECK_THROWS_AS(star_reduction(Q(3) * eps(1, 3), bc3), domain_error);
}

TEST_CASE("rank-2 closed subsystems") {
    auto b3 = build_root_system(RootType::B, 3);
    Root b = -eps(1, 3) - eps(2, 3);
    auto s1 = rank2_closed_subsystem(b3, b, eps(2, 3) - eps(3, 3));
    CHECK(s1.members.size() == 6);
    auto s2 = rank2_closed_subsystem(b3, b, eps(1, 3) - eps(2, 3));
    CHECK(s2.members.size() == 8);
    auto a3 = build_root_system(RootType::A, 3);
    auto s3 = rank2_closed_subsystem(a3, eps(1, 4) - eps(2, 4), eps(3, 4) - eps(4, 4));
    CHECK(s3.members.size() == 4);
    for (const auto& x : s2.members)
        for (const auto& y : s2.members) {
            Root z = x + y;
            if (!is_zero(z) && b3.contains(z)) CHECK(std::binary_search(s2.members.begin(), s2.members.end(), z));
        }
    CHECK_THROWS_AS(rank2_closed_subsystem(b3, b, Q(-1) * b), domain_error);
}

TEST_CASE("circular order examples") {
    auto c3 = build_root_system(RootType::C, 3);
    Root b = Q(-2) * eps(1, 3), bp = eps(1, 3) - eps(2, 3);
    auto got = circular_order(rank2_closed_subsystem(c3, b, bp), b, bp);
    REQUIRE(got);
    std::vector<Root> expect = {b, -eps(1, 3) - eps(2, 3), Q(-2) * eps(2, 3), bp, Q(2) * eps(1, 3),
                                eps(1, 3) + eps(2, 3), Q(2) * eps(2, 3), eps(2, 3) - eps(1, 3)};
    CHECK(*got == expect);

    auto b3 = build_root_system(RootType::B, 3);
    Root bb = -eps(1, 3) - eps(2, 3);
    CHECK(!circular_order(rank2_closed_subsystem(b3, bb, bp), bb, bp));

    auto bc3 = build_root_system(RootType::BC, 3);
    auto psi = rank2_closed_subsystem(bc3, Q(-2) * eps(1, 3), bp);
    CHECK(psi.reduced().size() == 8);
    auto got2 = circular_order(psi, -eps(1, 3), bp);
    REQUIRE(got2);
    CHECK(circular_order_valid(psi, *got2));
    CHECK(got2->front() == -eps(1, 3));
    CHECK((*got2)[3] == bp);
    // non-reduced input
    CHECK_THROWS_AS(circular_order(psi, Q(-2) * eps(1, 3), bp), domain_error);
}

TEST_CASE("circular order table rows") {
    for (const auto& o : run_circular_table()) {
        CAPTURE(o.label);
        CAPTURE(o.subcase);
        if (o.label.rfind("G_2", 0) == 0) {
            // the Q-span subsystem is all of G2; the listed six-cycle is not a circular order of it
            CHECK(o.reduced_count == 12);
            CHECK(!o.computed);
            continue;
        }
        CHECK(o.matches);
    }
}

TEST_CASE("reflections") {
    CHECK(reflect(eps(1, 3) - eps(2, 3), eps(2, 3) - eps(3, 3)) == eps(1, 3) - eps(3, 3));
    auto b3 = build_root_system(RootType::B, 3);
    for (const auto& b : b3.roots) {
        CHECK(reflect(b, b) == -b);
        for (const auto& c : b3.roots) {
            CHECK(b3.contains(reflect(b, c)));
            CHECK(reflect(b, reflect(b, c)) == c);
        }
    }
    CHECK_THROWS_AS(reflect(Root(3, Q(0)), eps(1, 3)), domain_error);
}
