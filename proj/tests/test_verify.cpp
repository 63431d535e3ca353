#include "tits/descent.hpp"
#include "tits/errors.hpp"
#include "tits/obstruction.hpp"
#include "tits/verify.hpp"

#include <doctest.h>

#include <random>

using namespace tits;

namespace {

GroupSpec split(Family f, int n, std::uint32_t p = 5) {
    GroupSpec s;
    s.family = f;
    s.n = n;
    s.p = p;
    return s;
}

GroupSpec unitary(int n, std::uint32_t p) {
    GroupSpec s = split(Family::U, n, p);
    s.ext.kind = ExtKind::ramified;
    return s;
}

int index_of(const GroupModel& g, const Root& gradient) {
    for (std::size_t i = 0; i < g.datum().size(); ++i)
        if (g.datum().simple_affine[i].gradient == gradient) return int(i);
    return -1;
}

}  // namespace

TEST_CASE("braid relation for the Sp4 pair with m = 4") {
    GroupModel g(split(Family::Sp, 4));
    auto r = check_braid(g, 1, 2);
    CHECK(r.details["m"] == "4");
    CHECK(r.status == Status::holds);
}

TEST_CASE("SO7 pair without circular order still commutes") {
    GroupModel g(split(Family::SO_odd, 7));
    const int i = index_of(g, -eps(1, 3) - eps(2, 3));
    const int j = index_of(g, eps(1, 3) - eps(2, 3));
    REQUIRE(i == 0);
    REQUIRE(j > 0);
    auto psi = rank2_closed_subsystem(g.roots(), -eps(1, 3) - eps(2, 3), eps(1, 3) - eps(2, 3));
    CHECK_FALSE(circular_order(psi, -eps(1, 3) - eps(2, 3), eps(1, 3) - eps(2, 3)).has_value());
    auto r = check_braid(g, i, j);
    CHECK(r.details["m"] == "2");
    CHECK(r.status == Status::holds);
}

TEST_CASE("braid relations hold for wild SU3 finite pairs and all SU5 pairs") {
    GroupModel g3(unitary(3, 2));
    CHECK(check_all_braids(g3).status != Status::fails);
    GroupModel g5(unitary(5, 2));
    auto r = check_all_braids(g5);
    CHECK(r.status == Status::holds);
    CHECK(r.details["held"].get<int>() > 0);
}

TEST_CASE("square classification") {
    SUBCASE("split SL3 affine square is the coroot at -1") {
        GroupModel g(split(Family::SL, 3));
        auto c = classify_square(g, 0);
        CHECK(c.kind == "coroot(-1)");
        CHECK(c.in_s2);
        CHECK(c.square == g.coroot_minus_one(g.datum().simple_affine[0].gradient));
    }
    SUBCASE("tame SU3 squares lie in S2") {
        GroupModel g(unitary(3, 3));
        CHECK(check_squares(g).status == Status::holds);
        auto c = classify_square(g, 0);
        CHECK(c.in_s2);
        CHECK(c.order_two);
    }
    SUBCASE("wild SU3 affine square leaves S2") {
        GroupModel g(unitary(3, 2));
        auto c = classify_square(g, 0);
        CHECK(c.kind == "norm_coroot(u)");
        CHECK_FALSE(c.in_s2);
        CHECK_FALSE(c.order_two);
        CHECK(c.in_kernel);
        CHECK(c.extra["u_equals_one"] == false);
        CHECK(check_squares(g).status == Status::fails);
    }
}

TEST_CASE("Tits group axioms") {
    for (const auto& spec : {split(Family::SL, 3), split(Family::Sp, 4)}) {
        GroupModel g(spec);
        CAPTURE(g.describe());
        auto r = verify_tits_axioms(g, 6);
        CHECK(r.status == Status::holds);
        CHECK(r.details["ball_size"].get<int>() > 1);
    }
    GroupModel wild(unitary(3, 2));
    auto r = verify_tits_axioms(wild, 4);
    CHECK(r.status == Status::fails);
    CHECK(r.details["partial"] == true);
    CHECK(r.details["condition_2b_reduced_words"] == true);
    CHECK(r.details["condition_2b_dagger"] == true);
    CHECK(r.details["condition_2a_squares"] == false);
}

TEST_CASE("default length bounds") {
    CHECK(default_length_bound(2) == 6);
    CHECK(default_length_bound(3) == 6);
    CHECK(default_length_bound(4) == 4);
}

TEST_CASE("weyl image is multiplicative") {
    for (const auto& spec : {split(Family::SL, 3), split(Family::Sp, 4), split(Family::SO_odd, 7), unitary(3, 3),
                             unitary(3, 2), unitary(6, 3)}) {
        GroupModel g(spec);
        CAPTURE(g.describe());
        CHECK(check_weyl_image_multiplicative(g).status == Status::holds);
    }
}

TEST_CASE("even unitary obstruction") {
    for (auto [n, p] : {std::pair{6, 3u}, std::pair{6, 2u}, std::pair{8, 3u}}) {
        GroupModel g(unitary(n, p));
        CAPTURE(g.describe());
        auto r = even_unitary_obstruction(g, 1);
        CHECK(r.status == Status::expected_absence_confirmed);
        CHECK(r.details["terminal_derived"] == true);
        CHECK(r.details["fixed_field_valuation_test"] == false);
        CHECK(r.details["full_system_concrete_witness"] == false);
        for (const auto& m : r.details["mutations"]) CHECK(m["witness_found"] == true);
    }
    CHECK_THROWS_AS(build_obstruction_system(GroupModel(unitary(5, 3))), config_error);
}

TEST_CASE("descent with the order-3 rotation of affine A2") {
    GroupModel g(split(Family::SL, 3));
    SigmaModel sigma(g, {"rotation", 1});
    auto fam = sigma_stable_representatives(g, sigma);
    CHECK(fam.certified);
    for (int i = 0; i < 3; ++i)
        CHECK(sigma.apply(fam.reps[std::size_t(i)]) == fam.reps[std::size_t(sigma.permutation()[std::size_t(i)])]);
    auto r = descend_and_verify(g, {"rotation", 1}, 5);
    CHECK(r.status == Status::holds);
    CHECK(r.details["orbits"].size() == 1);
    CHECK(r.details["relative_simple_reflections"].empty());
    CHECK(r.details["S2_sigma_order"] == 1);
}

TEST_CASE("trivial sigma reduces to the split axioms") {
    GroupModel g(split(Family::SL, 3));
    auto d = descend_and_verify(g, {"none", 1}, 5);
    auto v = verify_tits_axioms(g, 5);
    CHECK(d.status == v.status);
    CHECK(d.details["ball_size"] == v.details["ball_size"]);
    CHECK(d.details["length_additive_pairs"] == v.details["length_additive_pairs"]);
    CHECK(d.details["S2_sigma_order"] == d.details["S2_order"]);
}

TEST_CASE("quasi-split SU3 representatives are sigma-fixed") {
    GroupModel g(unitary(3, 3));
    SigmaModel sigma(g, {"none", 1});
    auto fam = sigma_stable_representatives(g, sigma);
    CHECK(fam.certified);
    for (const auto& n : fam.reps) CHECK(sigma.apply(n) == n);
    CHECK(descend_and_verify(g, {"none", 1}, 6).status == Status::holds);
}

TEST_CASE("SL4 with the order-2 rotation") {
    GroupModel g(split(Family::SL, 4));
    auto r = descend_and_verify(g, {"rotation", 2}, 5);
    CHECK(r.status == Status::holds);
    REQUIRE(r.details["relative_simple_reflections"].size() == 2);

    // m(s)^2 for the orbit {s0, s2} with m = 2 is the product of the two coroots at -1
    SigmaModel sigma(g, {"rotation", 2});
    auto fam = sigma_stable_representatives(g, sigma);
    Matrix m = fam.reps[0] * fam.reps[2];
    const auto& d = g.datum();
    CHECK(m * m == g.coroot_minus_one(d.simple_affine[0].gradient) * g.coroot_minus_one(d.simple_affine[2].gradient));
}

TEST_CASE("sigma-fixed elements form a subgroup") {
    GroupModel g(split(Family::SL, 4));
    SigmaModel sigma(g, {"rotation", 2});
    auto fam = sigma_stable_representatives(g, sigma);
    std::vector<Matrix> fixed = {fam.reps[0] * fam.reps[2], fam.reps[1] * fam.reps[3]};
    for (const auto& s : sigma_fixed_s2(g, sigma)) fixed.push_back(s);
    std::mt19937 rng(3);
    for (int k = 0; k < 50; ++k) {
        Matrix x = Matrix::identity(g.field(), 4);
        for (int j = 0; j < 4; ++j) x = x * fixed[rng() % fixed.size()];
        CHECK(sigma.apply(x) == x);
    }
}

TEST_CASE("induced torus section is multiplicative and sigma-stable") {
    GroupModel g(split(Family::SL, 3));
    SigmaModel sigma(g, {"rotation", 1});
    const auto t = QuadExtNumber::t(g.field());
    auto section = [&](const std::vector<int>& lambda) {
        std::vector<QuadExtNumber> d;
        for (int x : lambda) d.push_back(x >= 0 ? t.pow(x) : t.inverse().pow(-x));
        return Matrix::diagonal(d);
    };
    std::vector<std::vector<int>> lambdas = {{1, -1, 0}, {0, 1, -1}, {2, 0, -2}, {-1, -1, 2}};
    for (const auto& a : lambdas)
        for (const auto& b : lambdas) {
            std::vector<int> s = {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
            CHECK(section(a) * section(b) == section(s));
        }
    for (const auto& a : lambdas) {
        Matrix img = sigma.apply(section(a));
        CHECK(img.is_diagonal());
        // sigma permutes the coordinates of lambda
        std::vector<int> rot = {a[1], a[2], a[0]};
        CHECK(img == section(rot));
    }
}

TEST_CASE("twists that do not preserve the form are rejected") {
    GroupModel g(split(Family::Sp, 4));
    CHECK_THROWS_AS(SigmaModel(g, {"rotation", 1}), config_error);
    GroupModel u(unitary(6, 3));
    CHECK_THROWS_AS(SigmaModel(u, {"none", 1}), config_error);
}
