#include "tits/errors.hpp"
#include "tits/groups.hpp"

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

Matrix from_ints(const GroupModel& g, const std::vector<std::vector<std::int64_t>>& rows) {
    Matrix m(g.field(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = g.scalar(rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("SL2 pinning and representatives") {
    GroupModel g(split(Family::SL, 2));
    const Root a = g.datum().simple_affine[1].gradient;
    CHECK(g.root_subgroup(a, g.scalar(1)) == from_ints(g, {{1, 1}, {0, 1}}));
    // sign convention forced by x_a(1) x_{-a}(1) x_a(1) = antidiag(1, -1)
    CHECK(g.root_subgroup(-a, g.scalar(1)) == from_ints(g, {{1, 0}, {-1, 1}}));
    CHECK(g.root_subgroup(a, g.scalar(1)) * g.root_subgroup(-a, g.scalar(1)) * g.root_subgroup(a, g.scalar(1)) ==
          g.rep(1));

    CHECK(g.rep(1) == from_ints(g, {{0, 1}, {-1, 0}}));
    CHECK(g.rep(1) * g.rep(1) == from_ints(g, {{-1, 0}, {0, -1}}));
    CHECK(g.rep(1) * g.rep(1) == g.coroot_minus_one(a));

    Matrix n0(g.field(), 2);
    const auto w = g.uniformizer();
    n0.at(0, 1) = w.inverse();
    n0.at(1, 0) = -w;
    CHECK(g.rep(0) == n0);
}

TEST_CASE("root subgroup group law on random parameters") {
    std::mt19937 rng(11);
    for (const auto& spec : {split(Family::SL, 3), split(Family::Sp, 4), split(Family::SO_odd, 7), unitary(4, 3)}) {
        GroupModel g(spec);
        CAPTURE(g.describe());
        const auto& roots = g.roots().roots;
        std::vector<Root> usable;
        for (const auto& b : roots)
            if (!g.multipliable(b) && !g.divisible(b)) usable.push_back(b);
        REQUIRE(!usable.empty());
        const auto q = g.base().field->order();
        for (int k = 0; k < 50; ++k) {
            const Root& b = usable[rng() % usable.size()];
            auto u = QuadExtNumber(g.field(), LaurentNumber::constant(g.base(), 1 + rng() % (q - 1)));
            auto v = QuadExtNumber(g.field(), LaurentNumber::constant(g.base(), 1 + rng() % (q - 1))) *
                     QuadExtNumber::t(g.field());
            CHECK(g.root_subgroup(b, u) * g.root_subgroup(b, v) == g.root_subgroup(b, u + v));
            CHECK(g.is_member(g.root_subgroup(b, u)));
        }
    }
}

TEST_CASE("representatives map to simple reflections in every family") {
    for (const auto& spec : {split(Family::SL, 3), split(Family::SL, 4), split(Family::Sp, 4), split(Family::Sp, 6),
                             split(Family::SO_odd, 7), split(Family::SO_even, 8), unitary(3, 3), unitary(3, 2),
                             unitary(5, 3), unitary(6, 3), unitary(6, 2)}) {
        GroupModel g(spec);
        CAPTURE(g.describe());
        for (int i = 0; i < int(g.datum().size()); ++i) {
            CAPTURE(i);
            CHECK(g.is_member(g.rep(i)));
            CHECK(g.weyl_image(g.rep(i)) == g.datum().reflection(i));
            if (i > 0) CHECK(decompose(g.weyl_image(g.rep(i))).first == QVec(g.datum().dim(), Q(0)));
        }
    }
}

TEST_CASE("two affine constructions agree in split SL3") {
    GroupModel g(split(Family::SL, 3));
    CHECK(g.rep_affine_simple(0) == g.rep_affine_triple(0));
    CHECK(g.rep(0).det() == g.scalar(1));
}

TEST_CASE("units of the diagonal torus lie in the kernel") {
    GroupModel g(split(Family::SL, 3));
    auto u = QuadExtNumber(g.field(), LaurentNumber::constant(g.base(), 2));
    Matrix d = Matrix::diagonal({u, u.inverse(), g.scalar(1)});
    CHECK(g.weyl_image(d).is_identity());
    CHECK(g.in_t1(d));
}

TEST_CASE("squares of finite representatives") {
    GroupModel sp(split(Family::Sp, 4));
    // long simple root 2 e2
    const Root b = sp.datum().simple_affine[2].gradient;
    CHECK(b == Q(2) * eps(2, 2));
    Matrix sq = sp.rep(2) * sp.rep(2);
    CHECK(sq == sp.coroot_minus_one(b));
    CHECK_FALSE(sq.is_identity());

    GroupModel u3(unitary(3, 3));
    // the finite simple root of U3 is multipliable
    REQUIRE(u3.multipliable(u3.datum().simple_affine[1].gradient));
    CHECK((u3.rep(1) * u3.rep(1)).is_identity());
}

TEST_CASE("multipliable root element in tame U3") {
    GroupModel g(unitary(3, 3));
    const Root b = g.datum().simple_affine[1].gradient;
    const auto c = g.c_two();
    CHECK(c * c.gamma0() == g.scalar(2));
    Matrix x = g.root_subgroup(b, c, g.scalar(1));
    CHECK(g.is_member(x));
    CHECK(x.det() == g.scalar(1));
    bool unipotent_upper = true;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (!(x.at(i, j) == (i == j ? g.scalar(1) : g.scalar(0)))) unipotent_upper = false;
    CHECK(unipotent_upper);
}

TEST_CASE("U6 affine representative is a torus element times the Weyl representative") {
    GroupModel g(unitary(6, 3));
    const Root b = g.datum().simple_affine[0].gradient;
    Matrix d = g.rep(0) * *g.weyl_rep(b).inverse();
    REQUIRE(d.is_diagonal());
    const auto w = g.uniformizer();
    CHECK(d.at(0, 0) == (w.inverse()));
    CHECK(d.at(1, 1) == (w.gamma0().inverse()));
    CHECK(d.at(4, 4) == w);
    CHECK(d.at(5, 5) == w.gamma0());
    CHECK(d.at(2, 2) == g.scalar(1));
    CHECK(d.at(3, 3) == g.scalar(1));
}

TEST_CASE("unsupported specs are configuration errors") {
    CHECK_THROWS_AS(parse_family("G2-matrix"), config_error);
    CHECK_THROWS_AS(GroupModel(split(Family::Sp, 5)), config_error);
    CHECK_THROWS_AS(GroupModel(split(Family::SO_odd, 7, 2)), config_error);
    CHECK_THROWS_AS(GroupModel(split(Family::SL, 1)), config_error);
    GroupSpec unram = unitary(3, 3);
    unram.ext.kind = ExtKind::unramified;
    CHECK_THROWS_AS(GroupModel{unram}, config_error);
    GroupSpec ext_on_split = split(Family::SL, 3);
    ext_on_split.ext.kind = ExtKind::ramified;
    CHECK_THROWS_AS(GroupModel{ext_on_split}, config_error);
}
