#include "tits/affine.hpp"
#include "tits/groups.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace tits;

namespace {

// Poincare series of an affine Weyl group from the exponents of its finite Weyl group:
// prod_i (1 + q + ... + q^{m_i}) / (1 - q^{m_i}), truncated at degree `deg`.
std::vector<long> bott_series(const std::vector<int>& exponents, int deg) {
    std::vector<long> s(std::size_t(deg) + 1, 0);
    s[0] = 1;
    for (int m : exponents) {
        std::vector<long> t(s.size(), 0);
        for (int i = 0; i <= deg; ++i)
            for (int k = 0; k <= m && i + k <= deg; ++k) t[std::size_t(i + k)] += s[std::size_t(i)];
        for (int i = m; i <= deg; ++i) t[std::size_t(i)] += t[std::size_t(i - m)];
        s = t;
    }
    return s;
}

std::vector<IwahoriWeylElement> simple_reflections(const AffineRootDatum& d) {
    std::vector<IwahoriWeylElement> g;
    for (std::size_t i = 0; i < d.size(); ++i) g.push_back(d.reflection(int(i)));
    return g;
}

// Number of geodesic paths from the identity to each element, by BFS over the Cayley graph.
std::map<IwahoriWeylElement, long> geodesic_counts(const AffineRootDatum& d, int radius) {
    auto gens = simple_reflections(d);
    std::map<IwahoriWeylElement, int> dist;
    std::map<IwahoriWeylElement, long> count;
    std::vector<IwahoriWeylElement> layer = {IwahoriWeylElement::identity(d.dim())};
    dist[layer[0]] = 0;
    count[layer[0]] = 1;
    for (int r = 1; r <= radius; ++r) {
        std::vector<IwahoriWeylElement> next;
        for (const auto& w : layer)
            for (const auto& s : gens) {
                auto x = w * s;
                auto it = dist.find(x);
                if (it == dist.end()) {
                    dist[x] = r;
                    count[x] = 0;
                    next.push_back(x);
                }
                if (dist[x] == r) count[x] += count[w];
            }
        layer = next;
    }
    return count;
}

GroupSpec unitary(int n, std::uint32_t p) {
    GroupSpec s;
    s.family = Family::U;
    s.n = n;
    s.p = p;
    s.ext.kind = ExtKind::ramified;
    return s;
}

}  // namespace

TEST_CASE("split SL2 has two parallel walls") {
    auto d = split_affine_datum(RootType::A, 1, "A_n");
    REQUIRE(d.size() == 2);
    const Root a = d.simple_affine[1].gradient;
    CHECK(d.simple_affine[1].offset == Q(0));
    CHECK(d.simple_affine[0].gradient == -a);
    CHECK(d.simple_affine[0].offset == Q(1));
    CHECK(coxeter_matrix(d)[0][1] == kCoxeterInfinity);
}

TEST_CASE("coxeter matrices match the classical affine diagrams") {
    struct C {
        RootType t;
        int r;
        const char* label;
    };
    for (auto c : {C{RootType::A, 2, "A_n"}, C{RootType::A, 3, "A_n"}, C{RootType::C, 2, "C_n"},
                   C{RootType::C, 3, "C_n"}, C{RootType::B, 3, "B_n"}, C{RootType::D, 4, "D_n"}}) {
        CAPTURE(c.label);
        CAPTURE(c.r);
        auto d = split_affine_datum(c.t, c.r, c.label);
        auto expected = standard_coxeter_matrix(c.label, c.r);
        REQUIRE(expected);
        CHECK(coxeter_matrix(d) == *expected);
    }
}

TEST_CASE("affine C2 has the 4,4 chain") {
    auto d = split_affine_datum(RootType::C, 2, "C_n");
    auto m = coxeter_matrix(d);
    CHECK(m[0][1] == 4);
    CHECK(m[1][2] == 4);
    CHECK(m[0][2] == 2);
}

TEST_CASE("ramified U6 datum") {
    auto d = affine_datum_for(unitary(6, 3));
    REQUIRE(d.size() == 4);
    CHECK(d.simple_affine[0].gradient == -eps(1, 3) - eps(2, 3));
    CHECK(d.simple_affine[0].offset == Q(1, 2));
    CHECK(d.simple_affine[3].gradient == Q(2) * eps(3, 3));
    CHECK(d.gamma_prime(eps(1, 3) - eps(2, 3)).step == Q(1, 2));
    CHECK(d.gamma_prime(Q(2) * eps(1, 3)).step == Q(1));
    auto m = coxeter_matrix(d);
    CHECK(m[0][1] == 2);
    auto expected = standard_coxeter_matrix(d.echelonnage_label, 3);
    REQUIRE(expected);
    CHECK(m == *expected);

    // s_{a0}: translation 1/2 (e1 + e2), finite part s_{-e1-e2}
    auto [lambda, w0] = decompose(d.reflection(0));
    CHECK(lambda == QVec{Q(1, 2), Q(1, 2), Q(0)});
    CHECK(w0 == affine_reflection(AffineRoot{-eps(1, 3) - eps(2, 3), Q(0)}).finite_part);
}

TEST_CASE("wild odd unitary value sets") {
    auto d = affine_datum_for(unitary(3, 2));
    CHECK(d.gamma_prime(eps(1, 1)).step == Q(1, 2));
    CHECK(d.gamma_prime(eps(1, 1)).shift == Q(1, 4));
}

TEST_CASE("length growth matches the Poincare series") {
    struct C {
        RootType t;
        const char* label;
        std::vector<int> exponents;
    };
    for (const auto& c : {C{RootType::A, "A_n", {1, 2}}, C{RootType::C, "C_n", {1, 3}}}) {
        CAPTURE(c.label);
        auto d = split_affine_datum(c.t, 2, c.label);
        auto ball = cayley_ball(d, simple_reflections(d), 6);
        std::vector<long> by_length(7, 0);
        for (const auto& e : ball) {
            ++by_length[std::size_t(e.length)];
            CHECK(d.length(e.w) == e.length);
        }
        CHECK(by_length == bott_series(c.exponents, 6));
    }
}

TEST_CASE("reduced expressions agree with Cayley graph BFS to radius 6") {
    for (auto [t, label] : {std::pair{RootType::A, "A_n"}, std::pair{RootType::C, "C_n"}}) {
        CAPTURE(label);
        auto d = split_affine_datum(t, 2, label);
        auto counts = geodesic_counts(d, 6);
        auto ball = cayley_ball(d, simple_reflections(d), 6);
        for (const auto& e : ball) {
            auto re = reduced_expressions(e.w, d);
            CHECK(re.length == e.length);
            CHECK(d.word_element(re.word) == e.w);
            long n = 0;
            while (auto w = re.all.next()) {
                CHECK(int(w->size()) == e.length);
                CHECK(d.word_element(*w) == e.w);
                ++n;
            }
            CHECK(n == counts.at(e.w));
        }
    }
}

TEST_CASE("translation by a simple coroot in affine A2") {
    auto d = split_affine_datum(RootType::A, 2, "A_n");
    const Root a = d.simple_affine[1].gradient;
    auto tr = IwahoriWeylElement::pure_translation(a);
    // Iwahori-Matsumoto: the length of a translation is the sum of |<b, a>| over positive roots b
    int im = 0;
    for (const auto& b : d.finite_system.positive()) {
        Q x = dot(b, a);
        im += int(boost::rational_cast<long>(x < Q(0) ? -x : x));
    }
    auto re = reduced_expressions(tr, d);
    CHECK(re.length == im);
    auto counts = geodesic_counts(d, im);
    REQUIRE(counts.count(tr));
    long n = 0;
    while (re.all.next()) ++n;
    CHECK(n == counts.at(tr));
    auto [lambda, w0] = decompose(tr);
    CHECK(lambda == a);
    CHECK(w0 == IwahoriWeylElement::identity(d.dim()).finite_part);
}

TEST_CASE("identity and simple reflections") {
    auto d = split_affine_datum(RootType::C, 3, "C_n");
    auto re = reduced_expressions(IwahoriWeylElement::identity(d.dim()), d);
    CHECK(re.length == 0);
    CHECK(re.word.empty());
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(d.length(d.reflection(int(i))) == 1);
        if (i > 0) CHECK(decompose(d.reflection(int(i))).first == QVec(d.dim(), Q(0)));
    }
}

TEST_CASE("group axioms on random products") {
    auto d = split_affine_datum(RootType::B, 3, "B_n");
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick(0, int(d.size()) - 1);
    for (int k = 0; k < 100; ++k) {
        Word w;
        for (int j = 0; j < 8; ++j) w.push_back(pick(rng));
        auto x = d.word_element(w);
        CHECK((x * x.inverse()).is_identity());
        auto [l, w0] = decompose(x);
        CHECK(recompose(l, w0) == x);
    }
}

TEST_CASE("sigma orbits and the Lusztig bijection") {
    SUBCASE("trivial sigma") {
        auto d = split_affine_datum(RootType::A, 2, "A_n");
        auto orbits = sigma_orbits(d, {0, 1, 2});
        REQUIRE(orbits.size() == 3);
        for (const auto& o : orbits) CHECK((o.members.size() == 1 && o.finite));
        auto entries = lusztig_bijection(d, {0, 1, 2});
        REQUIRE(entries.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) CHECK(entries[i].longest_word == Word{int(i)});
    }
    SUBCASE("end nodes of affine A3") {
        auto d = split_affine_datum(RootType::A, 3, "A_n");
        auto entries = lusztig_bijection(d, {0, 3, 2, 1});
        bool seen = false;
        for (const auto& e : entries)
            if (e.orbit == std::vector<int>{1, 3}) {
                seen = true;
                CHECK(e.longest_word.size() == 2);
                CHECK(e.element == d.reflection(1) * d.reflection(3));
                CHECK(e.involution);
            }
        CHECK(seen);
    }
    SUBCASE("orbit with m = 3") {
        auto d = split_affine_datum(RootType::A, 2, "A_n");
        auto entries = lusztig_bijection(d, {0, 2, 1});
        bool seen = false;
        for (const auto& e : entries)
            if (e.orbit.size() == 2) {
                seen = true;
                CHECK(e.longest_word.size() == 3);
                CHECK(e.element == d.reflection(1) * d.reflection(2) * d.reflection(1));
            }
        CHECK(seen);
    }
    SUBCASE("affine A1 swap gives nothing") {
        auto d = split_affine_datum(RootType::A, 1, "A_n");
        auto orbits = sigma_orbits(d, {1, 0});
        REQUIRE(orbits.size() == 1);
        CHECK_FALSE(orbits[0].finite);
        CHECK(lusztig_bijection(d, {1, 0}).empty());
    }
}

TEST_CASE("length additivity transfers to the fixed subgroup") {
    auto d = split_affine_datum(RootType::A, 3, "A_n");
    const SigmaAction sigma = {0, 3, 2, 1};
    std::vector<IwahoriWeylElement> gens;
    for (const auto& e : lusztig_bijection(d, sigma)) gens.push_back(e.element);
    auto ball = cayley_ball(d, gens, 4);
    std::map<IwahoriWeylElement, int> rel;
    for (const auto& e : ball) rel[e.w] = e.length;
    for (const auto& a : ball)
        for (const auto& b : ball) {
            auto it = rel.find(a.w * b.w);
            if (it == rel.end()) continue;
            CHECK((it->second == a.length + b.length) == (d.length(a.w * b.w) == d.length(a.w) + d.length(b.w)));
        }
}
