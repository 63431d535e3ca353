#include "tits/rootsys.hpp"
#include "tits/errors.hpp"
#include "tits/linalg.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace tits {

std::string type_name(RootType t) {
    switch (t) {
    case RootType::A: return "A";
    case RootType::B: return "B";
    case RootType::C: return "C";
    case RootType::D: return "D";
    case RootType::E6: return "E6";
    case RootType::E7: return "E7";
    case RootType::E8: return "E8";
    case RootType::F4: return "F4";
    case RootType::G2: return "G2";
    case RootType::BC: return "BC";
    }
    return "?";
}

RootType parse_root_type(const std::string& s) {
    for (RootType t : {RootType::A, RootType::B, RootType::C, RootType::D, RootType::E6, RootType::E7, RootType::E8,
                       RootType::F4, RootType::G2, RootType::BC})
        if (type_name(t) == s) return t;
    throw config_error("type", "unknown root system type '" + s + "'");
}

Root eps(int i, int d) {
    Root r(std::size_t(d), Q(0));
    r[std::size_t(i - 1)] = 1;
    return r;
}

bool RootSystem::contains(const Root& b) const { return std::binary_search(roots.begin(), roots.end(), b); }

std::vector<Root> RootSystem::reduced() const {
    std::vector<Root> out;
    for (const auto& b : roots)
        if (!contains(Q(1, 2) * b)) out.push_back(b);
    return out;
}

bool RootSystem::is_positive(const Root& b) const {
    // positive iff a nonnegative combination of simple roots
    QMat a = transpose(QMat(simple_roots.begin(), simple_roots.end()));
    // least squares through the Gram matrix: simple roots are independent
    std::size_t r = simple_roots.size();
    QMat g(r, QVec(r));
    QVec rhs(r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) g[i][j] = dot(simple_roots[i], simple_roots[j]);
        rhs[i] = dot(simple_roots[i], b);
    }
    auto x = solve_unique(g, rhs);
    if (!x) throw domain_error("simple roots are dependent");
    for (const auto& c : *x)
        if (c > 0) return true;
        else if (c < 0) return false;
    return false;
}

std::vector<Root> RootSystem::positive() const {
    std::vector<Root> out;
    for (const auto& b : roots)
        if (is_positive(b)) out.push_back(b);
    return out;
}

Root RootSystem::highest_root() const {
    // the positive root with the largest height among reduced roots of maximal length
    std::size_t r = simple_roots.size();
    QMat g(r, QVec(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) g[i][j] = dot(simple_roots[i], simple_roots[j]);
    Root best;
    Q best_h = -1;
    for (const auto& b : positive()) {
        QVec rhs(r);
        for (std::size_t i = 0; i < r; ++i) rhs[i] = dot(simple_roots[i], b);
        auto x = solve_unique(g, rhs);
        Q h = 0;
        for (const auto& c : *x) h += c;
        if (h > best_h) {
            best_h = h;
            best = b;
        }
    }
    return best;
}

std::vector<Root> Rank2Subsystem::reduced() const {
    std::vector<Root> out;
    for (const auto& b : members)
        if (!std::binary_search(members.begin(), members.end(), Q(1, 2) * b)) out.push_back(b);
    return out;
}

namespace {

std::vector<Root> e8_roots() {
    std::vector<Root> out;
    const int d = 8;
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j)
            for (int si : {1, -1})
                for (int sj : {1, -1}) out.push_back(Q(si) * eps(i, d) + Q(sj) * eps(j, d));
    for (int mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(unsigned(mask)) % 2) continue;
        Root r(d);
        for (int i = 0; i < d; ++i) r[std::size_t(i)] = (mask >> i & 1) ? Q(-1, 2) : Q(1, 2);
        out.push_back(r);
    }
    return out;
}

std::vector<Root> classical(RootType t, int n) {
    std::vector<Root> out;
    int d = t == RootType::A ? n + 1 : n;
    if (t == RootType::A) {
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j)
                if (i != j) out.push_back(eps(i, d) - eps(j, d));
        return out;
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int si : {1, -1})
                for (int sj : {1, -1}) out.push_back(Q(si) * eps(i, d) + Q(sj) * eps(j, d));
    for (int i = 1; i <= n; ++i)
        for (int s : {1, -1}) {
            if (t == RootType::B || t == RootType::BC) out.push_back(Q(s) * eps(i, d));
            if (t == RootType::C || t == RootType::BC) out.push_back(Q(2 * s) * eps(i, d));
        }
    return out;
}

}  // namespace

RootSystem build_root_system(RootType type, int rank) {
    auto bad = [&](const std::string& why) {
        return config_error("rank", type_name(type) + std::to_string(rank) + ": " + why);
    };
    RootSystem rs{type, rank, {}, {}};
    switch (type) {
    case RootType::A:
        if (rank < 1) throw bad("A needs rank >= 1");
        break;
    case RootType::B:
    case RootType::C:
        if (rank < 2) throw bad("needs rank >= 2");
        break;
    case RootType::D:
        if (rank < 3) throw bad("D needs rank >= 3");
        break;
    case RootType::BC:
        if (rank < 1) throw bad("BC needs rank >= 1");
        break;
    case RootType::E6:
        if (rank != 6) throw bad("E6 has rank 6");
        break;
    case RootType::E7:
        if (rank != 7) throw bad("E7 has rank 7");
        break;
    case RootType::E8:
        if (rank != 8) throw bad("E8 has rank 8");
        break;
    case RootType::F4:
        if (rank != 4) throw bad("F4 has rank 4");
        break;
    case RootType::G2:
        if (rank != 2) throw bad("G2 has rank 2");
        break;
    }
    const int n = rank;
    auto& S = rs.simple_roots;
    switch (type) {
    case RootType::A:
    case RootType::B:
    case RootType::C:
    case RootType::D:
    case RootType::BC: {
        rs.roots = classical(type == RootType::D ? RootType::D : type, n);
        int d = type == RootType::A ? n + 1 : n;
        for (int i = 1; i < n; ++i) S.push_back(eps(i, d) - eps(i + 1, d));
        if (type == RootType::A) S.push_back(eps(n, d) - eps(n + 1, d));
        if (type == RootType::B || type == RootType::BC) S.push_back(eps(n, d));
        if (type == RootType::C) S.push_back(Q(2) * eps(n, d));
        if (type == RootType::D) S.push_back(eps(n - 1, d) + eps(n, d));
        break;
    }
    case RootType::E6:
    case RootType::E7:
    case RootType::E8: {
        const int d = 8;
        Root h = Q(1, 2) * (eps(1, d) + eps(8, d));
        for (int i = 2; i <= 7; ++i) h = h - Q(1, 2) * eps(i, d);
        std::vector<Root> e8simple = {h,
                                      eps(1, d) + eps(2, d),
                                      eps(2, d) - eps(1, d),
                                      eps(3, d) - eps(2, d),
                                      eps(4, d) - eps(3, d),
                                      eps(5, d) - eps(4, d),
                                      eps(6, d) - eps(5, d),
                                      eps(7, d) - eps(6, d)};
        std::vector<Root> orth;
        if (type != RootType::E8) orth.push_back(eps(7, d) + eps(8, d));
        if (type == RootType::E6) orth.push_back(eps(6, d) + eps(8, d));
        for (const auto& r : e8_roots()) {
            bool ok = true;
            for (const auto& o : orth)
                if (dot(r, o) != 0) ok = false;
            if (ok) rs.roots.push_back(r);
        }
        S.assign(e8simple.begin(), e8simple.begin() + n);
        break;
    }
    case RootType::F4: {
        const int d = 4;
        rs.roots = classical(RootType::B, 4);
        for (int mask = 0; mask < 16; ++mask) {
            Root r(d);
            for (int i = 0; i < d; ++i) r[std::size_t(i)] = (mask >> i & 1) ? Q(-1, 2) : Q(1, 2);
            rs.roots.push_back(r);
        }
        Root a4 = Q(1, 2) * (eps(1, d) - eps(2, d) - eps(3, d) - eps(4, d));
        S = {eps(2, d) - eps(3, d), eps(3, d) - eps(4, d), eps(4, d), a4};
        break;
    }
    case RootType::G2: {
        const int d = 3;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                if (i == j) continue;
                rs.roots.push_back(eps(i, d) - eps(j, d));
            }
        for (int i = 1; i <= 3; ++i) {
            Root r = Q(2) * eps(i, d);
            for (int j = 1; j <= 3; ++j)
                if (j != i) r = r - eps(j, d);
            rs.roots.push_back(r);
            rs.roots.push_back(-r);
        }
        S = {eps(1, d) - eps(2, d), Q(-2) * eps(1, d) + eps(2, d) + eps(3, d)};
        break;
    }
    }
    std::sort(rs.roots.begin(), rs.roots.end());
    rs.roots.erase(std::unique(rs.roots.begin(), rs.roots.end()), rs.roots.end());
    return rs;
}

Root star_reduction(const Root& b, const RootSystem& phi) {
    if (!phi.contains(b)) throw domain_error("star_reduction: " + root_to_string(b) + " is not a root");
    Root h = Q(1, 2) * b;
    return phi.contains(h) ? h : b;
}

Rank2Subsystem rank2_closed_subsystem(const RootSystem& phi, const Root& b, const Root& bp) {
    if (!phi.contains(b) || !phi.contains(bp)) throw domain_error("rank2_closed_subsystem: inputs must be roots");
    if (rank_q({b, bp}) < 2) throw domain_error("rank2_closed_subsystem: parallel roots");
    Rank2Subsystem s{&phi, {}, {b, bp}};
    for (const auto& c : phi.roots)
        if (rank_q({b, bp, c}) == 2) s.members.push_back(c);
    return s;
}

namespace {

// v in Q_{>=0} a + Q_{>=0} c, for a, c independent
bool in_cone(const Root& v, const Root& a, const Root& c) {
    QMat g = {{dot(a, a), dot(a, c)}, {dot(a, c), dot(c, c)}};
    auto x = solve_unique(g, {dot(a, v), dot(c, v)});
    if (!x) return false;
    if ((*x)[0] < 0 || (*x)[1] < 0) return false;
    return (*x)[0] * a + (*x)[1] * c == v;
}

bool step_ok(const std::vector<Root>& red, const Root& prev, const Root& mid, const Root& next) {
    if (rank_q({prev, next}) < 2) return false;
    std::size_t count = 0;
    bool mid_in = false;
    for (const auto& r : red)
        if (in_cone(r, prev, next)) {
            ++count;
            if (r == mid) mid_in = true;
        }
    return mid_in && count == 3 && mid != prev && mid != next;
}

}  // namespace

bool circular_order_valid(const Rank2Subsystem& psi, const std::vector<Root>& order) {
    auto red = psi.reduced();
    if (order.size() != red.size()) return false;
    std::set<Root> seen(order.begin(), order.end());
    if (seen.size() != order.size()) return false;
    for (const auto& r : order)
        if (!std::binary_search(red.begin(), red.end(), r)) return false;
    for (std::size_t i = 1; i + 1 < order.size(); ++i)
        if (!step_ok(red, order[i - 1], order[i], order[i + 1])) return false;
    return true;
}

std::optional<std::vector<Root>> circular_order(const Rank2Subsystem& psi, const Root& b, const Root& bp) {
    auto red = psi.reduced();
    if (!std::binary_search(red.begin(), red.end(), b) || !std::binary_search(red.begin(), red.end(), bp))
        throw domain_error("circular_order: b and b' must be reduced members of the subsystem");
    const std::size_t n = red.size();
    if (n % 2) throw domain_error("circular_order: odd number of reduced roots");
    const std::size_t k = n / 2;
    std::vector<Root> seq = {b};
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i)
        if (red[i] == b) used[i] = true;
    std::optional<std::vector<Root>> best;
    // backtracking over all arrangements; candidates visited in lexicographic order
    std::function<void()> rec = [&]() {
        if (seq.size() == n) {
            if (!best || seq < *best) best = seq;
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            const Root& c = red[i];
            std::size_t pos = seq.size() + 1;  // 1-based index of c
            if ((pos == k) != (c == bp)) continue;
            if (seq.size() >= 2 && !step_ok(red, seq[seq.size() - 2], seq.back(), c)) continue;
            if (best && seq.size() < best->size()) {
                // prefix already exceeds best lexicographically
                std::vector<Root> pre = seq;
                pre.push_back(c);
                if (!std::lexicographical_compare(pre.begin(), pre.end(), best->begin(), best->begin() + long(pre.size())) &&
                    !std::equal(pre.begin(), pre.end(), best->begin()))
                    continue;
            }
            used[i] = true;
            seq.push_back(c);
            rec();
            seq.pop_back();
            used[i] = false;
        }
    };
    rec();
    return best;
}

Root coroot(const Root& b) {
    Q n = dot(b, b);
    if (n == 0) throw domain_error("coroot of zero vector");
    return (Q(2) / n) * b;
}

Root reflect(const Root& b, const Root& c) {
    Q n = dot(b, b);
    if (n == 0) throw domain_error("reflect: zero root");
    return c - (Q(2) * dot(c, b) / n) * b;
}

std::string root_to_string(const Root& b) {
    std::string s;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] == 0) continue;
        Q c = b[i];
        bool neg = c < 0;
        if (neg) c = -c;
        if (!s.empty() || neg) s += neg ? "-" : "+";
        if (c != 1) s += to_string(c);
        s += "e" + std::to_string(i + 1);
    }
    return s.empty() ? "0" : s;
}

}  // namespace tits

namespace tits {

namespace {

Root vec(std::initializer_list<Q> xs) { return Root(xs); }

std::vector<Root> six_cycle(const Root& b, const Root& bp) {
    Root s = b + bp;
    return {b, s, bp, -b, -s, -bp};
}

}  // namespace

const std::vector<CircularCase>& circular_order_table() {
    static const std::vector<CircularCase> table = [] {
        std::vector<CircularCase> t;
        auto e = [](int i, int d) { return eps(i, d); };
        {
            const int n = 3, d = 4;
            Root b = e(n + 1, d) - e(1, d);
            CircularCase c{"A_n", RootType::A, n, {}};
            c.subcases.push_back({"alpha_n", b, e(n, d) - e(n + 1, d),
                                  std::vector<Root>{b, e(n, d) - e(1, d), e(n, d) - e(n + 1, d), e(1, d) - e(n + 1, d),
                                                    e(1, d) - e(n, d), e(n + 1, d) - e(n, d)}});
            c.subcases.push_back({"alpha_1", b, e(1, d) - e(2, d),
                                  std::vector<Root>{b, e(n + 1, d) - e(2, d), e(1, d) - e(2, d), e(1, d) - e(n + 1, d),
                                                    e(2, d) - e(n + 1, d), e(2, d) - e(1, d)}});
            t.push_back(c);
        }
        const int d3 = 3;
        Root m12 = -e(1, d3) - e(2, d3);
        std::vector<Root> a2_order = {m12, -e(1, d3) - e(3, d3), e(2, d3) - e(3, d3),
                                      e(1, d3) + e(2, d3), e(1, d3) + e(3, d3), e(3, d3) - e(2, d3)};
        for (auto [label, type] : {std::pair{"B_n", RootType::B}, std::pair{"B-C_n", RootType::C}}) {
            CircularCase c{label, type, 3, {}};
            c.subcases.push_back({"alpha_2", m12, e(2, d3) - e(3, d3), a2_order});
            c.subcases.push_back({"alpha_1", m12, e(1, d3) - e(2, d3), std::nullopt});
            t.push_back(c);
        }
        {
            CircularCase c{"C_n", RootType::C, 3, {}};
            Root b = Q(-2) * e(1, d3);
            c.subcases.push_back({"alpha_1", b, e(1, d3) - e(2, d3),
                                  std::vector<Root>{b, -e(1, d3) - e(2, d3), Q(-2) * e(2, d3), e(1, d3) - e(2, d3),
                                                    Q(2) * e(1, d3), e(1, d3) + e(2, d3), Q(2) * e(2, d3),
                                                    e(2, d3) - e(1, d3)}});
            t.push_back(c);
        }
        std::vector<Root> b2_order = {-e(1, d3), -e(1, d3) - e(2, d3), -e(2, d3), e(1, d3) - e(2, d3),
                                      e(1, d3), e(1, d3) + e(2, d3), e(2, d3), e(2, d3) - e(1, d3)};
        t.push_back({"C-B_n", RootType::B, 3, {{"alpha_1", -e(1, d3), e(1, d3) - e(2, d3), b2_order}}});
        t.push_back({"C-BC_n^III", RootType::BC, 3, {{"alpha_1", -e(1, d3), e(1, d3) - e(2, d3), b2_order}}});
        {
            const int d = 4;
            Root b = -e(1, d) - e(2, d);
            std::vector<Root> ord = {b, -e(1, d) - e(3, d), e(2, d) - e(3, d), e(1, d) + e(2, d), e(1, d) + e(3, d),
                                     e(3, d) - e(2, d)};
            t.push_back({"D_n", RootType::D, 4, {{"alpha_2", b, e(2, d) - e(3, d), ord}}});
        }
        {
            const Q h(1, 2);
            Root b6 = vec({-h, -h, -h, -h, -h, h, h, -h});
            Root bp6 = eps(1, 8) + eps(2, 8);
            t.push_back({"E_6", RootType::E6, 6, {{"alpha_2", b6, bp6, six_cycle(b6, bp6)}}});
            Root b7 = eps(7, 8) - eps(8, 8);
            Root bp7 = vec({h, -h, -h, -h, -h, -h, -h, h});
            t.push_back({"E_7", RootType::E7, 7, {{"alpha_1", b7, bp7, six_cycle(b7, bp7)}}});
            Root b8 = -eps(7, 8) - eps(8, 8);
            Root bp8 = eps(7, 8) - eps(6, 8);
            t.push_back({"E_8", RootType::E8, 8, {{"alpha_8", b8, bp8, six_cycle(b8, bp8)}}});
        }
        {
            const int d = 4;
            Root b = -e(1, d) - e(2, d);
            std::vector<Root> ord = {b, -e(1, d) - e(3, d), e(2, d) - e(3, d), e(1, d) + e(2, d), e(1, d) + e(3, d),
                                     e(3, d) - e(2, d)};
            for (const char* label : {"F_4", "F_4^1"})
                t.push_back({label, RootType::F4, 4, {{"alpha_1", b, e(2, d) - e(3, d), ord}}});
        }
        {
            Root b = vec({1, 1, -2});
            Root bp = vec({-2, 1, 1});
            for (const char* label : {"G_2", "G_2^1"})
                t.push_back({label, RootType::G2, 2, {{"alpha_2", b, bp, six_cycle(b, bp)}}});
        }
        return t;
    }();
    return table;
}

bool orders_equivalent(const std::vector<Root>& a, const std::vector<Root>& b) {
    if (a.size() != b.size()) return false;
    std::vector<Root> neg_b, rev_b(b.rbegin(), b.rend()), neg_rev;
    for (const auto& r : b) neg_b.push_back(-r);
    for (const auto& r : rev_b) neg_rev.push_back(-r);
    return a == b || a == neg_b || a == rev_b || a == neg_rev;
}

std::vector<CircularOutcome> run_circular_table(const std::string& label_filter) {
    std::vector<CircularOutcome> out;
    for (const auto& c : circular_order_table()) {
        if (!label_filter.empty() && c.label != label_filter) continue;
        RootSystem phi = build_root_system(c.type, c.rank);
        for (const auto& sc : c.subcases) {
            auto psi = rank2_closed_subsystem(phi, sc.b, sc.bp);
            auto got = circular_order(psi, sc.b, sc.bp);
            bool ok;
            if (!sc.expected) ok = !got.has_value();
            else ok = got && orders_equivalent(*got, *sc.expected) && circular_order_valid(psi, *got);
            out.push_back({c.label, sc.name, got, ok, psi.reduced().size()});
        }
    }
    return out;
}

}  // namespace tits
