#include "tits/descent.hpp"

#include "tits/errors.hpp"

#include <map>

namespace tits {

SigmaModel::SigmaModel(const GroupModel& g, const DescentConfig& cfg) : g_(&g) {
    const std::size_t n = g.size();
    if (cfg.twist == "none") {
        twist_ = Matrix::identity(g.field(), n);
    } else if (cfg.twist == "rotation") {
        if (g.spec().family != Family::SL) throw config_error("descent.twist", "rotation twist does not preserve the form J");
        Matrix c(g.field(), n);
        for (std::size_t i = 0; i + 1 < n; ++i) c.at(i, i + 1) = g.scalar(1);
        c.at(n - 1, 0) = QuadExtNumber::t(g.field());
        if (cfg.power < 1 || std::size_t(cfg.power) >= n)
            throw config_error("descent.power", "rotation power must lie in [1, n-1]");
        twist_ = Matrix::identity(g.field(), n);
        for (int k = 0; k < cfg.power; ++k) twist_ = twist_ * c;
    } else {
        throw config_error("descent.twist", "expected none or rotation");
    }
    if (g.spec().family == Family::U && g.size() % 2 == 0)
        throw config_error("family", "descent excludes even unitary groups");
    twist_inv_ = *twist_.inverse();
    const auto& d = g.datum();
    auto img = g.weyl_image(twist_);
    auto p = induced_permutation(d, img);
    auto q = induced_permutation(d, img.inverse());
    if (!p || !q) throw config_error("descent.twist", "twist does not preserve the alcove");
    // pick the direction with sigma(n_a) representing s_{perm(a)}
    const auto& sa = d.reflection(0);
    perm_ = (img * sa * img.inverse() == d.reflection((*p)[0])) ? *p : *q;
    sigma_orbits(d, perm_);  // validates the Coxeter matrix
}

Matrix SigmaModel::apply(const Matrix& x) const { return twist_ * x.frob(1) * twist_inv_; }

Matrix SigmaModel::apply_pow(const Matrix& x, int k) const {
    Matrix r = x;
    for (int i = 0; i < k; ++i) r = apply(r);
    return r;
}

StableFamily sigma_stable_representatives(const GroupModel& g, const SigmaModel& sigma) {
    const auto& d = g.datum();
    const auto& perm = sigma.permutation();
    StableFamily out;
    out.reps.resize(d.size());
    std::vector<bool> done(d.size(), false);
    nlohmann::json orbits = nlohmann::json::array();
    const auto& F = *g.base().field;
    for (int a = 0; a < int(d.size()); ++a) {
        if (done[std::size_t(a)]) continue;
        std::vector<int> orbit = {a};
        for (int c = perm[std::size_t(a)]; c != a; c = perm[std::size_t(c)]) orbit.push_back(c);
        const int k = int(orbit.size());
        const auto& root = d.simple_affine[std::size_t(a)];
        const Root& b = root.gradient;
        Root bs = star_reduction(b, g.roots());
        const bool case_two = g.unitary() && g.multipliable(bs);
        std::optional<Matrix> chosen;
        std::string how;
        std::uint32_t used = 0;
        for (std::uint32_t code = 1; code < F.order() && !chosen; ++code) {
            QuadExtNumber u(g.field(), LaurentNumber::constant(g.base(), code));
            if (!case_two) {
                // rescaled pinning x'_a = x_a o (multiplication by u)
                QuadExtNumber v = root.offset == 0 ? u : g.root_uniformizer(bs) * u;
                Matrix x = g.root_subgroup(b, v);
                if (sigma.apply_pow(x, k) != x) continue;
                Matrix n = x * g.root_subgroup(-b, v.inverse()) * x;
                if (sigma.apply_pow(n, k) != n) continue;
                chosen = n;
                how = "case I: rescaled pinning";
            } else {
                Matrix n = g.norm_coroot(bs, u) * g.rep(a);
                if (sigma.apply_pow(n, k) != n) continue;
                chosen = n;
                how = code == 1 ? "case II: equivariant pinning" : "case II: torus-adjusted pinning";
            }
            used = code;
        }
        if (!chosen)
            throw config_error("M", "no sigma-fixed unit in F_" + std::to_string(F.order()) + " for orbit of s" +
                                        std::to_string(a) + "; enlarge the residue extension");
        Matrix cur = *chosen;
        for (int c : orbit) {
            out.reps[std::size_t(c)] = cur;
            done[std::size_t(c)] = true;
            cur = sigma.apply(cur);
        }
        orbits.push_back({{"orbit", orbit}, {"unit", F.to_string(used)}, {"construction", how}});
    }
    bool ok = true;
    nlohmann::json checks = nlohmann::json::array();
    for (int a = 0; a < int(d.size()); ++a) {
        const Matrix& n = out.reps[std::size_t(a)];
        bool stable = sigma.apply(n) == out.reps[std::size_t(perm[std::size_t(a)])];
        bool image = g.weyl_image(n) == d.reflection(a);
        bool member = g.is_member(n);
        ok = ok && stable && image && member;
        checks.push_back({{"index", a}, {"sigma_maps_to", perm[std::size_t(a)]}, {"stable", stable},
                          {"weyl_image", image}, {"member", member}});
    }
    out.certificate = {{"orbits", orbits}, {"checks", checks}};
    out.certified = ok;
    return out;
}

std::vector<Matrix> sigma_fixed_s2(const GroupModel& g, const SigmaModel& sigma) {
    std::vector<Matrix> out;
    for (const auto& s : g.s2_elements())
        if (sigma.apply(s) == s) out.push_back(s);
    return out;
}

CheckRecord descend_and_verify(const GroupModel& g, const DescentConfig& cfg, int L) {
    CheckRecord r;
    r.name = "descent";
    r.params = {{"twist", cfg.twist}, {"power", cfg.power}, {"L", L}};
    SigmaModel sigma(g, cfg);
    const auto& d = g.datum();
    StableFamily fam = sigma_stable_representatives(g, sigma);
    auto s2 = sigma_fixed_s2(g, sigma);
    auto in_s2 = [&](const Matrix& x) {
        for (const auto& s : s2)
            if (x == s) return true;
        return false;
    };
    auto entries = lusztig_bijection(d, sigma.permutation());
    auto orbits = sigma_orbits(d, sigma.permutation());

    nlohmann::json sset = nlohmann::json::array();
    std::vector<IwahoriWeylElement> gens;
    std::vector<Matrix> gen_reps;
    bool gens_ok = true;
    for (const auto& e : entries) {
        Matrix m = Matrix::identity(g.field(), g.size());
        for (int s : e.longest_word) m = m * fam.reps[std::size_t(s)];
        bool fixed = sigma.apply(m) == m;
        bool image = g.weyl_image(m) == e.element;
        gens_ok = gens_ok && fixed && image && e.involution && e.sigma_invariant;
        sset.push_back({{"orbit", e.orbit}, {"longest_word", word_json(e.longest_word)}, {"sigma_fixed", fixed},
                        {"weyl_image", image}, {"involution", e.involution}});
        gens.push_back(e.element);
        gen_reps.push_back(m);
    }

    auto ball = cayley_ball(d, gens, L);
    std::map<IwahoriWeylElement, int> index;
    for (std::size_t k = 0; k < ball.size(); ++k) index[ball[k].w] = int(k);
    std::vector<Matrix> m(ball.size());
    m[0] = Matrix::identity(g.field(), g.size());
    for (std::size_t k = 1; k < ball.size(); ++k) m[k] = m[std::size_t(ball[k].parent)] * gen_reps[std::size_t(ball[k].gen)];

    bool words_ok = true, additive_ok = true, closure_ok = true, fixed_ok = true, transfer_ok = true, image_ok = true;
    std::size_t additive = 0, closure = 0;
    for (std::size_t k = 0; k < ball.size(); ++k) {
        fixed_ok = fixed_ok && sigma.apply(m[k]) == m[k];
        image_ok = image_ok && g.weyl_image(m[k]) == ball[k].w;
        for (std::size_t s = 0; s < gens.size(); ++s) {
            auto it = index.find(ball[k].w * gens[s]);
            if (it == index.end() || ball[std::size_t(it->second)].length != ball[k].length - 1) continue;
            words_ok = words_ok && m[std::size_t(it->second)] * gen_reps[s] == m[k];
        }
    }
    for (std::size_t a = 0; a < ball.size(); ++a)
        for (std::size_t b = 0; b < ball.size(); ++b) {
            if (ball[a].length + ball[b].length > L) continue;
            auto it = index.find(ball[a].w * ball[b].w);
            if (it == index.end()) continue;
            const std::size_t c = std::size_t(it->second);
            Matrix prod = m[a] * m[b];
            const bool add_f = ball[c].length == ball[a].length + ball[b].length;
            const bool add_b = d.length(ball[c].w) == d.length(ball[a].w) + d.length(ball[b].w);
            transfer_ok = transfer_ok && add_f == add_b;
            if (add_f) {
                ++additive;
                if (prod != m[c]) {
                    additive_ok = false;
                    if (r.witness.is_null())
                        r.witness = {{"condition", "length-additive"}, {"w", a}, {"w_prime", b}};
                }
            }
            ++closure;
            auto inv = m[c].inverse();
            if (!inv || !in_s2(*inv * prod)) closure_ok = false;
        }
    bool squares_ok = true;
    for (const auto& x : gen_reps) squares_ok = squares_ok && in_s2(x * x);

    nlohmann::json orb = nlohmann::json::array();
    for (const auto& o : orbits) orb.push_back({{"members", o.members}, {"finite", o.finite}});
    r.details = {{"sigma_permutation", sigma.permutation()},
                 {"orbits", orb},
                 {"relative_simple_reflections", sset},
                 {"stable_family", fam.certificate},
                 {"stable_family_certified", fam.certified},
                 {"S2_sigma_order", s2.size()},
                 {"S2_order", 1u << g.s2_basis().size()},
                 {"ball_size", ball.size()},
                 {"length_additive_pairs", additive},
                 {"closure_pairs", closure},
                 {"condition_2a_squares", squares_ok},
                 {"condition_2b_reduced_words", words_ok},
                 {"condition_2b_dagger", additive_ok},
                 {"kernel_is_S2_sigma", closure_ok},
                 {"sigma_fixed", fixed_ok},
                 {"length_transfer", transfer_ok},
                 {"weyl_image", image_ok}};
    if (entries.empty()) r.details["note"] = "every sigma-orbit generates an infinite parabolic subgroup; W_af is trivial";
    const bool all = fam.certified && gens_ok && words_ok && additive_ok && closure_ok && fixed_ok && transfer_ok &&
                     image_ok && squares_ok;
    r.status = all ? Status::holds : Status::fails;
    return r;
}

}  // namespace tits
