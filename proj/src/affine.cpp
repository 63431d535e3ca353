#include "tits/affine.hpp"
#include "tits/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace tits {

bool ValueSet::contains(const Q& k) const {
    Q r = (k - shift) / step;
    return r.denominator() == 1;
}

Q ValueSet::min_positive() const {
    Q n = Q(floor_q(-shift / step) + 1);
    Q v = shift + n * step;
    while (v <= 0) v += step;
    while (v - step > 0) v -= step;
    return v;
}

std::string ValueSet::to_string() const {
    std::string s = shift == 0 ? "" : tits::to_string(shift) + " + ";
    return s + tits::to_string(step) + "Z";
}

std::string AffineRoot::to_string() const {
    std::string s = root_to_string(gradient);
    if (offset > 0) s += "+" + tits::to_string(offset);
    else if (offset < 0) s += tits::to_string(offset);
    return s;
}

IwahoriWeylElement IwahoriWeylElement::identity(std::size_t d) { return {QVec(d, Q(0)), identity_q(d)}; }

IwahoriWeylElement IwahoriWeylElement::pure_translation(const QVec& l) { return {l, identity_q(l.size())}; }

QVec IwahoriWeylElement::apply(const QVec& x) const { return translation + mat_vec(finite_part, x); }

IwahoriWeylElement IwahoriWeylElement::operator*(const IwahoriWeylElement& o) const {
    return {translation + mat_vec(finite_part, o.translation), mat_mul(finite_part, o.finite_part)};
}

IwahoriWeylElement IwahoriWeylElement::inverse() const {
    // finite parts are orthogonal in epsilon coordinates
    QMat wi = transpose(finite_part);
    return {-mat_vec(wi, translation), wi};
}

AffineRoot IwahoriWeylElement::act(const AffineRoot& f) const {
    Root wb = mat_vec(finite_part, f.gradient);
    return {wb, f.offset - dot(wb, translation)};
}

bool IwahoriWeylElement::is_identity() const {
    return is_zero(translation) && finite_part == identity_q(translation.size());
}

std::pair<QVec, QMat> decompose(const IwahoriWeylElement& w) { return {w.translation, w.finite_part}; }

IwahoriWeylElement recompose(const QVec& lambda, const QMat& w0) { return {lambda, w0}; }

IwahoriWeylElement affine_reflection(const AffineRoot& a) {
    Root bv = coroot(a.gradient);
    std::size_t d = bv.size();
    QMat w = identity_q(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) w[i][j] -= bv[i] * a.gradient[j];
    return {(-a.offset) * bv, w};
}

std::string coxeter_entry_string(int m) { return m == kCoxeterInfinity ? "inf" : std::to_string(m); }

const ValueSet& AffineRootDatum::gamma_prime(const Root& b) const {
    auto it = value_sets.find(b);
    if (it == value_sets.end()) throw domain_error("no value set for " + root_to_string(b));
    return it->second;
}

bool AffineRootDatum::is_affine_hyperplane(const Root& rho, const Q& k) const {
    if (gamma_prime(rho).contains(k)) return true;
    Root d2 = Q(2) * rho;
    return finite_system.contains(d2) && gamma_prime(d2).contains(Q(2) * k);
}

std::vector<QVec> AffineRootDatum::alcove_vertices() const {
    std::vector<QVec> out;
    for (std::size_t j = 0; j < simple_affine.size(); ++j) {
        QMat a;
        QVec rhs;
        for (std::size_t i = 0; i < simple_affine.size(); ++i) {
            if (i == j) continue;
            a.push_back(simple_affine[i].gradient);
            rhs.push_back(-simple_affine[i].offset);
        }
        for (const auto& z : complement) {
            a.push_back(z);
            rhs.push_back(0);
        }
        auto x = solve_unique(a, rhs);
        if (!x) throw domain_error("alcove walls do not meet in a vertex");
        out.push_back(*x);
    }
    return out;
}

QVec AffineRootDatum::alcove_barycenter() const {
    if (!barycenter_) {
        auto vs = alcove_vertices();
        QVec c(dim(), Q(0));
        for (const auto& v : vs) c = c + v;
        barycenter_ = Q(1, std::int64_t(vs.size())) * c;
    }
    return *barycenter_;
}

IwahoriWeylElement AffineRootDatum::reflection(int i) const {
    if (reflections_.empty())
        for (const auto& a : simple_affine) reflections_.push_back(affine_reflection(a));
    return reflections_.at(std::size_t(i));
}

IwahoriWeylElement AffineRootDatum::word_element(const Word& w) const {
    auto g = IwahoriWeylElement::identity(dim());
    for (int s : w) g = g * reflection(s);
    return g;
}

int AffineRootDatum::length(const IwahoriWeylElement& w) const {
    QVec c = alcove_barycenter();
    QVec gc = w.apply(c);
    int count = 0;
    for (const auto& rho : directions) {
        Q a = -dot(rho, c), b = -dot(rho, gc);
        Q lo = std::min(a, b), hi = std::max(a, b);
        std::set<Q> ks;
        auto collect = [&](const ValueSet& vs, const Q& scale) {
            Q step = vs.step * scale, shift = vs.shift * scale;
            for (std::int64_t n = floor_q((lo - shift) / step); ; ++n) {
                Q k = shift + Q(n) * step;
                if (k >= hi) break;
                if (k > lo) ks.insert(k);
            }
        };
        collect(gamma_prime(rho), Q(1));
        Root d2 = Q(2) * rho;
        if (finite_system.contains(d2)) collect(gamma_prime(d2), Q(1, 2));
        count += int(ks.size());
    }
    return count;
}

std::vector<int> AffineRootDatum::right_descents(const IwahoriWeylElement& w) const {
    int l = length(w);
    std::vector<int> out;
    for (int i = 0; i < int(size()); ++i)
        if (length(w * reflection(i)) < l) out.push_back(i);
    return out;
}

std::vector<int> AffineRootDatum::left_descents(const IwahoriWeylElement& w) const {
    int l = length(w);
    std::vector<int> out;
    for (int i = 0; i < int(size()); ++i)
        if (length(reflection(i) * w) < l) out.push_back(i);
    return out;
}

bool AffineRootDatum::in_affine_weyl_group(const IwahoriWeylElement& w) const {
    if (w.translation.size() != dim()) return false;
    for (const auto& z : complement)
        if (dot(z, w.translation) != 0) return false;
    auto cur = w;
    for (int l = length(cur); l > 0; --l) {
        auto ds = right_descents(cur);
        if (ds.empty()) return false;
        cur = cur * reflection(ds.front());
    }
    return cur.is_identity();
}

namespace {

// v >= v' iff v - v' is a nonnegative combination of simple roots
bool dominates(const RootSystem& phi, const QVec& v, const QVec& w) {
    const auto& s = phi.simple_roots;
    std::size_t r = s.size();
    QMat g(r, QVec(r));
    QVec rhs(r);
    QVec diff = v - w;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) g[i][j] = dot(s[i], s[j]);
        rhs[i] = dot(s[i], diff);
    }
    auto x = solve_unique(g, rhs);
    if (!x) return false;
    for (const auto& c : *x)
        if (c < 0) return false;
    return true;
}

}  // namespace

AffineRootDatum build_affine_datum(const RootSystem& phi, const std::function<ValueSet(const Root&)>& gamma_prime,
                                   const std::string& label) {
    AffineRootDatum d;
    d.finite_system = phi;
    d.echelonnage_label = label;
    for (const auto& b : phi.roots) d.value_sets[b] = gamma_prime(b);
    for (const auto& b : phi.positive())
        if (!phi.contains(Q(1, 2) * b)) d.directions.push_back(b);
    // affine wall: the constraint b(x) < kmin(b) on the dominant chamber that implies all others
    struct Cand {
        Root b;
        Q k;
        QVec scaled;
    };
    std::vector<Cand> cands;
    for (const auto& b : phi.positive()) {
        if (phi.contains(Q(1, 2) * b)) continue;
        Q k = d.value_sets[b].min_positive();
        Root b2 = Q(2) * b;
        if (phi.contains(b2)) k = std::min(k, Q(1, 2) * d.value_sets[b2].min_positive());
        cands.push_back({b, k, (Q(1) / k) * b});
    }
    const Cand* best = nullptr;
    for (const auto& c : cands) {
        bool top = true;
        for (const auto& o : cands)
            if (!dominates(phi, c.scaled, o.scaled)) top = false;
        if (top) {
            best = &c;
            break;
        }
    }
    if (!best) throw domain_error("no dominant affine wall: root system is not irreducible");
    AffineRoot a0;
    if (d.value_sets[-best->b].contains(best->k)) a0 = {-best->b, best->k};
    else a0 = {Q(-2) * best->b, Q(2) * best->k};
    d.simple_affine.push_back(a0);
    for (const auto& s : phi.simple_roots) {
        d.simple_finite.push_back(int(d.simple_affine.size()));
        d.simple_affine.push_back({s, Q(0)});
    }
    d.complement = null_space(QMat(phi.simple_roots.begin(), phi.simple_roots.end()), phi.dim());
    QVec c = d.alcove_barycenter();
    for (const auto& a : d.simple_affine) {
        if (a.eval(c) <= 0) throw domain_error("alcove barycenter not interior for " + label);
        Root g = a.gradient;
        Root red = phi.contains(Q(1, 2) * g) ? Q(1, 2) * g : g;
        Q k = red == g ? a.offset : Q(1, 2) * a.offset;
        if (!d.is_affine_hyperplane(red, k)) throw domain_error("wall " + a.to_string() + " is not affine");
    }
    return d;
}

AffineRootDatum split_affine_datum(RootType type, int rank, const std::string& label) {
    return build_affine_datum(build_root_system(type, rank), [](const Root&) { return ValueSet{Q(1), Q(0)}; },
                              label);
}

CoxeterMatrix coxeter_matrix(const AffineRootDatum& d) {
    const std::size_t n = d.size();
    CoxeterMatrix m(n, std::vector<int>(n, 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto g = d.reflection(int(i)) * d.reflection(int(j));
            auto p = g;
            int order = kCoxeterInfinity;
            for (int k = 1; k <= 12; ++k) {
                if (p.is_identity()) {
                    order = k;
                    break;
                }
                p = p * g;
            }
            m[i][j] = m[j][i] = order;
        }
    return m;
}

std::optional<CoxeterMatrix> standard_coxeter_matrix(const std::string& label, int r) {
    const int n = r + 1;
    CoxeterMatrix m(std::size_t(n), std::vector<int>(std::size_t(n), 2));
    for (int i = 0; i < n; ++i) m[std::size_t(i)][std::size_t(i)] = 1;
    auto set = [&](int i, int j, int v) { m[std::size_t(i)][std::size_t(j)] = m[std::size_t(j)][std::size_t(i)] = v; };
    auto chain = [&](int from, int to) {
        for (int i = from; i < to; ++i) set(i, i + 1, 3);
    };
    if (label == "A_n") {
        if (r == 1) set(0, 1, kCoxeterInfinity);
        else {
            chain(1, r);
            set(0, 1, 3);
            set(0, r, 3);
        }
    } else if (label == "C_n" || label == "C-BC_n^III") {
        if (r == 1) set(0, 1, kCoxeterInfinity);
        else {
            chain(1, r - 1);
            set(0, 1, 4);
            set(r - 1, r, 4);
        }
    } else if (label == "B_n" || label == "B-C_n") {
        if (r < 2) return std::nullopt;
        chain(1, r - 1);
        set(r - 1, r, 4);
        set(0, 2, r == 2 ? 4 : 3);
    } else if (label == "D_n") {
        if (r < 4) return std::nullopt;
        chain(1, r - 1);
        set(r - 2, r, 3);
        set(0, 2, 3);
    } else {
        return std::nullopt;
    }
    return m;
}

ReducedWordEnumerator::ReducedWordEnumerator(const AffineRootDatum& d, const IwahoriWeylElement& w) : d_(&d) {
    if (w.is_identity()) identity_pending_ = true;
    else stack_.push_back({w, d.right_descents(w), 0});
}

std::optional<Word> ReducedWordEnumerator::next() {
    if (identity_pending_) {
        identity_pending_ = false;
        return Word{};
    }
    while (!stack_.empty()) {
        Frame& top = stack_.back();
        if (top.pos == top.descents.size()) {
            stack_.pop_back();
            if (!suffix_.empty()) suffix_.pop_back();
            continue;
        }
        int s = top.descents[top.pos++];
        auto w2 = top.w * d_->reflection(s);
        suffix_.push_back(s);
        if (w2.is_identity()) {
            Word out(suffix_.rbegin(), suffix_.rend());
            suffix_.pop_back();
            return out;
        }
        stack_.push_back({w2, d_->right_descents(w2), 0});
    }
    return std::nullopt;
}

ReducedExpressions reduced_expressions(const IwahoriWeylElement& w, const AffineRootDatum& d) {
    if (!d.in_affine_weyl_group(w)) throw domain_error("element is not in the affine Weyl group");
    int l = d.length(w);
    Word word;
    auto cur = w;
    while (!cur.is_identity()) {
        int s = d.right_descents(cur).front();
        word.push_back(s);
        cur = cur * d.reflection(s);
    }
    std::reverse(word.begin(), word.end());
    return {l, word, ReducedWordEnumerator(d, w)};
}

std::vector<BallEntry> cayley_ball(const AffineRootDatum& d, const std::vector<IwahoriWeylElement>& gens, int radius) {
    std::vector<BallEntry> out = {{IwahoriWeylElement::identity(d.dim()), 0, -1, -1}};
    std::map<IwahoriWeylElement, int> index = {{out[0].w, 0}};
    std::size_t frontier = 0;
    for (int level = 1; level <= radius; ++level) {
        std::size_t end = out.size();
        for (std::size_t i = frontier; i < end; ++i)
            for (int g = 0; g < int(gens.size()); ++g) {
                auto w = out[i].w * gens[std::size_t(g)];
                if (index.count(w)) continue;
                index[w] = int(out.size());
                out.push_back({w, level, int(i), g});
            }
        if (out.size() == end) break;
        frontier = end;
    }
    return out;
}

std::vector<SigmaOrbit> sigma_orbits(const AffineRootDatum& d, const SigmaAction& sigma) {
    const std::size_t n = d.size();
    if (sigma.size() != n) throw config_error("sigma", "action must permute all " + std::to_string(n) + " simple affine roots");
    std::vector<bool> hit(n, false);
    for (int s : sigma) {
        if (s < 0 || std::size_t(s) >= n || hit[std::size_t(s)]) throw config_error("sigma", "not a permutation");
        hit[std::size_t(s)] = true;
    }
    auto m = coxeter_matrix(d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m[std::size_t(sigma[i])][std::size_t(sigma[j])] != m[i][j])
                throw config_error("sigma", "permutation does not preserve the Coxeter matrix");
    std::vector<SigmaOrbit> out;
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        SigmaOrbit o;
        for (std::size_t j = i; !seen[j]; j = std::size_t(sigma[j])) {
            seen[j] = true;
            o.members.push_back(int(j));
        }
        std::sort(o.members.begin(), o.members.end());
        // the parabolic is finite iff the walls share a point
        QMat a, ab;
        for (int k : o.members) {
            const auto& ar = d.simple_affine[std::size_t(k)];
            a.push_back(ar.gradient);
            QVec row = ar.gradient;
            row.push_back(-ar.offset);
            ab.push_back(row);
        }
        for (const auto& z : d.complement) {
            a.push_back(z);
            QVec row = z;
            row.push_back(0);
            ab.push_back(row);
        }
        o.finite = rank_q(a) == rank_q(ab);
        out.push_back(o);
    }
    return out;
}

std::vector<LusztigEntry> lusztig_bijection(const AffineRootDatum& d, const SigmaAction& sigma) {
    std::vector<LusztigEntry> out;
    for (const auto& o : sigma_orbits(d, sigma)) {
        if (!o.finite) continue;
        std::vector<IwahoriWeylElement> gens;
        for (int k : o.members) gens.push_back(d.reflection(k));
        auto ball = cayley_ball(d, gens, 1 << 20);
        std::size_t top = 0;
        for (std::size_t i = 0; i < ball.size(); ++i)
            if (ball[i].length > ball[top].length) top = i;
        Word w;
        for (int i = int(top); ball[std::size_t(i)].parent >= 0; i = ball[std::size_t(i)].parent)
            w.push_back(o.members[std::size_t(ball[std::size_t(i)].gen)]);
        std::reverse(w.begin(), w.end());
        LusztigEntry e{o.members, w, ball[top].w, false, false};
        e.involution = (e.element * e.element).is_identity();
        Word sw;
        for (int s : w) sw.push_back(sigma[std::size_t(s)]);
        e.sigma_invariant = d.word_element(sw) == e.element;
        out.push_back(e);
    }
    return out;
}

std::optional<SigmaAction> induced_permutation(const AffineRootDatum& d, const IwahoriWeylElement& g) {
    SigmaAction out;
    for (const auto& a : d.simple_affine) {
        AffineRoot f = g.act(a);
        int found = -1;
        for (std::size_t j = 0; j < d.size(); ++j) {
            const auto& t = d.simple_affine[j];
            // f = c t with c > 0
            std::size_t piv = 0;
            while (piv < t.gradient.size() && t.gradient[piv] == 0) ++piv;
            if (piv == t.gradient.size() || f.gradient[piv] == 0) continue;
            Q c = f.gradient[piv] / t.gradient[piv];
            if (c <= 0) continue;
            if (f.gradient == c * t.gradient && f.offset == c * t.offset) found = int(j);
        }
        if (found < 0) return std::nullopt;
        out.push_back(found);
    }
    return out;
}

}  // namespace tits
