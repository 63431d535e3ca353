#include "tits/groups.hpp"

#include "tits/errors.hpp"

#include <algorithm>
#include <sstream>

namespace tits {

namespace {

using IMatrix = std::vector<std::vector<std::int64_t>>;

IMatrix izero(std::size_t n) { return IMatrix(n, std::vector<std::int64_t>(n, 0)); }

IMatrix imul(const IMatrix& a, const IMatrix& b) {
    const std::size_t n = a.size();
    IMatrix r = izero(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

IMatrix itranspose(const IMatrix& a) {
    IMatrix r = izero(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r[j][i] = a[i][j];
    return r;
}

IMatrix isub(const IMatrix& a, const IMatrix& b) {
    IMatrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r[i][j] -= b[i][j];
    return r;
}

bool iis_zero(const IMatrix& a) {
    for (const auto& row : a)
        for (auto v : row)
            if (v != 0) return false;
    return true;
}

IMatrix icomm(const IMatrix& a, const IMatrix& b) { return isub(imul(a, b), imul(b, a)); }

int nonzero_count(const Root& b) {
    int c = 0;
    for (const auto& x : b)
        if (x != 0) ++c;
    return c;
}

Q max_abs(const Root& b) {
    Q m = 0;
    for (const auto& x : b) m = std::max(m, x < 0 ? -x : x);
    return m;
}

RootType root_type_of(Family f) {
    switch (f) {
    case Family::SL: return RootType::A;
    case Family::Sp: return RootType::C;
    case Family::SO_odd: return RootType::B;
    case Family::SO_even: return RootType::D;
    case Family::U: return RootType::BC;
    }
    return RootType::A;
}

int relative_rank(const GroupSpec& s) { return s.family == Family::SL ? s.n - 1 : s.n / 2; }

void validate(const GroupSpec& s) {
    auto bad = [](const std::string& k, const std::string& m) { throw config_error(k, m); };
    switch (s.family) {
    case Family::SL:
        if (s.n < 2) bad("n", "SL needs n >= 2");
        break;
    case Family::Sp:
        if (s.n < 4 || s.n % 2) bad("n", "Sp needs even n >= 4");
        break;
    case Family::SO_odd:
        if (s.n < 5 || s.n % 2 == 0) bad("n", "odd orthogonal needs odd n >= 5");
        if (s.p == 2) bad("p", "odd orthogonal groups need p odd");
        break;
    case Family::SO_even:
        if (s.n < 8 || s.n % 2) bad("n", "even orthogonal needs even n >= 8");
        if (s.p == 2) bad("p", "even orthogonal groups need p odd");
        break;
    case Family::U:
        if (s.n < 3) bad("n", "unitary groups need n >= 3");
        if (s.ext.kind == ExtKind::split) bad("extension.kind", "unitary groups need a quadratic extension");
        if (s.ext.kind == ExtKind::unramified)
            bad("extension.kind",
                "unramified unitary groups split over the surrogate maximal unramified extension; only ramified "
                "extensions are modelled");
        break;
    }
    if (s.family != Family::U && s.ext.kind != ExtKind::split)
        bad("extension.kind", "only unitary groups take a quadratic extension");
    if (s.p < 2 || s.N < 4 || s.M < 1 || s.f < 1) bad("precision", "need p >= 2, N >= 4, M >= 1, f >= 1");
    if (s.uniformizer != "auto" && s.uniformizer != "antisymmetric" && s.uniformizer != "generator")
        bad("uniformizer", "expected auto, antisymmetric or generator");
}

std::string label_for(const GroupSpec& s) {
    switch (s.family) {
    case Family::SL: return "A_n";
    case Family::Sp: return "C_n";
    case Family::SO_odd: return "B_n";
    case Family::SO_even: return "D_n";
    case Family::U: return s.n % 2 ? "C-BC_n^III" : "B-C_n";
    }
    return "";
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
    case Family::SL: return "SL";
    case Family::Sp: return "Sp";
    case Family::SO_odd: return "SO_odd";
    case Family::SO_even: return "SO_even";
    case Family::U: return "U";
    }
    return "";
}

Family parse_family(const std::string& s) {
    if (s == "SL") return Family::SL;
    if (s == "Sp") return Family::Sp;
    if (s == "SO_odd") return Family::SO_odd;
    if (s == "SO_even") return Family::SO_even;
    if (s == "U") return Family::U;
    throw config_error("family", "unsupported family '" + s + "' (supported: SL, Sp, SO_odd, SO_even, U)");
}

AffineRootDatum affine_datum_for(const GroupSpec& s) {
    validate(s);
    const int r = relative_rank(s);
    RootType t = root_type_of(s.family);
    if (s.family == Family::U && s.n % 2 == 0) t = RootType::C;
    RootSystem phi = build_root_system(t, r);
    if (s.family != Family::U) return build_affine_datum(phi, [](const Root&) { return ValueSet{Q(1), Q(0)}; },
                                                         label_for(s));
    const bool odd = s.n % 2 == 1;
    // p odd: completing the square gives an alpha = 0 presentation; p = 2 forces alpha != 0
    const bool alpha_zero = s.p != 2;
    auto gamma = [odd, alpha_zero](const Root& b) -> ValueSet {
        if (nonzero_count(b) == 2) return {Q(1, 2), Q(0)};
        if (max_abs(b) == 2) {
            if (!odd) return {Q(1), Q(0)};
            return alpha_zero ? ValueSet{Q(1), Q(1, 2)} : ValueSet{Q(1), Q(0)};
        }
        return alpha_zero ? ValueSet{Q(1, 2), Q(0)} : ValueSet{Q(1, 2), Q(1, 4)};
    };
    return build_affine_datum(phi, gamma, label_for(s));
}

GroupModel::GroupModel(const GroupSpec& s) : spec_(s), datum_(affine_datum_for(s)) {
    base_ = &LaurentCtx::get(s.p, s.f * s.M, s.N);
    if (s.family == Family::U) {
        LaurentNumber alpha, beta;
        if (s.ext.alpha.empty()) alpha = s.p == 2 ? LaurentNumber::monomial(*base_, 1, 1) : LaurentNumber::zero(*base_);
        else alpha = LaurentNumber::parse(*base_, s.ext.alpha);
        if (s.ext.beta.empty())
            beta = s.p == 2 ? LaurentNumber::monomial(*base_, 1, 1) : -LaurentNumber::monomial(*base_, 1, 1);
        else beta = LaurentNumber::parse(*base_, s.ext.beta);
        for (const auto* v : {&alpha, &beta})
            if (v->frob(1) != *v)
                throw config_error("extension", "alpha and beta must have prime-field coefficients");
        field_ = &QuadExtCtx::get(*base_, s.ext.kind, alpha, beta, s.f);
    } else {
        field_ = &QuadExtCtx::split(*base_, s.f);
    }

    const std::size_t n = size();
    const int d = int(datum_.dim());
    const int r = relative_rank(s);
    weights_.assign(n, Root(std::size_t(d), Q(0)));
    if (s.family == Family::SL) {
        for (std::size_t j = 0; j < n; ++j) weights_[j] = eps(int(j) + 1, d);
    } else {
        for (int i = 0; i < r; ++i) {
            weights_[std::size_t(i)] = eps(i + 1, d);
            weights_[mirror(std::size_t(i))] = -eps(i + 1, d);
        }
    }

    form_int_ = izero(n);
    const bool skew = s.family == Family::Sp || (s.family == Family::U && n % 2 == 0);
    if (s.family != Family::SL)
        for (std::size_t i = 0; i < n; ++i) form_int_[i][mirror(i)] = (skew && i >= std::size_t(r)) ? -1 : 1;
    form_ = Matrix(*field_, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (form_int_[i][j] != 0) form_.at(i, j) = scalar(form_int_[i][j]);
    if (s.family != Family::SL) form_inv_ = *form_.inverse();

    if (s.family == Family::U) {
        if (field_->kind != ExtKind::ramified) throw config_error("extension.kind", "ramified extension required");
        bool anti = s.uniformizer == "antisymmetric" || (s.uniformizer == "auto" && field_->tame());
        auto pick = pick_uniformizer(*field_, anti);
        if (auto* cert = std::get_if<AbsenceCertificate>(&pick))
            throw config_error("uniformizer", "no antisymmetric uniformizer exists: " + cert->statement);
        uniformizer_ = std::get<QuadExtNumber>(pick);
        uniformizer_kind_ = anti ? "antisymmetric" : "generator";
        auto c2 = solve_c_gamma_c(*field_, LaurentNumber::from_int(*base_, 2));
        if (auto* f = std::get_if<NormSolveFailure>(&c2)) throw config_error("extension", "c gamma0(c) = 2: " + f->reason);
        c_two_ = std::get<QuadExtNumber>(c2);
        auto c0 = solve_c_gamma_c(*field_, uniformizer_.trace());
        if (auto* f = std::get_if<NormSolveFailure>(&c0))
            throw config_error("extension", "c0 gamma0(c0) = Tr(uniformizer): " + f->reason);
        c_zero_ = std::get<QuadExtNumber>(c0);
    } else {
        uniformizer_ = QuadExtNumber::t(*field_);
        uniformizer_kind_ = "t";
    }

    // parity patterns of b^vee(-1); empty in characteristic 2 where -1 = 1
    if (s.p != 2) {
        std::vector<std::uint32_t> basis;
        for (const auto& b : roots().roots) {
            Root bv = coroot(b);
            std::uint32_t mask = 0;
            for (std::size_t j = 0; j < n; ++j) {
                Q e = dot(weights_[j], bv);
                if (e.numerator() % 2 != 0) mask |= 1u << j;
            }
            for (auto v : basis) mask = std::min(mask, mask ^ v);
            if (mask == 0) continue;
            for (auto& v : basis) v = std::min(v, v ^ mask);
            basis.push_back(mask);
            std::sort(basis.rbegin(), basis.rend());
        }
        s2_basis_ = basis;
    }
    rep_cache_.resize(datum_.size());
}

bool GroupModel::multipliable(const Root& b) const { return roots().contains(Q(2) * b); }

bool GroupModel::divisible(const Root& b) const {
    Root h = Q(1, 2) * b;
    return roots().contains(h);
}

GroupModel::Position GroupModel::position_of(const Root& b) const {
    const std::size_t n = size();
    const bool pos = roots().is_positive(b);
    Root c = pos ? b : -b;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (p != q && weights_[p] - weights_[q] == c) return pos ? Position{p, q} : Position{q, p};
    throw domain_error("no matrix position carries root " + root_to_string(b));
}

const GroupModel::SplitRootData& GroupModel::split_data(const Root& c) const {
    auto it = split_cache_.find(c);
    if (it != split_cache_.end()) return it->second;
    const std::size_t n = size();
    Position pq = position_of(c);
    IMatrix x = izero(n);
    x[pq.p][pq.q] = 1;
    if (spec_.family != Family::SL) {
        std::size_t a = mirror(pq.q), b = mirror(pq.p);
        auto lie_ok = [&](const IMatrix& m) {
            IMatrix s1 = imul(itranspose(m), form_int_), s2 = imul(form_int_, m);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (s1[i][j] + s2[i][j] != 0) return false;
            return true;
        };
        if (!(a == pq.p && b == pq.q)) {
            bool found = false;
            for (int sgn : {1, -1}) {
                IMatrix y = x;
                y[a][b] = sgn;
                if (lie_ok(y)) {
                    x = y;
                    found = true;
                    break;
                }
            }
            if (!found) throw std::logic_error("no Lie algebra root vector for " + root_to_string(c));
        } else if (!lie_ok(x)) {
            throw std::logic_error("root vector outside the Lie algebra for " + root_to_string(c));
        }
    }
    IMatrix xt = itranspose(x);
    IMatrix h = icomm(x, xt), hx = icomm(h, x);
    std::int64_t cval = 0;
    for (std::size_t i = 0; i < n && cval == 0; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (x[i][j] != 0) {
                cval = hx[i][j] / x[i][j];
                break;
            }
    if (cval <= 0 || 2 % cval != 0) throw std::logic_error("unexpected sl2 normalisation");
    IMatrix check = hx;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) check[i][j] -= cval * x[i][j];
    if (!iis_zero(check)) throw std::logic_error("root vector is not an eigenvector");
    return split_cache_.emplace(c, SplitRootData{x, 2 / cval}).first->second;
}

Matrix GroupModel::exp_nilpotent(const IMatrix& z, const QuadExtNumber& u) const {
    const std::size_t n = size();
    Matrix r = Matrix::identity(*field_, n);
    IMatrix pw = z;
    QuadExtNumber coef = u;
    const auto& F = *base_->field;
    for (std::uint32_t k = 1; !iis_zero(pw); ++k) {
        if (k > 1) {
            if (k % spec_.p == 0) throw config_error("p", "exponential of a root vector needs p > " + std::to_string(k));
            coef = coef * u * QuadExtNumber(*field_, LaurentNumber::constant(*base_, F.inv(F.from_int(k))));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (pw[i][j] != 0) r.at(i, j) = r.at(i, j) + coef * scalar(pw[i][j]);
        pw = imul(pw, z);
    }
    return r;
}

Matrix GroupModel::gl_unipotent(std::size_t p, std::size_t q, const QuadExtNumber& u) const {
    Matrix r = Matrix::identity(*field_, size());
    r.at(p, q) = u;
    return r;
}

Matrix GroupModel::theta(const Matrix& g) const {
    auto inv = g.gamma0().inverse();
    if (!inv) throw domain_error("theta of a singular matrix");
    return form_inv_ * inv->transpose() * form_;
}

Matrix GroupModel::root_subgroup(const Root& b, const QuadExtNumber& u) const {
    if (!roots().contains(b)) throw domain_error("not a root: " + root_to_string(b));
    if (spec_.family != Family::U) {
        if (!u.in_base()) throw domain_error("root-group parameter outside the base field");
        if (roots().is_positive(b)) return exp_nilpotent(split_data(b).x, u);
        const auto& sd = split_data(-b);
        IMatrix y = itranspose(sd.x);
        for (auto& row : y)
            for (auto& v : row) v *= sd.k;
        return exp_nilpotent(y, -u);
    }
    if (multipliable(b)) throw domain_error("multipliable root " + root_to_string(b) + " takes a pair (u, v)");
    if (divisible(b)) {
        if (!trace_pair_test(QuadExtNumber::zero(*field_), u)) throw domain_error("parameter of a divisible root must have trace 0");
        return root_subgroup(Q(1, 2) * b, QuadExtNumber::zero(*field_), u);
    }
    Position pq = position_of(b);
    const bool pos = roots().is_positive(b);
    if (pq.p == mirror(pq.q)) {
        if (!u.in_base()) throw domain_error("parameter of a Galois-fixed root must lie in the base field");
        return gl_unipotent(pq.p, pq.q, pos ? u : -u);
    }
    Matrix x = gl_unipotent(pq.p, pq.q, pos ? u : -u);
    return x * theta(x);
}

Matrix GroupModel::root_subgroup(const Root& b, const QuadExtNumber& u, const QuadExtNumber& v) const {
    if (!unitary() || !multipliable(b)) throw domain_error("pair parameters need a multipliable root");
    if (!trace_pair_test(u, v)) throw domain_error("(u, v) outside H0");
    std::size_t i = 0;
    while (b[i] == 0) ++i;
    const std::size_t a = i, m = size() / 2, c = mirror(i);
    Matrix g = Matrix::identity(*field_, size());
    if (b[i] > 0) {
        g.at(a, m) = -u.gamma0();
        g.at(a, c) = -v;
        g.at(m, c) = u;
    } else {
        g.at(m, a) = u;
        g.at(c, a) = -v;
        g.at(c, m) = -u.gamma0();
    }
    return g;
}

Matrix GroupModel::coroot_at(const Root& b, const QuadExtNumber& x) const {
    Root bv = coroot(b);
    std::vector<QuadExtNumber> d;
    for (std::size_t j = 0; j < size(); ++j) {
        Q e = dot(weights_[j], bv);
        if (e.denominator() != 1) throw domain_error("non-integral coroot pairing");
        d.push_back(x.pow(e.numerator()));
    }
    return Matrix::diagonal(d);
}

QuadExtNumber GroupModel::root_uniformizer(const Root& bstar) const {
    if (!unitary()) return QuadExtNumber::t(*field_);
    if (!multipliable(bstar)) {
        Position pq = position_of(bstar);
        if (pq.p == mirror(pq.q)) return QuadExtNumber::t(*field_);
    }
    return uniformizer_;
}

Matrix GroupModel::norm_coroot(const Root& bstar, const QuadExtNumber& w) const {
    Position pq = position_of(bstar);
    Matrix d = Matrix::identity(*field_, size());
    d.at(pq.p, pq.p) = w;
    d.at(pq.q, pq.q) = w.inverse();
    if (pq.p == mirror(pq.q)) return d;
    return d * theta(d);
}

Matrix GroupModel::weyl_rep(const Root& b0) const {
    Root b = divisible(b0) && unitary() ? Q(1, 2) * b0 : b0;
    if (unitary() && multipliable(b)) {
        QuadExtNumber one = scalar(1);
        Matrix x = root_subgroup(b, c_two_, one);
        return x * root_subgroup(-b, c_two_, one) * x;
    }
    QuadExtNumber one = scalar(1);
    Matrix x = root_subgroup(b, one);
    return x * root_subgroup(-b, one) * x;
}

Matrix GroupModel::rep_finite_simple(int i) const {
    if (i <= 0 || std::size_t(i) >= datum_.size()) throw domain_error("not a finite simple index");
    return weyl_rep(datum_.simple_affine[std::size_t(i)].gradient);
}

Matrix GroupModel::rep_affine_simple(int i) const {
    const Root& b = datum_.simple_affine[std::size_t(i)].gradient;
    if (datum_.simple_affine[std::size_t(i)].offset == 0) return weyl_rep(b);
    Root bs = star_reduction(b, roots());
    Matrix nb = unitary() ? norm_coroot(bs, root_uniformizer(bs)) : coroot_at(b, QuadExtNumber::t(*field_));
    return nb * weyl_rep(b);
}

Matrix GroupModel::rep_affine_triple(int i) const {
    const Root& b = datum_.simple_affine[std::size_t(i)].gradient;
    if (datum_.simple_affine[std::size_t(i)].offset == 0) return weyl_rep(b);
    Root bs = star_reduction(b, roots());
    QuadExtNumber w = root_uniformizer(bs);
    QuadExtNumber wi = w.inverse();
    if (unitary() && multipliable(bs)) {
        QuadExtNumber gw = w.gamma0();
        return root_subgroup(-bs, c_zero_ * gw.inverse(), wi) * root_subgroup(bs, c_zero_, gw) *
               root_subgroup(-bs, c_zero_ * wi, wi);
    }
    Matrix x = root_subgroup(bs, w);
    return x * root_subgroup(-bs, wi) * x;
}

bool GroupModel::displayed_multipliable_tuples_in_h0() const {
    if (!unitary() || size() % 2 == 0) return true;
    const QuadExtNumber& w = uniformizer_;
    QuadExtNumber gw = w.gamma0();
    return trace_pair_test(c_zero_ * gw, w) && trace_pair_test(c_zero_, gw.inverse()) &&
           trace_pair_test(c_zero_ * w, w);
}

const Matrix& GroupModel::rep(int i) const {
    auto& slot = rep_cache_.at(std::size_t(i));
    if (!slot) slot = datum_.simple_affine[std::size_t(i)].offset == 0 ? weyl_rep(datum_.simple_affine[std::size_t(i)].gradient)
                                                                        : rep_affine_simple(i);
    return *slot;
}

IwahoriWeylElement GroupModel::weyl_image(const Matrix& g) const {
    auto pi = g.monomial_permutation();
    if (!pi) throw domain_error("weyl_image needs a monomial matrix");
    const std::size_t d = datum_.dim();
    QVec nu(d, Q(0));
    QMat w0(d, QVec(d, Q(0)));
    for (std::size_t i = 0; i < d; ++i) {
        // index i carries eps_{i+1}; its row gives the translation, its column the finite part
        std::size_t col = std::size_t(std::find(pi->begin(), pi->end(), i) - pi->begin());
        nu[i] = -g.at(i, col).val();
        const Root& img = weights_[(*pi)[i]];
        for (std::size_t k = 0; k < d; ++k) w0[k][i] = img[k];
    }
    return IwahoriWeylElement{nu, w0};
}

bool GroupModel::in_t1(const Matrix& g) const {
    if (!g.is_diagonal()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (!g.at(i, i).is_unit()) return false;
    if (unitary() && size() % 2 == 1 && g.at(size() / 2, size() / 2).residue() != 1) return false;
    return true;
}

bool GroupModel::is_member(const Matrix& g) const {
    switch (spec_.family) {
    case Family::SL: return g.det() == scalar(1);
    case Family::Sp: return g.transpose() * form_ * g == form_;
    case Family::SO_odd:
    case Family::SO_even: return g.transpose() * form_ * g == form_ && g.det() == scalar(1);
    case Family::U: return g.gamma0().transpose() * form_ * g == form_;
    }
    return false;
}

Matrix GroupModel::sign_matrix(std::uint32_t mask) const {
    std::vector<QuadExtNumber> d;
    for (std::size_t j = 0; j < size(); ++j) d.push_back(scalar((mask >> j) & 1 ? -1 : 1));
    return Matrix::diagonal(d);
}

std::vector<Matrix> GroupModel::s2_elements() const {
    std::vector<Matrix> out;
    const std::size_t k = s2_basis_.size();
    for (std::uint32_t sel = 0; sel < (1u << k); ++sel) {
        std::uint32_t mask = 0;
        for (std::size_t b = 0; b < k; ++b)
            if ((sel >> b) & 1) mask ^= s2_basis_[b];
        out.push_back(sign_matrix(mask));
    }
    return out;
}

bool GroupModel::in_s2(const Matrix& g) const {
    if (!g.is_diagonal()) return false;
    const QuadExtNumber one = scalar(1), minus = scalar(-1);
    std::uint32_t mask = 0;
    for (std::size_t j = 0; j < size(); ++j) {
        const auto& e = g.at(j, j);
        if (e == one) continue;
        if (e == minus) mask |= 1u << j;
        else return false;
    }
    for (auto v : s2_basis_) mask = std::min(mask, mask ^ v);
    return mask == 0;
}

std::string GroupModel::describe() const {
    std::ostringstream os;
    os << family_name(spec_.family) << spec_.n << " over " << base_->header() << ", " << field_->describe()
       << ", Frobenius exponent " << spec_.f << ", relative type " << type_name(roots().type) << roots().rank
       << ", echelonnage " << datum_.echelonnage_label;
    return os.str();
}

}  // namespace tits
