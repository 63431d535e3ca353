#include "tits/quadext.hpp"
#include "tits/errors.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace tits {

namespace {

bool residue_poly_has_root(const LaurentCtx& b, const LaurentNumber& alpha, const LaurentNumber& beta) {
    const FiniteField& F = *b.field;
    std::uint32_t a = alpha.coeff(0), be = beta.coeff(0);
    for (std::uint32_t y = 0; y < F.order(); ++y) {
        std::uint32_t v = F.add(F.sub(F.mul(y, y), F.mul(a, y)), be);
        if (v == 0) return true;
    }
    return false;
}

}  // namespace

const QuadExtCtx& QuadExtCtx::get(const LaurentCtx& base, ExtKind kind, const LaurentNumber& alpha,
                                  const LaurentNumber& beta, std::uint32_t f) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<QuadExtCtx>> cache;
    std::string key = base.header() + "|" + std::to_string(int(kind)) + "|" + alpha.to_string() + "|" +
                      beta.to_string() + "|" + std::to_string(f);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    if (base.k % f != 0) throw config_error("f", "coefficient field degree must be a multiple of f");
    if (kind == ExtKind::ramified) {
        if (beta.is_zero() || beta.val() != 1)
            throw config_error("extension.beta", "ramified extension needs val(beta) = 1 (Eisenstein)");
        if (!alpha.is_zero() && alpha.val() < 1)
            throw config_error("extension.alpha", "ramified extension needs val(alpha) >= 1 (Eisenstein)");
        if (base.p == 2 && alpha.is_zero())
            throw config_error("extension.alpha", "alpha = 0 is inseparable in characteristic 2");
    } else if (kind == ExtKind::unramified) {
        if ((!alpha.is_zero() && alpha.val() < 0) || beta.is_zero() || beta.val() != 0)
            throw config_error("extension.beta", "unramified extension needs integral alpha and unit beta");
        if (residue_poly_has_root(base, alpha, beta))
            throw config_error("extension",
                               "residue polynomial splits over the coefficient field F_" +
                                   std::to_string(base.field->order()) +
                                   "; the unramified extension is already inside the surrogate");
    }
    if (kind != ExtKind::split) {
        if (alpha.frob(f) != alpha) throw config_error("extension.alpha", "alpha is not in the base field");
        if (beta.frob(f) != beta) throw config_error("extension.beta", "beta is not in the base field");
    }
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto* c = new QuadExtCtx{&base, kind, alpha, beta, f};
    cache.emplace(key, std::unique_ptr<QuadExtCtx>(c));
    return *c;
}

const QuadExtCtx& QuadExtCtx::split(const LaurentCtx& base, std::uint32_t f) {
    return get(base, ExtKind::split, LaurentNumber::zero(base), LaurentNumber::zero(base), f);
}

std::string QuadExtCtx::describe() const {
    switch (kind) {
    case ExtKind::split: return "split";
    case ExtKind::unramified: return "unramified x^2 = (" + alpha.to_string() + ")x - (" + beta.to_string() + ")";
    case ExtKind::ramified:
        return std::string(wild() ? "wild" : "tame") + " ramified x^2 = (" + alpha.to_string() + ")x - (" +
               beta.to_string() + ")";
    }
    return "";
}

QuadExtNumber::QuadExtNumber(const QuadExtCtx& c, LaurentNumber a0, LaurentNumber a1)
    : ctx_(&c), c0_(std::move(a0)), c1_(std::move(a1)) {
    if (c.kind == ExtKind::split && !c1_.is_zero()) throw domain_error("split extension element with x-component");
}

QuadExtNumber::QuadExtNumber(const QuadExtCtx& c, LaurentNumber a0)
    : ctx_(&c), c0_(std::move(a0)), c1_(LaurentNumber::zero(*c.base)) {}

QuadExtNumber QuadExtNumber::from_int(const QuadExtCtx& c, std::int64_t n) {
    return QuadExtNumber(c, LaurentNumber::from_int(*c.base, n));
}

QuadExtNumber QuadExtNumber::zero(const QuadExtCtx& c) { return QuadExtNumber(c, LaurentNumber::zero(*c.base)); }

QuadExtNumber QuadExtNumber::gen(const QuadExtCtx& c) {
    if (c.kind == ExtKind::split) throw domain_error("split extension has no adjoined root");
    return QuadExtNumber(c, LaurentNumber::zero(*c.base), LaurentNumber::from_int(*c.base, 1));
}

QuadExtNumber QuadExtNumber::t(const QuadExtCtx& c) {
    return QuadExtNumber(c, LaurentNumber::monomial(*c.base, 1, 1));
}

QuadExtNumber QuadExtNumber::operator+(const QuadExtNumber& o) const {
    return QuadExtNumber(*ctx_, c0_ + o.c0_, c1_ + o.c1_);
}

QuadExtNumber QuadExtNumber::operator-(const QuadExtNumber& o) const {
    return QuadExtNumber(*ctx_, c0_ - o.c0_, c1_ - o.c1_);
}

QuadExtNumber QuadExtNumber::operator-() const { return QuadExtNumber(*ctx_, -c0_, -c1_); }

QuadExtNumber QuadExtNumber::operator*(const QuadExtNumber& o) const {
    if (ctx_->kind == ExtKind::split || (c1_.is_zero() && c1_.exact() && o.c1_.is_zero() && o.c1_.exact())) {
        return QuadExtNumber(*ctx_, c0_ * o.c0_);
    }
    // x^2 = alpha x - beta
    LaurentNumber hh = c1_ * o.c1_;
    LaurentNumber r0 = c0_ * o.c0_ - ctx_->beta * hh;
    LaurentNumber r1 = c0_ * o.c1_ + c1_ * o.c0_;
    if (!ctx_->alpha.is_zero()) r1 = r1 + ctx_->alpha * hh;
    return QuadExtNumber(*ctx_, r0, r1);
}

QuadExtNumber QuadExtNumber::gamma0() const {
    if (ctx_->kind == ExtKind::split) return *this;
    LaurentNumber a0 = ctx_->alpha.is_zero() ? c0_ : c0_ + ctx_->alpha * c1_;
    return QuadExtNumber(*ctx_, a0, -c1_);
}

LaurentNumber QuadExtNumber::norm() const {
    if (ctx_->kind == ExtKind::split) return c0_ * c0_;
    LaurentNumber n = c0_ * c0_ + ctx_->beta * c1_ * c1_;
    if (!ctx_->alpha.is_zero()) n = n + ctx_->alpha * c0_ * c1_;
    return n;
}

LaurentNumber QuadExtNumber::trace() const {
    if (ctx_->kind == ExtKind::split) return c0_ + c0_;
    LaurentNumber tr = c0_ + c0_;
    if (!ctx_->alpha.is_zero()) tr = tr + ctx_->alpha * c1_;
    return tr;
}

QuadExtNumber QuadExtNumber::inverse() const {
    if (ctx_->kind == ExtKind::split || (c1_.is_zero() && c1_.exact())) return QuadExtNumber(*ctx_, c0_.inverse());
    LaurentNumber ninv = norm().inverse();
    QuadExtNumber g = gamma0();
    return QuadExtNumber(*ctx_, g.c0_ * ninv, g.c1_ * ninv);
}

QuadExtNumber QuadExtNumber::pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    QuadExtNumber acc = from_int(*ctx_, 1), b = *this;
    while (e) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

QuadExtNumber QuadExtNumber::frob(std::uint32_t times) const {
    std::uint32_t n = ctx_->f * times;
    return QuadExtNumber(*ctx_, c0_.frob(n), c1_.frob(n));
}

Q QuadExtNumber::val() const {
    if (is_zero()) {
        if (exact()) throw domain_error("valuation of exact zero");
        throw precision_exhausted("valuation of an extension element with no known digits");
    }
    Q best;
    bool have = false;
    if (!c0_.is_zero()) {
        best = Q(c0_.val());
        have = true;
    }
    if (!c1_.is_zero()) {
        Q v1 = Q(c1_.val()) + (ctx_->kind == ExtKind::ramified ? Q(1, 2) : Q(0));
        if (!have || v1 < best) best = v1;
    }
    return best;
}

std::int64_t QuadExtNumber::val_ext() const {
    Q v = val();
    if (ctx_->kind == ExtKind::ramified) v *= 2;
    return v.numerator();
}

std::uint32_t QuadExtNumber::residue() const {
    if (!is_unit()) throw domain_error("residue of a non-unit");
    if (ctx_->kind == ExtKind::unramified) throw domain_error("residue of an unramified extension is quadratic over the coefficient field");
    return c0_.coeff(0);
}

std::string QuadExtNumber::to_string() const {
    if (ctx_->kind == ExtKind::split) return c0_.to_string();
    return c0_.to_string() + ";" + c1_.to_string();
}

QuadExtNumber QuadExtNumber::parse(const QuadExtCtx& c, const std::string& s) {
    auto semi = s.find(';');
    if (semi == std::string::npos) return QuadExtNumber(c, LaurentNumber::parse(*c.base, s));
    return QuadExtNumber(c, LaurentNumber::parse(*c.base, s.substr(0, semi)),
                         LaurentNumber::parse(*c.base, s.substr(semi + 1)));
}

bool trace_pair_test(const QuadExtNumber& u, const QuadExtNumber& v) { return u.norm() == v.trace(); }

bool norm_one_test(const QuadExtNumber& u) { return u.norm() == LaurentNumber::from_int(*u.ctx().base, 1); }

bool fixed_field_valuation_test(std::int64_t target_valuation) { return target_valuation % 2 == 0; }

namespace {

std::variant<QuadExtNumber, NormSolveFailure> digit_lift(const QuadExtCtx& e, const LaurentNumber& target) {
    const LaurentCtx& b = *e.base;
    const FiniteField& F = *b.field;
    bool ram = e.kind == ExtKind::ramified;
    QuadExtNumber pi = ram ? QuadExtNumber::gen(e) : QuadExtNumber::t(e);
    std::vector<QuadExtNumber> digits;
    std::uint64_t q = F.order();
    if (!ram && q * q > 70000) return NormSolveFailure{"digit search over F_q^2 too large"};
    for (std::uint32_t a = 0; a < q; ++a) {
        if (ram) {
            if (a) digits.push_back(QuadExtNumber(e, LaurentNumber::constant(b, a)));
            continue;
        }
        for (std::uint32_t c1 = 0; c1 < q; ++c1)
            if (a || c1) digits.push_back(QuadExtNumber(e, LaurentNumber::constant(b, a), LaurentNumber::constant(b, c1)));
    }
    QuadExtNumber c = QuadExtNumber::zero(e);
    for (std::uint32_t step = 0; step < 4 * b.N + 8; ++step) {
        LaurentNumber r = target - c.norm();
        if (r.is_zero()) return c;
        std::int64_t m = r.val();
        bool moved = false;
        std::int64_t jmax = (ram ? 2 * m : m) + 2;
        std::int64_t jmin = c.is_zero() ? (ram ? m : m / 2) : 0;
        for (std::int64_t j = std::max<std::int64_t>(jmin, 0); j <= jmax && !moved; ++j) {
            QuadExtNumber pj = pi.pow(j);
            for (const auto& dg : digits) {
                QuadExtNumber cand = c + dg * pj;
                LaurentNumber r2 = target - cand.norm();
                if (r2.is_zero() || r2.val() > m) {
                    c = cand;
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) return NormSolveFailure{"no residue digit raises the valuation of target - Nm(c) past t^" + std::to_string(m)};
    }
    return NormSolveFailure{"lifting did not terminate"};
}

}  // namespace

std::variant<QuadExtNumber, NormSolveFailure> solve_c_gamma_c(const QuadExtCtx& e, const LaurentNumber& target) {
    const LaurentCtx& b = *e.base;
    if (e.kind == ExtKind::split) return NormSolveFailure{"no quadratic extension"};
    if (target.is_zero()) return QuadExtNumber::zero(e);
    if (target.is_one()) return QuadExtNumber::from_int(e, 1);
    if (e.kind == ExtKind::ramified && b.p != 2) {
        std::int64_t v = target.val();
        // target = beta^v * w with w a unit; c = x^v * sqrt(w)
        LaurentNumber w = target * e.beta.pow(-v);
        if (!b.field->is_square(w.lead()))
            return NormSolveFailure{"residue " + b.field->to_string(w.lead()) + " is not a square in F_" +
                                    std::to_string(b.field->order()) + "; a quadratic residue extension is needed"};
        LaurentNumber s = sqrt_unit_series(w);
        QuadExtNumber c = QuadExtNumber::gen(e).pow(v) * QuadExtNumber(e, s);
        if (c.norm() != target) return NormSolveFailure{"lifted square root fails verification"};
        return c;
    }
    auto r = digit_lift(e, target);
    if (auto* c = std::get_if<QuadExtNumber>(&r))
        if (c->norm() != target) return NormSolveFailure{"lifted solution fails verification"};
    return r;
}

std::variant<QuadExtNumber, AbsenceCertificate> pick_uniformizer(const QuadExtCtx& e, bool want_antisymmetric) {
    if (e.kind != ExtKind::ramified) throw domain_error("pick_uniformizer needs a ramified extension");
    QuadExtNumber x = QuadExtNumber::gen(e);
    if (!want_antisymmetric) return x;
    if (e.base->p != 2) {
        QuadExtNumber half = QuadExtNumber(e, LaurentNumber::constant(*e.base, e.base->field->inv(2)));
        QuadExtNumber w = x - QuadExtNumber(e, e.alpha) * half;
        if (w.gamma0() != -w) throw domain_error("antisymmetric uniformizer construction failed");
        return w;
    }
    AbsenceCertificate cert;
    cert.required_valuation = 1;
    cert.fixed_field_admits = fixed_field_valuation_test(1);
    cert.statement =
        "characteristic 2: gamma0(w) = -w means gamma0(w) = w, so w lies in the base field and has even "
        "extension valuation; a uniformizer has valuation 1";
    return cert;
}

}  // namespace tits
