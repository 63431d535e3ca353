#include "tits/laurent.hpp"
#include "tits/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

namespace tits {

const LaurentCtx& LaurentCtx::get(std::uint32_t p, std::uint32_t k, std::uint32_t N) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::unique_ptr<LaurentCtx>> cache;
    const FiniteField& F = FiniteField::get(p, k);
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, k, N);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    if (N == 0 || N > 512) throw config_error("N", "precision must be in 1..512");
    std::uint64_t bound = (std::uint64_t(N) * k + k) * std::uint64_t(p - 1) * (p - 1) + p;
    if (bound >= (std::uint64_t(1) << 32))
        throw config_error("N", "N*k*p^2 exceeds the 32-bit accumulator bound");
    auto* c = new LaurentCtx{&F, p, k, N, &kernels_active()};
    cache.emplace(key, std::unique_ptr<LaurentCtx>(c));
    return *c;
}

std::string LaurentCtx::header() const {
    return "[" + std::to_string(p) + ", " + std::to_string(k) + ", " + std::to_string(N) + "]";
}

LaurentNumber LaurentNumber::zero(const LaurentCtx& c, std::int64_t prec) {
    LaurentNumber z;
    z.ctx_ = &c;
    z.prec_ = prec;
    z.val_ = 0;
    return z;
}

LaurentNumber LaurentNumber::monomial(const LaurentCtx& c, std::uint32_t code, std::int64_t e) {
    if (code == 0) return zero(c);
    LaurentNumber r;
    r.ctx_ = &c;
    r.val_ = e;
    r.prec_ = kExact;
    r.d_.assign(std::size_t(c.k) * c.N, 0);
    for (std::uint32_t j = 0; j < c.k; ++j) r.d_[j * c.N] = c.field->digit(code, j);
    return r;
}

LaurentNumber LaurentNumber::constant(const LaurentCtx& c, std::uint32_t code) { return monomial(c, code, 0); }

LaurentNumber LaurentNumber::from_int(const LaurentCtx& c, std::int64_t n) {
    return constant(c, c.field->from_int(n));
}

LaurentNumber LaurentNumber::from_coeffs(const LaurentCtx& c, std::int64_t v, const std::vector<std::uint32_t>& codes,
                                         std::int64_t prec) {
    std::vector<std::uint32_t> buf(std::size_t(c.k) * c.N, 0);
    std::int64_t lim = prec == kExact ? std::int64_t(c.N) : std::min<std::int64_t>(c.N, prec - v);
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (codes[i] == 0) continue;
        if (std::int64_t(i) >= c.N) {
            if (prec == kExact) throw domain_error("exact series longer than precision window");
            break;
        }
        if (std::int64_t(i) >= lim) break;
        for (std::uint32_t j = 0; j < c.k; ++j) buf[j * c.N + i] = c.field->digit(codes[i], j);
    }
    if (prec != kExact && std::int64_t(c.N) < prec - v) prec = v + c.N;
    return normalize(c, std::move(buf), v, prec);
}

std::int64_t LaurentNumber::val() const {
    if (is_zero()) {
        if (exact()) throw domain_error("valuation of exact zero");
        throw precision_exhausted("valuation of a zero known only to t^" + std::to_string(prec_));
    }
    return val_;
}

std::uint32_t LaurentNumber::known() const {
    if (is_zero()) return 0;
    if (exact()) return ctx_->N;
    return std::uint32_t(std::min<std::int64_t>(ctx_->N, prec_ - val_));
}

std::uint32_t LaurentNumber::coeff(std::int64_t e) const {
    if (!exact() && e >= prec_) throw precision_exhausted("coefficient of t^" + std::to_string(e) + " beyond precision");
    if (is_zero() || e < val_ || e - val_ >= std::int64_t(ctx_->N)) return 0;
    std::uint32_t digs[32];
    std::size_t i = std::size_t(e - val_);
    for (std::uint32_t j = 0; j < ctx_->k; ++j) digs[j] = d_[j * ctx_->N + i];
    return ctx_->field->from_digits(digs);
}

bool LaurentNumber::is_one() const {
    return !is_zero() && val_ == 0 && rel_degree() == 0 && lead() == 1;
}

std::int64_t LaurentNumber::rel_degree() const {
    const std::uint32_t N = ctx_->N;
    for (std::int64_t i = N - 1; i >= 0; --i)
        for (std::uint32_t j = 0; j < ctx_->k; ++j)
            if (d_[j * N + i]) return i;
    return -1;
}

LaurentNumber LaurentNumber::normalize(const LaurentCtx& c, std::vector<std::uint32_t>&& buf, std::int64_t v0,
                                       std::int64_t prec) {
    const std::uint32_t N = c.N, k = c.k;
    if (prec != kExact) {
        std::int64_t kn = std::max<std::int64_t>(0, std::min<std::int64_t>(N, prec - v0));
        for (std::uint32_t j = 0; j < k; ++j)
            std::fill(buf.begin() + std::size_t(j) * N + kn, buf.begin() + std::size_t(j + 1) * N, 0u);
    }
    std::int64_t first = -1;
    for (std::uint32_t i = 0; i < N && first < 0; ++i)
        for (std::uint32_t j = 0; j < k; ++j)
            if (buf[j * N + i]) {
                first = i;
                break;
            }
    LaurentNumber r;
    r.ctx_ = &c;
    r.prec_ = prec;
    if (first < 0) {
        r.val_ = 0;
        return r;
    }
    r.val_ = v0 + first;
    if (first > 0) {
        for (std::uint32_t j = 0; j < k; ++j) {
            std::uint32_t* pl = buf.data() + std::size_t(j) * N;
            std::copy(pl + first, pl + N, pl);
            std::fill(pl + N - first, pl + N, 0u);
        }
    }
    if (prec != kExact) {
        std::int64_t kn = std::min<std::int64_t>(N, prec - r.val_);
        for (std::uint32_t j = 0; j < k; ++j)
            for (std::int64_t i = std::max<std::int64_t>(kn, 0); i < N; ++i) buf[j * N + i] = 0;
    }
    r.d_ = std::move(buf);
    return r;
}

LaurentNumber LaurentNumber::truncate(std::int64_t prec) const {
    if (prec >= prec_) return *this;
    if (is_zero() || prec <= val_) return zero(*ctx_, prec);
    std::vector<std::uint32_t> buf = d_;
    return normalize(*ctx_, std::move(buf), val_, prec);
}

LaurentNumber LaurentNumber::operator+(const LaurentNumber& o) const {
    const LaurentCtx& c = *ctx_;
    const std::uint32_t N = c.N, k = c.k;
    std::int64_t P = std::min(prec_, o.prec_);
    if (is_zero()) return o.truncate(P);
    if (o.is_zero()) return truncate(P);
    std::int64_t v0 = std::min(val_, o.val_);
    bool both_fit = true;
    std::vector<std::uint32_t> buf(std::size_t(k) * N, 0);
    for (const LaurentNumber* op : {this, &o}) {
        std::int64_t sh = op->val_ - v0;
        if (sh >= N) {
            if (op->exact()) both_fit = false;
            continue;
        }
        std::int64_t len = std::min<std::int64_t>(op->known(), N - sh);
        if (op->exact() && sh + op->rel_degree() >= N) both_fit = false;
        for (std::uint32_t j = 0; j < k; ++j)
            c.kern->add_mod(buf.data() + j * N + sh, buf.data() + j * N + sh, op->d_.data() + j * N,
                            std::size_t(len), c.p);
    }
    if (P == kExact && !both_fit) P = v0 + N;
    if (P != kExact) P = std::min<std::int64_t>(P, v0 + N);
    return normalize(c, std::move(buf), v0, P);
}

LaurentNumber LaurentNumber::operator-() const {
    if (is_zero()) return *this;
    LaurentNumber r = *this;
    std::vector<std::uint32_t> z(d_.size(), 0);
    ctx_->kern->sub_mod(r.d_.data(), z.data(), d_.data(), d_.size(), ctx_->p);
    return r;
}

LaurentNumber LaurentNumber::operator-(const LaurentNumber& o) const { return *this + (-o); }

LaurentNumber LaurentNumber::operator*(const LaurentNumber& o) const {
    const LaurentCtx& c = *ctx_;
    const std::uint32_t N = c.N, k = c.k, p = c.p;
    if (is_zero() || o.is_zero()) {
        std::int64_t pa = is_zero() ? prec_ : prec_;
        std::int64_t P;
        if (is_zero() && o.is_zero())
            P = (exact() || o.exact()) ? kExact : prec_ + o.prec_;
        else if (is_zero())
            P = exact() ? kExact : pa + o.val_;
        else
            P = o.exact() ? kExact : o.prec_ + val_;
        return zero(c, P);
    }
    std::int64_t v = val_ + o.val_;
    std::int64_t rel = N;
    if (!exact()) rel = std::min<std::int64_t>(rel, prec_ - val_);
    if (!o.exact()) rel = std::min<std::int64_t>(rel, o.prec_ - o.val_);
    const std::uint32_t planes = 2 * k - 1;
    std::vector<std::uint32_t> acc(std::size_t(planes) * N, 0);
    std::uint32_t la = known(), lb = o.known();
    for (std::uint32_t i = 0; i < la; ++i)
        for (std::uint32_t ja = 0; ja < k; ++ja) {
            std::uint32_t a = d_[ja * N + i];
            if (!a) continue;
            std::uint32_t len = std::min(N - i, lb);
            for (std::uint32_t jb = 0; jb < k; ++jb)
                c.kern->axpy_acc(acc.data() + std::size_t(ja + jb) * N + i, o.d_.data() + std::size_t(jb) * N, a, len);
        }
    const auto& m = c.field->modulus();
    for (std::uint32_t dd = planes; dd-- > k;) {
        std::uint32_t* src = acc.data() + std::size_t(dd) * N;
        c.kern->reduce_mod(src, N, p);
        for (std::uint32_t s = 0; s < k; ++s) {
            std::uint32_t coef = (p - m[s]) % p;
            if (coef) c.kern->axpy_acc(acc.data() + std::size_t(dd - k + s) * N, src, coef, N);
        }
    }
    c.kern->reduce_mod(acc.data(), std::size_t(k) * N, p);
    acc.resize(std::size_t(k) * N);
    std::int64_t P;
    if (exact() && o.exact() && rel_degree() + o.rel_degree() < std::int64_t(N))
        P = kExact;
    else
        P = v + rel;
    return normalize(c, std::move(acc), v, P);
}

LaurentNumber LaurentNumber::scale(std::uint32_t code) const {
    return *this * constant(*ctx_, code);
}

LaurentNumber LaurentNumber::shift(std::int64_t e) const {
    LaurentNumber r = *this;
    if (!is_zero()) r.val_ += e;
    if (!exact()) r.prec_ += e;
    return r;
}

LaurentNumber LaurentNumber::inverse() const {
    const LaurentCtx& c = *ctx_;
    if (is_zero()) {
        if (exact()) throw domain_error("inverse of exact zero");
        throw precision_exhausted("inverse of a zero known only to t^" + std::to_string(prec_));
    }
    std::int64_t rel = exact() ? std::int64_t(c.N) : std::min<std::int64_t>(c.N, prec_ - val_);
    LaurentNumber u = *this;
    u.val_ = 0;
    u.prec_ = kExact;
    if (rel_degree() == 0) return monomial(c, c.field->inv(lead()), -val_).truncate(exact() ? kExact : -val_ + rel);
    LaurentNumber x = constant(c, c.field->inv(lead()));
    LaurentNumber two = from_int(c, 2);
    for (std::uint32_t got = 1; got < c.N; got *= 2) x = x * (two - u * x);
    x.prec_ = kExact;
    LaurentNumber r = x.truncate(rel);
    r.val_ -= val_;
    if (r.prec_ != kExact) r.prec_ -= val_;
    // u*x was computed in a window of N; the tail is unknown
    if (r.prec_ == kExact) r.prec_ = r.val_ + rel;
    return r;
}

LaurentNumber LaurentNumber::pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    LaurentNumber acc = constant(*ctx_, 1), b = *this;
    while (e) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

LaurentNumber LaurentNumber::frob(std::uint32_t times) const {
    if (is_zero()) return *this;
    const LaurentCtx& c = *ctx_;
    LaurentNumber r = *this;
    std::uint32_t digs[32];
    for (std::uint32_t i = 0; i < c.N; ++i) {
        for (std::uint32_t j = 0; j < c.k; ++j) digs[j] = d_[j * c.N + i];
        std::uint32_t code = c.field->frob(c.field->from_digits(digs), times);
        for (std::uint32_t j = 0; j < c.k; ++j) r.d_[j * c.N + i] = c.field->digit(code, j);
    }
    return r;
}

bool LaurentNumber::same_repr(const LaurentNumber& o) const {
    return ctx_ == o.ctx_ && prec_ == o.prec_ && d_ == o.d_ && (is_zero() || val_ == o.val_);
}

std::string LaurentNumber::to_string() const {
    std::ostringstream os;
    if (is_zero()) {
        os << "z";
    } else {
        os << val_ << ":";
        std::int64_t deg = rel_degree();
        for (std::int64_t i = 0; i <= deg; ++i) {
            if (i) os << ",";
            os << ctx_->field->to_string(coeff(val_ + i));
        }
    }
    if (!exact()) os << "@" << prec_;
    return os.str();
}

LaurentNumber LaurentNumber::parse(const LaurentCtx& c, const std::string& s0) {
    std::string s = s0;
    std::int64_t prec = kExact;
    auto at = s.find('@');
    try {
        if (at != std::string::npos) {
            prec = std::stoll(s.substr(at + 1));
            s = s.substr(0, at);
        }
        if (s == "z") return zero(c, prec);
        auto colon = s.find(':');
        if (colon == std::string::npos) throw domain_error("missing ':' in '" + s0 + "'");
        std::int64_t v = std::stoll(s.substr(0, colon));
        std::vector<std::uint32_t> codes;
        std::string rest = s.substr(colon + 1);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            auto comma = rest.find(',', pos);
            std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            codes.push_back(c.field->parse(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (codes.empty() || codes[0] == 0) throw domain_error("leading coefficient must be nonzero in '" + s0 + "'");
        return from_coeffs(c, v, codes, prec);
    } catch (const std::logic_error&) {
        throw domain_error("malformed series text '" + s0 + "'");
    }
}

LaurentNumber sqrt_unit_series(const LaurentNumber& w) {
    const LaurentCtx& c = w.ctx();
    if (c.p == 2) throw domain_error("series square root needs odd characteristic");
    if (w.val() != 0) throw domain_error("series square root needs a unit");
    std::uint32_t a0 = w.lead();
    if (!c.field->is_square(a0)) throw domain_error("residue is not a square");
    LaurentNumber y = LaurentNumber::constant(c, c.field->sqrt(a0));
    LaurentNumber half = LaurentNumber::constant(c, c.field->inv(c.field->from_int(2)));
    for (std::uint32_t got = 1; got < 2 * c.N; got *= 2) y = (y + w / y) * half;
    return y;
}

}  // namespace tits
