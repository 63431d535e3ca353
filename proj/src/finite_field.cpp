#include "tits/finite_field.hpp"
#include "tits/errors.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace tits {

namespace {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> f;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            f.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) f.push_back(n);
    return f;
}

// Polynomials over F_p modulo a monic modulus, as digit vectors of length k.
struct PolyMod {
    std::uint32_t p, k;
    std::vector<std::uint32_t> m;  // low coefficients of the monic modulus

    std::vector<std::uint32_t> mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
        std::vector<std::uint64_t> r(2 * k, 0);
        for (std::uint32_t i = 0; i < k; ++i)
            for (std::uint32_t j = 0; j < k; ++j) r[i + j] = (r[i + j] + std::uint64_t(a[i]) * b[j]) % p;
        for (std::uint32_t d = 2 * k - 1; d >= k; --d) {
            std::uint64_t c = r[d] % p;
            if (c == 0) continue;
            r[d] = 0;
            for (std::uint32_t s = 0; s < k; ++s) r[d - k + s] = (r[d - k + s] + (p - c) * m[s]) % p;
        }
        std::vector<std::uint32_t> out(k);
        for (std::uint32_t i = 0; i < k; ++i) out[i] = std::uint32_t(r[i] % p);
        return out;
    }
};

}  // namespace

const FiniteField& FiniteField::get(std::uint32_t p, std::uint32_t k) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<FiniteField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    if (!is_prime(p)) throw config_error("p", "characteristic " + std::to_string(p) + " is not prime");
    if (k == 0) throw config_error("f", "field degree must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= p;
    if (q > (1u << 22)) throw config_error("f", "residue field F_" + std::to_string(p) + "^" + std::to_string(k) + " exceeds the table limit 2^22");
    if (p > 36) throw config_error("p", "characteristic above 36 is not supported by the digit text form");
    auto* f = new FiniteField(p, k);
    cache.emplace(key, std::unique_ptr<FiniteField>(f));
    return *f;
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t k) : p_(p), k_(k), q_(1) {
    for (std::uint32_t i = 0; i < k; ++i) q_ *= p;
    digits_.resize(std::size_t(q_) * k_);
    for (std::uint32_t a = 0; a < q_; ++a) {
        std::uint32_t x = a;
        for (std::uint32_t j = 0; j < k_; ++j) {
            digits_[a * k_ + j] = x % p_;
            x /= p_;
        }
    }
    exp_.assign(q_ - 1 == 0 ? 1 : q_ - 1, 0);
    log_.assign(q_, 0);
    if (k_ == 1) {
        // smallest primitive root mod p
        auto fac = prime_factors(p_ - 1);
        for (std::uint32_t g = 1; g < p_; ++g) {
            bool ok = true;
            for (auto r : fac) {
                std::uint64_t acc = 1, b = g, e = (p_ - 1) / r;
                while (e) {
                    if (e & 1) acc = acc * b % p_;
                    b = b * b % p_;
                    e >>= 1;
                }
                if (acc == 1) ok = false;
            }
            if (ok || p_ == 2) {
                mod_ = {(p_ - g) % p_};  // y - g
                break;
            }
        }
    } else {
        auto fac = prime_factors(q_ - 1);
        std::vector<std::uint32_t> cand(k_);
        for (std::uint32_t code = 0; code < q_; ++code) {
            for (std::uint32_t j = 0; j < k_; ++j) cand[j] = digits_[code * k_ + j];
            if (cand[0] == 0) continue;
            PolyMod pm{p_, k_, cand};
            // order of y must be exactly q-1
            auto power = [&](std::uint64_t e) {
                std::vector<std::uint32_t> acc(k_, 0), b(k_, 0);
                acc[0] = 1;
                b[1] = 1;
                while (e) {
                    if (e & 1) acc = pm.mul(acc, b);
                    b = pm.mul(b, b);
                    e >>= 1;
                }
                return acc;
            };
            std::vector<std::uint32_t> one(k_, 0);
            one[0] = 1;
            if (power(q_ - 1) != one) continue;
            bool prim = true;
            for (auto r : fac)
                if (power((q_ - 1) / r) == one) {
                    prim = false;
                    break;
                }
            if (prim) {
                mod_ = cand;
                break;
            }
        }
    }
    // exp/log tables from the generator y (or g for prime fields)
    std::vector<std::uint32_t> cur(k_, 0);
    cur[0] = 1;
    std::vector<std::uint32_t> gen(k_, 0);
    if (k_ == 1)
        gen[0] = (p_ - mod_[0]) % p_;
    else
        gen[1] = 1;
    PolyMod pm{p_, k_, mod_};
    for (std::uint32_t e = 0; e + 1 < q_; ++e) {
        std::uint32_t c = from_digits(cur.data());
        exp_[e] = c;
        log_[c] = e;
        if (k_ == 1) {
            cur[0] = std::uint32_t(std::uint64_t(cur[0]) * gen[0] % p_);
        } else {
            cur = pm.mul(cur, gen);
        }
    }
}

std::uint32_t FiniteField::from_digits(const std::uint32_t* d) const {
    std::uint32_t c = 0;
    for (std::uint32_t j = k_; j-- > 0;) c = c * p_ + d[j];
    return c;
}

std::uint32_t FiniteField::add(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) return (a + b) % p_;
    std::uint32_t d[32];
    for (std::uint32_t j = 0; j < k_; ++j) d[j] = (digit(a, j) + digit(b, j)) % p_;
    return from_digits(d);
}

std::uint32_t FiniteField::neg(std::uint32_t a) const {
    if (k_ == 1) return (p_ - a) % p_;
    std::uint32_t d[32];
    for (std::uint32_t j = 0; j < k_; ++j) d[j] = (p_ - digit(a, j)) % p_;
    return from_digits(d);
}

std::uint32_t FiniteField::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FiniteField::mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
}

std::uint32_t FiniteField::inv(std::uint32_t a) const {
    if (a == 0) throw domain_error("inverse of zero in F_" + std::to_string(q_));
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t FiniteField::pow(std::uint32_t a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[(std::uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

std::uint32_t FiniteField::frob(std::uint32_t a, std::uint32_t times) const {
    std::uint64_t e = 1;
    for (std::uint32_t i = 0; i < times % k_; ++i) e *= p_;
    return pow(a, e);
}

std::uint32_t FiniteField::from_int(std::int64_t c) const {
    std::int64_t r = c % std::int64_t(p_);
    if (r < 0) r += p_;
    return std::uint32_t(r);
}

bool FiniteField::is_square(std::uint32_t a) const {
    if (a == 0 || p_ == 2) return true;
    return log_[a] % 2 == 0;
}

std::uint32_t FiniteField::sqrt(std::uint32_t a) const {
    if (a == 0) return 0;
    if (p_ == 2) {
        std::uint32_t l = log_[a];
        // q-1 is odd, so halve l modulo q-1
        if (l % 2) l += q_ - 1;
        return exp_[(l / 2) % (q_ - 1)];
    }
    if (log_[a] % 2) throw domain_error("not a square in F_" + std::to_string(q_));
    return exp_[log_[a] / 2];
}

std::string FiniteField::to_string(std::uint32_t a) const {
    static const char* alpha = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string s;
    for (std::uint32_t j = 0; j < k_; ++j) s += alpha[digit(a, j)];
    return s;
}

std::uint32_t FiniteField::parse(const std::string& s) const {
    if (s.size() != k_) throw domain_error("coefficient '" + s + "' must have " + std::to_string(k_) + " digits");
    std::uint32_t d[32];
    for (std::uint32_t j = 0; j < k_; ++j) {
        char c = s[j];
        std::uint32_t v;
        if (c >= '0' && c <= '9')
            v = std::uint32_t(c - '0');
        else if (c >= 'a' && c <= 'z')
            v = std::uint32_t(c - 'a' + 10);
        else
            throw domain_error("bad digit in '" + s + "'");
        if (v >= p_) throw domain_error("digit out of range in '" + s + "'");
        d[j] = v;
    }
    return from_digits(d);
}

}  // namespace tits
