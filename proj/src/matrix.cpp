#include "tits/matrix.hpp"
#include "tits/errors.hpp"

namespace tits {

Matrix::Matrix(const QuadExtCtx& c, std::size_t n) : ctx_(&c), n_(n), e_(n * n, QuadExtNumber::zero(c)) {}

Matrix Matrix::identity(const QuadExtCtx& c, std::size_t n) {
    Matrix m(c, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = QuadExtNumber::from_int(c, 1);
    return m;
}

Matrix Matrix::diagonal(const std::vector<QuadExtNumber>& d) {
    Matrix m(d.at(0).ctx(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    Matrix r(*ctx_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const auto& a = at(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                const auto& b = o.at(k, j);
                if (b.is_zero()) continue;
                r.at(i, j) = r.at(i, j) + a * b;
            }
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    Matrix r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    Matrix r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

Matrix Matrix::scaled(const QuadExtNumber& c) const {
    Matrix r = *this;
    for (auto& x : r.e_)
        if (!x.is_zero()) x = x * c;
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(*ctx_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::gamma0() const {
    Matrix r = *this;
    for (auto& x : r.e_) x = x.gamma0();
    return r;
}

Matrix Matrix::frob(std::uint32_t times) const {
    Matrix r = *this;
    for (auto& x : r.e_) x = x.frob(times);
    return r;
}

std::optional<Matrix> Matrix::inverse() const {
    if (auto pi = monomial_permutation()) {
        Matrix r(*ctx_, n_);
        for (std::size_t j = 0; j < n_; ++j) r.at(j, (*pi)[j]) = at((*pi)[j], j).inverse();
        return r;
    }
    // Gauss-Jordan, pivot of least valuation to keep precision
    Matrix a = *this, r = identity(*ctx_, n_);
    for (std::size_t c = 0; c < n_; ++c) {
        std::size_t piv = n_;
        for (std::size_t i = c; i < n_; ++i)
            if (!a.at(i, c).is_zero() && (piv == n_ || a.at(i, c).val() < a.at(piv, c).val())) piv = i;
        if (piv == n_) return std::nullopt;
        for (std::size_t j = 0; j < n_; ++j) {
            std::swap(a.at(c, j), a.at(piv, j));
            std::swap(r.at(c, j), r.at(piv, j));
        }
        QuadExtNumber inv = a.at(c, c).inverse();
        for (std::size_t j = 0; j < n_; ++j) {
            a.at(c, j) = a.at(c, j) * inv;
            r.at(c, j) = r.at(c, j) * inv;
        }
        for (std::size_t i = 0; i < n_; ++i) {
            if (i == c || a.at(i, c).is_zero()) continue;
            QuadExtNumber f = a.at(i, c);
            for (std::size_t j = 0; j < n_; ++j) {
                a.at(i, j) = a.at(i, j) - f * a.at(c, j);
                r.at(i, j) = r.at(i, j) - f * r.at(c, j);
            }
        }
    }
    return r;
}

QuadExtNumber Matrix::det() const {
    if (auto pi = monomial_permutation()) {
        // sign of the permutation times the product of entries
        QuadExtNumber d = QuadExtNumber::from_int(*ctx_, 1);
        std::vector<bool> seen(n_, false);
        bool odd = false;
        for (std::size_t j = 0; j < n_; ++j) {
            d = d * at((*pi)[j], j);
            if (seen[j]) continue;
            std::size_t len = 0;
            for (std::size_t k = j; !seen[k]; k = (*pi)[k]) {
                seen[k] = true;
                ++len;
            }
            if (len % 2 == 0) odd = !odd;
        }
        return odd ? -d : d;
    }
    Matrix a = *this;
    QuadExtNumber d = QuadExtNumber::from_int(*ctx_, 1);
    for (std::size_t c = 0; c < n_; ++c) {
        std::size_t piv = n_;
        for (std::size_t i = c; i < n_; ++i)
            if (!a.at(i, c).is_zero() && (piv == n_ || a.at(i, c).val() < a.at(piv, c).val())) piv = i;
        if (piv == n_) return QuadExtNumber::zero(*ctx_);
        if (piv != c) {
            for (std::size_t j = 0; j < n_; ++j) std::swap(a.at(c, j), a.at(piv, j));
            d = -d;
        }
        d = d * a.at(c, c);
        QuadExtNumber inv = a.at(c, c).inverse();
        for (std::size_t i = c + 1; i < n_; ++i) {
            if (a.at(i, c).is_zero()) continue;
            QuadExtNumber f = a.at(i, c) * inv;
            for (std::size_t j = c; j < n_; ++j) a.at(i, j) = a.at(i, j) - f * a.at(c, j);
        }
    }
    return d;
}

bool Matrix::operator==(const Matrix& o) const {
    if (n_ != o.n_) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != o.e_[i]) return false;
    return true;
}

bool Matrix::is_identity() const { return *this == identity(*ctx_, n_); }

bool Matrix::is_diagonal() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (i != j && !at(i, j).is_zero()) return false;
    return true;
}

std::optional<std::vector<std::size_t>> Matrix::monomial_permutation() const {
    std::vector<std::size_t> pi(n_, n_);
    std::vector<bool> row_used(n_, false);
    for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t i = 0; i < n_; ++i) {
            if (at(i, j).is_zero()) continue;
            if (pi[j] != n_ || row_used[i]) return std::nullopt;
            pi[j] = i;
            row_used[i] = true;
        }
        if (pi[j] == n_) return std::nullopt;
    }
    return pi;
}

std::int64_t Matrix::min_prec() const {
    std::int64_t p = LaurentNumber::kExact;
    for (const auto& x : e_) p = std::min(p, x.min_prec());
    return p;
}

std::vector<std::vector<std::string>> Matrix::dump() const {
    std::vector<std::vector<std::string>> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out[i].push_back(at(i, j).to_string());
    return out;
}

}  // namespace tits
