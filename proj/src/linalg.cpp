#include "tits/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace tits {

std::int64_t floor_q(const Q& q) {
    std::int64_t n = q.numerator(), d = q.denominator();
    std::int64_t f = n / d;
    if ((n % d != 0) && (n < 0)) --f;
    return f;
}

std::int64_t ceil_q(const Q& q) { return -floor_q(-q); }

std::string vec_to_string(const QVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_string(v[i]);
    }
    return s + ")";
}

QMat identity_q(std::size_t n) {
    QMat m(n, QVec(n, Q(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

QMat mat_mul(const QMat& a, const QMat& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    QMat r(n, QVec(m, Q(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

QVec mat_vec(const QMat& a, const QVec& v) {
    QVec r(a.size(), Q(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], v);
    return r;
}

QMat transpose(const QMat& a) {
    if (a.empty()) return {};
    QMat t(a[0].size(), QVec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMat& m, std::size_t ncols) {
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t c = 0; c < ncols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Q inv = Q(1) / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c] == 0) continue;
            Q f = m[r][c];
            for (std::size_t j = 0; j < m[r].size(); ++j) m[r][j] -= f * m[row][j];
        }
        piv.push_back(c);
        ++row;
    }
    return piv;
}

}  // namespace

std::optional<QVec> solve_unique(const QMat& a, const QVec& b) {
    std::size_t n = a.empty() ? 0 : a[0].size();
    QMat aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    auto piv = rref(aug, n + 1);
    if (!piv.empty() && piv.back() == n) return std::nullopt;
    if (piv.size() != n) return std::nullopt;
    QVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[piv[i]] = aug[i][n];
    return x;
}

QMat null_space(const QMat& a, std::size_t ncols) {
    QMat m = a;
    auto piv = rref(m, ncols);
    std::vector<bool> is_piv(ncols, false);
    for (auto c : piv) is_piv[c] = true;
    QMat basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        QVec v(ncols, Q(0));
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
        basis.push_back(v);
    }
    return basis;
}

std::size_t rank_q(QMat a) {
    if (a.empty()) return 0;
    return rref(a, a[0].size()).size();
}

IMat hermite_normal_form(IMat rows) {
    if (rows.empty()) return rows;
    std::size_t n = rows[0].size();
    IMat out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        // Euclid on column c among rows r..end
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || std::llabs(rows[i][c]) < std::llabs(rows[best][c])))
                    best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                std::int64_t q = rows[i][c] / rows[r][c];
                for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (auto& x : rows[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            std::int64_t q = rows[i][c] / rows[r][c];
            if (rows[i][c] - q * rows[r][c] < 0) --q;
            for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

bool lattice_contains(const IMat& hnf, const IVec& v) {
    IVec x = v;
    for (const auto& row : hnf) {
        std::size_t c = 0;
        while (row[c] == 0) ++c;
        for (std::size_t j = 0; j < c; ++j)
            if (x[j] != 0) return false;
        if (x[c] % row[c] != 0) return false;
        std::int64_t q = x[c] / row[c];
        for (std::size_t j = 0; j < x.size(); ++j) x[j] -= q * row[j];
    }
    return std::all_of(x.begin(), x.end(), [](std::int64_t e) { return e == 0; });
}

bool same_lattice(const IMat& a, const IMat& b) {
    return hermite_normal_form(a) == hermite_normal_form(b);
}

}  // namespace tits
